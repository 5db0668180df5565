"""Exact dense linear algebra over prime fields (and, as a slow fallback, QQ).

Matrices are numpy int64 arrays with entries reduced into [0, p).  With the
default prime 32003 an inner product of length up to ~10^9 stays below 2^63,
far beyond anything this package produces.
"""

import numpy as np
from fractions import Fraction


class PrimeField:
    """GF(p) arithmetic on numpy integer matrices."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"field order must be prime, got {p}")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    # -- scalars ---------------------------------------------------------

    def red(self, a: int) -> int:
        return int(a) % self.p

    def neg(self, a: int) -> int:
        return (-int(a)) % self.p

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    # -- matrices --------------------------------------------------------

    def mat(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return (a @ b) % self.p

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a - b) % self.p

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        return (int(c) % self.p * a) % self.p

    def rref(self, a: np.ndarray):
        """Row-reduce a copy of ``a``; returns (rref matrix, pivot column list)."""
        m = (np.array(a, dtype=np.int64)) % self.p
        rows, cols = m.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                m[[r, i]] = m[[i, r]]
            m[r] = (m[r] * self.inv(m[r, c])) % self.p
            col = m[:, c].copy()
            col[r] = 0
            nzrows = np.nonzero(col)[0]
            if nzrows.size:
                m[nzrows] = (m[nzrows] - np.outer(col[nzrows], m[r])) % self.p
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def null_space(self, a: np.ndarray) -> np.ndarray:
        """Columns form a basis of the right kernel of ``a``."""
        rows, cols = a.shape
        if cols == 0:
            return self.zeros(0, 0)
        if rows == 0:
            return self.eye(cols)
        m, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in pivots]
        basis = self.zeros(cols, len(free))
        for k, fc in enumerate(free):
            basis[fc, k] = 1
            for r, pc in enumerate(pivots):
                basis[pc, k] = (-m[r, fc]) % self.p
        return basis

    def column_space(self, a: np.ndarray) -> np.ndarray:
        """Columns of ``a`` restricted to a basis of the column space."""
        if a.size == 0:
            return a.reshape(a.shape[0], 0)
        _, pivots = self.rref(a)
        return a[:, pivots]

    def solve(self, a: np.ndarray, b: np.ndarray):
        """One solution x of a @ x = b, or None.  b may be a matrix."""
        rows, cols = a.shape
        b = b.reshape(rows, -1)
        aug = np.hstack([a, b]) % self.p
        m, pivots = self.rref(aug)
        pivots_in_a = [c for c in pivots if c < cols]
        if len(pivots_in_a) != len(pivots):
            return None
        x = self.zeros(cols, b.shape[1])
        for r, pc in enumerate(pivots_in_a):
            x[pc] = m[r, cols:]
        return x

    def inv_matrix(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("not square")
        x = self.solve(a, self.eye(n))
        if x is None:
            raise ZeroDivisionError("singular matrix")
        return x

    def is_zero(self, a: np.ndarray) -> bool:
        return a.size == 0 or not np.any(a % self.p)

    def charpoly(self, a: np.ndarray):
        """Characteristic polynomial of a square matrix, low degree first.

        Hessenberg reduction by similarity (row scaling matched with inverse
        column scaling) followed by the standard three-term recurrence; exact
        over GF(p) for any p.
        """
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("not square")
        h = np.array(a, dtype=np.int64) % self.p
        for c in range(n - 1):
            piv = None
            for r in range(c + 1, n):
                if h[r, c] % self.p:
                    piv = r
                    break
            if piv is None:
                continue
            if piv != c + 1:
                h[[c + 1, piv]] = h[[piv, c + 1]]
                h[:, [c + 1, piv]] = h[:, [piv, c + 1]]
            inv = self.inv(h[c + 1, c])
            for r in range(c + 2, n):
                f = (h[r, c] * inv) % self.p
                if f:
                    h[r] = (h[r] - f * h[c + 1]) % self.p
                    h[:, c + 1] = (h[:, c + 1] + f * h[:, r]) % self.p
        # p_k = charpoly of leading k x k block, coefficients ascending
        polys = [np.array([1], dtype=object)]
        for k in range(1, n + 1):
            tp = np.zeros(k + 1, dtype=object)
            tp[1:] = polys[k - 1]                       # t * p_{k-1}
            tp[:-1] = (tp[:-1] - int(h[k - 1, k - 1]) * polys[k - 1]) % self.p
            prod = 1
            for i in range(k - 1, 0, -1):
                prod = (prod * int(h[i, i - 1])) % self.p
                coef = (prod * int(h[i - 1, k - 1])) % self.p
                if coef:
                    tp[: i] = (tp[: i] - coef * polys[i - 1]) % self.p
            polys.append(tp % self.p)
        return [int(c) for c in polys[n]]


class RationalField:
    """Exact QQ linear algebra on object arrays of Fractions (small inputs only)."""

    p = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def red(self, a):
        return Fraction(a)

    def mat(self, data):
        arr = np.empty(np.shape(data), dtype=object)
        flat = np.asarray(data, dtype=object).reshape(-1)
        arr.reshape(-1)[:] = [Fraction(x) for x in flat]
        return arr

    def zeros(self, rows, cols):
        arr = np.empty((rows, cols), dtype=object)
        arr[:] = Fraction(0)
        return arr

    def eye(self, n):
        arr = self.zeros(n, n)
        for i in range(n):
            arr[i, i] = Fraction(1)
        return arr

    def mul(self, a, b):
        return a @ b if a.size and b.size else self.zeros(a.shape[0], b.shape[1])

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def is_zero(self, a):
        return a.size == 0 or all(x == 0 for x in a.reshape(-1))

    def rref(self, a):
        m = np.array(a, dtype=object)
        rows, cols = m.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
            if piv is None:
                continue
            if piv != r:
                m[[r, piv]] = m[[piv, r]]
            m[r] = m[r] / m[r, c]
            for i in range(rows):
                if i != r and m[i, c] != 0:
                    m[i] = m[i] - m[i, c] * m[r]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self, a):
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])
