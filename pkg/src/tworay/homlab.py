"""Exact homological machinery: Hom spaces, endomorphism analysis, short
exact sequences, and the Auslander-Reiten translate.

Module maps f: M -> N are dicts vertex -> matrix (dim N_v x dim M_v).  The
intertwiner system f_t M_a = N_a f_s is solved exactly over the prime field;
everything downstream (endomorphism certification, cokernels, DTr) is built
from that one solver.
"""

import numpy as np

from .string_modules import Representation, zero_representation


class ProjectiveSummand(ValueError):
    pass


class NotRealizable(RuntimeError):
    pass


class Inconclusive(RuntimeError):
    pass


# -- hom spaces ---------------------------------------------------------------


def hom_basis(M: Representation, N: Representation) -> list:
    """Basis of Hom(M, N) as a list of per-vertex matrix dicts."""
    assert M.field == N.field
    F = M.field
    q = M.quiver
    offsets = {}
    total = 0
    for v in q.vertices:
        offsets[v] = total
        total += N.dim(v) * M.dim(v)
    if total == 0:
        return []
    rows = []
    for a in q.arrows:
        s, t = q.source[a], q.target[a]
        ms, mt = M.dim(s), M.dim(t)
        ns, nt = N.dim(s), N.dim(t)
        if nt * ms == 0:
            continue
        # f_t M_a - N_a f_s = 0, columns are vec_col(f_v) per vertex
        block = np.zeros((nt * ms, total), dtype=np.int64)
        if mt:
            block[:, offsets[t]: offsets[t] + nt * mt] = np.kron(
                M.maps[a].T, np.eye(nt, dtype=np.int64))
        if ns:
            block[:, offsets[s]: offsets[s] + ns * ms] -= np.kron(
                np.eye(ms, dtype=np.int64), N.maps[a])
        rows.append(block % F.p)
    if rows:
        system = np.vstack(rows)
        kernel = F.null_space(system)
    else:
        kernel = F.eye(total)
    basis = []
    for k in range(kernel.shape[1]):
        vec = kernel[:, k]
        f = {}
        for v in q.vertices:
            nv, mv = N.dim(v), M.dim(v)
            f[v] = vec[offsets[v]: offsets[v] + nv * mv].reshape(
                (nv, mv), order="F")
        basis.append(f)
    return basis


def compose_maps(F, f, g):
    """f after g, per vertex."""
    return {v: F.mul(f[v], g[v]) for v in f}

def map_add(F, f, g):
    return {v: F.add(f[v], g[v]) for v in f}

def map_scale(F, c, f):
    return {v: F.scale(c, f[v]) for v in f}

def identity_map(M: Representation):
    return {v: M.field.eye(M.dim(v)) for v in M.quiver.vertices}

def zero_map(M: Representation, N: Representation):
    return {v: M.field.zeros(N.dim(v), M.dim(v)) for v in M.quiver.vertices}

def map_is_zero(F, f):
    return all(F.is_zero(m) for m in f.values())

def is_intertwiner(M, N, f) -> bool:
    F = M.field
    for a in M.quiver.arrows:
        s, t = M.quiver.source[a], M.quiver.target[a]
        if not F.is_zero(F.sub(F.mul(f[t], M.maps[a]), F.mul(N.maps[a], f[s]))):
            return False
    return True


def total_matrix(M: Representation, f) -> np.ndarray:
    """Block-diagonal matrix of an endomorphism on the total space."""
    d = M.total_dim
    out = np.zeros((d, d), dtype=np.int64)
    pos = 0
    for v in M.quiver.vertices:
        dv = M.dim(v)
        if dv:
            out[pos: pos + dv, pos: pos + dv] = f[v]
        pos += dv
    return out


# -- polynomial helpers over GF(p) ---------------------------------------------


def _poly_trim(c):
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c

def _poly_mod(F, a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = F.inv(lb)
    for k in range(len(a) - 1, db - 1, -1):
        c = (a[k] * inv) % F.p
        if c:
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * b[i]) % F.p
    return _poly_trim(a[:db] or [0])

def _poly_divmod(F, a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = F.inv(lb)
    qcoef = [0] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = (a[k] * inv) % F.p
        qcoef[k - db] = c
        if c:
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * b[i]) % F.p
    return _poly_trim(qcoef), _poly_trim(a[:db] or [0])

def _poly_mul(F, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % F.p
    return _poly_trim(out)

def _poly_sub(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([(x - y) % F.p for x, y in zip(a, b)])


def _poly_xgcd(F, a, b):
    """(g, s, t) with s a + t b = g monic, all coefficient lists ascending."""
    r0, r1 = _poly_trim(list(a)), _poly_trim(list(b))
    s0, s1 = [1], [0]
    t0, t1 = [0], [1]
    while r1 != [0]:
        qc, rem = _poly_divmod(F, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(F, s0, _poly_mul(F, qc, s1))
        t0, t1 = t1, _poly_sub(F, t0, _poly_mul(F, qc, t1))
    inv = F.inv(r0[-1])
    return ([(x * inv) % F.p for x in r0],
            [(x * inv) % F.p for x in s0],
            [(x * inv) % F.p for x in t0])


def poly_apply(F, coeffs, mat):
    """Evaluate an ascending-coefficient polynomial on a square matrix."""
    n = mat.shape[0]
    out = F.scale(coeffs[0], F.eye(n))
    power = F.eye(n)
    for c in coeffs[1:]:
        power = F.mul(power, mat)
        if c:
            out = F.add(out, F.scale(c, power))
    return out


def is_nilpotent(F, mat) -> bool:
    n = mat.shape[0]
    if n == 0:
        return True
    m = mat % F.p
    steps = max(1, n).bit_length()
    for _ in range(steps):
        if F.is_zero(m):
            return True
        m = F.mul(m, m)
    return F.is_zero(m)


def factor_charpoly(F, coeffs):
    """Factor an ascending-coefficient polynomial over GF(p) via sympy.

    Returns a list of (ascending coeff list, exponent) with monic factors.
    """
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(coeffs)), t, modulus=F.p)
    _, factors = poly.factor_list()
    out = []
    for fac, exp in factors:
        asc = [int(c) % F.p for c in reversed(fac.all_coeffs())]
        out.append((asc, int(exp)))
    return out


# -- indecomposability ----------------------------------------------------------


class IndecVerdict:
    LOCAL = "LOCAL"
    DECOMPOSABLE = "DECOMPOSABLE"
    FIELD_OBSTRUCTION = "FIELD_OBSTRUCTION"

    def __init__(self, status, certificate=None, note=""):
        self.status = status
        self.certificate = certificate
        self.note = note

    def __repr__(self):
        return f"IndecVerdict({self.status}{', ' + self.note if self.note else ''})"

    def __eq__(self, other):
        return self.status == other if isinstance(other, str) else NotImplemented


def _fitting_idempotent(M: Representation, endo):
    """Nontrivial idempotent from a non-nilpotent, somewhere-singular endo."""
    F = M.field
    d = M.total_dim
    power = {v: m.copy() for v, m in endo.items()}
    for _ in range(max(1, d).bit_length()):
        power = compose_maps(F, power, power)
    idem = {}
    for v in M.quiver.vertices:
        pv = power[v]
        if pv.shape[0] == 0:
            idem[v] = pv
            continue
        img = F.column_space(pv)
        ker = F.null_space(pv)
        basis = np.hstack([ker, img]) if ker.size or img.size else F.zeros(
            pv.shape[0], 0)
        assert basis.shape[1] == pv.shape[0], "Fitting decomposition failed"
        proj = F.zeros(pv.shape[0], pv.shape[0])
        proj[:, ker.shape[1]:] = img
        idem[v] = F.mul(proj, F.inv_matrix(basis))
    return idem


def _split_from_factors(M, endo, factors):
    """Idempotent in End(M) from a coprime factor split of a charpoly."""
    F = M.field
    f = factors[0][0]
    for _ in range(factors[0][1] - 1):
        f = _poly_mul(F, f, factors[0][0])
    g = [1]
    for fac, exp in factors[1:]:
        for _ in range(exp):
            g = _poly_mul(F, g, fac)
    _, s, t = _poly_xgcd(F, f, g)
    sf = _poly_mul(F, s, f)
    idem = {v: poly_apply(F, sf, endo[v]) for v in endo}
    return idem


def _certify(M: Representation, basis, shift_candidates):
    """LOCAL / DECOMPOSABLE / obstructed analysis for one endomorphism basis.

    shift_candidates(endo_total) yields field elements to try as the single
    eigenvalue; returning None for an element routes it to charpoly analysis.
    """
    F = M.field
    d = M.total_dim
    shifted = []
    for f in basis:
        total = total_matrix(M, f)
        lam = shift_candidates(total)
        if lam is not None and is_nilpotent(F, total - F.scale(lam, F.eye(d))):
            shifted.append(map_add(F, f, map_scale(F, F.neg(lam), identity_map(M))))
            continue
        # not scalar + nilpotent: inspect the characteristic polynomial
        factors = factor_charpoly(F, F.charpoly(total))
        if len(factors) > 1:
            if any(len(fac) == 2 for fac, _ in factors):
                fac = next(fac for fac, _ in factors if len(fac) == 2)
                lam = F.neg(fac[0])  # root of the linear factor
                nshift = map_add(F, f, map_scale(F, F.neg(lam), identity_map(M)))
                return IndecVerdict(IndecVerdict.DECOMPOSABLE,
                                    _fitting_idempotent(M, nshift))
            return IndecVerdict(IndecVerdict.DECOMPOSABLE,
                                _split_from_factors(M, f, factors))
        fac, exp = factors[0]
        if len(fac) == 2:
            lam = F.neg(fac[0])
            nf = map_add(F, f, map_scale(F, F.neg(lam), identity_map(M)))
            if is_nilpotent(F, total_matrix(M, nf)):
                shifted.append(nf)
                continue
            raise AssertionError("charpoly (t-l)^d but shift not nilpotent")
        return IndecVerdict("OBSTRUCTED", (f, fac))
    # Every basis element is scalar + nilpotent; End(M) is local iff the
    # shifts generate a nilpotent algebra.  In the local case the iterated
    # span equals rad^k, which strictly decreases to zero within d steps
    # (Nakayama); otherwise some finite product of the shifts is
    # non-nilpotent (a multiplicative semigroup of nilpotents spans a
    # nilpotent algebra) and Fitting splits the module on it.
    gens = [(total_matrix(M, f), f) for f in shifted]
    current = list(gens)
    for _ in range(2 * d + 2):
        if not current:
            return IndecVerdict(IndecVerdict.LOCAL)
        nxt = []
        for gm, gf in gens:
            for cm, cf in current:
                prod_m = F.mul(gm, cm)
                if F.is_zero(prod_m):
                    continue
                prod_f = compose_maps(F, gf, cf)
                if not is_nilpotent(F, prod_m):
                    return IndecVerdict(IndecVerdict.DECOMPOSABLE,
                                        _fitting_idempotent(M, prod_f))
                nxt.append((prod_m, prod_f))
        if not nxt:
            return IndecVerdict(IndecVerdict.LOCAL)
        # keep a spanning subset so the product frontier cannot blow up
        flat = np.stack([m.reshape(-1) for m, _ in nxt], axis=1) % F.p
        _, pivots = F.rref(flat)
        current = [nxt[i] for i in pivots]
    raise RuntimeError("endomorphism analysis did not terminate")


def is_indecomposable(M: Representation, end_basis=None) -> IndecVerdict:
    """Certify End(M) = k . id + nilpotents, or exhibit an idempotent.

    FIELD_OBSTRUCTION is reported only when certification fails over the
    working field and over its quadratic extension.
    """
    if M.is_zero():
        raise ValueError("the zero module is neither")
    F = M.field
    basis = end_basis if end_basis is not None else hom_basis(M, M)
    if len(basis) == 1:
        return IndecVerdict(IndecVerdict.LOCAL)
    d = M.total_dim

    def trace_shift(total):
        if d % F.p == 0:
            return None
        tr = int(np.trace(total)) % F.p
        return (tr * F.inv(d % F.p)) % F.p

    verdict = _certify(M, basis, trace_shift)
    if verdict.status != "OBSTRUCTED":
        return verdict
    ext_verdict = _certify_over_extension(M, basis)
    if ext_verdict.status == IndecVerdict.LOCAL:
        return IndecVerdict(IndecVerdict.LOCAL, note="quadratic extension")
    return IndecVerdict(IndecVerdict.FIELD_OBSTRUCTION, verdict.certificate,
                        note=f"extension retry: {ext_verdict.status}")


def _ext_tables(F):
    """A model of GF(p^2): 2x2 matrix embedding of the generator."""
    p = F.p
    if p == 2:
        w = np.array([[0, 1], [1, 1]], dtype=np.int64)  # w^2 = w + 1
    else:
        c = next(c for c in range(2, p) if pow(c, (p - 1) // 2, p) == p - 1)
        w = np.array([[0, c], [1, 0]], dtype=np.int64)  # w^2 = c
    return w


def _certify_over_extension(M: Representation, basis) -> IndecVerdict:
    """Re-run the scalar+nilpotent certification over GF(p^2).

    Elements of GF(p^2) are handled through the regular 2x2 embedding: a
    matrix X over GF(p) becomes kron(X, I2), the generator acts as
    kron(I, w).  Nilpotency and algebra generation transfer verbatim.
    """
    F = M.field
    d = M.total_dim
    w = _ext_tables(F)
    I2 = np.eye(2, dtype=np.int64)

    def blow(total):
        return np.kron(total % F.p, I2)

    def scalar(u, v_coef, n):
        return np.kron(np.eye(n, dtype=np.int64),
                       (u * I2 + v_coef * w) % F.p)

    shifted = []
    for f in basis:
        total = blow(total_matrix(M, f))
        found = False
        deep_factor = False
        for fac, exp in factor_charpoly(F, F.charpoly(total_matrix(M, f))):
            if len(fac) == 2:
                lam = F.neg(fac[0])
                cand = (total - scalar(lam, 0, d)) % F.p
                if is_nilpotent(F, cand):
                    shifted.append(cand)
                    found = True
                    break
            elif len(fac) == 3:
                # roots u +- v w of a quadratic factor t^2 + b t + c0
                b, c0 = fac[1], fac[0]
                for u, v_coef in _quadratic_roots_ext(F, b, c0, w):
                    cand = (total - scalar(u, v_coef, d)) % F.p
                    if is_nilpotent(F, cand):
                        shifted.append(cand)
                        found = True
                        break
                if found:
                    break
            else:
                deep_factor = True
        if not found:
            # all eigenvalues known and no single shift works: the element has
            # several eigenvalues over GF(p^2) and Fitting splits the module
            if not deep_factor:
                return IndecVerdict(IndecVerdict.DECOMPOSABLE)
            return IndecVerdict("OBSTRUCTED")
    # span-nilpotency over GF(p^2): close the GF(p)-span under the generator
    gens = []
    wmat = np.kron(np.eye(d, dtype=np.int64), w)
    for m in shifted:
        gens.append(m)
        gens.append((wmat @ m) % F.p)
    current = list(gens)
    for _ in range(4 * d + 4):
        if not current:
            return IndecVerdict(IndecVerdict.LOCAL)
        nxt = []
        for g in gens:
            for c in current:
                prod = F.mul(g, c)
                if F.is_zero(prod):
                    continue
                if not is_nilpotent(F, prod):
                    return IndecVerdict(IndecVerdict.DECOMPOSABLE)
                nxt.append(prod)
        if not nxt:
            return IndecVerdict(IndecVerdict.LOCAL)
        flat = np.array([m.reshape(-1) for m in nxt], dtype=np.int64)
        if F.rank(flat) == 0:
            return IndecVerdict(IndecVerdict.LOCAL)
        current = nxt
    return IndecVerdict("OBSTRUCTED")


def _quadratic_roots_ext(F, b, c0, w):
    """Roots u + v*omega of t^2 + b t + c0 over GF(p^2), as (u, v) pairs."""
    p = F.p
    if p == 2:
        # brute force over the four elements
        out = []
        for u in range(2):
            for v in range(2):
                # (u + v w)^2 + b (u + v w) + c0 with w^2 = w + 1
                sq_u, sq_v = (u * u + v * v) % 2, (v * v) % 2  # (u+vw)^2
                tu = (sq_u + b * u + c0) % 2
                tv = (sq_v + b * v) % 2
                if tu == 0 and tv == 0:
                    out.append((u, v))
        return out
    half = F.inv(2)
    disc = (b * b - 4 * c0) % p
    c = int(w[0, 1])  # omega^2 = c
    ratio = (disc * F.inv(c)) % p
    v = _sqrt_mod(F, ratio)
    if v is None:
        return []
    u = (F.neg(b) * half) % p
    vv = (v * half) % p
    return [(u, vv), (u, F.neg(vv))]


def _sqrt_mod(F, a):
    p = F.p
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    for x in range(1, p):  # small fields only reach this branch in practice
        if (x * x) % p == a:
            return x
    return None


# -- isomorphism -----------------------------------------------------------------


class IsoVerdict:
    def __init__(self, isomorphic, certificate=None, certain=True):
        self.isomorphic = isomorphic
        self.certificate = certificate
        self.certain = certain

    def __bool__(self):
        return self.isomorphic


def _invertible_everywhere(F, M, N, f) -> bool:
    for v in M.quiver.vertices:
        if M.dim(v) != N.dim(v):
            return False
        if M.dim(v) and F.rank(f[v]) != M.dim(v):
            return False
    return True


def find_iso(M: Representation, N: Representation, tries: int = 128):
    """An explicit isomorphism M -> N, or None if none was found."""
    if M.dim_tuple() != N.dim_tuple():
        return None
    F = M.field
    basis = hom_basis(M, N)
    if not basis:
        return None
    for f in basis:
        if _invertible_everywhere(F, M, N, f):
            return f
    rng = np.random.default_rng(20259)
    for _ in range(tries):
        coeffs = rng.integers(0, F.p, len(basis))
        f = basis[0]
        f = {v: sum(int(c) * g[v] for c, g in zip(coeffs, basis)) % F.p
             for v in f}
        if _invertible_everywhere(F, M, N, f):
            return f
    return None


def is_isomorphic(M: Representation, N: Representation, both_local=False,
                  hom_mn=None, hom_nm=None) -> IsoVerdict:
    """Deterministic for LOCAL pairs; randomized search otherwise."""
    if M.is_zero() and N.is_zero():
        return IsoVerdict(True)
    if M.dim_tuple() != N.dim_tuple():
        return IsoVerdict(False)
    F = M.field
    fs = hom_mn if hom_mn is not None else hom_basis(M, N)
    if not fs:
        return IsoVerdict(False)
    gs = hom_nm if hom_nm is not None else hom_basis(N, M)
    if not gs:
        return IsoVerdict(False)
    if both_local:
        for f in fs:
            for g in gs:
                comp = compose_maps(F, g, f)
                if not is_nilpotent(F, total_matrix(M, comp)):
                    iso = find_iso(M, N)
                    return IsoVerdict(True, iso)
        return IsoVerdict(False)
    iso = find_iso(M, N)
    if iso is not None:
        return IsoVerdict(True, iso)
    raise Inconclusive(
        "randomized isomorphism search failed on a non-certified pair")


# -- kernels, cokernels, exact sequences ----------------------------------------


def kernel_rep(M: Representation, N: Representation, f):
    """(K, inclusion K -> M) for a module map f: M -> N."""
    F = M.field
    q = M.quiver
    bases = {v: F.null_space(f[v]) if M.dim(v) else F.zeros(0, 0)
             for v in q.vertices}
    spaces = {v: tuple(("k", i) for i in range(bases[v].shape[1]))
              for v in q.vertices}
    maps = {}
    for a in q.arrows:
        s, t = q.source[a], q.target[a]
        img = F.mul(M.maps[a], bases[s])
        coords = F.solve(bases[t], img) if bases[t].size else F.zeros(
            0, img.shape[1])
        if coords is None:
            raise AssertionError("kernel is not arrow-stable")
        maps[a] = coords
    K = Representation(q, F, spaces, maps)
    incl = {v: bases[v] for v in q.vertices}
    return K, incl


def cokernel_rep(M: Representation, N: Representation, f):
    """(Q, projection N -> Q) for a module map f: M -> N."""
    F = N.field
    q = N.quiver
    proj = {}
    section = {}
    dims = {}
    for v in q.vertices:
        img = F.column_space(f[v]) if M.dim(v) else F.zeros(N.dim(v), 0)
        n = N.dim(v)
        cols = [img[:, k] for k in range(img.shape[1])]
        chosen = []
        cur = img
        for i in range(n):
            e = F.zeros(n, 1)
            e[i, 0] = 1
            cand = np.hstack([cur, e])
            if F.rank(cand) > cur.shape[1]:
                chosen.append(i)
                cur = cand
        dims[v] = len(chosen)
        basis = cur  # [image | complement]
        if n:
            inv = F.inv_matrix(basis)
            proj[v] = inv[img.shape[1]:, :]
        else:
            proj[v] = F.zeros(0, 0)
        sec = F.zeros(n, len(chosen))
        for k, i in enumerate(chosen):
            sec[i, k] = 1
        section[v] = sec
    spaces = {v: tuple(("c", i) for i in range(dims[v])) for v in q.vertices}
    maps = {}
    for a in q.arrows:
        s, t = q.source[a], q.target[a]
        maps[a] = F.mul(proj[t], F.mul(N.maps[a], section[s]))
    Q = Representation(q, F, spaces, maps)
    return Q, proj


class SesCandidate:
    """A claimed almost-split sequence awaiting realization."""

    def __init__(self, left, middles, right):
        self.left = left
        self.middles = list(middles)
        self.right = right
        self.f = None
        self.g = None

    @property
    def middle(self):
        if not self.middles:
            return zero_representation(self.left.quiver, self.left.field)
        acc = self.middles[0]
        for m in self.middles[1:]:
            acc = acc.direct_sum(m)
        return acc

    def dims_additive(self) -> bool:
        mid = self.middle
        return all(
            self.left.dim(v) + self.right.dim(v) == mid.dim(v)
            for v in self.left.quiver.vertices
        )


def realize_ses(cand: SesCandidate, right_local=True, tries=200) -> SesCandidate:
    """Find injective f and surjective g with coker(f) isomorphic to the right
    term; exactness then holds by construction."""
    if not cand.dims_additive():
        raise NotRealizable("dimension vectors are not additive")
    X, E, Z = cand.left, cand.middle, cand.right
    F = X.field
    basis = hom_basis(X, E)
    if not basis:
        raise NotRealizable("Hom(left, middle) = 0")

    def attempt(f):
        for v in X.quiver.vertices:
            if X.dim(v) and F.rank(f[v]) != X.dim(v):
                return None
        Q, proj = cokernel_rep(X, E, f)
        iso = find_iso(Q, Z)
        if iso is None:
            try:
                matched = is_isomorphic(Q, Z, both_local=right_local)
            except Inconclusive:
                return None  # not certifiable for this f; keep searching
            if matched.isomorphic:
                iso = find_iso(Q, Z, tries=512)
            if iso is None:
                return None
        g = {v: F.mul(iso[v], proj[v]) for v in X.quiver.vertices}
        return f, g

    for f in basis:
        got = attempt(f)
        if got:
            cand.f, cand.g = got
            return cand
    rng = np.random.default_rng(40111)
    for _ in range(tries):
        coeffs = rng.integers(0, F.p, len(basis))
        f = {v: sum(int(c) * h[v] for c, h in zip(coeffs, basis)) % F.p
             for v in basis[0]}
        got = attempt(f)
        if got:
            cand.f, cand.g = got
            return cand
    raise NotRealizable("no injective map with the right cokernel was found")


def is_split(cand: SesCandidate) -> bool:
    """True iff a retraction r with r f = id exists (exact linear solve)."""
    assert cand.f is not None, "realize the sequence first"
    X, E = cand.left, cand.middle
    F = X.field
    q = X.quiver
    offsets, total = {}, 0
    for v in q.vertices:
        offsets[v] = total
        total += X.dim(v) * E.dim(v)
    if total == 0:
        return True
    rows, rhs = [], []
    for a in q.arrows:  # intertwiner constraints on r
        s, t = q.source[a], q.target[a]
        xs, xt, es, et = X.dim(s), X.dim(t), E.dim(s), E.dim(t)
        if xt * es == 0:
            continue
        block = np.zeros((xt * es, total), dtype=np.int64)
        if et:
            block[:, offsets[t]: offsets[t] + xt * et] = np.kron(
                E.maps[a].T, np.eye(xt, dtype=np.int64))
        if xs:
            block[:, offsets[s]: offsets[s] + xs * es] -= np.kron(
                np.eye(es, dtype=np.int64), X.maps[a])
        rows.append(block % F.p)
        rhs.append(F.zeros(xt * es, 1))
    for v in q.vertices:  # r_v f_v = id_v
        xv, ev = X.dim(v), E.dim(v)
        if xv == 0:
            continue
        block = np.zeros((xv * xv, total), dtype=np.int64)
        block[:, offsets[v]: offsets[v] + xv * ev] = np.kron(
            cand.f[v].T, np.eye(xv, dtype=np.int64))
        rows.append(block % F.p)
        rhs.append(F.eye(xv).reshape(-1, 1, order="F"))
    system = np.vstack(rows)
    target = np.vstack(rhs)
    return F.solve(system, target) is not None


# -- projective covers and the AR translate ---------------------------------------


def radical_embedding(M: Representation):
    """Per-vertex basis matrices of rad M = sum of arrow images."""
    F = M.field
    q = M.quiver
    rad = {}
    for v in q.vertices:
        imgs = [F.mul(M.maps[a], F.eye(M.dim(q.source[a])))
                for a in q.in_arrows[v] if M.dim(q.source[a])]
        if imgs:
            rad[v] = F.column_space(np.hstack(imgs))
        else:
            rad[v] = F.zeros(M.dim(v), 0)
    return rad


def top_generators(M: Representation):
    """For each vertex, vectors of M_v projecting to a basis of (M / rad M)_v."""
    F = M.field
    rad = radical_embedding(M)
    gens = {}
    for v in M.quiver.vertices:
        n = M.dim(v)
        cur = rad[v]
        picked = []
        for i in range(n):
            e = F.zeros(n, 1)
            e[i, 0] = 1
            cand = np.hstack([cur, e])
            if F.rank(cand) > cur.shape[1]:
                picked.append(e)
                cur = cand
        gens[v] = picked
    return gens


def projective_cover(M: Representation, algebra):
    """(P, h) with h: P -> M a projective cover."""
    F = M.field
    q = M.quiver
    gens = top_generators(M)
    summands = []
    for v in q.vertices:
        for gen in gens[v]:
            summands.append((v, gen))
    if not summands:
        P = zero_representation(q, F)
        return P, zero_map(P, M), []
    reps = [algebra.projective_module(v) for v, _ in summands]
    P = reps[0]
    for r in reps[1:]:
        P = P.direct_sum(r)
    h = {v: F.zeros(M.dim(v), P.dim(v)) for v in q.vertices}
    col_offset = {v: 0 for v in q.vertices}
    for (gen_v, gen_vec), rep in zip(summands, reps):
        for w in q.vertices:
            paths = algebra.basis_paths.get((gen_v, w), [])
            for k, path in enumerate(paths):
                col = col_offset[w] + k
                vec = gen_vec if not path[1] else F.mul(
                    M.path_matrix(path[1]), gen_vec)
                h[w][:, col] = vec[:, 0]
        for w in q.vertices:
            col_offset[w] += rep.dim(w)
    for v in q.vertices:  # covers are epi
        if M.dim(v):
            assert F.rank(h[v]) == M.dim(v), "cover map is not surjective"
    return P, h, summands


def minimal_presentation(M: Representation, algebra):
    """(P1, P0, d, gens1, gens0) with P1 --d--> P0 -> M -> 0 minimal."""
    P0, h, gens0 = projective_cover(M, algebra)
    K, incl = kernel_rep(P0, M, h)
    if K.is_zero():
        return None, P0, None, [], gens0
    P1, h1, gens1 = projective_cover(K, algebra)
    F = M.field
    d = {v: F.mul(incl[v], h1[v]) for v in M.quiver.vertices}
    return P1, P0, d, gens1, gens0


def is_projective(M: Representation, algebra) -> bool:
    _, _, d, _, _ = minimal_presentation(M, algebra)
    return d is None


class _RightModule:
    """A right A-module presented vertex-wise with arrow action N_t -> N_s."""

    def __init__(self, quiver, field, dims, maps):
        self.quiver = quiver
        self.field = field
        self.dims = dims
        self.maps = maps  # arrow -> matrix (dim_s x dim_t)


def _projective_right(algebra, v):
    """e_v A with its right arrow action."""
    q = algebra.quiver
    F = algebra.field
    basis_at = {w: algebra.basis_paths.get((w, v), []) for w in q.vertices}
    pos = {w: {p: k for k, p in enumerate(basis_at[w])} for w in q.vertices}
    dims = {w: len(basis_at[w]) for w in q.vertices}
    maps = {}
    for a in q.arrows:
        s, t = q.source[a], q.target[a]
        m = F.zeros(dims[s], dims[t])
        arrow_path = (s, (a,), t)
        for col, p in enumerate(basis_at[t]):
            for r, cf in algebra.multiply(p, arrow_path).items():
                m[pos[s][r], col] = cf
        maps[a] = m
    return dims, maps, basis_at, pos


def ar_translate(M: Representation, algebra) -> Representation:
    """DTr M from a minimal projective presentation; errors on projectives."""
    F = M.field
    q = M.quiver
    P1, P0, d, gens1, gens0 = minimal_presentation(M, algebra)
    if d is None:
        raise ProjectiveSummand("module is projective")

    # components a[j][i] in e_{u_j} A e_{v_i}, from the generator columns of P1
    right0 = [_projective_right(algebra, v) for v, _ in gens0]
    right1 = [_projective_right(algebra, u) for u, _ in gens1]

    # locate each P1 generator column inside d and expand over path basis of P0
    comp = [[None] * len(gens0) for _ in gens1]
    col_offset = {v: 0 for v in q.vertices}
    gen_cols = []
    for (u, _gen) in gens1:
        trivial = (u, (), u)
        k = algebra.basis_paths[(u, u)].index(trivial)
        gen_cols.append((u, col_offset[u] + k))
        for w in q.vertices:
            col_offset[w] += _proj_dim_at(algebra, u, w)

    row_offsets = []
    off = {v: 0 for v in q.vertices}
    for (v, _gen) in gens0:
        row_offsets.append(dict(off))
        for w in q.vertices:
            off[w] += _proj_dim_at(algebra, v, w)

    for j, (u, col) in enumerate(gen_cols):
        for i, (v, _gen) in enumerate(gens0):
            paths = algebra.basis_paths.get((v, u), [])
            coeffs = {}
            base = row_offsets[i][u]
            for k, p in enumerate(paths):
                c = int(d[u][base + k, col]) % F.p
                if c:
                    coeffs[p] = c
            comp[j][i] = coeffs

    # transpose: map  +_i e_{v_i}A -> +_j e_{u_j}A  by left multiplication
    dims_dom = {w: sum(r[0][w] for r in right0) for w in q.vertices}
    dims_cod = {w: sum(r[0][w] for r in right1) for w in q.vertices}
    dmat = {w: F.zeros(dims_cod[w], dims_dom[w]) for w in q.vertices}
    for w in q.vertices:
        roff = 0
        for j, r1 in enumerate(right1):
            coff = 0
            for i, r0 in enumerate(right0):
                for col, p in enumerate(r0[2][w]):  # p: path w -> v_i
                    for rpath, cf in _left_mult(algebra, comp[j][i], p).items():
                        dmat[w][roff + r1[3][w][rpath], coff + col] = (
                            dmat[w][roff + r1[3][w][rpath], coff + col] + cf
                        ) % F.p
                coff += r0[0][w]
            roff += r1[0][w]

    # right-module cokernel of dmat, then vector-space dual back to the left
    dom_maps = _sum_right_maps(q, F, right0)
    cod_maps = _sum_right_maps(q, F, right1)
    proj = {}
    dims_tr = {}
    section = {}
    for w in q.vertices:
        img = F.column_space(dmat[w]) if dims_dom[w] else F.zeros(dims_cod[w], 0)
        n = dims_cod[w]
        cur = img
        chosen = []
        for i in range(n):
            e = F.zeros(n, 1)
            e[i, 0] = 1
            cand = np.hstack([cur, e])
            if F.rank(cand) > cur.shape[1]:
                chosen.append(i)
                cur = cand
        dims_tr[w] = len(chosen)
        if n:
            inv = F.inv_matrix(cur)
            proj[w] = inv[img.shape[1]:, :]
        else:
            proj[w] = F.zeros(0, 0)
        sec = F.zeros(n, len(chosen))
        for k, i in enumerate(chosen):
            sec[i, k] = 1
        section[w] = sec

    spaces = {w: tuple(("d", i) for i in range(dims_tr[w])) for w in q.vertices}
    maps = {}
    for a in q.arrows:
        s, t = q.source[a], q.target[a]
        # right action of a on Tr: Tr_t -> Tr_s; dualize to get s -> t
        act = F.mul(proj[s], F.mul(cod_maps[a], section[t]))
        maps[a] = act.T % F.p
    return Representation(q, F, spaces, maps)


def _proj_dim_at(algebra, v, w) -> int:
    return len(algebra.basis_paths.get((v, w), ()))


def _left_mult(algebra, element, path):
    """Left-multiply a path by an algebra element given as {path: coeff}."""
    out = {}
    F = algebra.field
    for apath, c in element.items():
        if apath[0] != path[2]:
            continue
        for r, cf in algebra.multiply(apath, path).items():
            out[r] = (out.get(r, 0) + c * cf) % F.p
    return {k: v for k, v in out.items() if v}


def _sum_right_maps(quiver, F, rights):
    maps = {}
    for a in quiver.arrows:
        s, t = quiver.source[a], quiver.target[a]
        blocks = [r[1][a] for r in rights]
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        m = F.zeros(rows, cols)
        ro = co = 0
        for b in blocks:
            if b.size:
                m[ro: ro + b.shape[0], co: co + b.shape[1]] = b
            ro += b.shape[0]
            co += b.shape[1]
        maps[a] = m
    return maps


# -- the almost-split-sequence list ----------------------------------------------


class ArVerifier:
    """Instantiate and verify the classification's almost-split sequences.

    Terms of the list are canonicalized to atoms (family tag + parameters);
    the degenerate pair conventions N(C, EMPTY), N(C, C), N(C, B_x C) expand
    to direct sums during canonicalization.  Coverage then asserts that every
    non-projective inventory entry is the right-hand term of exactly one row.
    """

    def __init__(self, modules, algebra, lam_sample=(2, 3, 5)):
        self.sm = modules
        self.calc = modules.calc
        self.quiver = modules.quiver
        self.field = modules.field
        self.algebra = algebra
        lams = []
        for l in tuple(lam_sample) + (1,):
            l = self.field.red(l)
            if l and l not in lams:
                lams.append(l)
        self.lams = lams
        self._rep_cache = {}
        self._indec_cache = {}
        self._hom_cache = {}
        self._band_len = {name: b.length for name, b in self.calc.bands()}
        self._band_word = {name: b for name, b in self.calc.bands()}

    # -- atoms ------------------------------------------------------------

    def _wkey(self, w):
        return self.calc.word_key(w)

    def _unkey(self, wkey):
        from .strings import StringWord

        letters, terminus = wkey
        return StringWord(letters, terminus if not letters else None)

    def atom_dim(self, atom):
        tag = atom[0]
        if tag == "M":
            return len(atom[1][0]) + 1
        if tag == "N":
            return len(atom[2][0]) + 3
        if tag == "L":
            return len(atom[2][0]) + 2
        if tag == "NCC":
            return len(atom[2][0]) + len(atom[3][0]) + 4
        if tag == "R":
            return atom[3] * self._band_len[atom[1]]
        if tag == "Qband":
            return atom[2] * self._band_len[atom[1]] + 1
        raise ValueError(atom)

    def atom_rep(self, atom):
        rep = self._rep_cache.get(atom)
        if rep is not None:
            return rep
        tag = atom[0]
        sm = self.sm
        if tag == "M":
            rep = sm.construct_M(self._unkey(atom[1]))
        elif tag == "N":
            rep = sm.construct_N(atom[1], self._unkey(atom[2]))
        elif tag == "L":
            rep = sm.construct_L(atom[1], self._unkey(atom[2]))
        elif tag == "NCC":
            rep = sm.construct_NCC(atom[1], self._unkey(atom[2]),
                                   self._unkey(atom[3]))
        elif tag == "R":
            rep = sm.construct_R(self._band_word[atom[1]], atom[2], atom[3])
        elif tag == "Qband":
            rep = sm.construct_Qband(atom[1], atom[2])
        else:
            raise ValueError(atom)
        self._rep_cache[atom] = rep
        return rep

    def atom_indec(self, atom):
        v = self._indec_cache.get(atom)
        if v is None:
            v = is_indecomposable(self.atom_rep(atom))
            self._indec_cache[atom] = v
        return v

    # -- canonical terms ----------------------------------------------------

    def canon_M(self, w):
        from .strings import EMPTY

        if w is EMPTY:
            return ()
        return (("M", self._wkey(w)),)

    def canon_N(self, x, w):
        from .strings import EMPTY

        if w is EMPTY:
            z = self.quiver.source[self.quiver.gamma_of(x)]
            return (("M", self._wkey(self.calc.trivial(z))),)
        if not self.calc.in_s_x(w, x):
            raise ValueError(f"N-term parameter outside S_x: {w} at {x}")
        return (("N", x, self._wkey(w)),)

    def canon_L(self, x, w):
        if not (self.calc.in_s_x(w, x) and self.calc.p_count(w, x) > 0):
            raise ValueError(f"L-term parameter invalid: {w} at {x}")
        return (("L", x, self._wkey(w)),)

    def canon_NCC(self, x, c, cp):
        from .strings import EMPTY, StringWord

        calc = self.calc
        gamma = self.quiver.gamma_of(x)
        if cp is EMPTY:
            return self.canon_M(calc.word((gamma,) + c.letters))
        if not (calc.in_s_x(c, x) and calc.in_s_x(cp, x)):
            raise ValueError(f"pair outside S_x: ({c}, {cp}) at {x}")
        if self._wkey(c) == self._wkey(cp):
            return (("N", x, self._wkey(c)), ("M", self._wkey(c)))
        bx = calc.band_of(x)
        if not bx.is_trivial:
            bxc = StringWord(bx.letters + c.letters)
            if self._wkey(cp) == self._wkey(bxc):
                return (("L", x, self._wkey(bxc)),) + self.canon_M(
                    calc.word((gamma,) + c.letters))
            if calc.compare(cp, bxc) > 0:
                raise ValueError(f"pair violates C' < B_x C: ({c}, {cp}) at {x}")
        if calc.compare(c, cp) > 0:
            raise ValueError(f"pair out of order: ({c}, {cp}) at {x}")
        return (("NCC", x, self._wkey(c), self._wkey(cp)),)

    def canon_R(self, band_name, lam, m):
        if m <= 0:
            return ()
        return (("R", band_name, int(self.field.red(lam)), m),)

    def canon_Qb(self, x, m):
        if m <= 0:
            return ()
        return (("Qband", x, m),)

    # -- row enumeration ------------------------------------------------------

    def rows(self, bound: int):
        """Rows with right-term dimension or middle dimension within bound.

        String parameters are enumerated with a margin covering how much a
        successor can shrink a word (at most 1 + max |omega| on one side and
        1 + max |nu| on the other), so every row whose right term fits inside
        the bound is produced.
        """
        calc = self.calc
        q = self.quiver
        from .strings import EMPTY, StringWord

        max_omega = max(calc.omega(v).length for v in q.vertices)
        max_nu = max(calc.nu(v).length for v in q.vertices)
        margin = bound + max_omega + max_nu + 4
        out = []
        self.row_anomalies = []

        def emit(family, params, *term_thunks):
            # term parameters are computed lazily so an inconsistent instance
            # (a pair leaving P_x, say) surfaces as an anomaly, not a crash
            try:
                left, middle, right = [t() for t in term_thunks]
            except (ValueError, AssertionError) as exc:
                self.row_anomalies.append(
                    f"row family {family} at {params}: {exc}")
                return
            rdim = sum(self.atom_dim(a) for a in right)
            mdim = sum(self.atom_dim(a) for a in middle)
            if rdim > bound and mdim > bound:
                return
            out.append({
                "family": family,
                "params": params,
                "left": left,
                "middle": middle,
                "right": right,
                "right_dim": rdim,
                "middle_dim": mdim,
            })

        # band rows
        for name, band in calc.bands():
            blen = band.length
            for m in range(1, bound // blen + 3):
                for lam in self.lams:
                    if lam == 1 and name != "B0":
                        continue
                    emit(1, (name, lam, m),
                         lambda: self.canon_R(name, lam, m),
                         lambda: self.canon_R(name, lam, m + 1)
                         + self.canon_R(name, lam, m - 1),
                         lambda: self.canon_R(name, lam, m))
            if name == "B0":
                continue
            x = name
            for m in range(1, bound // blen + 3):
                emit(2, (name, m),
                     lambda: self.canon_R(name, 1, m),
                     lambda: self.canon_Qb(x, m + 1)
                     + self.canon_R(name, 1, m - 1),
                     lambda: self.canon_Qb(x, m))
            for m in range(2, bound // blen + 4):
                emit(3, (name, m),
                     lambda: self.canon_Qb(x, m),
                     lambda: self.canon_R(name, 1, m)
                     + self.canon_Qb(x, m - 1),
                     lambda: self.canon_R(name, 1, m - 1))

        # string rows
        for c in calc.s_prime(margin):
            cp = calc.successor(c)
            pc = calc.co_successor(c)
            bi = calc.bi_successor(c)
            emit(4, ("Sprime", self._wkey(c)),
                 lambda: self.canon_M(c),
                 lambda: self.canon_M(cp) + self.canon_M(pc),
                 lambda: self.canon_M(bi))

        for x in q.q0_primed():
            alpha = q.alpha_of(x)
            mu = calc.mu(x)
            omega = calc.omega(x)
            sx = calc.s_x(x, margin)
            for cprime in sx:
                if not calc.check_string((alpha,) + cprime.letters)[0]:
                    continue
                c = StringWord((alpha,) + cprime.letters)
                cp = calc.successor(c)
                pc = calc.co_successor(c)
                bi = calc.bi_successor(c)

                def row5_left(c=c, pc=pc, cprime=cprime, x=x):
                    assert pc is not EMPTY and \
                        self._wkey(pc) == self._wkey(cprime), \
                        f"co-successor of alpha_x C is not C at {x}"
                    return self.canon_M(c)

                emit(5, (x, self._wkey(cprime)),
                     row5_left,
                     lambda: self.canon_M(cp) + self.canon_NCC(x, mu, pc),
                     lambda: self.canon_NCC(x, mu, bi))
            for c in sx:
                cp = calc.successor(c)
                emit(6, (x, self._wkey(c)),
                     lambda: self.canon_M(c),
                     lambda: self.canon_NCC(x, c, cp),
                     lambda: self.canon_N(x, cp))
                if self._wkey(c) != self._wkey(omega):
                    emit(8, (x, self._wkey(c)),
                         lambda: self.canon_N(x, c),
                         lambda: self.canon_NCC(x, c, cp),
                         lambda: self.canon_M(cp))
            for c, c2 in calc.pairs_p_x(x, 2 * bound + 2 * max_omega + 4):
                cp, c2p = calc.successor(c), calc.successor(c2)
                emit(10, (x, self._wkey(c), self._wkey(c2)),
                     lambda: self.canon_NCC(x, c, c2),
                     lambda: self.canon_NCC(x, c, c2p)
                     + self.canon_NCC(x, cp, c2),
                     lambda: self.canon_NCC(x, cp, c2p))

        for x in q.q0_doubleprimed():
            gamma = q.gamma_of(x)
            bx = calc.band_of(x)
            for c in calc.s_x(x, margin):
                cp = calc.successor(c)

                def words7(c=c, cp=cp, x=x):
                    assert cp is not EMPTY, \
                        f"omega_{x} cannot lie in S_x for x in Q0''"
                    bxc = StringWord(bx.letters + c.letters)
                    bxcp = StringWord(bx.letters + cp.letters)
                    gc = calc.word((gamma,) + c.letters)
                    gcp = calc.word((gamma,) + cp.letters)
                    return bxc, bxcp, gc, gcp

                emit(7, (x, self._wkey(c)),
                     lambda: self.canon_M(words7()[2]),
                     lambda: self.canon_NCC(x, cp, words7()[0]),
                     lambda: self.canon_L(x, words7()[1]))
                emit(9, (x, self._wkey(c)),
                     lambda: self.canon_L(x, words7()[0]),
                     lambda: self.canon_NCC(x, cp, words7()[0]),
                     lambda: self.canon_M(words7()[3]))
        for row in out:
            row["key"] = (row["family"],) + tuple(repr(p) for p in row["params"])
        out.sort(key=lambda r: r["key"])
        return out

    # -- verification -----------------------------------------------------------

    def _sum_rep(self, atoms):
        if not atoms:
            return zero_representation(self.quiver, self.field)
        rep = self.atom_rep(atoms[0])
        for a in atoms[1:]:
            rep = rep.direct_sum(self.atom_rep(a))
        return rep

    def _match_tau(self, right_atoms, left_atoms):
        """DTr of every right atom must match the left atoms up to refolding."""
        taus = [ar_translate(self.atom_rep(a), self.algebra)
                for a in right_atoms]
        lefts = [self.atom_rep(a) for a in left_atoms]
        if len(taus) != len(lefts):
            return False
        used = [False] * len(lefts)
        for t in taus:
            hit = None
            for i, l in enumerate(lefts):
                if used[i]:
                    continue
                if is_isomorphic(t, l, both_local=True).isomorphic:
                    hit = i
                    break
            if hit is None:
                return False
            used[hit] = True
        return True

    def verify(self, bound: int, progress=None, jobs: int = 1):
        """Check every row with middle dim <= bound, plus right-term coverage."""
        inventory = self.sm.theorem_inventory(bound, tuple(self.lams))
        rows = self.rows(bound)
        anomalies = list(self.row_anomalies)

        projective_keys = set()
        proj_reps = [self.algebra.projective_module(v)
                     for v in self.quiver.vertices]
        for entry in inventory:
            for P in proj_reps:
                if entry.rep.dim_tuple() == P.dim_tuple():
                    if is_isomorphic(entry.rep, P, both_local=True).isomorphic:
                        projective_keys.add(entry.key)
                        break

        failures = []
        results = []
        to_check = [r for r in rows if r["middle_dim"] <= bound]

        def check_row(row):
            status = {"additivity": None, "realized": None, "nonsplit": None,
                      "ends_indecomposable": None, "tau": None}
            problems = []
            left = self._sum_rep(row["left"])
            right = self._sum_rep(row["right"])
            cand = SesCandidate(left, [self.atom_rep(a) for a in row["middle"]],
                                right)
            status["additivity"] = cand.dims_additive()
            if not status["additivity"]:
                problems.append("dimension vectors not additive")
                return status, problems, None
            end_ok = True
            for a in row["left"] + row["right"]:
                if self.atom_indec(a).status != IndecVerdict.LOCAL:
                    end_ok = False
                    problems.append(f"end not indecomposable: {a}")
            status["ends_indecomposable"] = end_ok
            try:
                realize_ses(cand, right_local=len(row["right"]) == 1)
                status["realized"] = True
            except NotRealizable as exc:
                status["realized"] = False
                problems.append(f"not realizable: {exc}")
                return status, problems, None
            status["nonsplit"] = not is_split(cand)
            if not status["nonsplit"]:
                problems.append("sequence splits")
            try:
                status["tau"] = self._match_tau(row["right"], row["left"])
            except ProjectiveSummand:
                status["tau"] = False
            if not status["tau"]:
                problems.append("DTr(right) does not match left")
            return status, problems, cand

        if jobs > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(check_row, to_check))
        else:
            outcomes = [check_row(r) for r in to_check]
        for row, (status, problems, cand) in zip(to_check, outcomes):
            cert = None
            if cand is not None and cand.f is not None:
                cert = {
                    "injection": {v: m.tolist() for v, m in cand.f.items()
                                  if m.size},
                    "surjection": {v: m.tolist() for v, m in cand.g.items()
                                   if m.size},
                }
            results.append({"key": row["key"], "family": row["family"],
                            "status": status, "problems": problems,
                            "certificate": cert})
            for pb in problems:
                failures.append(f"row {row['key']}: {pb}")
            if progress:
                progress(row, status)

        counts = {}
        for row in rows:
            if row["right_dim"] <= bound and len(row["right"]) == 1:
                counts.setdefault(row["right"][0], []).append(row["key"])
        coverage = {"checked": 0, "missing": [], "multiple": []}
        for entry in inventory:
            if entry.key in projective_keys:
                continue
            coverage["checked"] += 1
            hits = counts.get(entry.key, [])
            if not hits:
                coverage["missing"].append(entry.key)
                failures.append(f"coverage: no row ends at {entry.key}")
            elif len(hits) > 1:
                coverage["multiple"].append((entry.key, hits))
                failures.append(f"coverage: {len(hits)} rows end at {entry.key}")

        failures = anomalies + failures
        return {
            "bound": bound,
            "rows_enumerated": len(rows),
            "rows_checked": len(results),
            "inventory_size": len(inventory),
            "projectives": sorted(map(repr, projective_keys)),
            "rows": results,
            "coverage": coverage,
            "failures": failures,
        }


def verify_ar_list(modules, algebra, bound, lam_sample=(2, 3, 5), jobs=1):
    return ArVerifier(modules, algebra, lam_sample).verify(bound, jobs=jobs)
