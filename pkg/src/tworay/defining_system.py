"""Defining systems (p, q, S, T): validation, admissible vertices, extension.

A defining system is the combinatorial seed of the whole construction.  All
operations here are pure; systems are immutable once validated.
"""

import json
from dataclasses import dataclass


class DefiningSystemError(ValueError):
    code = "Invalid"


class LengthMismatch(DefiningSystemError):
    code = "LengthMismatch"


class SumTooSmall(DefiningSystemError):
    code = "SumTooSmall"


class SetOutOfRange(DefiningSystemError):
    code = "SetOutOfRange"


class ConsecutiveInS(DefiningSystemError):
    code = "ConsecutiveInS"


class TopInT(DefiningSystemError):
    code = "TopInT"


class NotAdmissible(ValueError):
    pass


class NoValidOrder(RuntimeError):
    """Backtracking reduction exhausted all insertion orders (should not occur)."""


@dataclass(frozen=True)
class AdmissibleVertex:
    """An insertion site: 'x'-kind grows S, 'z'-kind grows T.  1-based indices."""

    kind: str
    i: int
    j: int

    def __post_init__(self):
        if self.kind not in ("x", "z"):
            raise ValueError(f"kind must be 'x' or 'z', got {self.kind!r}")

    def __str__(self):
        return f"{self.kind}:{self.i}:{self.j}"

    @classmethod
    def parse(cls, text: str) -> "AdmissibleVertex":
        kind, i, j = text.split(":")
        return cls(kind, int(i), int(j))


@dataclass(frozen=True)
class DefiningSystem:
    p: tuple
    q: tuple
    S: tuple  # tuple of frozensets
    T: tuple

    @property
    def strands(self) -> int:
        return len(self.p)

    def top(self, i: int) -> int:
        """p_i + |T_i| for 1-based strand i: the largest x-index on the strand."""
        return self.p[i - 1] + len(self.T[i - 1])

    def t_sorted(self, i: int) -> list:
        return sorted(self.T[i - 1])

    def s_sorted(self, i: int) -> list:
        return sorted(self.S[i - 1])

    def t_last(self, i: int) -> int:
        """T_{i,|T_i|}, with the convention 0 for empty T_i."""
        t = self.T[i - 1]
        return max(t) if t else 0

    def to_json_obj(self):
        return {
            "p": list(self.p),
            "q": list(self.q),
            "S": [sorted(s) for s in self.S],
            "T": [sorted(t) for t in self.T],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    def is_fundamental(self) -> bool:
        return all(not s for s in self.S) and all(not t for t in self.T)

    def fundamental(self) -> "DefiningSystem":
        empties = tuple(frozenset() for _ in self.p)
        return DefiningSystem(self.p, self.q, empties, empties)

    def __str__(self):
        return self.to_json()


def validate(raw) -> DefiningSystem:
    """Check the five invariants of a candidate quadruple.

    ``raw`` may be a mapping with keys p/q/S/T, a 4-tuple, or a DefiningSystem.
    Raises the subclass of DefiningSystemError naming the first violation.
    """
    if isinstance(raw, DefiningSystem):
        p, q, S, T = raw.p, raw.q, raw.S, raw.T
    elif isinstance(raw, dict):
        try:
            p, q, S, T = raw["p"], raw["q"], raw["S"], raw["T"]
        except KeyError as exc:
            raise LengthMismatch(f"missing field {exc}") from None
    else:
        p, q, S, T = raw

    p = tuple(int(x) for x in p)
    q = tuple(int(x) for x in q)
    S = tuple(frozenset(int(x) for x in s) for s in S)
    T = tuple(frozenset(int(x) for x in t) for t in T)

    if any(x < 1 for x in p) or any(x < 1 for x in q):
        raise SetOutOfRange("entries of p and q must be positive")
    if not (len(q) == len(p) and len(S) == len(p) and len(T) == len(p)):
        raise LengthMismatch(
            f"|p|={len(p)}, |q|={len(q)}, |S|={len(S)}, |T|={len(T)} must agree"
        )
    if sum(p) < 2:
        raise SumTooSmall(f"sum(p) = {sum(p)} < 2")
    for i in range(len(p)):
        top = p[i] + len(T[i])
        if not T[i] <= S[i]:
            raise SetOutOfRange(f"strand {i + 1}: T_i must be a subset of S_i")
        if any(j < 2 or j > top for j in S[i]):
            raise SetOutOfRange(
                f"strand {i + 1}: S_i must lie in [2, {top}], got {sorted(S[i])}"
            )
        if any(j + 1 in S[i] for j in S[i]):
            raise ConsecutiveInS(f"strand {i + 1}: S_i contains consecutive integers")
        if top in T[i]:
            raise TopInT(f"strand {i + 1}: p_i + |T_i| = {top} may not lie in T_i")
    return DefiningSystem(p, q, S, T)


def from_json(text: str) -> DefiningSystem:
    return validate(json.loads(text))


def admissible_vertices(ds: DefiningSystem) -> set:
    """All sites where the system can be extended by one S- or T-insertion."""
    out = set()
    for i in range(1, ds.strands + 1):
        s = ds.S[i - 1]
        for j in range(2, ds.top(i) + 1):
            if j - 1 not in s and j not in s and j + 1 not in s:
                out.add(AdmissibleVertex("x", i, j))
        lo = ds.t_last(i) + 2
        for j in sorted(s):
            if lo <= j <= ds.top(i):
                out.add(AdmissibleVertex("z", i, j))
    return out


def extend(ds: DefiningSystem, v: AdmissibleVertex) -> DefiningSystem:
    """Insert v.j into S (x-kind) or T (z-kind) of strand v.i."""
    if v not in admissible_vertices(ds):
        raise NotAdmissible(f"{v} is not admissible for {ds}")
    S, T = list(ds.S), list(ds.T)
    if v.kind == "x":
        S[v.i - 1] = S[v.i - 1] | {v.j}
    else:
        T[v.i - 1] = T[v.i - 1] | {v.j}
    return validate((ds.p, ds.q, tuple(S), tuple(T)))


def reduce_to_fundamental(ds: DefiningSystem):
    """Express ds as a chain of admissible insertions from its fundamental system.

    Returns (fundamental, chain) with replay(extend, chain) == ds.  Deterministic:
    at each step S-insertions are tried left to right per strand before
    T-insertions, backtracking if a prefix cannot be completed.
    """
    target = ds
    fund = ds.fundamental()

    def candidates(cur: DefiningSystem):
        adm = admissible_vertices(cur)
        for i in range(1, cur.strands + 1):
            for j in sorted(target.S[i - 1] - cur.S[i - 1]):
                v = AdmissibleVertex("x", i, j)
                if v in adm:
                    yield v
        for i in range(1, cur.strands + 1):
            for j in sorted(target.T[i - 1] - cur.T[i - 1]):
                v = AdmissibleVertex("z", i, j)
                if v in adm:
                    yield v

    dead = set()

    def search(cur: DefiningSystem, chain: list):
        if cur.S == target.S and cur.T == target.T:
            return chain
        key = (cur.S, cur.T)
        if key in dead:
            return None
        for v in candidates(cur):
            found = search(extend(cur, v), chain + [v])
            if found is not None:
                return found
        dead.add(key)
        return None

    chain = search(fund, [])
    if chain is None:
        raise NoValidOrder(f"no admissible insertion order reaches {ds}")
    return fund, chain
