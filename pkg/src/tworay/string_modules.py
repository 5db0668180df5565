"""Matrix representations attached to strings and bands.

Every constructor lays out string skeletons: position i of a word c_1 ... c_n
carries a basis vector at the vertex between c_i and c_{i+1} (position 0 at
the terminating end).  The skeleton action is: an alpha-letter c_i sends v_i
to v_{i-1}, a reversed letter c_{i+1} sends v_i to v_{i+1}.  On top of that
the families add the extra vectors v', v'' and the band couplings.

Basis labels sort v'' < v' < v_i < v_i' < v_i^{(j)} at every vertex, so all
matrices are reproducible across runs.
"""

import numpy as np

from .field import PrimeField
from .quiver import Quiver
from .strings import EMPTY, StringWord, WordCalculus, NotAString


class NotInSx(ValueError):
    pass


class PrefixMissing(ValueError):
    pass


class NotAPair(ValueError):
    pass


class LambdaZero(ValueError):
    pass


class NotABand(ValueError):
    pass


_LABEL_RANK = {"vpp": 0, "vp": 1, "v": 2, "vq": 3, "vb": 4}


def _label_key(label):
    return (_LABEL_RANK[label[0]],) + tuple(label[1:])


class Representation:
    """Vertex spaces with ordered basis labels plus one matrix per arrow."""

    def __init__(self, quiver: Quiver, field, spaces, maps):
        self.quiver = quiver
        self.field = field
        self.spaces = {v: tuple(spaces.get(v, ())) for v in quiver.vertices}
        self.maps = {}
        for a in quiver.arrows:
            rows = len(self.spaces[quiver.target[a]])
            cols = len(self.spaces[quiver.source[a]])
            m = maps.get(a)
            if m is None:
                m = field.zeros(rows, cols)
            else:
                m = np.asarray(m, dtype=np.int64) % field.p
                assert m.shape == (rows, cols), f"bad shape for {a}: {m.shape}"
            self.maps[a] = m
        for v, labels in self.spaces.items():
            assert len(set(labels)) == len(labels), f"duplicate labels at {v}"

    def dim(self, v: str) -> int:
        return len(self.spaces[v])

    def dim_vector(self) -> dict:
        return {v: len(ls) for v, ls in self.spaces.items()}

    def dim_tuple(self) -> tuple:
        return tuple(len(self.spaces[v]) for v in self.quiver.vertices)

    @property
    def total_dim(self) -> int:
        return sum(len(ls) for ls in self.spaces.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, arrows) -> np.ndarray:
        """Matrix of a path acting on the module (rightmost arrow acts first)."""
        src = self.quiver.path_source(arrows)
        m = self.field.eye(self.dim(src))
        for a in reversed(arrows):
            m = self.field.mul(self.maps[a], m)
        return m

    def direct_sum(self, other: "Representation") -> "Representation":
        assert self.quiver is other.quiver and self.field == other.field
        spaces = {}
        for v in self.quiver.vertices:
            spaces[v] = tuple(("L",) + l for l in self.spaces[v]) + tuple(
                ("R",) + l for l in other.spaces[v]
            )
        maps = {}
        for a in self.quiver.arrows:
            m1, m2 = self.maps[a], other.maps[a]
            m = self.field.zeros(m1.shape[0] + m2.shape[0],
                                 m1.shape[1] + m2.shape[1])
            if m1.size:
                m[: m1.shape[0], : m1.shape[1]] = m1
            if m2.size:
                m[m1.shape[0]:, m1.shape[1]:] = m2
            maps[a] = m
        return Representation(self.quiver, self.field, spaces, maps)

    def to_json_obj(self):
        return {
            "field": self.field.p,
            "spaces": {v: ["|".join(map(str, l)) for l in ls]
                       for v, ls in sorted(self.spaces.items()) if ls},
            "maps": {a: m.tolist() for a, m in sorted(self.maps.items())
                     if m.size},
        }

    def __repr__(self):
        dv = {v: d for v, d in self.dim_vector().items() if d}
        return f"Representation(dim={self.total_dim}, {dv})"


def zero_representation(quiver: Quiver, field) -> Representation:
    return Representation(quiver, field, {}, {})


def check_relations(rep: Representation, relations) -> list:
    """Evaluate every relation on the representation; list the violations."""
    bad = []
    F = rep.field
    for rel in relations:
        acc = None
        for coef, arrows in rel.terms:
            term = F.scale(coef, rep.path_matrix(arrows))
            acc = term if acc is None else F.add(acc, term)
        if not F.is_zero(acc):
            bad.append((rel, acc))
    return bad


def dim_vector(rep: Representation) -> dict:
    return rep.dim_vector()


class InventoryEntry:
    """One classification entry: family tag, parameters, representation."""

    def __init__(self, tag, params, rep):
        self.tag = tag
        self.params = params
        self.rep = rep

    @property
    def key(self):
        return (self.tag,) + self.params

    def __repr__(self):
        return f"<{self.tag} {self.params} dim={self.rep.total_dim}>"


class StringModules:
    """The six representation families over one defining-system algebra."""

    def __init__(self, calc: WordCalculus, field=None):
        self.calc = calc
        self.quiver = calc.quiver
        self.field = field if field is not None else PrimeField(32003)

    # -- assembly helpers ----------------------------------------------------

    def _skeleton(self, word: StringWord, side: str, vertex_labels, entries,
                  band: bool = False):
        """Lay out one word's positions and generic arrow action.

        Positions run over the I-set [0, n] for strings and the J-set
        [0, n-1] for bands.  Labels are (side, i) or (side, copy, i).
        """
        n = word.length
        top = n - 1 if band else n
        for i in range(top + 1):
            v = self.calc.position_vertex(word, i)
            vertex_labels.setdefault(v, []).append((side, i))
        primed = self.quiver.primed
        for i in range(1, top + 1):
            c = word.letters[i - 1]
            if c in primed:
                entries.setdefault(c, []).append(((side, i - 1), (side, i), 1))
        for i in range(0, (n - 2 if band else n - 1) + 1):
            c = word.letters[i]
            if c not in primed:
                entries.setdefault(c, []).append(((side, i + 1), (side, i), 1))

    def _assemble(self, vertex_labels, entries) -> Representation:
        spaces = {
            v: tuple(sorted(labels, key=_label_key))
            for v, labels in vertex_labels.items()
        }
        label_pos = {}
        label_vertex = {}
        for v, labels in spaces.items():
            for k, l in enumerate(labels):
                label_pos[l] = k
                label_vertex[l] = v
        F = self.field
        maps = {}
        for a, triples in entries.items():
            rows = len(spaces.get(self.quiver.target[a], ()))
            cols = len(spaces.get(self.quiver.source[a], ()))
            m = F.zeros(rows, cols)
            for tgt, src, coef in triples:
                assert label_vertex[src] == self.quiver.source[a], (a, src)
                assert label_vertex[tgt] == self.quiver.target[a], (a, tgt)
                m[label_pos[tgt], label_pos[src]] = (
                    m[label_pos[tgt], label_pos[src]] + coef) % F.p
            maps[a] = m
        return Representation(self.quiver, F, spaces, maps)

    # -- the six families ------------------------------------------------------

    def construct_M(self, word) -> Representation:
        if word is EMPTY:
            return zero_representation(self.quiver, self.field)
        if not isinstance(word, StringWord):
            raise NotAString(f"not a string: {word!r}")
        ok, why = self.calc.check_string(word.letters)
        if not ok:
            raise NotAString(why)
        vertex_labels, entries = {}, {}
        self._skeleton(word, "v", vertex_labels, entries)
        return self._assemble(vertex_labels, entries)

    def construct_N(self, x: str, word) -> Representation:
        if x not in self.quiver.q0_primed():
            raise NotInSx(f"{x} is not in Q0'")
        if word is EMPTY:
            gamma = self.quiver.gamma_of(x)
            return self.construct_M(self.calc.trivial(self.quiver.source[gamma]))
        if not self.calc.in_s_x(word, x):
            raise NotInSx(f"{word} is not in S_{x}")
        vertex_labels, entries = {}, {}
        self._skeleton(word, "v", vertex_labels, entries)
        alpha, gamma = self.quiver.alpha_of(x), self.quiver.gamma_of(x)
        vertex_labels.setdefault(self.quiver.target[alpha], []).append(("vp",))
        vertex_labels.setdefault(self.quiver.source[gamma], []).append(("vpp",))
        blen = self.calc.band_of(x).length
        p_c = self.calc.p_count(word, x)
        for p in range(p_c + 1):
            entries.setdefault(alpha, []).append((("vp",), ("v", p * blen), 1))
        entries.setdefault(gamma, []).append((("v", 0), ("vpp",), 1))
        return self._assemble(vertex_labels, entries)

    def construct_L(self, x: str, word: StringWord) -> Representation:
        if x not in self.quiver.q0_doubleprimed():
            raise NotInSx(f"{x} is not in Q0''")
        if not self.calc.in_s_x(word, x):
            raise NotInSx(f"{word} is not in S_{x}")
        p_c = self.calc.p_count(word, x)
        if p_c == 0:
            raise PrefixMissing(f"{word} carries no B_x prefix at {x}")
        vertex_labels, entries = {}, {}
        self._skeleton(word, "v", vertex_labels, entries)
        alpha = self.quiver.alpha_of(x)
        vertex_labels.setdefault(self.quiver.target[alpha], []).append(("vp",))
        blen = self.calc.band_of(x).length
        for p in range(p_c + 1):
            entries.setdefault(alpha, []).append((("vp",), ("v", p * blen), 1))
        return self._assemble(vertex_labels, entries)

    def construct_NCC(self, x: str, c, cp) -> Representation:
        """N(C, C') with the degenerate conventions for C' in {EMPTY, C, B_x C}."""
        if x not in self.quiver.q0_primed():
            raise NotAPair(f"{x} is not in Q0'")
        calc = self.calc
        if cp is EMPTY:
            gamma = self.quiver.gamma_of(x)
            return self.construct_M(calc.word((gamma,) + c.letters))
        if not (calc.in_s_x(c, x) and calc.in_s_x(cp, x)):
            raise NotAPair(f"({c}, {cp}) not inside S_{x} x S_{x}")
        if calc.word_key(c) == calc.word_key(cp):
            return self.construct_N(x, c).direct_sum(self.construct_M(c))
        bx = calc.band_of(x)
        if not bx.is_trivial:
            bxc = StringWord(bx.letters + c.letters)
            if calc.word_key(cp) == calc.word_key(bxc):
                gamma = self.quiver.gamma_of(x)
                return self.construct_L(x, bxc).direct_sum(
                    self.construct_M(calc.word((gamma,) + c.letters)))
            if calc.compare(cp, bxc) > 0:
                raise NotAPair(f"({c}, {cp}) violates C' < B_x C at {x}")
        if calc.compare(c, cp) >= 0:
            raise NotAPair(f"({c}, {cp}) violates C < C'")
        vertex_labels, entries = {}, {}
        self._skeleton(c, "v", vertex_labels, entries)
        self._skeleton(cp, "vq", vertex_labels, entries)
        alpha, gamma = self.quiver.alpha_of(x), self.quiver.gamma_of(x)
        vertex_labels.setdefault(self.quiver.target[alpha], []).append(("vp",))
        vertex_labels.setdefault(self.quiver.source[gamma], []).append(("vpp",))
        blen = self.calc.band_of(x).length
        for p in range(calc.p_count(c, x) + 1):
            entries.setdefault(alpha, []).append((("vp",), ("v", p * blen), 1))
        for p in range(calc.p_count(cp, x) + 1):
            entries.setdefault(alpha, []).append((("vp",), ("vq", p * blen), 1))
        entries.setdefault(gamma, []).append((("v", 0), ("vpp",), 1))
        return self._assemble(vertex_labels, entries)

    def _band_skeleton(self, band: StringWord, m: int, lam: int):
        """m copies of the band word coupled through the closing letter."""
        n = band.length
        closing = band.letters[-1]
        assert closing not in self.quiver.primed, "band must close on a reversed letter"
        vertex_labels, entries = {}, {}
        primed = self.quiver.primed
        for j in range(1, m + 1):
            for i in range(n):
                v = self.calc.position_vertex(band, i)
                vertex_labels.setdefault(v, []).append(("vb", j, i))
            for i in range(1, n):
                c = band.letters[i - 1]
                if c in primed:
                    entries.setdefault(c, []).append(
                        (("vb", j, i - 1), ("vb", j, i), 1))
            for i in range(0, n - 1):
                c = band.letters[i]
                if c not in primed:
                    entries.setdefault(c, []).append(
                        (("vb", j, i + 1), ("vb", j, i), 1))
            entries.setdefault(closing, []).append(
                (("vb", j, 0), ("vb", j, n - 1), lam))
            if j < m:
                entries.setdefault(closing, []).append(
                    (("vb", j + 1, 0), ("vb", j, n - 1), 1))
        return vertex_labels, entries

    def construct_R(self, band: StringWord, lam: int, m: int) -> Representation:
        lam = self.field.red(lam)
        if lam == 0:
            raise LambdaZero("lambda must be a unit")
        if m == 0:
            return zero_representation(self.quiver, self.field)
        vertex_labels, entries = self._band_skeleton(band, m, lam)
        return self._assemble(vertex_labels, entries)

    def construct_Qband(self, x: str, m: int) -> Representation:
        if x not in self.quiver.q0_doubleprimed():
            raise NotABand(f"{x} is not in Q0''")
        if m < 1:
            raise NotABand("m must be positive")
        band = self.calc.band_of(x)
        vertex_labels, entries = self._band_skeleton(band, m, 1)
        alpha = self.quiver.alpha_of(x)
        vertex_labels.setdefault(self.quiver.target[alpha], []).append(("vp",))
        entries.setdefault(alpha, []).append((("vp",), ("vb", 1, 0), 1))
        return self._assemble(vertex_labels, entries)

    # -- the bounded inventory ---------------------------------------------------

    def theorem_inventory(self, bound: int, lam_sample=(2, 3, 5)):
        """All classification entries of total dimension <= bound.

        The band parameter runs over lam_sample plus 1 (the theorem's family
        carries every unit; 1 is included for every band so the tube mouths
        referenced by the almost-split-sequence rows are present).
        """
        calc = self.calc
        entries = []
        for w in calc.all_strings(max(bound - 1, 0)):
            entries.append(InventoryEntry("M", (calc.word_key(w),),
                                          self.construct_M(w)))
        for x in self.quiver.q0_primed():
            for w in calc.s_x(x, bound - 3):
                entries.append(InventoryEntry("N", (x, calc.word_key(w)),
                                              self.construct_N(x, w)))
        for x in self.quiver.q0_doubleprimed():
            bx = calc.band_of(x)
            for w in calc.s_x(x, bound - 2 - bx.length):
                bxw = StringWord(bx.letters + w.letters)
                entries.append(InventoryEntry("L", (x, calc.word_key(bxw)),
                                              self.construct_L(x, bxw)))
        for x in self.quiver.q0_primed():
            for c, cp in calc.pairs_p_x(x, bound - 4):
                entries.append(InventoryEntry(
                    "NCC", (x, calc.word_key(c), calc.word_key(cp)),
                    self.construct_NCC(x, c, cp)))
        lams = []
        for l in tuple(lam_sample) + (1,):
            l = self.field.red(l)
            if l and l not in lams:
                lams.append(l)
        for name, band in calc.bands():
            if band.length <= 0:
                continue
            m = 1
            while m * band.length <= bound:
                for lam in lams:
                    entries.append(InventoryEntry(
                        "R", (name, int(lam), m),
                        self.construct_R(band, lam, m)))
                m += 1
        for x in self.quiver.q0_doubleprimed():
            blen = calc.band_of(x).length
            m = 1
            while m * blen + 1 <= bound:
                entries.append(InventoryEntry("Qband", (x, m),
                                              self.construct_Qband(x, m)))
                m += 1
        entries.sort(key=lambda e: repr(e.key))
        return entries
