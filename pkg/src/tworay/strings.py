"""The word calculus on Q*: strings, index sets, bands, the order, successors.

A string is a path in Q* (the quiver with non-alpha arrows reversed) that
avoids every run alpha_{i,T_{i,j}} ... alpha_{i,p_i+j}.  Letters are stored in
composition order: in c_1 ... c_n the terminating end is on the left, so
position 0 sits at t*(c_1) and position n at s*(c_n).  Terminating substrings
are therefore letter-tuple prefixes.

The extension structure of Q* is thin: at any vertex there is at most one
Q1'-letter and at most one Q1''-letter available on either side, which makes
the order, successors and extremal strings all deterministic scans.
"""

from dataclasses import dataclass

from .quiver import Quiver


class NotAString(ValueError):
    pass


class DifferentTerminus(ValueError):
    pass


class NotInQ0dd(ValueError):
    pass


class _Empty:
    """The formal empty string: length -1, no endpoints, composes with nothing."""

    length = -1

    def __repr__(self):
        return "EMPTY"

    def __bool__(self):
        return False


EMPTY = _Empty()


@dataclass(frozen=True)
class StringWord:
    """A string: letter tuple plus (for trivial strings) the base vertex."""

    letters: tuple
    vertex: str = None  # only consulted when letters is empty

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return f"e({self.vertex})" if self.is_trivial else " ".join(self.letters)


class WordCalculus:
    """All string operations for one bound quiver."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        ds = quiver.ds
        self.forbidden = []
        for i in range(1, ds.strands + 1):
            for j, tj in enumerate(ds.t_sorted(i), start=1):
                run = tuple(
                    f"alpha:{i}:{k}" for k in range(tj, ds.p[i - 1] + j + 1)
                )
                self.forbidden.append(run)
        self._fwd_starts = {run[0]: run for run in self.forbidden}

        # unique one-sided extensions (thinness of Q*)
        self._ext_primed = {}      # u -> alpha with t*(alpha) = u   (source-end)
        self._ext_unprimed = {}    # u -> c in Q1'' with t*(c) = u   (source-end)
        self._pre_primed = {}      # u -> alpha with s*(alpha) = u   (terminus-end)
        self._pre_unprimed = {}    # u -> c in Q1'' with s*(c) = u   (terminus-end)
        for a in quiver.arrows:
            if a in quiver.primed:
                fwd, bwd = self._ext_primed, self._pre_primed
            else:
                fwd, bwd = self._ext_unprimed, self._pre_unprimed
            assert quiver.t_star[a] not in fwd, "Q* extension not unique"
            assert quiver.s_star[a] not in bwd, "Q* extension not unique"
            fwd[quiver.t_star[a]] = a
            bwd[quiver.s_star[a]] = a

    # -- basic word accessors ---------------------------------------------

    def trivial(self, vertex: str) -> StringWord:
        if vertex not in self.quiver.vindex:
            raise NotAString(f"unknown vertex {vertex}")
        return StringWord((), vertex)

    def terminus(self, w: StringWord) -> str:
        return w.vertex if w.is_trivial else self.quiver.t_star[w.letters[0]]

    def source(self, w: StringWord) -> str:
        return w.vertex if w.is_trivial else self.quiver.s_star[w.letters[-1]]

    def word(self, letters, vertex=None) -> StringWord:
        w = StringWord(tuple(letters), vertex)
        if w.is_trivial and vertex is None:
            raise NotAString("a trivial string needs a base vertex")
        ok, why = self.check_string(w.letters)
        if not ok:
            raise NotAString(why)
        return w

    def word_key(self, w: StringWord) -> tuple:
        """Canonical identity of a string: letters plus terminus."""
        return (w.letters, self.terminus(w))

    def check_string(self, letters) -> tuple:
        """(True, '') if the letter tuple is a string, else (False, diagnostic)."""
        letters = tuple(letters)
        q = self.quiver
        for c in letters:
            if c not in q.aindex:
                return False, f"unknown arrow {c}"
        for k in range(len(letters) - 1):
            if q.t_star[letters[k + 1]] != q.s_star[letters[k]]:
                return False, f"not composable in Q* at position {k + 1}"
        for k, c in enumerate(letters):
            run = self._fwd_starts.get(c)
            if run and letters[k : k + len(run)] == run:
                return False, f"forbidden alpha-run at position {k}"
        return True, ""

    def is_string(self, letters) -> tuple:
        return self.check_string(letters)

    def concat(self, left: StringWord, right: StringWord) -> StringWord:
        """left * right with right as starting substring (left at the terminus)."""
        if left is EMPTY or right is EMPTY:
            raise NotAString("the empty string composes with nothing")
        if left.is_trivial:
            if left.vertex != self.terminus(right):
                raise NotAString("endpoints do not match")
            return right
        if right.is_trivial:
            if right.vertex != self.source(left):
                raise NotAString("endpoints do not match")
            return left
        return self.word(left.letters + right.letters)

    def is_terminating_substring(self, part: StringWord, whole: StringWord) -> bool:
        if part.is_trivial:
            return self.terminus(whole) == part.vertex
        return whole.letters[: part.length] == part.letters

    # -- index sets ---------------------------------------------------------

    def position_vertex(self, w: StringWord, i: int) -> str:
        if i < w.length:
            return self.quiver.t_star[w.letters[i]]
        return self.source(w)

    def index_sets(self, w: StringWord):
        """(J, I) mapping vertex -> sorted position lists."""
        if w is EMPTY:
            raise NotAString("index sets undefined for the empty string")
        J = {}
        for i in range(w.length):
            J.setdefault(self.quiver.t_star[w.letters[i]], []).append(i)
        I = {v: list(ps) for v, ps in J.items()}
        I.setdefault(self.source(w), []).append(w.length)
        return J, I

    # -- extremal strings ----------------------------------------------------

    def omega(self, x: str) -> StringWord:
        """Longest Q1'-only string terminating at x."""
        return self._grow_source(self.trivial(x), self._ext_primed)

    def mu(self, x: str) -> StringWord:
        """Longest Q1''-only string terminating at x."""
        return self._grow_source(self.trivial(x), self._ext_unprimed)

    def pi(self, x: str) -> StringWord:
        """Longest Q1'-only string starting at x."""
        return self._grow_terminus(self.trivial(x), self._pre_primed)

    def nu(self, x: str) -> StringWord:
        """Longest Q1''-only string starting at x."""
        return self._grow_terminus(self.trivial(x), self._pre_unprimed)

    def extremal_strings(self, x: str):
        """(omega_x, mu_x, pi_x, nu_x): the four maximal one-sided strings."""
        return (self.omega(x), self.mu(x), self.pi(x), self.nu(x))

    def _grow_source(self, w: StringWord, table) -> StringWord:
        letters = list(w.letters)
        cur = self.source(w)
        while True:
            c = table.get(cur)
            if c is None:
                break
            cand = tuple(letters) + (c,)
            if not self.check_string(cand)[0]:
                break
            letters.append(c)
            cur = self.quiver.s_star[c]
        return StringWord(tuple(letters), w.vertex)

    def _grow_terminus(self, w: StringWord, table) -> StringWord:
        letters = list(w.letters)
        cur = self.terminus(w)
        while True:
            c = table.get(cur)
            if c is None:
                break
            cand = (c,) + tuple(letters)
            if not self.check_string(cand)[0]:
                break
            letters.insert(0, c)
            cur = self.quiver.t_star[c]
        return StringWord(tuple(letters), w.vertex)

    # -- bands ---------------------------------------------------------------

    def band_of(self, x: str) -> StringWord:
        """B_x for x in Q0'': the cycle alpha_{i,T+1} ... alpha_{i,p+j} xi_j gamma_T.

        For x in Q0' \\ Q0'' returns the trivial string at x (B_x = x).
        """
        if x in self.quiver.q0_doubleprimed():
            _, i, j = x.split(":")
            i, tj = int(i), int(j)
            jpos = self.quiver.ds.t_sorted(i).index(tj) + 1
            top = self.quiver.ds.p[i - 1] + jpos
            letters = tuple(f"alpha:{i}:{k}" for k in range(tj + 1, top + 1))
            letters += (f"xi:{i}:{jpos}", f"gamma:{i}:{tj}")
            return self.word(letters)
        if x in self.quiver.q0_primed():
            return self.trivial(x)
        raise NotInQ0dd(f"{x} is not in Q0''")

    def band_b0(self) -> StringWord:
        ds = self.quiver.ds
        letters = []
        for i in range(1, ds.strands + 1):
            letters += [f"alpha:{i}:{j}" for j in range(1, ds.p[i - 1] + 1)]
            letters += [f"beta:{i}:{j}" for j in range(ds.q[i - 1], 0, -1)]
        return self.word(letters)

    def bands(self):
        """The family of bands: B_0 first, then B_x for x in Q0''."""
        out = [("B0", self.band_b0())]
        for x in self.quiver.q0_doubleprimed():
            out.append((x, self.band_of(x)))
        return out

    def p_count(self, w: StringWord, x: str) -> int:
        """Largest p >= 0 with B_x^p a terminating substring of w."""
        if self.terminus(w) != x:
            raise DifferentTerminus(f"{w} does not terminate at {x}")
        bx = self.band_of(x)
        if bx.is_trivial:
            return 0
        p = 0
        while w.letters[p * bx.length : (p + 1) * bx.length] == bx.letters:
            p += 1
        return p

    def strip_band(self, w: StringWord, x: str):
        """(p_C, C') with w = B_x^{p_C} C'."""
        p = self.p_count(w, x)
        n = p * self.band_of(x).length
        rest = StringWord(w.letters[n:], x if n == w.length else None)
        return p, rest

    # -- the linear order and successors --------------------------------------

    def compare(self, a: StringWord, b: StringWord) -> int:
        """-1, 0, 1 for a < b, a = b, a > b among strings with a common terminus."""
        if self.terminus(a) != self.terminus(b):
            raise DifferentTerminus(
                f"{a} and {b} terminate at different vertices"
            )
        if a.letters == b.letters:
            return 0
        k = 0
        while k < min(a.length, b.length) and a.letters[k] == b.letters[k]:
            k += 1
        if k < a.length and a.letters[k] not in self.quiver.primed:
            return -1
        if k < b.length and b.letters[k] not in self.quiver.primed:
            return 1
        if k < b.length and b.letters[k] in self.quiver.primed:
            return -1
        return 1

    def successor(self, w: StringWord):
        """C+ : append the unique alpha and the full mu, or strip beta omega."""
        src = self.source(w)
        a = self._ext_primed.get(src)
        if a is not None and self.check_string(w.letters + (a,))[0]:
            tail = self.mu(self.quiver.source[a])
            return StringWord(w.letters + (a,) + tail.letters, w.vertex)
        k = w.length - 1
        while k >= 0 and w.letters[k] in self.quiver.primed:
            k -= 1
        if k < 0:
            return EMPTY  # w = omega_x
        return StringWord(w.letters[:k], self.terminus(w) if k == 0 else None)

    def co_successor(self, w: StringWord):
        """+C : prepend the unique beta and the full pi, or strip nu alpha."""
        term = self.terminus(w)
        b = self._pre_unprimed.get(term)
        if b is not None and self.check_string((b,) + w.letters)[0]:
            head = self.pi(self.quiver.source[b])
            return StringWord(head.letters + (b,) + w.letters, w.vertex)
        k = 0
        while k < w.length and w.letters[k] not in self.quiver.primed:
            k += 1
        if k == w.length:
            return EMPTY  # w = nu_x
        rest = w.letters[k + 1 :]
        return StringWord(rest, self.source(w) if not rest else None)

    def bi_successor(self, w: StringWord):
        """+C+ : the diagonal successor, EMPTY exactly for C = nu_x omega_x."""
        s = self.successor(w)
        c = self.co_successor(w)
        sl = s.length if s is not EMPTY else -1
        cl = c.length if c is not EMPTY else -1
        if sl + cl < w.length:
            return EMPTY  # w = nu_x omega_x
        if s is not EMPTY:
            return self.co_successor(s)
        return self.successor(c)

    # -- families ---------------------------------------------------------------

    def all_strings(self, bound: int):
        """Every string of length <= bound, breadth-first by length."""
        if bound < 0:
            return []
        cached_bound, cached = getattr(self, "_string_cache", (-1, None))
        if cached_bound >= bound:
            return [w for w in cached if w.length <= bound]
        out = [self.trivial(v) for v in self.quiver.vertices]
        frontier = list(out)
        while frontier:
            nxt = []
            for w in frontier:
                if w.length >= bound:
                    continue
                src = self.source(w)
                for table in (self._ext_primed, self._ext_unprimed):
                    c = table.get(src)
                    if c is None:
                        continue
                    cand = w.letters + (c,)
                    if self.check_string(cand)[0]:
                        nxt.append(StringWord(cand, w.vertex))
            out.extend(nxt)
            frontier = nxt
        self._string_cache = (bound, out)
        return out

    def strings_terminating_at(self, x: str, bound: int):
        """C_x truncated at the length bound, sorted by the linear order."""
        out = [w for w in self.all_strings(bound) if self.terminus(w) == x]
        import functools

        return sorted(out, key=functools.cmp_to_key(self.compare))

    def in_s_x(self, w: StringWord, x: str) -> bool:
        """Membership of the family S_x, for x in Q0'."""
        if self.terminus(w) != x:
            return False
        _, rest = self.strip_band(w, x)
        alpha = self.quiver.alpha_of(x)
        return self.check_string((alpha,) + rest.letters)[0]

    def s_x(self, x: str, bound: int):
        return [w for w in self.strings_terminating_at(x, bound)
                if self.in_s_x(w, x)]

    def pairs_p_x(self, x: str, bound: int):
        """P_x pairs (C, C') with |C| + |C'| <= bound."""
        sx = self.s_x(x, bound)
        in_dd = x in self.quiver.q0_doubleprimed()
        bx = self.band_of(x) if in_dd else None
        out = []
        for a in sx:
            for b in sx:
                if a.length + b.length > bound:
                    continue
                if self.compare(a, b) >= 0:
                    continue
                if in_dd:
                    bxa = StringWord(bx.letters + a.letters,
                                     a.vertex if not bx.letters else None)
                    if self.compare(b, bxa) >= 0:
                        continue
                out.append((a, b))
        return out

    def s_prime(self, bound: int):
        """S' : all strings minus the four excluded families of the main theorem."""
        excluded = set()
        for x in self.quiver.vertices:
            excluded.add(self.word_key(self.concat(self.nu(x), self.omega(x))))
        for x in self.quiver.q0_primed():
            alpha = self.quiver.alpha_of(x)
            for c in self.s_x(x, bound):
                excluded.add(self.word_key(c))
                if self.check_string((alpha,) + c.letters)[0]:
                    excluded.add(self.word_key(StringWord((alpha,) + c.letters)))
        for x in self.quiver.q0_doubleprimed():
            gamma = self.quiver.gamma_of(x)
            for c in self.s_x(x, bound):
                excluded.add(self.word_key(StringWord((gamma,) + c.letters)))
        return [w for w in self.all_strings(bound)
                if self.word_key(w) not in excluded]

    def families(self, bound: int):
        """(S, S_x per x, P_x per x, bands, S') truncated at the length bound."""
        s_all = self.all_strings(bound)
        s_x = {x: self.s_x(x, bound) for x in self.quiver.q0_primed()}
        p_x = {x: self.pairs_p_x(x, bound) for x in self.quiver.q0_primed()}
        return s_all, s_x, p_x, self.bands(), self.s_prime(bound)

    # -- serialization ------------------------------------------------------------

    def to_json_obj(self, w):
        """Arrays carry arrow ids with position 0 last; EMPTY is null."""
        if w is EMPTY:
            return None
        if w.is_trivial:
            return {"vertex": w.vertex}
        return list(reversed(w.letters))

    def from_json_obj(self, obj):
        if obj is None:
            return EMPTY
        if isinstance(obj, dict):
            return self.trivial(obj["vertex"])
        return self.word(reversed(obj))
