import json

import pytest

from tworay import EMPTY, StringWord
from tworay.strings import DifferentTerminus, NotAString

def test_forbidden_run_detected(ex14):
    calc = ex14.calc
    ok, why = calc.is_string(("alpha:1:4", "alpha:1:5", "alpha:1:6",
                              "alpha:1:7"))
    assert not ok and "position 0" in why


def test_band_word_is_string(ex14):
    ok, _ = ex14.calc.is_string(
        ("alpha:1:5", "alpha:1:6", "alpha:1:7", "xi:1:1", "gamma:1:4"))
    assert ok


def test_single_arrows_are_strings(ex14):
    for a in ex14.quiver.arrows:
        assert ex14.calc.is_string((a,))[0]


def test_not_composable_diagnostic(ex14):
    ok, why = ex14.calc.is_string(("alpha:1:1", "alpha:1:3"))
    assert not ok and "composable" in why


def test_index_sets_trivial(ex14):
    calc = ex14.calc
    J, I = calc.index_sets(calc.trivial("x:1:4"))
    assert J == {} and I == {"x:1:4": [0]}


def test_index_sets_one_letter(fund21):
    calc = fund21.calc
    J, I = calc.index_sets(calc.word(("alpha:1:1",)))
    assert J == {"x:1:0": [0]}
    assert I == {"x:1:0": [0], "x:1:1": [1]}


def test_index_sets_band_closes(ex14):
    calc = ex14.calc
    bx = calc.band_of("x:1:4")
    _, I = calc.index_sets(bx)
    assert I["x:1:4"] == [0, 5]


def test_position_partition(ex14):
    calc = ex14.calc
    for w in calc.all_strings(6):
        _, I = calc.index_sets(w)
        assert sum(len(ps) for ps in I.values()) == w.length + 1


def test_extremal_strings(ex14):
    calc = ex14.calc
    assert calc.omega("x:1:0").letters == tuple(
        f"alpha:1:{j}" for j in range(1, 7))
    assert calc.mu("x:1:0").is_trivial
    # sinks of Q*: a vertex with no Q*-in-arrows has trivial omega and mu
    for v in ex14.quiver.vertices:
        if calc.omega(v).is_trivial and calc.mu(v).is_trivial:
            assert all(ex14.quiver.t_star[a] != v for a in ex14.quiver.arrows)


def test_bands(ex14):
    calc = ex14.calc
    bx = calc.band_of("x:1:4")
    assert bx.letters == ("alpha:1:5", "alpha:1:6", "alpha:1:7", "xi:1:1",
                          "gamma:1:4")
    assert bx.length == 5
    assert calc.band_of("x:1:6").length == 4
    b0 = calc.band_b0()
    assert b0.length == 13
    assert calc.terminus(b0) == calc.source(b0) == "x:1:0"
    for name, b in calc.bands():
        assert calc.terminus(b) == calc.source(b)


def test_band_powers_are_strings(ex14):
    calc = ex14.calc
    for x in ex14.quiver.q0_doubleprimed():
        bx = calc.band_of(x)
        for power in (1, 2, 3):
            assert calc.is_string(bx.letters * power)[0]


def test_p_count(ex14):
    calc = ex14.calc
    x = "x:1:4"
    bx = calc.band_of(x)
    assert calc.p_count(calc.trivial(x), x) == 0
    assert calc.p_count(StringWord(bx.letters * 2), x) == 2
    tail = calc.mu(x)
    assert calc.p_count(StringWord(bx.letters + tail.letters), x) == 1


def test_compare(fund21):
    calc = fund21.calc
    x = "x:1:0"
    triv = calc.trivial(x)
    assert calc.compare(calc.mu(x), calc.omega(x)) <= 0
    assert calc.compare(triv, triv) == 0
    assert calc.compare(calc.word(("alpha:1:1",)), triv) == 1
    with pytest.raises(DifferentTerminus):
        calc.compare(calc.trivial("x:1:0"), calc.trivial("x:1:1"))


def test_order_is_total_on_bounded_sets(ex14):
    calc = ex14.calc
    for x in ("x:1:0", "x:1:4", "z:1:4"):
        words = calc.strings_terminating_at(x, 5)
        for i, a in enumerate(words):
            for b in words[i + 1:]:
                assert calc.compare(a, b) == -1
                assert calc.compare(b, a) == 1
        if words:
            mu, om = calc.mu(x), calc.omega(x)
            if mu.length <= 5:
                assert words[0].letters == mu.letters
            if om.length <= 5:
                assert words[-1].letters == om.letters


def test_successor_basics(fund21):
    calc = fund21.calc
    assert calc.successor(calc.omega("x:1:0")) is EMPTY
    assert calc.co_successor(calc.nu("x:1:0")) is EMPTY
    s = calc.successor(calc.trivial("x:1:0"))
    assert s.letters == ("alpha:1:1",)


def test_successor_t_system(tsys):
    calc = tsys.calc
    x = "x:1:2"
    assert calc.successor(calc.trivial(x)).letters == (
        "alpha:1:3", "xi:1:1", "gamma:1:2", "beta:1:1")
    # alpha_x . trivial equals omega_{x_{1,1}} = nu omega there, so both the
    # plain successor and the diagonal successor vanish
    w = calc.word(("alpha:1:2",))
    assert calc.successor(w) is EMPTY
    assert calc.bi_successor(w) is EMPTY


def test_order_successor_coherence(ex14):
    calc = ex14.calc
    bound = 5
    for x in ("x:1:0", "x:2:0", "x:1:4"):
        words = calc.strings_terminating_at(x, bound)
        for w in words:
            s = calc.successor(w)
            if s is EMPTY:
                continue
            assert calc.compare(w, s) == -1
            # nothing within the bound lies strictly between w and w+
            for d in words:
                assert not (calc.compare(w, d) == -1
                            and calc.compare(d, s) == -1), (w, d, s)


def test_bi_successor_well_defined(ex14):
    calc = ex14.calc
    nu_omegas = set()
    for x in ex14.quiver.vertices:
        nu_omegas.add(calc.word_key(calc.concat(calc.nu(x), calc.omega(x))))
    for w in calc.all_strings(5):
        s, c = calc.successor(w), calc.co_successor(w)
        sl = s.length if s is not EMPTY else -1
        cl = c.length if c is not EMPTY else -1
        bi = calc.bi_successor(w)
        if sl + cl < w.length:
            assert bi is EMPTY
            assert calc.word_key(w) in nu_omegas
        else:
            assert bi is not EMPTY
            assert calc.word_key(w) not in nu_omegas
            if s is not EMPTY and c is not EMPTY:
                assert calc.co_successor(s).letters == bi.letters
                assert calc.successor(c).letters == bi.letters


def test_nu_omega_always_strings(ex14):
    calc = ex14.calc
    for x in ex14.quiver.vertices:
        w = calc.concat(calc.nu(x), calc.omega(x))
        assert calc.is_string(w.letters)[0]


def test_s_x_families(ex14, tsys):
    calc = ex14.calc
    # x in Q0' \ Q0'': every string terminating there belongs to S_x
    x = "x:1:8"
    assert x in ex14.quiver.q0_primed()
    assert x not in ex14.quiver.q0_doubleprimed()
    for w in calc.strings_terminating_at(x, 5):
        assert calc.in_s_x(w, x)
    # x in Q0'': omega_x is excluded, and alpha_x C membership follows the
    # terminating-substring criterion
    calct = tsys.calc
    xt = "x:1:2"
    om = calct.omega(xt)
    assert not calct.in_s_x(om, xt)
    for w in calct.s_x(xt, 6):
        _, rest = calct.strip_band(w, xt)
        assert not calct.is_terminating_substring(om, rest)
        gamma_w = ("gamma:1:2",) + w.letters
        assert calct.is_string(gamma_w)[0]


def test_s_prime_exclusions(ex14):
    calc = ex14.calc
    sp = {calc.word_key(w) for w in calc.s_prime(6)}
    for x in calc.quiver.vertices:
        w = calc.concat(calc.nu(x), calc.omega(x))
        if w.length <= 6:
            assert calc.word_key(w) not in sp
    for x in ex14.quiver.q0_primed():
        for c in calc.s_x(x, 6):
            assert calc.word_key(c) not in sp


def test_pairs_p_x(tsys):
    calc = tsys.calc
    x = "x:1:2"
    pairs = calc.pairs_p_x(x, 6)
    assert pairs
    bx = calc.band_of(x)
    for c, cp in pairs:
        assert calc.compare(c, cp) == -1
        bxc = StringWord(bx.letters + c.letters)
        assert calc.compare(cp, bxc) == -1


def test_closing_remark_scoped(ex14, tsys, fund21):
    # for x in Q0', C in S_x with alpha_x C a string: +(alpha_x C) = C, and
    # (alpha_x C)+ = alpha_x (C+) provided C != omega_x and alpha_x C+ is a
    # string; the proviso genuinely fails in the smallest T-system, where
    # trivial_+ = B_x mu_x starts with omega_x
    for c in (ex14, tsys, fund21):
        calc = c.calc
        for x in c.quiver.q0_primed():
            alpha = c.quiver.alpha_of(x)
            omega = calc.omega(x)
            for w in calc.s_x(x, 4):
                if not calc.check_string((alpha,) + w.letters)[0]:
                    assert x in c.quiver.q0_doubleprimed()
                    assert calc.is_terminating_substring(omega, w)
                    continue
                aw = StringWord((alpha,) + w.letters)
                co = calc.co_successor(aw)
                assert co is not EMPTY and co.letters == w.letters
                wp = calc.successor(w)
                if w.letters != omega.letters and wp is not EMPTY and \
                        calc.check_string((alpha,) + wp.letters)[0]:
                    suc = calc.successor(aw)
                    assert suc is not EMPTY
                    assert suc.letters == (alpha,) + wp.letters
        for x in c.quiver.q0_primed():
            if x in c.quiver.q0_doubleprimed():
                continue
            alpha = c.quiver.alpha_of(x)
            aw = StringWord((alpha,) + calc.omega(x).letters)
            assert calc.successor(aw) is EMPTY


def test_alpha_x_membership_rule(tsys):
    # for x in Q0'': alpha_x C is a string iff omega_x is not a terminating
    # substring of C
    calc = tsys.calc
    x = "x:1:2"
    alpha = tsys.quiver.alpha_of(x)
    omega = calc.omega(x)
    for w in calc.strings_terminating_at(x, 6):
        lhs = calc.is_string((alpha,) + w.letters)[0]
        rhs = not calc.is_terminating_substring(omega, w)
        assert lhs == rhs


def test_serialization(ex14):
    calc = ex14.calc
    w = calc.band_of("x:1:4")
    obj = calc.to_json_obj(w)
    assert obj == list(reversed(w.letters))
    assert calc.from_json_obj(obj).letters == w.letters
    assert calc.to_json_obj(EMPTY) is None
    assert calc.from_json_obj(None) is EMPTY
    t = calc.trivial("z:1:4")
    assert calc.to_json_obj(t) == {"vertex": "z:1:4"}
    assert calc.from_json_obj({"vertex": "z:1:4"}).vertex == "z:1:4"
    assert json.dumps(calc.to_json_obj(w))


def test_trivial_needs_vertex(ex14):
    with pytest.raises(NotAString):
        ex14.calc.word(())


def test_band_of_rejects(ex14):
    from tworay.strings import NotInQ0dd

    with pytest.raises(NotInQ0dd):
        ex14.calc.band_of("x:1:1")
    with pytest.raises(NotInQ0dd):
        ex14.calc.band_of("x:1:0")
    # x in Q0' \ Q0'' gets the trivial band
    assert ex14.calc.band_of("x:1:8").is_trivial


def test_families_bundle(tsys):
    calc = tsys.calc
    s_all, s_x, p_x, bands, s_prime = calc.families(5)
    assert {calc.word_key(w) for w in s_prime} <= {
        calc.word_key(w) for w in s_all}
    assert set(s_x) == set(tsys.quiver.q0_primed())
    assert [n for n, _ in bands][0] == "B0"
    for x, pairs in p_x.items():
        for a, b in pairs:
            assert calc.compare(a, b) == -1


def test_empty_composes_with_nothing(ex14):
    with pytest.raises(NotAString):
        ex14.calc.concat(EMPTY, ex14.calc.trivial("x:1:0"))
    with pytest.raises(NotAString):
        ex14.calc.concat(ex14.calc.trivial("x:1:0"), EMPTY)


def test_b0_visits_every_strand(ex14):
    b0 = ex14.calc.band_b0()
    for i in (1, 2):
        assert f"alpha:{i}:1" in b0.letters
        assert f"beta:{i}:1" in b0.letters


def test_extremal_strings_tuple(ex14):
    calc = ex14.calc
    om, mu, pi, nu = calc.extremal_strings("x:1:0")
    assert om.letters == calc.omega("x:1:0").letters
    assert mu.is_trivial
    assert pi.is_trivial  # nothing in Q1' starts at a sink of the alpha chain
    assert calc.terminus(nu) != "x:1:0" or nu.is_trivial
