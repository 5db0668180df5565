import pytest

from tworay import build_quiver, build_relations, AlgebraBasis
from tworay.defining_system import admissible_vertices
from tworay.vsc import (BadArity, LemmaContext, build_model,
                        hom_pattern_of_functor, i_lemma_vertices,
                        interval_poset, match_model, measure_pattern)

from conftest import ctx


def test_poset_operations():
    I = interval_poset(2, 5)
    assert I.minimum == ("int", 2) and I.maximum == ("int", 5)
    assert I.successor(("int", 3)) == ("int", 4)
    assert I.successor(("int", 5)) is None
    assert len(I.prime()) == 3 and I.prime().maximum is None
    minus = I.minus()
    assert minus.minimum == ("minus_star",) and len(minus) == 5
    plus = I.plus()
    assert plus.maximum == ("plus_star",)
    J = interval_poset(7, 8)
    s = I.ordered_sum(J)
    assert s.elements[0] == ("int", 2) and s.elements[-1] == ("int", 8)
    lex = J.lex_product(I)
    assert lex.elements[0] == (("int", 7), ("int", 2))
    assert len(lex) == 8


def test_l1_model_smallest():
    model = build_model("L1", [interval_poset(1, 1)])
    x, y = ("X", ("int", 1)), ("Y", ("int", 1))
    assert set(model.objects) == {x, y}
    assert model.hom(x, x) == model.hom(x, y) == model.hom(y, y) == 1
    assert model.hom(y, x) == 0


def test_k_model_single_poset():
    # one poset of size 2: I' drops the maximum, leaving a single object
    model = build_model("K", [interval_poset(1, 2)])
    assert model.objects == [("X", 1, ("int", 1))]
    # size 3 gives two objects with an upper-triangular pattern
    model3 = build_model("K", [interval_poset(1, 3)])
    a, b = ("X", 1, ("int", 1)), ("X", 1, ("int", 2))
    assert model3.objects == [a, b]
    assert model3.hom(a, b) == 1 and model3.hom(b, a) == 0
    assert model3.hom(a, a) == model3.hom(b, b) == 1


def test_k_model_two_posets():
    model = build_model("K", [interval_poset(1, 3), interval_poset(4, 5)])
    assert ("Xp", 1) in model.objects and ("Xpp", 1) in model.objects
    assert model.hom(("Xp", 1), ("Xpp", 1)) == 0  # strict p < q required
    assert model.hom(("X", 1, ("int", 1)), ("Xpp", 1)) == 1
    assert model.hom(("Xpp", 1), ("X", 2, ("int", 4))) == 1
    assert model.hom(("X", 2, ("int", 4)), ("X", 1, ("int", 1))) == 0


def test_lf_model_dim_two_cells():
    model = build_model("LF", [interval_poset(0, 2), interval_poset(3, 5)])
    x_min_i1 = ("X", 1, ("int", 3))
    assert model.objdim[x_min_i1] == 2
    assert all(d == 1 for o, d in model.objdim.items() if o != x_min_i1)
    twos = {pair for pair, d in model.homdim.items() if d == 2}
    assert twos == {(("X", 0, ("int", 0)), x_min_i1),
                    (("X", 0, ("int", 1)), x_min_i1)}
    assert model.hom(("Y", ("int", 0)), x_min_i1) == 1
    assert model.hom(("Y", ("int", 0)), ("Z",)) == 1
    assert model.hom(("Xpp", 0), ("Z",)) == 1
    assert model.hom(("Xp", 0), ("Z",)) == 0


def test_bad_arity():
    with pytest.raises(BadArity):
        build_model("LF", [interval_poset(0, 1)])
    with pytest.raises(BadArity):
        build_model("L1", [interval_poset(0, 1), interval_poset(2, 3)])
    with pytest.raises(BadArity):
        build_model("nope", [interval_poset(0, 1)])


def test_model_composability():
    # listed hom pairs compose: hom(u,v) and hom(v,w) nonzero forces
    # hom(u,w) nonzero, except through the corrected X_{min I1} -> Z cell
    # (there the measured composites genuinely vanish in the quotient)
    models = [
        build_model("K", [interval_poset(1, 3), interval_poset(4, 6)]),
        build_model("L1", [interval_poset(1, 4)]),
        build_model("LF", [interval_poset(0, 2), interval_poset(3, 4),
                           interval_poset(5, 6)]),
    ]
    def special(u, v):
        # the two lane-changing cells of the L-family: Y -> X_{min I1} and
        # X_{min I1} -> Z; composites through them genuinely vanish
        into_min = u[0] == "Y" and v[0] == "X"
        out_of_min = v == ("Z",) and u[0] == "X" and u[1] == 1
        return into_min or out_of_min

    for model in models:
        for u in model.objects:
            for v in model.objects:
                if not model.hom(u, v):
                    continue
                for w in model.objects:
                    if model.hom(v, w):
                        if special(u, v) or special(v, w):
                            continue
                        assert model.hom(u, w), (u, v, w)


def test_model_csv():
    model = build_model("L1", [interval_poset(1, 2)])
    csv = model.to_csv()
    assert csv.startswith("object,objdim")
    assert len(csv.strip().splitlines()) == 1 + len(model.objects)


def test_lemma_patterns_small_systems():
    for name in ("fund21", "fund32", "tsys"):
        c = ctx(name)
        for v in sorted(str(a) for a in admissible_vertices(c.ds)):
            for which in ("R", "X"):
                _, _, rep = hom_pattern_of_functor(c.modules, v, which, 5)
                assert rep["ok"], (name, v, which, rep["mismatches"][:3])
        for v in i_lemma_vertices(c.quiver):
            _, _, rep = hom_pattern_of_functor(c.modules, v, "I", 5)
            assert rep["ok"], (name, v, rep["mismatches"][:3])


def test_lemma_pattern_z_kind_multi_poset():
    c = ctx("s24")
    model, measured, rep = hom_pattern_of_functor(c.modules, "z:1:2", "R", 4)
    assert rep["ok"]
    assert model.kind == "LF"
    # r = 1 here: posets I_0, I_1 = [2,3] + C_{x:1:4}, I_2 = [4,6]
    assert any(o[0] == "Xpp" and o[1] == 1 for o in model.objects)


def test_match_model_detects_truncation_skew():
    c = ctx("fund21")
    ctxo = LemmaContext(c.modules)
    model, assign = ctxo.instantiate("x:1:2", "R", 3)
    R = ctxo.module_R("x:1:2")
    measured = measure_pattern(R, assign, c.field, c.quiver)
    # deliberately compare against a model built from a longer truncation:
    # the poset gains elements and the object sets disagree
    model_long, assign_long = ctxo.instantiate("x:1:2", "R", 5)
    assert len(assign_long) > len(assign)
    report = match_model(measured, model_long,
                         objects=sorted(assign_long, key=repr))
    assert not report["ok"]


def test_vacuous_truncation():
    c = ctx("tsys")
    model, measured, rep = hom_pattern_of_functor(c.modules, "x:1:3", "I", 5)
    assert measured[0] == [] and rep["ok"]


def test_one_point_extension_dimension_bookkeeping():
    # dim A[R] = dim A + dim R + 1, cross-checked against the algebra of the
    # extended defining system
    from tworay.defining_system import extend

    for name in ("fund21", "fund32", "s24", "ex14"):
        c = ctx(name)
        ctxo = LemmaContext(c.modules)
        for v in sorted(admissible_vertices(c.ds), key=str):
            R = ctxo.module_R(str(v))
            extended = extend(c.ds, v)
            q2 = build_quiver(extended)
            a2 = AlgebraBasis(q2, build_relations(extended, q2), c.field)
            assert a2.dimension == c.algebra.dimension + R.total_dim + 1, (
                name, str(v))


def test_subspace_triples():
    from tworay.vsc import SubspaceTriple, zero_bar

    model = build_model("L1", [interval_poset(1, 2)])
    zb = zero_bar(model)
    assert zb.v0 == () and zb.v1 == 1 and zb.gamma == ()
    t = SubspaceTriple(model, (("X", ("int", 1)), ("Y", ("int", 2))), 1,
                       ((1,), (0,)))
    assert len(t.gamma) == 2
    with pytest.raises(ValueError):
        SubspaceTriple(model, (("X", ("int", 1)),), 2, ((1,),))


def test_subspace_inventory_single():
    from collections import Counter

    from tworay.vsc import subspace_objects_single, subspace_rows_single

    I = interval_poset(1, 4)
    objs = subspace_objects_single(I)
    rows = subspace_rows_single(I)
    known = set(objs)
    assert len(known) == len(objs)
    for left, mid, right in rows:
        for term in left + mid + right:
            assert term in known
    counts = Counter(t for _, _, right in rows for t in right)
    assert all(v == 1 for v in counts.values())
    lo = ("minus_star",)
    first = I.elements[0]
    uncovered = known - set(counts)
    assert uncovered == ({("M", lo, g) for g in I.elements}
                         | {("Mp", first, first), ("Mpp", first, first)})


def test_subspace_inventory_family():
    from collections import Counter

    from tworay.vsc import subspace_objects_family, subspace_rows_family

    posets = [interval_poset(0, 1), interval_poset(2, 3), interval_poset(4, 5)]
    objs = subspace_objects_family(posets, 4)
    rows = subspace_rows_family(posets, 4)
    known = set(objs)
    assert len(known) == len(objs) == 373
    for left, mid, right in rows:
        for term in left + mid + right:
            assert term in known
    counts = Counter(r[0] for _, _, r in rows if len(r) == 1)
    assert all(v == 1 for v in counts.values())
    # the three tube kinds and every chain family are represented
    kinds = {o[0] for o in objs}
    assert kinds == {"M", "Mp", "Mpp", "R", "R1", "Rinf", "S", "Sp", "Spp",
                     "T", "U", "V", "W", "Wp", "Wpp"}
