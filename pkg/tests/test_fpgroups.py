import random

import pytest

from liftmcg.arith_perm import (
    coset_table,
    perm_closure,
    perm_from_cycles,
    transposition,
)
from liftmcg.fpgroups import (
    EMPTY,
    LiftData,
    Presentation,
    Word,
    abelianization,
    commutator,
    extension_presentation,
    gen,
    mod_sphere_presentation,
    pmod_sphere_presentation,
    psi_images,
    reidemeister_schreier,
    reidemeister_schreier_full,
    relator_key,
    rename_presentation,
    render_presentation,
    render_relator,
    render_word,
    same_relator_sets,
    tietze_simplify,
)


# ---------------------------------------------------------------------------
# words


def test_word_reduction_and_algebra():
    a, b = gen("a"), gen("b")
    assert (a * a.inv()) == EMPTY
    assert (a * b * b.inv()).letters == (("a", 1),)
    assert (a ** -2).letters == (("a", -1), ("a", -1))
    assert (a * b).inv() == b.inv() * a.inv()
    assert commutator(a, b).letters == (("a", 1), ("b", 1), ("a", -1), ("b", -1))
    assert (a ** 0) == EMPTY


def test_word_render():
    a, b = gen("a"), gen("b")
    assert render_word(EMPTY) == "1"
    assert render_word(a ** 2 * b ** -3) == "a^2*b^-3"
    assert render_word(a * b * a.inv()) == "a*b*a^-1"


def test_render_relator_and_presentation():
    a, b = gen("a"), gen("b")
    p = Presentation(("a", "b"), (a ** 2 * b ** -3, commutator(a, b)))
    assert render_relator(a ** 2 * b ** -3) == "a^2 = b^3"
    assert render_relator(commutator(a, b)) == "[a,b] = 1"
    assert render_presentation(p) == "<a, b | a^2 = b^3, [a,b] = 1>"
    assert render_presentation(Presentation((), ())) == "<1>"
    assert render_presentation(Presentation(("a",), ())) == "<a | >"


def test_presentation_validates_letters():
    with pytest.raises(ValueError):
        Presentation(("a",), (gen("b"),))
    with pytest.raises(ValueError):
        Presentation(("a", "a"), ())


def test_relator_key_cyclic_and_inverse():
    a, b = gen("a"), gen("b")
    w = a * b * a ** -1 * b ** -2  # cyclically reduced
    rotations = [Word(w.letters[i:] + w.letters[:i]) for i in range(len(w.letters))]
    assert all(relator_key(w) == relator_key(r) for r in rotations)
    assert relator_key(w) == relator_key(w.inv())
    # conjugates agree through cyclic reduction
    assert relator_key(a * w * a ** -1) == relator_key(w)
    assert relator_key(a * b) != relator_key(a * b.inv())


# ---------------------------------------------------------------------------
# sphere presentations


def test_mod_sphere_counts():
    p = mod_sphere_presentation(4)
    assert len(p.generators) == 3
    assert len(p.relators) == 6  # 2 commutations + 2 braids + chain + palindrome
    assert abelianization(p) == ((6,), 0)
    with pytest.raises(ValueError):
        mod_sphere_presentation(2)


def test_mod_sphere_k3_index_of_trivial_subgroup():
    p = mod_sphere_presentation(3)
    psi = psi_images(3)
    trivial = perm_closure([], 3)
    table = coset_table(trivial, [psi[g] for g in p.generators])
    assert len(table) == 6


def test_mod_sphere_relators_die_in_symmetric_group():
    from liftmcg.fpgroups import evaluate_perm
    from liftmcg.arith_perm import identity_perm

    for k in (3, 4, 5, 6):
        p = mod_sphere_presentation(k)
        psi = psi_images(k)
        for r in p.relators:
            assert evaluate_perm(r, psi, k) == identity_perm(k)


def test_pmod_sphere_small():
    p3 = pmod_sphere_presentation(3)
    assert p3.generators == ("a12",)
    assert tietze_simplify(p3) == Presentation((), ())

    p4 = pmod_sphere_presentation(4)
    assert p4.generators == ("a12", "a13", "a23")
    assert abelianization(p4) == ((), 2)
    t4 = tietze_simplify(p4)
    assert len(t4.generators) == 2 and not t4.relators  # free of rank 2


def test_pmod_sphere_abelianization_all_ones_row():
    # families (i)-(iv) abelianize to zero; only the boundary product remains
    p5 = pmod_sphere_presentation(5)
    assert abelianization(p5) == ((), 5)


def test_pure_generators_as_half_twist_words():
    from liftmcg.fpgroups import a_in_sigmas, evaluate_perm
    from liftmcg.arith_perm import identity_perm

    # a_ij is a pure mapping class: its marked-point image is trivial
    for k in (4, 5, 6):
        psi = psi_images(k)
        for i in range(1, k - 1):
            for j in range(i + 1, k):
                w = a_in_sigmas(i, j)
                assert evaluate_perm(w, psi, k) == identity_perm(k)
    # a_{i,i+1} is the square of the adjacent half-twist
    assert a_in_sigmas(1, 2) == gen("s1") ** 2


# ---------------------------------------------------------------------------
# Reidemeister-Schreier


def test_rs_index_one_is_renaming():
    p = mod_sphere_presentation(4)
    psi = psi_images(4)
    full = perm_closure([psi[g] for g in p.generators], 4)
    out = reidemeister_schreier(p, psi, full)
    mapping = {f"x0_{g}": g for g in p.generators}
    assert same_relator_sets(rename_presentation(out, mapping), p)


def test_rs_prop_case_one_abelianization():
    # preimage of <(1,2),(3,4)>: independent SNF oracle value Z + Z2 + Z2
    p = mod_sphere_presentation(4)
    psi = psi_images(4)
    H = perm_closure([transposition(1, 2, 4), transposition(3, 4, 4)], 4)
    out = reidemeister_schreier(p, psi, H)
    assert abelianization(out) == ((2, 2), 1)

    explicit = Presentation(
        ("s1", "s3", "a13"),
        (gen("s3") ** 2 * gen("s1") ** -2,
         commutator(gen("s1"), gen("s3")),
         (gen("s1") * gen("a13")) ** 2,
         (gen("s3") * gen("a13")) ** 2))
    assert abelianization(explicit) == ((2, 2), 1)


def test_rs_prop_case_two_abelianization():
    # preimage of <(1,2)(3,4)>: independent SNF oracle value Z^2 + Z2
    p = mod_sphere_presentation(4)
    psi = psi_images(4)
    H = perm_closure([perm_from_cycles([(1, 2), (3, 4)], 4)], 4)
    out = reidemeister_schreier(p, psi, H)
    assert abelianization(out) == ((2,), 2)

    explicit = Presentation(
        ("a12", "a13", "d"),
        (gen("d") ** 2, commutator(gen("a12"), gen("d")),
         commutator(gen("a13"), gen("d"))))
    assert abelianization(explicit) == ((2,), 2)


def test_rs_schreier_rank_bookkeeping():
    p = mod_sphere_presentation(4)
    psi = psi_images(4)
    for gens in ([transposition(1, 2, 4), transposition(3, 4, 4)],
                 [perm_from_cycles([(1, 2), (3, 4)], 4)],
                 [transposition(2, 3, 4)]):
        H = perm_closure(gens, 4)
        out, info = reidemeister_schreier_full(p, psi, H)
        assert len(out.generators) == info.index * len(p.generators) - (info.index - 1)
        assert info.index * H.order == 24


def test_rs_generator_words_and_images_consistent():
    from liftmcg.fpgroups import evaluate_perm

    p = mod_sphere_presentation(4)
    psi = psi_images(4)
    H = perm_closure([transposition(1, 2, 4), transposition(3, 4, 4)], 4)
    out, info = reidemeister_schreier_full(p, psi, H)
    for name in out.generators:
        image = evaluate_perm(info.generator_words[name], psi, 4)
        assert image == info.generator_images[name]
        assert image in H  # Schreier generators live in the subgroup


def test_rs_rejects_subgroup_outside_image():
    # psi image of <s1> alone is <(1,2)>; the Klein subgroup is not inside
    p = Presentation(("s1",), ())
    psi = {"s1": transposition(1, 2, 4)}
    H = perm_closure([transposition(3, 4, 4)], 4)
    with pytest.raises(ValueError):
        reidemeister_schreier(p, psi, H)


# ---------------------------------------------------------------------------
# Tietze


def test_tietze_examples():
    a, b = gen("a"), gen("b")
    assert tietze_simplify(Presentation(("a", "b"), (b,))) == Presentation(("a",), ())
    assert tietze_simplify(Presentation(("a", "b"), (a * b,))) == Presentation(("a",), ())
    t = tietze_simplify(pmod_sphere_presentation(4))
    assert len(t.generators) == 2 and not t.relators


def test_tietze_dedupes_and_drops_trivial():
    a, b = gen("a"), gen("b")
    p = Presentation(("a", "b"),
                     (commutator(a, b), commutator(b, a), a * a.inv(), a ** 2, a ** 2))
    t = tietze_simplify(p, effort=0)
    assert len(t.relators) == 2  # one commutator survives, one a^2


def test_tietze_preserves_abelianization_random():
    rng = random.Random(31)
    names = ("a", "b", "c")
    for _ in range(40):
        relators = []
        for _ in range(rng.randrange(1, 5)):
            letters = tuple(
                (rng.choice(names), rng.choice((1, -1)))
                for _ in range(rng.randrange(1, 7)))
            relators.append(Word(letters))
        p = Presentation(names, tuple(relators))
        assert abelianization(tietze_simplify(p)) == abelianization(p)


def test_tietze_preserves_abelianization_on_rs_output():
    p = mod_sphere_presentation(4)
    psi = psi_images(4)
    for gens in ([transposition(1, 2, 4), transposition(3, 4, 4)],
                 [perm_from_cycles([(1, 2), (3, 4)], 4)]):
        out = reidemeister_schreier(p, psi, perm_closure(gens, 4))
        assert abelianization(tietze_simplify(out)) == abelianization(out)


def test_tietze_preserves_abelianization_on_pipeline_outputs():
    from liftmcg.analysis import analyze
    from liftmcg.datasets import enumerate_spherical

    for ds in enumerate_spherical(2):
        rep = analyze(ds)
        for pres in (rep.lmod_presentation, rep.clmod_presentation):
            assert abelianization(tietze_simplify(pres)) == abelianization(pres)


# ---------------------------------------------------------------------------
# abelianization


def test_abelianization_examples():
    assert abelianization(Presentation(("a", "b"), ())) == ((), 2)
    sigma = Presentation(
        ("s1", "s3", "a13"),
        (gen("s3") ** 2 * gen("s1") ** -2,
         commutator(gen("s1"), gen("s3")),
         (gen("s1") * gen("a13")) ** 2,
         (gen("s3") * gen("a13")) ** 2))
    assert abelianization(sigma) == ((2, 2), 1)
    centralizer = Presentation(
        ("F", "G1", "G2"),
        (gen("F") ** 6, commutator(gen("G1"), gen("F")),
         commutator(gen("G2"), gen("F")),
         (gen("G1") * gen("G2")) ** 2 * gen("F") ** -4))
    assert abelianization(centralizer) == ((2, 6), 1)


# ---------------------------------------------------------------------------
# extension presentations


def test_extension_trivial_kernel():
    q = Presentation(("x", "y"), (gen("x") ** 2, commutator(gen("x"), gen("y"))))
    data = LiftData(lifts={"x": "X", "y": "Y"}, conjugation={},
                    evaluations={0: EMPTY, 1: EMPTY})
    out = extension_presentation(Presentation((), ()), q, data)
    assert same_relator_sets(rename_presentation(q, {"x": "X", "y": "Y"}), out)


def test_extension_trivial_quotient():
    n = Presentation(("F",), (gen("F") ** 5,))
    out = extension_presentation(n, Presentation((), ()),
                                 LiftData(lifts={}, conjugation={}))
    assert out == n


def test_extension_direct_product_abelianization():
    rng = random.Random(17)
    for _ in range(15):
        relators = []
        for _ in range(rng.randrange(0, 3)):
            letters = tuple((rng.choice("xy"), rng.choice((1, -1)))
                            for _ in range(rng.randrange(1, 6)))
            relators.append(Word(letters))
        q = Presentation(("x", "y"), tuple(relators))
        n = rng.randrange(2, 9)
        kernel = Presentation(("F",), (gen("F") ** n,))
        data = LiftData(
            lifts={"x": "X", "y": "Y"},
            conjugation={("x", "F"): gen("F"), ("y", "F"): gen("F")},
            evaluations={i: EMPTY for i in range(len(relators))})
        out = extension_presentation(kernel, q, data)
        q_factors, q_rank = abelianization(q)
        from liftmcg.arith_perm import smith_normal_form
        from liftmcg.fpgroups import exponent_sums

        rows = [exponent_sums(r, out.generators) for r in out.relators]
        factors, rank = smith_normal_form(rows, ncols=len(out.generators))
        expect_rows = [exponent_sums(r, q.generators) for r in q.relators]
        expect_rows = [[0] + row for row in expect_rows] + [[n, 0, 0]]
        expect = smith_normal_form(expect_rows, ncols=3)
        assert (factors, rank) == expect


def test_extension_symbolic_and_errors():
    kernel = Presentation(("F",), (gen("F") ** 6,))
    q = Presentation(("x",), (gen("x") ** 2,))
    data = LiftData(lifts={"x": "G"}, conjugation={("x", "F"): gen("F")},
                    evaluations={0: "e1"})
    out = extension_presentation(kernel, q, data)
    assert len(out.symbolic_relators) == 1
    assert out.symbolic_relators[0].param == "e1"
    with pytest.raises(ValueError):
        abelianization(out)
    with pytest.raises(ValueError):
        tietze_simplify(out)
    with pytest.raises(ValueError):
        extension_presentation(kernel, q, LiftData({"x": "G"}, {}, {0: EMPTY}))
    with pytest.raises(ValueError):
        extension_presentation(kernel, q,
                               LiftData({"x": "G"}, {("x", "F"): gen("F")}, {}))
    with pytest.raises(ValueError):
        extension_presentation(kernel, q,
                               LiftData({"x": "F"}, {("x", "F"): gen("F")},
                                        {0: EMPTY}))
    two_gen_kernel = Presentation(("F", "K"), ())
    with pytest.raises(ValueError):
        extension_presentation(
            two_gen_kernel, q,
            LiftData({"x": "G"},
                     {("x", "F"): gen("F"), ("x", "K"): gen("K")},
                     {0: "e1"}))
