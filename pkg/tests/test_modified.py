import itertools

import pytest

from arrowlab import fixtures
from arrowlab.core import ArrowAlgebra, ArrowStructure, InputError, verify_algebra
from arrowlab.modified import (
    glue_element,
    is_binary_implicative,
    is_modifiable,
    join_second_component_report,
    lemma_collapse_report,
    lift_adjoint_report,
    lift_modified,
    lift_morphism,
    lift_pseudofunctor_reports,
    modification,
    modified_adjoint_reports,
    modified_predicates,
    modified_predicates_report,
    modified_pseudofunctor_reports,
    open_closed_nuclei,
    open_shape_report,
    pi0_inclusion_probe,
    pi1_delta,
    projection_squares_report,
    pullback_condition_report,
    sierpinski,
)
from arrowlab.morph import (
    MorphismTable,
    check_implicative,
    classify,
    find_right_adjoint,
    identity_morphism,
    morphism_iso,
    realizer_meet,
)
from arrowlab.nuclei import check_nucleus
from arrowlab.tripos import predicate_space


def collapse():
    return MorphismTable(fixtures.chain(3), fixtures.chain(2), (0, 1, 1), name="collapse")


# -- the defining predicates ------------------------------------------------------------


def test_frames_and_downset_algebras_modifiable(frames, algebras):
    for alg in frames.values():
        assert is_modifiable(alg)
    for name, alg in algebras.items():
        if name.startswith(("D(", "PER(")):
            assert is_modifiable(alg)


def test_perturbed_table_fails_with_witness(chain3):
    st3 = chain3.structure
    imp = [list(row) for row in st3.imp]
    imp[2][0] = 1  # break top -> bottom upward
    try:
        broken = ArrowStructure(st3.leq, imp, ["0'", "m'", "1'"])
    except InputError:
        return  # variance already caught it; also a detected perturbation
    assert not broken.binary_implicative() or not broken.modifiable()


def test_binary_implicative_witness_reported(chain3):
    from arrowlab.modified import binary_implicative_witness

    # a variance-respecting but non-binary-implicative table: constant shifts
    leq = chain3.structure.leq
    imp = [[max(b, 1) for b in range(3)] for _ in range(3)]
    st = ArrowStructure(leq, imp)
    alg = ArrowAlgebra(st, {2})
    if not st.binary_implicative():
        assert binary_implicative_witness(alg) is not None


# -- the pair construction ---------------------------------------------------------------


def test_pair_algebra_of_two_frame(chain2):
    sierp = sierpinski(chain2)
    assert sierp.size == 3
    assert sierp.structure.names == ("(0,0)", "(0,1)", "(1,1)")
    assert sorted(sierp.separator) == [2]
    # implication table matches the Heyting table of the three-chain
    chain3 = fixtures.chain(3)
    assert sierp.structure.imp == chain3.structure.imp
    assert verify_algebra(sierp).ok
    assert is_binary_implicative(sierp)


def test_pair_algebra_top_is_top_pair(algebras):
    for name in ("chain3", "diamond", "D(meet2abs)"):
        alg = algebras[name]
        sierp = sierpinski(alg)
        assert sierp.sierp_pairs[sierp.top] == (alg.top, alg.top)


def test_pair_of_point_is_point():
    sierp = sierpinski(fixtures.chain(1))
    assert sierp.size == 1


def test_pair_requires_binary_implicativity(chain3):
    leq = chain3.structure.leq
    imp = [[max(b, 1) for b in range(3)] for _ in range(3)]
    st = ArrowStructure(leq, imp)
    alg = ArrowAlgebra(st, {2}, label="odd")
    if not st.binary_implicative():
        with pytest.raises(InputError):
            sierpinski(alg)


# -- projection and diagonal ----------------------------------------------------------------


def test_projection_realized_by_identity_bound(chain3):
    sierp = sierpinski(chain3)
    pair = pi1_delta(chain3)
    cert = realizer_meet(pair.f)
    assert cert in chain3.separator
    assert chain3.le(chain3.i, cert)


def test_diagonal_of_top(algebras):
    for name in ("chain2", "chain3", "D(one)"):
        alg = algebras[name]
        pair = pi1_delta(alg)
        sierp = sierpinski(alg)
        assert pair.h.table[alg.top] == sierp.top


def test_projection_pair_is_surjection(algebras):
    for name, alg in algebras.items():
        if not is_binary_implicative(alg) or alg.size > 8:
            continue
        cls = classify(pi1_delta(alg))
        assert cls.surjection, name


# -- open and closed nuclei --------------------------------------------------------------------


def test_closed_table_on_two_frame(chain2):
    sierp = sierpinski(chain2)
    o, c = open_closed_nuclei(chain2)
    named_c = tuple(sierp.name(v) for v in c)
    assert named_c == ("(0,1)", "(0,1)", "(1,1)")
    # oracle: the pair algebra is the three-chain frame, where the logical
    # join is the lattice join with the middle element
    st = sierp.structure
    assert c == tuple(st.join2(x, 1) for x in range(3))


def test_open_table_on_two_frame(chain2):
    o, _ = open_closed_nuclei(chain2)
    sierp = sierpinski(chain2)
    assert o[0] == sierp.sierp_of[(0, 0)]
    assert o[sierp.top] == sierp.top


def test_nuclei_verified_on_modifiable_corpus(algebras):
    for name, alg in algebras.items():
        if not is_modifiable(alg) or alg.size > 8:
            continue
        sierp = sierpinski(alg)
        o, c = open_closed_nuclei(alg)
        assert check_nucleus(sierp, o).ok, name
        assert check_nucleus(sierp, c).ok, name
        assert open_shape_report(alg).ok, name


# -- modification -----------------------------------------------------------------------------


def test_modification_of_two_frame(chain2):
    mod = modification(chain2)
    sierp = sierpinski(chain2)
    _, c = open_closed_nuclei(chain2)
    # quotient view: same carrier, implication into the closure
    assert mod.size == sierp.size
    for a in mod.elements():
        for b in mod.elements():
            assert mod.implies(a, b) == sierp.implies(a, c[b])
    assert verify_algebra(mod).ok


def test_modified_predicates_always_contain_top(chain2, chain3):
    for alg in (chain2, chain3):
        sierp = sierpinski(alg)
        for index in (0, 1, 2):
            family = {phi.table for phi in modified_predicates(alg, index)}
            assert (sierp.top,) * index in family


def test_modified_predicates_match_closed_family(algebras):
    for name in ("chain2", "chain3", "D(one)", "D(meet2abs)"):
        alg = algebras[name]
        for index in (1, 2):
            assert modified_predicates_report(alg, index).ok, (name, index)


def test_join_second_component_exact(algebras):
    for name in ("chain2", "chain3", "diamond", "D(one)", "D(meet2abs)", "D(partial2)"):
        assert join_second_component_report(algebras[name]).ok, name


def test_pair_entailment_projects(chain3):
    sierp = sierpinski(chain3)
    pairs = sierp.sierp_pairs
    for x in sierp.elements():
        for y in sierp.elements():
            if sierp.entails(x, y):
                assert chain3.entails(pairs[x][1], pairs[y][1])


# -- lifted morphisms ----------------------------------------------------------------------


def test_lift_identity_isomorphic_to_identity(chain3):
    sierp = sierpinski(chain3)
    lifted = lift_morphism(identity_morphism(chain3))
    assert morphism_iso(lifted, identity_morphism(sierp))


def test_lift_pseudofunctor_laws_on_frame_homs():
    f = collapse()
    g = MorphismTable(fixtures.chain(2), fixtures.chain(4), (0, 3), name="ends")
    for r in lift_pseudofunctor_reports(f, g):
        assert r.ok, r.line()


def test_lift_preserves_adjoints():
    pair = find_right_adjoint(collapse()).pair
    lifted, report = lift_adjoint_report(pair)
    assert report.ok
    assert classify(lifted).surjection == classify(pair).surjection


def test_collapse_law_and_pullback_condition(algebras):
    f = collapse()
    assert lemma_collapse_report(f).ok
    assert pullback_condition_report(f).ok
    chi = fixtures.characteristic_morphism(algebras["D(meet2abs)"])
    assert lemma_collapse_report(chi).ok
    assert pullback_condition_report(chi).ok


def test_modified_lift_implicative_and_pseudofunctor():
    f = collapse()
    g = MorphismTable(fixtures.chain(2), fixtures.chain(4), (0, 3), name="ends")
    fm = lift_modified(f)
    assert check_implicative(fm).ok
    for r in modified_pseudofunctor_reports(f, g):
        assert r.ok, r.line()


def test_modified_identity_is_closing(chain3):
    mod = modification(chain3)
    _, c = open_closed_nuclei(chain3)
    lifted = lift_modified(identity_morphism(chain3))
    assert morphism_iso(lifted, MorphismTable(mod, mod, c))


def test_modified_adjoint_square():
    pair = find_right_adjoint(collapse()).pair
    for r in modified_adjoint_reports(pair):
        assert r.ok, r.line()


def test_projection_squares():
    assert projection_squares_report(collapse()).ok


def test_pi0_probe_records_outcomes(algebras):
    for name in ("chain2", "chain3", "D(one)"):
        r = pi0_inclusion_probe(algebras[name])
        assert r.ok
        assert r.witness[0] in (
            "surjection",
            "dense-but-not-surjection",
            "no-right-adjoint",
            "not-implicative",
        )


from hypothesis import given, settings, strategies as st


@settings(max_examples=40, deadline=None, derandomize=True)
@given(st.integers(0, 8), st.integers(0, 8))
def test_pair_implication_components_property(x, y):
    # first component of an implication meets both levels; second tracks the
    # potential level only
    alg = fixtures.diamond()
    sierp = sierpinski(alg)
    x %= sierp.size
    y %= sierp.size
    (x0, x1), (y0, y1) = sierp.sierp_pairs[x], sierp.sierp_pairs[y]
    got0, got1 = sierp.sierp_pairs[sierp.implies(x, y)]
    assert got1 == alg.implies(x1, y1)
    assert got0 == alg.meet2(alg.implies(x0, y0), got1)
