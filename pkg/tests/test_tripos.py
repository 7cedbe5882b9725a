import itertools

import pytest

from arrowlab import fixtures
from arrowlab.core import InputError, is_compatible_with_joins, verify_algebra
from arrowlab.morph import MorphismTable, identity_morphism
from arrowlab.nuclei import example_nuclei, quotient, shift_nucleus
from arrowlab.tripos import (
    FinMap,
    Predicate,
    PullbackSquare,
    all_maps,
    check_adjointness,
    check_beck_chevalley,
    closed_predicates,
    constant_predicate,
    entails,
    exists_along,
    exists_join_form,
    forall_along,
    generic_element_check,
    induced_transformation,
    post_compose,
    power_algebra,
    pred_iso,
    predicate_space,
    quotient_family_reports,
    recover_morphism,
    reindex,
    roundtrip_report,
    transformation_reports,
)


def test_power_algebra_empty_index_is_point(chain3):
    p0 = power_algebra(chain3, 0)
    assert p0.size == 1
    assert p0.is_trivial()


def test_power_algebra_singleton_index_isomorphic(chain3):
    p1 = power_algebra(chain3, 1)
    assert p1.size == chain3.size
    assert p1.structure.imp == chain3.structure.imp
    assert p1.separator == chain3.separator


def test_power_algebra_verifies(algebras):
    for alg in algebras.values():
        if alg.size ** 2 <= 64:
            assert verify_algebra(power_algebra(alg, 2)).ok


def test_entails_pointwise_on_frames(frames):
    for alg in frames.values():
        for phi in predicate_space(alg, 2)[: alg.size ** 2]:
            for psi in predicate_space(alg, 2)[: alg.size ** 2]:
                pointwise = all(
                    alg.le(a, b) for a, b in zip(phi.table, psi.table)
                )
                assert entails(phi, psi) == pointwise


def test_entails_stronger_than_pointwise(algebras):
    alg = algebras["D(meet2abs)"]
    for phi in predicate_space(alg, 2):
        for psi in predicate_space(alg, 2):
            if entails(phi, psi):
                assert all(alg.entails(a, b) for a, b in zip(phi.table, psi.table))


def test_identity_map_quantifiers_isomorphic(chain3):
    f = FinMap(3, 3, (0, 1, 2))
    for phi in predicate_space(chain3, 3):
        assert pred_iso(exists_along(f, phi), phi)
        assert pred_iso(forall_along(f, phi), phi)


def test_empty_fiber_conventions(chain3):
    f = FinMap(0, 1, ())
    empty = Predicate(chain3, 0, ())
    fa = forall_along(f, empty)
    ex = exists_along(f, empty)
    # universal over nothing is top; existential over nothing entails bottom
    assert fa.table == (chain3.top,)
    bottom = constant_predicate(chain3, 1, chain3.bottom)
    assert pred_iso(ex, bottom)


def test_frame_quantifiers_are_fiberwise_lattice_ops(frames):
    for alg in frames.values():
        if alg.size > 4:
            continue
        f = FinMap(3, 2, (0, 0, 1))
        for phi in predicate_space(alg, 3):
            ex = exists_along(f, phi)
            fa = forall_along(f, phi)
            joined = tuple(alg.join(phi.table[j] for j in f.fiber(i)) for i in range(2))
            met = tuple(alg.meet(phi.table[j] for j in f.fiber(i)) for i in range(2))
            assert pred_iso(ex, Predicate(alg, 2, joined))
            assert pred_iso(fa, Predicate(alg, 2, met))


def test_adjointness_exhaustive_small(algebras):
    for name in ("chain2", "chain3", "D(one)", "D(meet2abs)"):
        alg = algebras[name]
        for f in all_maps(2, 2):
            for r in check_adjointness(alg, f):
                assert r.ok, (name, f.table, r.line())


def test_beck_chevalley_small(algebras):
    for name in ("chain3", "D(one)"):
        alg = algebras[name]
        for h_table in itertools.product(range(2), repeat=2):
            for k_table in itertools.product(range(2), repeat=1):
                square = PullbackSquare.from_cospan(
                    FinMap(2, 2, h_table), FinMap(1, 2, k_table)
                )
                for r in check_beck_chevalley(alg, square):
                    assert r.ok, (name, h_table, k_table, r.line())


def test_join_form_agrees_when_compatible(algebras):
    for alg in algebras.values():
        if alg.size > 4 or not is_compatible_with_joins(alg).ok:
            continue
        for f in (FinMap(2, 1, (0, 0)), FinMap(3, 2, (0, 1, 0)), FinMap(0, 1, ())):
            for phi in predicate_space(alg, f.src):
                assert pred_iso(exists_along(f, phi), exists_join_form(f, phi))


def test_generic_element(algebras):
    for alg in algebras.values():
        if alg.size <= 4:
            assert generic_element_check(alg, max_index=3).ok


def test_functoriality_of_reindexing(chain3):
    f = FinMap(2, 3, (0, 2))
    g = FinMap(3, 2, (1, 1, 0))
    composite = FinMap(2, 2, tuple(g(f(x)) for x in range(2)))
    for phi in predicate_space(chain3, 2):
        assert reindex(f, reindex(g, phi)).table == reindex(composite, phi).table


# -- transformations ----------------------------------------------------------------------


def test_induced_transformation_cartesian(chain3, chain2):
    f = MorphismTable(chain3, chain2, (0, 1, 1), name="collapse")
    for r in transformation_reports(f, 2):
        assert r.ok, r.line()


def test_nucleus_transformation_inflationary_idempotent(chain3):
    j = example_nuclei(chain3, chain3.bottom)["double"]
    m = MorphismTable(chain3, chain3, j)
    transform = induced_transformation(m)
    for phi in predicate_space(chain3, 2):
        image = transform(phi)
        assert entails(phi, image)
        assert pred_iso(transform(image), image)


def test_recover_roundtrip(algebras):
    for alg in algebras.values():
        if alg.size > 4:
            continue
        chi = fixtures.characteristic_morphism(alg)
        assert roundtrip_report(chi).ok
        recovered = recover_morphism(alg, chi.target, induced_transformation(chi))
        assert recovered.table == chi.table


# -- the nucleus-closed family ---------------------------------------------------------------


def test_identity_nucleus_keeps_all_predicates(chain3):
    members = closed_predicates(chain3, tuple(range(3)), 2)
    assert len(members) == 9


def test_shift_nucleus_saturates(algebras):
    for alg in algebras.values():
        if alg.size > 4:
            continue
        members = closed_predicates(alg, shift_nucleus(alg), 2)
        assert len(members) == len(predicate_space(alg, 2))


def test_quotient_family_reports_pass(chain3, algebras):
    j = example_nuclei(chain3, chain3.bottom)["double"]
    for index in (0, 1, 2):
        for r in quotient_family_reports(chain3, j, index):
            assert r.ok, r.line()
    alg = algebras["D(meet2abs)"]
    for c in alg.elements():
        j2 = example_nuclei(alg, c)["under"]
        for r in quotient_family_reports(alg, j2, 1):
            assert r.ok, r.line()


def test_quotient_power_order_agreement(chain3):
    # entailment in the quotient power equals entailment into the closure
    j = example_nuclei(chain3, chain3.bottom)["double"]
    quo = quotient(chain3, j)
    index = 2
    for phi in predicate_space(chain3, index):
        for psi in predicate_space(chain3, index):
            quo_phi = Predicate(quo, index, phi.table)
            quo_psi = Predicate(quo, index, psi.table)
            closed = Predicate(chain3, index, tuple(j[v] for v in psi.table))
            assert entails(quo_phi, quo_psi) == entails(phi, closed)


def test_closed_nucleus_family_on_pairs(chain2):
    from arrowlab.modified import open_closed_nuclei, sierpinski

    sierp = sierpinski(chain2)
    _, c_table = open_closed_nuclei(chain2)
    members = closed_predicates(sierp, c_table, 1)
    expected = {
        (x,) for x in sierp.elements() if sierp.entails(c_table[x], x)
    }
    assert {m.table for m in members} == expected
    for r in quotient_family_reports(sierp, c_table, 1):
        assert r.ok


def test_index_mismatch_rejected(chain3):
    with pytest.raises(InputError):
        entails(constant_predicate(chain3, 1, 0), constant_predicate(chain3, 2, 0))
    with pytest.raises(InputError):
        reindex(FinMap(2, 2, (0, 1)), constant_predicate(chain3, 3, 0))


def test_exists_pseudofunctorial(chain3):
    f = FinMap(3, 2, (0, 0, 1))
    g = FinMap(2, 2, (1, 0))
    composite = FinMap(3, 2, tuple(g(f(x)) for x in range(3)))
    for phi in predicate_space(chain3, 3):
        via_two = exists_along(g, exists_along(f, phi))
        direct = exists_along(composite, phi)
        assert pred_iso(via_two, direct)
        via_forall = forall_along(g, forall_along(f, phi))
        assert pred_iso(via_forall, forall_along(composite, phi))


from hypothesis import given, settings, strategies as st


@settings(max_examples=60, deadline=None, derandomize=True)
@given(
    st.lists(st.integers(0, 3), min_size=2, max_size=2),
    st.lists(st.integers(0, 2), min_size=3, max_size=3),
)
def test_adjunction_property_random_predicates(beta, alpha):
    alg = fixtures.diamond()
    f = FinMap(3, 2, (0, 1, 0))
    a = Predicate(alg, 3, tuple(alpha))
    b = Predicate(alg, 2, tuple(beta))
    assert entails(exists_along(f, a), b) == entails(a, reindex(f, b))
    assert entails(reindex(f, b), a) == entails(b, forall_along(f, a))
