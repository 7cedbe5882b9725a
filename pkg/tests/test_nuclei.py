import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from arrowlab import fixtures
from arrowlab.morph import (
    LawViolation,
    MorphismTable,
    check_implicative,
    classify,
    find_right_adjoint,
    identity_morphism,
    monotonize,
    morphism_iso,
    morphism_leq,
)
from arrowlab.nuclei import (
    check_nucleus,
    closure_roundtrip,
    example_nuclei,
    factorize,
    nucleus_from_adjoint,
    nucleus_reports,
    quotient,
    quotient_surjection,
    shift_nucleus,
)


def test_shift_is_a_nucleus_everywhere(algebras):
    for alg in algebras.values():
        assert check_nucleus(alg, shift_nucleus(alg)).ok


def test_double_negation_table_on_chain3(chain3):
    j = example_nuclei(chain3, chain3.bottom)["double"]
    # oracle: evaluate (a -> 0) -> 0 directly in the Heyting chain
    st3 = chain3.structure
    expected = tuple(st3.imp[st3.imp[a][0]][0] for a in range(3))
    assert j == expected == (0, 2, 2)
    assert check_nucleus(chain3, j).ok


def test_three_families_pass_everywhere(algebras):
    for alg in algebras.values():
        if alg.size > 6:
            continue
        for c in alg.elements():
            for kind, table in example_nuclei(alg, c).items():
                assert check_nucleus(alg, table).ok, (alg.label, c, kind)


def test_derived_laws_reported(chain3):
    j = example_nuclei(chain3, chain3.bottom)["double"]
    laws = {r.law for r in nucleus_reports(chain3, j)}
    assert {"nucleus.idempotent", "nucleus.functorial", "nucleus.inner-functorial"} <= laws


def test_non_nucleus_rejected_with_witness(chain3):
    # a non-monotone table
    verdict = check_nucleus(chain3, (2, 0, 2))
    assert not verdict.ok
    assert verdict.detail == "violates nucleus.monotone"


def test_alternative_axiomatization(small_algebras):
    # monotone + inflationary + idempotent + inner-functorial forces the
    # multiplication clause
    for alg in small_algebras.values():
        n = alg.size
        st0 = alg.structure
        for table in itertools.product(range(n), repeat=n):
            monotone = all(
                st0.le(table[a], table[b])
                for a in range(n)
                for b in range(n)
                if st0.le(a, b)
            )
            if not monotone:
                continue
            infl = st0.meet(st0.imp[a][table[a]] for a in range(n)) in alg.separator
            idem = st0.meet(st0.imp[table[table[a]]][table[a]] for a in range(n)) in alg.separator
            inner = (
                st0.meet(
                    st0.imp[table[st0.imp[a][b]]][st0.imp[table[a]][table[b]]]
                    for a in range(n)
                    for b in range(n)
                )
                in alg.separator
            )
            if infl and idem and inner:
                assert check_nucleus(alg, table).ok, (alg.label, table)


# -- quotients ----------------------------------------------------------------------


def test_quotient_separator_on_chain3(chain3):
    j = example_nuclei(chain3, chain3.bottom)["double"]
    quo = quotient(chain3, j)
    assert quo.separator == {1, 2}
    assert chain3.separator <= quo.separator


def test_quotient_by_shift_is_equivalence(algebras):
    for alg in algebras.values():
        if alg.size > 6:
            continue
        d = shift_nucleus(alg)
        pair = quotient_surjection(alg, d)
        assert classify(pair).equivalence


def test_quotient_by_identity_is_equivalence(chain3):
    pair = quotient_surjection(chain3, tuple(range(3)))
    assert classify(pair).equivalence


def test_quotient_of_trivial_is_trivial():
    point = fixtures.chain(1)
    quo = quotient(point, (0,))
    assert quo.is_trivial()


def test_quotient_logical_order_agreement(chain3, algebras):
    for alg in (chain3, algebras["D(meet2abs)"]):
        for c in alg.elements():
            j = example_nuclei(alg, c)["under"]
            quo = quotient(alg, j)
            for a in alg.elements():
                for b in alg.elements():
                    assert quo.entails(a, b) == alg.entails(a, j[b])


def test_quotient_surjection_not_injection(chain3):
    j = example_nuclei(chain3, chain3.bottom)["double"]
    pair = quotient_surjection(chain3, j)
    cls = classify(pair)
    assert cls.surjection and not cls.injection


# -- closure transformations ------------------------------------------------------------


def test_closure_roundtrip_for_shift(algebras):
    for alg in algebras.values():
        if alg.size > 6:
            continue
        for r in closure_roundtrip(alg, shift_nucleus(alg)):
            assert r.ok, (alg.label, r.line())


def test_closure_roundtrip_for_closed_nucleus_on_pairs(chain2):
    from arrowlab.modified import open_closed_nuclei, sierpinski

    sierp = sierpinski(chain2)
    _, c_table = open_closed_nuclei(chain2)
    for r in closure_roundtrip(sierp, c_table):
        assert r.ok, r.line()


def test_non_idempotent_inflation_fails_direction_two(chain5=None):
    alg = fixtures.chain(5)
    # climb one step: monotone, inflationary, not idempotent
    table = tuple(min(a + 1, 4) for a in range(5))
    reports = {r.law: r for r in closure_roundtrip(alg, table)}
    assert reports["closure.inflationary"].ok
    assert not reports["closure.idempotent"].ok


# -- nuclei from adjoints and factorization -------------------------------------------------


def test_identity_pair_gives_identity_nucleus(chain3):
    pair = find_right_adjoint(identity_morphism(chain3)).pair
    j = nucleus_from_adjoint(pair)
    m = MorphismTable(chain3, chain3, j)
    assert morphism_iso(m, identity_morphism(chain3))


def test_frame_pair_gives_locale_nucleus(chain3, chain2):
    f = MorphismTable(chain3, chain2, (0, 1, 1), name="collapse")
    pair = find_right_adjoint(f).pair
    j = nucleus_from_adjoint(pair)
    # oracle: the composite of the collapse with its classical right adjoint
    st3, st2 = chain3.structure, chain2.structure
    h = tuple(st3.join(y for y in range(3) if st2.le(f.table[y], x)) for x in range(2))
    expected = tuple(h[f.table[a]] for a in range(3))
    direct = MorphismTable(chain3, chain3, expected)
    assert morphism_iso(MorphismTable(chain3, chain3, j), direct)
    assert check_nucleus(chain3, j).ok


def test_factorization_recovers_original(chain3, chain2):
    f = MorphismTable(chain3, chain2, (0, 1, 1), name="collapse")
    pair = find_right_adjoint(f).pair
    fact = factorize(pair)
    assert classify(fact.surjection).surjection
    assert classify(fact.injection).injection
    composite = MorphismTable(
        chain3, chain2, tuple(fact.injection.f.table[a] for a in range(3))
    )
    assert morphism_iso(composite, f)


def test_middle_map_equivalence_iff_surjection(chain3, chain2, algebras):
    # collapse is a surjection: the injection factor must be an equivalence
    f = MorphismTable(chain3, chain2, (0, 1, 1))
    pair = find_right_adjoint(f).pair
    assert classify(pair).surjection
    fact = factorize(pair)
    assert classify(fact.injection).equivalence

    # a non-surjective dense morphism: bottom-preserving inclusion of chains
    g = MorphismTable(chain2, chain3, (0, 2), name="ends")
    search = find_right_adjoint(g)
    assert search.found
    assert not classify(search.pair).surjection
    fact2 = factorize(search.pair)
    assert not classify(fact2.injection).equivalence


@settings(max_examples=40, deadline=None, derandomize=True)
@given(st.integers(0, 10_000))
def test_random_monotone_closures_become_nuclei(seed):
    rng = random.Random(seed)
    alg = fixtures.diamond()
    n = alg.size
    table = tuple(sorted(rng.randrange(n) for _ in range(n))[i] for i in range(n))
    reports = {r.law: r for r in closure_roundtrip(alg, table)}
    if all(r.ok for law, r in reports.items() if law != "closure.to-nucleus"):
        assert reports["closure.to-nucleus"].ok
