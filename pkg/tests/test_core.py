import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from arrowlab.core import (
    ArrowAlgebra,
    ArrowStructure,
    InputError,
    combinator_a,
    combinator_a_exhaustive,
    combinator_a_fixpoint,
    combinator_b,
    combinator_i,
    combinator_k,
    combinator_s,
    frame_algebra,
    heyting_implication,
    is_compatible_with_joins,
    separator_reports,
    shift_retract_report,
    uniform_modus_ponens,
    verify_algebra,
)
from arrowlab import fixtures


# -- construction ------------------------------------------------------------------


def test_empty_carrier_rejected():
    with pytest.raises(InputError):
        ArrowStructure([], [])


def test_one_element_accepted():
    st1 = ArrowStructure([[True]], [[0]])
    alg = ArrowAlgebra(st1, {0})
    assert verify_algebra(alg).ok
    assert alg.is_trivial()


def test_missing_meet_rejected():
    # two incomparable points, no bottom: {a, b} has no lower bound
    leq = [[1, 0], [0, 1]]
    with pytest.raises(InputError):
        ArrowStructure(leq, [[0, 0], [0, 0]])


def test_variance_violation_rejected(chain2):
    # implication that is not antitone on the left
    leq = chain2.structure.leq
    with pytest.raises(InputError) as err:
        ArrowStructure(leq, [[0, 0], [1, 1]])
    assert "antitone" in str(err.value) or "monotone" in str(err.value)


def test_non_heyting_order_rejected():
    # the five-element non-distributive lattice has no relative pseudocomplement
    order = {(i, i) for i in range(5)}
    order |= {(0, i) for i in range(5)} | {(i, 4) for i in range(5)}
    leq = [[(a, b) in order for b in range(5)] for a in range(5)]
    with pytest.raises(InputError):
        heyting_implication(leq)


def test_meet_conventions(chain3):
    st3 = chain3.structure
    assert st3.meet([]) == st3.top
    for x in st3.elements():
        assert st3.meet([x]) == x
    for xs in itertools.product(range(3), repeat=2):
        assert st3.meet(xs) == min(xs)
        assert st3.join(xs) == max(xs)


# -- combinators --------------------------------------------------------------------


def test_frame_combinators_are_top(frames):
    for alg in frames.values():
        top = alg.top
        assert (alg.k, alg.s, alg.a, alg.i, alg.b) == (top,) * 5


def test_downset_one_element_k_is_full():
    alg = fixtures.algebra_fixtures()["D(one)"]
    # the oracle: fold the definition over both downsets
    st1 = alg.structure
    expected = st1.meet(
        st1.imp[a][st1.imp[b][a]] for a in range(2) for b in range(2)
    )
    assert alg.k == expected == st1.top


def test_combinator_a_oracle_equivalence(small_algebras):
    for name, alg in small_algebras.items():
        st0 = alg.structure
        assert combinator_a_fixpoint(st0) == combinator_a_exhaustive(st0), name
        assert combinator_a(st0) == combinator_a_fixpoint(st0), name


def test_combinator_a_fast_path_matches_fixpoint(algebras):
    for name, alg in algebras.items():
        st0 = alg.structure
        if st0.binary_implicative() and st0.size <= 12:
            assert combinator_a_fixpoint(st0) == combinator_a(st0), name


def test_downset_one_element_a_in_separator():
    alg = fixtures.algebra_fixtures()["D(one)"]
    assert combinator_a_exhaustive(alg.structure) == alg.a
    assert alg.a in alg.separator


# -- verification -------------------------------------------------------------------


def test_verify_frame_with_top_separator(chain3):
    assert verify_algebra(chain3).ok


def test_verify_whole_carrier_is_trivial(chain3):
    alg = ArrowAlgebra(chain3.structure, set(range(3)))
    assert verify_algebra(alg).ok
    assert alg.is_trivial()


def test_verify_bottom_separator_fails_upward(chain2):
    alg = ArrowAlgebra(chain2.structure, {chain2.bottom})
    reports = {r.law: r for r in separator_reports(alg)}
    assert not reports["separator.upward"].ok
    assert reports["separator.upward"].counterexample == ("0", "1")
    verdict = verify_algebra(alg)
    assert not verdict.ok and "separator.upward" in verdict.detail


def test_malformed_tables_are_input_errors():
    with pytest.raises(InputError):
        ArrowStructure([[True, True], [False, True]], [[0, 0]])
    with pytest.raises(InputError):
        ArrowStructure([[True, True], [False, True]], [[0, 9], [0, 0]])


def test_verified_algebras_contain_i_and_b(algebras):
    for alg in algebras.values():
        assert alg.i in alg.separator
        assert alg.b in alg.separator


# -- application and abstraction ------------------------------------------------------


def test_apply_is_meet_on_frames(frames):
    for alg in frames.values():
        for a in alg.elements():
            for b in alg.elements():
                assert alg.apply(a, b) == alg.meet2(a, b)


def test_apply_modus_ponens_bound(algebras):
    # (a -> b -> c) a <= b -> c
    for alg in algebras.values():
        if alg.size > 4:
            continue
        st0 = alg.structure
        for a, b, c in itertools.product(alg.elements(), repeat=3):
            lhs = alg.apply(st0.imp[a][st0.imp[b][c]], a)
            assert alg.le(lhs, st0.imp[b][c])


def test_apply_monotone_and_separated(algebras):
    for alg in algebras.values():
        if alg.size > 4:
            continue
        for a, b in itertools.product(alg.elements(), repeat=2):
            for a2, b2 in itertools.product(alg.elements(), repeat=2):
                if alg.le(a, a2) and alg.le(b, b2):
                    assert alg.le(alg.apply(a, b), alg.apply(a2, b2))
        for a in alg.separator:
            for b in alg.separator:
                assert alg.apply(a, b) in alg.separator


def test_abstract_identity_on_frames(frames):
    for alg in frames.values():
        assert alg.abstract(list(alg.elements())) == alg.top


def test_abstract_laws(algebras):
    rng = random.Random(5)
    for alg in algebras.values():
        if alg.size > 6:
            continue
        n = alg.size
        for _ in range(5):
            f = [rng.randrange(n) for _ in range(n)]
            g = [rng.randrange(n) for _ in range(n)]
            lf, lg = alg.abstract(f), alg.abstract(g)
            # application bound
            for a in alg.elements():
                assert alg.le(alg.apply(lf, a), alg.shift(f[a]))
            # pointwise monotonicity
            if all(alg.le(x, y) for x, y in zip(f, g)):
                assert alg.le(lf, lg)


def test_shift_laws(algebras):
    for alg in algebras.values():
        assert shift_retract_report(alg).ok
        assert alg.shift(alg.top) in alg.separator
    for alg in fixtures.frame_fixtures().values():
        for a in alg.elements():
            assert alg.shift(a) == a


# -- logical order ---------------------------------------------------------------------


def test_logical_operations_on_frames(frames):
    for alg in frames.values():
        for a in alg.elements():
            for b in alg.elements():
                assert alg.logical_meet(a, b) == alg.meet2(a, b)
                assert alg.logical_join(a, b) == alg.join2(a, b)
                assert alg.entails(a, b) == alg.le(a, b)


def test_evidential_implies_logical(algebras):
    for alg in algebras.values():
        for a in alg.elements():
            for b in alg.elements():
                if alg.le(a, b):
                    assert alg.entails(a, b)


def test_separator_recovered_from_logical_order(algebras):
    for alg in algebras.values():
        recovered = {a for a in alg.elements() if alg.entails(alg.top, a)}
        assert recovered == set(alg.separator)


def test_logical_meet_join_universal_properties(algebras):
    for alg in algebras.values():
        if alg.size > 5:
            continue
        for a, b in itertools.product(alg.elements(), repeat=2):
            m = alg.logical_meet(a, b)
            j = alg.logical_join(a, b)
            assert alg.entails(m, a) and alg.entails(m, b)
            assert alg.entails(a, j) and alg.entails(b, j)
            for c in alg.elements():
                if alg.entails(c, a) and alg.entails(c, b):
                    assert alg.entails(c, m)
                if alg.entails(a, c) and alg.entails(b, c):
                    assert alg.entails(j, c)
                # Heyting adjunction
                assert alg.entails(alg.logical_meet(c, a), b) == alg.entails(
                    c, alg.implies(a, b)
                )


# -- compatibility, triviality ------------------------------------------------------------


def test_frames_compatible_with_joins(frames):
    for alg in frames.values():
        assert is_compatible_with_joins(alg).ok


def test_downset_algebras_compatible(algebras):
    for name, alg in algebras.items():
        if name.startswith("D("):
            assert is_compatible_with_joins(alg).ok


def test_compatibility_cap_is_flagged(chain3):
    r = is_compatible_with_joins(chain3, cap=2)
    assert r.status == "inconclusive"
    assert "cap" in r.detail


def test_one_element_trivial():
    assert fixtures.chain(1).is_trivial()
    assert not fixtures.chain(2).is_trivial()


# -- uniform families (the indexed inference rule) ------------------------------------------


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
                min_size=1, max_size=5))
def test_uniform_modus_ponens_property(triples):
    alg = fixtures.diamond()
    assert uniform_modus_ponens(alg, triples).ok


def test_uniform_modus_ponens_random_families(algebras):
    rng = random.Random(31)
    for alg in algebras.values():
        n = alg.size
        for _ in range(30):
            triples = [
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(rng.randint(1, 4))
            ]
            assert uniform_modus_ponens(alg, triples).ok


def test_frame_derivation_detection(frames, algebras):
    for alg in frames.values():
        assert alg.is_frame_derived()
    assert not algebras["D(meet2abs)"].is_frame_derived()
    assert not algebras["chain3dn"].is_frame_derived()


def test_apply_family_bound(algebras):
    # (a -> meet of family) a stays below the family meet
    rng = random.Random(13)
    for alg in algebras.values():
        if alg.size > 5:
            continue
        st0 = alg.structure
        n = alg.size
        for _ in range(20):
            family = [
                (rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 3))
            ]
            v = st0.meet(st0.imp[b][c] for b, c in family)
            for a in alg.elements():
                assert alg.le(alg.apply(st0.imp[a][v], a), v)


def test_fully_implicative_predicate(frames, algebras):
    from arrowlab.core import is_fully_implicative

    for alg in frames.values():
        assert is_fully_implicative(alg).ok
    # downsets of a total structure keep the equality; a partial one breaks
    # the empty-meet case because application can be undefined
    assert is_fully_implicative(algebras["D(meet2)"]).ok
    verdict = is_fully_implicative(algebras["D(partial2)"])
    assert not verdict.ok
