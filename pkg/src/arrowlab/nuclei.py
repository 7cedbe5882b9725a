"""Nuclei on arrow algebras and the quotients they present.

A nucleus is a monotone endotable whose inflation and multiplication laws are
separated; quotienting redefines implication to land in the nucleus and
enlarges the separator to the preimage of the old one.  The quotient is
re-verified from scratch rather than trusted, and the inclusion it induces is
produced as an explicit adjoint pair.  Comparisons between nuclei always use
the morphism order, never table equality: a nucleus is canonical only up to
isomorphism (monotonization picks the representative).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ArrowAlgebra,
    ArrowStructure,
    InputError,
    is_compatible_with_joins,
    verify_algebra,
)
from .morph import (
    AdjointPair,
    MorphismTable,
    cartesian_meet_report,
    check_implicative,
    classify,
    identity_morphism,
    monotonize,
    morphism_iso,
    morphism_leq,
    require,
    verify_adjoint_pair,
)
from .report import failing, passing


def _as_endotable(alg, table):
    table = tuple(table)
    if len(table) != alg.size:
        raise InputError("nucleus needs a total endotable")
    for v in table:
        if not isinstance(v, int) or not (0 <= v < alg.size):
            raise InputError(f"endotable entry {v!r} is not an element")
    return table


def shift_nucleus(alg: ArrowAlgebra) -> tuple:
    return tuple(alg.shift(a) for a in alg.elements())


def example_nuclei(alg: ArrowAlgebra, c: int):
    """The three standard families at a parameter element."""
    imp = alg.structure.imp
    return {
        "under": tuple(imp[c][a] for a in alg.elements()),
        "double": tuple(imp[imp[a][c]][c] for a in alg.elements()),
        "closure": tuple(imp[imp[a][c]][a] for a in alg.elements()),
    }


def nucleus_reports(alg: ArrowAlgebra, table, subject=None, derived=True):
    """Clause-by-clause nucleus verification; derived laws only if the core
    clauses pass."""
    subject = subject or f"{alg.label}:nucleus"
    j = _as_endotable(alg, table)
    st = alg.structure
    imp, n = st.imp, st.size
    reports = []

    bad = next(
        (
            (a, b)
            for a in range(n)
            for b in range(n)
            if st.le(a, b) and not st.le(j[a], j[b])
        ),
        None,
    )
    reports.append(
        passing(subject, "nucleus.monotone")
        if bad is None
        else failing(subject, "nucleus.monotone", alg.names(bad))
    )

    val = st.meet(imp[a][j[a]] for a in range(n))
    reports.append(
        passing(subject, "nucleus.inflationary", witness=(st.name(val),))
        if val in alg.separator
        else failing(subject, "nucleus.inflationary", (st.name(val),))
    )

    val = st.meet(
        imp[imp[a][j[b]]][imp[j[a]][j[b]]] for a in range(n) for b in range(n)
    )
    reports.append(
        passing(subject, "nucleus.multiplicative", witness=(st.name(val),))
        if val in alg.separator
        else failing(subject, "nucleus.multiplicative", (st.name(val),))
    )

    if derived and all(r.ok for r in reports):
        val = st.meet(imp[j[j[a]]][j[a]] for a in range(n))
        reports.append(
            passing(subject, "nucleus.idempotent", witness=(st.name(val),))
            if val in alg.separator
            else failing(subject, "nucleus.idempotent", (st.name(val),))
        )
        val = st.meet(
            imp[imp[a][b]][imp[j[a]][j[b]]] for a in range(n) for b in range(n)
        )
        reports.append(
            passing(subject, "nucleus.functorial", witness=(st.name(val),))
            if val in alg.separator
            else failing(subject, "nucleus.functorial", (st.name(val),))
        )
        val = st.meet(
            imp[j[imp[a][b]]][imp[j[a]][j[b]]] for a in range(n) for b in range(n)
        )
        reports.append(
            passing(subject, "nucleus.inner-functorial", witness=(st.name(val),))
            if val in alg.separator
            else failing(subject, "nucleus.inner-functorial", (st.name(val),))
        )
    return reports


def check_nucleus(alg: ArrowAlgebra, table, subject=None):
    subject = subject or f"{alg.label}:nucleus"
    reports = nucleus_reports(alg, table, subject)
    for r in reports:
        if not r.ok:
            return failing(
                subject, "nucleus.valid", r.counterexample, detail=f"violates {r.law}"
            )
    return passing(subject, "nucleus.valid")


def quotient(alg: ArrowAlgebra, table, label=None, subject=None) -> ArrowAlgebra:
    """The same carrier with implication into the nucleus and the larger
    separator; fully re-verified."""
    j = _as_endotable(alg, table)
    require(check_nucleus(alg, j, subject))
    st = alg.structure
    label = label or f"{alg.label}_j"
    imp_j = [[st.imp[a][j[b]] for b in range(st.size)] for a in range(st.size)]
    quo = ArrowAlgebra(
        ArrowStructure(st.leq, imp_j, st.names),
        {a for a in range(st.size) if j[a] in alg.separator},
        label=label,
    )
    require(verify_algebra(quo))
    if not alg.separator <= quo.separator:
        missing = next(iter(alg.separator - quo.separator))
        require(failing(label, "quotient.separator-grows", (st.name(missing),)))
    if is_compatible_with_joins(alg).ok:
        quo_compat = is_compatible_with_joins(quo)
        if quo_compat.status == "fail":
            require(quo_compat)
    bad = next(
        (
            (a, b)
            for a in range(st.size)
            for b in range(st.size)
            if quo.entails(a, b) != alg.entails(a, j[b])
        ),
        None,
    )
    if bad is not None:
        require(failing(label, "quotient.logical-order", alg.names(bad)))
    return quo


def quotient_surjection(alg: ArrowAlgebra, table, quotient_algebra=None) -> AdjointPair:
    """The identity into the quotient, with the nucleus as right adjoint."""
    j = _as_endotable(alg, table)
    quo = quotient_algebra if quotient_algebra is not None else quotient(alg, j)
    f = MorphismTable(alg, quo, tuple(range(alg.size)), name=f"{alg.label}->quotient")
    h = MorphismTable(quo, alg, j, name="nucleus")
    pair = verify_adjoint_pair(f, h)
    if pair is None:
        require(failing(f.name, "adjoint.valid", (), detail="quotient pair failed"))
    if not classify(pair).surjection:
        require(failing(f.name, "adjoint.surjection", (), detail="quotient pair not a surjection"))
    return pair


def nucleus_from_adjoint(pair: AdjointPair) -> tuple:
    """Monotonize both legs; their composite is a nucleus on the source."""
    mf = monotonize(pair.f)
    mh = monotonize(pair.h)
    j = tuple(mh.table[mf.table[a]] for a in range(pair.f.source.size))
    require(check_nucleus(pair.f.source, j, subject=f"{pair.f.name}:induced-nucleus"))
    return j


@dataclass
class Factorization:
    nucleus: tuple
    quotient: ArrowAlgebra
    surjection: AdjointPair
    injection: AdjointPair


def factorize(pair: AdjointPair) -> Factorization:
    """Split a dense morphism into the quotient surjection followed by an
    injection, recovering the original up to isomorphism."""
    src = pair.f.source
    j = nucleus_from_adjoint(pair)
    quo = quotient(src, j)
    surj = quotient_surjection(src, j, quotient_algebra=quo)
    mf = monotonize(pair.f)
    mh = monotonize(pair.h)
    inj_f = MorphismTable(quo, pair.f.target, mf.table, name=f"{pair.f.name}~")
    inj_h = MorphismTable(pair.f.target, quo, mh.table, name=f"{pair.h.name}~")
    inj = verify_adjoint_pair(inj_f, inj_h)
    if inj is None:
        require(failing(inj_f.name, "factor.injection", (), detail="injection pair failed"))
    if not classify(inj).injection:
        require(failing(inj_f.name, "factor.injection", (), detail="second factor not an injection"))
    composite = MorphismTable(src, pair.f.target, mf.table, name="composite")
    if not morphism_iso(composite, pair.f):
        require(failing("composite", "factor.composite", (), detail="does not recover the original"))
    return Factorization(j, quo, surj, inj)


def closure_roundtrip(alg: ArrowAlgebra, table, subject=None):
    """Nuclei versus closure-style endomorphisms, both directions.

    Direction one: a nucleus is implicative, cartesian, inflationary, and
    idempotent as an endomorphism.  Direction two: any endotable with those
    closure properties becomes a nucleus after monotonization.
    """
    subject = subject or f"{alg.label}:closure"
    j = _as_endotable(alg, table)
    endo = MorphismTable(alg, alg, j, name=subject)
    reports = []

    implicative = check_implicative(endo, subject)
    reports.append(implicative)
    if implicative.ok:
        reports.append(cartesian_meet_report(endo, subject))

    if morphism_leq(identity_morphism(alg), endo):
        reports.append(passing(subject, "closure.inflationary"))
    else:
        reports.append(failing(subject, "closure.inflationary", (), detail="id does not entail it"))

    square = MorphismTable(alg, alg, tuple(j[j[a]] for a in range(alg.size)))
    if morphism_iso(square, endo):
        reports.append(passing(subject, "closure.idempotent"))
    else:
        reports.append(failing(subject, "closure.idempotent", (), detail="square not isomorphic"))

    if all(r.ok for r in reports):
        mono = monotonize(endo)
        verdict = check_nucleus(alg, mono.table, subject)
        if verdict.ok:
            reports.append(passing(subject, "closure.to-nucleus"))
        else:
            reports.append(
                failing(subject, "closure.to-nucleus", verdict.counterexample,
                        detail=verdict.detail)
            )
    return reports
