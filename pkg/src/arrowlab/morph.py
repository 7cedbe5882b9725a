"""Implicative morphisms between arrow algebras.

A morphism is a total table between carriers.  Verification checks the three
clauses: separated elements map to separated elements; one realizer bounds
f(a -> a') -> f(a) -> f(a') over all pairs (the meet of those terms is itself
the canonical realizer, by upward closure); and uniform families of
entailments are preserved.  The family clause quantifies over every subset of
the square of the carrier, but any family whose implication-meet lands on a
separated element s is contained in the widest family X_s = {(a, a') | s <=
a -> a'}, so checking the X_s for s in the separator is exact and polynomial.
The exhaustive forms of the reduced checks stay available as oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import ArrowAlgebra, InputError
from .report import (
    VerificationReport,
    failing,
    inconclusive,
    passing,
)

ADJOINT_PRODUCT_CAP = 4096


class LawViolation(RuntimeError):
    """A construction-time assertion of a verified law failed."""

    def __init__(self, report: VerificationReport):
        super().__init__(report.line())
        self.report = report


def require(report: VerificationReport):
    if not report.ok:
        raise LawViolation(report)
    return report


@dataclass
class MorphismTable:
    """A function between carriers, with an optional realizer certificate."""

    source: ArrowAlgebra
    target: ArrowAlgebra
    table: tuple
    certificate: int | None = None
    name: str = "f"

    def __post_init__(self):
        self.table = tuple(self.table)
        if len(self.table) != self.source.size:
            raise InputError(f"{self.name}: table must be total on the source carrier")
        for v in self.table:
            if not isinstance(v, int) or not (0 <= v < self.target.size):
                raise InputError(f"{self.name}: entry {v!r} is not a target element")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def is_monotone(self) -> bool:
        src, tgt = self.source.structure, self.target.structure
        return all(
            tgt.le(self.table[a], self.table[b])
            for a in range(src.size)
            for b in range(src.size)
            if src.le(a, b)
        )

    def __repr__(self):
        return f"<MorphismTable {self.name!r} {self.source.label}->{self.target.label}>"


def identity_morphism(alg: ArrowAlgebra, name="id") -> MorphismTable:
    return MorphismTable(alg, alg, tuple(range(alg.size)), certificate=alg.i, name=name)


def realizer_meet(f: MorphismTable) -> int:
    """Meet over all pairs of f(a -> a') -> f(a) -> f(a')."""
    src, tgt = f.source.structure, f.target.structure
    imp, t = src.imp, f.table
    return tgt.meet(
        tgt.imp[t[imp[a][a2]]][tgt.imp[t[a]][t[a2]]]
        for a in range(src.size)
        for a2 in range(src.size)
    )


def implicative_reports(f: MorphismTable, subject=None):
    """Per-clause verification of the morphism conditions."""
    subject = subject or f.name
    src, tgt = f.source, f.target
    reports = []

    bad = next((a for a in src.separator if f.table[a] not in tgt.separator), None)
    if bad is None:
        reports.append(passing(subject, "morphism.separator"))
    else:
        reports.append(
            failing(subject, "morphism.separator", (src.name(bad), tgt.name(f.table[bad])))
        )

    r = realizer_meet(f)
    if r in tgt.separator:
        reports.append(passing(subject, "morphism.realizer", witness=(tgt.name(r),)))
    else:
        reports.append(failing(subject, "morphism.realizer", (tgt.name(r),)))

    witness = _uniform_families_witness(f)
    if witness is None:
        reports.append(passing(subject, "morphism.uniform"))
    else:
        reports.append(failing(subject, "morphism.uniform", (src.name(witness),)))
    return reports


def _uniform_families_witness(f: MorphismTable):
    """Separator-indexed reduction of the family clause; None means it holds."""
    src, tgt = f.source, f.target
    st, tt = src.structure, tgt.structure
    n, imp, t = st.size, st.imp, f.table
    for s in src.separator:
        row = st.leq[s]
        value = tt.meet(
            tt.imp[t[a]][t[a2]]
            for a in range(n)
            for a2 in range(n)
            if row[imp[a][a2]]
        )
        if value not in tgt.separator:
            return s
    return None


def uniform_families_exhaustive(f: MorphismTable) -> bool:
    """Oracle: every subset of source x source, directly."""
    src, tgt = f.source, f.target
    n = src.size
    if n > 3:
        raise InputError("exhaustive family check is capped at carrier size 3")
    st, tt = src.structure, tgt.structure
    pairs = [(a, a2) for a in range(n) for a2 in range(n)]
    for k in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, k):
            if st.meet(st.imp[a][a2] for a, a2 in chosen) in src.separator:
                value = tt.meet(tt.imp[f.table[a]][f.table[a2]] for a, a2 in chosen)
                if value not in tgt.separator:
                    return False
    return True


def check_implicative(f: MorphismTable, subject=None) -> VerificationReport:
    subject = subject or f.name
    reports = implicative_reports(f, subject)
    for r in reports:
        if not r.ok:
            return failing(
                subject, "morphism.valid", r.counterexample, detail=f"violates {r.law}"
            )
    f.certificate = realizer_meet(f)
    return passing(subject, "morphism.valid", witness=(f.target.name(f.certificate),))


def morphism_leq_value(f: MorphismTable, g: MorphismTable) -> int:
    if f.source != g.source or f.target != g.target:
        raise InputError("morphism order needs matching endpoints")
    tt = f.target.structure
    return tt.meet(tt.imp[f.table[a]][g.table[a]] for a in range(f.source.size))


def morphism_leq(f: MorphismTable, g: MorphismTable) -> bool:
    return morphism_leq_value(f, g) in f.target.separator


def morphism_iso(f: MorphismTable, g: MorphismTable) -> bool:
    return morphism_leq(f, g) and morphism_leq(g, f)


def compose(g: MorphismTable, f: MorphismTable, name=None) -> MorphismTable:
    """g after f, verified, with a fresh certificate."""
    if f.target != g.source:
        raise InputError("composition endpoints do not match")
    out = MorphismTable(
        f.source,
        g.target,
        tuple(g.table[f.table[a]] for a in range(f.source.size)),
        name=name or f"{g.name}.{f.name}",
    )
    require(check_implicative(out))
    return out


def monotonize(f: MorphismTable, name=None) -> MorphismTable:
    """Pointwise meet of shifted values over the up-set; isomorphic to f."""
    src, tgt = f.source, f.target
    st, tt = src.structure, tgt.structure
    table = tuple(
        tt.meet(tt.shift(f.table[a2]) for a2 in range(st.size) if st.le(a, a2))
        for a in range(st.size)
    )
    out = MorphismTable(src, tgt, table, name=name or f"M{f.name}")
    if not out.is_monotone():
        raise LawViolation(
            failing(out.name, "morphism.monotonize", (), detail="not monotone")
        )
    if not morphism_iso(out, f):
        raise LawViolation(
            failing(out.name, "morphism.monotonize", (), detail="not isomorphic to the original")
        )
    return out


def cartesian_meet_report(f: MorphismTable, subject=None) -> VerificationReport:
    """Binary logical meets are preserved: (f(a) x f(b)) -> f(a x b) is separated."""
    subject = subject or f.name
    src, tgt = f.source, f.target
    tt = tgt.structure
    value = tt.meet(
        tt.imp[tgt.logical_meet(f.table[a], f.table[b])][f.table[src.logical_meet(a, b)]]
        for a in range(src.size)
        for b in range(src.size)
    )
    if value in tgt.separator:
        return passing(subject, "morphism.cartesian", witness=(tgt.name(value),))
    return failing(subject, "morphism.cartesian", (tgt.name(value),))


# -- adjoints -----------------------------------------------------------------------


@dataclass
class AdjointPair:
    f: MorphismTable
    h: MorphismTable
    unit: int  # realizer for id_source |- h f
    counit: int  # realizer for f h |- id_target


def verify_adjoint_pair(f: MorphismTable, h: MorphismTable, subject=None):
    """Check both morphisms and both adjunction inequalities; None if invalid."""
    subject = subject or f"{f.name}-|{h.name}"
    if f.source != h.target or f.target != h.source:
        raise InputError("adjoint pair endpoints do not match")
    if not check_implicative(f).ok or not check_implicative(h).ok:
        return None
    src, tgt = f.source, f.target
    hf = tuple(h.table[f.table[a]] for a in range(src.size))
    unit = src.structure.meet(src.implies(a, hf[a]) for a in range(src.size))
    if unit not in src.separator:
        return None
    fh = tuple(f.table[h.table[b]] for b in range(tgt.size))
    counit = tgt.structure.meet(tgt.implies(fh[b], b) for b in range(tgt.size))
    if counit not in tgt.separator:
        return None
    return AdjointPair(f, h, unit, counit)


@dataclass
class AdjointSearch:
    status: str  # "found" | "none" | "inconclusive"
    pair: AdjointPair | None = None
    detail: str = ""

    @property
    def found(self):
        return self.status == "found"


def find_right_adjoint(f: MorphismTable, cap=ADJOINT_PRODUCT_CAP) -> AdjointSearch:
    """Search for h with f -| h.

    Any adjoint must send b into the entailment-maximum class of
    L_b = {a | f(a) |- b}, so only the product of those classes is searched,
    in ascending element order; the first verified candidate wins.
    """
    src, tgt = f.source, f.target
    classes = []
    for b in range(tgt.size):
        lb = [a for a in range(src.size) if tgt.entails(f.table[a], b)]
        maxima = [m for m in lb if all(src.entails(a, m) for a in lb)]
        if not maxima:
            return AdjointSearch("none", detail=f"no maximum class at {tgt.name(b)}")
        classes.append(maxima)
    total = 1
    for c in classes:
        total *= len(c)
        if total > cap:
            return AdjointSearch(
                "inconclusive", detail=f"candidate space exceeds cap {cap}"
            )
    for candidate in itertools.product(*classes):
        h = MorphismTable(tgt, src, candidate, name=f"{f.name}^adj")
        pair = verify_adjoint_pair(f, h)
        if pair is not None:
            return AdjointSearch("found", pair=pair)
    return AdjointSearch("none", detail="no candidate in the maximum classes verified")


def find_right_adjoint_exhaustive(f: MorphismTable) -> AdjointSearch:
    """Oracle: try every table from the target carrier to the source carrier."""
    src, tgt = f.source, f.target
    if src.size ** tgt.size > 4096:
        raise InputError("exhaustive adjoint search is capped")
    for candidate in itertools.product(range(src.size), repeat=tgt.size):
        h = MorphismTable(tgt, src, candidate, name=f"{f.name}^adj")
        pair = verify_adjoint_pair(f, h)
        if pair is not None:
            return AdjointSearch("found", pair=pair)
    return AdjointSearch("none", detail="exhausted all tables")


@dataclass
class Classification:
    surjection: bool
    injection: bool

    @property
    def equivalence(self):
        return self.surjection and self.injection


def classify(pair: AdjointPair) -> Classification:
    """Surjection iff f h is isomorphic to the identity; injection dually."""
    f, h = pair.f, pair.h
    src, tgt = f.source, f.target
    fh = MorphismTable(tgt, tgt, tuple(f.table[h.table[b]] for b in range(tgt.size)))
    hf = MorphismTable(src, src, tuple(h.table[f.table[a]] for a in range(src.size)))
    # The adjunction already gives fh |- id and id |- hf; test the converses.
    surj = morphism_leq(identity_morphism(tgt), fh)
    inj = morphism_leq(hf, identity_morphism(src))
    return Classification(surjection=surj, injection=inj)


# -- regularity ----------------------------------------------------------------------


def fiber_exists_value(st, values) -> int:
    """Existential of one fiber whose predicate values are the given set."""
    imp, top = st.imp, st.top
    terms = []
    for a in range(st.size):
        da = imp[top][a]
        inner = st.meet(imp[t][da] for t in values)
        terms.append(imp[inner][imp[top][imp[top][a]]])
    return st.meet(terms)


def is_regular(f: MorphismTable, cap=12, subject=None) -> VerificationReport:
    """Single-meet regularity check over all value sets of fibers.

    Every concrete reindexing obligation is a meet over a subfamily of the
    subsets enumerated here, so the one meet decides them all; conversely the
    map packing every subset as a fiber realizes exactly this meet.  When both
    sides are join compatible, the join form of the existential is
    cross-checked as well.
    """
    subject = subject or f.name
    src, tgt = f.source, f.target
    st, tt = src.structure, tgt.structure
    n = st.size
    if n > cap:
        return inconclusive(
            subject, "morphism.regular", f"carrier size {n} exceeds the subset cap {cap}"
        )
    def braced(values):
        return "{" + ",".join(src.names(values)) + "}"

    for mask in range(1 << n):
        values = [x for x in range(n) if mask >> x & 1]
        lhs = f.table[fiber_exists_value(st, values)]
        rhs = fiber_exists_value(tt, sorted({f.table[x] for x in values}))
        if tt.imp[lhs][rhs] not in tgt.separator:
            return failing(subject, "morphism.regular", (braced(values),))
    from .core import is_compatible_with_joins

    if is_compatible_with_joins(src, cap).ok and is_compatible_with_joins(tgt, cap).ok:
        for mask in range(1 << n):
            values = [x for x in range(n) if mask >> x & 1]
            lhs = f.table[st.join(values)]
            rhs = tt.join(f.table[x] for x in values)
            if tt.imp[lhs][rhs] not in tgt.separator:
                return failing(
                    subject,
                    "morphism.regular",
                    (braced(values),),
                    detail="join form disagrees",
                )
    return passing(subject, "morphism.regular")


def is_regular_direct(f: MorphismTable, max_index=3) -> bool:
    """Oracle: evaluate the definition over all maps between small index sets."""
    from .tripos import FinMap, Predicate, exists_along

    src, tgt = f.source, f.target
    for nx in range(max_index + 1):
        for ny in range(max_index + 1):
            for g_table in itertools.product(range(ny), repeat=nx):
                g = FinMap(nx, ny, g_table)
                for alpha in itertools.product(range(src.size), repeat=nx):
                    pa = Predicate(src, nx, alpha)
                    lhs = tuple(f.table[v] for v in exists_along(g, pa).table)
                    rhs = exists_along(g, Predicate(tgt, nx, tuple(f.table[v] for v in alpha))).table
                    value = tgt.structure.meet(
                        tgt.implies(lhs[y], rhs[y]) for y in range(ny)
                    )
                    if value not in tgt.separator:
                        return False
    return True


# -- frames --------------------------------------------------------------------------


def _preserves_finite_meets(f: MorphismTable) -> bool:
    src, tgt = f.source.structure, f.target.structure
    if f.table[src.top] != tgt.top:
        return False
    return all(
        f.table[src.meet2(a, b)] == tgt.meet2(f.table[a], f.table[b])
        for a in range(src.size)
        for b in range(src.size)
    )


def _preserves_all_joins(f: MorphismTable) -> bool:
    src, tgt = f.source.structure, f.target.structure
    if f.table[src.bottom] != tgt.bottom:
        return False
    return all(
        f.table[src.join2(a, b)] == tgt.join2(f.table[a], f.table[b])
        for a in range(src.size)
        for b in range(src.size)
    )


def is_frame_homomorphism(f: MorphismTable) -> bool:
    return f.is_monotone() and _preserves_finite_meets(f) and _preserves_all_joins(f)


def frame_characterizations(f: MorphismTable, subject=None):
    """Between frame algebras: implicative iff monotone and finite-meet
    preserving; computationally dense iff a frame homomorphism."""
    subject = subject or f.name
    if not f.source.is_frame_derived() or not f.target.is_frame_derived():
        raise InputError("frame characterizations need frame-derived algebras")
    reports = []

    implicative = check_implicative(f).ok
    meets = f.is_monotone() and _preserves_finite_meets(f)
    if implicative == meets:
        reports.append(passing(subject, "morphism.frame-implicative"))
    else:
        reports.append(
            failing(
                subject,
                "morphism.frame-implicative",
                (),
                detail=f"implicative={implicative} but monotone-meet-preserving={meets}",
            )
        )

    dense = find_right_adjoint(f).found
    hom = is_frame_homomorphism(f)
    if dense == hom:
        reports.append(passing(subject, "morphism.frame-dense"))
    else:
        reports.append(
            failing(
                subject,
                "morphism.frame-dense",
                (),
                detail=f"dense={dense} but frame-homomorphism={hom}",
            )
        )
    return reports
