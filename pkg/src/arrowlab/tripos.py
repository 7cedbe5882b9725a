"""Finite-index slices of the indexed Heyting structure over an arrow algebra.

A predicate is a total table from a finite index set into the carrier.  The
entailment between predicates is the separated meet of pointwise implications;
quantification along a map between index sets uses the shift-nucleus formulas
(with the fiberwise join form available on join-compatible algebras), and the
substitution/quantifier adjunctions and both Beck-Chevalley squares are
checked over exhaustive or gridded predicate spaces.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import ArrowAlgebra, ArrowStructure, InputError, verify_algebra
from .morph import MorphismTable, require
from .report import failing, passing

EXHAUSTIVE_PREDICATE_CAP = 4096
POWER_CARRIER_CAP = 4096


@dataclass(frozen=True)
class FinMap:
    src: int
    dst: int
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.src:
            raise InputError("map table must be total on its source")
        for v in self.table:
            if not (0 <= v < self.dst):
                raise InputError(f"map value {v} outside target index set")

    def __call__(self, x):
        return self.table[x]

    def fiber(self, y):
        return tuple(x for x in range(self.src) if self.table[x] == y)



@dataclass(frozen=True)
class Predicate:
    algebra: ArrowAlgebra
    index: int
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.index:
            raise InputError("predicate table must be total on its index set")
        for v in self.table:
            if not (0 <= v < self.algebra.size):
                raise InputError(f"predicate value {v} outside the carrier")

    def show(self) -> str:
        return "[" + ",".join(self.algebra.name(v) for v in self.table) + "]"


def constant_predicate(alg, index, value) -> Predicate:
    return Predicate(alg, index, (value,) * index)


def entails(phi: Predicate, psi: Predicate) -> bool:
    if phi.algebra != psi.algebra or phi.index != psi.index:
        raise InputError("entailment needs predicates over one algebra and index")
    alg = phi.algebra
    imp = alg.structure.imp
    return alg.meet(imp[a][b] for a, b in zip(phi.table, psi.table)) in alg.separator


def pred_iso(phi: Predicate, psi: Predicate) -> bool:
    return entails(phi, psi) and entails(psi, phi)


def reindex(f: FinMap, phi: Predicate) -> Predicate:
    """Substitution: precompose the table with the map."""
    if phi.index != f.dst:
        raise InputError("reindexing needs a predicate over the map's target")
    return Predicate(phi.algebra, f.src, tuple(phi.table[f(x)] for x in range(f.src)))


def pred_meet(phi: Predicate, psi: Predicate) -> Predicate:
    alg = phi.algebra
    return Predicate(
        alg, phi.index, tuple(alg.logical_meet(a, b) for a, b in zip(phi.table, psi.table))
    )


def post_compose(f: MorphismTable, phi: Predicate) -> Predicate:
    if phi.algebra != f.source:
        raise InputError("postcomposition needs a predicate over the morphism source")
    return Predicate(f.target, phi.index, tuple(f.table[v] for v in phi.table))


# -- power algebras -------------------------------------------------------------------


def power_algebra(alg: ArrowAlgebra, index: int, cap=POWER_CARRIER_CAP) -> ArrowAlgebra:
    """The algebra of predicates over a finite index, with the uniform separator."""
    n = alg.size
    count = n**index
    if count > cap:
        raise InputError(f"power carrier {count} exceeds cap {cap}")
    st = alg.structure
    tuples = list(itertools.product(range(n), repeat=index))
    names = ["(" + ",".join(st.name(v) for v in t) + ")" for t in tuples]
    pos = {t: i for i, t in enumerate(tuples)}
    leq = [
        [all(st.le(a, b) for a, b in zip(t1, t2)) for t2 in tuples] for t1 in tuples
    ]
    imp = [
        [pos[tuple(st.imp[a][b] for a, b in zip(t1, t2))] for t2 in tuples]
        for t1 in tuples
    ]
    sep = {
        i for i, t in enumerate(tuples) if st.meet(t) in alg.separator
    }
    out = ArrowAlgebra(
        ArrowStructure(leq, imp, names), sep, label=f"{alg.label}^{index}"
    )
    require(verify_algebra(out))
    return out


# -- quantifiers ---------------------------------------------------------------------


def forall_along(f: FinMap, alpha: Predicate) -> Predicate:
    """Fiberwise meet of shifted values."""
    if alpha.index != f.src:
        raise InputError("quantification needs a predicate over the map's source")
    alg = alpha.algebra
    st = alg.structure
    table = tuple(
        st.meet(st.shift(alpha.table[j]) for j in f.fiber(i)) for i in range(f.dst)
    )
    return Predicate(alg, f.dst, table)


def exists_along(f: FinMap, alpha: Predicate) -> Predicate:
    """Shift-nucleus form of the fiberwise existential."""
    if alpha.index != f.src:
        raise InputError("quantification needs a predicate over the map's source")
    alg = alpha.algebra
    st = alg.structure
    imp = st.imp
    out = []
    for i in range(f.dst):
        fiber = f.fiber(i)
        terms = []
        for a in range(st.size):
            da = st.shift(a)
            inner = st.meet(imp[alpha.table[j]][da] for j in fiber)
            terms.append(imp[inner][st.shift(da)])
        out.append(st.meet(terms))
    return Predicate(alg, f.dst, tuple(out))


def exists_join_form(f: FinMap, alpha: Predicate) -> Predicate:
    """Fiberwise join; agrees with the shift form on join-compatible algebras."""
    alg = alpha.algebra
    table = tuple(
        alg.join(alpha.table[j] for j in f.fiber(i)) for i in range(f.dst)
    )
    return Predicate(alg, f.dst, table)


# -- predicate spaces ------------------------------------------------------------------


def predicate_space(alg, index, rng=None, samples=8, cap=EXHAUSTIVE_PREDICATE_CAP):
    """Exhaustive space when small; otherwise constants, two-element
    indicator tables, and seeded random tables."""
    n = alg.size
    if n**index <= cap:
        return [
            Predicate(alg, index, t)
            for t in itertools.product(range(n), repeat=index)
        ]
    preds = {(v,) * index for v in range(n)}
    for u, v in itertools.product(range(n), repeat=2):
        for i in range(index):
            preds.add(tuple(u if k == i else v for k in range(index)))
    rng = rng or random.Random(0)
    for _ in range(samples):
        preds.add(tuple(rng.randrange(n) for _ in range(index)))
    return [Predicate(alg, index, t) for t in sorted(preds)]


def all_maps(src: int, dst: int):
    for table in itertools.product(range(dst), repeat=src):
        yield FinMap(src, dst, table)


# -- adjunction and Beck-Chevalley checks ------------------------------------------------


def check_adjointness(alg, f: FinMap, rng=None, subject=None):
    """Existential left adjoint and universal right adjoint to substitution."""
    subject = subject or f"{alg.label}:map{f.table}"
    alphas = predicate_space(alg, f.src, rng)
    betas = predicate_space(alg, f.dst, rng)
    reports = []

    bad = None
    for alpha in alphas:
        ex = exists_along(f, alpha)
        for beta in betas:
            if entails(ex, beta) != entails(alpha, reindex(f, beta)):
                bad = (alpha, beta)
                break
        if bad:
            break
    if bad is None:
        reports.append(passing(subject, "tripos.exists-adjoint"))
    else:
        reports.append(
            failing(subject, "tripos.exists-adjoint", (bad[0].show(), bad[1].show()))
        )

    bad = None
    for alpha in alphas:
        fa = forall_along(f, alpha)
        for beta in betas:
            if entails(reindex(f, beta), alpha) != entails(beta, fa):
                bad = (alpha, beta)
                break
        if bad:
            break
    if bad is None:
        reports.append(passing(subject, "tripos.forall-adjoint"))
    else:
        reports.append(
            failing(subject, "tripos.forall-adjoint", (bad[0].show(), bad[1].show()))
        )
    return reports


def exists_join_agreement(alg, f: FinMap, rng=None, subject=None):
    subject = subject or f"{alg.label}:map{f.table}"
    for alpha in predicate_space(alg, f.src, rng):
        if not pred_iso(exists_along(f, alpha), exists_join_form(f, alpha)):
            return failing(subject, "tripos.exists-join-form", (alpha.show(),))
    return passing(subject, "tripos.exists-join-form")


@dataclass(frozen=True)
class PullbackSquare:
    """Exact fiber product of a cospan h: Y -> W, k: Z -> W.

    The apex X is the set of pairs (z, y) with k(z) = h(y), listed in
    lexicographic order; f projects to Y and g to Z.
    """

    h: FinMap
    k: FinMap
    pairs: tuple
    f: FinMap
    g: FinMap

    @classmethod
    def from_cospan(cls, h: FinMap, k: FinMap) -> "PullbackSquare":
        if h.dst != k.dst:
            raise InputError("cospan legs must share a target")
        pairs = tuple(
            (z, y)
            for z in range(k.src)
            for y in range(h.src)
            if k(z) == h(y)
        )
        f = FinMap(len(pairs), h.src, tuple(y for _, y in pairs))
        g = FinMap(len(pairs), k.src, tuple(z for z, _ in pairs))
        return cls(h, k, pairs, f, g)

    def validate(self):
        for x, (z, y) in enumerate(self.pairs):
            if self.k(self.g(x)) != self.h(self.f(x)):
                raise InputError("pullback square does not commute")
            if (self.g(x), self.f(x)) != (z, y):
                raise InputError("apex is not the stated fiber product")


def check_beck_chevalley(alg, square: PullbackSquare, rng=None, subject=None):
    """Both quantifier squares commute up to isomorphism."""
    subject = subject or f"{alg.label}:square"
    square.validate()
    reports = []

    bad = None
    for phi in predicate_space(alg, square.h.src, rng):
        lhs = forall_along(square.g, reindex(square.f, phi))
        rhs = reindex(square.k, forall_along(square.h, phi))
        if not pred_iso(lhs, rhs):
            bad = phi
            break
    reports.append(
        passing(subject, "tripos.beck-chevalley-forall")
        if bad is None
        else failing(subject, "tripos.beck-chevalley-forall", (bad.show(),))
    )

    bad = None
    for psi in predicate_space(alg, square.k.src, rng):
        lhs = exists_along(square.f, reindex(square.g, psi))
        rhs = reindex(square.h, exists_along(square.k, psi))
        if not pred_iso(lhs, rhs):
            bad = psi
            break
    reports.append(
        passing(subject, "tripos.beck-chevalley-exists")
        if bad is None
        else failing(subject, "tripos.beck-chevalley-exists", (bad.show(),))
    )
    return reports


def generic_element_check(alg, max_index=3, rng=None, subject=None):
    """Every predicate equals the reindexing of the identity predicate along
    its own table, on the nose."""
    subject = subject or alg.label
    identity = Predicate(alg, alg.size, tuple(range(alg.size)))
    for index in range(max_index + 1):
        for phi in predicate_space(alg, index, rng):
            classifying = FinMap(index, alg.size, phi.table)
            if reindex(classifying, identity).table != phi.table:
                return failing(subject, "tripos.generic", (phi.show(),))
    return passing(subject, "tripos.generic")


# -- transformations induced by morphisms ---------------------------------------------


def induced_transformation(f: MorphismTable):
    """Postcomposition with the morphism, as a function on predicates."""

    def transform(phi: Predicate) -> Predicate:
        return post_compose(f, phi)

    return transform


def transformation_reports(f: MorphismTable, index: int, rng=None, subject=None):
    """Monotone and cartesian on the slice at the given index."""
    subject = subject or f"{f.name}@{index}"
    space = predicate_space(f.source, index, rng)
    reports = []

    bad = None
    for phi in space:
        for psi in space:
            if entails(phi, psi) and not entails(post_compose(f, phi), post_compose(f, psi)):
                bad = (phi, psi)
                break
        if bad:
            break
    reports.append(
        passing(subject, "morphism.uniform")
        if bad is None
        else failing(subject, "morphism.uniform", (bad[0].show(), bad[1].show()))
    )

    top_src = constant_predicate(f.source, index, f.source.top)
    top_tgt = constant_predicate(f.target, index, f.target.top)
    cart_ok = pred_iso(post_compose(f, top_src), top_tgt)
    bad = None
    if cart_ok:
        for phi in space:
            for psi in space:
                lhs = post_compose(f, pred_meet(phi, psi))
                rhs = pred_meet(post_compose(f, phi), post_compose(f, psi))
                if not pred_iso(lhs, rhs):
                    bad = (phi, psi)
                    break
            if bad:
                break
    if cart_ok and bad is None:
        reports.append(passing(subject, "tripos.cartesian"))
    else:
        ce = (bad[0].show(), bad[1].show()) if bad else ("top",)
        reports.append(failing(subject, "tripos.cartesian", ce))
    return reports


def recover_morphism(source: ArrowAlgebra, target: ArrowAlgebra, transform) -> MorphismTable:
    """Evaluate a predicate-level transformation at the identity predicate."""
    identity = Predicate(source, source.size, tuple(range(source.size)))
    image = transform(identity)
    if image.index != source.size:
        raise InputError("transformation did not preserve the index set")
    return MorphismTable(source, target, image.table, name="recovered")


def roundtrip_report(f: MorphismTable, subject=None):
    subject = subject or f.name
    recovered = recover_morphism(f.source, f.target, induced_transformation(f))
    if recovered.table == f.table:
        return passing(subject, "tripos.roundtrip")
    return failing(subject, "tripos.roundtrip", detail="tables differ")


# -- the nucleus-closed predicate family ------------------------------------------------


def closed_predicates(alg, j_table, index, rng=None):
    """Predicates fixed by the nucleus up to entailment."""
    jt = tuple(j_table)
    return [
        phi
        for phi in predicate_space(alg, index, rng)
        if entails(Predicate(alg, index, tuple(jt[v] for v in phi.table)), phi)
    ]


def quotient_family_reports(alg, j_table, index, rng=None, subject=None):
    """The closed family presents the quotient slice.

    Checks, over the predicate space: closing lands in the family; the two
    composites of the comparison maps are isomorphic to identities (in the
    quotient order phi |-j psi iff phi |- j psi); and the adjunction of the
    inclusion pair (both maps are postcomposition with the nucleus).
    """
    subject = subject or f"{alg.label}:family@{index}"
    jt = tuple(j_table)

    def close(phi):
        return Predicate(alg, index, tuple(jt[v] for v in phi.table))

    def entails_j(phi, psi):
        return entails(phi, close(psi))

    space = predicate_space(alg, index, rng)
    family = [phi for phi in space if entails(close(phi), phi)]

    for phi in space:
        if not entails(close(close(phi)), close(phi)):
            return [failing(subject, "tripos.quotient-family", (phi.show(),),
                            detail="closing does not land in the family")]
        # closing then including is isomorphic to the identity in the quotient
        if not (entails_j(close(phi), phi) and entails_j(phi, close(phi))):
            return [failing(subject, "tripos.quotient-family", (phi.show(),),
                            detail="closure is not quotient-isomorphic to the identity")]
    for phi in family:
        if not (entails(close(phi), phi) and entails(phi, close(phi))):
            return [failing(subject, "tripos.quotient-family", (phi.show(),),
                            detail="inclusion round trip moved a closed predicate")]
    for alpha in space:
        for beta in family:
            if entails(close(alpha), beta) != entails(alpha, close(beta)):
                return [failing(subject, "tripos.quotient-family",
                                (alpha.show(), beta.show()),
                                detail="inclusion adjunction failed")]
    return [passing(subject, "tripos.quotient-family", witness=(str(len(family)),))]
