"""The pair construction (actual/potential realizers) and its modification.

The pair algebra over a binary implicative base has carrier all pairs
x0 <= x1, pointwise order, a twisted implication whose first component
records both levels, and the separator of pairs whose first component is
separated.  The gluing element (bottom, top) determines an open nucleus
(implication under it) and a closed nucleus (logical join with it); quotient
by the closed one is the modification.  Morphisms lift componentwise after
monotonization, and the modified lift closes first.

The construction is cached on the base algebra, so repeated calls share one
pair algebra, one nucleus pair, and one modification.
"""

from __future__ import annotations

from .core import ArrowAlgebra, ArrowStructure, InputError, verify_algebra
from .morph import (
    AdjointPair,
    MorphismTable,
    check_implicative,
    classify,
    find_right_adjoint,
    identity_morphism,
    monotonize,
    morphism_iso,
    morphism_leq,
    require,
    verify_adjoint_pair,
)
from .nuclei import check_nucleus, quotient
from .report import failing, inconclusive, passing
from .tripos import Predicate, constant_predicate, entails, predicate_space


def is_binary_implicative(alg: ArrowAlgebra) -> bool:
    return alg.structure.binary_implicative()


def is_modifiable(alg: ArrowAlgebra) -> bool:
    return alg.structure.modifiable()


def binary_implicative_witness(alg: ArrowAlgebra):
    """A violating triple of names, or None."""
    hit = alg.structure._binary_implicative_witness()
    return None if hit is None else alg.names(hit)


def sierpinski(alg: ArrowAlgebra) -> ArrowAlgebra:
    """The algebra of pairs x0 <= x1 over a binary implicative base."""
    hit = alg._cache.get("sierpinski")
    if hit is not None:
        return hit
    if not is_binary_implicative(alg):
        raise InputError(f"{alg.label} is not binary implicative")
    st = alg.structure
    n = st.size
    pairs = [(x0, x1) for x0 in range(n) for x1 in range(n) if st.le(x0, x1)]
    pos = {p: i for i, p in enumerate(pairs)}
    leq = [
        [st.le(x0, y0) and st.le(x1, y1) for (y0, y1) in pairs] for (x0, x1) in pairs
    ]
    imp = []
    for x0, x1 in pairs:
        row = []
        for y0, y1 in pairs:
            second = st.imp[x1][y1]
            first = st.meet2(st.imp[x0][y0], second)
            row.append(pos[(first, second)])
        imp.append(row)
    names = [f"({st.name(x0)},{st.name(x1)})" for x0, x1 in pairs]
    separator = {i for i, (x0, _) in enumerate(pairs) if x0 in alg.separator}
    out = ArrowAlgebra(
        ArrowStructure(leq, imp, names), separator, label=f"{alg.label}^pair"
    )
    out.sierp_pairs = tuple(pairs)
    out.sierp_of = pos
    out.base_algebra = alg
    require(verify_algebra(out))
    if not is_binary_implicative(out):
        require(
            failing(out.label, "algebra.binary-implicative", binary_implicative_witness(out))
        )
    alg._cache["sierpinski"] = out
    return out


def glue_element(sierp: ArrowAlgebra) -> int:
    """The pair (bottom, top)."""
    base = sierp.base_algebra
    return sierp.sierp_of[(base.bottom, base.top)]


def pi1_delta(alg: ArrowAlgebra) -> AdjointPair:
    """Second projection with the diagonal as right adjoint; a surjection."""
    sierp = sierpinski(alg)
    pairs = sierp.sierp_pairs
    pi1 = MorphismTable(sierp, alg, tuple(x1 for _, x1 in pairs), name=f"{alg.label}.pi1")
    delta = MorphismTable(
        alg, sierp, tuple(sierp.sierp_of[(a, a)] for a in alg.elements()),
        name=f"{alg.label}.delta",
    )
    pair = verify_adjoint_pair(pi1, delta)
    if pair is None:
        require(failing(pi1.name, "sierpinski.projection-pair", (),
                        detail="projection/diagonal pair failed"))
    if not classify(pair).surjection:
        require(failing(pi1.name, "sierpinski.projection-pair", (),
                        detail="pair is not a surjection"))
    return pair


def open_closed_nuclei(alg: ArrowAlgebra):
    """The open nucleus (implication under the glue) and the closed nucleus
    (join with the glue) on the pair algebra, both verified."""
    hit = alg._cache.get("open-closed")
    if hit is not None:
        return hit
    sierp = sierpinski(alg)
    u = glue_element(sierp)
    o_table = tuple(sierp.implies(u, x) for x in sierp.elements())
    c_table = tuple(sierp.logical_join(x, u) for x in sierp.elements())
    require(check_nucleus(sierp, o_table, subject=f"{sierp.label}:open"))
    require(check_nucleus(sierp, c_table, subject=f"{sierp.label}:closed"))
    alg._cache["open-closed"] = (o_table, c_table)
    return o_table, c_table


def open_shape_report(alg: ArrowAlgebra):
    """The open nucleus is isomorphic to diagonal-after-projection; needs
    modifiability (skipped with a notice otherwise)."""
    sierp = sierpinski(alg)
    subject = f"{sierp.label}:open"
    if not is_modifiable(alg):
        return inconclusive(subject, "sierpinski.open-shape",
                            "base is not modifiable; identification skipped")
    o_table, _ = open_closed_nuclei(alg)
    pair = pi1_delta(alg)
    dp = tuple(pair.h.table[pair.f.table[x]] for x in sierp.elements())
    o_m = MorphismTable(sierp, sierp, o_table, name="open")
    dp_m = MorphismTable(sierp, sierp, dp, name="delta.pi1")
    if morphism_iso(o_m, dp_m):
        return passing(subject, "sierpinski.open-shape")
    return failing(subject, "sierpinski.open-shape", (), detail="not isomorphic")


def modification(alg: ArrowAlgebra) -> ArrowAlgebra:
    """Quotient of the pair algebra by the closed nucleus."""
    hit = alg._cache.get("modification")
    if hit is not None:
        return hit
    if not is_modifiable(alg):
        raise InputError(f"{alg.label} is not modifiable")
    sierp = sierpinski(alg)
    _, c_table = open_closed_nuclei(alg)
    out = quotient(sierp, c_table, label=f"{alg.label}^mod")
    out.sierp_pairs = sierp.sierp_pairs
    out.sierp_of = sierp.sierp_of
    out.base_algebra = alg
    out.pair_algebra = sierp
    alg._cache["modification"] = out
    return out


def modified_predicates(alg: ArrowAlgebra, index: int, rng=None):
    """Predicates whose potential component is uniformly separated."""
    sierp = sierpinski(alg)
    pairs = sierp.sierp_pairs
    top_pred = constant_predicate(alg, index, alg.top)
    family = []
    for phi in predicate_space(sierp, index, rng):
        second = Predicate(alg, index, tuple(pairs[v][1] for v in phi.table))
        if entails(top_pred, second):
            family.append(phi)
    return family


def modified_predicates_report(alg: ArrowAlgebra, index: int, rng=None):
    """The explicit family coincides with the closed-nucleus family."""
    sierp = sierpinski(alg)
    subject = f"{sierp.label}:modified@{index}"
    _, c_table = open_closed_nuclei(alg)
    explicit = {phi.table for phi in modified_predicates(alg, index, rng)}
    closed = {
        phi.table
        for phi in predicate_space(sierp, index, rng)
        if entails(Predicate(sierp, index, tuple(c_table[v] for v in phi.table)), phi)
    }
    if explicit == closed:
        return passing(subject, "modified.predicates", witness=(str(len(explicit)),))
    diff = next(iter(explicit ^ closed))
    return failing(
        subject, "modified.predicates",
        ("[" + ",".join(sierp.name(v) for v in diff) + "]",),
    )


# -- lifted morphisms ---------------------------------------------------------------------


def lift_morphism(f: MorphismTable) -> MorphismTable:
    """Monotonize, then map pairs componentwise; verified implicative."""
    src = sierpinski(f.source)
    tgt = sierpinski(f.target)
    mf = monotonize(f)
    table = tuple(
        tgt.sierp_of[(mf.table[x0], mf.table[x1])] for (x0, x1) in src.sierp_pairs
    )
    out = MorphismTable(src, tgt, table, name=f"{f.name}^pair")
    require(check_implicative(out))
    return out


def lift_adjoint_report(pair: AdjointPair):
    """Lifting an adjoint pair yields an adjoint pair."""
    subject = f"{pair.f.name}^pair"
    lifted_f = lift_morphism(pair.f)
    lifted_h = lift_morphism(pair.h)
    lifted = verify_adjoint_pair(lifted_f, lifted_h)
    if lifted is None:
        return None, failing(subject, "sierpinski.lift-adjoint", (),
                             detail="lifted pair failed verification")
    return lifted, passing(subject, "sierpinski.lift-adjoint")


def lift_pseudofunctor_reports(f: MorphismTable, g: MorphismTable):
    """Identity and composition laws of the pair lift, up to isomorphism."""
    reports = []
    src = sierpinski(f.source)
    lifted_id = lift_morphism(identity_morphism(f.source))
    subject = f"{f.source.label}^pair"
    reports.append(
        passing(subject, "sierpinski.pseudofunctor")
        if morphism_iso(lifted_id, identity_morphism(src))
        else failing(subject, "sierpinski.pseudofunctor", (), detail="identity law")
    )
    if f.target != g.source:
        raise InputError("composition law needs composable morphisms")
    gf = MorphismTable(
        f.source, g.target, tuple(g.table[v] for v in f.table), name="gf"
    )
    lhs = lift_morphism(gf)
    lf, lg = lift_morphism(f), lift_morphism(g)
    rhs = MorphismTable(
        lf.source, lg.target, tuple(lg.table[v] for v in lf.table), name="g^f^"
    )
    reports.append(
        passing(f"{f.name};{g.name}", "sierpinski.pseudofunctor")
        if morphism_iso(lhs, rhs)
        else failing(f"{f.name};{g.name}", "sierpinski.pseudofunctor", (),
                     detail="composition law")
    )
    return reports


def lemma_collapse_report(f: MorphismTable):
    """Closing after a lifted-closed composite collapses to the composite."""
    subject = f"{f.name}^pair"
    if not (is_modifiable(f.source) and is_modifiable(f.target)):
        raise InputError("the collapse law needs modifiable endpoints")
    src = sierpinski(f.source)
    tgt = sierpinski(f.target)
    _, c_src = open_closed_nuclei(f.source)
    _, c_tgt = open_closed_nuclei(f.target)
    lifted = lift_morphism(f)
    fc = tuple(lifted.table[c_src[x]] for x in src.elements())
    cfc = tuple(c_tgt[v] for v in fc)
    lhs = MorphismTable(src, tgt, cfc, name="closed.lift.closed")
    rhs = MorphismTable(src, tgt, fc, name="lift.closed")
    if morphism_leq(lhs, rhs):
        return passing(subject, "modified.collapse")
    return failing(subject, "modified.collapse", (), detail="entailment fails")


def pullback_condition_report(f: MorphismTable):
    """The lift fixes the glue element up to isomorphism."""
    subject = f"{f.name}^pair"
    tgt = sierpinski(f.target)
    src = sierpinski(f.source)
    lifted = lift_morphism(f)
    image = lifted.table[glue_element(src)]
    u = glue_element(tgt)
    if tgt.iso(image, u):
        return passing(subject, "modified.pullback")
    return failing(subject, "modified.pullback", (tgt.name(image), tgt.name(u)))


def lift_modified(f: MorphismTable) -> MorphismTable:
    """Close, lift, and reinterpret between the modifications."""
    src_mod = modification(f.source)
    tgt_mod = modification(f.target)
    _, c_src = open_closed_nuclei(f.source)
    lifted = lift_morphism(f)
    table = tuple(lifted.table[c_src[x]] for x in range(src_mod.size))
    out = MorphismTable(src_mod, tgt_mod, table, name=f"{f.name}^mod")
    report = check_implicative(out)
    if not report.ok:
        require(failing(out.name, "modified.lift", report.counterexample,
                        detail=report.detail))
    return out


def modified_pseudofunctor_reports(f: MorphismTable, g: MorphismTable):
    """Identity (isomorphic to closing) and composition laws of the
    modified lift."""
    reports = []
    src_mod = modification(f.source)
    _, c_src = open_closed_nuclei(f.source)
    lifted_id = lift_modified(identity_morphism(f.source))
    closing = MorphismTable(src_mod, src_mod, c_src, name="close")
    subject = f"{f.source.label}^mod"
    reports.append(
        passing(subject, "modified.pseudofunctor")
        if morphism_iso(lifted_id, closing)
        else failing(subject, "modified.pseudofunctor", (), detail="identity law")
    )
    gf = MorphismTable(f.source, g.target, tuple(g.table[v] for v in f.table), name="gf")
    lhs = lift_modified(gf)
    lf, lg = lift_modified(f), lift_modified(g)
    rhs = MorphismTable(lf.source, lg.target, tuple(lg.table[v] for v in lf.table),
                        name="g^m.f^m")
    reports.append(
        passing(f"{f.name};{g.name}", "modified.pseudofunctor")
        if morphism_iso(lhs, rhs)
        else failing(f"{f.name};{g.name}", "modified.pseudofunctor", (),
                     detail="composition law")
    )
    return reports


def modified_adjoint_reports(pair: AdjointPair):
    """The modified lift of an adjoint pair is adjoint, and its direct image
    square against the pair algebras commutes up to isomorphism."""
    reports = []
    f, h = pair.f, pair.h
    subject = f"{f.name}^mod"
    mf = lift_modified(f)
    mh = lift_modified(h)
    lifted_pair = verify_adjoint_pair(mf, mh)
    reports.append(
        passing(subject, "adjoint.valid")
        if lifted_pair is not None
        else failing(subject, "adjoint.valid", (), detail="modified pair failed")
    )
    src_sierp = sierpinski(f.source)
    _, c_src = open_closed_nuclei(f.source)
    lifted_h = lift_morphism(h)
    _, c_tgt = open_closed_nuclei(f.target)
    tgt_mod = modification(f.target)
    lhs = MorphismTable(tgt_mod, src_sierp,
                        tuple(c_src[mh.table[y]] for y in range(tgt_mod.size)),
                        name="close.h^mod")
    rhs = MorphismTable(tgt_mod, src_sierp,
                        tuple(lifted_h.table[c_tgt[y]] for y in range(tgt_mod.size)),
                        name="h^pair.close")
    reports.append(
        passing(subject, "modified.adjoint-square")
        if morphism_iso(lhs, rhs)
        else failing(subject, "modified.adjoint-square", (), detail="square differs")
    )
    return reports


def join_second_component_report(alg: ArrowAlgebra):
    """Pair joins compute the base join in the potential component, exactly."""
    sierp = sierpinski(alg)
    subject = sierp.label
    pairs = sierp.sierp_pairs
    for x in sierp.elements():
        for y in sierp.elements():
            j = sierp.logical_join(x, y)
            if pairs[j][1] != alg.logical_join(pairs[x][1], pairs[y][1]):
                return failing(subject, "modified.join-second",
                               (sierp.name(x), sierp.name(y)))
    return passing(subject, "modified.join-second")


def projection_squares_report(f: MorphismTable):
    """The lift commutes with both projection-side maps up to isomorphism."""
    subject = f"{f.name}^pair"
    src, tgt = f.source, f.target
    s_src, s_tgt = sierpinski(src), sierpinski(tgt)
    lifted = lift_morphism(f)
    d_src = pi1_delta(src)
    d_tgt = pi1_delta(tgt)
    lhs = MorphismTable(src, s_tgt, tuple(d_tgt.h.table[f.table[a]] for a in src.elements()),
                        name="delta.f")
    rhs = MorphismTable(src, s_tgt, tuple(lifted.table[d_src.h.table[a]] for a in src.elements()),
                        name="f^pair.delta")
    if not morphism_iso(lhs, rhs):
        return failing(subject, "sierpinski.projection-pair", (), detail="diagonal square")
    lhs2 = MorphismTable(s_src, tgt, tuple(f.table[d_src.f.table[x]] for x in s_src.elements()),
                         name="f.pi1")
    rhs2 = MorphismTable(s_src, tgt, tuple(d_tgt.f.table[lifted.table[x]] for x in s_src.elements()),
                         name="pi1.f^pair")
    if not morphism_iso(lhs2, rhs2):
        return failing(subject, "sierpinski.projection-pair", (), detail="projection square")
    return passing(subject, "sierpinski.projection-pair")


def pi0_inclusion_probe(alg: ArrowAlgebra):
    """Record whether the actual-component projection happens to be a dense
    surjection here; no general claim is made."""
    sierp = sierpinski(alg)
    subject = f"{sierp.label}:pi0"
    pi0 = MorphismTable(sierp, alg, tuple(x0 for x0, _ in sierp.sierp_pairs), name="pi0")
    if not check_implicative(pi0).ok:
        return passing(subject, "modified.pi0-probe", witness=("not-implicative",))
    search = find_right_adjoint(pi0)
    if not search.found:
        return passing(subject, "modified.pi0-probe", witness=("no-right-adjoint",))
    cls = classify(search.pair)
    outcome = "surjection" if cls.surjection else "dense-but-not-surjection"
    return passing(subject, "modified.pi0-probe", witness=(outcome,))
