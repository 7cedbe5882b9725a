"""Command-line workbench.

    arrowlab load <files...> check <subject> [--laws id,...] [--seed N]
                                             [--caps N] [--format text|structured]
    arrowlab load <files...> derive <construction> <args...> --as <name> [--out PATH]
    arrowlab suite [files...] [--seed N] [--caps N] [--format text|structured]
    arrowlab lambda eval <algebra> "<term>" [--load FILE]... [--env var=elem]...

Subjects resolve among loaded definitions first, then among the shipped
fixtures.  `check` and `suite` exit 0 when every law passes, 1 on any law
violation, 2 on input errors; `derive` prints definitions that can be saved
and reloaded.  Reports are canonically ordered and carry no timing, so equal
inputs and seeds render byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import fixtures, lam, modified, morph, nuclei, pca, prover, tripos, workspace
from .core import (
    InputError,
    is_compatible_with_joins,
    separator_reports,
    shift_retract_report,
    uniform_modus_ponens,
    verify_algebra,
)
from .morph import LawViolation
from .report import REGISTRY_VERSION, LAWS, VerificationReport, failing, passing

SUITE_TERM_SAMPLES = 40
SUITE_FAMILY_SAMPLES = 25

_TAUT_BATTERY = [
    "p1 -> p2 -> p1",
    "(p1 -> p2 -> p3) -> (p1 -> p2) -> p1 -> p3",
    "p1 -> p1",
    "(p2 -> p3) -> (p1 -> p2) -> p1 -> p3",
    "((p1 -> p2) -> p1 -> p3) -> p1 -> p2 -> p3",
]


def _rng(seed, subject):
    return random.Random(f"{seed}:{subject}")


def _retag(report, law, subject=None):
    return VerificationReport(
        subject or report.subject,
        law,
        report.status,
        witness=report.witness,
        counterexample=report.counterexample,
        detail=report.detail,
    )


def _guard(subject, law, thunk):
    """Run a construction that asserts its own laws; translate violations."""
    try:
        thunk()
        return passing(subject, law)
    except LawViolation as err:
        return _retag(err.report, law, subject)
    except InputError as err:
        return failing(subject, law, (), detail=str(err))


# -- batteries -------------------------------------------------------------------------


def _logical_reports(alg, subject):
    """Meet/join universal properties and the Heyting adjunction, exhaustively."""
    n = alg.size
    bad = {"logical.meet": None, "logical.join": None, "logical.heyting": None}
    for a in range(n):
        for b in range(n):
            m = alg.logical_meet(a, b)
            j = alg.logical_join(a, b)
            if bad["logical.meet"] is None and not (
                alg.entails(m, a) and alg.entails(m, b)
            ):
                bad["logical.meet"] = (a, b)
            if bad["logical.join"] is None and not (
                alg.entails(a, j) and alg.entails(b, j)
            ):
                bad["logical.join"] = (a, b)
            for c in range(n):
                if bad["logical.meet"] is None and (
                    alg.entails(c, a) and alg.entails(c, b) and not alg.entails(c, m)
                ):
                    bad["logical.meet"] = (c, a, b)
                if bad["logical.join"] is None and (
                    alg.entails(a, c) and alg.entails(b, c) and not alg.entails(j, c)
                ):
                    bad["logical.join"] = (c, a, b)
                if bad["logical.heyting"] is None and (
                    alg.entails(alg.logical_meet(c, a), b)
                    != alg.entails(c, alg.implies(a, b))
                ):
                    bad["logical.heyting"] = (c, a, b)
    for law, witness in bad.items():
        yield (
            passing(subject, law)
            if witness is None
            else failing(subject, law, alg.names(witness))
        )


def _taut_report(alg, subject):
    for text in _TAUT_BATTERY:
        formula = prover.parse_formula(text)
        if prover.taut_check(formula):
            value = alg.intuitionistic_instance(formula)
            if value not in alg.separator:
                return failing(subject, "taut.instance", (text, alg.name(value)))
    return passing(subject, "taut.instance")


def _family_report(alg, subject, rng, samples=SUITE_FAMILY_SAMPLES):
    n = alg.size
    for _ in range(samples):
        triples = [
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(rng.randint(1, 4))
        ]
        r = uniform_modus_ponens(alg, triples, subject)
        if not r.ok:
            return r
    return passing(subject, "families.uniform-mp")


def _lambda_report(alg, subject, rng, samples=SUITE_TERM_SAMPLES):
    separated = sorted(alg.separator)
    for _ in range(samples):
        term = lam.random_term(rng, rng.randint(1, 8))
        env = {v: rng.choice(separated) for v in lam.free_vars(term)}
        r = lam.check_separator_closure(alg, term, env, subject=subject)
        if not r.ok:
            return r
    return passing(subject, "lambda.separator-closure", witness=(str(samples),))


def _frame_order_report(alg, subject):
    bad = next(
        (
            (a, b)
            for a in alg.elements()
            for b in alg.elements()
            if alg.entails(a, b) != alg.le(a, b)
        ),
        None,
    )
    if bad is None:
        return passing(subject, "logical.frame-coincides")
    return failing(subject, "logical.frame-coincides", alg.names(bad))


def _tripos_reports(alg, subject, rng, caps):
    reports = []
    sizes = [0, 1, 2] if alg.size <= 4 else [1, 2]
    maps = []
    for x in sizes:
        for y in sizes:
            maps.extend(tripos.all_maps(x, y))
    if alg.size > 4:
        maps = maps[:: max(1, len(maps) // 6)]
    exists_bad = forall_bad = None
    for m in maps:
        got = tripos.check_adjointness(alg, m, rng, subject=subject)
        for r in got:
            if not r.ok and "exists" in r.law and exists_bad is None:
                exists_bad = r
            if not r.ok and "forall" in r.law and forall_bad is None:
                forall_bad = r
    reports.append(exists_bad or passing(subject, "tripos.exists-adjoint"))
    reports.append(forall_bad or passing(subject, "tripos.forall-adjoint"))

    square = tripos.PullbackSquare.from_cospan(
        tripos.FinMap(2, 1, (0, 0)), tripos.FinMap(2, 1, (0, 0))
    )
    for r in tripos.check_beck_chevalley(alg, square, rng, subject=subject):
        reports.append(r)
    if is_compatible_with_joins(alg, caps).ok:
        reports.append(
            tripos.exists_join_agreement(alg, tripos.FinMap(2, 1, (0, 0)), rng, subject)
        )
    reports.append(tripos.generic_element_check(alg, 2, rng, subject=subject))
    return reports


def _nucleus_family_reports(alg, subject):
    worst = {}
    for c in alg.elements():
        for kind, table in nuclei.example_nuclei(alg, c).items():
            verdict = nuclei.check_nucleus(alg, table, subject=f"{subject}:family-{kind}")
            if kind not in worst or (worst[kind].ok and not verdict.ok):
                worst[kind] = verdict
    return [
        _retag(v, "nucleus.valid", f"{subject}:family-{kind}")
        for kind, v in sorted(worst.items())
    ]


def _modifiable_reports(alg, subject, rng):
    reports = []
    reports.append(
        _guard(f"{subject}^pair", "sierpinski.valid", lambda: modified.sierpinski(alg))
    )
    if not reports[-1].ok:
        return reports
    sierp = modified.sierpinski(alg)
    try:
        o_table, c_table = modified.open_closed_nuclei(alg)
    except LawViolation as err:
        reports.append(_retag(err.report, "sierpinski.open-nucleus", f"{subject}^pair"))
        return reports
    reports.append(
        _retag(
            nuclei.check_nucleus(sierp, o_table, subject=f"{subject}^pair"),
            "sierpinski.open-nucleus",
        )
    )
    reports.append(
        _retag(
            nuclei.check_nucleus(sierp, c_table, subject=f"{subject}^pair"),
            "sierpinski.closed-nucleus",
        )
    )
    reports.append(modified.open_shape_report(alg))
    reports.append(
        _guard(f"{subject}^pair", "sierpinski.projection-pair", lambda: modified.pi1_delta(alg))
    )
    reports.append(
        _guard(f"{subject}^mod", "modified.valid", lambda: modified.modification(alg))
    )
    reports.append(modified.join_second_component_report(alg))
    reports.append(modified.modified_predicates_report(alg, 1, rng))
    reports.append(modified.pi0_inclusion_probe(alg))
    return reports


def algebra_battery(alg, name, seed, caps):
    rng = _rng(seed, name)
    reports = list(separator_reports(alg, name))
    reports.append(verify_algebra(alg, name))
    if not reports[-1].ok:
        return reports
    reports.append(is_compatible_with_joins(alg, caps, name))
    reports.append(shift_retract_report(alg, name))
    reports.append(
        passing(name, "algebra.trivial", witness=("trivial" if alg.is_trivial() else "nontrivial",))
    )
    reports.extend(_logical_reports(alg, name))
    if alg.is_frame_derived():
        reports.append(_frame_order_report(alg, name))
    reports.append(_taut_report(alg, name))
    reports.append(_family_report(alg, name, rng))
    reports.append(_lambda_report(alg, name, rng))
    reports.extend(_nucleus_family_reports(alg, name))
    reports.extend(_tripos_reports(alg, name, rng, caps))
    if modified.is_modifiable(alg) and alg.size <= caps:
        reports.extend(_modifiable_reports(alg, name, rng))
    else:
        reports.append(
            passing(name, "algebra.modifiable",
                    witness=("modifiable" if modified.is_modifiable(alg) else "not-modifiable",))
        )
    return reports


def pca_battery(subject_pca, name, seed, caps):
    rng = _rng(seed, name)
    reports = []
    pap = subject_pca.pap
    bad = pap.monotonicity_witness()
    reports.append(
        passing(name, "pca.monotone")
        if bad is None
        else failing(name, "pca.monotone", tuple(pap.name(x) for x in bad))
    )
    bad = pca.filter_witness(pap, subject_pca.filter)
    reports.append(
        passing(name, "pca.filter")
        if bad is None
        else failing(name, "pca.filter", tuple(str(x) for x in bad))
    )
    bad = pca.ks_witness(pap, subject_pca.k, subject_pca.s)
    k_report = passing(name, "pca.k", witness=(pap.name(subject_pca.k),))
    s_report = passing(name, "pca.s", witness=(pap.name(subject_pca.s),))
    if bad is not None:
        if bad[0].startswith("k"):
            k_report = failing(name, "pca.k", tuple(str(x) for x in bad))
        else:
            s_report = failing(name, "pca.s", tuple(str(x) for x in bad))
    reports.extend([k_report, s_report])

    x, y = pca.Var("x"), pca.Var("y")
    battery = [
        (["x"], x),
        (["x", "y"], x),
        (["x", "y"], pca.App(y, x)),
        (["x", "y"], pca.App(x, pca.App(y, y))),
    ]
    merged = {}
    for variables, term in battery:
        for r in pca.bracket_reports(subject_pca, variables, term, subject=name):
            if r.law not in merged or (merged[r.law].ok and not r.ok):
                merged[r.law] = r
    reports.extend(merged[k] for k in sorted(merged))

    reports.append(_combinator_law_report(subject_pca, name))
    reports.append(
        _guard(f"D({name})", "downset.valid", lambda: pca.downset_arrow_algebra(subject_pca))
    )
    if subject_pca.size <= pca.RELATION_CARRIER_CAP:
        reports.append(
            _guard(f"PER({name})", "per.valid", lambda: pca.per_arrow_algebra(subject_pca))
        )
    try:
        dalg = pca.downset_arrow_algebra(subject_pca)
        unit = pca.delta_unit(subject_pca, pca.downset_pca(subject_pca))
        reports.append(
            _guard(f"{name}:unit", "tilde.implicative", lambda: pca.tilde(unit, dalg, dalg))
        )
        reports.append(
            _retag(
                pca.pca_density_check(
                    unit, subject_pca, subject_pca, pca.downset_pca(subject_pca),
                    subject=f"{name}:unit",
                ),
                "pca.density",
                f"{name}:unit",
            )
        )
    except InputError:
        pass
    return reports


def _combinator_law_report(subject_pca, name):
    combs = pca.standard_combinators(subject_pca)
    p = subject_pca
    for a in p.elements():
        ia = p.apply(combs["i"], a)
        if ia is None or not p.le(ia, a):
            return failing(name, "pca.combinators", (p.name(a),), detail="identity law")
        for b in p.elements():
            kb = p.apply(p.apply(combs["kbar"], a), b)
            if kb is None or not p.le(kb, b):
                return failing(name, "pca.combinators", p.names((a, b)), detail="dual constant law")
            pab = p.apply(p.apply(combs["p"], a), b)
            if pab is None:
                return failing(name, "pca.combinators", p.names((a, b)), detail="pairing undefined")
            left = p.apply(combs["p0"], pab)
            right = p.apply(combs["p1"], pab)
            if left is None or not p.le(left, a) or right is None or not p.le(right, b):
                return failing(name, "pca.combinators", p.names((a, b)), detail="unpairing law")
    return passing(name, "pca.combinators", witness=tuple(p.name(combs[k]) for k in ("i", "kbar", "p")))


def morphism_battery(m, name, seed, caps):
    rng = _rng(seed, name)
    reports = list(morph.implicative_reports(m, name))
    verdict = morph.check_implicative(m, name)
    reports.append(verdict)
    if not verdict.ok:
        return reports
    reports.append(morph.cartesian_meet_report(m, name))
    search = morph.find_right_adjoint(m)
    regular = morph.is_regular(m, caps, name)
    if search.found:
        # dense morphisms must be regular; otherwise regularity is a predicate
        reports.append(regular)
    elif regular.status == "inconclusive":
        reports.append(regular)
    else:
        reports.append(
            passing(name, "morphism.regular",
                    witness=("regular" if regular.ok else "not-regular",))
        )
    reports.extend(tripos.transformation_reports(m, 2, rng, subject=name))
    reports.append(tripos.roundtrip_report(m, name))
    if m.source.is_frame_derived() and m.target.is_frame_derived():
        reports.extend(morph.frame_characterizations(m, name))
    if search.status == "inconclusive":
        reports.append(
            VerificationReport(name, "adjoint.valid", "inconclusive", detail=search.detail)
        )
    elif not search.found:
        reports.append(passing(name, "adjoint.valid", witness=("no-right-adjoint",)))
    else:
        cls = morph.classify(search.pair)
        kind = (
            "equivalence"
            if cls.equivalence
            else "surjection" if cls.surjection else "injection" if cls.injection else "dense"
        )
        reports.append(passing(name, "adjoint.valid", witness=(kind,)))
        reports.append(_guard(name, "factor.composite", lambda: nuclei.factorize(search.pair)))
        if modified.is_modifiable(m.source) and modified.is_modifiable(m.target):
            reports.append(_guard(name, "sierpinski.lift", lambda: modified.lift_morphism(m)))
            reports.append(modified.lemma_collapse_report(m))
            reports.append(modified.pullback_condition_report(m))
            reports.append(_guard(name, "modified.lift", lambda: modified.lift_modified(m)))
    return reports


def nucleus_battery(ws, alg_name, table, name, seed, caps):
    alg = ws.algebra(alg_name)
    rng = _rng(seed, name)
    reports = list(nuclei.nucleus_reports(alg, table, name))
    verdict = nuclei.check_nucleus(alg, table, name)
    reports.append(verdict)
    if not verdict.ok:
        return reports
    reports.append(_guard(name, "quotient.valid", lambda: nuclei.quotient(alg, table)))
    if reports[-1].ok:
        quo = nuclei.quotient(alg, table)
        missing = alg.separator - quo.separator
        reports.append(
            passing(name, "quotient.separator-grows")
            if not missing
            else failing(name, "quotient.separator-grows", (alg.name(next(iter(missing))),))
        )
        pair = nuclei.quotient_surjection(alg, table, quotient_algebra=quo)
        cls = morph.classify(pair)
        reports.append(
            passing(name, "adjoint.surjection")
            if cls.surjection
            else failing(name, "adjoint.surjection", (), detail="not a surjection")
        )
        for r in nuclei.closure_roundtrip(alg, table, subject=name):
            reports.append(r)
        reports.extend(tripos.quotient_family_reports(alg, table, 1, rng, subject=name))
    return reports


def pca_morphism_battery(m, name, seed, caps):
    return [pca.pca_morphism_check(m.table, m.source, m.target, subject=name)]


# -- the workspace used when nothing is loaded ------------------------------------------------


def fixture_workspace() -> workspace.Workspace:
    ws = workspace.Workspace()
    ws.algebras.update(fixtures.algebra_fixtures())
    ws.pcas.update(fixtures.pca_fixtures())
    chain3 = fixtures.chain(3)
    chain2 = fixtures.chain(2)
    ws.morphisms["chi.chain3"] = fixtures.characteristic_morphism(chain3)
    ws.morphisms["collapse"] = morph.MorphismTable(chain3, chain2, (0, 1, 1), name="collapse")
    ws.morphisms["const-top"] = morph.MorphismTable(
        chain2, fixtures.diamond(), (3, 3), name="const-top"
    )
    ws.pca_morphisms["embed.one"] = workspace.PcaMorphism(
        fixtures.one_pca(), fixtures.meet_chain_pca(2), (1,), "embed.one"
    )
    ws.nuclei["shift.chain3"] = ("chain3", nuclei.shift_nucleus(chain3))
    ws.nuclei["dneg.chain3"] = (
        "chain3",
        nuclei.example_nuclei(chain3, chain3.bottom)["double"],
    )
    ws.nuclei["closure.diamond"] = (
        "diamond",
        nuclei.example_nuclei(fixtures.diamond(), 1)["closure"],
    )
    return ws


def merged_workspace(paths) -> workspace.Workspace:
    base = fixture_workspace()
    if not paths:
        return base
    return workspace.load(paths, base=base)


# -- command implementations --------------------------------------------------------------


def run_check(ws, subject, laws, seed, caps):
    if subject in ws.algebras:
        reports = algebra_battery(ws.algebras[subject], subject, seed, caps)
    elif subject in ws.pcas:
        reports = pca_battery(ws.pcas[subject], subject, seed, caps)
    elif subject in ws.morphisms:
        reports = morphism_battery(ws.morphisms[subject], subject, seed, caps)
    elif subject in ws.pca_morphisms:
        reports = pca_morphism_battery(ws.pca_morphisms[subject], subject, seed, caps)
    elif subject in ws.nuclei:
        alg_name, table = ws.nuclei[subject]
        reports = nucleus_battery(ws, alg_name, table, subject, seed, caps)
    else:
        raise InputError(f"unknown subject: {subject!r}")
    if laws:
        for law in laws:
            if not any(k == law or k.startswith(law + ".") for k in LAWS):
                raise InputError(f"unknown law identifier: {law!r}")
        reports = [
            r for r in reports
            if any(r.law == law or r.law.startswith(law + ".") for law in laws)
        ]
    return reports


def run_suite(ws, seed, caps):
    reports = []
    for name in sorted(ws.algebras):
        reports.extend(algebra_battery(ws.algebras[name], name, seed, caps))
    for name in sorted(ws.pcas):
        reports.extend(pca_battery(ws.pcas[name], name, seed, caps))
    for name in sorted(ws.morphisms):
        reports.extend(morphism_battery(ws.morphisms[name], name, seed, caps))
    for name in sorted(ws.pca_morphisms):
        reports.extend(pca_morphism_battery(ws.pca_morphisms[name], name, seed, caps))
    for name in sorted(ws.nuclei):
        alg_name, table = ws.nuclei[name]
        reports.extend(nucleus_battery(ws, alg_name, table, name, seed, caps))
    return reports


def run_derive(ws, construction, args, out_name):
    defs = []

    def algebra_name(alg, fallback):
        for known, value in ws.algebras.items():
            if value is alg:
                return known
        defs.append(workspace.algebra_definition(alg, fallback))
        return fallback

    if construction == "downset":
        (pca_name,) = args
        alg = pca.downset_arrow_algebra(ws.pca(pca_name))
        defs.append(workspace.algebra_definition(alg, out_name))
    elif construction == "per":
        (pca_name,) = args
        alg = pca.per_arrow_algebra(ws.pca(pca_name))
        defs.append(workspace.algebra_definition(alg, out_name))
    elif construction == "sierpinski":
        (alg_name,) = args
        base = ws.algebra(alg_name)
        alg = modified.sierpinski(base)
        defs.append(workspace.algebra_definition(alg, out_name))
        if modified.is_modifiable(base):
            o_table, c_table = modified.open_closed_nuclei(base)
            defs.append(
                workspace.nucleus_definition(alg, o_table, f"{out_name}.open", out_name)
            )
            defs.append(
                workspace.nucleus_definition(alg, c_table, f"{out_name}.closed", out_name)
            )
    elif construction == "modify":
        (alg_name,) = args
        alg = modified.modification(ws.algebra(alg_name))
        defs.append(workspace.algebra_definition(alg, out_name))
    elif construction == "power":
        alg_name, index = args
        alg = tripos.power_algebra(ws.algebra(alg_name), int(index))
        defs.append(workspace.algebra_definition(alg, out_name))
    elif construction == "quotient":
        (nucleus_name,) = args
        if nucleus_name not in ws.nuclei:
            raise InputError(f"unknown nucleus: {nucleus_name!r}")
        alg_name, table = ws.nuclei[nucleus_name]
        alg = nuclei.quotient(ws.algebra(alg_name), table, label=out_name)
        defs.append(workspace.algebra_definition(alg, out_name))
    elif construction == "monotonize":
        (m_name,) = args
        m = _morphism(ws, m_name)
        out = morph.monotonize(m)
        defs.append(
            workspace.morphism_definition(
                out, out_name,
                algebra_name(m.source, f"{out_name}.source"),
                algebra_name(m.target, f"{out_name}.target"),
            )
        )
    elif construction == "lift-arrow":
        (m_name,) = args
        m = _morphism(ws, m_name)
        out = modified.lift_morphism(m)
        defs.append(
            workspace.morphism_definition(
                out, out_name,
                algebra_name(out.source, f"{out_name}.source"),
                algebra_name(out.target, f"{out_name}.target"),
            )
        )
    elif construction == "lift-modified":
        (m_name,) = args
        m = _morphism(ws, m_name)
        out = modified.lift_modified(m)
        defs.append(
            workspace.morphism_definition(
                out, out_name,
                algebra_name(out.source, f"{out_name}.source"),
                algebra_name(out.target, f"{out_name}.target"),
            )
        )
    elif construction == "adjoint":
        (m_name,) = args
        m = _morphism(ws, m_name)
        search = morph.find_right_adjoint(m)
        if not search.found:
            raise InputError(f"{m_name}: {search.detail or 'no right adjoint'}")
        out = search.pair.h
        defs.append(
            workspace.morphism_definition(
                out, out_name,
                algebra_name(out.source, f"{out_name}.source"),
                algebra_name(out.target, f"{out_name}.target"),
            )
        )
    elif construction == "factorize":
        (m_name,) = args
        m = _morphism(ws, m_name)
        search = morph.find_right_adjoint(m)
        if not search.found:
            raise InputError(f"{m_name}: {search.detail or 'no right adjoint'}")
        fact = nuclei.factorize(search.pair)
        src_name = algebra_name(m.source, f"{out_name}.source")
        defs.append(workspace.nucleus_definition(m.source, fact.nucleus, f"{out_name}.nucleus", src_name))
        defs.append(workspace.algebra_definition(fact.quotient, f"{out_name}.quotient"))
        defs.append(
            workspace.morphism_definition(
                fact.injection.f, f"{out_name}.injection", f"{out_name}.quotient",
                algebra_name(m.target, f"{out_name}.target"),
            )
        )
    elif construction == "tilde":
        (m_name,) = args
        if m_name not in ws.pca_morphisms:
            raise InputError(f"unknown combinatory morphism: {m_name!r}")
        m = ws.pca_morphisms[m_name]
        src_alg = pca.downset_arrow_algebra(m.source)
        tgt_alg = pca.downset_arrow_algebra(m.target)
        unit = pca.delta_unit(m.target, pca.downset_pca(m.target))
        out = pca.tilde(tuple(unit[v] for v in m.table), src_alg, tgt_alg, name=out_name)
        defs.append(
            workspace.morphism_definition(
                out, out_name,
                algebra_name(src_alg, f"{out_name}.source"),
                algebra_name(tgt_alg, f"{out_name}.target"),
            )
        )
    else:
        raise InputError(f"unknown construction: {construction!r}")
    return defs


def _morphism(ws, name):
    if name not in ws.morphisms:
        raise InputError(f"unknown morphism: {name!r}")
    return ws.morphisms[name]


# -- rendering ---------------------------------------------------------------------------


def _sorted_reports(reports):
    return sorted(reports, key=lambda r: (r.subject, r.law, r.counterexample, r.witness))


def render_text(reports) -> str:
    reports = _sorted_reports(reports)
    lines = [r.line() for r in reports]
    passed = sum(r.status == "pass" for r in reports)
    failed = sum(r.status == "fail" for r in reports)
    other = len(reports) - passed - failed
    lines.append(f"{passed} passed, {failed} failed, {other} inconclusive")
    return "\n".join(lines)


def render_structured(reports, seed) -> str:
    payload = {
        "registry_version": REGISTRY_VERSION,
        "seed": seed,
        "reports": [
            {
                "subject": r.subject,
                "law": r.law,
                "status": r.status,
                "witness": list(r.witness),
                "counterexample": list(r.counterexample),
                "detail": r.detail,
            }
            for r in _sorted_reports(reports)
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2)


def exit_code(reports) -> int:
    return 1 if any(r.status == "fail" for r in reports) else 0


# -- argument handling --------------------------------------------------------------------


def _split_command(argv):
    """Separate `load <files...>` from the verb that follows it."""
    if argv and argv[0] == "load":
        verbs = {"check", "derive"}
        for i in range(1, len(argv)):
            if argv[i] in verbs:
                if i == 1:
                    raise InputError("load needs at least one file")
                return list(argv[1:i]), argv[i], list(argv[i + 1 :])
        raise InputError("load must be followed by check or derive")
    if argv and argv[0] in ("check", "derive", "suite", "lambda"):
        return [], argv[0], list(argv[1:])
    raise InputError(
        "usage: arrowlab [load FILES...] check|derive ... | arrowlab suite ... | arrowlab lambda eval ..."
    )


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        files, verb, rest = _split_command(argv)
        if verb == "check":
            ap = argparse.ArgumentParser(prog="arrowlab check")
            ap.add_argument("subject")
            ap.add_argument("--laws", default="")
            ap.add_argument("--seed", type=int, default=0)
            ap.add_argument("--caps", type=int, default=12)
            ap.add_argument("--format", choices=("text", "structured"), default="text")
            ns = ap.parse_args(rest)
            ws = merged_workspace(files)
            laws = [x for x in ns.laws.split(",") if x]
            reports = run_check(ws, ns.subject, laws, ns.seed, ns.caps)
            print(render_text(reports) if ns.format == "text" else render_structured(reports, ns.seed))
            return exit_code(reports)
        if verb == "suite":
            ap = argparse.ArgumentParser(prog="arrowlab suite")
            ap.add_argument("files", nargs="*")
            ap.add_argument("--seed", type=int, default=0)
            ap.add_argument("--caps", type=int, default=12)
            ap.add_argument("--format", choices=("text", "structured"), default="text")
            ns = ap.parse_args(rest)
            ws = merged_workspace(files)
            reports = run_suite(ws, ns.seed, ns.caps)
            print(render_text(reports) if ns.format == "text" else render_structured(reports, ns.seed))
            return exit_code(reports)
        if verb == "derive":
            ap = argparse.ArgumentParser(prog="arrowlab derive")
            ap.add_argument("construction")
            ap.add_argument("args", nargs="*")
            ap.add_argument("--as", dest="out_name", required=True)
            ap.add_argument("--out", default=None)
            ns = ap.parse_args(rest)
            ws = merged_workspace(files)
            defs = run_derive(ws, ns.construction, ns.args, ns.out_name)
            text = json.dumps(defs if len(defs) > 1 else defs[0], indent=2, sort_keys=True)
            if ns.out:
                with open(ns.out, "w") as handle:
                    handle.write(text + "\n")
            else:
                print(text)
            return 0
        if verb == "lambda":
            ap = argparse.ArgumentParser(prog="arrowlab lambda")
            ap.add_argument("action", choices=("eval",))
            ap.add_argument("algebra")
            ap.add_argument("term")
            ap.add_argument("--load", action="append", default=[])
            ap.add_argument("--env", action="append", default=[])
            ns = ap.parse_args(rest)
            ws = merged_workspace(ns.load)
            alg = ws.algebra(ns.algebra)
            env = {}
            for item in ns.env:
                if "=" not in item:
                    raise InputError(f"--env expects var=element, got {item!r}")
                var, elem = item.split("=", 1)
                env[var] = alg.index(elem)
            term = lam.parse_lambda(ns.term)
            value = lam.interpret(alg, term, env)
            marker = "separated" if value in alg.separator else "not separated"
            print(f"{lam.print_lambda(term)} = {alg.name(value)} ({marker})")
            return 0
        raise InputError(f"unknown command {verb!r}")
    except LawViolation as err:
        print(err.report.line(), file=sys.stderr)
        return 1
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
