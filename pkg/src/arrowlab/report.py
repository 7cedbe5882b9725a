"""Verification reports and the law registry.

Every check in the library answers with a VerificationReport instead of a bare
boolean: a failing check names the violated law and carries a replayable
counterexample, a passing check carries its witnesses (typically realizer
element names).  Law identifiers come from the fixed registry below so that
reports stay machine-stable across versions.
"""

from __future__ import annotations

from dataclasses import dataclass


REGISTRY_VERSION = "1"

# Registry of law identifiers. Keys are stable; descriptions are for humans.
LAWS = {
    # order / structure
    "structure.order": "the relation is a partial order",
    "structure.meets": "every subset of the carrier has a greatest lower bound",
    "structure.variance": "implication is antitone on the left, monotone on the right",
    # separator
    "separator.upward": "the separator is upward closed",
    "separator.modus-ponens": "the separator is closed under modus ponens",
    "separator.k": "the separator contains the k combinator",
    "separator.s": "the separator contains the s combinator",
    "separator.a": "the separator contains the uniform-family combinator",
    "separator.i": "the separator contains the identity combinator",
    "separator.b": "the separator contains the composition combinator",
    "algebra.valid": "combined separator/structure verification",
    "algebra.join-compatible": "implication turns joins on the left into meets",
    "algebra.trivial": "the separator is the whole carrier",
    "algebra.binary-implicative": "implication distributes over binary meets on the right",
    "algebra.implicative": "implication turns arbitrary meets on the right into meets",
    "algebra.modifiable": "binary implicative and bottom implies everything is top",
    "algebra.shift-retract": "(top -> a) -> a is separated for all a",
    # lambda interpretation
    "lambda.separator-closure": "interpretation of a term under separated environments is separated",
    # logical order
    "logical.meet": "x is a meet for the logical order",
    "logical.join": "+ is a join for the logical order",
    "logical.heyting": "implication is the Heyting adjoint of x for the logical order",
    "logical.frame-coincides": "on frame algebras the logical order equals the lattice order",
    # intuitionistic instances
    "taut.instance": "instances of provable implicational formulas are separated",
    "families.uniform-mp": "uniform modus ponens over indexed families",
    # morphisms
    "morphism.separator": "direct images of separated elements are separated",
    "morphism.realizer": "a realizer for implication preservation exists",
    "morphism.uniform": "uniform families of entailments are preserved",
    "morphism.valid": "combined morphism verification",
    "morphism.leq": "pointwise entailment between morphisms",
    "morphism.monotonize": "the monotonization is monotone and isomorphic to the original",
    "morphism.cartesian": "binary logical meets are preserved up to entailment",
    "adjoint.unit": "identity entails the round trip through the adjunction",
    "adjoint.counit": "the opposite round trip entails the identity",
    "adjoint.valid": "combined adjoint-pair verification",
    "adjoint.surjection": "the pair presents a lax-epi (inclusion-inducing) morphism",
    "adjoint.injection": "the pair presents a lax-mono (surjection-inducing) morphism",
    "adjoint.equivalence": "the pair is an equivalence",
    "morphism.regular": "existential quantification is preserved up to entailment",
    "morphism.frame-implicative": "between frames: implicative iff monotone and finite-meet preserving",
    "morphism.frame-dense": "between frames: dense iff a frame homomorphism",
    # nuclei
    "nucleus.monotone": "the endomap is monotone",
    "nucleus.inflationary": "a -> ja is uniformly separated",
    "nucleus.multiplicative": "(a -> jb) -> ja -> jb is uniformly separated",
    "nucleus.idempotent": "jja -> ja is uniformly separated",
    "nucleus.functorial": "(a -> b) -> ja -> jb is uniformly separated",
    "nucleus.inner-functorial": "j(a -> b) -> ja -> jb is uniformly separated",
    "nucleus.valid": "combined nucleus verification",
    "quotient.valid": "the quotient algebra verifies",
    "quotient.separator-grows": "the separator is contained in the quotient separator",
    "quotient.logical-order": "quotient entailment agrees with entailment into the nucleus",
    "closure.cartesian": "the endomap preserves binary logical meets",
    "closure.inflationary": "identity entails the endomap",
    "closure.idempotent": "the endomap squared is isomorphic to the endomap",
    "closure.to-nucleus": "a monotonized closure endomap is a nucleus",
    "factor.surjection": "the first factor is a surjection onto the quotient",
    "factor.injection": "the second factor is an injection with the original adjoint",
    "factor.composite": "the composite is isomorphic to the original morphism",
    # PCA laws
    "pca.monotone": "application is monotone and downward defined",
    "pca.filter": "the filter is upward closed and application closed",
    "pca.k": "the k witness satisfies its clauses",
    "pca.s": "the s witness satisfies its clauses",
    "pca.valid": "combined verification of a combinatory structure",
    "bracket.defined": "abstractions applied to all but the last argument are defined",
    "bracket.beta": "abstractions satisfy the Kleene inequality against substitution",
    "bracket.filter": "abstractions over filter constants land in the filter",
    "pca.combinators": "identity, dual constant, pairing and unpairing laws hold",
    "pca.morphism": "a pair of realizers for application and order exists",
    "pca.density": "a density witness exists",
    "pca.density-adjoint": "the explicit adjoint agrees with generic adjoint search",
    "downset.valid": "the downset algebra verifies and is join compatible",
    "per.valid": "the relation algebra verifies",
    "tilde.implicative": "the union extension is an implicative morphism",
    # tripos slice
    "tripos.power-valid": "the power algebra verifies",
    "tripos.exists-adjoint": "the existential is left adjoint to reindexing",
    "tripos.forall-adjoint": "the universal is right adjoint to reindexing",
    "tripos.beck-chevalley-forall": "the universal square commutes up to isomorphism",
    "tripos.beck-chevalley-exists": "the existential square commutes up to isomorphism",
    "tripos.exists-join-form": "the join form of the existential agrees with the shift form",
    "tripos.generic": "every predicate is a reindexing of the identity predicate",
    "tripos.cartesian": "postcomposition preserves finite meets",
    "tripos.roundtrip": "recovering a morphism from its transformation is the identity",
    "tripos.quotient-family": "the nucleus-closed predicate family presents the quotient tripos",
    # Sierpinski construction and modification
    "sierpinski.valid": "the pair algebra verifies and stays binary implicative",
    "sierpinski.lift": "the lifted morphism is implicative",
    "sierpinski.lift-adjoint": "lifting preserves right adjoints",
    "sierpinski.pseudofunctor": "lifting preserves identities and composition up to isomorphism",
    "sierpinski.projection-pair": "projection and diagonal form a surjection pair",
    "sierpinski.open-nucleus": "the open endomap is a nucleus",
    "sierpinski.closed-nucleus": "the closed endomap is a nucleus",
    "sierpinski.open-shape": "the open nucleus is isomorphic to diagonal after projection",
    "modified.valid": "the modification verifies",
    "modified.lift": "the modified lift is implicative",
    "modified.pseudofunctor": "the modified lift preserves identities and composition",
    "modified.adjoint-square": "the modified adjoint square commutes up to isomorphism",
    "modified.join-second": "pair joins compute the base join in the second component",
    "modified.collapse": "closing twice before lifting collapses to closing once",
    "modified.pullback": "the lift fixes the gluing pair up to isomorphism",
    "modified.predicates": "the explicit modified predicate family matches the closed family",
    "modified.pi0-probe": "whether the first projection happens to induce an inclusion",
    # workbench plumbing
    "input.wellformed": "the definition file parses and validates",
    "oracle.agreement": "an optimized check agrees with its exhaustive oracle",
}


@dataclass
class VerificationReport:
    """Outcome of checking one law on one subject.

    status is one of "pass", "fail", "inconclusive".  A fail always carries a
    counterexample; an inconclusive always carries a detail explaining which
    cap was exceeded.  Witnesses and counterexamples are element names, never
    raw indices.
    """

    subject: str
    law: str
    status: str
    witness: tuple = ()
    counterexample: tuple = ()
    detail: str = ""
    seconds: float = 0.0

    def __post_init__(self):
        if self.law not in LAWS:
            raise ValueError(f"unknown law identifier: {self.law!r}")
        if self.status not in ("pass", "fail", "inconclusive"):
            raise ValueError(f"bad status: {self.status!r}")
        if self.status == "fail" and not self.counterexample and not self.detail:
            raise ValueError("failing report needs a counterexample or detail")
        if self.status == "inconclusive" and not self.detail:
            raise ValueError("inconclusive report needs a detail")

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        """One human-readable line, used by the text renderer and tests."""
        tag = {"pass": "PASS", "fail": "FAIL", "inconclusive": "INCONCLUSIVE"}[self.status]
        bits = [f"{tag:12s} {self.subject} :: {self.law}"]
        if self.witness:
            bits.append(f"witness={fmt_tuple(self.witness)}")
        if self.counterexample:
            bits.append(f"counterexample={fmt_tuple(self.counterexample)}")
        if self.detail:
            bits.append(self.detail)
        return "  ".join(bits)


def fmt_tuple(items) -> str:
    return "(" + ", ".join(str(i) for i in items) + ")"


def passing(subject, law, witness=()):
    return VerificationReport(subject, law, "pass", witness=tuple(witness))


def failing(subject, law, counterexample=(), detail=""):
    return VerificationReport(
        subject, law, "fail", counterexample=tuple(counterexample), detail=detail
    )


def inconclusive(subject, law, detail):
    return VerificationReport(subject, law, "inconclusive", detail=detail)

