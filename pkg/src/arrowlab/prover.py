"""Decision procedure for the implicational fragment of intuitionistic logic.

Proof search follows the contraction-free goal-directed discipline: the goal
is decomposed first, left rules fire on implications keyed by the shape of
their antecedent, and the nested-antecedent rule replaces its principal
formula by a strictly smaller one, so search terminates without loop checks.
On failure the same recursion assembles a finite Kripke countermodel, which
can be replayed against the independent `forces` checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import InputError


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"p{self.index + 1}"


@dataclass(frozen=True)
class Imp:
    lhs: "Formula"
    rhs: "Formula"

    def __str__(self):
        lhs = f"({self.lhs})" if isinstance(self.lhs, Imp) else str(self.lhs)
        return f"{lhs} -> {self.rhs}"


Formula = Var | Imp


def variable_count(formula) -> int:
    if isinstance(formula, Var):
        return formula.index + 1
    if isinstance(formula, Imp):
        return max(variable_count(formula.lhs), variable_count(formula.rhs))
    raise InputError(f"not an implicational formula: {formula!r}")


def eval_formula(structure, formula, assignment) -> int:
    """Value of a formula in an arrow structure under a variable assignment."""
    if isinstance(formula, Var):
        return assignment[formula.index]
    if isinstance(formula, Imp):
        return structure.implies(
            eval_formula(structure, formula.lhs, assignment),
            eval_formula(structure, formula.rhs, assignment),
        )
    raise InputError(f"not an implicational formula: {formula!r}")


def parse_formula(text: str) -> Formula:
    """Parse `p1 -> (p2 -> p1)` style implicational formulas."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").replace("->", " -> ").split()
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def expect(tok):
        nonlocal pos
        if peek() != tok:
            raise InputError(f"expected {tok!r} at token {pos} in formula {text!r}")
        pos += 1

    def atom():
        nonlocal pos
        tok = peek()
        if tok == "(":
            pos += 1
            f = implication()
            expect(")")
            return f
        if tok and tok.startswith("p") and tok[1:].isdigit():
            pos += 1
            return Var(int(tok[1:]) - 1)
        raise InputError(f"unexpected token {tok!r} in formula {text!r}")

    def implication():
        left = atom()
        if peek() == "->":
            expect("->")
            return Imp(left, implication())
        return left

    f = implication()
    if pos != len(tokens):
        raise InputError(f"trailing tokens in formula {text!r}")
    return f


# -- Kripke models -------------------------------------------------------------


@dataclass
class KripkeModel:
    """Finite rooted Kripke model: worlds carry upward-persistent atom sets."""

    atoms: tuple  # atoms[w] = frozenset of forced variable indices
    children: tuple  # children[w] = tuple of immediate successors
    root: int = 0

    def worlds_above(self, w):
        seen = [w]
        out = {w}
        while seen:
            x = seen.pop()
            for y in self.children[x]:
                if y not in out:
                    out.add(y)
                    seen.append(y)
        return out

    def forces(self, w, formula) -> bool:
        if isinstance(formula, Var):
            return formula.index in self.atoms[w]
        if isinstance(formula, Imp):
            return all(
                not self.forces(v, formula.lhs) or self.forces(v, formula.rhs)
                for v in self.worlds_above(w)
            )
        raise InputError(f"not an implicational formula: {formula!r}")

    def refutes(self, formula) -> bool:
        return not self.forces(self.root, formula)


class _ModelBuilder:
    def __init__(self):
        self.atoms = []
        self.children = []

    def world(self, atom_set, kids):
        self.atoms.append(frozenset(atom_set))
        self.children.append(tuple(kids))
        return len(self.atoms) - 1

    def model(self, root):
        return KripkeModel(tuple(self.atoms), tuple(self.children), root)


@lru_cache(maxsize=None)
def _provable(context: frozenset, goal) -> bool:
    if goal in context:
        return True
    if isinstance(goal, Imp):
        return _provable(context | {goal.lhs}, goal.rhs)
    # goal is an atom: saturate on implications with atomic, present antecedent
    for f in context:
        if isinstance(f, Imp) and isinstance(f.lhs, Var) and f.lhs in context:
            return _provable((context - {f}) | {f.rhs}, goal)
    for f in context:
        if isinstance(f, Imp) and isinstance(f.lhs, Imp):
            rest = context - {f}
            inner = f.lhs
            if _provable(
                rest | {Imp(inner.rhs, f.rhs), inner.lhs}, inner.rhs
            ) and _provable(rest | {f.rhs}, goal):
                return True
    return False


def _refute(context: frozenset, goal, builder: _ModelBuilder) -> int:
    """Return a world forcing everything in context but not the goal.

    Only called on unprovable sequents; mirrors the rule order of _provable.
    """
    if isinstance(goal, Imp):
        return _refute(context | {goal.lhs}, goal.rhs, builder)
    for f in context:
        if isinstance(f, Imp) and isinstance(f.lhs, Var) and f.lhs in context:
            return _refute((context - {f}) | {f.rhs}, goal, builder)
    # For each nested implication, either its auxiliary premise fails (the
    # world gets a child refuting it) or its conclusion premise fails (recurse
    # there: the child forces f.rhs and hence f).
    nested = [f for f in context if isinstance(f, Imp) and isinstance(f.lhs, Imp)]
    aux_premises = []
    for f in nested:
        rest = context - {f}
        inner = f.lhs
        aux = (rest | {Imp(inner.rhs, f.rhs), inner.lhs}, inner.rhs)
        if _provable(*aux):
            return _refute(rest | {f.rhs}, goal, builder)
        aux_premises.append(aux)
    kids = [_refute(ctx, g, builder) for ctx, g in aux_premises]
    atoms = {f.index for f in context if isinstance(f, Var)}
    return builder.world(atoms, kids)


def taut_check(formula) -> bool:
    """Decide intuitionistic validity of an implicational formula."""
    if not isinstance(formula, (Var, Imp)):
        raise InputError(f"not an implicational formula: {formula!r}")
    return _provable(frozenset(), formula)


def taut_check_with_countermodel(formula):
    """Like taut_check, returning (True, None) or (False, KripkeModel)."""
    if taut_check(formula):
        return True, None
    builder = _ModelBuilder()
    root = _refute(frozenset(), formula, builder)
    model = builder.model(root)
    return False, model
