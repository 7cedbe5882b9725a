"""Lambda terms: parsing, printing, and interpretation in arrow algebras.

Grammar: `\\x. M` (or `λx. M`) abstracts with the body extending maximally to
the right, application is juxtaposition and associates left, parentheses
group, identifiers are variables, and `#name` references an element of the
target algebra by name.  The canonical printer emits exactly this grammar
with minimal parentheses, and parsing its output reproduces the term.

Interpretation resolves names to de Bruijn indices first, so alpha-equivalent
terms share one (memoized) evaluation; `interpret_direct` is a deliberately
separate evaluator over the named syntax used to cross-check it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import ArrowAlgebra, InputError
from .report import failing, passing


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Abs:
    var: str
    body: "Term"


@dataclass(frozen=True)
class Const:
    name: str


Term = Var | App | Abs | Const


class LambdaSyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def free_vars(term) -> frozenset:
    if isinstance(term, Var):
        return frozenset({term.name})
    if isinstance(term, Const):
        return frozenset()
    if isinstance(term, App):
        return free_vars(term.fn) | free_vars(term.arg)
    if isinstance(term, Abs):
        return free_vars(term.body) - {term.var}
    raise InputError(f"not a lambda term: {term!r}")


# -- parsing ---------------------------------------------------------------------

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CHARS = _IDENT_START | set("0123456789'")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t\n\r":
            i += 1
        elif ch in "\\λ":
            tokens.append(("lam", ch, i))
            i += 1
        elif ch in "().":
            tokens.append((ch, ch, i))
            i += 1
        elif ch == "#":
            j = i + 1
            while j < len(text) and text[j] not in " \t\n\r().\\λ#":
                j += 1
            if j == i + 1:
                raise LambdaSyntaxError("expected a constant name after '#'", i)
            tokens.append(("const", text[i + 1 : j], i))
            i = j
        elif ch in _IDENT_START:
            j = i
            while j < len(text) and text[j] in _IDENT_CHARS:
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        else:
            raise LambdaSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


def parse_lambda(text: str) -> Term:
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0]

    def take(kind):
        nonlocal pos
        if tokens[pos][0] != kind:
            raise LambdaSyntaxError(
                f"expected {kind!r}, found {tokens[pos][1]!r}", tokens[pos][2]
            )
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_term():
        if peek() == "lam":
            take("lam")
            name = take("ident")[1]
            take(".")
            return Abs(name, parse_term())
        return parse_application()

    def parse_application():
        term = parse_atom()
        while peek() in ("ident", "const", "(", "lam"):
            if peek() == "lam":
                # an abstraction in argument position needs parentheses
                raise LambdaSyntaxError(
                    "abstraction in application must be parenthesized", tokens[pos][2]
                )
            term = App(term, parse_atom())
        return term

    def parse_atom():
        kind = peek()
        if kind == "ident":
            return Var(take("ident")[1])
        if kind == "const":
            return Const(take("const")[1])
        if kind == "(":
            take("(")
            term = parse_term()
            take(")")
            return term
        raise LambdaSyntaxError(f"unexpected token {tokens[pos][1]!r}", tokens[pos][2])

    term = parse_term()
    if peek() != "end":
        raise LambdaSyntaxError(f"trailing input {tokens[pos][1]!r}", tokens[pos][2])
    return term


def print_lambda(term, _level=0) -> str:
    """Canonical printer; output is stable and reparses to the same term."""
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Const):
        return f"#{term.name}"
    if isinstance(term, Abs):
        body = f"\\{term.var}. {print_lambda(term.body, 0)}"
        return f"({body})" if _level > 0 else body
    if isinstance(term, App):
        out = f"{print_lambda(term.fn, 1)} {print_lambda(term.arg, 2)}"
        return f"({out})" if _level > 1 else out
    raise InputError(f"not a lambda term: {term!r}")


# -- interpretation -----------------------------------------------------------------


@dataclass(frozen=True)
class _IVar:
    index: int


@dataclass(frozen=True)
class _IApp:
    fn: object
    arg: object


@dataclass(frozen=True)
class _IAbs:
    body: object


@dataclass(frozen=True)
class _IConst:
    elem: int


def _to_debruijn(alg, term, binders, env):
    if isinstance(term, Var):
        if term.name in binders:
            return _IVar(binders.index(term.name))
        if term.name not in env:
            raise InputError(f"unbound variable {term.name!r}")
        return _IConst(env[term.name])
    if isinstance(term, Const):
        return _IConst(alg.index(term.name))
    if isinstance(term, App):
        return _IApp(
            _to_debruijn(alg, term.fn, binders, env),
            _to_debruijn(alg, term.arg, binders, env),
        )
    if isinstance(term, Abs):
        return _IAbs(_to_debruijn(alg, term.body, [term.var] + binders, env))
    raise InputError(f"not a lambda term: {term!r}")


def _free_indices(node, cache):
    hit = cache.get(node)
    if hit is None:
        if isinstance(node, _IVar):
            hit = frozenset({node.index})
        elif isinstance(node, _IConst):
            hit = frozenset()
        elif isinstance(node, _IApp):
            hit = _free_indices(node.fn, cache) | _free_indices(node.arg, cache)
        else:
            hit = frozenset(k - 1 for k in _free_indices(node.body, cache) if k > 0)
        cache[node] = hit
    return hit


def interpret(alg: ArrowAlgebra, term, env=None) -> int:
    """Value of a term: variables project, applications apply, bodies abstract."""
    env = dict(env or {})
    missing = free_vars(term) - set(env)
    if missing:
        raise InputError(f"unbound variables: {sorted(missing)}")
    node = _to_debruijn(alg, term, [], env)
    free_cache = {}
    memo = {}

    def ev(nd, stack):
        if isinstance(nd, _IVar):
            return stack[nd.index]
        if isinstance(nd, _IConst):
            return nd.elem
        key = (nd, tuple(stack[k] for k in sorted(_free_indices(nd, free_cache))))
        hit = memo.get(key)
        if hit is None:
            if isinstance(nd, _IApp):
                hit = alg.apply(ev(nd.fn, stack), ev(nd.arg, stack))
            else:
                hit = alg.abstract(
                    [ev(nd.body, (v,) + stack) for v in range(alg.size)]
                )
            memo[key] = hit
        return hit

    return ev(node, ())


def interpret_direct(alg: ArrowAlgebra, term, env=None) -> int:
    """Independent evaluator over the named syntax (no sharing, no indices)."""
    env = dict(env or {})
    if isinstance(term, Var):
        if term.name not in env:
            raise InputError(f"unbound variable {term.name!r}")
        return env[term.name]
    if isinstance(term, Const):
        return alg.index(term.name)
    if isinstance(term, App):
        return alg.apply(
            interpret_direct(alg, term.fn, env), interpret_direct(alg, term.arg, env)
        )
    if isinstance(term, Abs):
        return alg.abstract(
            [
                interpret_direct(alg, term.body, {**env, term.var: v})
                for v in range(alg.size)
            ]
        )
    raise InputError(f"not a lambda term: {term!r}")


def alpha_equal(t1, t2) -> bool:
    def skeleton(term, binders):
        if isinstance(term, Var):
            if term.name in binders:
                return ("b", binders.index(term.name))
            return ("f", term.name)
        if isinstance(term, Const):
            return ("c", term.name)
        if isinstance(term, App):
            return ("a", skeleton(term.fn, binders), skeleton(term.arg, binders))
        return ("l", skeleton(term.body, [term.var] + binders))

    return skeleton(t1, []) == skeleton(t2, [])


def check_separator_closure(alg: ArrowAlgebra, term, env=None, subject=None):
    """Interpretation under separated environments must be separated."""
    env = dict(env or {})
    subject = subject or f"{alg.label}:{print_lambda(term)}"
    for name, value in env.items():
        if value not in alg.separator:
            raise InputError(f"environment value for {name!r} is not separated")
    value = interpret(alg, term, env)
    if value in alg.separator:
        return passing(subject, "lambda.separator-closure", witness=(alg.name(value),))
    return failing(
        subject,
        "lambda.separator-closure",
        (alg.name(value),) + tuple(f"{k}={alg.name(v)}" for k, v in sorted(env.items())),
    )


def random_term(rng: random.Random, size: int, var_pool=("x", "y", "z")) -> Term:
    """Seeded size-bounded term generator; may leave pool variables free."""
    if size <= 1:
        return Var(rng.choice(var_pool))
    shape = rng.random()
    if shape < 0.45:
        return Abs(rng.choice(var_pool), random_term(rng, size - 1, var_pool))
    left = rng.randint(1, size - 1)
    return App(
        random_term(rng, left, var_pool), random_term(rng, size - left, var_pool)
    )


def close_term(term) -> Term:
    """Wrap the free variables in abstractions (sorted for determinism)."""
    for name in sorted(free_vars(term), reverse=True):
        term = Abs(name, term)
    return term
