"""The shipped corpus: small frames, combinatory structures, and the algebras
derived from them.

Builders are memoized so that derived constructions (pair algebras,
modifications) cached on the instances are shared across a run.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .core import ArrowAlgebra, ArrowStructure, InputError, frame_algebra
from .morph import MorphismTable
from .nuclei import example_nuclei, quotient
from .pca import FinitePAP, FinitePCA, downset_arrow_algebra, find_ks, per_arrow_algebra


@lru_cache(maxsize=None)
def chain(n: int) -> ArrowAlgebra:
    leq = [[a <= b for b in range(n)] for a in range(n)]
    return frame_algebra(leq, names=[str(i) for i in range(n)], label=f"chain{n}")


@lru_cache(maxsize=None)
def diamond() -> ArrowAlgebra:
    # bot below a, b below top; a and b incomparable
    names = ["bot", "a", "b", "top"]
    order = {(i, i) for i in range(4)} | {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
    leq = [[(i, j) in order for j in range(4)] for i in range(4)]
    return frame_algebra(leq, names=names, label="diamond")


@lru_cache(maxsize=None)
def boolean_cube(bits: int = 3) -> ArrowAlgebra:
    size = 1 << bits
    leq = [[(a & b) == a for b in range(size)] for a in range(size)]
    letters = "xyzw"[:bits]
    names = [
        "{" + ",".join(c for i, c in enumerate(letters) if m >> i & 1) + "}"
        for m in range(size)
    ]
    return frame_algebra(leq, names=names, label=f"bool{size}")


def frame_fixtures() -> dict:
    """Chains of up to five elements, the diamond, the eight-element cube."""
    out = {f"chain{n}": chain(n) for n in range(1, 6)}
    out["diamond"] = diamond()
    out["bool8"] = boolean_cube()
    return out


# -- combinatory structures -------------------------------------------------------


@lru_cache(maxsize=None)
def one_pca() -> FinitePCA:
    return FinitePCA(FinitePAP([[True]], [[0]], ["*"], label="one"), {0}, 0, 0)


@lru_cache(maxsize=None)
def meet_chain_pca(n: int, absolute: bool = False) -> FinitePCA:
    """A chain with application given by the meet; top realizes everything."""
    leq = [[a <= b for b in range(n)] for a in range(n)]
    app = [[min(a, b) for b in range(n)] for a in range(n)]
    label = f"meet{n}" + ("abs" if absolute else "")
    pap = FinitePAP(leq, app, [str(i) for i in range(n)], label=label)
    members = set(range(n)) if absolute else {n - 1}
    return FinitePCA(pap, members, n - 1, n - 1, label=label)


@lru_cache(maxsize=None)
def partial_two_pca() -> FinitePCA:
    """Two-element chain where the top cell is undefined; bottom realizes."""
    leq = [[True, True], [False, True]]
    app = [[0, 0], [0, None]]
    pap = FinitePAP(leq, app, ["0", "1"], label="partial2")
    return FinitePCA(pap, {0, 1}, 0, 0, label="partial2")


def pca_fixtures() -> dict:
    return {
        "one": one_pca(),
        "meet2": meet_chain_pca(2),
        "meet3": meet_chain_pca(3),
        "meet2abs": meet_chain_pca(2, absolute=True),
        "partial2": partial_two_pca(),
    }


# -- derived algebras ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _downset_algebras() -> dict:
    return {
        f"D({name})": downset_arrow_algebra(p) for name, p in pca_fixtures().items()
    }


@lru_cache(maxsize=None)
def _quotient_fixture() -> ArrowAlgebra:
    """The three-chain under its double-negation-style nucleus."""
    base = chain(3)
    j = example_nuclei(base, base.bottom)["double"]
    return quotient(base, j, label="chain3dn")


@lru_cache(maxsize=None)
def _per_fixtures() -> dict:
    return {
        "PER(one)": per_arrow_algebra(one_pca()),
        "PER(meet2)": per_arrow_algebra(meet_chain_pca(2)),
    }


def algebra_fixtures() -> dict:
    """Every arrow algebra in the corpus, frames and derived ones."""
    out = dict(frame_fixtures())
    out.update(_downset_algebras())
    out["chain3dn"] = _quotient_fixture()
    out.update(_per_fixtures())
    return out


def modifiable_fixtures() -> dict:
    from .modified import is_modifiable

    return {k: v for k, v in algebra_fixtures().items() if is_modifiable(v)}


def characteristic_morphism(alg: ArrowAlgebra) -> MorphismTable:
    """Send separated elements to the top of the two-point frame."""
    omega = chain(2)
    table = tuple(
        omega.top if a in alg.separator else omega.bottom for a in alg.elements()
    )
    return MorphismTable(alg, omega, table, name=f"chi.{alg.label}")


# -- seeded random structures (for oracle batteries) -----------------------------------


def smallest_separator(st: ArrowStructure) -> frozenset:
    """Close the three combinators under upward closure and modus ponens."""
    from .core import combinator_a, combinator_k, combinator_s

    members = {combinator_k(st), combinator_s(st), combinator_a(st)}
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in range(st.size):
                if st.le(a, b) and b not in members:
                    members.add(b)
                    changed = True
                if st.imp[a][b] in members and a in members and b not in members:
                    members.add(b)
                    changed = True
    return frozenset(members)


def random_chain_algebra(rng: random.Random, size: int, label=None) -> ArrowAlgebra:
    """A chain carrier with a random variance-corrected implication and the
    least separator.  (Up to three elements, every complete carrier is a
    chain, so this spans all small orders.)"""
    leq = [[a <= b for b in range(size)] for a in range(size)]
    raw = [[rng.randrange(size) for _ in range(size)] for _ in range(size)]
    # force variance: meet the raw values over smaller antecedents and
    # larger consequents
    imp = [
        [min(raw[x][y] for x in range(a + 1) for y in range(b, size)) for b in range(size)]
        for a in range(size)
    ]
    st = ArrowStructure(leq, imp, names=[str(i) for i in range(size)])
    return ArrowAlgebra(st, smallest_separator(st), label=label or f"rand{size}")


# -- exhaustive scans over small combinatory structures ----------------------------------


def _all_filters(pap: FinitePAP):
    """Nonempty upward-closed application-closed subsets, ascending."""
    from .pca import filter_witness

    out = []
    for mask in range(1, 1 << pap.size):
        members = frozenset(x for x in range(pap.size) if mask >> x & 1)
        if filter_witness(pap, members) is None:
            out.append(members)
    return out


def scan_two_element_pcas():
    """Every partial table over both two-element orders, every filter."""
    found = []
    orders = {
        "disc2": [[True, False], [False, True]],
        "chain2": [[True, True], [False, True]],
    }
    cells = [(a, b) for a in range(2) for b in range(2)]
    for oname, leq in orders.items():
        for values in itertools.product((None, 0, 1), repeat=4):
            app = [[None] * 2 for _ in range(2)]
            for (a, b), v in zip(cells, values):
                app[a][b] = v
            try:
                pap = FinitePAP(leq, app, ["0", "1"], label=f"{oname}-{values}")
            except InputError:
                continue
            for members in _all_filters(pap):
                hit = find_ks(pap, members)
                if hit is not None:
                    found.append(FinitePCA(pap, members, *hit, label=pap.label))
    return found


def scan_three_chain_total_pcas():
    """Every total table over the three-element chain, every filter."""
    found = []
    leq = [[a <= b for b in range(3)] for a in range(3)]
    cells = [(a, b) for a in range(3) for b in range(3)]
    for values in itertools.product(range(3), repeat=9):
        app = [[0] * 3 for _ in range(3)]
        for (a, b), v in zip(cells, values):
            app[a][b] = v
        try:
            pap = FinitePAP(leq, app, ["0", "1", "2"], label=f"chain3-{values}")
        except InputError:
            continue
        for members in _all_filters(pap):
            hit = find_ks(pap, members)
            if hit is not None:
                found.append(FinitePCA(pap, members, *hit, label=pap.label))
    return found
