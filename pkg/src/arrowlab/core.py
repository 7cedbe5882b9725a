"""Finite arrow structures and arrow algebras.

Carrier elements are plain integer indices into the structure's symbol table;
all user-facing reports translate indices back to names.  A structure is a
finite complete meet-semilattice (validated at construction: partial order,
top, all binary meets, hence all meets and joins) together with an implication
table that is antitone on the left and monotone on the right.  An algebra adds
a separator: an upward-closed, modus-ponens-closed subset containing the three
combinators computed below.

Everything is immutable after construction except internal memo tables, so
independent checks can run concurrently.
"""

from __future__ import annotations

import itertools

from .report import VerificationReport, failing, inconclusive, passing

DEFAULT_SUBSET_CAP = 12


class InputError(ValueError):
    """Malformed table or violated structural invariant at construction time."""


def _as_bool_matrix(rows, n, what):
    if len(rows) != n:
        raise InputError(f"{what}: expected {n} rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != n:
            raise InputError(f"{what}: row {i} has {len(row)} entries, expected {n}")
        out.append(tuple(bool(x) for x in row))
    return tuple(out)


def _as_elem_matrix(rows, n, what):
    if len(rows) != n:
        raise InputError(f"{what}: expected {n} rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != n:
            raise InputError(f"{what}: row {i} has {len(row)} entries, expected {n}")
        for x in row:
            if not isinstance(x, int) or not (0 <= x < n):
                raise InputError(f"{what}: entry {x!r} in row {i} is not an element index")
        out.append(tuple(row))
    return tuple(out)


class ArrowStructure:
    """Finite complete meet-semilattice with an implication table."""

    def __init__(self, leq, imp, names=None):
        leq = _as_bool_matrix(leq, len(leq), "leq")
        n = len(leq)
        if n == 0:
            raise InputError("empty carrier has no top element")
        imp = _as_elem_matrix(imp, n, "imp")
        if names is None:
            names = tuple(f"e{i}" for i in range(n))
        else:
            names = tuple(str(x) for x in names)
            if len(names) != n or len(set(names)) != n:
                raise InputError("names must be distinct and match the carrier size")

        self.size = n
        self.leq = leq
        self.imp = imp
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

        self._check_order()
        self.down = tuple(
            sum(1 << a for a in range(n) if leq[a][b]) for b in range(n)
        )
        self.up = tuple(sum(1 << b for b in range(n) if leq[a][b]) for a in range(n))
        full = (1 << n) - 1
        tops = [x for x in range(n) if self.down[x] == full]
        if not tops:
            raise InputError("no top element: carrier is not a complete meet-semilattice")
        self.top = tops[0]
        bots = [x for x in range(n) if self.up[x] == full]
        if not bots:
            raise InputError("no bottom element: the whole carrier lacks a meet")
        self.bottom = bots[0]
        self._meet = self._binary_table(self.down, "meet")
        self._join = self._binary_table(self.up, "join")
        self._check_variance()
        self._apply_cache = {}
        self._flags = {}

    # -- construction checks -------------------------------------------------

    def _check_order(self):
        leq, n = self.leq, self.size
        for a in range(n):
            if not leq[a][a]:
                raise InputError(f"order not reflexive at {self.names[a]}")
        for a in range(n):
            for b in range(n):
                if a != b and leq[a][b] and leq[b][a]:
                    raise InputError(
                        f"order not antisymmetric at ({self.names[a]}, {self.names[b]})"
                    )
                if leq[a][b]:
                    for c in range(n):
                        if leq[b][c] and not leq[a][c]:
                            raise InputError(
                                "order not transitive at "
                                f"({self.names[a]}, {self.names[b]}, {self.names[c]})"
                            )

    def _binary_table(self, cones, kind):
        # The greatest element of an intersection of down-cones is the meet;
        # dually with up-cones for joins.  A missing one rejects the structure.
        n = self.size
        table = []
        for a in range(n):
            row = []
            for b in range(n):
                inter = cones[a] & cones[b]
                found = -1
                m = inter
                while m:
                    x = (m & -m).bit_length() - 1
                    if cones[x] == inter:
                        found = x
                        break
                    m &= m - 1
                if found < 0:
                    raise InputError(
                        f"no {kind} for subset {{{self.names[a]}, {self.names[b]}}}"
                    )
                row.append(found)
            table.append(tuple(row))
        return tuple(table)

    def _check_variance(self):
        n, leq, imp = self.size, self.leq, self.imp
        for b in range(n):
            for a in range(n):
                for a2 in range(n):
                    if leq[a2][a] and not leq[imp[a][b]][imp[a2][b]]:
                        raise InputError(
                            "implication not antitone on the left at "
                            f"({self.names[a2]} <= {self.names[a]}, {self.names[b]})"
                        )
        for a in range(n):
            for b in range(n):
                for b2 in range(n):
                    if leq[b][b2] and not leq[imp[a][b]][imp[a][b2]]:
                        raise InputError(
                            "implication not monotone on the right at "
                            f"({self.names[a]}, {self.names[b]} <= {self.names[b2]})"
                        )

    # -- basic operations ----------------------------------------------------

    def le(self, a, b) -> bool:
        return self.leq[a][b]

    def implies(self, a, b) -> int:
        return self.imp[a][b]

    def meet2(self, a, b) -> int:
        return self._meet[a][b]

    def join2(self, a, b) -> int:
        return self._join[a][b]

    def meet(self, xs) -> int:
        acc = self.top
        table = self._meet
        for x in xs:
            acc = table[acc][x]
        return acc

    def join(self, xs) -> int:
        acc = self.bottom
        table = self._join
        for x in xs:
            acc = table[acc][x]
        return acc

    def shift(self, a) -> int:
        """top -> a, the canonical inflationary nucleus."""
        return self.imp[self.top][a]

    def name(self, a) -> str:
        return self.names[a]

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown element name: {name!r}") from None

    def elements(self):
        return range(self.size)

    def __eq__(self, other):
        return (
            isinstance(other, ArrowStructure)
            and self.leq == other.leq
            and self.imp == other.imp
        )

    def __repr__(self):
        return f"<ArrowStructure size={self.size}>"

    # -- application ----------------------------------------------------------

    def apply(self, a, b) -> int:
        """ab = meet of { c -> d | a <= b -> c -> d }."""
        key = (a, b)
        hit = self._apply_cache.get(key)
        if hit is not None:
            return hit
        n, imp, leq = self.size, self.imp, self.leq
        row_a = leq[a]
        acc = self.top
        meet = self._meet
        imp_b = imp[b]
        for c in range(n):
            imp_c = imp[c]
            for d in range(n):
                if row_a[imp_b[imp_c[d]]]:
                    acc = meet[acc][imp_c[d]]
        self._apply_cache[key] = acc
        return acc

    def abstract(self, table) -> int:
        """lambda f = meet over x of x -> (top -> f(x))."""
        table = list(table)
        if len(table) != self.size:
            raise InputError("abstraction needs a total endotable")
        imp, top = self.imp, self.top
        return self.meet(imp[x][imp[top][fx]] for x, fx in enumerate(table))

    # -- structural flags ------------------------------------------------------

    def binary_implicative(self) -> bool:
        """a -> (b meet c) equals (a -> b) meet (a -> c) for all triples."""
        flag = self._flags.get("binimp")
        if flag is None:
            flag = self._binary_implicative_witness() is None
            self._flags["binimp"] = flag
        return flag

    def _binary_implicative_witness(self):
        n, imp, meet = self.size, self.imp, self._meet
        for a in range(n):
            imp_a = imp[a]
            for b in range(n):
                for c in range(n):
                    if imp_a[meet[b][c]] != meet[imp_a[b]][imp_a[c]]:
                        return (a, b, c)
        return None

    def modifiable(self) -> bool:
        """Binary implicative, and bottom -> a = top for every a."""
        flag = self._flags.get("modifiable")
        if flag is None:
            bot, top = self.bottom, self.top
            flag = self.binary_implicative() and all(
                self.imp[bot][a] == top for a in range(self.size)
            )
            self._flags["modifiable"] = flag
        return flag


# -- combinators ----------------------------------------------------------------


def combinator_k(st: ArrowStructure) -> int:
    n, imp = st.size, st.imp
    return st.meet(imp[a][imp[b][a]] for a in range(n) for b in range(n))


def combinator_s(st: ArrowStructure) -> int:
    n, imp = st.size, st.imp
    acc = st.top
    meet = st._meet
    for a in range(n):
        imp_a = imp[a]
        for b in range(n):
            ab = imp_a[b]
            for c in range(n):
                acc = meet[acc][imp[imp_a[imp[b][c]]][imp[ab][imp_a[c]]]]
    return acc


def combinator_i(st: ArrowStructure) -> int:
    return st.meet(st.imp[a][a] for a in range(st.size))


def combinator_b(st: ArrowStructure) -> int:
    n, imp = st.size, st.imp
    acc = st.top
    meet = st._meet
    for a in range(n):
        imp_a = imp[a]
        for b in range(n):
            ab = imp_a[b]
            for c in range(n):
                acc = meet[acc][imp[imp[b][c]][imp[ab][imp_a[c]]]]
    return acc


def combinator_a(st: ArrowStructure) -> int:
    """Meet over all elements and all uniform implication families.

    A family indexed by an arbitrary set contributes only its set of
    (antecedent, consequent) pairs, so the quantification reduces to subsets
    of the square of the carrier.  Binary implicative structures admit a
    closed form; everything else goes through the reachable-pair fixpoint.
    Both agree with the exhaustive oracle (tested).
    """
    if st.binary_implicative():
        return _combinator_a_binary(st)
    return combinator_a_fixpoint(st)


def _meet_closure(st: ArrowStructure, values):
    closed = set(values)
    frontier = list(closed)
    meet = st._meet
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            m = meet[x][y]
            if m not in closed:
                closed.add(m)
                frontier.append(m)
    return closed


def _combinator_a_binary(st: ArrowStructure) -> int:
    # With a -> (u meet v) = (a -> u) meet (a -> v), a nonempty family with
    # consequent-meet v contributes the pair (a -> v, v); the empty family
    # contributes (top, top).
    n, imp, top = st.size, st.imp, st.top
    closure = _meet_closure(st, {imp[b][c] for b in range(n) for c in range(n)})
    acc = top
    meet = st._meet
    for a in range(n):
        imp_a = imp[a]
        acc = meet[acc][imp[top][imp_a[top]]]
        for v in closure:
            av = imp_a[v]
            acc = meet[acc][imp[av][av]]
    return acc


def combinator_a_fixpoint(st: ArrowStructure) -> int:
    n, imp, top = st.size, st.imp, st.top
    meet = st._meet
    acc = top
    for a in range(n):
        imp_a = imp[a]
        gens = {(imp_a[imp[b][c]], imp[b][c]) for b in range(n) for c in range(n)}
        reach = {(top, top)}
        stack = [(top, top)]
        while stack:
            u, v = stack.pop()
            mu, mv = meet[u], meet[v]
            for g1, g2 in gens:
                p = (mu[g1], mv[g2])
                if p not in reach:
                    reach.add(p)
                    stack.append(p)
        for u, v in reach:
            acc = meet[acc][imp[u][imp_a[v]]]
    return acc


def combinator_a_exhaustive(st: ArrowStructure) -> int:
    """Oracle: literally enumerate every subset of carrier x carrier."""
    n = st.size
    if n > 3:
        raise InputError("exhaustive family enumeration is capped at carrier size 3")
    imp, top = st.imp, st.top
    pairs = [(b, c) for b in range(n) for c in range(n)]
    acc = top
    for a in range(n):
        imp_a = imp[a]
        for k in range(len(pairs) + 1):
            for chosen in itertools.combinations(pairs, k):
                u = st.meet(imp_a[imp[b][c]] for b, c in chosen)
                v = st.meet(imp[b][c] for b, c in chosen)
                acc = st.meet2(acc, imp[u][imp_a[v]])
    return acc


# -- arrow algebras ---------------------------------------------------------------


class ArrowAlgebra:
    """An arrow structure with a designated separator subset.

    Construction does not check the separator laws; `verify_algebra` does and
    reports witnesses, so that failing candidates can be built and examined.
    """

    def __init__(self, structure: ArrowStructure, separator, label="algebra"):
        self.structure = structure
        sep = frozenset(separator)
        for x in sep:
            if not isinstance(x, int) or not (0 <= x < structure.size):
                raise InputError(f"separator member {x!r} is not an element index")
        self.separator = sep
        self.label = label
        self._cache = {}

    # Structure passthroughs keep call sites short.
    @property
    def size(self):
        return self.structure.size

    @property
    def top(self):
        return self.structure.top

    @property
    def bottom(self):
        return self.structure.bottom

    def le(self, a, b):
        return self.structure.le(a, b)

    def implies(self, a, b):
        return self.structure.implies(a, b)

    def meet(self, xs):
        return self.structure.meet(xs)

    def meet2(self, a, b):
        return self.structure.meet2(a, b)

    def join(self, xs):
        return self.structure.join(xs)

    def join2(self, a, b):
        return self.structure.join2(a, b)

    def shift(self, a):
        return self.structure.shift(a)

    def apply(self, a, b):
        return self.structure.apply(a, b)

    def abstract(self, table):
        return self.structure.abstract(table)

    def name(self, a):
        return self.structure.name(a)

    def names(self, xs):
        return tuple(self.structure.name(x) for x in xs)

    def index(self, name):
        return self.structure.index(name)

    def elements(self):
        return range(self.structure.size)

    def in_separator(self, a) -> bool:
        return a in self.separator

    def _cached(self, key, thunk):
        if key not in self._cache:
            self._cache[key] = thunk()
        return self._cache[key]

    @property
    def k(self):
        return self._cached("k", lambda: combinator_k(self.structure))

    @property
    def s(self):
        return self._cached("s", lambda: combinator_s(self.structure))

    @property
    def a(self):
        return self._cached("a", lambda: combinator_a(self.structure))

    @property
    def i(self):
        return self._cached("i", lambda: combinator_i(self.structure))

    @property
    def b(self):
        return self._cached("b", lambda: combinator_b(self.structure))

    # -- logical order -----------------------------------------------------------

    def entails(self, a, b) -> bool:
        return self.structure.imp[a][b] in self.separator

    def iso(self, a, b) -> bool:
        return self.entails(a, b) and self.entails(b, a)

    def logical_meet(self, a, b) -> int:
        key = ("x", a, b)
        hit = self._cache.get(key)
        if hit is None:
            st = self.structure
            imp, top = st.imp, st.top
            da, db = imp[top][a], imp[top][b]
            hit = st.meet(
                imp[z][imp[top][st.apply(st.apply(z, da), db)]] for z in range(st.size)
            )
            self._cache[key] = hit
        return hit

    def logical_join(self, a, b) -> int:
        key = ("+", a, b)
        hit = self._cache.get(key)
        if hit is None:
            st = self.structure
            imp, top = st.imp, st.top
            hit = st.meet(
                imp[imp[a][imp[top][c]]][imp[imp[b][imp[top][c]]][imp[top][c]]]
                for c in range(st.size)
            )
            self._cache[key] = hit
        return hit

    def is_trivial(self) -> bool:
        return self.bottom in self.separator

    def is_frame_derived(self) -> bool:
        """Separator is exactly {top} and the implication is the Heyting one."""

        def compute():
            st = self.structure
            if self.separator != frozenset({st.top}):
                return False
            for x in range(st.size):
                for y in range(st.size):
                    cand = st.join(z for z in range(st.size) if st.le(st.meet2(z, x), y))
                    if not st.le(st.meet2(cand, x), y) or cand != st.imp[x][y]:
                        return False
            return True

        return self._cached("frame", compute)

    def intuitionistic_instance(self, formula) -> int:
        """Meet of the formula's value over every variable assignment."""
        from .prover import eval_formula, variable_count

        st = self.structure
        nvars = variable_count(formula)
        return st.meet(
            eval_formula(st, formula, assignment)
            for assignment in itertools.product(range(st.size), repeat=nvars)
        )

    def __eq__(self, other):
        return (
            isinstance(other, ArrowAlgebra)
            and self.structure == other.structure
            and self.separator == other.separator
        )

    def __repr__(self):
        return f"<ArrowAlgebra {self.label!r} size={self.size} |S|={len(self.separator)}>"


# -- verification -----------------------------------------------------------------


def separator_reports(alg: ArrowAlgebra, subject=None):
    """Per-clause checks of the separator laws, with witnesses."""
    subject = subject or alg.label
    st, sep = alg.structure, alg.separator
    reports = []

    bad = next(
        (
            (a, b)
            for a in sep
            for b in range(st.size)
            if st.le(a, b) and b not in sep
        ),
        None,
    )
    if bad is None:
        reports.append(passing(subject, "separator.upward"))
    else:
        reports.append(failing(subject, "separator.upward", alg.names(bad)))

    bad = next(
        (
            (a, b)
            for a in sep
            for b in range(st.size)
            if st.imp[a][b] in sep and b not in sep
        ),
        None,
    )
    if bad is None:
        reports.append(passing(subject, "separator.modus-ponens"))
    else:
        reports.append(failing(subject, "separator.modus-ponens", alg.names(bad)))

    for law, value in (("separator.k", alg.k), ("separator.s", alg.s), ("separator.a", alg.a)):
        if value in sep:
            reports.append(passing(subject, law, witness=(st.name(value),)))
        else:
            reports.append(failing(subject, law, (st.name(value),)))
    return reports


def verify_algebra(alg: ArrowAlgebra, subject=None) -> VerificationReport:
    """Aggregate separator verification; on pass, cross-checks i and b."""
    subject = subject or alg.label
    reports = separator_reports(alg, subject)
    for r in reports:
        if not r.ok:
            return failing(
                subject, "algebra.valid", r.counterexample, detail=f"violates {r.law}"
            )
    for law, value in (("separator.i", alg.i), ("separator.b", alg.b)):
        if value not in alg.separator:
            return failing(
                subject, "algebra.valid", (alg.name(value),), detail=f"violates {law}"
            )
    witness = alg.names((alg.k, alg.s, alg.a))
    return passing(subject, "algebra.valid", witness=witness)


def is_compatible_with_joins(alg: ArrowAlgebra, cap=DEFAULT_SUBSET_CAP, subject=None):
    """Exhaustive check of (join B) -> a = meet of b -> a over all subsets B."""
    subject = subject or alg.label
    cached = alg._cache.get(("join-compat", cap))
    if cached is not None:
        return VerificationReport(
            subject, "algebra.join-compatible", cached[0],
            counterexample=cached[1], detail=cached[2],
        )
    st = alg.structure
    n = st.size
    report = None
    if n > cap:
        report = inconclusive(
            subject,
            "algebra.join-compatible",
            f"carrier size {n} exceeds the subset enumeration cap {cap}",
        )
    else:
        imp = st.imp
        for mask in range(1 << n):
            members = [b for b in range(n) if mask >> b & 1]
            j = st.join(members)
            for a in range(n):
                if imp[j][a] != st.meet(imp[b][a] for b in members):
                    report = failing(
                        subject,
                        "algebra.join-compatible",
                        ("{" + ",".join(alg.names(members)) + "}", st.name(a)),
                    )
                    break
            if report is not None:
                break
    if report is None:
        report = passing(subject, "algebra.join-compatible")
    alg._cache[("join-compat", cap)] = (report.status, report.counterexample, report.detail)
    return report


def is_fully_implicative(alg: ArrowAlgebra, cap=DEFAULT_SUBSET_CAP, subject=None):
    """Predicate: a -> (meet of B) equals the meet of a -> b over every
    subset B, including the empty one (so a -> top = top)."""
    subject = subject or alg.label
    st = alg.structure
    n = st.size
    if n > cap:
        return inconclusive(
            subject,
            "algebra.implicative",
            f"carrier size {n} exceeds the subset enumeration cap {cap}",
        )
    imp = st.imp
    for mask in range(1 << n):
        members = [b for b in range(n) if mask >> b & 1]
        m = st.meet(members)
        for a in range(n):
            if imp[a][m] != st.meet(imp[a][b] for b in members):
                return failing(
                    subject,
                    "algebra.implicative",
                    (st.name(a), "{" + ",".join(alg.names(members)) + "}"),
                )
    return passing(subject, "algebra.implicative")


def uniform_modus_ponens(alg: ArrowAlgebra, triples, subject=None) -> VerificationReport:
    """One instance of the indexed-family inference rule.

    Given triples (x_i, y_i, z_i): if both the meet of x -> y -> z and the
    meet of x are separated, the meet of y -> z must be too.
    """
    subject = subject or alg.label
    st = alg.structure
    triples = list(triples)
    imp = st.imp
    premise1 = st.meet(imp[x][imp[y][z]] for x, y, z in triples)
    premise2 = st.meet(x for x, _, _ in triples)
    if premise1 in alg.separator and premise2 in alg.separator:
        conclusion = st.meet(imp[y][z] for _, y, z in triples)
        if conclusion not in alg.separator:
            return failing(
                subject,
                "families.uniform-mp",
                tuple(st.name(x) for t in triples for x in t),
            )
    return passing(subject, "families.uniform-mp")


def shift_retract_report(alg: ArrowAlgebra, subject=None) -> VerificationReport:
    """The canonical shift nucleus retracts: meet of (top -> a) -> a is separated."""
    subject = subject or alg.label
    st = alg.structure
    value = st.meet(st.imp[st.shift(a)][a] for a in range(st.size))
    if value in alg.separator:
        return passing(subject, "algebra.shift-retract", witness=(st.name(value),))
    return failing(subject, "algebra.shift-retract", (st.name(value),))


def heyting_implication(leq, names=None):
    """Derive the Heyting implication table from a finite lattice order.

    Rejects orders where relative pseudocomplements do not exist (witnessed).
    """
    n = len(leq)
    probe = ArrowStructure(leq, [[0] * n for _ in range(n)], names)
    table = []
    for x in range(n):
        row = []
        for y in range(n):
            cand = probe.join(z for z in range(n) if probe.le(probe.meet2(z, x), y))
            if not probe.le(probe.meet2(cand, x), y):
                raise InputError(
                    "order is not a Heyting algebra: no relative pseudocomplement "
                    f"for ({probe.name(x)}, {probe.name(y)})"
                )
            row.append(cand)
        table.append(row)
    return table


def frame_algebra(leq, names=None, label="frame") -> ArrowAlgebra:
    """A finite frame as an arrow algebra: Heyting implication, separator {top}."""
    st = ArrowStructure(leq, heyting_implication(leq, names), names)
    return ArrowAlgebra(st, {st.top}, label=label)
