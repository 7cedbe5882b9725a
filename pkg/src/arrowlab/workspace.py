"""Definition files and the named workspace they load into.

One JSON document per file; the document is a single definition object or a
list of them.  Tables are written with element names, never indices:

  {"kind": "arrow-algebra", "name": ..., "elements": [names],
   "leq": [[a, b], ...] or {"hasse": [[a, b], ...]},
   "imp": row-major table of element names, "separator": [names]}

  {"kind": "frame", "name": ..., "elements": ..., "leq": ...}
      derives the Heyting implication and the top-only separator

  {"kind": "pca", "name": ..., "elements": ..., "leq": ...,
   "app": row-major table with "-" for undefined, "filter": [names],
   "k": name, "s": name}

  {"kind": "morphism", "name": ..., "from": name, "to": name,
   "table": {source-element: target-element}}

  {"kind": "nucleus", "name": ..., "on": name, "table": {element: element}}

Order relations may be given as any subset of the intended order (for
example the Hasse covers); the reflexive-transitive closure is taken before
validation.  Names are unique across one workspace; morphism and nucleus
references are resolved after every file has loaded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import ArrowAlgebra, ArrowStructure, InputError, frame_algebra
from .morph import MorphismTable
from .pca import FinitePAP, FinitePCA


@dataclass
class PcaMorphism:
    """A table between combinatory structures, checked with its own law."""

    source: FinitePCA
    target: FinitePCA
    table: tuple
    name: str


@dataclass
class Workspace:
    algebras: dict = field(default_factory=dict)
    pcas: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    pca_morphisms: dict = field(default_factory=dict)
    nuclei: dict = field(default_factory=dict)  # name -> (algebra name, table)

    def names(self):
        out = []
        for group in (self.algebras, self.pcas, self.morphisms,
                      self.pca_morphisms, self.nuclei):
            out.extend(group)
        return out

    def register(self, kind_map, name, value):
        if name in set(self.names()):
            raise InputError(f"duplicate name: {name!r}")
        kind_map[name] = value

    def algebra(self, name) -> ArrowAlgebra:
        if name not in self.algebras:
            raise InputError(f"unknown algebra: {name!r}")
        return self.algebras[name]

    def pca(self, name) -> FinitePCA:
        if name not in self.pcas:
            raise InputError(f"unknown combinatory structure: {name!r}")
        return self.pcas[name]


def _closure(names, pairs, what):
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        leq[i][i] = True
    for pair in pairs:
        if len(pair) != 2:
            raise InputError(f"{what}: order entries must be pairs, got {pair!r}")
        a, b = pair
        if a not in index or b not in index:
            raise InputError(f"{what}: unknown element in order pair {pair!r}")
        leq[index[a]][index[b]] = True
    changed = True
    while changed:
        changed = False
        for a in range(n):
            for b in range(n):
                if leq[a][b]:
                    for c in range(n):
                        if leq[b][c] and not leq[a][c]:
                            leq[a][c] = True
                            changed = True
    return leq


def _order_matrix(doc, names, what):
    spec = doc.get("leq")
    if isinstance(spec, dict):
        if set(spec) != {"hasse"}:
            raise InputError(f"{what}: order object must have exactly the key 'hasse'")
        return _closure(names, spec["hasse"], what)
    if isinstance(spec, list):
        return _closure(names, spec, what)
    raise InputError(f"{what}: missing or malformed 'leq'")


def _required(doc, key, what):
    if key not in doc:
        raise InputError(f"{what}: missing required key {key!r}")
    return doc[key]


def _named_rows(doc, key, names, what):
    rows = _required(doc, key, what)
    index = {n: i for i, n in enumerate(names)}
    if len(rows) != len(names):
        raise InputError(f"{what}: {key} must have one row per element")
    out = []
    for r, row in enumerate(rows):
        if len(row) != len(names):
            raise InputError(f"{what}: {key} row {r} has the wrong width")
        vals = []
        for v in row:
            if v not in index:
                raise InputError(f"{what}: unknown element {v!r} in {key}")
            vals.append(index[v])
        out.append(vals)
    return out


def _parse_algebra(doc, name):
    names = _required(doc, "elements", name)
    leq = _order_matrix(doc, names, name)
    imp = _named_rows(doc, "imp", names, name)
    index = {n: i for i, n in enumerate(names)}
    separator = set()
    for v in _required(doc, "separator", name):
        if v not in index:
            raise InputError(f"{name}: unknown separator element {v!r}")
        separator.add(index[v])
    return ArrowAlgebra(ArrowStructure(leq, imp, names), separator, label=name)


def _parse_frame(doc, name):
    names = _required(doc, "elements", name)
    leq = _order_matrix(doc, names, name)
    return frame_algebra(leq, names=names, label=name)


def _parse_pca(doc, name):
    names = _required(doc, "elements", name)
    leq = _order_matrix(doc, names, name)
    index = {n: i for i, n in enumerate(names)}
    rows = _required(doc, "app", name)
    if len(rows) != len(names):
        raise InputError(f"{name}: app must have one row per element")
    app = []
    for r, row in enumerate(rows):
        if len(row) != len(names):
            raise InputError(f"{name}: app row {r} has the wrong width")
        vals = []
        for v in row:
            if v == "-":
                vals.append(None)
            elif v in index:
                vals.append(index[v])
            else:
                raise InputError(f"{name}: unknown element {v!r} in app")
        app.append(vals)
    members = set()
    for v in _required(doc, "filter", name):
        if v not in index:
            raise InputError(f"{name}: unknown filter element {v!r}")
        members.add(index[v])
    k = _required(doc, "k", name)
    s = _required(doc, "s", name)
    if k not in index or s not in index:
        raise InputError(f"{name}: unknown combinator name")
    pap = FinitePAP(leq, app, names, label=name)
    return FinitePCA(pap, members, index[k], index[s], label=name)


def _parse_table(doc, src_names, dst_names, what):
    table = _required(doc, "table", what)
    src_index = {n: i for i, n in enumerate(src_names)}
    dst_index = {n: i for i, n in enumerate(dst_names)}
    out = [None] * len(src_names)
    for key, value in table.items():
        if key not in src_index:
            raise InputError(f"{what}: unknown source element {key!r}")
        if value not in dst_index:
            raise InputError(f"{what}: unknown target element {value!r}")
        out[src_index[key]] = dst_index[value]
    missing = [src_names[i] for i, v in enumerate(out) if v is None]
    if missing:
        raise InputError(f"{what}: table misses {missing}")
    return tuple(out)


def load(paths, base: Workspace | None = None) -> Workspace:
    """Parse and validate definition files into one workspace.

    With a base workspace, new definitions extend it and may reference its
    names; names already present (including shipped fixture names when the
    caller passes them in) are rejected as duplicates.
    """
    ws = base if base is not None else Workspace()
    deferred = []
    for path in paths:
        try:
            with open(path) as handle:
                doc = json.load(handle)
        except OSError as err:
            raise InputError(f"{path}: {err}") from err
        except json.JSONDecodeError as err:
            raise InputError(
                f"{path}: parse error at line {err.lineno}, column {err.colno}: {err.msg}"
            ) from err
        docs = doc if isinstance(doc, list) else [doc]
        for entry in docs:
            if not isinstance(entry, dict):
                raise InputError(f"{path}: definitions must be objects")
            kind = entry.get("kind")
            name = entry.get("name")
            if not name or not isinstance(name, str):
                raise InputError(f"{path}: every definition needs a 'name'")
            if kind == "arrow-algebra":
                ws.register(ws.algebras, name, _parse_algebra(entry, name))
            elif kind == "frame":
                ws.register(ws.algebras, name, _parse_frame(entry, name))
            elif kind == "pca":
                ws.register(ws.pcas, name, _parse_pca(entry, name))
            elif kind in ("morphism", "nucleus"):
                deferred.append((path, entry, name))
            else:
                raise InputError(f"{path}: unknown kind {entry.get('kind')!r}")
    for path, entry, name in deferred:
        if entry["kind"] == "nucleus":
            target = entry.get("on")
            alg = ws.algebra(target)
            table = _parse_table(entry, alg.structure.names, alg.structure.names, name)
            ws.register(ws.nuclei, name, (target, table))
        else:
            src_name = _required(entry, "from", name)
            dst_name = _required(entry, "to", name)
            if src_name in ws.pcas or dst_name in ws.pcas:
                src, dst = ws.pca(src_name), ws.pca(dst_name)
                table = _parse_table(entry, src.pap.names, dst.pap.names, name)
                ws.register(ws.pca_morphisms, name, PcaMorphism(src, dst, table, name))
            else:
                src, dst = ws.algebra(src_name), ws.algebra(dst_name)
                table = _parse_table(entry, src.structure.names, dst.structure.names, name)
                ws.register(
                    ws.morphisms, name, MorphismTable(src, dst, table, name=name)
                )
    return ws


# -- serialization (for derive output) ---------------------------------------------------


def algebra_definition(alg: ArrowAlgebra, name) -> dict:
    st = alg.structure
    return {
        "kind": "arrow-algebra",
        "name": name,
        "elements": list(st.names),
        "leq": [
            [st.names[a], st.names[b]]
            for a in range(st.size)
            for b in range(st.size)
            if st.leq[a][b]
        ],
        "imp": [[st.names[v] for v in row] for row in st.imp],
        "separator": sorted(st.names[x] for x in alg.separator),
    }


def pca_definition(pca: FinitePCA, name) -> dict:
    pap = pca.pap
    return {
        "kind": "pca",
        "name": name,
        "elements": list(pap.names),
        "leq": [
            [pap.names[a], pap.names[b]]
            for a in range(pap.size)
            for b in range(pap.size)
            if pap.leq[a][b]
        ],
        "app": [
            ["-" if v is None else pap.names[v] for v in row] for row in pap.app
        ],
        "filter": sorted(pap.names[x] for x in pca.filter),
        "k": pap.names[pca.k],
        "s": pap.names[pca.s],
    }


def morphism_definition(m: MorphismTable, name, src_name, dst_name) -> dict:
    return {
        "kind": "morphism",
        "name": name,
        "from": src_name,
        "to": dst_name,
        "table": {
            m.source.name(a): m.target.name(m.table[a]) for a in m.source.elements()
        },
    }


def nucleus_definition(alg: ArrowAlgebra, table, name, on_name) -> dict:
    return {
        "kind": "nucleus",
        "name": name,
        "on": on_name,
        "table": {alg.name(a): alg.name(table[a]) for a in alg.elements()},
    }
