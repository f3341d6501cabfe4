"""JSON universe documents: loading with invariant checks and canonical emission.

Labels are JSON strings; JSON arrays decode to tuples (used for points of
total spaces in towers). Maps keyed by base points are JSON objects when
every key is a plain string, otherwise lists of ``[key, value]`` pairs.
Composite keys are written ``"x|y"``.
"""

import json

from .bundle import Bundle, Trivialization
from .errors import FibraError
from .fibered import FiberedCorrespondence, FiberedRelation, ReducedFiberedCorrespondence
from .group import FiberedGroup, FiniteGroup, Tower, TstarRepresentation
from .quotient import FiberedMorphism
from .relations import Correspondence, FiniteAlgebra
from .topology import FiniteTopology

SEP = "|"

COLLECTIONS = (
    "topologies",
    "sets",
    "algebras",
    "correspondences",
    "bundles",
    "fibered",
    "reduced",
    "relations",
    "morphisms",
    "groups",
    "representations",
    "towers",
)


class ParseError(FibraError):
    pass


class InvariantViolation(FibraError):
    def __init__(self, pointer, message):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


# labels


def dec_label(v):
    if isinstance(v, list):
        return tuple(dec_label(x) for x in v)
    if isinstance(v, bool) or v is None or isinstance(v, dict):
        raise ValueError(f"not a label: {v!r}")
    return str(v)


def enc_label(x):
    if isinstance(x, tuple):
        return [enc_label(y) for y in x]
    return str(x)


def _plain(x):
    return isinstance(x, str) and SEP not in x


def _canon_key(v):
    return json.dumps(v, sort_keys=True, ensure_ascii=False)


def enc_set(items, enc=enc_label):
    return sorted((enc(x) for x in items), key=_canon_key)


def enc_pairs(pairs):
    return enc_set(pairs, lambda p: [enc_label(y) for y in p])


def enc_map(mapping, enc_value):
    if all(_plain(k) for k in mapping):
        return {k: enc_value(v) for k, v in mapping.items()}
    return sorted(([enc_label(k), enc_value(v)] for k, v in mapping.items()), key=_canon_key)


def dec_map(obj, dec_value):
    if isinstance(obj, dict):
        return {dec_label(k): dec_value(v) for k, v in obj.items()}
    return {dec_label(k): dec_value(v) for k, v in obj}


def enc_cmap(mapping, enc_value):
    """Map keyed by tuples, written with ``"a|b"`` keys when possible."""
    if all(all(_plain(c) for c in k) for k in mapping):
        return {SEP.join(k): enc_value(v) for k, v in mapping.items()}
    return sorted(([enc_label(k), enc_value(v)] for k, v in mapping.items()), key=_canon_key)


def dec_cmap(obj, dec_value, arity=None):
    out = {}
    items = obj.items() if isinstance(obj, dict) else obj
    for k, v in items:
        key = tuple(dec_label(c) for c in k.split(SEP)) if isinstance(k, str) else dec_label(k)
        if arity is not None and len(key) != arity:
            raise ValueError(f"key {k!r} should have {arity} components")
        out[key] = dec_value(v)
    return out


# object encoders


def enc_topology(t):
    return {"points": enc_set(t.points), "opens": enc_set(t.opens, enc_set)}


def enc_correspondence(c, source=None, target=None):
    return {
        "source": source if source is not None else enc_set(c.source),
        "target": target if target is not None else enc_set(c.target),
        "pairs": enc_pairs(c.pairs),
    }


def enc_bundle(b, topo_refs=None):
    out = {"base": enc_set(b.base), "fibers": enc_map(b.fibers, enc_set)}
    if b.trivialization is not None:
        t = b.trivialization
        out["trivialization"] = {
            "typical": enc_set(t.typical),
            "charts": enc_map(t.charts, lambda c: enc_map(c, enc_label)),
        }
    refs = topo_refs or {}
    for field in ("base_topology", "total_topology"):
        top = getattr(b, field)
        if top is not None:
            out[field] = refs.get(field) or enc_topology(top)
    return out


def enc_fibered(f, source, target):
    return {
        "kind": "fibered",
        "source": source,
        "target": target,
        "base_pairs": enc_pairs(f.base.pairs),
        "fibers": enc_cmap(f.fibers, enc_pairs),
    }


def enc_reduced(f, source, target):
    return {
        "kind": "reduced",
        "source": source,
        "target": target,
        "domain": enc_set(f.domain),
        "fibers": enc_map(f.fibers, enc_pairs),
    }


def enc_morphism(m, source, target):
    return {
        "kind": "morphism",
        "source": source,
        "target": target,
        "map": enc_map(m.maps, lambda t: enc_map(t, enc_label)),
    }


def enc_group(g):
    return {
        "elements": enc_set(g.elements),
        "identity": enc_label(g.identity),
        "table": enc_cmap(g.table, enc_label),
    }


def enc_algebra(a):
    ops = {}
    for name, (arity, table) in a.operations.items():
        tab = {SEP.join(k): enc_label(v) for k, v in table.items()}
        ops[name] = {"arity": arity, "table": tab}
    return {"carrier": enc_set(a.carrier), "ops": ops}


class Universe:
    """Named objects of one document plus the reference names used to build them."""

    def __init__(self):
        for c in COLLECTIONS:
            setattr(self, c, {})
        # (collection, name, field) -> name referenced in the source document
        self.refs = {}
        self._where = {}

    def add(self, collection, name, obj):
        if name in self._where:
            raise InvariantViolation(f"/{collection}/{name}", f"name already used in {self._where[name]}")
        getattr(self, collection)[name] = obj
        self._where[name] = collection

    def lookup(self, name):
        """``(collection, object)`` for a name, or KeyError."""
        collection = self._where[name]
        return collection, getattr(self, collection)[name]

    def ref(self, collection, name, field):
        return self.refs.get((collection, name, field))


class _Loader:
    def __init__(self, doc):
        self.doc = doc
        self.u = Universe()

    def fail(self, pointer, message):
        raise InvariantViolation(pointer, message)

    def resolve(self, collection, value, pointer):
        if not isinstance(value, str):
            self.fail(pointer, "expected the name of an object")
        found = getattr(self.u, collection).get(value)
        if found is None:
            self.fail(pointer, f"dangling reference to {collection[:-1]} {value!r}")
        return found

    def set_ref(self, value, pointer):
        """A finite set given inline, or by the name of a set, algebra or topology."""
        if isinstance(value, list):
            return frozenset(dec_label(v) for v in value), None
        if isinstance(value, str):
            if value in self.u.sets:
                return self.u.sets[value], value
            if value in self.u.algebras:
                return self.u.algebras[value].carrier, value
            if value in self.u.topologies:
                return self.u.topologies[value].points, value
        self.fail(pointer, f"dangling set reference {value!r}")

    def topology_ref(self, value, pointer):
        if isinstance(value, str):
            return self.resolve("topologies", value, pointer), value
        return FiniteTopology(
            [dec_label(p) for p in value["points"]], [[dec_label(p) for p in u] for u in value["opens"]]
        ), None

    def run(self):
        doc = self.doc
        if not isinstance(doc, dict):
            raise ParseError("a universe document is a JSON object")
        unknown = set(doc) - set(COLLECTIONS)
        if unknown:
            self.fail("/", f"unknown collections {sorted(unknown)}")
        for collection in COLLECTIONS:
            section = doc.get(collection, {})
            if not isinstance(section, dict):
                self.fail(f"/{collection}", "expected an object of named entries")
            build = getattr(self, "build_" + collection)
            for name in sorted(section):
                pointer = f"/{collection}/{name}"
                try:
                    obj = build(name, section[name], pointer)
                except InvariantViolation:
                    raise
                except FibraError as exc:
                    self.fail(pointer, f"{type(exc).__name__}: {exc}")
                except (KeyError, TypeError, ValueError, AttributeError) as exc:
                    self.fail(pointer, f"malformed entry: {type(exc).__name__}: {exc}")
                self.u.add(collection, name, obj)
        return self.u

    def build_topologies(self, name, entry, pointer):
        return self.topology_ref(entry, pointer)[0]

    def build_sets(self, name, entry, pointer):
        return frozenset(dec_label(v) for v in entry)

    def build_algebras(self, name, entry, pointer):
        carrier = [dec_label(v) for v in entry["carrier"]]
        ops = {}
        for op, body in entry.get("ops", {}).items():
            arity = body["arity"]
            table = {}
            for k, v in body["table"].items():
                args = () if arity == 0 else tuple(dec_label(c) for c in k.split(SEP))
                table[args] = dec_label(v)
            ops[op] = (arity, table)
        return FiniteAlgebra(carrier, ops)

    def build_correspondences(self, name, entry, pointer):
        source, sref = self.set_ref(entry["source"], pointer + "/source")
        target, tref = self.set_ref(entry["target"], pointer + "/target")
        self.u.refs[("correspondences", name, "source")] = sref
        self.u.refs[("correspondences", name, "target")] = tref
        return Correspondence(source, target, [(dec_label(a), dec_label(b)) for a, b in entry["pairs"]])

    def build_bundles(self, name, entry, pointer):
        triv = None
        if "trivialization" in entry:
            t = entry["trivialization"]
            triv = Trivialization(
                [dec_label(v) for v in t["typical"]],
                dec_map(t["charts"], lambda c: dec_map(c, dec_label)),
            )
        tops = {}
        for field in ("base_topology", "total_topology"):
            if field in entry:
                top, ref = self.topology_ref(entry[field], f"{pointer}/{field}")
                tops[field] = top
                self.u.refs[("bundles", name, field)] = ref
        return Bundle(
            [dec_label(v) for v in entry["base"]],
            dec_map(entry["fibers"], lambda f: [dec_label(v) for v in f]),
            triv,
            name=name,
            **tops,
        )

    def _bundle_pair(self, collection, name, entry, pointer):
        source = self.resolve("bundles", entry["source"], pointer + "/source")
        target = self.resolve("bundles", entry["target"], pointer + "/target")
        self.u.refs[(collection, name, "source")] = entry["source"]
        self.u.refs[(collection, name, "target")] = entry["target"]
        return source, target

    def build_fibered(self, name, entry, pointer):
        if entry.get("kind", "fibered") != "fibered":
            self.fail(pointer + "/kind", "expected kind 'fibered'")
        source, target = self._bundle_pair("fibered", name, entry, pointer)
        base = [(dec_label(x), dec_label(y)) for x, y in entry["base_pairs"]]
        fibers = dec_cmap(entry["fibers"], lambda ps: [(dec_label(a), dec_label(b)) for a, b in ps], arity=2)
        for pair in base:
            fibers.setdefault(pair, [])
        return FiberedCorrespondence(source, target, base, fibers)

    def build_reduced(self, name, entry, pointer):
        if entry.get("kind", "reduced") != "reduced":
            self.fail(pointer + "/kind", "expected kind 'reduced'")
        source, target = self._bundle_pair("reduced", name, entry, pointer)
        fibers = dec_map(entry["fibers"], lambda ps: [(dec_label(a), dec_label(b)) for a, b in ps])
        domain = [dec_label(x) for x in entry["domain"]] if "domain" in entry else list(fibers)
        for x in domain:
            fibers.setdefault(x, [])
        return ReducedFiberedCorrespondence(source, target, fibers, domain)

    def build_relations(self, name, entry, pointer):
        bundle = self.resolve("bundles", entry["bundle"], pointer + "/bundle")
        self.u.refs[("relations", name, "bundle")] = entry["bundle"]
        fibers = dec_map(entry["fibers"], lambda ts: [tuple(dec_label(a) for a in t) for t in ts])
        return FiberedRelation(bundle, entry["arity"], fibers)

    def build_morphisms(self, name, entry, pointer):
        if entry.get("kind", "morphism") != "morphism":
            self.fail(pointer + "/kind", "expected kind 'morphism'")
        source, target = self._bundle_pair("morphisms", name, entry, pointer)
        return FiberedMorphism(source, target, dec_map(entry["map"], lambda m: dec_map(m, dec_label)))

    def build_groups(self, name, entry, pointer):
        return FiniteGroup(
            [dec_label(v) for v in entry["elements"]],
            dec_cmap(entry["table"], dec_label, arity=2),
            dec_label(entry["identity"]),
        )

    def build_representations(self, name, entry, pointer):
        g = entry["group"]
        if isinstance(g, str):
            group = self.resolve("groups", g, pointer + "/group")
            self.u.refs[("representations", name, "group")] = g
        else:
            group = self.build_groups(name, g, pointer + "/group")
        space = self.resolve("bundles", entry["space"], pointer + "/space")
        self.u.refs[("representations", name, "space")] = entry["space"]
        action = dec_map(entry["action"], lambda t: dec_cmap(t, dec_label, arity=2))
        return TstarRepresentation(FiberedGroup(space.base, group), space, action)

    def build_towers(self, name, entry, pointer):
        levels = [self.resolve("bundles", b, f"{pointer}/levels/{i}") for i, b in enumerate(entry["levels"])]
        self.u.refs[("towers", name, "levels")] = list(entry["levels"])
        return Tower(levels)


def load_document(doc):
    return _Loader(doc).run()


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return load_document(doc)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def emit_document(u):
    doc = {}
    r = u.ref
    if u.topologies:
        doc["topologies"] = {n: enc_topology(t) for n, t in u.topologies.items()}
    if u.sets:
        doc["sets"] = {n: enc_set(s) for n, s in u.sets.items()}
    if u.algebras:
        doc["algebras"] = {n: enc_algebra(a) for n, a in u.algebras.items()}
    if u.correspondences:
        doc["correspondences"] = {
            n: enc_correspondence(c, r("correspondences", n, "source"), r("correspondences", n, "target"))
            for n, c in u.correspondences.items()
        }
    if u.bundles:
        doc["bundles"] = {
            n: enc_bundle(b, {f: r("bundles", n, f) for f in ("base_topology", "total_topology")})
            for n, b in u.bundles.items()
        }
    if u.fibered:
        doc["fibered"] = {
            n: enc_fibered(f, r("fibered", n, "source"), r("fibered", n, "target")) for n, f in u.fibered.items()
        }
    if u.reduced:
        doc["reduced"] = {
            n: enc_reduced(f, r("reduced", n, "source"), r("reduced", n, "target")) for n, f in u.reduced.items()
        }
    if u.relations:
        doc["relations"] = {
            n: {
                "bundle": r("relations", n, "bundle"),
                "arity": rel.arity,
                "fibers": enc_map(rel.fibers, lambda ts: enc_set(ts, lambda t: [enc_label(a) for a in t])),
            }
            for n, rel in u.relations.items()
        }
    if u.morphisms:
        doc["morphisms"] = {
            n: enc_morphism(m, r("morphisms", n, "source"), r("morphisms", n, "target"))
            for n, m in u.morphisms.items()
        }
    if u.groups:
        doc["groups"] = {n: enc_group(g) for n, g in u.groups.items()}
    if u.representations:
        doc["representations"] = {
            n: {
                "group": r("representations", n, "group") or enc_group(rep.group),
                "space": r("representations", n, "space"),
                "action": enc_map(rep.action, lambda t: enc_cmap(t, enc_label)),
            }
            for n, rep in u.representations.items()
        }
    if u.towers:
        doc["towers"] = {n: {"levels": r("towers", n, "levels")} for n in u.towers}
    return doc


def dumps(value):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(u):
    return dumps(emit_document(u))


__all__ = [
    "InvariantViolation",
    "ParseError",
    "Universe",
    "dumps",
    "emit",
    "emit_document",
    "load",
    "load_document",
    "loads",
]
