"""Batch command line: ``fibra UNIVERSE.json COMMAND ...``.

Prints one canonical JSON report on standard output. Exit status is 0 on
success, 2 on a domain error, 1 on a usage error.
"""

import argparse
import sys

from . import fibered as fib
from .bundle import is_subbundle
from .errors import FibraError
from .group import is_free, orbit_quotient, tower_validate
from .io import (
    dumps,
    emit_document,
    enc_bundle,
    enc_correspondence,
    enc_label,
    enc_map,
    enc_pairs,
    enc_set,
    enc_topology,
    load,
)
from .quotient import factorize, quotient_bundle
from .relations import (
    Correspondence,
    compose,
    image,
    inverse,
    is_continuous,
    is_continuous_at_every_point,
    is_continuous_on,
    is_homomorphism_correspondence,
    limit_characterization,
)
from .topology import neighborhood_filter


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser(with_universe=True):
    p = _Parser(prog="fibra", description="Run operations and property checks on a JSON universe.")
    if with_universe:
        p.add_argument("universe", help="path to the universe JSON document")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("check", help="evaluate a property of an object")
    c.add_argument("obj")
    c.add_argument("--property", required=True)
    c = sub.add_parser("compose", help="composition f ∘ g (g applied first)")
    c.add_argument("f")
    c.add_argument("g")
    sub.add_parser("inverse").add_argument("f")
    c = sub.add_parser("image", help="image of a subbundle (or subset) under f")
    c.add_argument("f")
    c.add_argument("sub")
    c = sub.add_parser("quotient")
    c.add_argument("bundle")
    c.add_argument("equiv")
    sub.add_parser("factorize").add_argument("morphism")
    sub.add_parser("orbits").add_argument("rep")
    c = sub.add_parser("continuity")
    c.add_argument("corr")
    c.add_argument("src_top")
    c.add_argument("dst_top")
    c.add_argument("--on", default=None, help="set name or comma-separated labels")
    sub.add_parser("sections").add_argument("reduced")
    sub.add_parser("classify").add_argument("reduced")
    sub.add_parser("tower").add_argument("name")
    sub.add_parser("emit", help="re-emit the universe in canonical form")
    return p


class Runner:
    def __init__(self, universe):
        self.u = universe

    def get(self, name, *collections):
        try:
            collection, obj = self.u.lookup(name)
        except KeyError:
            raise UsageError(f"no object named {name!r}") from None
        if collections and collection not in collections:
            raise UsageError(f"{name!r} is a {collection} entry; expected one of {', '.join(collections)}")
        return collection, obj

    def bundle_name(self, b):
        for n in sorted(self.u.bundles):
            if self.u.bundles[n].same_shape(b):
                return n
        return enc_bundle(b)

    def enc_result(self, obj):
        if isinstance(obj, Correspondence):
            return {"type": "correspondence", **enc_correspondence(obj)}
        if isinstance(obj, fib.FiberedCorrespondence):
            return {"type": "fibered", **_fibered(obj, self.bundle_name)}
        if isinstance(obj, fib.ReducedFiberedCorrespondence):
            return {"type": "reduced", **_reduced(obj, self.bundle_name)}
        raise TypeError(type(obj))

    def subset(self, value):
        if value in self.u.sets:
            return self.u.sets[value]
        return frozenset(v for v in value.split(",") if v)

    # commands

    def check(self, args):
        collection, obj = self.get(args.obj)
        prop = args.property
        counter = None
        if collection == "relations":
            if prop == "valid":
                return _boolean(fib.nary_relation_check(obj)["valid"])
            obj = fib.nary_relation_check(obj, expected_arity=2)["reduced"]
            collection = "reduced"
        if collection == "reduced":
            if prop in fib.PROPERTIES:
                value = fib.relation_is(obj, prop)
                if not value:
                    x, elements = fib.relation_counterexample(obj, prop)
                    counter = {"point": enc_label(x), "elements": [enc_label(e) for e in elements]}
                return _boolean(value, counter)
            if prop in ("preordering", "ordering", "equivalence"):
                flags = fib.classify(obj)
                if prop == "preordering":
                    return _boolean(flags != ("none",))
                return _boolean(prop in flags)
        elif collection == "fibered" and prop == "injective-base":
            return _boolean(fib.base_is_injective_map(obj))
        elif collection == "correspondences":
            if prop == "functional":
                return _boolean(obj.is_functional())
            if prop == "injective":
                return _boolean(obj.is_injective())
            if prop == "homomorphism":
                src = self.u.ref("correspondences", args.obj, "source")
                dst = self.u.ref("correspondences", args.obj, "target")
                if src not in self.u.algebras or dst not in self.u.algebras:
                    raise UsageError("homomorphism check needs source and target given as algebra names")
                return _boolean(is_homomorphism_correspondence(obj, self.u.algebras[src], self.u.algebras[dst]))
        elif collection == "representations" and prop == "free":
            return _boolean(is_free(obj))
        elif collection == "towers" and prop == "valid":
            return _boolean(tower_validate(obj)["valid"])
        raise UsageError(f"property {prop!r} does not apply to {collection} entries")

    def compose(self, args):
        cf, f = self.get(args.f, "correspondences", "fibered", "reduced")
        cg, g = self.get(args.g, "correspondences", "fibered", "reduced")
        if cf != cg:
            raise UsageError("both operands must be of the same kind")
        op = {"correspondences": compose, "fibered": fib.fibered_compose, "reduced": fib.reduced_compose}[cf]
        return {"type": "object", "value": self.enc_result(op(f, g))}

    def inverse(self, args):
        cf, f = self.get(args.f, "correspondences", "fibered", "reduced")
        op = {"correspondences": inverse, "fibered": fib.fibered_inverse, "reduced": fib.reduced_inverse}[cf]
        return {"type": "object", "value": self.enc_result(op(f))}

    def image(self, args):
        cf, f = self.get(args.f, "correspondences", "fibered")
        if cf == "correspondences":
            return {"type": "value", "value": enc_set(image(f, self.subset(args.sub)))}
        _, c = self.get(args.sub, "bundles")
        result = fib.image_of_subbundle(f, c)
        is_subbundle(result, f.target)
        return {"type": "object", "value": {"type": "bundle", **enc_bundle(result)}}

    def quotient(self, args):
        _, e = self.get(args.bundle, "bundles")
        _, s = self.get(args.equiv, "reduced")
        return {"type": "object", "value": _quotient(quotient_bundle(e, s))}

    def factorize(self, args):
        _, f = self.get(args.morphism, "morphisms")
        fac = factorize(f)
        return {
            "type": "object",
            "value": {
                "j": _maps(fac.j),
                "t": _maps(fac.t),
                "i": _maps(fac.i),
                "image": enc_bundle(fac.i.source),
                "quotient": _quotient(fac.quotient),
            },
        }

    def orbits(self, args):
        _, rep = self.get(args.rep, "representations")
        oq = orbit_quotient(rep)
        return {
            "type": "object",
            "value": {
                "free": is_free(rep),
                "quotient": _quotient(oq.quotient),
                "degenerate": enc_set(oq.degenerate),
                "bijections": sorted(
                    ([enc_label(k), enc_map(v, enc_label)] for k, v in oq.bijections.items()),
                    key=lambda kv: dumps(kv),
                ),
                "tower": tower_validate(oq.level2),
            },
        }

    def continuity(self, args):
        _, phi = self.get(args.corr, "correspondences")
        _, src = self.get(args.src_top, "topologies")
        _, dst = self.get(args.dst_top, "topologies")
        if args.on is None:
            return {
                "type": "value",
                "value": {
                    "continuous": is_continuous(phi, src, dst),
                    "continuous_at_every_point": is_continuous_at_every_point(phi, src, dst),
                },
            }
        on = self.subset(args.on)
        value = {"set": enc_set(on), "continuous_on": is_continuous_on(phi, src, dst, on)}
        if on:
            value["image_is_limit"] = limit_characterization(phi, neighborhood_filter(src, on), dst, image(phi, on))
        return {"type": "value", "value": value}

    def sections(self, args):
        _, f = self.get(args.reduced, "reduced")
        corr = fib.sections_correspondence(f)

        def enc_section(s):
            return enc_map(s.assignment, enc_label)

        return {
            "type": "value",
            "value": {
                "source_sections": sorted((enc_section(s) for s in corr.source), key=dumps),
                "target_sections": sorted((enc_section(t) for t in corr.target), key=dumps),
                "pairs": sorted(([enc_section(s), enc_section(t)] for s, t in corr.pairs), key=dumps),
            },
        }

    def classify(self, args):
        collection, r = self.get(args.reduced, "reduced", "relations")
        if collection == "relations":
            r = fib.nary_relation_check(r, expected_arity=2)["reduced"]
        return {"type": "value", "value": ",".join(fib.classify(r))}

    def tower(self, args):
        collection, obj = self.get(args.name, "towers", "representations")
        if collection == "representations":
            obj = orbit_quotient(obj).level2
        return {"type": "value", "value": tower_validate(obj)}

    def emit(self, args):
        return {"type": "document", "value": emit_document(self.u)}


def _boolean(value, counterexample=None):
    return {"type": "boolean", "value": bool(value), "counterexample": counterexample}


def _fibered(f, name):
    return {
        "source": name(f.source),
        "target": name(f.target),
        "base_pairs": enc_pairs(f.base.pairs),
        "fibers": sorted(([enc_label(k), enc_pairs(v)] for k, v in f.fibers.items()), key=dumps),
    }


def _reduced(f, name):
    return {
        "source": name(f.source),
        "target": name(f.target),
        "domain": enc_set(f.domain),
        "fibers": enc_map(f.fibers, enc_pairs),
    }


def _maps(m):
    return enc_map(m.maps, lambda t: enc_map(t, enc_label))


def _quotient(q):
    out = {
        "quotient": enc_bundle(q.quotient),
        "classes": enc_map(q.class_map, lambda classes: enc_map(classes, enc_set)),
        "nat": _maps(q.nat),
        "quotient_topology": None,
    }
    if q.quotient_topology is not None:
        out["quotient_topology"] = enc_topology(q.quotient_topology)
    # the quotient bundle carries the topology too; keep one copy
    out["quotient"].pop("total_topology", None)
    return out


def run(universe, argv):
    """Execute one command (without the universe path); returns ``(exit_status, report)``."""
    argv = list(argv)
    args = build_parser(with_universe=False).parse_args(argv)
    command = argv[argv.index(args.command):]
    runner = Runner(universe)
    try:
        outcome = getattr(runner, args.command)(args)
        status = 0
    except FibraError as exc:
        outcome = {"type": "error", "error": type(exc).__name__, "message": str(exc)}
        status = 2
    return status, {"command": command, "outcome": outcome}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        universe = load(args.universe)
    except OSError as exc:
        print(f"fibra: cannot read {args.universe}: {exc}", file=sys.stderr)
        return 1
    except FibraError as exc:
        report = {
            "command": ["load", args.universe],
            "outcome": {"type": "error", "error": type(exc).__name__, "message": str(exc)},
        }
        sys.stdout.write(dumps(report))
        return 2
    try:
        status, report = run(universe, argv[argv.index(args.universe) + 1:])
    except UsageError as exc:
        print(f"fibra: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(dumps(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
