"""Command line: reflmon {mutate,class,present,verify,autos,green,oracle}.

Quiver files are JSON objects
    {"family": "A", "mutable": ["1", "2"], "frozen": "eps",
     "edges": [{"src": "1", "dst": "2", "weight": 1}, ...]}
Presentations are
    {"kind": "monoid", "generators": [...], "relations": [{"lhs": [...], "rhs": [...], "tag": "R1"}, ...]}
Elements are printed in two-line form "1 2 3 / 2 -1 -", where "-" marks a point
outside the domain and a minus sign a sign change.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
The environment variable REFLMON_THREADS sets the worker count for `verify`.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automorphisms as autos
from . import monoid as mon
from . import quiver as qv
from .config import FORMATS, SUBCOMMANDS, ConfigError, RunConfig
from .mutation_class import enumerate_class
from .presentation import PresentationError, reference_presentation, present
from .verification import (
    bounded_word_congruence,
    check_relations,
    presentation_certificate,
    verify_mutation_invariance,
)

EXIT_FAIL, EXIT_USAGE, EXIT_IO = 1, 2, 3


def _words(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    return tuple(text.replace(",", " ").split())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflmon", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="subcommand", required=True)
    helps = {
        "mutate": "apply pivots to a quiver and print the result",
        "class": "enumerate the mutation class of the standard quiver",
        "present": "print the monoid presentation read off a quiver",
        "verify": "check relations over a whole mutation class (exit 1 on failure)",
        "autos": "replay a doubled mutation sequence and print the conjugated generators",
        "green": "Green's relations of the concrete monoid",
        "oracle": "expected cardinalities next to brute-force counts",
    }
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("--family", choices=qv.FAMILIES, default="A")
        sp.add_argument("--rank", type=int, default=3, help="n: ground-set size of the monoid")
        sp.add_argument("--format", choices=FORMATS, default="json")
        sp.add_argument("--output", type=Path, help="write here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)
        if name in ("mutate", "present"):
            sp.add_argument("--input", "--in", type=Path, help="quiver JSON file (default: standard quiver)")
            sp.add_argument("--pivots", default="", help="space or comma separated mutable vertices")
        if name == "present":
            sp.add_argument("--reference", action="store_true", help="print the reference presentation instead")
        if name == "verify":
            sp.add_argument("--congruence", action="store_true",
                            help="also check completeness of the standard presentation")
            sp.add_argument("--max-len", type=int, default=14)
        if name == "autos":
            sp.add_argument("--word", default="", help="word over mutable generators, e.g. '0 1 0'")
    return p


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        subcommand=ns.subcommand,
        family=ns.family,
        rank=ns.rank,
        pivots=_words(getattr(ns, "pivots", "")),
        word=_words(getattr(ns, "word", "")),
        input=getattr(ns, "input", None),
        output=ns.output,
        format=ns.format,
        max_len=getattr(ns, "max_len", 14),
        congruence=getattr(ns, "congruence", False),
        seed=ns.seed,
        reference=getattr(ns, "reference", False),
    ).validate()


def _load_quiver(cfg: RunConfig) -> qv.Quiver:
    if cfg.input is None:
        q = qv.standard_quiver(cfg.family, cfg.rank)
    else:
        q = qv.from_json(cfg.input.read_text())
    return qv.mutate_sequence(q, cfg.pivots)


def _quiver_text(q: qv.Quiver) -> str:
    return "\n".join(f"{s} -> {d}" + (f"  ({w})" if w > 1 else "") for s, d, w in q.arrows())


def _emit_quiver(q: qv.Quiver, fmt: str) -> str:
    if fmt == "dot":
        return qv.to_dot(q)
    if fmt == "text":
        return _quiver_text(q)
    return qv.to_json(q)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def run_mutate(cfg: RunConfig) -> tuple[int, str]:
    return 0, _emit_quiver(_load_quiver(cfg), cfg.format)


def run_class(cfg: RunConfig) -> tuple[int, str]:
    cat = enumerate_class(qv.standard_quiver(cfg.family, cfg.rank), cfg.rank)
    if cfg.format == "text":
        lines = [f"{cfg.family}{cfg.rank}: {len(cat)} quivers"]
        lines += [f"{i}: pivots [{' '.join(m.witness)}]" for i, m in enumerate(cat.members)]
        return 0, "\n".join(lines)
    if cfg.format == "dot":
        return 0, "\n".join(qv.to_dot(m.quiver, f"Q{i}") for i, m in enumerate(cat.members))
    return 0, _dump(cat.to_dict())


def run_present(cfg: RunConfig) -> tuple[int, str]:
    p = reference_presentation(cfg.family, cfg.rank) if cfg.reference else present(_load_quiver(cfg))
    if cfg.format == "text":
        return 0, "\n".join(str(r) for r in p.relations)
    return 0, p.to_json()


def run_verify(cfg: RunConfig) -> tuple[int, str]:
    reports = verify_mutation_invariance(cfg.family, cfg.rank, workers=cfg.threads)
    out = [r.to_dict() for r in reports]
    ok = all(r.passed for r in reports)
    if cfg.congruence:
        q = qv.standard_quiver(cfg.family, cfg.rank)
        gens = mon.realize_generators(cfg.family, cfg.rank)
        p = present(q)
        if len(p.generators) <= 3:
            res = bounded_word_congruence(p, gens, max_len=cfg.max_len)
            out.append({"congruence": res.to_dict()})
            ok = ok and res.sound and res.bijective
        else:
            cert = presentation_certificate(p, gens)
            out.append({"certificate": cert.to_dict()})
            ok = ok and cert.complete
    if cfg.format == "text":
        text = "\n".join(f"{r['quiver']}: {'pass' if r['passed'] else 'FAIL'}" for r in out if "quiver" in r)
        return (0 if ok else EXIT_FAIL), text
    return (0 if ok else EXIT_FAIL), _dump(out)


def run_autos(cfg: RunConfig) -> tuple[int, str]:
    q0 = qv.standard_quiver(cfg.family, cfg.rank)
    tq, gs = autos.apply_inner(q0, cfg.word)
    conj = autos.conjugated_set(q0, cfg.word)
    ok = gs.value_set() == conj
    data = {
        "word": list(cfg.word),
        "pivots": list(autos.double_mutation_sequence(cfg.word)),
        "quiver_dot": qv.to_dot(tq.quiver),
        "generators": gs.to_dict(),
        "equals_conjugated_set": ok,
    }
    if cfg.format == "dot":
        return (0 if ok else EXIT_FAIL), qv.to_dot(tq.quiver)
    if cfg.format == "text":
        lines = [f"pivots: {' '.join(data['pivots']) or '(none)'}"]
        lines += [f"{v}: {' '.join(e['word'])}  ->  {e['value']}" for v, e in data["generators"].items()]
        return (0 if ok else EXIT_FAIL), "\n".join(lines)
    return (0 if ok else EXIT_FAIL), _dump(data)


def run_green(cfg: RunConfig) -> tuple[int, str]:
    gens = mon.realize_generators(cfg.family, cfg.rank)
    m = mon.generator_closure(list(gens.values()))
    gd = mon.green_decomposition(m)
    data = {
        "size": len(m),
        "d_equals_j": gd.d_equals_j,
        "chain": gd.is_chain,
        "d_classes": [
            {"rank": c.rank, "size": len(c.elements), "l_classes": len(c.l_classes),
             "r_classes": len(c.r_classes), "idempotents": len(c.idempotents), "group_order": c.group_order}
            for c in gd.d_classes
        ],
    }
    if cfg.format == "text":
        lines = [f"|M| = {data['size']}  chain={data['chain']}  D=J: {data['d_equals_j']}"]
        lines += [f"rank {c['rank']}: {c['size']} elements, {c['idempotents']} idempotents, H = {c['group_order']}"
                  for c in data["d_classes"]]
        return 0, "\n".join(lines)
    return 0, _dump(data)


def run_oracle(cfg: RunConfig) -> tuple[int, str]:
    gens = mon.realize_generators(cfg.family, cfg.rank)
    closure = len(mon.generator_closure(list(gens.values())))
    data = {"family": cfg.family, "rank": cfg.rank, "closure": closure,
            "expected": mon.expected_cardinality(cfg.family, cfg.rank)}
    if cfg.family == "A":
        data["brute_force"] = len(mon.all_partial_injections(cfg.rank)) if cfg.rank <= 6 else None
    elif cfg.family == "B":
        data["brute_force"] = len(mon.all_partial_injections(cfg.rank, signed=True)) if cfg.rank <= 5 else None
    else:
        data["formula"] = mon.count_even_signed(cfg.rank)
    ok = closure == data["expected"]
    if cfg.format == "text":
        return (0 if ok else EXIT_FAIL), " ".join(f"{k}={v}" for k, v in data.items())
    return (0 if ok else EXIT_FAIL), _dump(data)


HANDLERS = {
    "mutate": run_mutate,
    "class": run_class,
    "present": run_present,
    "verify": run_verify,
    "autos": run_autos,
    "green": run_green,
    "oracle": run_oracle,
}


def run(cfg: RunConfig) -> int:
    try:
        code, text = HANDLERS[cfg.subcommand](cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (json.JSONDecodeError, KeyError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_IO
    except (qv.QuiverError, PresentationError, ConfigError, mon.MonoidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except autos.DiagramNotPreserved as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        if cfg.output is None:
            sys.stdout.write(text.rstrip("\n") + "\n")
        else:
            cfg.output.write_text(text.rstrip("\n") + "\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
