"""Replay every class member with tracked generators and check relations, closure and opposites."""
import argparse
import json
import os
import time
from dataclasses import asdict, dataclass, field

from reflmon import quiver as qv
from reflmon.config import THREADS_ENV
from reflmon.mutation_class import standard_class
from reflmon.verification import check_lemma_cycle_equivalences, check_opposite_invariance, replay, verify_mutation_invariance


@dataclass
class SweepConfig:
    cases: list[tuple[str, int]] = field(default_factory=lambda: [
        ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("B", 4), ("D", 4), ("D", 5)])
    lemma_samples: int = 200
    seed: int = 0
    workers: int = int(os.environ.get(THREADS_ENV, "1"))


def sweep(cfg: SweepConfig) -> bool:
    all_ok = True
    for fam, n in cfg.cases:
        t = time.perf_counter()
        cat = standard_class(fam, n)
        reports = verify_mutation_invariance(fam, n, cat, workers=cfg.workers)
        q0 = qv.standard_quiver(fam, n)
        opp = 0
        for m in cat.members:
            tq = replay(q0, m.witness)
            opp += not check_opposite_invariance(tq.quiver, tq.values)
        lem = check_lemma_cycle_equivalences(cat, samples=cfg.lemma_samples, seed=cfg.seed)
        ok = all(r.passed for r in reports) and opp == 0 and lem.passed
        all_ok &= ok
        print(json.dumps({
            "family": fam, "rank": n, "members": len(cat),
            "relation_failures": sum(len(r.failures) for r in reports),
            "closure_failures": sum(r.closure_ok is False for r in reports),
            "opposite_failures": opp, "cycle_shapes": lem.by_shape, "samples": lem.samples,
            "samples_a_false": lem.samples_a_false, "lemma_failures": len(lem.failures),
            "ok": ok, "seconds": round(time.perf_counter() - t, 1),
        }), flush=True)
    return all_ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true", help="skip the rank-5 cases")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SweepConfig(seed=args.seed)
    if args.quick:
        cfg.cases = [c for c in cfg.cases if c[1] < 5]
    print(json.dumps({"config": asdict(cfg)}))
    raise SystemExit(0 if sweep(cfg) else 1)
