"""Completeness of the quiver presentations and the reference ones on the concrete monoids.

Small alphabets use the bounded word congruence; larger ones the rewriting certificate.
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from reflmon import quiver as qv
from reflmon.presentation import reference_presentation, present
from reflmon.verification import bounded_word_congruence, presentation_certificate, replay

PIVOTS = {
    "A": lambda n: [str(i) for i in range(n - 1, 0, -1)],
    "B": lambda n: [str(i) for i in range(n - 1, -1, -1)],
    "D": lambda n: [str(i) for i in range(n - 1, 1, -1)] + ["0"],
}


@dataclass
class CompletenessConfig:
    cases: list[tuple[str, int]] = field(default_factory=lambda: [
        ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)])
    max_len: int = 14
    slack: int = 8


def run(cfg: CompletenessConfig) -> bool:
    all_ok = True
    for fam, n in cfg.cases:
        tq = replay(qv.standard_quiver(fam, n), PIVOTS[fam](n))
        for label, p in (("quiver", present(tq.quiver)), ("reference", reference_presentation(fam, n))):
            t = time.perf_counter()
            if len(p.generators) <= 3:
                res = bounded_word_congruence(p, tq.values, max_len=cfg.max_len)
                ok, detail = res.sound and res.bijective, res.to_dict()
            else:
                cert = presentation_certificate(p, tq.values, slack=cfg.slack)
                ok, detail = cert.complete, {"class_count": cert.class_count, "pairs": cert.pairs,
                                             "proved": cert.proved, "lemmas": len(cert.lemmas)}
            all_ok &= ok
            print(json.dumps({"family": fam, "rank": n, "presentation": label, "ok": ok,
                              "seconds": round(time.perf_counter() - t, 1), **detail}), flush=True)
    return all_ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=14)
    args = ap.parse_args()
    cfg = CompletenessConfig(max_len=args.max_len)
    print(json.dumps({"config": asdict(cfg)}))
    raise SystemExit(0 if run(cfg) else 1)
