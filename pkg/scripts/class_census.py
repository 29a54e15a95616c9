"""Mutation-class sizes, D-shape counts and characterization checks per family and rank."""
import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from reflmon.mutation_class import classify_D_eps, standard_class, verify_class_characterization


@dataclass
class CensusConfig:
    cases: list[tuple[str, int]] = field(default_factory=lambda: [
        ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("B", 4), ("D", 4), ("D", 5), ("D", 6)])
    exhaustive_max_vertices: int = 5  # all-quiver scan only on small vertex sets


def census(cfg: CensusConfig) -> list[dict]:
    rows = []
    for fam, n in cfg.cases:
        t = time.perf_counter()
        cat = standard_class(fam, n)
        size = cat.members[0].quiver.size
        rep = verify_class_characterization(fam, n, exhaustive=size <= cfg.exhaustive_max_vertices)
        row = {"family": fam, "rank": n, "class_size": len(cat), "sound": rep.sound,
               "predicate_quivers": rep.predicate_quivers, "missing": rep.predicate_quivers_missing}
        if fam == "D":
            row["shapes"] = dict(Counter(classify_D_eps(m.quiver).shape for m in cat.members))
        row["seconds"] = round(time.perf_counter() - t, 2)
        rows.append(row)
        print(json.dumps(row))
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=CensusConfig.exhaustive_max_vertices)
    args = ap.parse_args()
    cfg = CensusConfig(exhaustive_max_vertices=args.max_vertices)
    print(json.dumps({"config": asdict(cfg)}))
    census(cfg)
