"""Compare the fast engine with the brute-force oracles over a small prime field.

    python3 scripts/oracle_sweep.py --prime 2 --loops 2 --framing 1 --dim 2
"""
from __future__ import annotations

import argparse
import itertools
import time
from dataclasses import dataclass

from framed_moduli import GF, FramedShape, Matrix, Quiver
from framed_moduli.charts import iso_check
from framed_moduli.oracle import OracleBudget, orbit_partition_bruteforce, stability_bruteforce
from framed_moduli.rep import FramedRep, is_stable


@dataclass
class SweepConfig:
    prime: int = 2
    loops: int = 1
    framing: int = 1
    dim: int = 2
    skip_iso: bool = False


def every_rep(cfg: SweepConfig):
    field = GF(cfg.prime)
    quiver, m = Quiver.loops(cfg.loops), cfg.dim
    shape = FramedShape((m,), (cfg.framing,))
    cells = cfg.loops * m * m + cfg.framing * m
    for vals in itertools.product(range(cfg.prime), repeat=cells):
        mats, k = [], 0
        for r in [m] * cfg.loops + [cfg.framing]:
            mats.append(Matrix(field, [vals[k + i * m:k + (i + 1) * m] for i in range(r)], m))
            k += r * m
        yield FramedRep(quiver, shape, field, tuple(mats[:-1]), (mats[-1],))


def sweep(cfg: SweepConfig) -> None:
    t0 = time.perf_counter()
    reps = list(every_rep(cfg))
    bad = sum(is_stable(r) != stability_bruteforce(r, OracleBudget(max_total_dim=8)) for r in reps)
    stable = [r for r in reps if is_stable(r)]
    print(f"{len(reps)} representations, {len(stable)} stable, {bad} stability disagreements "
          f"({time.perf_counter() - t0:.1f}s)")
    if cfg.skip_iso:
        return
    t0 = time.perf_counter()
    labels = orbit_partition_bruteforce(stable)
    bad = sum(iso_check(stable[i], stable[j]).isomorphic != (labels[i] == labels[j])
              for i in range(len(stable)) for j in range(i, len(stable)))
    print(f"{len(set(labels))} orbits, {bad} isomorphism disagreements ({time.perf_counter() - t0:.1f}s)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in [("prime", 2), ("loops", 1), ("framing", 1), ("dim", 2)]:
        ap.add_argument(f"--{name}", type=int, default=default)
    ap.add_argument("--skip-iso", action="store_true")
    sweep(SweepConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
