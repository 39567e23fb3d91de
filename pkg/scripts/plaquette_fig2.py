"""Occupations of the four plaquette modes after loading a_1 (CSV to stdout or --out)."""
import argparse
import csv
import math
import sys
from dataclasses import dataclass

import numpy as np

from creutz_cqed.dynamics import evolve_static, plaquette_closed_form, plaquette_model, site_state


@dataclass
class Config:
    t_final: float = math.pi
    samples: int = 401


def run(cfg: Config):
    t = np.linspace(0.0, cfg.t_final, cfg.samples)
    numeric = evolve_static(plaquette_model(), site_state(4, 0), t).occupations
    _, exact = plaquette_closed_form(t)
    return t, numeric, np.max(np.abs(numeric - exact))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-final", type=float, default=Config.t_final)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--out")
    args = ap.parse_args()
    t, occ, err = run(Config(args.t_final, args.samples))
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["t", "p1", "p2", "p3", "p4"])
    for ti, p in zip(t, occ):
        w.writerow([repr(float(ti)), *(repr(float(x)) for x in p)])
    print(f"max deviation from closed form: {err:.2e}", file=sys.stderr)


if __name__ == "__main__":
    main()
