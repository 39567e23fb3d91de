"""Winding number and lower-band Berry phase across tv/td at phi = pi/2."""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from creutz_cqed.errors import GapClosingError
from creutz_cqed.topology import berry_phase, winding_number


@dataclass
class Config:
    N: int = 64
    r_min: float = 0.0
    r_max: float = 4.0
    step: float = 0.05
    phi: float = math.pi / 2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    print("ratio,winding,berry_phase")
    for R in np.round(np.arange(cfg.r_min, cfg.r_max + cfg.step / 2, cfg.step), 6):
        try:
            nu = winding_number(1.0, R, cfg.phi).winding
            gamma = berry_phase(cfg.N, 1.0, R, cfg.phi)
        except GapClosingError:
            print(f"{R},gapless,gapless")
            continue
        print(f"{R},{nu},{gamma:.12f}")


if __name__ == "__main__":
    main()
