#!/usr/bin/env python3
"""Trade-off sweep: overlap and conversion efficiency versus compensator thickness.

Thin plates track the derivative objective almost perfectly but convert
little light into the shaped channel; this sweep maps the compromise for the
field-derivative configuration.

Usage: python scripts/thickness_sweep.py [--material quartz] [--lmin-um 0.5]
       [--lmax-um 80] [--points 60] [--output sweep.csv]
"""

import argparse
import sys

import numpy as np

from bsbshaper import dispersion, metrology
from bsbshaper.config import RunConfig, config_header
from bsbshaper.pulsefield import gaussian_pulse
from bsbshaper.shaper import Compensator


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--material", default="quartz")
    ap.add_argument("--mode", default="field")
    ap.add_argument("--lmin-um", type=float, default=0.5)
    ap.add_argument("--lmax-um", type=float, default=80.0)
    ap.add_argument("--points", type=int, default=60)
    ap.add_argument("--output", default="sweep.csv")
    args = ap.parse_args()

    config = RunConfig(material=args.material, mode=args.mode)
    material = dispersion.get_material(args.material)
    pulse = gaussian_pulse(config.grid(), config.omega0,
                           2 * np.pi * config.fwhm_thz * 1e12)

    lengths = np.geomspace(args.lmin_um, args.lmax_um, args.points) * 1e-6
    with open(args.output, "w") as fh:
        fh.write(config_header(config))
        fh.write("thickness_um,delay_fs,order,overlap,efficiency\n")
        for length in lengths:
            comp = Compensator(material, float(length))
            report = metrology.score_compensator(comp, pulse, args.mode)
            delay = dispersion.delta_k_prime(material, config.omega0) * length
            order = dispersion.delta_k(material, config.omega0) * length / (2 * np.pi)
            fh.write(f"{length * 1e6:.6f},{delay * 1e15:.6f},{order:.6f},"
                     f"{report.overlap:.10f},{report.efficiency:.6e}\n")
    print(args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
