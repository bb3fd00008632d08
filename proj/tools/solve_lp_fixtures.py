#!/usr/bin/env python3
"""Solve exported LP files with HiGHS and record optimal objectives.

Usage: solve_lp_fixtures.py OUT.txt MODEL.lp [MODEL.lp ...]

Each output line is `<file name> <objective>`; infeasible models are written
as `<file name> infeasible`.
"""

import pathlib
import sys

import highspy


def solve(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    h.readModel(str(path))
    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kInfeasible:
        return "infeasible"
    if status != highspy.HighsModelStatus.kOptimal:
        raise SystemExit(f"{path}: solver status {h.modelStatusToString(status)}")
    return f"{h.getInfo().objective_function_value:.9g}"


def main(argv):
    if len(argv) < 3:
        raise SystemExit(__doc__)
    lines = [f"{pathlib.Path(p).name} {solve(p)}" for p in argv[2:]]
    pathlib.Path(argv[1]).write_text("\n".join(lines) + "\n")
    print("\n".join(lines))


if __name__ == "__main__":
    main(sys.argv)
