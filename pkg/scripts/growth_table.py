#!/usr/bin/env python3
"""Print per-rule stage counts and growth classification as a table."""

import argparse

from coversphere.catalog import get_rule, list_rules
from coversphere.growth import growth_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=5)
    ap.add_argument("--rules", nargs="*",
                    default=[n for n, _g, _m in list_rules()])
    args = ap.parse_args()
    print(f"{'rule':<12} {'geometry':<8} {'mode':<12} "
          f"{'faces':<40} classification")
    for name in args.rules:
        entry = get_rule(name)
        steps = args.steps
        if name in ("nxs1", "sl2r"):
            steps = min(steps, 5)  # exponential rules get big fast
        rep = growth_report(entry, steps)
        print(f"{name:<12} {entry.geometry:<8} {rep.mode:<12} "
              f"{str(rep.faces):<40} {rep.classification}")


if __name__ == "__main__":
    main()
