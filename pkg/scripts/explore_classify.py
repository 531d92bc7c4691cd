#!/usr/bin/env python3
"""Tabulate the permuting coefficients for every b in a chosen field.

For each b outside the base field, lists the c for which
x + c/(Tr(x) + b) permutes the extension, alongside the closed-form
prediction.  Degrees 2 and 3 have a closed form; other degrees print
the raw search result only.
"""

import argparse
import sys

from permrf.cli import parse_field_spec
from permrf.errors import PermRFError
from permrf.gf_core import Element, make_tower
from permrf.ratfunc import classify_c, closed_form_c


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--field", default="3:2", metavar="P[^M]:N",
                        help="tower to explore (default 3:2)")
    parser.add_argument("--budget", type=int, default=None,
                        help="largest field size the run may construct")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--pretty", action="store_true",
                        help="render elements as polynomials in u, v")
    args = parser.parse_args(argv)

    p, m, n = parse_field_spec(args.field)
    tower = make_tower(p, m, n, size_budget=args.budget)

    def show(enc):
        if enc is None:
            return "-"
        if args.pretty:
            return Element(tower, "top", enc).pretty()
        return str(enc)

    q = tower.q
    print(f"field {tower.field_spec}: q={q}, size={tower.size}, "
          f"{tower.size - q} choices of b")
    mismatches = 0
    for b in range(q, tower.size):
        permuting = classify_c(tower, b, workers=args.workers)
        try:
            closed = closed_form_c(tower, b)
        except PermRFError:
            closed = None
        mark = ""
        if closed is not None and permuting != [closed]:
            mark = "  <- beyond closed form"
            mismatches += 1
        cs = ", ".join(show(c) for c in permuting) or "-"
        print(f"  b={show(b):<12} closed={show(closed):<12} "
              f"permuting=[{cs}]{mark}")
    if mismatches:
        print(f"{mismatches} b values permute beyond the closed form")
    return 0


if __name__ == "__main__":
    sys.exit(main())
