"""Tabulate self-injectivity of the mod-p Mackey algebras of small groups
next to the Sylow-order prediction (self-injective iff p^2 does not divide |G|)."""
import argparse
import sys
import time

from mackeyalg import build_group
from mackeyalg.algebra import GF
from mackeyalg.burncat import mackey_algebra
from mackeyalg.fdalg.modules import is_self_injective
from mackeyalg.grpcore import ResourceCapError, prime_factors

DEFAULT = ["cyclic:2", "cyclic:3", "cyclic:4", "klein", "cyclic:5", "cyclic:6", "sym:3",
           "cyclic:8", "dihedral:4", "cyclic:9", "cyclic:10"]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("groups", nargs="*", default=DEFAULT)
    args = ap.parse_args(argv)
    mismatches = 0
    print(f"{'group':12s} {'p':>2s} {'dim':>4s} {'self-inj':>8s} {'predicted':>9s}  time")
    for spec in args.groups:
        G = build_group(spec)
        for p in sorted(prime_factors(G.order)):
            t0 = time.perf_counter()
            A = mackey_algebra(G, GF(p)).algebra
            try:
                got = is_self_injective(A)
            except ResourceCapError as e:
                print(f"{spec:12s} {p:2d} {A.dim:4d}  skipped: {e}")
                continue
            want = G.order % (p * p) != 0
            mismatches += got != want
            print(f"{spec:12s} {p:2d} {A.dim:4d} {str(got):>8s} {str(want):>9s}  "
                  f"{time.perf_counter() - t0:.2f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
