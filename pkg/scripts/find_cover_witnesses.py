"""Search small integer transforms for every covering edge of the inclusion order.

Prints one matrix per edge; the frozen table in quartic_faces.lattice was
produced this way. Q below S4 is out of reach of small bounds: its matrix
sends the four points of S4 onto a conic equivalent to x^2 - y^2 + z^2 and
was built directly with frame_transform.
"""
import argparse

from quartic_faces.catalog import get_class
from quartic_faces.lattice import hasse, transported_certificate
from quartic_faces.search import find_embedding


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=1)
    args = ap.parse_args()
    for lo, hi in sorted(hasse().edges):
        a, b = get_class(lo), get_class(hi)
        sigma = find_embedding(a.j_basis, b.j_basis, args.bound)
        if sigma is None:
            print(f"{lo:5} -> {hi:6} none within bound {args.bound}")
            continue
        ok = transported_certificate(a, b, sigma) is not None
        rows = tuple(tuple(int(v) if v.denominator == 1 else str(v) for v in r) for r in sigma.matrix)
        print(f"{lo:5} -> {hi:6} {rows} certificate {'verifies' if ok else 'FAILS'}")


if __name__ == "__main__":
    main()
