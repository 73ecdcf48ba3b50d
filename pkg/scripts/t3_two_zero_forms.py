"""Forms with exactly the two zeros of the T3 configuration.

Checks that z^4 + x^2 y^2 lies in F_T3 (a Gram certificate over J_T3) with
zero set {e1, e2}, while z^4 + x^2 y^4 is not even a quartic, and that z^4
alone lies in F_T3 too, which puts the line class L4 below T3.
"""
from quartic_faces.catalog import get_class
from quartic_faces.certify import sos_in_subspace
from quartic_faces.forms import form
from quartic_faces.spaces import real_zero_set
from quartic_faces.textio import ParseError


def main():
    J = get_class("T3").j_basis
    f = form("z^4 + x^2*y^2")
    cert, reason = sos_in_subspace(f, J)
    Z = real_zero_set([form("z^2", 2), form("x*y", 2)])
    print(f"z^4 + x^2y^2 in F_T3: {cert is not None} ({reason}); zeros {[str(p) for p in Z.points]}")
    try:
        form("z^4 + x^2*y^4", 4)
    except ParseError as exc:
        print(f"z^4 + x^2y^4 rejected as a quartic: {exc}")
    cert, reason = sos_in_subspace(form("z^4"), J)
    print(f"z^4 in F_T3: {cert is not None} ({reason})")


if __name__ == "__main__":
    main()
