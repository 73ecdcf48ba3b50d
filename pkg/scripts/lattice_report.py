"""Every ordered pair of classes with its verdict and the reason behind it."""
from collections import Counter

from quartic_faces.lattice import all_relations


def main():
    rels = all_relations()
    for e in rels:
        if e.lower == e.upper:
            continue
        verdict = "below" if e.holds else "not below" if e.holds is False else "UNDECIDED"
        why = e.obstruction or ("witness" if e.witness else "")
        print(f"{e.lower:6} {verdict:9} {e.upper:6} {why:18} {e.detail}")
    print(Counter((e.holds, e.obstruction) for e in rels if e.lower != e.upper))


if __name__ == "__main__":
    main()
