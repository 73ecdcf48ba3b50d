"""Rewrite the golden CLI outputs in tests/golden and the packaged DOT file.

Run after an intentional change to an output format, then review the diff.
"""
import io
from pathlib import Path

from quartic_faces.cli import run

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"
CASES = {
    "catalog.json": ["catalog", "--json"],
    "lattice.dot": ["lattice", "--dot"],
    "lattice.json": ["lattice", "--json"],
    "jspace_S3.txt": ["jspace", "--config", "S3"],
    "fullness_T2.txt": ["fullness", "--config", "T2"],
    "blowup_T1star.txt": ["blowup", "--form", "x^2*y^2 + 2*x*y*z^2 + z^4 + y^2*z^2 + y^4", "--point", "1,0,0", "--line", "0,1,0"],
    "exposed_T4.txt": ["exposed", "--class", "T4"],
}


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        out = io.StringIO()
        code = run(argv, out)
        if code != 0:
            raise SystemExit(f"{' '.join(argv)} exited with {code}")
        (GOLDEN / name).write_text(out.getvalue())
        print(f"wrote {name}")
    data = ROOT / "src" / "quartic_faces" / "data" / "lattice.dot"
    data.write_text((GOLDEN / "lattice.dot").read_text())
    print(f"wrote {data.relative_to(ROOT)}")


if __name__ == "__main__":
    main()
