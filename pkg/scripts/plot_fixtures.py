"""Write SVG pictures of the two-dimensional fixtures to an output directory."""
import argparse
import tempfile
from pathlib import Path

from ifbases.cli import run
from ifbases.fixtures import DATA

PLOTS = {
    "parabola_cone": "0,0..16,4",
    "y_ge_1_ifb": "0..6",
    "cone_1_2": "0..6",
    "quadrant": "0..6",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="plots")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, box in PLOTS.items():
        src = DATA / f"{name}.json"
        if name.startswith("cone") or name == "quadrant":
            # plot the Hilbert basis on top of the cone
            with tempfile.TemporaryDirectory() as tmp:
                report = Path(tmp) / "report.json"
                run(["hilbert", "--input", str(src), "--output", str(report)])
                run(["plot", "--input", str(report), "--box", box, "--output", str(out / f"{name}.svg")])
        else:
            run(["plot", "--input", str(src), "--box", box, "--output", str(out / f"{name}.svg")])
        print(out / f"{name}.svg")


if __name__ == "__main__":
    main()
