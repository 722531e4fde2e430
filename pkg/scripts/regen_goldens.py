"""Recompute golden CLI reports for every fixture.

Without --force the script only writes missing goldens and fails if an
existing one would change.
"""
import argparse
import sys

from ifbases.fixtures import regenerate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--force", action="store_true", help="overwrite goldens that changed")
    args = ap.parse_args()
    try:
        written = regenerate(force=args.force)
    except RuntimeError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)
    print(f"wrote {len(written)} golden file(s)" + (": " + ", ".join(written) if written else ""))


if __name__ == "__main__":
    main()
