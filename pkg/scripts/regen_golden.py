"""Rewrite the expected output of every CLI golden case.

Each case is ``NAME.args`` (one shell-quoted command line) next to
``NAME.expected`` (exit code, stdout, stderr).  New cases can be added as
``NAME|args`` lines on stdin.  Review the diff before committing.
"""
import argparse
import os
import shlex
import sys
from pathlib import Path

from totmonoid.cli import run

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def expected_text(args: str) -> str:
    code, out, err = run(shlex.split(args))
    return f"exit {code}\n--- stdout\n{out}--- stderr\n{err}"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--add", action="store_true", help="read NAME|args lines from stdin first")
    opts = parser.parse_args()
    os.environ["COLUMNS"] = "80"
    os.chdir(GOLDEN)
    if opts.add:
        for line in sys.stdin:
            if line.strip():
                name, args = line.rstrip("\n").split("|", 1)
                (GOLDEN / f"{name}.args").write_text(args + "\n", encoding="utf-8")
    for case in sorted(GOLDEN.glob("*.args")):
        args = case.read_text(encoding="utf-8").strip()
        case.with_suffix(".expected").write_text(expected_text(args), encoding="utf-8")
        print(case.stem)


if __name__ == "__main__":
    main()
