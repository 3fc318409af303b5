"""Rewrite tests/golden/*.out from the current CLI output.

Review the diff before committing: goldens are the CLI's output contract.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from tests.cli_cases import CASES, GOLDEN, run  # noqa: E402


def main() -> int:
    GOLDEN.mkdir(exist_ok=True)
    for name, (argv, expected) in CASES.items():
        code, text = run(argv)
        if code != expected:
            print(f"{name}: exit {code}, expected {expected}", file=sys.stderr)
        (GOLDEN / f"{name}.out").write_text(text, encoding="utf-8")
        print(f"wrote {name}.out")
    return 0


if __name__ == "__main__":
    sys.exit(main())
