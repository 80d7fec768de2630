#!/usr/bin/env python3
"""Print the full connective x preset self-reference matrix."""

import argparse
import json

from entlogic.selfref import matrix_row_to_dict, matrix_to_text, report_matrix


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--at-mode", choices=("primitive", "expand"), default="expand")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    args = parser.parse_args()

    rows = report_matrix(at_mode=args.at_mode)
    if args.format == "json":
        print(json.dumps([matrix_row_to_dict(r) for r in rows], indent=2, sort_keys=True))
    else:
        print(matrix_to_text(rows))


if __name__ == "__main__":
    main()
