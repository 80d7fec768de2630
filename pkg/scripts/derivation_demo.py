#!/usr/bin/env python3
"""Run the flagship self-entanglement sequents under each preset and print
the verdicts, with full derivations where one exists."""

import argparse

from entlogic.kernel import LogicConfig
from entlogic.search import prove
from entlogic.syntax import parse_sequent, print_proof

GOALS = ("Q(A)@Q(A) |- Q(A)", "Q(A) |- Q(A)@Q(A)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--at-mode", choices=("primitive", "expand"), default="primitive")
    args = parser.parse_args()

    for text in GOALS:
        goal = parse_sequent(text)
        print(f"=== {text} ===")
        for preset in ("basic", "classical"):
            cfg = LogicConfig.preset(preset, at_mode=args.at_mode)
            result = prove(goal, cfg)
            print(f"[{preset}] {result.verdict} "
                  f"(nodes={result.stats.nodes_expanded}, depth={result.stats.max_depth})")
            if result.proof is not None:
                print(print_proof(result.proof, "text"))
        print()


if __name__ == "__main__":
    main()
