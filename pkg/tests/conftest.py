from __future__ import annotations

import pytest

from entlogic.kernel import LogicConfig, ProofTree
from entlogic.search import SearchLimits, prove
from entlogic.syntax import parse_sequent

BASIC = LogicConfig.preset("basic", at_mode="primitive")
BASIC_EXPAND = LogicConfig.preset("basic", at_mode="expand")
LINEAR = LogicConfig.preset("linear", at_mode="expand")
CLASSICAL = LogicConfig.preset("classical", at_mode="primitive")
CLASSICAL_EXPAND = LogicConfig.preset("classical", at_mode="expand")

WEAK_ONLY = LogicConfig(weakening=True, contraction=False, at_mode="primitive")
CONTR_ONLY = LogicConfig(weakening=False, contraction=True, at_mode="primitive")


def proved(text: str, cfg: LogicConfig, limits: SearchLimits | None = None) -> ProofTree:
    result = prove(parse_sequent(text), cfg, limits)
    assert result.is_provable, f"expected a proof of {text} under {cfg.describe()}"
    return result.proof


@pytest.fixture(scope="session")
def golden_proofs() -> list[tuple[ProofTree, LogicConfig]]:
    """Known-good derivations across the rule repertoire, with their configs."""
    goldens = [
        (proved("Q(A) |- Q(A)@Q(A)", CLASSICAL), CLASSICAL),
        (proved("Q(A)@Q(A) |- Q(A)", CLASSICAL), CLASSICAL),
        (proved("X & X |- X", BASIC), BASIC),
        (proved("X |- X & X", BASIC), BASIC),
        (proved("X | X |- X", BASIC), BASIC),
        (proved("(A | A) & (~A | ~A) |- Q(A)", BASIC), BASIC),
        (proved("Q(A) |- (A | A) & (~A | ~A)", BASIC), BASIC),
        (proved("A |- A par A", WEAK_ONLY), WEAK_ONLY),
        (proved("A par A |- A", CONTR_ONLY), CONTR_ONLY),
        (proved("A * A |- A", WEAK_ONLY), WEAK_ONLY),
        (proved("A |- A * A", CONTR_ONLY), CONTR_ONLY),
        (proved("Q(A)@Q(A) |- Q(A), Q(A)", BASIC), BASIC),
        (proved("Q(A), Q(A) |- Q(A)$Q(A)", BASIC), BASIC),
        (proved("Q(A)$Q(A) |- Q(A) * Q(A)", BASIC), BASIC),
    ]
    return goldens
