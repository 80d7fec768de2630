"""Sequents, logic configurations, cut-free rules, and the proof checker.

Sequent sides are multisets (exchange is implicit): both sides are stored as
canonically sorted tuples, so equality and hashing follow multiset semantics.

The rule set is the two-sided additive/multiplicative fragment plus the
primitive rules for ``@`` (right formation, left reflection) and their exact
mirror images for ``$``, with weakening and contraction available as toggles.
Axioms are literal-only; compound identity is derivable, not axiomatic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .formulas import (
    Binary,
    Conn,
    Formula,
    dual,
    is_literal,
    size as formula_size,
    sort_key,
)

# ---------------------------------------------------------------------------
# sequents


def _canon(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(formulas, key=sort_key))


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple[Formula, ...]
    succedent: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "antecedent", _canon(self.antecedent))
        object.__setattr__(self, "succedent", _canon(self.succedent))

    @classmethod
    def of(cls, antecedent: Iterable[Formula], succedent: Iterable[Formula]) -> "Sequent":
        return cls(tuple(antecedent), tuple(succedent))

    def size(self) -> int:
        return sum(formula_size(f) for f in self.antecedent + self.succedent)

    def contains_conn(self, *conns: Conn) -> bool:
        def has(f: Formula) -> bool:
            return isinstance(f, Binary) and (f.conn in conns or has(f.left) or has(f.right))

        return any(has(f) for f in self.antecedent + self.succedent)

    def __str__(self) -> str:
        from .syntax import print_sequent

        return print_sequent(self)


def dual_sequent(s: Sequent) -> Sequent:
    """Swap sides and dualize every formula."""
    return Sequent.of((dual(f) for f in s.succedent), (dual(f) for f in s.antecedent))


def _remove_one(side: tuple[Formula, ...], f: Formula) -> tuple[Formula, ...]:
    out = list(side)
    out.remove(f)
    return tuple(out)


def _union(*sides: tuple[Formula, ...]) -> tuple[Formula, ...]:
    merged: list[Formula] = []
    for side in sides:
        merged.extend(side)
    return _canon(merged)


def _submultisets(side: tuple[Formula, ...]) -> Iterator[tuple[tuple[Formula, ...], tuple[Formula, ...]]]:
    """All (part, rest) splits of a multiset, deterministically ordered."""
    distinct: list[Formula] = list(dict.fromkeys(side))
    mults = [side.count(f) for f in distinct]
    for counts in itertools.product(*(range(m + 1) for m in mults)):
        part: list[Formula] = []
        rest: list[Formula] = []
        for f, m, k in zip(distinct, mults, counts):
            part.extend([f] * k)
            rest.extend([f] * (m - k))
        yield tuple(part), tuple(rest)


# ---------------------------------------------------------------------------
# configurations


AT_PRIMITIVE = "primitive"
AT_EXPAND = "expand"

PRESETS = ("basic", "linear", "classical")


@dataclass(frozen=True)
class LogicConfig:
    weakening: bool = False
    contraction: bool = False
    at_mode: str = AT_EXPAND
    allow_ent: bool = True
    preset_name: Optional[str] = None

    def __post_init__(self):
        if self.at_mode not in (AT_PRIMITIVE, AT_EXPAND):
            raise ValueError(f"unknown at_mode: {self.at_mode!r}")

    @classmethod
    def preset(cls, name: str, at_mode: str = AT_EXPAND) -> "LogicConfig":
        if name == "basic":
            return cls(False, False, at_mode, True, "basic")
        if name == "linear":
            return cls(False, False, at_mode, False, "linear")
        if name == "classical":
            return cls(True, True, at_mode, True, "classical")
        raise ValueError(f"unknown preset: {name!r}")

    def rule_enabled(self, rule: str) -> bool:
        if rule in (R_WEAK_L, R_WEAK_R):
            return self.weakening
        if rule in (R_CONTR_L, R_CONTR_R):
            return self.contraction
        if rule in (R_ENT_FORM, R_ENT_EXPLREFL, R_SEC_FORM, R_SEC_EXPLREFL):
            return self.allow_ent
        return True

    def describe(self) -> str:
        if self.preset_name:
            return self.preset_name
        parts = []
        parts.append("weakening" if self.weakening else "no-weakening")
        parts.append("contraction" if self.contraction else "no-contraction")
        return "+".join(parts)


# ---------------------------------------------------------------------------
# rules


R_AXIOM = "axiom"
R_WITH_R = "&R"
R_WITH_L1 = "&L1"
R_WITH_L2 = "&L2"
R_PLUS_R1 = "|R1"
R_PLUS_R2 = "|R2"
R_PLUS_L = "|L"
R_TIMES_R = "*R"
R_TIMES_L = "*L"
R_PAR_R = "parR"
R_PAR_L = "parL"
R_ENT_FORM = "@-form"
R_ENT_EXPLREFL = "@-explrefl"
R_SEC_FORM = "$-form"
R_SEC_EXPLREFL = "$-explrefl"
R_WEAK_L = "weak-L"
R_WEAK_R = "weak-R"
R_CONTR_L = "contr-L"
R_CONTR_R = "contr-R"

ALL_RULES = (
    R_AXIOM,
    R_WITH_R,
    R_WITH_L1,
    R_WITH_L2,
    R_PLUS_R1,
    R_PLUS_R2,
    R_PLUS_L,
    R_TIMES_R,
    R_TIMES_L,
    R_PAR_R,
    R_PAR_L,
    R_ENT_FORM,
    R_ENT_EXPLREFL,
    R_SEC_FORM,
    R_SEC_EXPLREFL,
    R_WEAK_L,
    R_WEAK_R,
    R_CONTR_L,
    R_CONTR_R,
)

# Deterministic attempt order: axiom, then structural, then the remaining
# non-splitting rules, then the context-splitting rules.  Only the axiom /
# non-splitting / splitting grouping is contractual; the placement of the
# structural block reproduces the golden derivations exactly.
RULE_ORDER = (
    R_AXIOM,
    R_WEAK_L,
    R_WEAK_R,
    R_CONTR_L,
    R_CONTR_R,
    R_WITH_R,
    R_WITH_L1,
    R_WITH_L2,
    R_PLUS_R1,
    R_PLUS_R2,
    R_PLUS_L,
    R_TIMES_L,
    R_PAR_R,
    R_ENT_FORM,
    R_SEC_FORM,
    R_TIMES_R,
    R_PAR_L,
    R_ENT_EXPLREFL,
    R_SEC_EXPLREFL,
)

_DUAL_RULE = {
    R_AXIOM: R_AXIOM,
    R_WITH_R: R_PLUS_L,
    R_WITH_L1: R_PLUS_R1,
    R_WITH_L2: R_PLUS_R2,
    R_PLUS_L: R_WITH_R,
    R_PLUS_R1: R_WITH_L1,
    R_PLUS_R2: R_WITH_L2,
    R_TIMES_R: R_PAR_L,
    R_TIMES_L: R_PAR_R,
    R_PAR_L: R_TIMES_R,
    R_PAR_R: R_TIMES_L,
    R_ENT_FORM: R_SEC_FORM,
    R_ENT_EXPLREFL: R_SEC_EXPLREFL,
    R_SEC_FORM: R_ENT_FORM,
    R_SEC_EXPLREFL: R_ENT_EXPLREFL,
    R_WEAK_L: R_WEAK_R,
    R_WEAK_R: R_WEAK_L,
    R_CONTR_L: R_CONTR_R,
    R_CONTR_R: R_CONTR_L,
}


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    conclusion: Sequent
    premises: tuple[Sequent, ...]
    principal: Optional[Formula] = None


@dataclass(frozen=True)
class ProofTree:
    node: RuleInstance
    children: tuple["ProofTree", ...] = ()

    @property
    def conclusion(self) -> Sequent:
        return self.node.conclusion

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)

    def iter_nodes(self) -> Iterator["ProofTree"]:
        yield self
        for child in self.children:
            yield from child.iter_nodes()

    def __str__(self) -> str:
        from .syntax import print_proof

        return print_proof(self, "text")


def axiom_check(s: Sequent) -> bool:
    """Literal identity only; compound identity must be derived."""
    return (
        len(s.antecedent) == 1
        and len(s.succedent) == 1
        and s.antecedent[0] == s.succedent[0]
        and is_literal(s.antecedent[0])
    )


def _distinct(side: tuple[Formula, ...]) -> list[Formula]:
    return list(dict.fromkeys(side))


def _instances_for(rule: str, s: Sequent, cfg: LogicConfig) -> Iterator[RuleInstance]:
    ante, succ = s.antecedent, s.succedent

    if rule == R_AXIOM:
        if axiom_check(s):
            yield RuleInstance(rule, s, (), s.antecedent[0])
        return

    if rule == R_WEAK_L:
        for f in _distinct(ante):
            yield RuleInstance(rule, s, (Sequent(_remove_one(ante, f), succ),), f)
        return
    if rule == R_WEAK_R:
        for f in _distinct(succ):
            yield RuleInstance(rule, s, (Sequent(ante, _remove_one(succ, f)),), f)
        return
    if rule == R_CONTR_L:
        for f in _distinct(ante):
            yield RuleInstance(rule, s, (Sequent(_union(ante, (f,)), succ),), f)
        return
    if rule == R_CONTR_R:
        for f in _distinct(succ):
            yield RuleInstance(rule, s, (Sequent(ante, _union(succ, (f,))),), f)
        return

    if rule == R_WITH_R:
        for f in _distinct(succ):
            if isinstance(f, Binary) and f.conn is Conn.WITH:
                rest = _remove_one(succ, f)
                yield RuleInstance(
                    rule,
                    s,
                    (Sequent(ante, _union(rest, (f.left,))), Sequent(ante, _union(rest, (f.right,)))),
                    f,
                )
        return
    if rule in (R_WITH_L1, R_WITH_L2):
        for f in _distinct(ante):
            if isinstance(f, Binary) and f.conn is Conn.WITH:
                sub = f.left if rule == R_WITH_L1 else f.right
                yield RuleInstance(
                    rule, s, (Sequent(_union(_remove_one(ante, f), (sub,)), succ),), f
                )
        return
    if rule == R_PLUS_L:
        for f in _distinct(ante):
            if isinstance(f, Binary) and f.conn is Conn.PLUS:
                rest = _remove_one(ante, f)
                yield RuleInstance(
                    rule,
                    s,
                    (Sequent(_union(rest, (f.left,)), succ), Sequent(_union(rest, (f.right,)), succ)),
                    f,
                )
        return
    if rule in (R_PLUS_R1, R_PLUS_R2):
        for f in _distinct(succ):
            if isinstance(f, Binary) and f.conn is Conn.PLUS:
                sub = f.left if rule == R_PLUS_R1 else f.right
                yield RuleInstance(
                    rule, s, (Sequent(ante, _union(_remove_one(succ, f), (sub,))),), f
                )
        return

    if rule == R_TIMES_L:
        for f in _distinct(ante):
            if isinstance(f, Binary) and f.conn is Conn.TIMES:
                yield RuleInstance(
                    rule,
                    s,
                    (Sequent(_union(_remove_one(ante, f), (f.left, f.right)), succ),),
                    f,
                )
        return
    if rule == R_PAR_R:
        for f in _distinct(succ):
            if isinstance(f, Binary) and f.conn is Conn.PAR:
                yield RuleInstance(
                    rule,
                    s,
                    (Sequent(ante, _union(_remove_one(succ, f), (f.left, f.right))),),
                    f,
                )
        return
    if rule == R_ENT_FORM:
        for f in _distinct(succ):
            if isinstance(f, Binary) and f.conn is Conn.ENT:
                yield RuleInstance(
                    rule,
                    s,
                    (Sequent(ante, _union(_remove_one(succ, f), (f.left, f.right))),),
                    f,
                )
        return
    if rule == R_SEC_FORM:
        for f in _distinct(ante):
            if isinstance(f, Binary) and f.conn is Conn.SEC:
                yield RuleInstance(
                    rule,
                    s,
                    (Sequent(_union(_remove_one(ante, f), (f.left, f.right)), succ),),
                    f,
                )
        return

    if rule in (R_TIMES_R, R_SEC_EXPLREFL):
        conn = Conn.TIMES if rule == R_TIMES_R else Conn.SEC
        for f in _distinct(succ):
            if isinstance(f, Binary) and f.conn is conn:
                rest_succ = _remove_one(succ, f)
                for a1, a2 in _submultisets(ante):
                    for s1, s2 in _submultisets(rest_succ):
                        yield RuleInstance(
                            rule,
                            s,
                            (
                                Sequent(a1, _union(s1, (f.left,))),
                                Sequent(a2, _union(s2, (f.right,))),
                            ),
                            f,
                        )
        return
    if rule in (R_PAR_L, R_ENT_EXPLREFL):
        conn = Conn.PAR if rule == R_PAR_L else Conn.ENT
        for f in _distinct(ante):
            if isinstance(f, Binary) and f.conn is conn:
                rest_ante = _remove_one(ante, f)
                for a1, a2 in _submultisets(rest_ante):
                    for s1, s2 in _submultisets(succ):
                        yield RuleInstance(
                            rule,
                            s,
                            (
                                Sequent(_union(a1, (f.left,)), s1),
                                Sequent(_union(a2, (f.right,)), s2),
                            ),
                            f,
                        )
        return

    raise ValueError(f"unknown rule: {rule!r}")


def rule_instances(s: Sequent, cfg: LogicConfig) -> list[RuleInstance]:
    """Every backward-applicable instance with conclusion ``s``.

    Principal choices and, for the context-splitting rules, all multiset
    partitions of the side contexts are enumerated in a fixed order.
    """
    out: list[RuleInstance] = []
    for rule in RULE_ORDER:
        if not cfg.rule_enabled(rule):
            continue
        out.extend(_instances_for(rule, s, cfg))
    return out


# ---------------------------------------------------------------------------
# checking


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _match_principal(side: tuple[Formula, ...], conn: Conn, recorded: Optional[Formula]) -> list[Binary]:
    found = [f for f in _distinct(side) if isinstance(f, Binary) and f.conn is conn]
    if recorded is not None:
        found = [f for f in found if f == recorded]
    return found


def _instance_ok(inst: RuleInstance, cfg: LogicConfig) -> Optional[str]:
    """None when valid, else a reason string.  Validation is independent of
    the enumeration in :func:`rule_instances`: it solves multiset equations
    instead of replaying the search's split generation."""
    rule, c, prem, recorded = inst.rule, inst.conclusion, inst.premises, inst.principal
    if rule not in ALL_RULES:
        return f"unknown rule {rule!r}"
    if not cfg.rule_enabled(rule):
        return f"rule {rule} not enabled by this configuration"

    def arity(n: int) -> Optional[str]:
        if len(prem) != n:
            return f"rule {rule} takes {n} premise(s), got {len(prem)}"
        return None

    if rule == R_AXIOM:
        if err := arity(0):
            return err
        if not axiom_check(c):
            return "axiom must be a literal identity"
        if recorded is not None and recorded != c.antecedent[0]:
            return "recorded principal does not match the axiom literal"
        return None

    if rule in (R_WEAK_L, R_WEAK_R, R_CONTR_L, R_CONTR_R):
        if err := arity(1):
            return err
        p = prem[0]
        if rule == R_WEAK_L:
            same, delta, grown = c.succedent == p.succedent, c.antecedent, p.antecedent
        elif rule == R_WEAK_R:
            same, delta, grown = c.antecedent == p.antecedent, c.succedent, p.succedent
        elif rule == R_CONTR_L:
            same, delta, grown = c.succedent == p.succedent, p.antecedent, c.antecedent
        else:
            same, delta, grown = c.antecedent == p.antecedent, p.succedent, c.succedent
        # delta must equal grown plus exactly one formula
        if not same or len(delta) != len(grown) + 1:
            return f"premise of {rule} must differ by exactly one formula"
        extra = list(delta)
        for f in grown:
            if f in extra:
                extra.remove(f)
            else:
                return f"premise of {rule} is not a sub-multiset"
        f = extra[0]
        if rule in (R_CONTR_L, R_CONTR_R) and f not in grown:
            return "contraction must duplicate a formula already present"
        if recorded is not None and recorded != f:
            return "recorded principal does not match"
        return None

    def one_premise_rewrite(side_of, other_of, conn: Conn, subs) -> Optional[str]:
        if err := arity(1):
            return err
        p = prem[0]
        if other_of(c) != other_of(p):
            return f"{rule}: passive side must be unchanged"
        for f in _match_principal(side_of(c), conn, recorded):
            expected = _union(_remove_one(side_of(c), f), tuple(subs(f)))
            if side_of(p) == expected:
                return None
        return f"{rule}: no principal formula matches the premise"

    ante_of = lambda q: q.antecedent
    succ_of = lambda q: q.succedent

    if rule == R_WITH_L1:
        return one_premise_rewrite(ante_of, succ_of, Conn.WITH, lambda f: (f.left,))
    if rule == R_WITH_L2:
        return one_premise_rewrite(ante_of, succ_of, Conn.WITH, lambda f: (f.right,))
    if rule == R_PLUS_R1:
        return one_premise_rewrite(succ_of, ante_of, Conn.PLUS, lambda f: (f.left,))
    if rule == R_PLUS_R2:
        return one_premise_rewrite(succ_of, ante_of, Conn.PLUS, lambda f: (f.right,))
    if rule == R_TIMES_L:
        return one_premise_rewrite(ante_of, succ_of, Conn.TIMES, lambda f: (f.left, f.right))
    if rule == R_PAR_R:
        return one_premise_rewrite(succ_of, ante_of, Conn.PAR, lambda f: (f.left, f.right))
    if rule == R_ENT_FORM:
        return one_premise_rewrite(succ_of, ante_of, Conn.ENT, lambda f: (f.left, f.right))
    if rule == R_SEC_FORM:
        return one_premise_rewrite(ante_of, succ_of, Conn.SEC, lambda f: (f.left, f.right))

    if rule in (R_WITH_R, R_PLUS_L):
        if err := arity(2):
            return err
        p1, p2 = prem
        conn = Conn.WITH if rule == R_WITH_R else Conn.PLUS
        active_of, passive_of = (succ_of, ante_of) if rule == R_WITH_R else (ante_of, succ_of)
        if passive_of(p1) != passive_of(c) or passive_of(p2) != passive_of(c):
            return f"{rule}: shared context must be unchanged"
        for f in _match_principal(active_of(c), conn, recorded):
            rest = _remove_one(active_of(c), f)
            if active_of(p1) == _union(rest, (f.left,)) and active_of(p2) == _union(rest, (f.right,)):
                return None
        return f"{rule}: premises do not match any principal formula"

    if rule in (R_TIMES_R, R_SEC_EXPLREFL, R_PAR_L, R_ENT_EXPLREFL):
        if err := arity(2):
            return err
        p1, p2 = prem
        conn = {R_TIMES_R: Conn.TIMES, R_SEC_EXPLREFL: Conn.SEC, R_PAR_L: Conn.PAR, R_ENT_EXPLREFL: Conn.ENT}[rule]
        right_side = rule in (R_TIMES_R, R_SEC_EXPLREFL)
        active_of, passive_of = (succ_of, ante_of) if right_side else (ante_of, succ_of)
        for f in _match_principal(active_of(c), conn, recorded):
            if f.left not in active_of(p1) or f.right not in active_of(p2):
                continue
            split_ok = _union(
                _remove_one(active_of(p1), f.left), _remove_one(active_of(p2), f.right)
            ) == _remove_one(active_of(c), f)
            passive_ok = _union(passive_of(p1), passive_of(p2)) == passive_of(c)
            if split_ok and passive_ok:
                return None
        return f"{rule}: premises do not split the context of any principal formula"

    return f"unhandled rule {rule!r}"


def check_proof(p: ProofTree, cfg: LogicConfig) -> CheckResult:
    """Validate every node against the enabled rule schemas.

    The verdict is truthy/falsy; on failure the result carries the child-index
    path to the first offending node and a reason.
    """

    def walk(node: ProofTree, path: tuple[int, ...]) -> CheckResult:
        reason = _instance_ok(node.node, cfg)
        if reason is not None:
            return CheckResult(False, path, reason)
        if len(node.children) != len(node.node.premises):
            return CheckResult(False, path, "children do not match premises")
        for i, (child, premise) in enumerate(zip(node.children, node.node.premises)):
            if child.node.conclusion != premise:
                return CheckResult(False, path + (i,), "child conclusion differs from premise")
            result = walk(child, path + (i,))
            if not result:
                return result
        return CheckResult(True)

    return walk(p, ())


def dualize_proof(p: ProofTree) -> ProofTree:
    """Mechanical dual: swap sides, dualize formulas, mirror rule labels."""
    inst = p.node
    dual_inst = RuleInstance(
        rule=_DUAL_RULE[inst.rule],
        conclusion=dual_sequent(inst.conclusion),
        premises=tuple(dual_sequent(q) for q in inst.premises),
        principal=dual(inst.principal) if inst.principal is not None else None,
    )
    return ProofTree(dual_inst, tuple(dualize_proof(c) for c in p.children))
