"""Tableau-based satisfiability decision procedure with model extraction.

A tableau for a formula is a tree of nodes carrying a formula set and two
weight intervals: one constraining the minimum and one the maximum weight
of incoming transitions.  Boolean rules split conjunctions and negated
conjunctions and drop double negations; once only literals and modal
formulas remain, the modal rule fires, producing one child per minimal
operand of the positive modal formulas, with intervals accumulated from
all modal formulas whose operand is entailed.  The tableau is successful
when a witness subtree exists whose terminal nodes are all consistent;
from such a subtree a finite model is extracted and re-checked against
the input formula.

Semantic entailment between operands is decided by a recursive tableau on
the conjunction of one operand with the negation of the other; the modal
rule strictly lowers modal depth, so the recursion terminates.  Verdicts
do not depend on the order in which rules are applied, and `build_tableau`
accepts an RNG to exercise exactly that.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .formulas import (
    And, AtLeast, AtMost, Atom, Bottom, Formula, Not, Top,
    modal_depth, model_check, print_formula,
)
from .wts import ExtendedBound, NEG_INF, POS_INF, Wts, format_bound

__all__ = [
    "Interval", "TableauNode", "Tableau", "WitnessSubtree", "Sat", "Unsat",
    "Verdict", "ExtractionGapWarning", "entails", "minimal_representatives",
    "mod_children", "build_tableau", "node_consistent", "find_witness",
    "extract_model", "is_satisfiable", "is_valid", "tableau_to_json",
]

RULE_AND = "and"
RULE_NEG_AND = "neg-and"
RULE_NEG_NEG = "neg-neg"
RULE_MOD = "mod"


@dataclass(frozen=True)
class Interval:
    """One interval endpoint pair with open/closed flags.

    An endpoint at -inf is necessarily open on the left, +inf open on the
    right.  The interval is consistent when it is non-empty: lower below
    upper, or equal with both ends closed.
    """

    lower: ExtendedBound
    lower_closed: bool
    upper: ExtendedBound
    upper_closed: bool

    def __post_init__(self):
        if self.lower == NEG_INF and self.lower_closed:
            raise ValueError("interval cannot be closed at -inf")
        if self.upper == POS_INF and self.upper_closed:
            raise ValueError("interval cannot be closed at +inf")

    @property
    def is_consistent(self) -> bool:
        return self.lower < self.upper or (
            self.lower == self.upper and self.lower_closed and self.upper_closed
        )

    def __str__(self):
        left = "[" if self.lower_closed else "("
        right = "]" if self.upper_closed else ")"
        return f"{left}{format_bound(self.lower)},{format_bound(self.upper)}{right}"


def point_zero() -> Interval:
    return Interval(Fraction(0), True, Fraction(0), True)


def _dedup(formulas) -> tuple:
    return tuple(dict.fromkeys(formulas))


class TableauNode:
    """One tableau node: an insertion-ordered formula set, the two weight
    intervals, the rule applied at it (if any) and its children."""

    __slots__ = ("gamma", "min_interval", "max_interval", "rule", "children")

    def __init__(
        self,
        gamma,
        min_interval: Optional[Interval] = None,
        max_interval: Optional[Interval] = None,
        rule: Optional[str] = None,
        children: tuple = (),
    ):
        self.gamma: tuple[Formula, ...] = _dedup(gamma)
        self.min_interval = point_zero() if min_interval is None else min_interval
        self.max_interval = point_zero() if max_interval is None else max_interval
        self.rule = rule
        self.children: tuple[TableauNode, ...] = tuple(children)

    @property
    def kind(self) -> str:
        if self.rule == RULE_MOD:
            return "modal"
        if self.rule is None:
            return "leaf"
        return "interior"

    @property
    def is_terminal(self) -> bool:
        return self.kind in ("leaf", "modal")

    def __repr__(self):
        body = ", ".join(print_formula(f) for f in self.gamma)
        return f"<{{{body}}}, {self.min_interval}, {self.max_interval}>"


@dataclass(frozen=True)
class Tableau:
    root: TableauNode

    @property
    def formula(self) -> Formula:
        return self.root.gamma[0]


def _is_positive_modal(f: Formula) -> bool:
    return isinstance(f, (AtLeast, AtMost))


def _is_negative_modal(f: Formula) -> bool:
    return isinstance(f, Not) and isinstance(f.operand, (AtLeast, AtMost))


def _is_irreducible_plain(f: Formula) -> bool:
    return isinstance(f, (Atom, Top, Bottom)) or (
        isinstance(f, Not) and isinstance(f.operand, (Atom, Top, Bottom))
    )


def _boolean_rule_for(f: Formula) -> Optional[str]:
    if isinstance(f, And):
        return RULE_AND
    if isinstance(f, Not):
        if isinstance(f.operand, Not):
            return RULE_NEG_NEG
        if isinstance(f.operand, And):
            return RULE_NEG_AND
    return None


# Entailment is a property of the formula pair alone, so the memo is
# shared process-wide; concurrent duplicate computation is harmless.
_entailment_cache: dict[tuple[Formula, Formula], bool] = {}


def entails(phi: Formula, psi: Formula) -> bool:
    """Semantic entailment: the conjunction of `phi` with the negation of
    `psi` has no model.  Decided by a recursive tableau and memoized on
    the structural pair."""
    if phi == psi:
        return True
    key = (phi, psi)
    hit = _entailment_cache.get(key)
    if hit is None:
        tableau = build_tableau(And(phi, Not(psi)))
        hit = find_witness(tableau) is None
        _entailment_cache[key] = hit
    return hit


def minimal_representatives(operands) -> list[Formula]:
    """Drop operands that repeat an earlier one up to logical equivalence,
    then drop any operand strictly entailed by another survivor.  Input
    order is preserved."""
    survivors: list[Formula] = []
    for f in operands:
        if not any(entails(f, g) and entails(g, f) for g in survivors):
            survivors.append(f)
    return [
        f
        for i, f in enumerate(survivors)
        if not any(j != i and entails(g, f) for j, g in enumerate(survivors))
    ]


def _mod_child_specs(gamma) -> list[tuple[Formula, Interval, Interval]]:
    """The modal rule: one (operand, min-interval, max-interval) triple per
    minimal representative of the positive modal operands."""
    positives = []
    negatives = []
    for f in gamma:
        if _is_positive_modal(f):
            positives.append(f)
        elif _is_negative_modal(f):
            negatives.append(f.operand)
        elif not _is_irreducible_plain(f):
            raise ValueError(f"a boolean rule still applies to {print_formula(f)!r}")
    if not positives and not negatives:
        return []
    node_md = max(modal_depth(f) for f in itertools.chain(positives, negatives))
    operands = [f.operand for f in positives]
    # recursion guard: entailment queries stay strictly below this node's depth
    assert all(modal_depth(op) < node_md for op in operands)
    assert all(modal_depth(g.operand) < node_md for g in negatives)

    specs = []
    for psi in minimal_representatives(operands):
        lower_pos = [f.bound for f in positives
                     if isinstance(f, AtLeast) and entails(psi, f.operand)]
        upper_pos = [f.bound for f in positives
                     if isinstance(f, AtMost) and entails(psi, f.operand)]
        lower_neg = [g.bound for g in negatives
                     if isinstance(g, AtLeast) and entails(psi, g.operand)]
        upper_neg = [g.bound for g in negatives
                     if isinstance(g, AtMost) and entails(psi, g.operand)]
        min_itv = Interval(
            max(lower_pos) if lower_pos else Fraction(0), True,
            min(lower_neg) if lower_neg else POS_INF, False,
        )
        max_itv = Interval(
            max(upper_neg) if upper_neg else Fraction(0), not upper_neg,
            min(upper_pos) if upper_pos else POS_INF, bool(upper_pos),
        )
        specs.append((psi, min_itv, max_itv))
    return specs


def mod_children(node: TableauNode, rng=None) -> list[TableauNode]:
    """Children produced by the modal rule at `node` (fully expanded).

    Raises ValueError when a boolean rule still applies to the node.
    """
    return [
        _expand((psi,), min_itv, max_itv, rng)
        for psi, min_itv, max_itv in _mod_child_specs(node.gamma)
    ]


def _pick_boolean(gamma, rng) -> Optional[tuple[int, str]]:
    candidates = []
    for i, f in enumerate(gamma):
        rule = _boolean_rule_for(f)
        if rule is not None:
            candidates.append((i, rule))
    if not candidates:
        return None
    if rng is not None:
        return candidates[rng.randrange(len(candidates))]
    for wanted in (RULE_AND, RULE_NEG_NEG, RULE_NEG_AND):
        for i, rule in candidates:
            if rule == wanted:
                return i, rule
    raise AssertionError("unreachable")


def _replace_at(gamma, index, replacements) -> tuple:
    out = []
    for i, f in enumerate(gamma):
        if i == index:
            out.extend(replacements)
        else:
            out.append(f)
    return _dedup(out)


def _expand(gamma, min_itv: Interval, max_itv: Interval, rng) -> TableauNode:
    gamma = _dedup(gamma)
    pick = _pick_boolean(gamma, rng)
    if pick is not None:
        index, rule = pick
        f = gamma[index]
        if rule == RULE_AND:
            child = _expand(_replace_at(gamma, index, (f.left, f.right)),
                            min_itv, max_itv, rng)
            children = (child,)
        elif rule == RULE_NEG_NEG:
            child = _expand(_replace_at(gamma, index, (f.operand.operand,)),
                            min_itv, max_itv, rng)
            children = (child,)
        else:
            inner = f.operand
            first = _expand(_replace_at(gamma, index, (Not(inner.left),)),
                            min_itv, max_itv, rng)
            second = _expand(_replace_at(gamma, index, (Not(inner.right),)),
                             min_itv, max_itv, rng)
            children = (first, second)
            if rng is not None and rng.random() < 0.5:
                children = (second, first)
        return TableauNode(gamma, min_itv, max_itv, rule, children)
    if any(_is_positive_modal(f) or _is_negative_modal(f) for f in gamma):
        children = tuple(
            _expand((psi,), child_min, child_max, rng)
            for psi, child_min, child_max in _mod_child_specs(gamma)
        )
        return TableauNode(gamma, min_itv, max_itv, RULE_MOD, children)
    return TableauNode(gamma, min_itv, max_itv, None, ())


def build_tableau(phi: Formula, rng=None) -> Tableau:
    """Exhaustively apply the rules starting from <{phi}, [0,0], [0,0]>.

    With an RNG, the choice of reducible formula and the order of
    negated-conjunction branches are randomized; the verdict is the same
    either way.
    """
    return Tableau(_expand((phi,), point_zero(), point_zero(), rng))


def node_consistent(node: TableauNode) -> bool:
    """No clashing literals or falsum, both intervals non-empty, and the
    least possible minimum weight not above the greatest possible maximum."""
    pos = set()
    neg = set()
    for f in node.gamma:
        if isinstance(f, Bottom):
            return False
        if isinstance(f, Atom):
            pos.add(f.name)
        elif isinstance(f, Not):
            if isinstance(f.operand, Top):
                return False
            if isinstance(f.operand, Atom):
                neg.add(f.operand.name)
    if pos & neg:
        return False
    if not node.min_interval.is_consistent or not node.max_interval.is_consistent:
        return False
    a, d = node.min_interval.lower, node.max_interval.upper
    return a < d or (
        a == d and node.min_interval.lower_closed and node.max_interval.upper_closed
    )


class WitnessSubtree:
    """The subtree certifying success: every included terminal node is
    consistent, modal nodes keep all their children, and branching nodes
    keep their leftmost good child."""

    def __init__(self, root: TableauNode, chosen: dict):
        self.root = root
        self._chosen = chosen

    def included_children(self, node: TableauNode) -> tuple[TableauNode, ...]:
        return self._chosen[id(node)]


def _good(node: TableauNode, chosen: dict) -> bool:
    kind = node.kind
    if kind == "leaf":
        if not node_consistent(node):
            return False
        chosen[id(node)] = ()
        return True
    if kind == "modal":
        if not node_consistent(node):
            return False
        if not all(_good(child, chosen) for child in node.children):
            return False
        chosen[id(node)] = node.children
        return True
    if node.rule == RULE_NEG_AND:
        for child in node.children:
            if _good(child, chosen):
                chosen[id(node)] = (child,)
                return True
        return False
    child = node.children[0]
    if _good(child, chosen):
        chosen[id(node)] = (child,)
        return True
    return False


def find_witness(tableau: Tableau) -> Optional[WitnessSubtree]:
    chosen: dict = {}
    if _good(tableau.root, chosen):
        return WitnessSubtree(tableau.root, chosen)
    return None


class ExtractionGapWarning(UserWarning):
    """A model extracted from a successful tableau failed verification."""

    def __init__(self, formula: Formula, model: Wts, state: str):
        super().__init__(
            f"extracted model fails at {state}: {print_formula(formula)}"
        )
        self.formula = formula
        self.model = model
        self.state = state


def extract_model(witness: WitnessSubtree) -> tuple[Wts, str, bool]:
    """Walk the witness subtree, turning modal nodes into transitions.

    Each modal child contributes a fresh state reached by the least weight
    its min-interval allows and by a weight inside its max-interval (the
    midpoint, or one above the left end when unbounded); positive atoms at
    terminal nodes become labels.  The result is re-checked against the
    root formula; on failure an ExtractionGapWarning is emitted (the
    verdict still stands, the constructed model just is not a witness).
    """
    counter = itertools.count()
    root_state = f"s{next(counter)}"
    labels: dict[str, set] = {root_state: set()}
    transitions = []
    stack = [(root_state, witness.root)]
    while stack:
        state, node = stack.pop()
        if not node.is_terminal:
            stack.append((state, witness.included_children(node)[0]))
            continue
        labels[state].update(
            f.name for f in node.gamma if isinstance(f, Atom)
        )
        if node.kind == "modal":
            for child in witness.included_children(node):
                a = child.min_interval.lower
                assert isinstance(a, Fraction) and child.min_interval.lower_closed
                c = child.max_interval.lower
                d = child.max_interval.upper
                x = a
                if d == POS_INF:
                    y = max(a, c + 1)
                else:
                    y = max(a, (d - c) / 2 + c)
                fresh = f"s{next(counter)}"
                labels[fresh] = set()
                transitions.append((state, x, fresh))
                transitions.append((state, y, fresh))
                stack.append((fresh, child))
    model = Wts(labels.keys(), labels, transitions)
    verified = all(model_check(model, root_state, f) for f in witness.root.gamma)
    if not verified:
        warnings.warn(
            ExtractionGapWarning(witness.root.gamma[0], model, root_state),
            stacklevel=2,
        )
    return model, root_state, verified


@dataclass(frozen=True)
class Sat:
    model: Wts
    state: str
    verified: bool


@dataclass(frozen=True)
class Unsat:
    pass


Verdict = Union[Sat, Unsat]


def is_satisfiable(phi: Formula, rng=None) -> Verdict:
    """Build one tableau and search one witness; on success the verdict
    carries the extracted model and its verification outcome."""
    witness = find_witness(build_tableau(phi, rng))
    if witness is None:
        return Unsat()
    model, state, verified = extract_model(witness)
    return Sat(model, state, verified)


def is_valid(phi: Formula) -> bool:
    """True iff the negation has no model."""
    return isinstance(is_satisfiable(Not(phi)), Unsat)


def _interval_json(itv: Interval) -> dict:
    return {
        "lower": format_bound(itv.lower),
        "lower_closed": itv.lower_closed,
        "upper": format_bound(itv.upper),
        "upper_closed": itv.upper_closed,
    }


def _node_json(node: TableauNode) -> dict:
    return {
        "gamma": [print_formula(f) for f in node.gamma],
        "min_interval": _interval_json(node.min_interval),
        "max_interval": _interval_json(node.max_interval),
        "kind": node.kind,
        "rule": node.rule,
        "children": [_node_json(child) for child in node.children],
    }


def tableau_to_json(tableau: Tableau) -> dict:
    """JSON tree with printed formula sets, interval endpoints as strings
    ("-inf", "17/3", "inf") with open/closed flags, node kind and rule."""
    return _node_json(tableau.root)
