"""Executable soundness suite for the bound-logic proof system.

Every schema of the system is instantiated with random formulas, indices
and models, and checked to hold at all states.  Inference rules are
checked as validity preservation on a single model: whenever the premise
holds everywhere, the conclusion must too.  A deliberately unsound
control schema is included; the suite is expected to find countermodels
for it and none for the rest.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .formulas import (
    And, AtLeast, AtMost, Bottom, Formula, Not,
    iff, implies, lor, print_formula, random_formula, sat_set,
)
from .wts import Wts, as_weight, random_wts, serialize_wts

__all__ = [
    "Schema", "SCHEMAS", "SideConditionError", "instantiate", "premise_of",
    "holds_everywhere", "SchemaReport", "SuiteReport", "run_suite",
    "DEFAULT_INDEX_POOL",
]

DEFAULT_INDEX_POOL = (
    Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3),
)


class SideConditionError(ValueError):
    """Schema instantiated against its side condition."""


@dataclass(frozen=True)
class Schema:
    """One schema: how many formula/index slots it takes, its side
    condition, whether it is a rule (premise-guarded), and whether it is
    expected to be sound."""

    name: str
    formula_slots: int
    index_slots: int
    positive_q: bool = False
    conclusion: Optional[Callable] = None
    premise: Optional[Callable] = None
    sound: bool = True


_TABLE = [
    Schema("A1", 0, 0, conclusion=lambda: Not(AtLeast(0, Bottom()))),
    Schema("A2", 1, 2, positive_q=True,
           conclusion=lambda p, r, q: implies(AtLeast(r + q, p), AtLeast(r, p))),
    Schema("A2'", 1, 2, positive_q=True,
           conclusion=lambda p, r, q: implies(AtMost(r, p), AtMost(r + q, p))),
    Schema("A3", 2, 2,
           conclusion=lambda p, s, r, q: implies(
               And(AtLeast(r, p), AtLeast(q, s)), AtLeast(min(r, q), lor(p, s)))),
    Schema("A3'", 2, 2,
           conclusion=lambda p, s, r, q: implies(
               And(AtMost(r, p), AtMost(q, s)), AtMost(max(r, q), lor(p, s)))),
    Schema("A4", 2, 1,
           conclusion=lambda p, s, r: implies(
               AtLeast(r, lor(p, s)), lor(AtLeast(r, p), AtLeast(r, s)))),
    Schema("A5", 2, 1,
           conclusion=lambda p, s, r: implies(
               Not(AtLeast(0, s)), implies(AtLeast(r, p), AtLeast(r, lor(p, s))))),
    Schema("A5'", 2, 1,
           conclusion=lambda p, s, r: implies(
               Not(AtLeast(0, s)), implies(AtMost(r, p), AtMost(r, lor(p, s))))),
    Schema("A6", 1, 2, positive_q=True,
           conclusion=lambda p, r, q: implies(AtLeast(r + q, p), Not(AtMost(r, p)))),
    Schema("A7", 1, 1,
           conclusion=lambda p, r: implies(AtMost(r, p), AtLeast(0, p))),
    Schema("T1", 2, 2,
           conclusion=lambda p, s, r, q: implies(
               And(And(AtLeast(r, p), AtLeast(q, s)), AtLeast(0, And(p, s))),
               AtLeast(max(r, q), And(p, s)))),
    Schema("T1'", 2, 2,
           conclusion=lambda p, s, r, q: implies(
               And(And(AtMost(r, p), AtMost(q, s)), AtLeast(0, And(p, s))),
               AtMost(min(r, q), And(p, s)))),
    Schema("T2", 2, 1,
           premise=lambda p, s: iff(p, s),
           conclusion=lambda p, s, r: iff(AtLeast(r, p), AtLeast(r, s))),
    Schema("T2'", 2, 1,
           premise=lambda p, s: iff(p, s),
           conclusion=lambda p, s, r: iff(AtMost(r, p), AtMost(r, s))),
    Schema("T3", 0, 1, conclusion=lambda r: Not(AtLeast(r, Bottom()))),
    Schema("T4", 1, 1,
           premise=lambda p: implies(p, Bottom()),
           conclusion=lambda p, r: Not(AtLeast(r, p))),
    Schema("T5", 2, 1,
           conclusion=lambda p, s, r: implies(
               AtMost(r, lor(p, s)), lor(AtMost(r, p), AtMost(r, s)))),
    Schema("R1", 2, 1,
           premise=lambda p, s: implies(p, s),
           conclusion=lambda p, s, r: implies(
               And(AtLeast(r, s), AtLeast(0, p)), AtLeast(r, p))),
    Schema("R1'", 2, 1,
           premise=lambda p, s: implies(p, s),
           conclusion=lambda p, s, r: implies(
               And(AtMost(r, s), AtLeast(0, p)), AtMost(r, p))),
    Schema("R2", 2, 0,
           premise=lambda p, s: implies(p, s),
           conclusion=lambda p, s: implies(AtLeast(0, p), AtLeast(0, s))),
    # Negative control: bound modalities do not distribute over
    # conjunction without a reachability guard.
    Schema("neg-control", 2, 1, sound=False,
           conclusion=lambda p, s, r: implies(
               And(AtLeast(r, p), AtLeast(r, s)), AtLeast(r, And(p, s)))),
]

SCHEMAS: dict[str, Schema] = {sch.name: sch for sch in _TABLE}


def _slot_args(schema: Schema, phi, psi, r, q):
    args = []
    if schema.formula_slots >= 1:
        if phi is None:
            raise SideConditionError(f"{schema.name} needs a formula for phi")
        args.append(phi)
    if schema.formula_slots >= 2:
        if psi is None:
            raise SideConditionError(f"{schema.name} needs a formula for psi")
        args.append(psi)
    if schema.index_slots >= 1:
        if r is None:
            raise SideConditionError(f"{schema.name} needs an index r")
        args.append(as_weight(r))
    if schema.index_slots >= 2:
        if q is None:
            raise SideConditionError(f"{schema.name} needs an index q")
        q = as_weight(q)
        if schema.positive_q and q <= 0:
            raise SideConditionError(f"{schema.name} requires q > 0")
        args.append(q)
    return args


def instantiate(
    schema: Schema | str,
    phi: Optional[Formula] = None,
    psi: Optional[Formula] = None,
    r=None,
    q=None,
) -> Formula:
    """The schema's closed formula with slots substituted (core AST).

    For rule schemas this is the conclusion; the guarding premise is
    available via premise_of.
    """
    if isinstance(schema, str):
        schema = SCHEMAS[schema]
    return schema.conclusion(*_slot_args(schema, phi, psi, r, q))


def premise_of(
    schema: Schema | str,
    phi: Optional[Formula] = None,
    psi: Optional[Formula] = None,
) -> Optional[Formula]:
    """The premise of a rule schema, or None for plain axiom schemas."""
    if isinstance(schema, str):
        schema = SCHEMAS[schema]
    if schema.premise is None:
        return None
    args = []
    if schema.formula_slots >= 1:
        args.append(phi)
    if schema.formula_slots >= 2:
        args.append(psi)
    return schema.premise(*args)


def holds_everywhere(m: Wts, f: Formula, _cache: Optional[dict] = None) -> bool:
    """True iff every state of the model satisfies the formula."""
    return sat_set(m, f, _cache) == m.states


@dataclass
class SchemaReport:
    name: str
    sound: bool
    checked: int = 0
    applicable: int = 0
    violations: int = 0
    first_violation: Optional[dict] = None

    def as_dict(self) -> dict:
        d = {
            "schema": self.name,
            "expected_sound": self.sound,
            "checked": self.checked,
            "applicable": self.applicable,
            "violations": self.violations,
        }
        if self.first_violation is not None:
            d["first_violation"] = self.first_violation
        return d


@dataclass
class SuiteReport:
    seed: int
    trials: int
    schemas: dict[str, SchemaReport] = field(default_factory=dict)

    @property
    def unexpected_violations(self) -> int:
        return sum(r.violations for r in self.schemas.values() if r.sound)

    @property
    def control_violations(self) -> int:
        return sum(r.violations for r in self.schemas.values() if not r.sound)

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "unexpected_violations": self.unexpected_violations,
            "control_violations": self.control_violations,
            "schemas": [self.schemas[n].as_dict() for n in sorted(self.schemas)],
        }


_SUITE_ATOMS = ("p1", "p2", "p3")


def run_suite(
    seed: int,
    trials: int,
    schemas: Optional[list[str]] = None,
    index_pool=DEFAULT_INDEX_POOL,
) -> SuiteReport:
    """Check every schema against `trials` random (model, instance) draws.

    Deterministic in `seed`.  Each trial draws one model and one pair of
    formulas of modal depth at most two, instantiates every schema with
    them, and records any state where the instance fails, with full
    reproduction data.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    selected = [SCHEMAS[n] for n in schemas] if schemas else list(SCHEMAS.values())
    pool = sorted(as_weight(w) for w in index_pool)
    positive_pool = [w for w in pool if w > 0]
    rng = random.Random(seed)
    report = SuiteReport(seed=seed, trials=trials)
    for sch in selected:
        report.schemas[sch.name] = SchemaReport(name=sch.name, sound=sch.sound)

    for trial in range(trials):
        trial_seed = rng.getrandbits(32)
        model = random_wts(
            trial_seed, max_states=4, max_out_degree=3,
            weight_pool=pool, prop_pool=_SUITE_ATOMS,
        )
        phi = random_formula(trial_seed + 1, _SUITE_ATOMS, 2, pool)
        psi = random_formula(trial_seed + 2, _SUITE_ATOMS, 2, pool)
        r = pool[rng.randrange(len(pool))]
        q = pool[rng.randrange(len(pool))]
        q_pos = positive_pool[rng.randrange(len(positive_pool))]
        cache: dict = {}
        for sch in selected:
            rep = report.schemas[sch.name]
            q_used = q_pos if sch.positive_q else q
            instance = instantiate(sch, phi, psi, r, q_used)
            premise = premise_of(sch, phi, psi)
            if premise is not None:
                if not holds_everywhere(model, premise, cache):
                    continue
                rep.applicable += 1
            rep.checked += 1
            if not holds_everywhere(model, instance, cache):
                rep.violations += 1
                if rep.first_violation is None:
                    bad = sorted(model.states - sat_set(model, instance, cache))
                    rep.first_violation = {
                        "trial": trial,
                        "trial_seed": trial_seed,
                        "instance": print_formula(instance),
                        "failing_states": bad,
                        "model": serialize_wts(model).decode("utf-8"),
                    }
    return report
