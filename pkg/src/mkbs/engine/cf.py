"""Certainty-factor algebra.

Certainty factors are real degrees of belief in [0, 1]: 0 definitely false,
1 definitely true. A rule's conclusion certainty is the product of the rule's
own certainty and the certainty of its premise. Conjunctions take the minimum
of their parts, disjunctions the maximum, and independent rules concluding the
same fact accumulate as a + b*(1 - a).
"""

from __future__ import annotations

from collections.abc import Sequence


def cf_rule(rule_cf: float, premise_cf: float) -> float:
    """Certainty of a fired rule's conclusion: rule_cf * premise_cf."""
    return rule_cf * premise_cf


def cf_all(children: Sequence[float]) -> float:
    """Certainty of a conjunction: the minimum of its parts."""
    if not children:
        raise ValueError("conjunction of no certainty factors")
    return min(children)


def cf_any(children: Sequence[float]) -> float:
    """Certainty of a disjunction: the maximum of its parts."""
    if not children:
        raise ValueError("disjunction of no certainty factors")
    return max(children)


def cf_parallel(a: float, b: float) -> float:
    """Accumulated certainty of two independent lines of evidence.

    Commutative and associative (up to float rounding), with identity 0 and
    absorbing element 1; never leaves [max(a, b), 1].
    """
    return a + b * (1.0 - a)
