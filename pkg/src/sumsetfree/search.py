"""Exact maximization of sumset-free subsets, and size bounds.

max_free_set runs a depth-first branch and bound over elements in
increasing linearized order.  The first element of the carrier is fixed
by translation symmetry (any nonempty free set translates to one that
contains it, and translation preserves freeness in both ambient kinds).
A branch is cut when the chosen elements plus all remaining candidates
cannot beat the incumbent, and a candidate is rejected when adding it to
the (free) partial set would create a sumset through it, which is checked
by the incremental detector rather than a full re-scan.

The closed-form evaluators cover the leading upper bound
(l_r - 1)^(1/P') * n^(1 - 1/P') with P' the product of all summand sizes
but the last, the exact lower-bound exponent 1 - (S - r)/(P - 1) as a
rational number, and the Turan-type hypergraph bound
(l_r - 1)^(1/P') / r! * n^(r - 1/P').  overlap_check evaluates both sides
of the translate-intersection averaging inequality with exact rational
arithmetic; the falling-factorial right-hand side is only a guaranteed
lower bound once |A||B|/|X| reaches r - 1 (below r - 2 it can exceed the
average), so the raw pair is returned rather than asserted.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional

from .core import (
    Ambient,
    BudgetExceededError,
    GroundSet,
    InvalidInputError,
    InvalidSignatureError,
    PreconditionError,
    Signature,
    elem_add,
)
from .detect import contains_sumset, introduces_sumset

DEFAULT_CARDINALITY_BUDGET = 64


@dataclass
class SearchReport:
    """Outcome of a maximum free-set search."""

    ambient: Ambient
    signature: Signature
    best_size: int
    witness: GroundSet
    nodes_explored: int
    runtime_s: float
    pruned_by: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def enc(x):
            return list(x) if isinstance(x, tuple) else x

        return {
            "ambient": self.ambient.describe(),
            "signature": list(self.signature.lengths),
            "F": self.best_size,
            "witness": [enc(x) for x in self.witness.elements],
            "nodes": self.nodes_explored,
            "ms": round(self.runtime_s * 1000.0, 3),
        }


def max_free_set(
    ambient: Ambient,
    sig: Signature,
    *,
    cardinality_budget: int = DEFAULT_CARDINALITY_BUDGET,
    allow_large: bool = False,
    max_nodes: Optional[int] = None,
) -> SearchReport:
    """Exact maximum size of a sumset-free subset, with a witness.

    The default budget refuses ambients with more than 64 elements;
    allow_large overrides it.  max_nodes caps the explored node count and
    raises BudgetExceededError when hit.  The search is deterministic:
    the witness is the first maximum found in depth-first order with the
    carrier's first element fixed.
    """
    N = ambient.cardinality
    if N > cardinality_budget and not allow_large:
        raise BudgetExceededError(
            f"ambient cardinality {N} exceeds search budget {cardinality_budget}"
        )
    start = time.perf_counter()

    if sig.r == 1:
        # free sets are exactly those with fewer elements than the summand
        k = min(N, sig.lengths[0] - 1)
        witness = GroundSet(ambient, (ambient.element_at(i) for i in range(k)))
        return SearchReport(
            ambient, sig, k, witness, 0, time.perf_counter() - start, {}
        )

    universe = [ambient.element_at(i) for i in range(N)]
    chosen = [universe[0]]
    best_size = 1
    best_set = list(chosen)
    nodes = 0
    pruned = {"cardinality": 0, "infeasible": 0}

    def dfs(i: int) -> None:
        nonlocal best_size, best_set, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise BudgetExceededError(f"search exceeded node budget {max_nodes}")
        if i == N:
            return
        if len(chosen) + (N - i) <= best_size:
            pruned["cardinality"] += 1
            return
        x = universe[i]
        if introduces_sumset(chosen, x, sig, ambient):
            pruned["infeasible"] += 1
        else:
            chosen.append(x)
            if len(chosen) > best_size:
                best_size = len(chosen)
                best_set = list(chosen)
            dfs(i + 1)
            chosen.pop()
        dfs(i + 1)

    dfs(1)
    witness = GroundSet(ambient, best_set)
    if contains_sumset(witness, sig) is not None:
        raise RuntimeError("internal error: reported witness is not free")
    return SearchReport(
        ambient, sig, best_size, witness, nodes, time.perf_counter() - start, pruned
    )


# ---------------------------------------------------------------------------
# closed-form bounds


def _check_n(n) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"interval length must be a positive integer, got {n!r}")


def _check_multi(sig: Signature) -> None:
    if sig.r < 2:
        raise InvalidSignatureError("bound requires at least two summands")


def upper_bound_leading(n: int, sig: Signature) -> float:
    """Leading term of the general upper bound on the maximum free size."""
    _check_n(n)
    _check_multi(sig)
    pp = sig.prefix_product
    return (sig.lengths[-1] - 1) ** (1.0 / pp) * n ** (1.0 - 1.0 / pp)


def lower_bound_exponent(sig: Signature) -> Fraction:
    """Exact exponent 1 - (S - r)/(P - 1) of the probabilistic lower bound."""
    _check_multi(sig)
    return 1 - Fraction(sig.total - sig.r, sig.product - 1)


def turan_upper_bound(n: int, sig: Signature) -> float:
    """Turan-type bound on edges of the associated r-partite-free hypergraph."""
    _check_n(n)
    _check_multi(sig)
    pp = sig.prefix_product
    r = sig.r
    return (sig.lengths[-1] - 1) ** (1.0 / pp) / factorial(r) * n ** (r - 1.0 / pp)


def sidon_refined_upper(n: int) -> float:
    """Refined upper bound sqrt(n) + n^(1/4) + 1/2 for pair sumsets."""
    _check_n(n)
    return n**0.5 + n**0.25 + 0.5


# ---------------------------------------------------------------------------
# translate-intersection averaging


def overlap_check(A, B, X, r: int, ambient: Ambient | None = None):
    """Evaluate both sides of the averaging inequality for translates.

    A and B are element collections, X a ground set (or collection) with
    A + B inside X, verified up front.  Returns the exact pair
    (lhs, rhs) as Fractions, where lhs averages |(A+x1) ∩ ... ∩ (A+xr)|
    over r-element subsets {x1, ..., xr} of B and rhs is the falling
    factorial binomial C(|A||B|/|X|, r).
    """
    if not isinstance(r, int) or r < 1:
        raise InvalidInputError(f"subset size r must be a positive integer, got {r!r}")
    for obj in (A, B, X):
        if isinstance(obj, GroundSet):
            if ambient is not None and obj.ambient != ambient:
                raise PreconditionError("mixed ambients among overlap arguments")
            ambient = obj.ambient
    if ambient is None:
        raise InvalidInputError("ambient required when no argument is a GroundSet")

    a_elems = sorted(set(A))
    b_elems = sorted(set(B))
    x_members = X.as_set() if isinstance(X, GroundSet) else frozenset(X)
    if not a_elems or not b_elems or not x_members:
        raise PreconditionError("overlap check needs nonempty A, B, X")

    translates = {}
    for b in b_elems:
        shifted = frozenset(elem_add(a, b, ambient) for a in a_elems)
        if not shifted <= x_members:
            raise PreconditionError("A + B is not contained in X")
        translates[b] = shifted

    total = 0
    for combo in itertools.combinations(b_elems, r):
        inter = translates[combo[0]]
        for b in combo[1:]:
            inter = inter & translates[b]
            if not inter:
                break
        total += len(inter)

    lhs = Fraction(total, len(x_members))
    sigma = Fraction(len(a_elems) * len(b_elems), len(x_members))
    rhs = Fraction(1)
    for i in range(r):
        rhs *= sigma - i
    rhs /= factorial(r)
    return lhs, rhs
