"""Detection and enumeration of fixed-shape sumsets inside ground sets.

The detector looks for L1 + ... + Lr inside A by recursion on the number
of summands.  A sumset with first summand D = {0, d2, ..., d_l1} lies in
A exactly when the remaining sumset L2 + ... + Lr lies in the
intersection of the shifted copies A - d over d in D, so the search
enumerates candidate shift sets D drawn from the difference set
(A - A) \\ {0} and recurses on the intersection with the signature tail.
For a single summand the question degenerates to |A| >= l1.

Candidate shifts are enumerated with d2 < ... < d_l1 in increasing
linearized order and the first witness found is returned, so detection is
deterministic.  For integer intervals only positive shifts are needed
(the canonical first summand has minimum zero); in a product group every
nonzero difference is a candidate.  Enumeration yields every canonical
decomposition exactly once; distinct decompositions may share a value
set, so counts of decompositions and of value sets are reported
separately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import (
    Ambient,
    BudgetExceededError,
    Element,
    GroundSet,
    IntegerInterval,
    InvalidInputError,
    InvalidSignatureError,
    PreconditionError,
    Signature,
    StructureError,
    SumsetWitness,
    elem_add,
    elem_sub,
)

DEFAULT_DECOMPOSITION_BUDGET = 10**7


def _min_value_count(lengths: tuple[int, ...], ambient: Ambient) -> int:
    # Lower bound on |L1 + ... + Lr|.  Over the integers iterated sumsets
    # obey |A + B| >= |A| + |B| - 1; in a torsion group only the trivial
    # bound max(l_i) survives.
    if isinstance(ambient, IntegerInterval):
        return sum(lengths) - len(lengths) + 1
    return max(lengths)


def _positive_diffs(elems: tuple, ambient: Ambient) -> list:
    """Candidate shifts for a canonical first summand, sorted ascending."""
    if isinstance(ambient, IntegerInterval):
        out = {b - a for a, b in itertools.combinations(elems, 2)}
        return sorted(out)
    zero = ambient.zero
    out = set()
    for a, b in itertools.combinations(elems, 2):
        out.add(elem_sub(b, a, ambient))
        out.add(elem_sub(a, b, ambient))
    out.discard(zero)
    return sorted(out)


def _search(elems: frozenset, lengths: tuple[int, ...], ambient: Ambient):
    """First canonical decomposition inside elems, or None."""
    if len(elems) < _min_value_count(lengths, ambient):
        return None
    ordered = tuple(sorted(elems))
    if len(lengths) == 1:
        chosen = ordered[: lengths[0]]
        base = chosen[0]
        return base, [tuple(elem_sub(x, base, ambient) for x in chosen)]
    l1 = lengths[0]
    tail = lengths[1:]
    needed = _min_value_count(tail, ambient)
    cands = _positive_diffs(ordered, ambient)
    if len(cands) < l1 - 1:
        return None
    for combo in itertools.combinations(cands, l1 - 1):
        inter = _restrict(elems, combo, ambient, needed)
        if inter is None:
            continue
        inner = _search(inter, tail, ambient)
        if inner is not None:
            offset, summands = inner
            first = (ambient.zero,) + combo
            return offset, [tuple(sorted(first))] + summands
    return None


def _restrict(elems: frozenset, shifts, ambient: Ambient, needed: int):
    """Intersection of A - d over d in shifts (and d = 0), pruned by size."""
    inter = elems
    if isinstance(ambient, IntegerInterval):
        for d in shifts:
            inter = {a for a in inter if a + d in elems}
            if len(inter) < needed:
                return None
    else:
        for d in shifts:
            inter = {a for a in inter if elem_add(a, d, ambient) in elems}
            if len(inter) < needed:
                return None
    return frozenset(inter)


def contains_sumset(A: GroundSet, sig: Signature) -> Optional[SumsetWitness]:
    """Search A for a sumset with the given signature.

    Returns the first witness in the deterministic shift order, already
    canonical, or None when A is free of such sumsets.  The empty set and
    singletons are free for every signature since each summand has at
    least two elements.
    """
    found = _search(A.as_set(), sig.lengths, A.ambient)
    if found is None:
        return None
    offset, summands = found
    return SumsetWitness(A.ambient, offset, tuple(summands))


def enumerate_sumsets(
    A: GroundSet, sig: Signature, limit: int | None = None
) -> Iterator[SumsetWitness]:
    """Yield every canonical decomposition whose sums all land in A.

    Each decomposition is yielded exactly once, in the deterministic
    shift order; distinct decompositions may describe the same value set.
    With limit set, raises BudgetExceededError past that many yields.
    """
    count = 0
    for offset, summands in _enumerate(A.as_set(), sig.lengths, A.ambient):
        count += 1
        if limit is not None and count > limit:
            raise BudgetExceededError(
                f"decomposition enumeration exceeded limit of {limit}"
            )
        yield SumsetWitness(A.ambient, offset, tuple(summands))


def _enumerate(elems: frozenset, lengths: tuple[int, ...], ambient: Ambient):
    if len(elems) < _min_value_count(lengths, ambient):
        return
    ordered = tuple(sorted(elems))
    if len(lengths) == 1:
        for chosen in itertools.combinations(ordered, lengths[0]):
            base = chosen[0]
            yield base, [tuple(elem_sub(x, base, ambient) for x in chosen)]
        return
    l1 = lengths[0]
    tail = lengths[1:]
    needed = _min_value_count(tail, ambient)
    for combo in itertools.combinations(_positive_diffs(ordered, ambient), l1 - 1):
        inter = _restrict(elems, combo, ambient, needed)
        if inter is None:
            continue
        first = tuple(sorted((ambient.zero,) + combo))
        for offset, summands in _enumerate(inter, tail, ambient):
            yield offset, [first] + summands


def introduces_sumset(
    existing, candidate: Element, sig: Signature, ambient: Ambient
) -> bool:
    """Would adding candidate to an already-free set create a sumset?

    Only witnesses whose value set passes through candidate are searched,
    which is exhaustive when the existing set is free.  Used by the
    incremental paths (branch-and-bound, greedy sequences) where elements
    arrive in increasing linearized order.
    """
    elems = frozenset(existing) | {candidate}
    return _rooted(elems, candidate, sig.lengths, ambient)


def _rooted(elems: frozenset, root: Element, lengths: tuple[int, ...], ambient: Ambient) -> bool:
    # Looking for D1, ..., Dr with 0 in each Di, |Di| = li, and
    # root + D1 + ... + Dr inside elems.  Each nonzero d in any Di shows
    # up in a sum root + d (zeros elsewhere), so candidates are restricted
    # to (elems - root) \ {0}.
    if not lengths:
        return root in elems
    l = lengths[0]
    tail = lengths[1:]
    if isinstance(ambient, IntegerInterval):
        cands = sorted(a - root for a in elems if a != root)
    else:
        zero = ambient.zero
        cands = sorted(
            d for d in (elem_sub(a, root, ambient) for a in elems) if d != zero
        )
    if len(cands) < l - 1:
        return False
    for combo in itertools.combinations(cands, l - 1):
        inter = _restrict(elems, combo, ambient, 1)
        if inter is None or root not in inter:
            continue
        if _rooted(inter, root, tail, ambient):
            return True
    return False


# ---------------------------------------------------------------------------
# special shapes


def is_sidon(A: GroundSet) -> bool:
    """No repeated difference among ordered pairs of distinct elements.

    Agrees with freeness from two-summand pair sumsets; the ordered-pair
    formulation also covers torsion (a 2-torsion pair {0, g} repeats the
    difference g and indeed contains {0, g} + {0, g}).
    """
    ambient = A.ambient
    seen = set()
    for a, b in itertools.combinations(A.elements, 2):
        for d in (elem_sub(b, a, ambient), elem_sub(a, b, ambient)):
            if d in seen:
                return False
            seen.add(d)
    return True


def is_hilbert_cube_free(A: GroundSet, r: int) -> bool:
    """Free of r-dimensional cubes x + {0, d1} + ... + {0, dr}?"""
    if not isinstance(r, int) or r < 2:
        raise InvalidSignatureError(f"cube dimension must be an integer >= 2, got {r!r}")
    return contains_sumset(A, Signature((2,) * r)) is None


def cube3_sum_relations(points: tuple, ambient: Ambient) -> bool:
    """Check the eight-point sum system characterizing a 3-cube.

    points = (x1, ..., x8) indexed so that x1 is the base corner, x2/x3/x5
    the neighbors along the three edge directions, and the rest the
    remaining corners in the induced order.  The four relations below plus
    distinctness of each neighbor from the base pin the cube structure.
    """
    if len(points) != 8:
        raise StructureError("cube relation check needs exactly eight points")
    x1, x2, x3, x4, x5, x6, x7, x8 = points
    add = lambda a, b: elem_add(a, b, ambient)
    if x2 == x1 or x3 == x1 or x5 == x1:
        return False
    return (
        add(x2, x3) == add(x4, x1)
        and add(x2, x5) == add(x6, x1)
        and add(x2, x7) == add(x8, x1)
        and add(x3, x5) == add(x7, x1)
    )


def has_cube_dim3_by_sum_system(A: GroundSet) -> bool:
    """Direct 3-cube search validated through the eight-point sum system.

    Alternative to the generic recursion for signature (2,2,2); intended
    for cross-checks on small sets, not for large inputs.
    """
    ambient = A.ambient
    elems = A.as_set()
    ordered = tuple(sorted(elems))
    diffs = _positive_diffs(ordered, ambient)
    add = lambda a, b: elem_add(a, b, ambient)
    for x in ordered:
        for d1, d2, d3 in itertools.combinations_with_replacement(diffs, 3):
            pts = (
                x,
                add(x, d1),
                add(x, d2),
                add(add(x, d1), d2),
                add(x, d3),
                add(add(x, d1), d3),
                add(add(x, d2), d3),
                add(add(add(x, d1), d2), d3),
            )
            if all(p in elems for p in pts) and cube3_sum_relations(pts, ambient):
                return True
    return False


# ---------------------------------------------------------------------------
# multiset characterization


@dataclass(frozen=True)
class IndexedMultiset:
    """Family x_{i1...ir} indexed over the full grid of a signature.

    Indices are 1-based tuples (i1, ..., ir) with 1 <= is <= ls.  The
    family is a sumset evaluation iff the axis distinctness and the
    leading-ones sum relations checked by verify_multiset all hold.
    """

    ambient: Ambient
    signature: Signature
    values: dict

    def __post_init__(self):
        grid = set(
            itertools.product(*(range(1, l + 1) for l in self.signature.lengths))
        )
        keys = set(self.values)
        if keys != grid:
            raise StructureError(
                f"index grid mismatch: expected {len(grid)} entries, got {len(keys)}"
            )

    @classmethod
    def from_witness(cls, witness: SumsetWitness) -> "IndexedMultiset":
        sig = witness.signature
        summands = [tuple(sorted(L)) for L in witness.summands]
        values = {}
        for idx in itertools.product(*(range(1, len(L) + 1) for L in summands)):
            v = witness.offset
            for pos, i in enumerate(idx):
                v = elem_add(v, summands[pos][i - 1], witness.ambient)
            values[idx] = v
        return cls(witness.ambient, sig, values)


def verify_multiset(X: IndexedMultiset):
    """Decide whether the indexed family is a sumset evaluation.

    Checks, for each axis, that the values along that axis (all other
    indices held at 1) are pairwise distinct, and the sum relations
    x_{1..1} + x_{1..1 is t} = x_{1..1 is 1..1} + x_{1..1 1 t} for every
    axis position s < r, index is != 1, and nontrivial tail t.  On
    success returns the reconstructed summands: the first un-normalized
    (as read off the first axis), the rest zero-based.  Returns None when
    any condition fails.
    """
    sig = X.signature
    lengths = sig.lengths
    r = sig.r
    amb = X.ambient
    vals = X.values

    def ones(k: int) -> tuple[int, ...]:
        return (1,) * k

    # axis distinctness: sum over s of C(ls, 2) pairwise conditions
    for s in range(r):
        axis = [
            vals[ones(s) + (i,) + ones(r - s - 1)] for i in range(1, lengths[s] + 1)
        ]
        if len(set(axis)) != len(axis):
            return None

    base = vals[ones(r)]
    # leading-ones sum relations: product - total + (r - 1) equations
    for s in range(r - 1):
        tails = itertools.product(*(range(1, l + 1) for l in lengths[s + 1 :]))
        for t in tails:
            if all(i == 1 for i in t):
                continue
            for i_s in range(2, lengths[s] + 1):
                lhs = elem_add(base, vals[ones(s) + (i_s,) + t], amb)
                rhs = elem_add(
                    vals[ones(s) + (i_s,) + ones(r - s - 1)],
                    vals[ones(s + 1) + t],
                    amb,
                )
                if lhs != rhs:
                    return None

    first = tuple(
        vals[(i,) + ones(r - 1)] for i in range(1, lengths[0] + 1)
    )
    rest = []
    for s in range(1, r):
        rest.append(
            tuple(
                elem_sub(vals[ones(s) + (i,) + ones(r - s - 1)], base, amb)
                for i in range(1, lengths[s] + 1)
            )
        )
    return (first,) + tuple(rest)


# ---------------------------------------------------------------------------
# degeneracy


def is_degenerate(summands, ambient: Ambient) -> bool:
    """Does the sumset take fewer than l1*...*lr distinct values?"""
    sums = {ambient.zero}
    full = 1
    for L in summands:
        L = tuple(L)
        if len(set(L)) != len(L) or len(L) < 2:
            raise StructureError(f"summand {L!r} must have >= 2 distinct elements")
        full *= len(L)
        sums = {elem_add(s, x, ambient) for s in sums for x in L}
    return len(sums) < full


def ap3_of_degenerate(summands) -> tuple[int, int, int]:
    """Extract a nontrivial 3-term progression from a degenerate sumset.

    Integer summands only.  A collision x1+...+xr = y1+...+yr with
    xk != yk at some position yields the progression with difference
    xk - yk: replace xk by yk for the first term and yk by xk in the y
    sum for the last.  Raises PreconditionError when the sumset is
    non-degenerate.
    """
    summands = [tuple(L) for L in summands]
    for L in summands:
        for x in L:
            if not isinstance(x, int):
                raise StructureError("progression extraction works on integer summands")
    seen: dict[int, tuple] = {}
    for choice in itertools.product(*summands):
        total = sum(choice)
        if total in seen:
            other = seen[total]
            for k, (xk, yk) in enumerate(zip(choice, other)):
                if xk != yk:
                    if xk < yk:
                        choice, other = other, choice
                        xk, yk = yk, xk
                    a = total - xk + yk
                    d = xk - yk
                    return (a, a + d, a + 2 * d)
        else:
            seen[total] = choice
    raise PreconditionError("sumset is non-degenerate; no collision to extract")


# ---------------------------------------------------------------------------
# counting


def count_all_sumsets(
    n: int, sig: Signature, budget: int = DEFAULT_DECOMPOSITION_BUDGET
) -> tuple[int, int]:
    """Count decompositions and distinct value sets inside [1, n].

    Returns (decompositions, distinct value sets).  Both counts are at
    most n**(total - r + 1); the decomposition space is guarded by the
    budget before enumeration starts.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"interval endpoint must be a positive integer, got {n!r}")
    space = n ** (sig.total - sig.r + 1)
    if space > budget:
        raise BudgetExceededError(
            f"decomposition space {space} exceeds budget {budget}"
        )
    A = GroundSet(IntegerInterval(n), range(1, n + 1))
    count = 0
    value_sets = set()
    for w in enumerate_sumsets(A, sig):
        count += 1
        value_sets.add(frozenset(w.values()))
    return count, len(value_sets)
