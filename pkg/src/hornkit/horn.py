"""Horn inequalities, the recursive vanishing criterion, and an
independent Littlewood-Richardson oracle.

A product of Schubert classes on Gr(r, n) is nonzero exactly when every
Horn inequality holds: for each level d in [1, r] and each s-tuple of
partitions mu^i in Lambda(d, r-d) whose own product on Gr(d, r) is
nonzero,

    sum_i sum_k  lam^i_{mu^i_k + k}  >=  (s-1) * d * (n-r).

The level-d tuples are certified by the same criterion one ambient lower,
so the whole test is a memoized recursion grounded at d = r (where the
inequality is the pure dimension count sum |lam^i| >= (s-1) r (n-r)).

The LR oracle decides the same question by brute force: expand the
product of the complementary Schur polynomials inside the r x (n-r) box
by the Littlewood-Richardson rule and ask whether anything survives.  It
shares no code with the recursion and serves as ground truth in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .exactla import DEFAULT_PRIME
from .strings import Partition, all_partitions
from .tangent import TransversalityReport, transversality_verdict

__all__ = [
    "HornInequality",
    "Violation",
    "Verdict",
    "enumerate_horn",
    "evaluate",
    "horn_verdict",
    "lr_oracle",
    "schur_expand",
    "numeric_verdict",
]


@dataclass(frozen=True)
class HornInequality:
    """One Horn inequality: level d, the certifying tuple mus, the index
    sets {mu^i_k + k}, and the right-hand side (s-1) * d * (n-r)."""

    d: int
    mus: tuple[Partition, ...]
    indices: tuple[tuple[int, ...], ...]
    rhs: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("level d must be positive")
        if len(self.mus) != len(self.indices):
            raise ValueError("one index set per mu required")
        for mu, idx in zip(self.mus, self.indices):
            if mu.r != self.d or len(idx) != self.d:
                raise ValueError("index sets must have size d")
            expected = tuple(part + k for k, part in enumerate(mu.parts, start=1))
            if idx != expected:
                raise ValueError(f"indices {idx} do not match mu {mu.parts}")

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "cap": self.mus[0].cap if self.mus else 0,
            "mus": [list(mu.parts) for mu in self.mus],
            "indices": [list(idx) for idx in self.indices],
            "rhs": self.rhs,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "HornInequality":
        mus = tuple(Partition(tuple(parts), data["cap"]) for parts in data["mus"])
        indices = tuple(tuple(idx) for idx in data["indices"])
        return cls(data["d"], mus, indices, data["rhs"])


@dataclass(frozen=True)
class Violation:
    inequality: HornInequality
    slack: int

    def to_json_dict(self) -> dict:
        return {**self.inequality.to_json_dict(), "slack": self.slack}


@dataclass(frozen=True)
class Verdict:
    """Outcome of one vanishing decision; ``violated`` is set when the Horn
    recursion found a failing inequality."""

    nonzero: bool
    method: str
    violated: Violation | None = None

    def __post_init__(self) -> None:
        if not self.nonzero and self.method == "horn-recursion":
            if self.violated is None or self.violated.slack >= 0:
                raise ValueError("a zero horn verdict must carry a violation")

    def to_json_dict(self) -> dict:
        return {
            "nonzero": self.nonzero,
            "method": self.method,
            "violated": self.violated.to_json_dict() if self.violated else None,
        }


def _check_box(lams: Sequence[Partition], r: int, n: int) -> None:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got ({r}, {n})")
    for lam in lams:
        if lam.r != r or lam.cap != n - r:
            raise ValueError(f"{lam} does not lie in Lambda({r}, {n - r})")


# Memo for the recursion: does the mu-tuple have nonzero product on Gr(d, r)?
# Products are symmetric in the factors, so the key sorts the part tuples.
_NONZERO_MEMO: dict[tuple, bool] = {}


def _nonzero(mus: Sequence[Partition], d: int, r: int) -> bool:
    if len(mus) <= 1 or d == 0 or d == r:
        return True
    key = (d, r, tuple(sorted(mu.parts for mu in mus)))
    cached = _NONZERO_MEMO.get(key)
    if cached is None:
        cached = _first_violation(tuple(mus), d, r) is None
        _NONZERO_MEMO[key] = cached
    return cached


def enumerate_horn(r: int, n: int, s: int) -> Iterator[HornInequality]:
    """All Horn inequalities for s classes on Gr(r, n), one per level d and
    per certified mu-tuple; d ascending, mu-tuples in lexicographic order."""
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got ({r}, {n})")
    if s < 1:
        raise ValueError("need at least one class")
    cap = n - r
    for d in range(1, r + 1):
        rhs = (s - 1) * d * cap
        inner_dim = d * (r - d)
        for mus in itertools.product(tuple(all_partitions(d, r - d)), repeat=s):
            # Dimension prune (the level-d top-degree bound): cheaper than,
            # and implied by, the recursive certificate below.
            if sum(mu.weight for mu in mus) < (s - 1) * inner_dim:
                continue
            if d < r and not _nonzero(mus, d, r):
                continue
            indices = tuple(
                tuple(part + k for k, part in enumerate(mu.parts, start=1))
                for mu in mus
            )
            yield HornInequality(d, mus, indices, rhs)


def evaluate(ineq: HornInequality, lams: Sequence[Partition]) -> int:
    """Slack of the inequality at the given classes; negative means violated."""
    if len(lams) != len(ineq.mus):
        raise ValueError("one class per index set required")
    total = 0
    for lam, idx in zip(lams, ineq.indices):
        for pos in idx:
            if not 1 <= pos <= lam.r:
                raise ValueError(f"index {pos} out of range for {lam.r} parts")
            total += lam.parts[pos - 1]
    return total - ineq.rhs


def _first_violation(
    lams: tuple[Partition, ...], r: int, n: int
) -> Violation | None:
    for ineq in enumerate_horn(r, n, len(lams)):
        slack = evaluate(ineq, lams)
        if slack < 0:
            return Violation(ineq, slack)
    return None


def horn_verdict(lams: Sequence[Partition], r: int, n: int) -> Verdict:
    """Nonzero iff every Horn inequality holds; reports the first violation
    in enumeration order otherwise."""
    lams = tuple(lams)
    _check_box(lams, r, n)
    if len(lams) <= 1 or r == 0 or r == n:
        return Verdict(True, "horn-recursion")
    violation = _first_violation(lams, r, n)
    if violation is None:
        return Verdict(True, "horn-recursion")
    return Verdict(False, "horn-recursion", violation)


# --- Littlewood-Richardson oracle -------------------------------------------
#
# Partitions here are in the classical weakly *decreasing* convention: the
# complement a_k = cap - lam_k of a weakly increasing class label is already
# sorted, and Schur polynomial products are computed on these complements.


def _complement(lam: Partition) -> tuple[int, ...]:
    parts = tuple(lam.cap - x for x in lam.parts)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def schur_expand(
    a: Sequence[int], b: Sequence[int], max_rows: int, max_cols: int
) -> dict[tuple[int, ...], int]:
    """Littlewood-Richardson expansion of s_a * s_b truncated to a box.

    Both inputs are weakly decreasing; the result maps weakly decreasing
    partitions with at most max_rows rows and max_cols columns to their LR
    coefficients.  Letters of b are added as horizontal strips subject to
    the lattice-word condition: in every row prefix, letter j may not
    outnumber letter j-1 placed one row higher.
    """
    a = tuple(a)
    b = tuple(b)
    for parts in (a, b):
        if any(x < y for x, y in zip(parts, parts[1:])) or any(x < 0 for x in parts):
            raise ValueError(f"{parts} is not weakly decreasing and nonnegative")
    if len(a) > max_rows or (a and a[0] > max_cols):
        return {}
    shape0 = a + (0,) * (max_rows - len(a))
    # states: (shape, previous strip row counts or None) -> multiplicity
    states: dict[tuple[tuple[int, ...], tuple[int, ...] | None], int] = {
        (shape0, None): 1
    }
    for size in b:
        new_states: dict[tuple[tuple[int, ...], tuple[int, ...] | None], int] = {}
        for (shape, prev), mult in states.items():
            for new_shape, strip in _horizontal_strips(shape, size, max_cols, prev):
                key = (new_shape, strip)
                new_states[key] = new_states.get(key, 0) + mult
        states = new_states
        if not states:
            return {}
    result: dict[tuple[int, ...], int] = {}
    for (shape, _), mult in states.items():
        trimmed = shape
        while trimmed and trimmed[-1] == 0:
            trimmed = trimmed[:-1]
        result[trimmed] = result.get(trimmed, 0) + mult
    return result


def _horizontal_strips(
    shape: tuple[int, ...],
    size: int,
    max_cols: int,
    prev: tuple[int, ...] | None,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ways to grow ``shape`` by a horizontal strip of ``size`` boxes,
    respecting the box bound and (when ``prev`` is given) the lattice-word
    prefix condition against the previous strip's row counts."""
    rows = len(shape)

    def rec(
        i: int, remaining: int, cur: list[int], prev_prefix: int, cur_prefix: int
    ) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        if i == rows:
            if remaining == 0:
                yield (
                    tuple(s + c for s, c in zip(shape, cur)),
                    tuple(cur),
                )
            return
        ceiling = max_cols if i == 0 else shape[i - 1]
        most = min(remaining, ceiling - shape[i])
        if prev is not None:
            most = min(most, prev_prefix - cur_prefix)
        for c in range(most + 1):
            cur.append(c)
            next_prev = prev_prefix + (prev[i] if prev is not None else 0)
            yield from rec(i + 1, remaining - c, cur, next_prev, cur_prefix + c)
            cur.pop()

    yield from rec(0, size, [], 0, 0)


def lr_oracle(lams: Sequence[Partition], r: int, n: int) -> bool:
    """Ground truth by brute force: expand the product of complementary
    Schur polynomials inside the r x (n-r) box; nonzero iff anything
    survives.  Independent of the Horn recursion."""
    lams = tuple(lams)
    _check_box(lams, r, n)
    if not lams:
        raise ValueError("need at least one class")
    cap = n - r
    comps = [_complement(lam) for lam in lams]
    acc: dict[tuple[int, ...], int] = {comps[0]: 1}
    for nxt in comps[1:]:
        grown: dict[tuple[int, ...], int] = {}
        for shape, mult in acc.items():
            for res, m in schur_expand(shape, nxt, r, cap).items():
                grown[res] = grown.get(res, 0) + mult * m
        acc = grown
        if not acc:
            return False
    return bool(acc)


def numeric_verdict(
    lams: Sequence[Partition],
    r: int,
    n: int,
    seed: int = 0,
    trials: int = 3,
    p: int = DEFAULT_PRIME,
) -> Verdict:
    """Randomized exact transversality test, re-tagged as a Verdict."""
    lams = tuple(lams)
    _check_box(lams, r, n)
    report: TransversalityReport = transversality_verdict(lams, seed, trials, p)
    return Verdict(report.nonzero, "numeric")
