"""The open-ball topology of a finite pseudometric space.

On a finite space the topology degenerates pleasantly: a set is open iff it
is closed iff it is saturated (a union of zero-distance classes), and the
closure of ``A`` is exactly the saturation of ``A``. Several predicates here
are therefore computed by two different routes and cross-checked, which
keeps the implementation honest.

Sequences are represented in eventually periodic form (finite prefix plus a
repeating cycle); that is enough to witness every convergence phenomenon a
finite space can exhibit while keeping all questions decidable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DistLike,
    SetLike,
    Space,
    Subset,
    as_dist,
    class_of,
    members_of,
    saturate,
)


@dataclass(frozen=True)
class EPSequence:
    """An eventually periodic sequence of points: ``prefix`` then ``cycle`` forever."""

    space: Space
    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        prefix = tuple(int(i) for i in self.prefix)
        cycle = tuple(int(i) for i in self.cycle)
        if not cycle:
            raise ValueError("cycle must be nonempty")
        for i in prefix + cycle:
            if not 0 <= i < self.space.n:
                raise ValueError(f"point index {i} out of range")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)


def open_ball(space: Space, center: int, radius: DistLike) -> Subset:
    """All points at distance strictly less than ``radius`` from ``center``."""
    if not 0 <= center < space.n:
        raise ValueError(f"point index {center} out of range")
    r = as_dist(radius)
    if r == 0:
        raise ValueError("ball radius must be positive")
    return Subset(
        space, frozenset(x for x in range(space.n) if space.matrix[center][x] < r)
    )


def _least_ball(space: Space, a: int) -> frozenset[int]:
    # Smallest ball around a: radius = least positive distance from a,
    # or the whole space when every point is at distance 0.
    positives = [d for d in space.matrix[a] if d > 0]
    if not positives:
        return frozenset(range(space.n))
    return open_ball(space, a, min(positives)).members


def is_open(space: Space, A: SetLike) -> bool:
    """True iff ``A`` is a union of open balls.

    Computed two ways and cross-checked: (i) around every member the
    smallest ball must stay inside ``A``; (ii) ``A`` equals its saturation.
    """
    members = members_of(space, A)
    by_balls = all(_least_ball(space, a) <= members for a in members)
    by_saturation = saturate(space, members).members == members
    if by_balls != by_saturation:
        raise RuntimeError("open-set criteria disagree; input is not a pseudometric")
    return by_balls


def closure(space: Space, A: SetLike) -> Subset:
    """Points at distance 0 from ``A``: the smallest closed superset.

    Finite-space form of the topological closure; empty for empty ``A``.
    Coincides with :func:`saturate` on valid spaces.
    """
    members = members_of(space, A)
    if not members:
        return Subset(space, frozenset())
    return Subset(
        space,
        frozenset(
            x for x in range(space.n) if min(space.matrix[x][a] for a in members) == 0
        ),
    )


def interior(space: Space, A: SetLike) -> Subset:
    """Complement of the closure of the complement."""
    members = members_of(space, A)
    rest = frozenset(range(space.n)) - members
    return Subset(space, frozenset(range(space.n)) - closure(space, rest).members)


def boundary(space: Space, A: SetLike) -> Subset:
    """Closure of ``A`` intersected with the closure of its complement.

    Also computed as closure minus interior; the two formulas are asserted
    equal.
    """
    members = members_of(space, A)
    rest = frozenset(range(space.n)) - members
    fr = closure(space, members).members & closure(space, rest).members
    alt = closure(space, members).members - interior(space, members).members
    if fr != alt:
        raise RuntimeError("boundary formulas disagree")
    return Subset(space, fr)


def is_closed(space: Space, A: SetLike) -> bool:
    """True iff the complement is open; equivalently iff ``A`` is saturated."""
    members = members_of(space, A)
    rest = frozenset(range(space.n)) - members
    by_complement = is_open(space, rest)
    by_saturation = saturate(space, members).members == members
    if by_complement != by_saturation:
        raise RuntimeError("closed-set criteria disagree; input is not a pseudometric")
    return by_complement


def is_cauchy(seq: EPSequence) -> bool:
    """True iff the tail of the sequence stays in arbitrarily small balls.

    For an eventually periodic sequence this holds exactly when all cycle
    points are pairwise at distance 0: any positive distance between two
    cycle points recurs forever and refutes the condition at radius half
    that distance.
    """
    m = seq.space.matrix
    cyc = seq.cycle
    return all(m[cyc[i]][cyc[j]] == 0 for i in range(len(cyc)) for j in range(i + 1, len(cyc)))


def limit_points(seq: EPSequence) -> Subset:
    """All points the sequence converges to: a whole zero-distance class, or none.

    A point ``a`` is a limit iff the distance to the sequence tends to 0,
    which for an eventually periodic sequence means every cycle point is at
    distance 0 from ``a``.
    """
    if not is_cauchy(seq):
        return Subset(seq.space, frozenset())
    return class_of(seq.space, seq.cycle[0])


def complete_via_boundary(space: Space, A: SetLike) -> bool:
    """Boundary criterion for completeness of a subset.

    True iff every boundary point's zero-distance class meets ``A``. In a
    finite space every subset is complete, so this must come out true for
    every valid input; the predicate exists so the criterion itself is
    executable and falsifiable.
    """
    members = members_of(space, A)
    fr = boundary(space, members).members
    return all(class_of(space, x).members & members for x in fr)


def closed_via_completeness(space: Space, A: SetLike) -> bool:
    """Closedness via completeness plus saturation, for nonempty subsets.

    True iff ``A`` passes the boundary completeness criterion and equals its
    saturation; must agree with :func:`is_closed`.
    """
    members = members_of(space, A)
    if not members:
        raise ValueError("closed_via_completeness requires a nonempty subset")
    return complete_via_boundary(space, members) and saturate(space, members).members == members
