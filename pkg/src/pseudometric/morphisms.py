"""Distance-preserving maps, pseudoisometries, and isometry search.

A pseudoisometry is a map that preserves all distances and whose image
meets every zero-distance class of the codomain. Two spaces admit one
exactly when their metric reflections are isometric, which reduces the
search problem to metric isometry on the quotients; `find_isometry` solves
that by signature-pruned backtracking, and `brute_force_pseudoisometry`
provides the independent enumeration oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    PointMap,
    Report,
    Space,
    Violation,
    is_metric,
    zero_blocks_unchecked,
)
from .reflection import metric_reflection


class ResourceLimitError(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class IsoSearchStats:
    """Counters from one isometry search.

    ``nodes``: partial assignments tried; ``signature_prunes``: candidate
    pairs excluded up front by the signature refinement; ``distance_checks``:
    exact distance comparisons performed during backtracking.
    """

    nodes: int = 0
    signature_prunes: int = 0
    distance_checks: int = 0

    def __post_init__(self) -> None:
        if min(self.nodes, self.signature_prunes, self.distance_checks) < 0:
            raise ValueError("stats counters must be non-negative")


def is_distance_preserving(m: PointMap) -> bool:
    """True iff codomain distances of image pairs equal the domain distances."""
    dm, cm = m.domain.matrix, m.codomain.matrix
    for i in range(m.domain.n):
        for j in range(i + 1, m.domain.n):
            if cm[m.images[i]][m.images[j]] != dm[i][j]:
                return False
    return True


def is_pseudoisometry(m: PointMap) -> Report:
    """Check both pseudoisometry conditions, reporting every violation.

    Condition one: every pair of points keeps its distance. Condition two:
    every zero-distance class of the codomain contains an image point
    (equivalently, every codomain point is at distance 0 from some image).
    Distance violations carry the domain pair and both values; coverage
    violations carry the least index of the missed class.
    """
    violations: list[Violation] = []
    dm, cm = m.domain.matrix, m.codomain.matrix
    for i in range(m.domain.n):
        for j in range(i + 1, m.domain.n):
            got = cm[m.images[i]][m.images[j]]
            if got != dm[i][j]:
                violations.append(Violation("distance_mismatch", (i, j), (dm[i][j], got)))
    image = set(m.images)
    for block in zero_blocks_unchecked(m.codomain):
        if not block & image:
            violations.append(Violation("unreached_class", (min(block),)))
    return Report.from_violations(violations)


def compose(f: PointMap, g: PointMap) -> PointMap:
    """Apply ``f`` then ``g``; the codomain of ``f`` must be the domain of ``g``.

    Composition of two pseudoisometries is again a pseudoisometry.
    """
    if f.codomain != g.domain:
        raise ValueError("codomain of the first map must equal domain of the second")
    return PointMap(f.domain, g.codomain, tuple(g.images[f.images[i]] for i in range(f.domain.n)))


def induced_reflection_map(phi: PointMap) -> PointMap:
    """The isometry between metric reflections induced by a pseudoisometry.

    Zero-distance classes map to zero-distance classes, so sending the class
    of ``x`` to the class of ``phi(x)`` is well defined; the resulting map
    between the quotients makes the projection square commute and is always
    a metric isometry. Both facts are verified before returning.
    """
    report = is_pseudoisometry(phi)
    if not report.ok:
        raise ValueError(f"map is not a pseudoisometry: {report.violations[0]}")
    rx = metric_reflection(phi.domain)
    ry = metric_reflection(phi.codomain)
    images = tuple(
        ry.projection.images[phi.images[rx.section.images[q]]]
        for q in range(rx.quotient.n)
    )
    induced = PointMap(rx.quotient, ry.quotient, images)
    for x in range(phi.domain.n):
        if induced.images[rx.projection.images[x]] != ry.projection.images[phi.images[x]]:
            raise RuntimeError("induced map does not commute with the projections")
    if len(set(images)) != ry.quotient.n or not is_distance_preserving(induced):
        raise RuntimeError("induced map is not an isometry of the reflections")
    return induced


def _joint_signatures(s1: Space, s2: Space) -> tuple[list[int], list[int]]:
    # Iterated signature refinement over both spaces at once, so equal
    # colors are comparable across them. Initial color: sorted multiset of
    # distances to all points; refinement folds in the colors at each
    # distance. Stops when the number of joint color classes stabilizes.
    def canon(profiles1, profiles2):
        table = {p: c for c, p in enumerate(sorted(set(profiles1) | set(profiles2)))}
        return [table[p] for p in profiles1], [table[p] for p in profiles2]

    p1 = [tuple(sorted(s1.matrix[i])) for i in range(s1.n)]
    p2 = [tuple(sorted(s2.matrix[i])) for i in range(s2.n)]
    c1, c2 = canon(p1, p2)
    classes = len(set(c1) | set(c2))
    while True:
        p1 = [
            (c1[i], tuple(sorted((s1.matrix[i][j], c1[j]) for j in range(s1.n) if j != i)))
            for i in range(s1.n)
        ]
        p2 = [
            (c2[i], tuple(sorted((s2.matrix[i][j], c2[j]) for j in range(s2.n) if j != i)))
            for i in range(s2.n)
        ]
        c1, c2 = canon(p1, p2)
        new_classes = len(set(c1) | set(c2))
        if new_classes == classes:
            return c1, c2
        classes = new_classes


def find_isometry(m1: Space, m2: Space) -> tuple[PointMap | None, IsoSearchStats]:
    """Search for a distance-preserving bijection between two metric spaces.

    Complete backtracking over partial assignments: candidate targets for
    each point are restricted to points with the same refined signature
    (signatures are invariant under isometry, so no witness is ever lost),
    points are assigned most-constrained first, and ties break toward the
    least index, which makes the returned witness deterministic. Returns the
    witness (or ``None``) together with search statistics.
    """
    if not is_metric(m1) or not is_metric(m2):
        raise ValueError("isometry search requires metric spaces")
    n = m1.n
    if n != m2.n:
        return None, IsoSearchStats()
    if n == 0:
        return PointMap(m1, m2, ()), IsoSearchStats()

    c1, c2 = _joint_signatures(m1, m2)
    candidates = [[j for j in range(n) if c2[j] == c1[i]] for i in range(n)]
    prunes = sum(n - len(c) for c in candidates)
    if sorted(c1) != sorted(c2):
        return None, IsoSearchStats(signature_prunes=prunes)

    order = sorted(range(n), key=lambda i: (len(candidates[i]), i))
    images = [-1] * n
    used = [False] * n
    stats = {"nodes": 0, "checks": 0}
    d1, d2 = m1.matrix, m2.matrix

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            stats["nodes"] += 1
            ok = True
            for prev in order[:k]:
                stats["checks"] += 1
                if d1[i][prev] != d2[j][images[prev]]:
                    ok = False
                    break
            if ok:
                images[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                images[i] = -1
                used[j] = False
        return False

    found = extend(0)
    result = PointMap(m1, m2, tuple(images)) if found else None
    return result, IsoSearchStats(
        nodes=stats["nodes"], signature_prunes=prunes, distance_checks=stats["checks"]
    )


def are_pseudoisometric(x: Space, y: Space) -> PointMap | None:
    """Find a pseudoisometry between two nonempty spaces, if one exists.

    Reflects both spaces, searches for an isometry of the quotients, and on
    success routes each point through projection, quotient isometry and
    section. The composite preserves distances and hits the class of every
    codomain point; absence of a quotient isometry rules a witness out
    entirely.
    """
    if x.n == 0 or y.n == 0:
        raise ValueError("pseudoisometry is defined for nonempty spaces only")
    rx = metric_reflection(x)
    ry = metric_reflection(y)
    quotient_iso, _ = find_isometry(rx.quotient, ry.quotient)
    if quotient_iso is None:
        return None
    return PointMap(
        x,
        y,
        tuple(
            ry.section.images[quotient_iso.images[rx.projection.images[i]]]
            for i in range(x.n)
        ),
    )


def brute_force_pseudoisometry(
    x: Space, y: Space, cap: int = 10**6
) -> PointMap | None:
    """Enumerate every total map from ``x`` to ``y`` and return the first pseudoisometry.

    Maps are tried in lexicographic image order, so the witness is
    deterministic. The enumeration size ``|y| ** |x|`` must stay within
    ``cap``; beyond that a :class:`ResourceLimitError` is raised. This is
    the independent oracle against the reflection-based search.
    """
    total = y.n**x.n
    if total > cap:
        raise ResourceLimitError(
            f"enumerating {y.n}^{x.n} = {total} maps exceeds the cap of {cap}"
        )
    dm, cm = x.matrix, y.matrix
    blocks = zero_blocks_unchecked(y)
    for images in itertools.product(range(y.n), repeat=x.n):
        ok = True
        for i in range(x.n):
            for j in range(i + 1, x.n):
                if cm[images[i]][images[j]] != dm[i][j]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        hit = set(images)
        if all(block & hit for block in blocks):
            return PointMap(x, y, images)
    return None
