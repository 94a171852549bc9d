"""Superspace constructions and seeded instance generators.

A superspace extends a space with new points while keeping all original
distances. Two constructions matter here: gluing a zero-distance twin onto
any chosen point (which produces a superspace in which the original point
set is never closed), and gluing a metric superspace of the reflection back
onto the original space (which produces a superspace where every new point
keeps positive distance to the original set, and the original set is
closed). The generators at the bottom produce reproducible random instances
for fuzzing both constructions and everything else in the package.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Dist,
    PointMap,
    Space,
    as_dist,
    is_metric,
    members_of,
)
from .reflection import metric_reflection
from .topology import is_closed


@dataclass(frozen=True)
class Embedding:
    """A space sitting inside a larger one via a distance-preserving inclusion."""

    sub: Space
    sup: Space
    inclusion: PointMap

    def __post_init__(self) -> None:
        if self.inclusion.domain != self.sub or self.inclusion.codomain != self.sup:
            raise ValueError("inclusion must map the subspace into the superspace")

    def image(self) -> frozenset[int]:
        return frozenset(self.inclusion.images)


@dataclass(frozen=True)
class GenParams:
    """Parameters of the seeded generators.

    ``n`` is the number of points to generate (points to add, for
    superspace generation, where 0 is allowed). ``zero_merge_prob`` controls
    how often points are glued at distance 0; ``max_entry`` bounds the raw
    distance draws. Same params, same output, bit for bit.
    """

    seed: int
    n: int
    zero_merge_prob: Fraction = Fraction(1, 4)
    max_entry: Dist = Fraction(6)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        p = Fraction(self.zero_merge_prob)
        if not 0 <= p <= 1:
            raise ValueError("zero_merge_prob must lie in [0, 1]")
        m = as_dist(self.max_entry)
        if m <= 0:
            raise ValueError("max_entry must be positive")
        object.__setattr__(self, "zero_merge_prob", p)
        object.__setattr__(self, "max_entry", m)


def is_superspace(e: Embedding) -> bool:
    """True iff the inclusion is injective and preserves every distance."""
    if len(set(e.inclusion.images)) != e.sub.n:
        return False
    sm, pm = e.sub.matrix, e.sup.matrix
    img = e.inclusion.images
    for i in range(e.sub.n):
        for j in range(i + 1, e.sub.n):
            if pm[img[i]][img[j]] != sm[i][j]:
                return False
    return True


def in_cec(e: Embedding) -> bool:
    """True iff every point outside the embedded image keeps positive distance to it.

    Membership in this class is what makes "complete iff closed" transfer
    from the subspace to the superspace.
    """
    if not is_superspace(e):
        raise ValueError("embedding is not a superspace inclusion")
    image = e.image()
    outside = [u for u in range(e.sup.n) if u not in image]
    return all(e.sup.matrix[u][i] > 0 for u in outside for i in image)


def glue_zero_point(x: Space, x0: int, label: str) -> Embedding:
    """Extend a nonempty space by a zero-distance twin of point ``x0``.

    The new point sits at distance 0 from ``x0`` and copies all its other
    distances, so the result is always a valid pseudometric superspace. The
    original point set is never closed in it (the new point lies in the
    closure), which is exactly why no nonempty space can be closed in all of
    its superspaces.
    """
    if x.n == 0:
        raise ValueError("gluing a zero-distance twin requires a nonempty space")
    if not 0 <= x0 < x.n:
        raise ValueError(f"point index {x0} out of range")
    if label in x.labels:
        raise ValueError(f"label {label!r} already used")
    new_row = tuple(x.matrix[x0]) + (Fraction(0),)
    rows = tuple(x.matrix[i] + (x.matrix[x0][i],) for i in range(x.n)) + (new_row,)
    sup = Space(x.labels + (label,), rows)
    return Embedding(x, sup, PointMap(x, sup, tuple(range(x.n))))


def _fresh_label(base: str, used: set[str]) -> str:
    label = base
    while label in used:
        label += "*"
    return label


def completion_glue(y: Space, ystar: Space, refl_embedding: PointMap) -> Embedding:
    """Glue a metric superspace of the reflection back onto the original space.

    ``refl_embedding`` must embed the metric reflection of ``y``
    distance-preservingly into the metric space ``ystar``. The result keeps
    every point of ``y`` plus one point for each ``ystar`` point outside the
    embedded image; distances are pulled back through the map that sends an
    original point to the image of its zero-distance class and keeps new
    points in place. Consequences: original distances are unchanged, every
    new point is at positive distance from all of ``y`` (so the embedding
    lands in the positive-distance superspace class), and ``y`` is closed in
    the result. If ``ystar`` is exactly the reflection, the output is ``y``
    itself.

    Labels for new points are taken from ``ystar`` and suffixed with ``*``
    until they avoid the labels of ``y``.
    """
    if not is_metric(ystar):
        raise ValueError("the glued superspace must be a metric space")
    refl = metric_reflection(y)
    if refl_embedding.domain != refl.quotient or refl_embedding.codomain != ystar:
        raise ValueError(
            "embedding must map the metric reflection of the space into the superspace"
        )
    emb = Embedding(refl.quotient, ystar, refl_embedding)
    if not is_superspace(emb):
        raise ValueError("embedding of the reflection does not preserve distances")

    image = set(refl_embedding.images)
    new_points = [q for q in range(ystar.n) if q not in image]

    # Route every result point to its proxy in the glued metric space.
    proxy = [refl_embedding.images[refl.projection.images[i]] for i in range(y.n)]
    proxy += new_points

    used = set(y.labels)
    labels = list(y.labels)
    for q in new_points:
        lab = _fresh_label(ystar.labels[q], used)
        used.add(lab)
        labels.append(lab)

    n = len(proxy)
    rows = tuple(
        tuple(ystar.matrix[proxy[i]][proxy[j]] for j in range(n)) for i in range(n)
    )
    glued = Space(tuple(labels), rows)
    return Embedding(y, glued, PointMap(y, glued, tuple(range(y.n))))


def check_cec_minimality(y: Space, e: Embedding) -> bool:
    """Evaluate "closed in the superspace implies positive-distance class" on one instance.

    Any superspace class in which the embedded set is closed must consist of
    positive-distance superspaces, so this implication can never be false
    for a valid embedding; the predicate makes that claim falsifiable.
    """
    if e.sub != y:
        raise ValueError("embedding does not embed the given space")
    if not is_superspace(e):
        raise ValueError("embedding is not a superspace inclusion")
    if not is_closed(e.sup, members_of(e.sup, e.image())):
        return True
    return in_cec(e)


def _draw_entry(rng: random.Random, max_entry: Dist) -> Dist:
    # A positive rational in (0, max_entry] with a small denominator.
    den = rng.randint(1, 4)
    hi = math.floor(max_entry * den)
    if hi < 1:
        den = math.ceil(1 / max_entry)
        hi = math.floor(max_entry * den)
    return Fraction(rng.randint(1, hi), den)


def _bernoulli(rng: random.Random, p: Fraction) -> bool:
    # Exact integer draw; no float comparison involved.
    return rng.randrange(p.denominator) < p.numerator


def _shortest_path_repair(rows: list[list[Dist]]) -> None:
    # Project a symmetric non-negative matrix onto the pseudometric cone by
    # all-pairs shortest paths; entries only decrease.
    n = len(rows)
    for k in range(n):
        for i in range(n):
            dik = rows[i][k]
            for j in range(n):
                via = dik + rows[k][j]
                if via < rows[i][j]:
                    rows[i][j] = via


def random_space(p: GenParams) -> Space:
    """Generate a reproducible valid pseudometric space.

    Draws a symmetric positive matrix over a base set of
    ``ceil(n * (1 - zero_merge_prob))`` points, repairs it into a metric by
    all-pairs shortest paths, then pads up to ``n`` points by cloning random
    existing points at distance 0. The result always validates; with
    ``zero_merge_prob`` 0 it is a metric space. The generator is the
    standard seedable Mersenne Twister, so outputs are identical across
    platforms for a given seed.
    """
    if p.n < 1:
        raise ValueError("random_space requires n >= 1")
    rng = random.Random(p.seed)
    base = max(1, math.ceil(p.n * (1 - p.zero_merge_prob)))
    rows = [[Fraction(0)] * base for _ in range(base)]
    for i in range(base):
        for j in range(i + 1, base):
            rows[i][j] = rows[j][i] = _draw_entry(rng, p.max_entry)
    _shortest_path_repair(rows)
    for i in range(base, p.n):
        src = rng.randrange(i)
        for row in rows:
            row.append(row[src])
        rows.append([rows[j][src] for j in range(i)] + [Fraction(0)])
    labels = tuple(f"p{i}" for i in range(p.n))
    return Space(labels, tuple(tuple(r) for r in rows))


def random_superspace(y: Space, p: GenParams, force_cec: bool = False) -> Embedding:
    """Extend ``y`` by ``p.n`` generated points, preserving all original distances.

    Each new point is anchored to a random existing point at a random radius
    and placed so that its distances run through the anchor; this keeps the
    triangle inequality valid by construction without touching the original
    matrix. With ``force_cec`` all radii are positive, so every new point
    keeps positive distance to ``y``; otherwise a radius collapses to 0 with
    probability ``zero_merge_prob``, gluing the new point onto its anchor's
    zero-distance class. ``p.n`` 0 returns the identity embedding.
    """
    rng = random.Random(p.seed)
    k = p.n
    if k == 0 or y.n == 0:
        if k == 0:
            return Embedding(y, y, PointMap.identity(y))
        # Superspace of the empty space: a standalone generated block.
        block = random_space(
            GenParams(
                seed=rng.getrandbits(63),
                n=k,
                zero_merge_prob=p.zero_merge_prob,
                max_entry=p.max_entry,
            )
        )
        sup = Space(tuple(f"q{i}" for i in range(k)), block.matrix)
        return Embedding(y, sup, PointMap(y, sup, ()))

    anchors = []
    radii: list[Dist] = []
    for _ in range(k):
        anchors.append(rng.randrange(y.n))
        if not force_cec and _bernoulli(rng, p.zero_merge_prob):
            radii.append(Fraction(0))
        else:
            radii.append(_draw_entry(rng, p.max_entry))

    n = y.n + k
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(y.n):
        for j in range(y.n):
            rows[i][j] = y.matrix[i][j]
    for u in range(k):
        for i in range(y.n):
            d = radii[u] + y.matrix[anchors[u]][i]
            rows[y.n + u][i] = rows[i][y.n + u] = d
        for v in range(u + 1, k):
            d = radii[u] + radii[v] + y.matrix[anchors[u]][anchors[v]]
            rows[y.n + u][y.n + v] = rows[y.n + v][y.n + u] = d

    used = set(y.labels)
    labels = list(y.labels)
    for u in range(k):
        lab = _fresh_label(f"q{u}", used)
        used.add(lab)
        labels.append(lab)
    sup = Space(tuple(labels), tuple(tuple(r) for r in rows))
    return Embedding(y, sup, PointMap(y, sup, tuple(range(y.n))))
