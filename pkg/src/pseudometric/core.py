"""Finite pseudometric spaces over exact rational distances.

A space is a finite labeled point set together with a symmetric matrix of
non-negative rationals. Distinct points may sit at distance 0, which makes
the zero-distance relation (``d(x, y) = 0``) the central piece of machinery:
it is an equivalence relation whose classes drive the quotient construction,
the topology, and the morphism checks in the rest of the package.

All arithmetic is exact (`fractions.Fraction`); no comparison ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Dist = Fraction

DistLike = Union[Dist, int, str]


def as_dist(value: DistLike) -> Dist:
    """Coerce ``value`` to a non-negative exact rational distance.

    Floats are rejected outright: binary rounding would make exact
    zero-distance tests meaningless.
    """
    if isinstance(value, float):
        raise TypeError("float distances are not allowed; pass int, str or Fraction")
    d = Fraction(value)
    if d < 0:
        raise ValueError(f"distance must be non-negative, got {d}")
    return d


def format_dist(d: Dist) -> str:
    """Canonical text form of a distance: bare integer, else 'p/q' in lowest terms."""
    if d.denominator == 1:
        return str(d.numerator)
    return f"{d.numerator}/{d.denominator}"


@dataclass(frozen=True)
class Violation:
    """One broken rule, with the witnessing point indices and offending values."""

    rule: str
    points: tuple[int, ...]
    values: tuple[Dist, ...] = ()

    def __str__(self) -> str:
        pts = ",".join(str(p) for p in self.points)
        out = f"{self.rule} at ({pts})"
        if self.values:
            out += ": " + ", ".join(format_dist(v) for v in self.values)
        return out


@dataclass(frozen=True)
class Report:
    """Outcome of a structural check. ``ok`` is true iff ``violations`` is empty."""

    ok: bool
    violations: tuple[Violation, ...] = ()

    def __post_init__(self) -> None:
        if self.ok != (not self.violations):
            raise ValueError("report.ok must mirror emptiness of violations")

    @classmethod
    def from_violations(cls, violations: Iterable[Violation]) -> "Report":
        vs = tuple(violations)
        return cls(ok=not vs, violations=vs)


@dataclass(frozen=True)
class Space:
    """A finite labeled point set with a rational distance matrix.

    Construction performs structural checks only (square matrix, distinct
    labels, non-negative rational entries). The pseudometric axioms are
    checked separately by :func:`validate_pseudometric` / :meth:`validate`,
    so deliberately broken matrices stay representable for diagnostics.
    Instances are immutable and hashable; every operation on them is pure.
    """

    labels: tuple[str, ...]
    matrix: tuple[tuple[Dist, ...], ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"labels must be nonempty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        n = len(labels)
        if len(self.matrix) != n:
            raise ValueError(f"matrix has {len(self.matrix)} rows, expected {n}")
        rows = []
        for i, row in enumerate(self.matrix):
            row = tuple(as_dist(v) for v in row)
            if len(row) != n:
                raise ValueError(f"matrix row {i} has length {len(row)}, expected {n}")
            rows.append(row)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", tuple(rows))

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> Dist:
        return self.matrix[i][j]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"no point labeled {label!r}") from None

    def subset(self, members: Iterable[int]) -> "Subset":
        return Subset(self, frozenset(members))

    def validate(self) -> Report:
        return validate_pseudometric(self.labels, self.matrix)


@dataclass(frozen=True)
class Subset:
    """A subset of a space's points, held as a frozenset of indices."""

    space: Space
    members: frozenset[int]

    def __post_init__(self) -> None:
        members = frozenset(self.members)
        for i in members:
            if not 0 <= i < self.space.n:
                raise ValueError(f"point index {i} out of range")
        object.__setattr__(self, "members", members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.space.labels[i] for i in sorted(self.members))

    def complement(self) -> "Subset":
        return Subset(self.space, frozenset(range(self.space.n)) - self.members)


SetLike = Union[Subset, Iterable[int]]


def members_of(space: Space, A: SetLike) -> frozenset[int]:
    """Normalize a subset argument to a frozenset of valid indices of ``space``."""
    if isinstance(A, Subset):
        if A.space != space:
            raise ValueError("subset belongs to a different space")
        return A.members
    members = frozenset(A)
    for i in members:
        if not 0 <= i < space.n:
            raise ValueError(f"point index {i} out of range")
    return members


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering all point indices of a space.

    Blocks are canonically ordered by least member, which makes every output
    derived from a partition deterministic.
    """

    space: Space
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if seen & b:
                raise ValueError("blocks are not disjoint")
            seen |= b
        if seen != set(range(self.space.n)):
            raise ValueError("blocks do not cover the space")
        if list(self.blocks) != sorted(self.blocks, key=min):
            raise ValueError("blocks must be ordered by least member")

    def block_of(self, i: int) -> frozenset[int]:
        for b in self.blocks:
            if i in b:
                return b
        raise ValueError(f"point index {i} out of range")

    def block_index(self, i: int) -> int:
        for k, b in enumerate(self.blocks):
            if i in b:
                return k
        raise ValueError(f"point index {i} out of range")


@dataclass(frozen=True)
class PointMap:
    """A total map between the point sets of two spaces.

    ``images[i]`` is the codomain index of domain point ``i``. Carrier for
    projections, sections, embeddings, pseudoisometries and isometries.
    """

    domain: Space
    codomain: Space
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        if len(images) != self.domain.n:
            raise ValueError(f"map has {len(images)} images, expected {self.domain.n}")
        for i in images:
            if not 0 <= i < self.codomain.n:
                raise ValueError(f"image index {i} out of range for codomain")
        object.__setattr__(self, "images", images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    @classmethod
    def identity(cls, space: Space) -> "PointMap":
        return cls(space, space, tuple(range(space.n)))


class _UnionFind:
    """Array-based union-find with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # smaller root wins so representatives stay least-index
            if rj < ri:
                ri, rj = rj, ri
            self.parent[rj] = ri


def _raw_rational(value: object, where: str) -> Fraction:
    if isinstance(value, float):
        raise ValueError(f"entry {where} is a float; distances must be exact rationals")
    try:
        return Fraction(value)  # type: ignore[arg-type]
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"entry {where} is not a rational number: {value!r}") from None


def validate_pseudometric(labels: Sequence[str], matrix: Sequence[Sequence[object]]) -> Report:
    """Check the pseudometric axioms on raw input, reporting every violation.

    Structural problems (non-square matrix, dimension mismatch, duplicate
    labels, unparseable entries) raise ``ValueError``; they are input errors,
    not axiom violations. Axiom violations are collected exhaustively:
    negativity, nonzero diagonal, asymmetry, and every ordered triangle
    violation, each with a witness. The triangle witness ``(i, k, j)`` means
    ``d(i, j) > d(i, k) + d(k, j)``.
    """
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate labels")
    n = len(labels)
    if len(matrix) != n:
        raise ValueError(f"matrix has {len(matrix)} rows, expected {n}")
    rows: list[tuple[Fraction, ...]] = []
    for i, raw_row in enumerate(matrix):
        raw_row = tuple(raw_row)
        if len(raw_row) != n:
            raise ValueError(f"matrix row {i} has length {len(raw_row)}, expected {n}")
        rows.append(tuple(_raw_rational(v, f"({i},{j})") for j, v in enumerate(raw_row)))

    violations: list[Violation] = []
    for i in range(n):
        for j in range(n):
            if rows[i][j] < 0:
                violations.append(Violation("negative", (i, j), (rows[i][j],)))
    for i in range(n):
        if rows[i][i] != 0:
            violations.append(Violation("diagonal", (i,), (rows[i][i],)))
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                violations.append(Violation("symmetry", (i, j), (rows[i][j], rows[j][i])))
    for i in range(n):
        for j in range(n):
            dij = rows[i][j]
            for k in range(n):
                if dij > rows[i][k] + rows[k][j]:
                    violations.append(
                        Violation("triangle", (i, k, j), (dij, rows[i][k], rows[k][j]))
                    )
    return Report.from_violations(violations)


def is_metric(space: Space) -> bool:
    """True iff all distances between distinct points are positive."""
    for i in range(space.n):
        for j in range(i + 1, space.n):
            if space.matrix[i][j] == 0:
                return False
    return True


def zero_blocks_unchecked(space: Space) -> list[frozenset[int]]:
    """Connected components of the distance-0 relation, ordered by least member.

    Does not require the relation to be transitive; callers that do should
    use :func:`zero_classes`.
    """
    uf = _UnionFind(space.n)
    for i in range(space.n):
        for j in range(i + 1, space.n):
            if space.matrix[i][j] == 0:
                uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(space.n):
        groups.setdefault(uf.find(i), []).append(i)
    return [frozenset(g) for g in sorted(groups.values(), key=min)]


def zero_classes(space: Space) -> Partition:
    """Partition the points into classes of pairwise distance 0.

    For a valid pseudometric the zero-distance relation is transitive (a
    consequence of the triangle inequality); this is verified as a sanity
    check and a ``ValueError`` is raised if the input breaks it.
    """
    blocks = zero_blocks_unchecked(space)
    for b in blocks:
        for i in b:
            for j in b:
                if space.matrix[i][j] != 0:
                    raise ValueError(
                        "zero-distance relation is not transitive: "
                        f"d({space.labels[i]},{space.labels[j]}) = "
                        f"{format_dist(space.matrix[i][j])}; not a valid pseudometric"
                    )
    return Partition(space, tuple(blocks))


def class_of(space: Space, a: int) -> Subset:
    """The set of points at distance 0 from point ``a`` (a row scan)."""
    if not 0 <= a < space.n:
        raise ValueError(f"point index {a} out of range")
    return Subset(space, frozenset(x for x in range(space.n) if space.matrix[a][x] == 0))


def saturate(space: Space, A: SetLike) -> Subset:
    """Union of the zero-distance classes of all members of ``A``.

    A closure operator: extensive, monotone, idempotent. Its fixed points
    are exactly the closed (equivalently, open) sets of the finite
    pseudometric topology.
    """
    members = members_of(space, A)
    part = zero_classes(space)
    out: set[int] = set()
    for b in part.blocks:
        if b & members:
            out |= b
    return Subset(space, frozenset(out))
