"""The discrete phase space Z_d^{2n} and its affine symplectic motions.

Points are stored as integer tuples in interleaved order
``(x0, p0, x1, p1, ...)``. The symplectic form is
``[u, v] = sum_j (x_j p'_j - p_j x'_j) mod d``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

# (d, n) pairs small enough to enumerate Sp(2n, d) by brute force.
ENUMERABLE = {(2, 1), (3, 1), (2, 2)}


class CapabilityError(ValueError):
    """Raised when a request is outside the supported (d, n) range."""


def is_prime(d: int) -> bool:
    return d >= 2 and all(d % k for k in range(2, int(d**0.5) + 1))


@dataclass(frozen=True)
class PhaseSpace:
    d: int
    n: int = 1

    def __post_init__(self):
        if not is_prime(self.d):
            raise ValueError(f"d must be prime, got {self.d}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")

    @property
    def size(self) -> int:
        return self.d ** (2 * self.n)

    @property
    def dim(self) -> int:
        """Hilbert-space dimension d^n."""
        return self.d**self.n

    @cached_property
    def points(self) -> tuple[tuple[int, ...], ...]:
        """All points in lexicographic order; position equals :meth:`index`."""
        return tuple(itertools.product(range(self.d), repeat=2 * self.n))

    @cached_property
    def J(self) -> np.ndarray:
        return symplectic_j(self.n)

    def index(self, point) -> int:
        idx = 0
        for c in self.point(point):
            idx = idx * self.d + c
        return idx

    def point(self, coords) -> tuple[int, ...]:
        coords = tuple(int(c) % self.d for c in coords)
        if len(coords) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} coordinates, got {len(coords)}")
        return coords

    def split(self, point) -> list[tuple[int, int]]:
        """Per-system ``(x, p)`` pairs of a point."""
        pt = self.point(point)
        return [(pt[2 * j], pt[2 * j + 1]) for j in range(self.n)]


def symplectic_j(n: int) -> np.ndarray:
    return np.kron(np.eye(n, dtype=np.int64), np.array([[0, 1], [-1, 0]], dtype=np.int64))


def symplectic_form(space: PhaseSpace, u, v) -> int:
    u = np.array(space.point(u), dtype=np.int64)
    v = np.array(space.point(v), dtype=np.int64)
    return int(u @ space.J @ v) % space.d


def symplectic_form_table(space: PhaseSpace) -> np.ndarray:
    """Matrix of ``[u, v]`` over all point pairs, indexed like ``space.points``."""
    pts = np.array(space.points, dtype=np.int64)
    return (pts @ space.J @ pts.T) % space.d


def is_symplectic(S, d: int) -> bool:
    S = np.asarray(S, dtype=np.int64)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        return False
    J = symplectic_j(S.shape[0] // 2)
    return bool(np.all((S.T @ J @ S - J) % d == 0))


@dataclass(frozen=True)
class AffineSymplectic:
    """The map ``v -> S v + a (mod d)``."""

    S: tuple[tuple[int, ...], ...]
    a: tuple[int, ...]
    d: int

    @classmethod
    def build(cls, S, a, d: int) -> AffineSymplectic:
        S = np.asarray(S, dtype=np.int64) % d
        if not is_symplectic(S, d):
            raise ValueError(f"matrix is not symplectic mod {d}:\n{S}")
        a = tuple(int(c) % d for c in a)
        if len(a) != S.shape[0]:
            raise ValueError("translation length does not match matrix size")
        return cls(tuple(tuple(int(x) for x in row) for row in S), a, d)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.S, dtype=np.int64)

    def __call__(self, point) -> tuple[int, ...]:
        return apply_affine(self, point)

    def permutation(self, space: PhaseSpace) -> np.ndarray:
        """``perm[i]`` is the index of the image of point ``i``."""
        pts = np.array(space.points, dtype=np.int64)
        imgs = (pts @ self.matrix.T + np.array(self.a)) % self.d
        weights = self.d ** np.arange(2 * space.n - 1, -1, -1)
        return imgs @ weights

    def to_json(self) -> dict:
        return {"S": [list(r) for r in self.S], "a": list(self.a)}


def apply_affine(m: AffineSymplectic, point) -> tuple[int, ...]:
    v = np.asarray(point, dtype=np.int64)
    if v.shape != (len(m.a),):
        raise ValueError(f"point has {v.size} coordinates, map acts on {len(m.a)}")
    return tuple(int(c) for c in (m.matrix @ v + np.array(m.a)) % m.d)


@lru_cache(maxsize=None)
def _enumerate(d: int, n: int) -> tuple[np.ndarray, ...]:
    size = 2 * n
    J = symplectic_j(n)
    vecs = np.array(list(itertools.product(range(d), repeat=size)), dtype=np.int64)
    # Build S column by column; each new column must have the right form
    # with all previously fixed columns, which prunes the search hard.
    out = []

    def extend(cols):
        k = len(cols)
        if k == size:
            S = np.array(cols, dtype=np.int64).T
            if is_symplectic(S, d):
                S.setflags(write=False)
                out.append(S)
            return
        for v in vecs:
            if all((cols[j] @ J @ v - J[j, k]) % d == 0 for j in range(k)):
                extend(cols + [v])

    extend([])
    out.sort(key=lambda S: tuple(S.ravel()))
    return tuple(out)


def enumerate_symplectic(space: PhaseSpace) -> tuple[np.ndarray, ...]:
    """All symplectic matrices over ``space`` in lexicographic (row-major) order."""
    if (space.d, space.n) not in ENUMERABLE:
        raise CapabilityError(
            f"symplectic enumeration supports (d, n) in {sorted(ENUMERABLE)}, "
            f"got ({space.d}, {space.n})"
        )
    return _enumerate(space.d, space.n)


def enumerate_affine(space: PhaseSpace):
    """Yield every affine symplectic map: all S crossed with all translations."""
    for S in enumerate_symplectic(space):
        for a in space.points:
            yield AffineSymplectic.build(S, a, space.d)
