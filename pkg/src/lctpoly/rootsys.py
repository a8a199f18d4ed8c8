"""Root systems, Weyl groups and Weyl chambers.

Presets are realized in the basis of simple roots: inside each irreducible
block the simple roots are the standard basis vectors ``e_i`` of the dual
space and the simple coroots are the rows of the Cartan matrix, so that
``<alpha_j, alpha_i^vee> = A[i][j]``. The pairing between the space and its
dual is the plain dot product. Torus factors ``T<n>`` append ``n``
coordinates on which the Weyl group acts trivially.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._linalg import (
    add,
    dot,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    scale,
    transpose,
    vec,
    zeros,
)
from .errors import GroupTooLarge, MalformedCartanData, NotSemisimple, RankOverflow, ValidationError
from .fan import PolyhedralCone
from .polytope import RationalPolytope, hull

DEFAULT_MAX_WEYL = 10**5
DEFAULT_MAX_ROOTS = 10**4


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    """Cartan matrix ``A[i][j] = <alpha_j, alpha_i^vee>`` of an irreducible type."""
    kind = kind.upper()
    if kind == "G":
        if n != 2:
            raise ValidationError("type G only exists in rank 2")
        return [[2, -3], [-1, 2]]
    if n < 1:
        raise ValidationError("rank must be at least 1")
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    if kind == "A":
        return A
    if kind == "B":
        if n < 2:
            raise ValidationError("type B needs rank >= 2")
        A[n - 1][n - 2] = -2
        return A
    if kind == "C":
        if n < 2:
            raise ValidationError("type C needs rank >= 2")
        A[n - 2][n - 1] = -2
        return A
    if kind == "D":
        if n < 3:
            raise ValidationError("type D needs rank >= 3")
        A[n - 2][n - 1] = A[n - 1][n - 2] = 0
        A[n - 3][n - 1] = A[n - 1][n - 3] = -1
        return A
    raise ValidationError(f"unsupported root system type {kind!r}")


@dataclass(frozen=True, eq=False)
class RootSystem:
    ambient_dim: int
    simple_roots: tuple
    simple_coroots: tuple
    positive_roots: tuple
    positive_root_coefficients: tuple
    rho: tuple
    label: str = "custom"
    cartan: tuple = field(default=(), repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def is_semisimple(self) -> bool:
        """Whether the simple roots span the ambient space."""
        return self.rank == self.ambient_dim

    @property
    def roots(self) -> tuple:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    def weyl_chamber(self) -> PolyhedralCone:
        """``{x : alpha_i(x) >= 0}`` in the space paired with the roots."""
        if not self.simple_roots:
            return PolyhedralCone.full_space(self.ambient_dim)
        return PolyhedralCone.from_inequalities(self.simple_roots, (), self.ambient_dim)

    def reflect(self, i: int, lam: Sequence) -> tuple:
        """Simple reflection ``s_i`` on the dual space."""
        lam = vec(lam)
        return tuple(x - dot(lam, self.simple_coroots[i]) * a for x, a in zip(lam, self.simple_roots[i]))

    def reflect_coweight(self, i: int, x: Sequence) -> tuple:
        """Simple reflection ``s_i`` on the space (``x - alpha_i(x) alpha_i^vee``)."""
        x = vec(x)
        return tuple(y - dot(x, self.simple_roots[i]) * c for y, c in zip(x, self.simple_coroots[i]))

    def to_chamber(self, x: Sequence) -> tuple:
        """Move ``x`` into the closed Weyl chamber by simple reflections."""
        x = vec(x)
        while True:
            i = next((i for i, a in enumerate(self.simple_roots) if dot(a, x) < 0), None)
            if i is None:
                return x
            x = self.reflect_coweight(i, x)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "ambient_dim": self.ambient_dim,
            "simple_roots": [[str(x) for x in r] for r in self.simple_roots],
            "simple_coroots": [[str(x) for x in r] for r in self.simple_coroots],
        }


def _parse_label(label: str) -> list[tuple[str, int]]:
    parts = []
    for token in label.replace(" ", "").split("x"):
        m = re.fullmatch(r"([ABCDGTabcdgt])(\d+)", token)
        if not m:
            raise ValidationError(f"unrecognised root system label {token!r}")
        parts.append((m.group(1).upper(), int(m.group(2))))
    return parts


def _preset_data(label: str):
    parts = _parse_label(label)
    dim = sum(n for _, n in parts)
    roots, coroots = [], []
    offset = 0
    for kind, n in parts:
        if kind != "T":
            A = cartan_matrix(kind, n)
            for i in range(n):
                root = [Fraction(0)] * dim
                root[offset + i] = Fraction(1)
                coroot = [Fraction(0)] * dim
                for j in range(n):
                    coroot[offset + j] = Fraction(A[i][j])
                roots.append(tuple(root))
                coroots.append(tuple(coroot))
        elif n < 1:
            raise ValidationError("torus factor needs dimension >= 1")
        offset += n
    return dim, roots, coroots


def _positive_root_coefficients(A: list[list[Fraction]], max_roots: int) -> list[tuple[int, ...]]:
    r = len(A)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(r):
            if beta == simple[i]:
                continue
            pairing = sum(beta[j] * A[i][j] for j in range(r))
            new = tuple(b - int(pairing) if k == i else b for k, b in enumerate(beta))
            if min(new) < 0 or new in found:
                continue
            found.add(new)
            if len(found) > max_roots:
                raise RankOverflow(f"more than {max_roots} positive roots; Cartan data is not of finite type")
            queue.append(new)
    return sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))


def build_root_system(
    preset: str | None = None,
    *,
    simple_roots: Sequence[Sequence] | None = None,
    simple_coroots: Sequence[Sequence] | None = None,
    ambient_dim: int | None = None,
    max_roots: int = DEFAULT_MAX_ROOTS,
) -> RootSystem:
    """Build a root system from a preset label (``"A2"``, ``"B3xT1"`` ...)
    or from explicit simple roots and coroots.
    """
    if preset is not None:
        dim, roots, coroots = _preset_data(preset)
        label = preset
    else:
        roots = [vec(r) for r in (simple_roots or [])]
        coroots = [vec(c) for c in (simple_coroots or [])]
        if ambient_dim is None:
            if not roots:
                raise ValidationError("ambient_dim is required for an empty root system")
            ambient_dim = len(roots[0])
        dim = int(ambient_dim)
        label = "custom"
    if dim < 1:
        raise ValidationError("ambient dimension must be positive")
    if len(roots) != len(coroots):
        raise MalformedCartanData("need as many simple coroots as simple roots")
    for v in roots + coroots:
        if len(v) != dim:
            raise MalformedCartanData("root or coroot of wrong dimension")
    r = len(roots)
    A = [[dot(roots[j], coroots[i]) for j in range(r)] for i in range(r)]
    for i in range(r):
        if A[i][i] != 2:
            raise MalformedCartanData(f"<alpha_{i}, alpha_{i}^vee> = {A[i][i]}, expected 2")
        for j in range(r):
            if i == j:
                continue
            if A[i][j].denominator != 1 or A[i][j] > 0:
                raise MalformedCartanData(f"Cartan entry ({i},{j}) = {A[i][j]} is not a non-positive integer")
            if (A[i][j] == 0) != (A[j][i] == 0):
                raise MalformedCartanData(f"Cartan entries ({i},{j}) and ({j},{i}) must vanish together")
    if r and (rank(roots, dim) < r or rank(coroots, dim) < r):
        raise MalformedCartanData("simple roots and coroots must be linearly independent")
    coeffs = _positive_root_coefficients(A, max_roots) if r else []
    pos = []
    for c in coeffs:
        v = zeros(dim)
        for k, ck in enumerate(c):
            if ck:
                v = add(v, scale(ck, roots[k]))
        pos.append(v)
    rho = zeros(dim)
    for v in pos:
        rho = add(rho, v)
    rho = scale(Fraction(1, 2), rho)
    return RootSystem(
        ambient_dim=dim,
        simple_roots=tuple(roots),
        simple_coroots=tuple(coroots),
        positive_roots=tuple(pos),
        positive_root_coefficients=tuple(coeffs),
        rho=rho,
        label=label,
        cartan=tuple(tuple(row) for row in A),
    )


def group_closure(generators: Sequence, dim: int, max_order: int = DEFAULT_MAX_WEYL) -> list:
    """Breadth-first closure of a finite matrix group, identity first."""
    gens = [tuple(tuple(Fraction(x) for x in row) for row in g) for g in generators]
    e = identity(dim)
    elements = [e]
    seen = {e}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mat_mul(s, g)
            if h not in seen:
                seen.add(h)
                elements.append(h)
                if len(elements) > max_order:
                    raise GroupTooLarge(f"group order exceeds {max_order}")
                queue.append(h)
    return elements


@dataclass(frozen=True, eq=False)
class WeylGroup:
    """Finite Weyl group as matrices acting on the dual space.

    The action on the space itself is by inverse transpose
    (:meth:`act_coweight`).
    """

    dim: int
    elements: tuple
    generators: tuple

    def __len__(self) -> int:
        return len(self.elements)

    def act(self, w, lam: Sequence) -> tuple:
        return mat_vec(w, vec(lam))

    def act_coweight(self, w, x: Sequence) -> tuple:
        return mat_vec(transpose(inverse(w)), vec(x))

    def orbit(self, lam: Sequence) -> list:
        lam = vec(lam)
        return sorted({mat_vec(w, lam) for w in self.elements})

    def is_fixed(self, lam: Sequence) -> bool:
        lam = vec(lam)
        return all(mat_vec(s, lam) == lam for s in self.generators)


def reflection_matrix(rs: RootSystem, i: int) -> tuple:
    a, c = rs.simple_roots[i], rs.simple_coroots[i]
    n = rs.ambient_dim
    return tuple(
        tuple(Fraction(int(k == l)) - a[k] * c[l] for l in range(n)) for k in range(n)
    )


def weyl_group(rs: RootSystem, max_order: int = DEFAULT_MAX_WEYL) -> WeylGroup:
    gens = tuple(reflection_matrix(rs, i) for i in range(rs.rank))
    return WeylGroup(rs.ambient_dim, tuple(group_closure(gens, rs.ambient_dim, max_order)), gens)


def orbit_hull(W: WeylGroup, m: Sequence) -> RationalPolytope:
    """Convex hull of the orbit ``W . m``."""
    return hull(W.orbit(m))


def wonderful_polytope(rs: RootSystem, W: WeylGroup | None = None) -> RationalPolytope:
    """Anticanonical polytope of the wonderful compactification:
    the orbit hull of ``2 rho + sum of simple roots``.
    """
    if not rs.simple_roots or not rs.is_semisimple:
        raise NotSemisimple("wonderful compactification needs simple roots spanning the space")
    W = W or weyl_group(rs)
    top = scale(2, rs.rho)
    for a in rs.simple_roots:
        top = add(top, a)
    return orbit_hull(W, top)


def fixed_subspace(G: Sequence, dim: int | None = None) -> list:
    """Basis of the common fixed space ``{x : g x = x for all g in G}``."""
    G = list(G)
    if dim is None:
        if not G:
            raise ValidationError("dimension needed for an empty matrix list")
        dim = len(G[0])
    rows = []
    for g in G:
        if len(g) != dim or any(len(row) != dim for row in g):
            raise ValidationError("matrices must be square of the common size")
        for k in range(dim):
            rows.append(tuple(Fraction(g[k][l]) - (1 if k == l else 0) for l in range(dim)))
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    return nullspace(rows, dim)
