"""Double description method on integer data.

``cone_generators(rows, dim)`` turns the inequality description
``{y : <r, y> >= 0 for r in rows}`` into extreme rays plus a lineality basis.
All arithmetic is on Python ints; rays are kept primitive.
"""
from __future__ import annotations

from typing import Sequence

from ._linalg import inverse, independent_subset, nullspace, primitive, primitive_int


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def cone_generators(rows: Sequence[Sequence], dim: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Return ``(rays, lineality)`` of the cone cut out by ``rows``.

    Rays span the pointed part inside the orthogonal complement of the
    lineality space, so the output is canonical up to ordering.
    """
    int_rows = [primitive(r) for r in rows]
    int_rows = [r for r in int_rows if any(r)]
    lineality = [primitive(v) for v in nullspace(int_rows, dim)] if int_rows else [
        tuple(int(i == j) for j in range(dim)) for i in range(dim)
    ]
    if len(lineality) == dim:
        return [], sorted(lineality)
    # pin the pointed part to the complement of the lineality space
    system = list(int_rows)
    for v in lineality:
        system.append(v)
        system.append(tuple(-x for x in v))
    rays = _pointed_rays(system, dim)
    return sorted(set(rays)), lineality


def _pointed_rays(system: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    start = independent_subset(system, dim)
    assert len(start) == dim, "system must have full column rank"
    B = [system[i] for i in start]
    Binv = inverse(B)
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []
    start_set = set(start)
    for j in range(dim):
        col = primitive([Binv[i][j] for i in range(dim)])
        rays.append(col)
        masks.append(sum(1 << k for k in start if k != start[j]))
    order = [i for i in range(len(system)) if i not in start_set]
    for idx in order:
        a = system[idx]
        vals = [_dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            bit = 1 << idx
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        bit = 1 << idx
        new_masks = [masks[i] for i in pos] + [masks[i] | bit for i in zer]
        need = dim - 2
        for p in pos:
            mp = masks[p]
            for n in neg:
                common = mp & masks[n]
                if bin(common).count("1") < need:
                    continue
                adjacent = True
                for k, m in enumerate(masks):
                    if k != p and k != n and (m & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[p], vals[n]
                r = tuple(vp * x - vn * y for x, y in zip(rays[n], rays[p]))
                new_rays.append(primitive_int(r))
                new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
        if not rays:
            break
    return rays
