"""Exact sparse Gaussian elimination over the cyclotomic field."""

from __future__ import annotations

from .scalars import CycScalar, ParamScalar


def _as_cyc(x) -> CycScalar:
    if isinstance(x, ParamScalar):
        if not x.is_constant():
            raise ValueError("linear algebra needs parameter-free entries")
        return x.constant()
    return x


def _sparse_rows(rows) -> list[dict[int, CycScalar]]:
    out = []
    for row in rows:
        if isinstance(row, dict):
            items = row.items()
        else:
            items = enumerate(row)
        d = {}
        for j, v in items:
            v = _as_cyc(v)
            if v:
                d[j] = v
        out.append(d)
    return out


def row_echelon(rows) -> tuple[list[dict[int, CycScalar]], list[int]]:
    """Reduced row echelon form; returns (pivot rows, pivot columns)."""
    pivots: dict[int, dict[int, CycScalar]] = {}
    for row in _sparse_rows(rows):
        row = dict(row)
        # eliminate existing pivots
        changed = True
        while row and changed:
            changed = False
            for col in sorted(row):
                if col in pivots:
                    factor = row[col]
                    for j, v in pivots[col].items():
                        nv = row.get(j)
                        nv = -(factor * v) if nv is None else nv - factor * v
                        if nv:
                            row[j] = nv
                        else:
                            row.pop(j, None)
                    changed = True
                    break
        if not row:
            continue
        col = min(row)
        inv = row[col].inverse()
        row = {j: v * inv for j, v in row.items()}
        # keep earlier pivots reduced
        for other in pivots.values():
            if col in other:
                factor = other[col]
                for j, v in row.items():
                    nv = other.get(j)
                    nv = -(factor * v) if nv is None else nv - factor * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        pivots[col] = row
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def rank(rows) -> int:
    return len(row_echelon(rows)[1])


def nullspace(rows, ncols: int, fld) -> list[list[CycScalar]]:
    """Basis of {x : rows . x = 0} as dense vectors of length ncols."""
    reduced, pcols = row_echelon(rows)
    pivot_set = set(pcols)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [fld.zero] * ncols
        vec[free] = fld.one
        for row, pc in zip(reduced, pcols):
            if free in row:
                vec[pc] = -row[free]
        basis.append(vec)
    return basis


__all__ = ["row_echelon", "rank", "nullspace"]
