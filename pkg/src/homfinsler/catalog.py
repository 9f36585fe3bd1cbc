"""Named example spaces used by tests, demos and the CLI.

Every entry has |v| = 0.5, keeping the 1-form length b = 0.5 < 1 with margin.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import InvariantVector, ReductiveModel, StructureConstants, build_model

__all__ = ["CatalogEntry", "get", "names"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    model: ReductiveModel
    v: InvariantVector
    notes: str


def _entry(name, dim_g, entries, v_coords, notes, h_dim=0):
    structure = StructureConstants.from_entries(dim_g, entries)
    model, v = build_model(structure, h_dim, np.eye(dim_g - h_dim), v_coords)
    return CatalogEntry(name=name, model=model, v=v, notes=notes)


_BUILDERS = {
    "abelian3": lambda: _entry(
        "abelian3", 3, {}, [0.5, 0.0, 0.0],
        "all brackets vanish; every curvature is identically zero"),
    "heisenberg3": lambda: _entry(
        "heisenberg3", 3, {(0, 1, 2): 1.0}, [0.5, 0.0, 0.0],
        "[e1,e2] = e3 with v along e1; nonvanishing S-curvature"),
    "solvable2": lambda: _entry(
        "solvable2", 2, {(0, 1, 1): 1.0}, [0.0, 0.5],
        "[e1,e2] = e2 with v along e2; the smallest nontrivial example"),
    "su2_like": lambda: _entry(
        "su2_like", 3, {(0, 1, 2): 1.0, (1, 2, 0): 1.0, (2, 0, 1): 1.0},
        [0.5, 0.0, 0.0],
        "cyclic brackets; [v, y] is orthogonal to both y and v, so S = 0"),
    "heisenberg_central_v": lambda: _entry(
        "heisenberg_central_v", 3, {(0, 1, 2): 1.0}, [0.0, 0.0, 0.5],
        "v central, so [v, .] = 0 and all curvatures vanish"),
}


def names() -> list[str]:
    return sorted(_BUILDERS)


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    """Fetch a catalog entry; unknown names list the available ones."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown catalog entry {name!r}; available: {', '.join(names())}"
        ) from None
    return builder()
