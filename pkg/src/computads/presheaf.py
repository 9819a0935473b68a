"""Finite presheaves on a direct category, morphisms and hom enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field

from .base import DirectCategory, FaceRef, SortRef, truncate_category
from .errors import (
    BaseMismatch,
    FunctorialityFailure,
    MissingAction,
    UnknownSort,
)


@dataclass
class Presheaf:
    """A finite presheaf: cells per sort and a boundary action per face.

    ``action[(face, cell)]`` is the value of the contravariant action of
    ``face : j -> i`` on a cell over ``i``; it is a cell over ``j``.
    Cell ids are unique across sorts so that actions can name cells bare.
    """

    base: DirectCategory
    cells: dict[SortRef, tuple[str, ...]]
    action: dict[tuple[FaceRef, str], str]
    _sort_of: dict[str, SortRef] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._sort_of:
            self._sort_of = {
                c: s for s, cs in self.cells.items() for c in cs
            }

    def cells_at(self, sort: SortRef) -> tuple[str, ...]:
        if sort not in self.base.dims:
            raise UnknownSort(f"unknown sort {sort!r}")
        return self.cells.get(sort, ())

    def sort_of(self, cell: str) -> SortRef:
        return self._sort_of[cell]

    def act(self, face: FaceRef, cell: str) -> str:
        return self.action[(face, cell)]

    def is_empty(self) -> bool:
        return all(not cs for cs in self.cells.values())

    def size(self) -> dict[SortRef, int]:
        return {s: len(self.cells_at(s)) for s in self.base.sorts}


@dataclass
class PresheafMorphism:
    src: Presheaf
    dst: Presheaf
    component: dict[str, str]  # cell of src -> cell of dst, preserving sorts

    def __call__(self, cell: str) -> str:
        return self.component[cell]

    def key(self) -> tuple:
        return tuple(sorted(self.component.items()))


def _check_functorial(p: Presheaf) -> None:
    for sort in p.base.sorts:
        for cell in p.cells_at(sort):
            for face in p.base.faces_into(sort):
                if (face, cell) not in p.action:
                    raise MissingAction(f"action of {face!r} undefined on {cell!r}")
                image = p.action[(face, cell)]
                j = p.base.face(face).src
                if image not in p.cells.get(j, ()):
                    raise FunctorialityFailure(
                        f"action of {face!r} sends {cell!r} outside the {j!r}-cells"
                    )
    for (second, first) in (
        pair for s in p.base.sorts for pair in p.base.composable_into(s)
    ):
        comp = p.base.compose(first, second)
        for cell in p.cells_at(p.base.face(second).dst):
            if p.act(first, p.act(second, cell)) != p.act(comp, cell):
                raise FunctorialityFailure(
                    f"action violates {first!r};{second!r} = {comp!r} on {cell!r}"
                )


def make_presheaf(
    base: DirectCategory,
    cells: dict[SortRef, tuple[str, ...]],
    action: dict[tuple[FaceRef, str], str],
) -> Presheaf:
    """Build and check a presheaf; cell ids must be globally unique."""
    full_cells = {s: tuple(cells.get(s, ())) for s in base.sorts}
    seen: set[str] = set()
    for cs in full_cells.values():
        for c in cs:
            if c in seen:
                raise FunctorialityFailure(f"duplicate cell id {c!r}")
            seen.add(c)
    extra = {k for k in action if k[1] not in seen}
    if extra:
        raise MissingAction(f"action on undeclared cells: {sorted(extra)[:3]}")
    p = Presheaf(base=base, cells=full_cells, action=dict(action))
    _check_functorial(p)
    return p


def validate_presheaf(raw: dict, base: DirectCategory | None = None) -> Presheaf:
    """Validate the JSON shape ``{category, cells: {sort: [ids]}, action:
    [{face, from, to}]}``; ``base`` overrides the embedded category."""
    from .base import validate_category

    if base is None:
        base = validate_category(raw["category"])
    cells = {s: tuple(ids) for s, ids in raw.get("cells", {}).items()}
    for s in cells:
        if s not in base.dims:
            raise UnknownSort(f"cells listed at unknown sort {s!r}")
    action = {}
    for entry in raw.get("action", []):
        action[(entry["face"], entry["from"])] = entry["to"]
    return make_presheaf(base, cells, action)


def presheaf_to_json(p: Presheaf) -> dict:
    from .base import category_to_json

    return {
        "category": category_to_json(p.base),
        "cells": {s: list(p.cells_at(s)) for s in p.base.sorts if p.cells_at(s)},
        "action": [
            {"face": f, "from": c, "to": v}
            for (f, c), v in sorted(p.action.items())
        ],
    }


# -- representables -----------------------------------------------------------

def _identity_cell(cat: DirectCategory, sort: SortRef) -> str:
    return f"id_{sort}"


def representable(cat: DirectCategory, sort: SortRef) -> Presheaf:
    """The presheaf of maps into ``sort``: cells at j are hom(j, sort)."""
    if sort not in cat.dims:
        raise UnknownSort(f"unknown sort {sort!r}")
    ident = _identity_cell(cat, sort)
    cells: dict[str, tuple[str, ...]] = {s: () for s in cat.sorts}
    cells[sort] = (ident,)
    for f in cat.faces_into(sort):
        j = cat.face(f).src
        cells[j] = cells[j] + (f,)
    cells = {s: tuple(sorted(cs)) for s, cs in cells.items()}
    action: dict[tuple[str, str], str] = {}
    for s in cat.sorts:
        for cell in cells[s]:
            for face in cat.faces_into(s):
                # Precomposition; acting on the identity yields the face itself.
                action[(face, cell)] = (
                    face if cell == ident else cat.compose(face, cell)
                )
    return make_presheaf(cat, cells, action)


def boundary_representable(
    cat: DirectCategory, sort: SortRef
) -> tuple[Presheaf, PresheafMorphism]:
    """The sub-presheaf of ``representable(sort)`` without the identity,
    together with its inclusion."""
    full = representable(cat, sort)
    ident = _identity_cell(cat, sort)
    cells = {
        s: tuple(c for c in full.cells_at(s) if c != ident) for s in cat.sorts
    }
    action = {
        k: v for k, v in full.action.items() if k[1] != ident
    }
    sub = make_presheaf(cat, cells, action)
    incl = PresheafMorphism(
        src=sub, dst=full, component={c: c for cs in cells.values() for c in cs}
    )
    return sub, incl


# -- morphisms ----------------------------------------------------------------

def check_morphism(h: PresheafMorphism) -> None:
    """Raise if ``h`` is not a natural transformation."""
    if h.src.base is not h.dst.base and h.src.base.dims != h.dst.base.dims:
        raise BaseMismatch("presheaf morphism across different bases")
    for sort in h.src.base.sorts:
        for cell in h.src.cells_at(sort):
            img = h.component.get(cell)
            if img is None:
                raise MissingAction(f"morphism undefined on cell {cell!r}")
            if img not in h.dst.cells_at(sort):
                raise FunctorialityFailure(
                    f"morphism sends {cell!r} outside the {sort!r}-cells"
                )
            for face in h.src.base.faces_into(sort):
                if h.component[h.src.act(face, cell)] != h.dst.act(face, img):
                    raise FunctorialityFailure(
                        f"naturality fails at {cell!r} along {face!r}"
                    )


def enumerate_hom(x: Presheaf, y: Presheaf) -> list[PresheafMorphism]:
    """All natural transformations x -> y, in a canonical order.

    Backtracks over the sorts in increasing dimension, so naturality against
    already-assigned lower cells is checked as soon as a cell is placed.
    """
    if x.base.dims != y.base.dims or x.base.faces.keys() != y.base.faces.keys():
        raise BaseMismatch("hom enumeration across different bases")
    base = x.base
    sorts = base.sorts  # already ordered by (dim, id)
    cell_order = [c for s in sorts for c in x.cells_at(s)]
    results: list[PresheafMorphism] = []

    def extend(idx: int, comp: dict[str, str]) -> None:
        if idx == len(cell_order):
            results.append(PresheafMorphism(src=x, dst=y, component=dict(comp)))
            return
        cell = cell_order[idx]
        sort = x.sort_of(cell)
        for cand in y.cells_at(sort):
            ok = True
            for face in base.faces_into(sort):
                if comp[x.act(face, cell)] != y.act(face, cand):
                    ok = False
                    break
            if ok:
                comp[cell] = cand
                extend(idx + 1, comp)
                del comp[cell]

    extend(0, {})
    return results


# -- truncation and skeleton ---------------------------------------------------

def truncate_presheaf(p: Presheaf, n: int) -> Presheaf:
    """Restriction to the sorts of dimension at most ``n``."""
    base = truncate_category(p.base, n)
    cells = {s: p.cells_at(s) for s in base.sorts}
    action = {
        k: v for k, v in p.action.items() if k[0] in base.faces
    }
    return Presheaf(base=base, cells=cells, action=action)


def skeleton_presheaf(p: Presheaf, base: DirectCategory) -> Presheaf:
    """Re-extend a truncated presheaf over ``base`` by empty cells."""
    cells = {s: p.cells.get(s, ()) for s in base.sorts}
    return Presheaf(base=base, cells=cells, action=dict(p.action))
