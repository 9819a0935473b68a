"""Depth-bounded term enumeration and the free-algebra adjunction data.

Terms of a fixed sort are enumerated by depth.  An argument family for a
symbol assigns terms to the arity cells; because every face strictly lowers
dimension, the boundary profile of each cell is forced by the assignment to
lower cells, so enumeration is a product over cells of profile-indexed
candidate lists rather than a blind search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import SortRef
from .computad import Computad, ComputadMorphism, free_computad, make_morphism
from .presheaf import Presheaf, PresheafMorphism, make_presheaf
from .signature import Signature
from .terms import Term, Var, app, boundary, serialize, subst


def _term_cache(c: Computad) -> dict:
    cache = getattr(c, "_terms_by_depth", None)
    if cache is None:
        cache = {}
        c._terms_by_depth = cache
    return cache


def boundary_profile(c: Computad, t: Term, sort: SortRef) -> tuple:
    return tuple(boundary(c, f, t) for f in c.base.faces_into(sort))


def argument_families(
    c: Computad, arity: Presheaf, max_depth: int
) -> list[dict[str, Term]]:
    """All presheaf morphisms from ``arity`` into terms of depth <= max_depth.

    Cells are filled in increasing dimension; every cell of positive dimension
    has a fully forced boundary profile, so only bottom cells branch.
    """
    cells = [cell for s in arity.base.sorts for cell in arity.cells_at(s)]
    indexed: dict[SortRef, dict[tuple, list[Term]]] = {}
    for s in {arity.sort_of(cell) for cell in cells}:
        by_profile: dict[tuple, list[Term]] = {}
        for t in enumerate_terms(c, s, max_depth):
            by_profile.setdefault(boundary_profile(c, t, s), []).append(t)
        indexed[s] = by_profile

    families: list[dict[str, Term]] = [{}]
    for cell in cells:
        s = arity.sort_of(cell)
        faces = arity.base.faces_into(s)
        new: list[dict[str, Term]] = []
        for fam in families:
            profile = tuple(fam[arity.act(f, cell)] for f in faces)
            for t in indexed[s].get(profile, ()):
                ext = dict(fam)
                ext[cell] = t
                new.append(ext)
        families = new
        if not families:
            break
    return families


def enumerate_terms(c: Computad, sort: SortRef, max_depth: int) -> list[Term]:
    """The terms of ``sort`` of depth at most ``max_depth``, canonically
    ordered (by depth, then serialisation) and duplicate-free."""
    cache = _term_cache(c)
    key = (sort, max_depth)
    if key in cache:
        return cache[key]
    terms: list[Term] = [Var(g) for g in c.generators_at(sort)]
    if max_depth >= 1:
        for sym in c.signature.symbols_at(sort):
            for fam in argument_families(c, sym.arity, max_depth - 1):
                terms.append(app(sym.id, fam))
    terms.sort(key=lambda t: t.key())
    cache[key] = terms
    return terms


def terms_saturated(c: Computad, sort: SortRef, max_depth: int) -> bool:
    """True when no new term of ``sort`` appears at depth max_depth + 1,
    which (by induction on depth) pins the whole term set."""
    return len(enumerate_terms(c, sort, max_depth)) == len(
        enumerate_terms(c, sort, max_depth + 1)
    )


# -- the term presheaf of a computad --------------------------------------------

def _cell_name(t: Term) -> str:
    return serialize(t)


@dataclass
class TermPresheafView:
    """A finite boundary-closed family of terms of a computad, presented as a
    presheaf whose cells name the terms."""

    computad: Computad
    depth: int
    presheaf: Presheaf
    encode: dict[Term, str]
    decode: dict[str, Term]


def term_presheaf(c: Computad, max_depth: int) -> TermPresheafView:
    """All terms of depth <= max_depth, closed under boundaries.

    Boundaries of a bounded-depth term can exceed the bound (a symbol's
    boundary term is substituted into), so the cell set is the closure.
    """
    by_sort: dict[SortRef, set[Term]] = {
        s: set(enumerate_terms(c, s, max_depth)) for s in c.base.sorts
    }
    # Close under the boundary action.  Boundaries land at strictly lower
    # sorts, so one sweep from high sorts downwards suffices.
    for s in reversed(c.base.sorts):
        for t in list(by_sort[s]):
            for face in c.base.faces_into(s):
                b = boundary(c, face, t)
                by_sort[c.base.face(face).src].add(b)

    cells: dict[SortRef, tuple[str, ...]] = {}
    encode: dict[Term, str] = {}
    decode: dict[str, Term] = {}
    for s in c.base.sorts:
        ordered = sorted(by_sort[s], key=lambda t: t.key())
        names = tuple(_cell_name(t) for t in ordered)
        cells[s] = names
        for t, n in zip(ordered, names):
            encode[t] = n
            decode[n] = t
    action = {}
    for s in c.base.sorts:
        for t in by_sort[s]:
            for face in c.base.faces_into(s):
                action[(face, encode[t])] = encode[boundary(c, face, t)]
    p = make_presheaf(c.base, cells, action)
    return TermPresheafView(
        computad=c, depth=max_depth, presheaf=p, encode=encode, decode=decode
    )


# -- adjunction data -------------------------------------------------------------

def unit(x: Presheaf, signature: Signature, depth: int = 0) -> PresheafMorphism:
    """The unit at a presheaf: each cell becomes the generator term over the
    free computad."""
    view = term_presheaf(free_computad(x, signature), depth)
    component = {cell: view.encode[Var(cell)] for _, cell in _all_cells(x)}
    return PresheafMorphism(src=x, dst=view.presheaf, component=component)


def _all_cells(x: Presheaf):
    return [(s, c) for s in x.base.sorts for c in x.cells_at(s)]


def counit(c: Computad, depth: int) -> ComputadMorphism:
    """The counit at a computad: the free computad on the (depth-bounded)
    terms of C maps back to C by reading each term cell as itself."""
    view = term_presheaf(c, depth)
    free = free_computad(view.presheaf, c.signature)
    return make_morphism(free, c, dict(view.decode), check=True)


def mult(t: Term, decode: dict[str, Term]) -> Term:
    """Flatten one layer: a term whose generators name terms becomes the
    substituted term.  ``mult(Var enc(u)) == u``."""
    return subst(t, decode)


def term_action(t: Term, component: dict[str, str]) -> Term:
    """Functorial action of a presheaf morphism on terms over the free
    computads: relabel generator leaves."""
    from .terms import rename

    return rename(t, component)


def transpose(m: ComputadMorphism) -> dict[str, Term]:
    """A morphism out of a free computad is exactly an argument family."""
    return dict(m.assign)


def untranspose(
    arity: Presheaf, signature: Signature, c: Computad, family: dict[str, Term]
) -> ComputadMorphism:
    free = free_computad(arity, signature)
    return make_morphism(free, c, family, check=True)
