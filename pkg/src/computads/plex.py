"""Polyplexes: the shapes of terms, their representing computads, and the
nerve presentation of computads.

A polyplex records everything about a term except which generators it uses:
a generator becomes its family of boundary shapes, an application keeps its
symbol with the shapes of its arguments.  Shapes are self-contained finite
trees (the terminal computad itself is never materialised; dimension strictly
decreases along boundary families, so the trees stay finite).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .base import FaceRef, SortRef
from .computad import (
    Colimit,
    Computad,
    ComputadMorphism,
    apply_morphism,
    colimit_var,
    make_computad,
    make_morphism,
)
from .signature import Signature
from .terms import App, Term, Var, app, boundary


class Polyplex:
    sort: SortRef
    weight: int  # enumeration rank: see enumerate_polyplexes
    app_depth: int  # depth of any term with this shape

    def key(self) -> tuple:
        return (self.weight, pserialize(self))


@dataclass(frozen=True)
class PVar(Polyplex):
    """Shape of a generator: the shapes of its boundaries, per face."""

    sort: SortRef
    btype: tuple[tuple[FaceRef, Polyplex], ...]
    weight: int = field(default=0, compare=False)
    app_depth: int = field(default=0, compare=False)

    def boundary_at(self, face: FaceRef) -> Polyplex:
        for f, p in self.btype:
            if f == face:
                return p
        raise KeyError(face)


@dataclass(frozen=True)
class PApp(Polyplex):
    """Shape of an application: the symbol with the shapes of its arguments."""

    sort: SortRef
    symbol: str
    args: tuple[tuple[str, Polyplex], ...]
    weight: int = field(default=0, compare=False)
    app_depth: int = field(default=0, compare=False)

    def arg_map(self) -> dict[str, Polyplex]:
        return dict(self.args)


def pvar(sort: SortRef, btype: dict[FaceRef, Polyplex]) -> PVar:
    items = tuple(sorted(btype.items()))
    w = max((p.weight for _, p in items), default=0)
    return PVar(sort, items, weight=w, app_depth=0)


def papp(sort: SortRef, symbol: str, args: dict[str, Polyplex]) -> PApp:
    items = tuple(sorted(args.items()))
    w = 1 + max((p.weight for _, p in items), default=0)
    d = 1 + max((p.app_depth for _, p in items), default=0)
    return PApp(sort, symbol, items, weight=w, app_depth=d)


def pserialize(p: Polyplex) -> str:
    if isinstance(p, PVar):
        inner = ",".join(f"{f}:{pserialize(q)}" for f, q in p.btype)
        return f"<{p.sort}|{inner}>"
    assert isinstance(p, PApp)
    inner = ",".join(f"{c}={pserialize(q)}" for c, q in p.args)
    return f"{p.symbol}[{inner}]"


def is_plex(p: Polyplex) -> bool:
    return isinstance(p, PVar)


# -- boundaries of polyplexes ------------------------------------------------------

def psubst(sig: Signature, t: Term, args: dict[str, Polyplex]) -> Polyplex:
    """Substitute argument shapes into a boundary term over an arity."""
    if isinstance(t, Var):
        return args[t.gen]
    assert isinstance(t, App)
    return papp(
        sig.symbol(t.symbol).sort,
        t.symbol,
        {c: psubst(sig, u, args) for c, u in t.args},
    )


def pboundary(sig: Signature, face: FaceRef, p: Polyplex) -> Polyplex:
    """Boundary shape of a shape, computed without any computad."""
    if isinstance(p, PVar):
        return p.boundary_at(face)
    assert isinstance(p, PApp)
    sym = sig.symbol(p.symbol)
    return psubst(sig, sym.boundary[face], p.arg_map())


def classify(c: Computad, t: Term) -> Polyplex:
    """The shape of a term: image under the unique map to the terminal."""
    if isinstance(t, Var):
        sort = c.gen_sort(t.gen)
        return pvar(
            sort,
            {
                face: classify(c, c.gluing(t.gen, face))
                for face in c.base.faces_into(sort)
            },
        )
    assert isinstance(t, App)
    sym = c.symbol(t.symbol)
    return papp(sym.sort, t.symbol, {cell: classify(c, u) for cell, u in t.args})


# -- enumeration --------------------------------------------------------------------

def enumerate_polyplexes(
    sig: Signature, sort: SortRef, max_weight: int
) -> list[Polyplex]:
    """All shapes of the given sort up to the weight bound, canonically ordered.

    A generator shape weighs as much as its heaviest boundary member; an
    application adds one to its heaviest argument.  Bounding the weight keeps
    the enumeration finite and complete.
    """
    return _enum_cached(sig, sort, max_weight)


def _plex_cache(sig: Signature) -> dict:
    cache = getattr(sig, "_pplex_cache", None)
    if cache is None:
        cache = {}
        sig._pplex_cache = cache
    return cache


def _enum_cached(sig: Signature, sort: SortRef, w: int) -> list[Polyplex]:
    cache = _plex_cache(sig)
    key = (sort, w)
    if key in cache:
        return cache[key]
    out: list[Polyplex] = []
    # generator shapes: compatible boundary families over the faces into sort
    for fam in _boundary_families(sig, sort, w):
        p = pvar(sort, fam)
        if p.weight <= w:
            out.append(p)
    # application shapes
    if w >= 1:
        for sym in sig.symbols_at(sort):
            for fam in _arg_families(sig, sym.arity, w - 1):
                out.append(papp(sort, sym.id, fam))
    out.sort(key=lambda p: p.key())
    cache[key] = out
    return out


def _indexed_by_profile(
    sig: Signature, sort: SortRef, w: int
) -> dict[tuple, list[Polyplex]]:
    by_profile: dict[tuple, list[Polyplex]] = {}
    faces = sig.base.faces_into(sort)
    for p in _enum_cached(sig, sort, w):
        profile = tuple(pboundary(sig, f, p) for f in faces)
        by_profile.setdefault(profile, []).append(p)
    return by_profile


def _fill_cells(
    sig: Signature,
    cells: list[tuple[SortRef, str, tuple[FaceRef, ...], dict]],
    w: int,
) -> list[dict]:
    """Shared backtracking core: each entry is (sort, name, faces, act) where
    act maps faces to earlier names; the profile of each cell is forced."""
    families: list[dict] = [{}]
    indexes: dict[SortRef, dict[tuple, list[Polyplex]]] = {}
    for sort, name, faces, act in cells:
        if sort not in indexes:
            indexes[sort] = _indexed_by_profile(sig, sort, w)
        new = []
        for fam in families:
            profile = tuple(fam[act[f]] for f in faces)
            for p in indexes[sort].get(profile, ()):
                ext = dict(fam)
                ext[name] = p
                new.append(ext)
        families = new
        if not families:
            break
    return families


def _boundary_families(
    sig: Signature, sort: SortRef, w: int
) -> list[dict[FaceRef, Polyplex]]:
    cat = sig.base
    cells = []
    for face in sorted(
        cat.faces_into(sort), key=lambda f: (cat.dim(cat.face(f).src), f)
    ):
        j = cat.face(face).src
        act = {
            f2: cat.compose(f2, face) for f2 in cat.faces_into(j)
        }
        cells.append((j, face, cat.faces_into(j), act))
    return _fill_cells(sig, cells, w)


def _arg_families(sig: Signature, arity, w: int) -> list[dict[str, Polyplex]]:
    cells = []
    for sort in arity.base.sorts:
        for cell in arity.cells_at(sort):
            act = {f: arity.act(f, cell) for f in arity.base.faces_into(sort)}
            cells.append((sort, cell, arity.base.faces_into(sort), act))
    return _fill_cells(sig, cells, w)


# -- representing computads -----------------------------------------------------------

@dataclass
class PolyplexRep:
    """The computad representing a shape, with its universal term and the
    colimit presentation used to build it."""

    polyplex: Polyplex
    computad: Computad
    universal: Term
    colimit: Colimit | None  # None only for symbol shapes with empty arity
    star: str | None = None  # the fresh generator, for generator shapes


def _rep_cache(sig: Signature) -> dict:
    cache = getattr(sig, "_rep_cache", None)
    if cache is None:
        cache = {}
        sig._rep_cache = cache
    return cache


def polyplex_computad(sig: Signature, p: Polyplex) -> PolyplexRep:
    """Build the representing computad |p| with its universal term.

    For a generator shape: the colimit of the representing computads of its
    boundary shapes, plus one fresh generator glued along the images of their
    universal terms.  For an application shape: the colimit over the category
    of elements of the arity.
    """
    cache = _rep_cache(sig)
    if p in cache:
        return cache[p]
    cat = sig.base
    if isinstance(p, PVar):
        nodes: dict[str, Computad] = {}
        edges: list[tuple[str, str, ComputadMorphism]] = []
        for face, q in p.btype:
            nodes[face] = polyplex_computad(sig, q).computad
        for face, q in p.btype:
            rep_q = polyplex_computad(sig, q)
            j = cat.face(face).src
            for further in cat.faces_into(j):
                composite = cat.compose(further, face)
                lower = boundary(rep_q.computad, further, rep_q.universal)
                m = classifying_morphism(rep_q.computad, lower)
                edges.append((composite, face, m))
        star = f"*{p.sort}"
        if nodes:
            colim = colimit_var(nodes, edges)
            base_computad = colim.computad
            glue = dict(base_computad.glue)
            gens = dict(base_computad.gens)
            for face, q in p.btype:
                rep_q = polyplex_computad(sig, q)
                glue[(star, face)] = apply_morphism(
                    colim.legs[face], rep_q.universal
                )
        else:
            colim = None
            gens = {}
            glue = {}
        gens[p.sort] = tuple(sorted(set(gens.get(p.sort, ())) | {star}))
        computad = make_computad(sig, gens, glue, check=True)
        rep = PolyplexRep(
            polyplex=p,
            computad=computad,
            universal=Var(star),
            colimit=colim,
            star=star,
        )
    else:
        assert isinstance(p, PApp)
        sym = sig.symbol(p.symbol)
        arity = sym.arity
        nodes = {}
        edges = []
        pargs = p.arg_map()
        for sort in arity.base.sorts:
            for cell in arity.cells_at(sort):
                nodes[cell] = polyplex_computad(sig, pargs[cell]).computad
        for sort in arity.base.sorts:
            for cell in arity.cells_at(sort):
                rep_q = polyplex_computad(sig, pargs[cell])
                for face in arity.base.faces_into(sort):
                    lower = boundary(rep_q.computad, face, rep_q.universal)
                    m = classifying_morphism(rep_q.computad, lower)
                    edges.append((arity.act(face, cell), cell, m))
        if nodes:
            colim = colimit_var(nodes, edges)
            computad = colim.computad
            universal = app(
                p.symbol,
                {
                    cell: apply_morphism(
                        colim.legs[cell],
                        polyplex_computad(sig, pargs[cell]).universal,
                    )
                    for cell in nodes
                },
            )
        else:
            colim = None
            computad = make_computad(sig, {}, {}, check=False)
            universal = app(p.symbol, {})
        rep = PolyplexRep(
            polyplex=p, computad=computad, universal=universal, colimit=colim
        )
    cache[p] = rep
    return rep


def classifying_morphism(c: Computad, t: Term) -> ComputadMorphism:
    """The unique variable-to-variable morphism |classify(t)| -> c sending the
    universal term to ``t``."""
    sig = c.signature
    p = classify(c, t)
    rep = polyplex_computad(sig, p)
    if isinstance(p, PVar):
        assert isinstance(t, Var)
        assign: dict[str, Term] = {}
        if rep.colimit is not None:
            legs = {
                face: classifying_morphism(c, c.gluing(t.gen, face))
                for face, _ in p.btype
            }
            mediated = rep.colimit.mediate(legs)
            assign.update(mediated.assign)
        assign[rep.star] = t
        return make_morphism(rep.computad, c, assign, check=False)
    assert isinstance(t, App)
    if rep.colimit is None:
        return make_morphism(rep.computad, c, {}, check=False)
    legs = {cell: classifying_morphism(c, u) for cell, u in t.args}
    mediated = rep.colimit.mediate(legs)
    return make_morphism(rep.computad, c, mediated.assign, check=False)


def classify_fibre(c: Computad, p: Polyplex, terms) -> list[Term]:
    """The terms among ``terms`` whose shape is ``p``."""
    return [t for t in terms if classify(c, t) == p]


# -- nerve -----------------------------------------------------------------------------

def nerve(c: Computad) -> dict[Polyplex, tuple[str, ...]]:
    """Per-plex generator fibres: which generators have which shape."""
    fibres: dict[Polyplex, list[str]] = {}
    for _, gen in c.all_generators():
        p = classify(c, Var(gen))
        fibres.setdefault(p, []).append(gen)
    return {p: tuple(sorted(gs)) for p, gs in fibres.items()}


def reconstruct_from_nerve(c: Computad) -> Computad:
    """Rebuild a computad from its nerve data alone.

    The nerve provides, for each plex p, the set of morphisms |p| -> C
    (equivalently the generator fibre) together with the restriction action
    along plex morphisms.  The computad is recovered as the colimit of the
    representing computads over the category of elements of that presheaf.
    """
    from .computad import enumerate_var_to_var

    sig = c.signature
    entries: list[tuple[Polyplex, str, ComputadMorphism]] = []
    for _, gen in c.all_generators():
        p = classify(c, Var(gen))
        entries.append((p, gen, classifying_morphism(c, Var(gen))))
    shapes = sorted({p for p, _, _ in entries}, key=lambda p: p.key())

    nodes: dict[str, Computad] = {
        gen: polyplex_computad(sig, p).computad for p, gen, _ in entries
    }
    edges: list[tuple[str, str, ComputadMorphism]] = []
    for p, gen, sigma in entries:
        rep_p = polyplex_computad(sig, p)
        for q in shapes:
            rep_q = polyplex_computad(sig, q)
            for m in enumerate_var_to_var(rep_q.computad, rep_p.computad):
                # the restriction action of the nerve along the plex morphism m:
                # sigma . m classifies a generator, namely its universal image
                restricted = apply_morphism(sigma, apply_morphism(m, rep_q.universal))
                assert isinstance(restricted, Var)
                edges.append((restricted.gen, gen, m))
    if not nodes:
        return make_computad(sig, {}, {}, check=False)
    return colimit_var(nodes, edges).computad
