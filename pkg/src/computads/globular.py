"""Globes, rooted planar trees, and the weak-category coherence constructor.

The definitions of tree positions, tree truncation and the source/target
inclusions below follow the standard recursive description of pasting
diagrams (positions of a tree are a wedge of suspensions of the positions of
its subtrees); they are auxiliary combinatorics for this pack rather than
part of the kernel constructions.
"""

from __future__ import annotations

from .base import DirectCategory, validate_category
from .computad import free_computad, make_morphism
from .errors import BadIndex, SideConditionFailure
from .factorization import lift_term_through_mono, support
from .presheaf import Presheaf, PresheafMorphism, make_presheaf
from .signature import Signature, build_signature
from .terms import Term, app, boundary, check_term, rename, var

Tree = tuple  # a rooted planar tree: tuple of subtrees


def globe_sort(n: int) -> str:
    return f"g{n}"


def globe_face(flavor: str, k: int, m: int) -> str:
    return f"{flavor}{k}:{m}"


def globe_category(n: int) -> DirectCategory:
    """Globes 0..n; for k < m exactly one source-like and one target-like
    face (k) -> (m), the composite keeping the flavour of its innermost leg."""
    if n < 0:
        raise BadIndex("dimension bound must be a natural number")
    sorts = [{"id": globe_sort(m), "dim": m} for m in range(n + 1)]
    faces = []
    for m in range(n + 1):
        for k in range(m):
            for flavor in ("s", "t"):
                faces.append(
                    {
                        "id": globe_face(flavor, k, m),
                        "src": globe_sort(k),
                        "dst": globe_sort(m),
                    }
                )
    compose = []
    for m in range(n + 1):
        for k in range(m):
            for j in range(k):
                for f1 in ("s", "t"):
                    for f2 in ("s", "t"):
                        compose.append(
                            {
                                "first": globe_face(f1, j, k),
                                "second": globe_face(f2, k, m),
                                "result": globe_face(f1, j, m),
                            }
                        )
    return validate_category({"sorts": sorts, "faces": faces, "compose": compose})


# -- trees and their positions -------------------------------------------------------

def parse_tree(text: str) -> Tree:
    """Parse a bracket string like ``[[],[]]`` into a tree."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise BadIndex(f"not a tree literal: {text!r}")
    stack: list[list] = [[]]
    for ch in text[1:-1]:
        if ch == "[":
            stack.append([])
        elif ch == "]":
            done = stack.pop()
            if not stack:
                raise BadIndex(f"unbalanced tree literal: {text!r}")
            stack[-1].append(_freeze(done))
        elif ch in ", \t":
            continue
        else:
            raise BadIndex(f"unexpected character {ch!r} in tree literal")
    if len(stack) != 1:
        raise BadIndex(f"unbalanced tree literal: {text!r}")
    return _freeze(stack[0])


def _freeze(lst) -> Tree:
    return tuple(_freeze(x) if isinstance(x, list) else x for x in lst)


def tree_to_text(tree: Tree) -> str:
    return "[" + ",".join(tree_to_text(sub) for sub in tree) + "]"


def tree_dim(tree: Tree) -> int:
    return 0 if not tree else 1 + max(tree_dim(sub) for sub in tree)


def tree_positions(tree: Tree, dim: int) -> list[tuple[int, ...]]:
    """Positions of dimension ``dim``: paths of subtree indices ending in an
    object index of the innermost subtree."""
    if dim == 0:
        return [(j,) for j in range(len(tree) + 1)]
    out = []
    for i, sub in enumerate(tree):
        out.extend((i,) + path for path in tree_positions(sub, dim - 1))
    return out


def position_name(path: tuple[int, ...]) -> str:
    return "q" + "_".join(map(str, path))


def _position_source(tree: Tree, path: tuple[int, ...]) -> tuple[int, ...]:
    """The source of a positive-dimensional position, one dimension down."""
    if len(path) == 2:
        return (path[0],)  # arrows from subtree i run from object i ...
    return (path[0],) + _position_source(tree[path[0]], path[1:])


def _position_target(tree: Tree, path: tuple[int, ...]) -> tuple[int, ...]:
    if len(path) == 2:
        return (path[0] + 1,)  # ... to object i + 1
    return (path[0],) + _position_target(tree[path[0]], path[1:])


def tree_presheaf(cat: DirectCategory, tree: Tree) -> Presheaf:
    """Positions of a tree as a presheaf on the globe category."""
    d = tree_dim(tree)
    if globe_sort(d) not in cat.dims:
        raise BadIndex(f"tree of dimension {d} exceeds the globe category")
    cells = {}
    paths: dict[int, list[tuple[int, ...]]] = {}
    for m in range(d + 1):
        paths[m] = tree_positions(tree, m)
        cells[globe_sort(m)] = tuple(sorted(position_name(p) for p in paths[m]))
    action = {}
    for m in range(d + 1):
        for path in paths[m]:
            # the k-source iterates one-step sources; the k-target iterates
            # sources except for the final step
            src_chain: dict[int, tuple[int, ...]] = {m: path}
            for k in range(m - 1, -1, -1):
                src_chain[k] = _position_source(tree, src_chain[k + 1])
            for k in range(m):
                tgt = _position_target(tree, src_chain[k + 1])
                action[(globe_face("s", k, m), position_name(path))] = position_name(
                    src_chain[k]
                )
                action[(globe_face("t", k, m), position_name(path))] = position_name(
                    tgt
                )
    return make_presheaf(cat, cells, action)


def boundary_tree(tree: Tree, n: int) -> Tree:
    """Cut a tree at height ``n``."""
    if n <= 0:
        return ()
    return tuple(boundary_tree(sub, n - 1) for sub in tree)


def _boundary_path(tree: Tree, path: tuple[int, ...], n: int, flavor: str) -> tuple[int, ...]:
    """Image of a position of the cut tree inside the whole tree."""
    if len(path) - 1 < n:
        return path
    if n == 0:
        return (0,) if flavor == "s" else (len(tree),)
    return (path[0],) + _boundary_path(tree[path[0]], path[1:], n - 1, flavor)


def tree_boundary_inclusion(
    cat: DirectCategory, tree: Tree, n: int, flavor: str
) -> PresheafMorphism:
    """The source (flavor 's') or target ('t') inclusion of the cut tree."""
    from .presheaf import check_morphism

    cut = boundary_tree(tree, n)
    src = tree_presheaf(cat, cut)
    dst = tree_presheaf(cat, tree)
    component = {}
    for m in range(tree_dim(cut) + 1):
        for path in tree_positions(cut, m):
            component[position_name(path)] = position_name(
                _boundary_path(tree, path, n, flavor)
            )
    m_ = PresheafMorphism(src=src, dst=dst, component=component)
    check_morphism(m_)
    return m_


# -- the coherence constructor --------------------------------------------------------

def tree_symbol_name(tree: Tree) -> str:
    return f"coh{tree_to_text(tree)}"


def globe_coherence(
    lower: Signature,
    tree: Tree,
    dim: int,
    source: Term,
    target: Term,
    name: str | None = None,
    groupoid: bool = False,
) -> Signature:
    """Append a pasting coherence of sort ``dim`` for ``tree`` to ``lower``.

    ``source`` and ``target`` are terms of the positions of ``tree`` of sort
    dim - 1 with matching boundaries; unless ``groupoid`` they must come from
    full composites of the cut tree through the source/target inclusions."""
    cat = lower.base
    if dim < 1 or tree_dim(tree) > dim:
        raise SideConditionFailure("the tree must fit inside the output dimension")
    pos = tree_presheaf(cat, tree)
    pos_computad = free_computad(pos, lower)
    out_sort = globe_sort(dim)
    below = globe_sort(dim - 1)
    check_term(pos_computad, source, expected_sort=below)
    check_term(pos_computad, target, expected_sort=below)
    if dim >= 2:
        for flavor in ("s", "t"):
            face = globe_face(flavor, dim - 2, dim - 1)
            if boundary(pos_computad, face, source) != boundary(
                pos_computad, face, target
            ):
                raise SideConditionFailure(
                    f"source and target disagree on their {flavor}-boundary"
                )
    if not groupoid:
        for flavor, term in (("s", source), ("t", target)):
            incl = tree_boundary_inclusion(cat, tree, dim - 1, flavor)
            sub_computad = free_computad(incl.src, lower)
            mono = make_morphism(
                sub_computad,
                pos_computad,
                {g: var(incl.component[g]) for _, g in sub_computad.all_generators()},
                check=False,
            )
            lifted = lift_term_through_mono(mono, pos_computad, term)
            if lifted is None:
                raise SideConditionFailure(
                    f"the {flavor}-side does not come from the cut tree"
                )
            supp = support(sub_computad, lifted)
            for s in cat.sorts:
                if set(sub_computad.generators_at(s)) - supp.get(s, frozenset()):
                    raise SideConditionFailure(
                        f"the {flavor}-side is not a full composite of the cut tree"
                    )
    boundary_terms = {
        globe_face("s", dim - 1, dim): source,
        globe_face("t", dim - 1, dim): target,
    }
    decls = [
        (sym.id, sym.sort, sym.arity, dict(sym.boundary))
        for sym in lower.symbols.values()
    ]
    decls.append((name or tree_symbol_name(tree), out_sort, pos, boundary_terms))
    return build_signature(cat, decls)


def tree_composite(cat: DirectCategory, tree: Tree) -> tuple[Signature, Term]:
    """The canonical unbiased composite of a pasting tree, creating the
    coherence symbols it needs along the way."""
    d = tree_dim(tree)
    if d == 0:
        return Signature(base=cat, symbols={}), var(position_name((0,)))
    cut = boundary_tree(tree, d - 1)
    lower, cut_comp = tree_composite(cat, cut)
    src_incl = tree_boundary_inclusion(cat, tree, d - 1, "s")
    tgt_incl = tree_boundary_inclusion(cat, tree, d - 1, "t")
    source = rename(cut_comp, src_incl.component)
    target = rename(cut_comp, tgt_incl.component)
    sig = globe_coherence(lower, tree, d, source, target)
    pos = tree_presheaf(cat, tree)
    identity_args = {c: var(c) for cs in pos.cells.values() for c in cs}
    return sig, app(tree_symbol_name(tree), identity_args)
