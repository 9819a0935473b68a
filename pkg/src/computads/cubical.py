"""Cube-category grids and the weak multiple-category coherence constructor.

Objects of the cube category are finite subsets of directions; a face forgets
some directions, remembering for each forgotten one which side it lands on.
A grid assigns a cell count to every direction of a subset; its positions
form a presheaf, with one cell per lattice point naming the cube whose corner
closest to the origin it is.
"""

from __future__ import annotations

import itertools

from .base import DirectCategory, SortRef, validate_category
from .computad import free_computad, make_morphism
from .errors import BadSubset, SideConditionFailure
from .factorization import lift_term_through_mono, support
from .presheaf import Presheaf, PresheafMorphism, make_presheaf
from .signature import Signature, build_signature
from .terms import Term, app, rename, var

Grid = dict[int, int]  # direction -> cell count


def subset_sort(subset) -> str:
    return "{" + ",".join(map(str, sorted(subset))) + "}"


def cube_face_id(target, forgotten: dict[int, int]) -> str:
    inner = ",".join(f"{j}:{a}" for j, a in sorted(forgotten.items()))
    return f"e[{inner}]>{subset_sort(target)}"


def cube_category(n: int) -> DirectCategory:
    """Subsets of {0..n} with the direction-forgetting faces."""
    if n < 0:
        raise BadSubset("direction bound must be a natural number")
    universe = list(range(n + 1))
    subsets = []
    for size in range(n + 2):
        subsets.extend(itertools.combinations(universe, size))
    sorts = [{"id": subset_sort(s), "dim": len(s)} for s in subsets]
    faces = []
    face_data: dict[str, tuple[tuple[int, ...], dict[int, int]]] = {}
    for target in subsets:
        for jsize in range(1, len(target) + 1):
            for j_set in itertools.combinations(target, jsize):
                for alpha in itertools.product((0, 1), repeat=jsize):
                    forgotten = dict(zip(j_set, alpha))
                    fid = cube_face_id(target, forgotten)
                    src = tuple(i for i in target if i not in forgotten)
                    faces.append(
                        {"id": fid, "src": subset_sort(src), "dst": subset_sort(target)}
                    )
                    face_data[fid] = (target, forgotten)
    compose = []
    for f1, (target1, forgotten1) in face_data.items():
        src1 = tuple(i for i in target1 if i not in forgotten1)
        for f2, (target2, forgotten2) in face_data.items():
            src2 = tuple(i for i in target2 if i not in forgotten2)
            if src2 != target1:
                continue
            merged = dict(forgotten2)
            merged.update(forgotten1)
            compose.append(
                {"first": f1, "second": f2, "result": cube_face_id(target2, merged)}
            )
    return validate_category({"sorts": sorts, "faces": faces, "compose": compose})


def _position_name(point: dict[int, int], subset) -> str:
    inner = ",".join(f"{i}:{point[i]}" for i in sorted(point))
    return f"P({inner})@{subset_sort(subset)}"


def _grid_points(grid: Grid, j_set) -> list[dict[int, int]]:
    directions = tuple(sorted(grid))
    ranges = [
        range(grid[i]) if i in j_set else range(grid[i] + 1) for i in directions
    ]
    return [dict(zip(directions, values)) for values in itertools.product(*ranges)]


def grid_positions(cat: DirectCategory, grid: Grid) -> Presheaf:
    """The presheaf of positions of a grid over the directions of ``grid``.

    A cell over a subset J is a lattice point whose coordinates are strict in
    the J directions; forgetting a direction shifts the point to the chosen
    side of the cube it named.
    """
    directions = tuple(sorted(grid))
    if subset_sort(directions) not in cat.dims:
        raise BadSubset(f"directions {directions} exceed the cube category")
    cells: dict[SortRef, tuple[str, ...]] = {}
    action: dict[tuple[str, str], str] = {}
    for size in range(len(directions) + 1):
        for j_set in itertools.combinations(directions, size):
            names = []
            for point in _grid_points(grid, j_set):
                name = _position_name(point, j_set)
                names.append(name)
                for ksize in range(1, size + 1):
                    for k_set in itertools.combinations(j_set, ksize):
                        for alpha in itertools.product((0, 1), repeat=ksize):
                            forgotten = dict(zip(k_set, alpha))
                            face = cube_face_id(j_set, forgotten)
                            moved = {
                                i: point[i] + forgotten.get(i, 0)
                                for i in directions
                            }
                            action[(face, name)] = _position_name(
                                moved,
                                tuple(i for i in j_set if i not in forgotten),
                            )
            cells[subset_sort(j_set)] = tuple(sorted(names))
    return make_presheaf(cat, cells, action)


def restrict_grid(grid: Grid, forgotten) -> Grid:
    return {i: c for i, c in grid.items() if i not in forgotten}


def grid_inclusion(
    cat: DirectCategory, grid: Grid, forgotten: dict[int, int]
) -> PresheafMorphism:
    """The inclusion of the positions of a sub-grid at a fixed side: the kept
    coordinates stay, each forgotten direction is pinned to its chosen end."""
    from .presheaf import check_morphism

    if any(j not in grid for j in forgotten):
        raise BadSubset("forgotten directions must belong to the grid")
    restricted = restrict_grid(grid, forgotten)
    sub = grid_positions(cat, restricted)
    whole = grid_positions(cat, grid)
    component = {}
    kept = tuple(sorted(restricted))
    for size in range(len(kept) + 1):
        for j_set in itertools.combinations(kept, size):
            for point in _grid_points(restricted, j_set):
                extended = dict(point)
                for j, side in forgotten.items():
                    extended[j] = side * grid[j]
                component[_position_name(point, j_set)] = _position_name(
                    extended, j_set
                )
    m = PresheafMorphism(src=sub, dst=whole, component=component)
    check_morphism(m)
    return m


def coherence_symbol_name(grid: Grid) -> str:
    inner = ",".join(f"{i}:{c}" for i, c in sorted(grid.items()))
    return f"coh({inner})"


def grid_coherence(
    lower: Signature,
    grid: Grid,
    sides: dict[tuple[int, int], Term],
    name: str | None = None,
    groupoid: bool = False,
) -> Signature:
    """Append a grid-composition coherence symbol to ``lower``.

    ``sides[(i, a)]`` is the term of the positions of the grid composing its
    side in direction i at end a; sides must agree corner-wise and come from
    full composites of the boundary grids (the epimorphism condition, checked
    through supports) unless ``groupoid``.
    """
    from .terms import boundary, check_term

    cat = lower.base
    directions = tuple(sorted(grid))
    sort = subset_sort(directions)
    pos = grid_positions(cat, grid)
    pos_computad = free_computad(pos, lower)

    for i in directions:
        for a in (0, 1):
            if (i, a) not in sides:
                raise SideConditionFailure(f"missing side ({i}, {a})")
    for (i, a), t in sides.items():
        if i not in grid or a not in (0, 1):
            raise SideConditionFailure(f"side ({i}, {a}) is not a side of the grid")
        check_term(
            pos_computad,
            t,
            expected_sort=subset_sort(tuple(j for j in directions if j != i)),
        )

    # corner compatibility: restricting the i-side along j agrees with
    # restricting the j-side along i
    for (i, a), (j, b) in itertools.combinations(sorted(sides), 2):
        if i == j:
            continue
        face_j = cube_face_id(tuple(d for d in directions if d != i), {j: b})
        face_i = cube_face_id(tuple(d for d in directions if d != j), {i: a})
        lhs = boundary(pos_computad, face_j, sides[(i, a)])
        rhs = boundary(pos_computad, face_i, sides[(j, b)])
        if lhs != rhs:
            raise SideConditionFailure(
                f"sides ({i},{a}) and ({j},{b}) disagree on their shared corner"
            )

    if not groupoid:
        for (i, a), t in sides.items():
            incl = grid_inclusion(cat, grid, {i: a})
            sub_computad = free_computad(incl.src, lower)
            mono = make_morphism(
                sub_computad,
                pos_computad,
                {g: var(incl.component[g]) for _, g in sub_computad.all_generators()},
                check=False,
            )
            lifted = lift_term_through_mono(mono, pos_computad, t)
            if lifted is None:
                raise SideConditionFailure(
                    f"side ({i},{a}) does not come from the boundary grid"
                )
            supp = support(sub_computad, lifted)
            for s in cat.sorts:
                if set(sub_computad.generators_at(s)) - supp.get(s, frozenset()):
                    raise SideConditionFailure(
                        f"side ({i},{a}) is not a full composite of its grid"
                    )

    boundary_terms = {
        cube_face_id(directions, {i: a}): t for (i, a), t in sides.items()
    }
    decls = [
        (sym.id, sym.sort, sym.arity, dict(sym.boundary))
        for sym in lower.symbols.values()
    ]
    decls.append((name or coherence_symbol_name(grid), sort, pos, boundary_terms))
    return build_signature(cat, decls)


def grid_composite(cat: DirectCategory, grid: Grid) -> tuple[Signature, Term]:
    """The canonical unbiased composite of a grid, creating the coherence
    symbols it needs along the way."""
    directions = tuple(sorted(grid))
    if not directions:
        sig = Signature(base=cat, symbols={})
        return sig, var(_position_name({}, ()))
    lower = Signature(base=cat, symbols={})
    sides: dict[tuple[int, int], Term] = {}
    for i in directions:
        sub_sig, sub_comp = grid_composite(cat, restrict_grid(grid, {i: 0}))
        lower = _merge_signatures(lower, sub_sig)
        for a in (0, 1):
            incl = grid_inclusion(cat, grid, {i: a})
            sides[(i, a)] = rename(sub_comp, incl.component)
    sig = grid_coherence(lower, grid, sides)
    pos = grid_positions(cat, grid)
    identity_args = {c: var(c) for cs in pos.cells.values() for c in cs}
    return sig, app(coherence_symbol_name(grid), identity_args)


def _merge_signatures(a: Signature, b: Signature) -> Signature:
    symbols = dict(a.symbols)
    for sid, sym in b.symbols.items():
        if sid in symbols and symbols[sid] != sym:
            raise SideConditionFailure(f"conflicting definitions of symbol {sid!r}")
        symbols[sid] = sym
    return Signature(base=a.base, symbols=symbols)
