"""Shared desk-scale fixtures: the arrow base, the composition signature,
walking computads, and small algebras."""

from __future__ import annotations

import random

from computads.base import DirectCategory, validate_category
from computads.computad import Computad, make_computad
from computads.presheaf import Presheaf, make_presheaf
from computads.signature import Signature, build_signature
from computads.terms import Term, app, var


def arrow_category() -> DirectCategory:
    """Sorts o (dim 0) and a (dim 1) with faces s, t : o -> a."""
    return validate_category(
        {
            "sorts": [{"id": "o", "dim": 0}, {"id": "a", "dim": 1}],
            "faces": [
                {"id": "s", "src": "o", "dst": "a"},
                {"id": "t", "src": "o", "dst": "a"},
            ],
            "compose": [],
        }
    )


def arrow_arity(cat: DirectCategory | None = None) -> Presheaf:
    """The walking composable pair: cells x, y, z at o and f, g at a."""
    cat = cat or arrow_category()
    return make_presheaf(
        cat,
        {"o": ("x", "y", "z"), "a": ("f", "g")},
        {
            ("s", "f"): "x",
            ("t", "f"): "y",
            ("s", "g"): "y",
            ("t", "g"): "z",
        },
    )


def comp_signature() -> Signature:
    """One binary composition symbol over the arrow base."""
    cat = arrow_category()
    arity = arrow_arity(cat)
    return build_signature(
        cat,
        [("comp", "a", arity, {"s": var("x"), "t": var("z")})],
    )


def walk2(sig: Signature | None = None) -> Computad:
    """Two composable generator arrows u : p -> q and v : q -> r."""
    sig = sig or comp_signature()
    return make_computad(
        sig,
        {"o": ("p", "q", "r"), "a": ("u", "v")},
        {
            ("u", "s"): var("p"),
            ("u", "t"): var("q"),
            ("v", "s"): var("q"),
            ("v", "t"): var("r"),
        },
    )


def comp_uv() -> Term:
    return app(
        "comp",
        {"x": var("p"), "y": var("q"), "z": var("r"), "f": var("u"), "g": var("v")},
    )


def walk_n(sig: Signature, n: int) -> Computad:
    """A chain of n composable generator arrows over the comp signature."""
    gens_o = tuple(f"o{i}" for i in range(n + 1))
    gens_a = tuple(f"e{i}" for i in range(n))
    glue = {}
    for i in range(n):
        glue[(f"e{i}", "s")] = var(f"o{i}")
        glue[(f"e{i}", "t")] = var(f"o{i+1}")
    return make_computad(sig, {"o": gens_o, "a": gens_a}, glue)


# -- algebras -------------------------------------------------------------------

PATH_ENDPOINTS = {
    "iA": ("A", "A"),
    "iB": ("B", "B"),
    "iC": ("C", "C"),
    "e1": ("A", "B"),
    "e2": ("B", "C"),
    "e12": ("A", "C"),
}


def pathcat_carrier(cat: DirectCategory | None = None) -> Presheaf:
    """Paths of length <= 2 in the quiver A -> B -> C, as an arrow presheaf."""
    cat = cat or arrow_category()
    action = {}
    for p, (src, dst) in PATH_ENDPOINTS.items():
        action[("s", p)] = src
        action[("t", p)] = dst
    return make_presheaf(
        cat,
        {"o": ("A", "B", "C"), "a": tuple(sorted(PATH_ENDPOINTS))},
        action,
    )


def concat_paths(p1: str, p2: str) -> str:
    a, b = PATH_ENDPOINTS[p1], PATH_ENDPOINTS[p2]
    assert a[1] == b[0]
    if p1.startswith("i"):
        return p2
    if p2.startswith("i"):
        return p1
    assert (p1, p2) == ("e1", "e2")
    return "e12"


def pathcat_algebra():
    from computads.algebra import algebra_from_callbacks

    sig = comp_signature()
    carrier = pathcat_carrier(sig.base)

    def comp_interp(env: dict[str, str]) -> str:
        return concat_paths(env["f"], env["g"])

    return algebra_from_callbacks(sig, carrier, {"comp": comp_interp})


# -- discrete group signature and Z5 ---------------------------------------------

def group_base() -> DirectCategory:
    return validate_category({"sorts": [{"id": "*", "dim": 0}], "faces": [], "compose": []})


def group_signature_fixture() -> Signature:
    from computads.packs import group_signature

    return group_signature()


def z5_algebra():
    from computads.algebra import algebra_from_callbacks
    from computads.packs import group_signature

    sig = group_signature()
    carrier = make_presheaf(sig.base, {"*": tuple(str(k) for k in range(5))}, {})

    def plus(env):
        return str((int(env["plus.*0"]) + int(env["plus.*1"])) % 5)

    def zero(env):
        return "0"

    def neg(env):
        return str((-int(env["neg.*0"])) % 5)

    return algebra_from_callbacks(sig, carrier, {"plus": plus, "zero": zero, "neg": neg})


# -- random generators ------------------------------------------------------------

def random_presheaf(
    cat: DirectCategory, rng: random.Random, max_cells: int = 3, tag: str = "c"
) -> Presheaf:
    """Random finite presheaf; supports composite-free bases only, where the
    face values of a cell can be drawn independently."""
    assert not cat.table, "random_presheaf needs a composite-free base"
    cells: dict[str, tuple[str, ...]] = {}
    action: dict[tuple[str, str], str] = {}
    counter = 0
    for sort in cat.sorts:
        n = rng.randrange(max_cells + 1)
        if any(not cells.get(cat.face(f).src) for f in cat.faces_into(sort)):
            n = 0
        names = tuple(f"{tag}{counter + i}" for i in range(n))
        counter += n
        cells[sort] = names
        for cell in names:
            for face in cat.faces_into(sort):
                action[(face, cell)] = rng.choice(cells[cat.face(face).src])
    return make_presheaf(cat, cells, action)


def random_computad_comp(
    sig: Signature, rng: random.Random, max_obj: int = 4, max_arr: int = 3, tag: str = ""
) -> Computad:
    """A random computad over the comp signature: generator objects plus
    generator arrows glued to random endpoint objects."""
    n_obj = rng.randint(1, max_obj)
    n_arr = rng.randrange(max_arr + 1)
    gens_o = tuple(f"{tag}P{i}" for i in range(n_obj))
    gens_a = tuple(f"{tag}U{i}" for i in range(n_arr))
    glue = {}
    for g in gens_a:
        glue[(g, "s")] = var(rng.choice(gens_o))
        glue[(g, "t")] = var(rng.choice(gens_o))
    return make_computad(sig, {"o": gens_o, "a": gens_a}, glue)


def random_morphism_comp(sig, src, dst, rng: random.Random, depth: int = 2):
    """A random morphism between comp computads, or None when the random
    endpoint choices leave an arrow with no candidate image."""
    from computads.computad import make_morphism
    from computads.monad import enumerate_terms
    from computads.terms import boundary

    if not dst.generators_at("o"):
        return None
    assign = {}
    for g in src.generators_at("o"):
        assign[g] = var(rng.choice(dst.generators_at("o")))
    for g in src.generators_at("a"):
        want = (assign[src.gluing(g, "s").gen], assign[src.gluing(g, "t").gen])
        candidates = [
            t
            for t in enumerate_terms(dst, "a", depth)
            if (boundary(dst, "s", t), boundary(dst, "t", t)) == want
        ]
        if not candidates:
            return None
        assign[g] = rng.choice(candidates)
    return make_morphism(src, dst, assign)
