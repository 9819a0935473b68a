import pytest

from computads.errors import IncompatibleArgs, SortMismatch
from computads.terms import (
    app,
    boundary,
    boundary_along,
    check_term,
    mk_app,
    mk_var,
    serialize,
    subst,
    term_sort,
    var,
)

from fixtures import comp_uv, walk2


def test_mk_var_sorts():
    c = walk2()
    u = mk_var(c, "u")
    assert term_sort(c, u) == "a"
    assert u.depth == 0


def test_comp_uv_well_formed():
    c = walk2()
    t = comp_uv()
    assert check_term(c, t) == "a"
    assert t.depth == 1
    built = mk_app(
        c,
        "comp",
        {"x": var("p"), "y": var("q"), "z": var("r"), "f": var("u"), "g": var("v")},
    )
    assert built == t


def test_incompatible_family_rejected():
    c = walk2()
    with pytest.raises(IncompatibleArgs):
        mk_app(
            c,
            "comp",
            {"x": var("p"), "y": var("r"), "z": var("r"), "f": var("u"), "g": var("v")},
        )


def test_boundary_of_var_is_gluing():
    c = walk2()
    assert boundary(c, "s", var("u")) == var("p")
    assert boundary(c, "t", var("v")) == var("r")


def test_boundary_of_app_unfolds_boundary_term():
    c = walk2()
    t = comp_uv()
    assert boundary_along(c, "s", t) == var("p")
    assert boundary_along(c, "t", t) == var("r")
    with pytest.raises(SortMismatch):
        boundary_along(c, "s", var("p"))


def test_subst_is_structural():
    t = comp_uv()
    relabel = {g: var(g.upper()) for g in ("p", "q", "r", "u", "v")}
    s = subst(t, relabel)
    expected = app(
        "comp",
        {"x": var("P"), "y": var("Q"), "z": var("R"), "f": var("U"), "g": var("V")},
    )
    assert s == expected
    assert serialize(s) != serialize(t)


def test_depth_law():
    c = walk2()
    t = comp_uv()
    nested = app(
        "comp",
        {"x": var("p"), "y": var("q"), "z": var("r"), "f": var("u"), "g": var("v")},
    )
    assert nested.depth == 1
    assert app("comp", {"x": var("p"), "y": var("r"), "z": var("r"), "f": t, "g": t}).depth == 2


def test_canonical_key_orders_by_depth_then_structure():
    c = walk2()
    ts = [comp_uv(), var("u"), var("v")]
    assert sorted(ts, key=lambda t: t.key()) == [var("u"), var("v"), comp_uv()]
