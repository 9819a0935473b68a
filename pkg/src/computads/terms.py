"""The inductive term language.

A term over a computad C is either a generator ``Var(v)`` or a formal
application ``App(f, args)`` of a function symbol to a family of lower terms
indexed by the cells of the symbol's arity.  Terms are pure syntax: equality
is structural, and well-formedness is always relative to a *context* that can
resolve generators and symbols.

A context is any object with
  - ``base``                   the sort category,
  - ``gen_sort(gen)``          the sort of a generator,
  - ``gluing(gen, face)``      the boundary term attached to a generator,
  - ``symbol(symbol_id)``      the function symbol (sort, arity, boundary).

Computads implement this directly; signature validation uses a lightweight
context over the free computad on an arity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .base import FaceRef, SortRef
from .errors import IncompatibleArgs, SortMismatch


class Term:
    """Base class for Var and App; never instantiated directly."""

    depth: int

    def key(self) -> tuple:
        """Canonical ordering key: by depth, then serialised structure."""
        return (self.depth, serialize(self))


@dataclass(frozen=True)
class Var(Term):
    gen: str
    depth: int = field(default=0, compare=False)


@dataclass(frozen=True)
class App(Term):
    symbol: str
    args: tuple[tuple[str, "Term"], ...]  # (arity cell, term), sorted by cell
    depth: int = field(default=0, compare=False)

    def arg_map(self) -> dict[str, Term]:
        return dict(self.args)


def var(gen: str) -> Var:
    return Var(gen)


def app(symbol: str, args: dict[str, Term]) -> App:
    items = tuple(sorted(args.items()))
    d = 1 + max((t.depth for _, t in items), default=0)
    return App(symbol, items, depth=d)


def serialize(t: Term) -> str:
    if isinstance(t, Var):
        return f"v({t.gen})"
    assert isinstance(t, App)
    inner = ",".join(f"{c}={serialize(u)}" for c, u in t.args)
    return f"{t.symbol}[{inner}]"


def term_sort(ctx, t: Term) -> SortRef:
    if isinstance(t, Var):
        return ctx.gen_sort(t.gen)
    return ctx.symbol(t.symbol).sort


def subst(t: Term, mapping: dict[str, Term]) -> Term:
    """Replace every generator leaf through ``mapping``.

    This is simultaneously substitution of an argument family into a boundary
    term and the action of a computad morphism on a term.
    """
    if isinstance(t, Var):
        return mapping[t.gen]
    assert isinstance(t, App)
    return app(t.symbol, {c: subst(u, mapping) for c, u in t.args})


def rename(t: Term, mapping: dict[str, str]) -> Term:
    """Generator-to-generator relabelling (a variable-to-variable action)."""
    if isinstance(t, Var):
        return Var(mapping[t.gen])
    assert isinstance(t, App)
    return app(t.symbol, {c: rename(u, mapping) for c, u in t.args})


def generators_of(t: Term) -> set[str]:
    """The generators literally occurring in ``t`` (not the full support)."""
    if isinstance(t, Var):
        return {t.gen}
    assert isinstance(t, App)
    out: set[str] = set()
    for _, u in t.args:
        out |= generators_of(u)
    return out


def boundary(ctx, face: FaceRef, t: Term) -> Term:
    """The action of a non-identity face on a term.

    For a generator this is its gluing; for an application it is the symbol's
    boundary term with the argument family substituted in.
    """
    cache = getattr(ctx, "_boundary_cache", None)
    key = (face, t)
    if cache is not None and key in cache:
        return cache[key]
    if isinstance(t, Var):
        out = ctx.gluing(t.gen, face)
    else:
        assert isinstance(t, App)
        sym = ctx.symbol(t.symbol)
        out = subst(sym.boundary[face], t.arg_map())
    if cache is not None:
        cache[key] = out
    return out


def boundary_along(ctx, face: FaceRef, t: Term) -> Term:
    """Like :func:`boundary` but checks the face targets the term's sort."""
    f = ctx.base.face(face)
    s = term_sort(ctx, t)
    if f.dst != s:
        raise SortMismatch(f"face {face!r} targets {f.dst!r}, term has sort {s!r}")
    return boundary(ctx, face, t)


def check_args(ctx, symbol_id: str, args: dict[str, Term]) -> None:
    """Check that ``args`` is a presheaf morphism from the arity into terms."""
    sym = ctx.symbol(symbol_id)
    arity = sym.arity
    for sort in arity.base.sorts:
        for cell in arity.cells_at(sort):
            if cell not in args:
                raise IncompatibleArgs(
                    f"{symbol_id!r}: missing argument for arity cell {cell!r}"
                )
            t = args[cell]
            if term_sort(ctx, t) != sort:
                raise SortMismatch(
                    f"{symbol_id!r}: argument at {cell!r} must have sort {sort!r}"
                )
            for face in arity.base.faces_into(sort):
                expected = args[arity.act(face, cell)]
                if boundary(ctx, face, t) != expected:
                    raise IncompatibleArgs(
                        f"{symbol_id!r}: boundary of argument at {cell!r} along "
                        f"{face!r} disagrees with the argument at "
                        f"{arity.act(face, cell)!r}"
                    )
    extra = set(args) - {c for cs in arity.cells.values() for c in cs}
    if extra:
        raise IncompatibleArgs(f"{symbol_id!r}: arguments at unknown cells {sorted(extra)}")


def check_term(ctx, t: Term, expected_sort: SortRef | None = None) -> SortRef:
    """Recursively validate a term over ``ctx``; returns its sort."""
    if isinstance(t, Var):
        sort = ctx.gen_sort(t.gen)  # raises UnknownGenerator
    else:
        assert isinstance(t, App)
        sym = ctx.symbol(t.symbol)  # raises UnknownSymbol
        for _, u in t.args:
            check_term(ctx, u)
        check_args(ctx, t.symbol, t.arg_map())
        sort = sym.sort
    if expected_sort is not None and sort != expected_sort:
        raise SortMismatch(f"term has sort {sort!r}, expected {expected_sort!r}")
    return sort


def mk_var(ctx, gen: str) -> Var:
    ctx.gen_sort(gen)
    return Var(gen)


def mk_app(ctx, symbol_id: str, args: dict[str, Term]) -> App:
    check_args(ctx, symbol_id, args)
    return app(symbol_id, args)
