"""Acceptance suite: one criterion per test, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
print; every tolerance is exact (structural equality or exact counts).
"""

from __future__ import annotations

import functools
import itertools
import random
import time

from computads.algebra import (
    algebra_morphisms,
    free_algebra,
    morphism_from_generators,
)
from computads.cofibrant import (
    cofibrant_replacement,
    check_trivial_fibration,
    replay_filtration,
    skeletal_filtration,
    verify_stage_pushout,
)
from computads.computad import (
    Computad,
    apply_morphism,
    compose_morphisms,
    enumerate_var_to_var,
    free_computad,
    identity_morphism,
    isomorphic,
    make_computad,
    make_morphism,
)
from computads.factorization import (
    image_factorize,
    is_epi,
    lift_through_mono,
    split_idempotent,
    support_term,
)
from computads.monad import enumerate_terms, term_presheaf, mult, term_action
from computads.packs import sigma_kan, simplex, simplex_sort
from computads.plex import classify, enumerate_polyplexes, polyplex_computad, reconstruct_from_nerve
from computads.presheaf import representable
from computads.terms import Term, Var, boundary, rename, var

from fixtures import (
    comp_signature,
    pathcat_algebra,
    random_computad_comp,
    random_morphism_comp,
    random_presheaf,
    walk2,
    z5_algebra,
)
from oracles import fixpoint_terms


def criterion(number: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.monotonic()
            try:
                fn()
            except BaseException:
                print(f"FAIL  criterion {number:>2}: {title}")
                raise
            elapsed = time.monotonic() - start
            print(f"PASS  criterion {number:>2}: {title} ({elapsed:.1f}s)")

        return run

    return wrap


def _kan2_interval() -> Computad:
    sig = sigma_kan(2)
    return free_computad(simplex(sig.base, 1), sig)


def _all_terms(c: Computad, depth: int) -> list[tuple[str, Term]]:
    return [
        (sort, t)
        for sort in c.base.sorts
        for t in enumerate_terms(c, sort, depth)
    ]


@criterion(1, "boundary functoriality on comp and Kan fixtures, depth 2")
def test_criterion_1():
    deadline = time.monotonic() + 30
    for c in (walk2(), _kan2_interval()):
        cat = c.base
        for sort, t in _all_terms(c, 2):
            for second in cat.faces_into(sort):
                once = boundary(c, second, t)
                j = cat.face(second).src
                for first in cat.faces_into(j):
                    composite = cat.compose(first, second)
                    assert boundary(c, first, once) == boundary(c, composite, t)
    assert time.monotonic() < deadline


@criterion(2, "monad unit and associativity laws on walk2 terms")
def test_criterion_2():
    deadline = time.monotonic() + 60
    c = walk2()
    view1 = term_presheaf(c, 2)
    gen_view = term_presheaf(c, 0)
    eta = {g: gen_view.encode[var(g)] for _, g in c.all_generators()}
    for _, t in _all_terms(c, 2):
        assert mult(var(view1.encode[t]), view1.decode) == t  # mu . eta
        assert mult(term_action(t, eta), gen_view.decode) == t  # mu . M(eta)
    free1 = free_computad(view1.presheaf, c.signature)
    view2 = term_presheaf(free1, 1)
    free2 = free_computad(view2.presheaf, c.signature)
    for sort in c.base.sorts:
        for tt in enumerate_terms(free2, sort, 1):
            lhs = mult(mult(tt, view2.decode), view1.decode)
            flattened = {
                name: view1.encode[mult(middle, view1.decode)]
                for name, middle in view2.decode.items()
            }
            rhs = mult(term_action(tt, flattened), view1.decode)
            assert lhs == rhs
    assert time.monotonic() < deadline


@criterion(3, "unit of the monad is cartesian, elementwise")
def test_criterion_3():
    sig = comp_signature()
    rng = random.Random(2024)
    checked = 0
    while checked < 20:
        x = random_presheaf(sig.base, rng, tag="x")
        if x.is_empty():
            continue
        y = random_presheaf(sig.base, rng, tag="y")
        from computads.presheaf import enumerate_hom

        homs = enumerate_hom(x, y)
        if not homs:
            continue
        sigma = rng.choice(homs)
        checked += 1
        fx = free_computad(x, sig)
        for sort in sig.base.sorts:
            for t in enumerate_terms(fx, sort, 2):
                image = rename(t, sigma.component)
                if isinstance(image, Var):
                    # the pullback condition: a term over X mapping to a
                    # generator must itself be the unique matching generator
                    assert isinstance(t, Var)
                    assert sigma.component[t.gen] == image.gen


@criterion(4, "free algebra universal property: morphism counts agree")
def test_criterion_4():
    c = walk2()
    alg = pathcat_algebra()
    fa = free_algebra(c, 2)
    lhs = len(algebra_morphisms(fa, alg))
    rhs = 0
    for po, qo, ro in itertools.product(alg.cells_at("o"), repeat=3):
        for ua, va in itertools.product(alg.cells_at("a"), repeat=2):
            try:
                morphism_from_generators(
                    c, alg, {"p": po, "q": qo, "r": ro, "u": ua, "v": va}
                )
                rhs += 1
            except Exception:
                continue
    assert lhs == rhs and lhs > 0


@criterion(5, "support laws: boundary containment and image formula")
def test_criterion_5():
    sig = comp_signature()
    rng = random.Random(55)
    fixtures = [walk2(sig), _kan2_interval()]
    for c in fixtures:
        for sort, t in _all_terms(c, 2):
            for face in c.base.faces_into(sort):
                b = boundary(c, face, t)
                for s in c.base.sorts:
                    assert support_term(c, b, s) <= support_term(c, t, s)
    # image formula along random morphisms between comp computads
    for _ in range(25):
        src = random_computad_comp(sig, rng, tag="s")
        dst = random_computad_comp(sig, rng, tag="d")
        m = random_morphism_comp(sig, src, dst, rng)
        if m is None:
            continue
        for sort, t in _all_terms(src, 2):
            image = apply_morphism(m, t)
            for s in ("o", "a"):
                expected = frozenset()
                for k in ("o", "a"):
                    for v in support_term(src, t, k):
                        expected |= support_term(dst, m.assign[v], s)
                assert support_term(dst, image, s) == expected


@criterion(6, "image factorisation system on 100 random morphisms")
def test_criterion_6():
    sig = comp_signature()
    rng = random.Random(66)
    factored = 0
    attempts = 0
    while factored < 100 and attempts < 4000:
        attempts += 1
        src = random_computad_comp(sig, rng, tag="s")
        dst = random_computad_comp(sig, rng, tag="d")
        m = random_morphism_comp(sig, src, dst, rng)
        if m is None:
            continue
        factored += 1
        pi, middle, iota = image_factorize(m)
        assert compose_morphisms(iota, pi) == m
        assert iota.is_var_to_var() and iota.is_injective()
        assert is_epi(pi)
        # uniqueness up to unique isomorphism against a relabelled middle
        relabel = {g: f"{g}'" for _, g in middle.all_generators()}
        middle2 = make_computad(
            middle.signature,
            {s: tuple(relabel[g] for g in middle.generators_at(s)) for s in middle.base.sorts},
            {(relabel[g], f): rename(t, relabel) for (g, f), t in middle.glue.items()},
        )
        iota2 = make_morphism(
            middle2, dst, {relabel[g]: iota.assign[g] for g in relabel}
        )
        pi2 = make_morphism(
            src, middle2, {g: rename(t, relabel) for g, t in pi.assign.items()}
        )
        chi = lift_through_mono(iota2, iota)
        assert chi is not None
        assert compose_morphisms(iota2, chi) == iota
        assert compose_morphisms(chi, pi) == pi2
        chi_inv = lift_through_mono(iota, iota2)
        assert compose_morphisms(chi_inv, chi) == identity_morphism(middle)
    assert factored == 100

    # random idempotents split
    split = 0
    attempts = 0
    while split < 30 and attempts < 2000:
        attempts += 1
        c = random_computad_comp(sig, rng, max_obj=4, max_arr=3, tag="c")
        e = _random_idempotent(sig, c, rng)
        if e is None:
            continue
        split += 1
        retr, sect = split_idempotent(e)
        assert compose_morphisms(retr, sect) == identity_morphism(retr.dst)
        assert compose_morphisms(sect, retr) == e
    assert split == 30


def _random_idempotent(sig, c, rng):
    objects = list(c.generators_at("o"))
    arrows = list(c.generators_at("a"))
    kept_o = [g for g in objects if rng.random() < 0.7]
    if not kept_o:
        return None
    kept_a = [
        g
        for g in arrows
        if rng.random() < 0.7
        and c.gluing(g, "s").gen in kept_o
        and c.gluing(g, "t").gen in kept_o
    ]
    assign = {g: var(g) for g in kept_o + kept_a}
    for g in objects:
        if g not in kept_o:
            assign[g] = var(rng.choice(kept_o))
    sub = make_computad(
        sig,
        {"o": tuple(kept_o), "a": tuple(kept_a)},
        {(g, f): c.gluing(g, f) for g in kept_a for f in ("s", "t")},
    )
    for g in arrows:
        if g in kept_a:
            continue
        want_s = assign[c.gluing(g, "s").gen]
        want_t = assign[c.gluing(g, "t").gen]
        candidates = [
            t
            for t in enumerate_terms(sub, "a", 2)
            if (boundary(sub, "s", t), boundary(sub, "t", t)) == (want_s, want_t)
        ]
        if not candidates:
            return None
        assign[g] = rng.choice(candidates)
    try:
        e = make_morphism(c, c, assign)
    except Exception:
        return None
    if compose_morphisms(e, e) != e:
        return None
    return e


@criterion(7, "polyplex representability: hom counts equal fibre counts")
def test_criterion_7():
    sig = comp_signature()
    targets = [walk2(sig), free_computad(representable(sig.base, "a"), sig)]
    for c in targets:
        for sort in c.base.sorts:
            terms = enumerate_terms(c, sort, 2)
            for p in enumerate_polyplexes(sig, sort, 2):
                rep = polyplex_computad(sig, p)
                homs = enumerate_var_to_var(rep.computad, c)
                fibre = [t for t in terms if classify(c, t) == p]
                assert len(homs) == len(fibre), (sort, p)


@criterion(8, "nerve reconstruction of 50 random computads")
def test_criterion_8():
    sig = comp_signature()
    rng = random.Random(88)
    rebuilt = 0
    for _ in range(25):
        c = random_computad_comp(sig, rng, tag="n")
        assert isomorphic(reconstruct_from_nerve(c), c)
        rebuilt += 1
    kan = sigma_kan(1)
    for _ in range(25):
        c = _random_kan_computad(kan, rng)
        assert isomorphic(reconstruct_from_nerve(c), c)
        rebuilt += 1
    assert rebuilt == 50


def _random_kan_computad(sig, rng):
    s0, s1 = simplex_sort(0), simplex_sort(1)
    n0 = rng.randint(1, 3)
    gens0 = tuple(f"k{i}" for i in range(n0))
    skeleton = make_computad(sig, {s0: gens0}, {})
    pool = enumerate_terms(skeleton, s0, 2)
    n1 = rng.randrange(3)
    gens1 = tuple(f"K{i}" for i in range(n1))
    glue = {}
    for g in gens1:
        for face in sig.base.faces_into(s1):
            glue[(g, face)] = rng.choice(pool)
    return make_computad(sig, {s0: gens0, s1: gens1}, glue)


@criterion(9, "grid position counts match the four-by-one figure")
def test_criterion_9():
    from computads.cubical import cube_category, grid_positions, subset_sort

    cat = cube_category(1)
    pos = grid_positions(cat, {0: 4, 1: 1})
    counts = tuple(
        len(pos.cells_at(subset_sort(js))) for js in ((), (0,), (1,), (0, 1))
    )
    assert counts == (10, 8, 5, 4)


@criterion(10, "Kan pack validates; term counts match the fixed-point oracle")
def test_criterion_10():
    deadline = time.monotonic() + 120
    sig = sigma_kan(2)  # raises on any cocycle failure
    interval = free_computad(simplex(sig.base, 1), sig)
    for sort in (simplex_sort(0), simplex_sort(1)):
        for depth in (0, 1, 2):
            fast = enumerate_terms(interval, sort, depth)
            slow = fixpoint_terms(interval, sort, depth)
            assert fast == slow, (sort, depth, len(fast), len(slow))
            assert len(fast) == len(set(fast))
    assert time.monotonic() < deadline


@criterion(11, "cofibrant replacement of Z5: lifts and adjunction counts")
def test_criterion_11():
    z5 = z5_algebra()
    cof = cofibrant_replacement(z5, 2)
    assert cof.und.exact
    fa = free_algebra(cof.und.computad, 2)
    component = {cell: cof.r(fa.decode[cell]) for cell in fa.decode}
    ok, counterexample = check_trivial_fibration(fa, z5, component)
    assert ok, counterexample
    rng = random.Random(111)
    sig = z5.signature
    for _ in range(20):
        n = rng.randint(0, 3)
        c = make_computad(sig, {"*": tuple(f"g{i}" for i in range(n))}, {})
        lhs = len(enumerate_var_to_var(c, cof.und.computad))
        rhs = 0
        for cells in itertools.product(z5.cells_at("*"), repeat=n):
            try:
                morphism_from_generators(
                    c, z5, dict(zip((f"g{i}" for i in range(n)), cells))
                )
                rhs += 1
            except Exception:
                continue
        assert lhs == rhs


@criterion(12, "skeletal filtration replay reproduces the fixtures")
def test_criterion_12():
    sig = comp_signature()
    kan = sigma_kan(2)
    fixtures = [
        walk2(sig),
        free_computad(representable(sig.base, "a"), sig),
        make_computad(sig, {}, {}),
        free_computad(simplex(kan.base, 1), kan),
    ]
    for c in fixtures:
        filt = skeletal_filtration(c)
        assert isomorphic(replay_filtration(filt), c)
        for lo, hi in zip(filt.stages, filt.stages[1:]):
            verdict = verify_stage_pushout(lo, hi.computad)
            assert verdict in (True, None)
