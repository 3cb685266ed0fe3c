"""Tests for pair classification, maximal-disc antichains, adjacent
chambers, component verdicts, and the density probe.

The antichain is cross-checked against a rasterized containment oracle
that knows nothing about the analytic containment rules.
"""

import math
import random

import numpy as np
import pytest

from carpet.chambers import (
    ChamberBoundary,
    ComponentVerdict,
    PairClass,
    adjacent_chamber,
    classify_component,
    classify_pair,
    density_probe,
    maximal_discs,
    maximal_regions,
    pair_counts,
    rk2_hypothesis,
)
from carpet.enumeration import EnumRequest, enumerate_norm, enumerate_walls
from carpet.lattice import GramLattice
from carpet.projection import DiscRegion

from conftest import (
    ANISO7,
    DOUBLED_INTERSECT,
    GRAMS,
    NONBARAGAR,
    RK3_RANK5,
    WALL_NORM,
    PixelOracle,
    frame_of,
    lat,
    window_masks,
)


def _prime_factors(n):
    out = set()
    f = 2
    while f * f <= n:
        while n % f == 0:
            out.add(f)
            n //= f
        f += 1
    if n > 1:
        out.add(n)
    return out


# ---------------------------------------------------------------------------
# classify_pair


def test_classify_pair_known_cases():
    ell = lat("ex0")
    assert classify_pair(ell, (1, 0, 0, 0), (0, 1, 0, 0)) is PairClass.TANGENT

    dbl = GramLattice(DOUBLED_INTERSECT)
    u, v = (1, 2, 1, 0), (1, 2, 0, 1)
    assert dbl.norm(u) == -8 and dbl.norm(v) == -8
    b = dbl.bilinear(u, v)
    assert dbl.norm(u) * dbl.norm(v) - b * b == 60
    assert classify_pair(dbl, u, v) is PairClass.TRANSVERSAL

    u, v = (0, 1, 0, 0), (1, 3, 0, 0)
    b = dbl.bilinear(u, v)
    assert dbl.norm(u) * dbl.norm(v) - b * b == -20
    assert classify_pair(dbl, u, v) is PairClass.DISJOINT


def test_classify_pair_proportional_is_nested():
    dbl = GramLattice(DOUBLED_INTERSECT)
    assert classify_pair(dbl, (1, 2, 0, 1), (2, 4, 0, 2)) is PairClass.NESTED_OR_EQUAL
    assert classify_pair(dbl, (1, 2, 0, 1), (-1, -2, 0, -1)) is PairClass.NESTED_OR_EQUAL


def test_classify_pair_rejects_nonnegative_norm():
    dbl = GramLattice(DOUBLED_INTERSECT)
    assert dbl.norm((1, 0, 0, 0)) > 0
    with pytest.raises(ValueError):
        classify_pair(dbl, (1, 0, 0, 0), (0, 1, 0, 0))
    with pytest.raises(ValueError):
        classify_pair(dbl, (0, 1, 0, 0), (1, 0, 0, 0))


def _circle_agrees(verdict, c1, r1, c2, r2, tol=1e-6):
    """Float circle geometry consistent with the exact verdict."""
    sep = math.hypot(c1[0] - c2[0], c1[1] - c2[1])
    if verdict is PairClass.TRANSVERSAL:
        return abs(r1 - r2) - tol < sep < r1 + r2 + tol
    if verdict is PairClass.TANGENT:
        return min(abs(sep - (r1 + r2)), abs(sep - abs(r1 - r2))) <= tol
    if verdict is PairClass.DISJOINT:
        return sep >= r1 + r2 - tol or sep <= abs(r1 - r2) + tol
    return sep <= tol  # proportional pairs share the circle


def test_classify_pair_matches_circle_geometry():
    """Exact trichotomy agrees with the rendered circles on three lattices."""
    for name, bound in (("ex0", 4), ("ex5", 4), ("ex2", 6)):
        frame = frame_of(name)
        walls = enumerate_walls(frame, EnumRequest(WALL_NORM[name], bound))
        ell = walls.lattice
        from carpet.projection import disc_region

        regions = [disc_region(frame, v) for v in walls.vectors]
        discs = [(v, r) for v, r in zip(walls.vectors, regions) if r.kind == "disc"]
        checked = 0
        for i in range(len(discs)):
            for j in range(i + 1, len(discs)):
                (vi, ri), (vj, rj) = discs[i], discs[j]
                verdict = classify_pair(ell, vi, vj)
                assert _circle_agrees(verdict, ri.center, ri.radius,
                                      rj.center, rj.radius), (name, vi, vj, verdict)
                checked += 1
        assert checked > 50


def test_pair_counts_frozen_ex0_bound6():
    frame = frame_of("ex0")
    walls = enumerate_walls(frame, EnumRequest(-1, 6))
    assert len(walls.vectors) == 128
    counts = pair_counts(walls.lattice, walls.vectors)
    assert counts[PairClass.DISJOINT] == 7480
    assert counts[PairClass.TANGENT] == 648
    assert counts[PairClass.TRANSVERSAL] == 0
    assert counts[PairClass.NESTED_OR_EQUAL] == 0
    assert sum(counts.values()) == 128 * 127 // 2


def test_pair_counts_agrees_with_classify_pair():
    rng = random.Random(41)
    ell = GramLattice(DOUBLED_INTERSECT)
    vectors = enumerate_norm(ell, -8, 4)
    sample = rng.sample(vectors, min(18, len(vectors)))
    counts = pair_counts(ell, sample)
    manual = {cls: 0 for cls in PairClass}
    for i in range(len(sample)):
        for j in range(i + 1, len(sample)):
            manual[classify_pair(ell, sample[i], sample[j])] += 1
    assert counts == manual


# ---------------------------------------------------------------------------
# maximal regions


def _disc(cx, cy, r):
    return DiscRegion(kind="disc", center=(cx, cy), radius=r)


def test_maximal_regions_synthetic_discs():
    regions = [
        _disc(0.0, 0.0, 2.0),   # holds the next one
        _disc(0.5, 0.0, 1.0),
        _disc(3.0, 0.0, 0.4),   # separate
        _disc(0.0, 0.0, 1.999),  # concentric, strictly smaller
    ]
    assert maximal_regions(regions) == [0, 2]


def test_maximal_regions_hole_and_halfplane():
    regions = [
        _disc(0.0, 0.0, 2.0),
        DiscRegion(kind="hole", center=(10.0, 0.0), radius=1.0),
        DiscRegion(kind="halfplane", normal=(1.0, 0.0), offset=-5.0),
        _disc(10.0, 0.0, 0.5),
    ]
    # the half-plane x >= -5 holds both discs; the disc at (10, 0) also
    # sits in the hole; a hole never sits inside a half-plane here
    assert maximal_regions(regions) == [1, 2]


def test_maximal_regions_equal_circles_keep_first():
    """A vector and its double draw the same circle; the borderline
    goes to the exact proportionality check and the first index wins."""
    ell = lat("ex0")
    frame = frame_of("ex0")
    from carpet.projection import disc_region

    a = disc_region(frame, ell.vector((1, 0, 0, 0)))
    b = disc_region(frame, ell.vector((2, 0, 0, 0)))
    assert a.kind == b.kind
    assert math.hypot(a.center[0] - b.center[0],
                      a.center[1] - b.center[1]) < 1e-12
    assert abs(a.radius - b.radius) < 1e-12
    assert maximal_regions([a, b], ell) == [0]
    assert maximal_regions([b, a], ell) == [0]


def test_antichain_matches_pixel_oracle_ex1():
    frame = frame_of("ex1")
    walls = enumerate_walls(frame, EnumRequest(-1, 4))
    from carpet.projection import disc_region

    regions = [disc_region(frame, v) for v in walls.vectors]
    idx = maximal_regions(regions, walls.lattice)
    oracle = PixelOracle(regions)
    assert oracle.antichain() == idx


def test_antichain_matches_pixel_oracle_ex0_bound6():
    """128 walls, enough to engage the bulk disc prescreen."""
    frame = frame_of("ex0")
    walls = enumerate_walls(frame, EnumRequest(-1, 6))
    from carpet.projection import disc_region

    regions = [disc_region(frame, v) for v in walls.vectors]
    idx = maximal_regions(regions, walls.lattice)
    oracle = PixelOracle(regions)
    assert oracle.antichain() == idx


def test_union_of_maximal_covers_union_of_all():
    frame = frame_of("ex1")
    walls = enumerate_walls(frame, EnumRequest(-1, 4))
    from carpet.projection import disc_region

    regions = [disc_region(frame, v) for v in walls.vectors]
    idx = maximal_regions(regions, walls.lattice)
    robust, raw = window_masks(regions, 13.0, 1200)
    robust_all = np.zeros_like(robust[0])
    for mask in robust:
        robust_all |= mask
    raw_max = np.zeros_like(raw[0])
    for i in idx:
        raw_max |= raw[i]
    assert not np.any(robust_all & ~raw_max)


def test_prescreen_parity_with_plain_loop():
    """The bulk prescreen keeps exactly the plain quadratic loop's answer."""
    frame = frame_of("ex4")
    walls = enumerate_walls(frame, EnumRequest(-1, 24))
    from carpet.projection import disc_region

    regions = [disc_region(frame, v) for v in walls.vectors]
    assert len(regions) >= 64  # prescreen path active
    fast = maximal_regions(regions, walls.lattice)

    from carpet import chambers

    slow = []
    for i, ri in enumerate(regions):
        dominated = False
        for j, rj in enumerate(regions):
            if i == j:
                continue
            if chambers._contains(rj, ri, walls.lattice, 1e-9):
                if i < j and chambers._contains(ri, rj, walls.lattice, 1e-9):
                    continue
                dominated = True
                break
        if not dominated:
            slow.append(i)
    assert fast == slow


def test_maximal_discs_frozen_counts():
    frame = frame_of("ex0")
    boundary = maximal_discs(enumerate_walls(frame, EnumRequest(-1, 8)), frame)
    assert len(boundary.walls.vectors) == 224
    assert len(boundary.maximal) == 20
    assert boundary.word == ()
    assert not boundary.pruned

    frame2 = frame_of("ex2")
    boundary2 = maximal_discs(enumerate_walls(frame2, EnumRequest(-1, 8)), frame2)
    assert len(boundary2.walls.vectors) == 161
    assert len(boundary2.maximal) == 41


# ---------------------------------------------------------------------------
# adjacent chambers


def test_adjacent_chamber_empty_word_is_origin():
    frame = frame_of("ex1")
    walls = enumerate_walls(frame, EnumRequest(-1, 5))
    base = maximal_discs(walls, frame)
    moved = adjacent_chamber(walls, frame, [])
    assert [v.coords for v in moved.walls.vectors] == \
        [v.coords for v in base.walls.vectors]
    assert moved.word == ()


def test_adjacent_chamber_involution():
    frame = frame_of("ex1")
    walls = enumerate_walls(frame, EnumRequest(-1, 5))
    for i in (0, 3, 7):
        back = adjacent_chamber(walls, frame, [i, i])
        assert [v.coords for v in back.walls.vectors] == \
            [v.coords for v in walls.vectors]


def test_adjacent_chamber_fixes_crossed_wall_circle():
    """Crossing wall i keeps wall i's circle; only the side flips."""
    frame = frame_of("ex1")
    walls = enumerate_walls(frame, EnumRequest(-1, 5))
    from carpet.projection import disc_region

    for i in (0, 1, 5):
        before = disc_region(frame, walls.vectors[i])
        moved = adjacent_chamber(walls, frame, [i])
        flipped = walls.lattice.vector(
            tuple(-c for c in walls.vectors[i].coords))
        match = [r for r in moved.regions
                 if r.source.coords in (walls.vectors[i].coords, flipped.coords)]
        assert match, i
        after = match[0]
        assert after.kind != before.kind
        assert math.hypot(after.center[0] - before.center[0],
                          after.center[1] - before.center[1]) < 1e-12
        assert abs(after.radius - before.radius) < 1e-12


def test_adjacent_chamber_preserves_pair_counts():
    frame = frame_of("ex1")
    walls = enumerate_walls(frame, EnumRequest(-1, 4))
    moved = adjacent_chamber(walls, frame, [2, 0])
    assert pair_counts(walls.lattice, moved.walls.vectors) == \
        pair_counts(walls.lattice, walls.vectors)
    norms = {v.norm for v in moved.walls.vectors}
    assert norms == {-1}


def test_adjacent_chamber_bad_index():
    frame = frame_of("ex1")
    walls = enumerate_walls(frame, EnumRequest(-1, 4))
    with pytest.raises(IndexError):
        adjacent_chamber(walls, frame, [len(walls.vectors)])
    with pytest.raises(IndexError):
        adjacent_chamber(walls, frame, [-1])


# ---------------------------------------------------------------------------
# component classification


def test_classify_component_crossing_witness():
    ell = lat("ex2")
    out = classify_component(ell, (1, 2, 1, 0), [-4], 8)
    assert out.verdict is ComponentVerdict.NOT_COMPONENT
    assert (1, 2, 0, 1) in {w.coords for w in out.witnesses}
    assert out.justification == "witness(bound=8)"
    assert all(classify_pair(ell, (1, 2, 1, 0), w) is PairClass.TRANSVERSAL
               for w in out.witnesses)


def test_classify_component_nonbaragar_lattice():
    ell = GramLattice(NONBARAGAR)
    walls = enumerate_norm(ell, -4, 8)
    assert len(walls) == 10
    for w in walls:
        out = classify_component(ell, w, [-2], 8)
        assert out.verdict is ComponentVerdict.CARPET_NON_BARAGAR
        assert out.justification == "rk2(p=23)"
        assert out.witnesses == ()


def test_classify_component_baragar_cases():
    ell = GramLattice(NONBARAGAR)
    out = classify_component(ell, (0, 1, 0, 0), [-2], 4)
    assert out.verdict is ComponentVerdict.BARAGAR
    assert out.justification == "rk2(p=23)"

    out0 = classify_component(lat("ex0"), (1, 0, 0, 0), [-1], 8)
    assert out0.verdict is ComponentVerdict.BARAGAR
    assert out0.justification == "rk2(p=2)"


def test_classify_component_box_justification():
    """No discriminant prime applies, so a clean box is all we can say."""
    ell = GramLattice(ANISO7)
    out = classify_component(ell, (0, 1, 0, 0), [-1], 2)
    assert out.verdict is ComponentVerdict.BARAGAR
    assert out.justification == "box(bound=2)"


def test_classify_component_pruned_is_inconclusive():
    ell = lat("ex1")
    out = classify_component(ell, (1, 0, 0, 0), [-1], 8,
                             frame=frame_of("ex1"), min_disc_radius=100.0)
    assert out.verdict is ComponentVerdict.INCONCLUSIVE
    assert out.justification.startswith("radius-pruned(min_radius=")


def test_classify_component_input_validation():
    ell = lat("ex0")
    with pytest.raises(ValueError):
        classify_component(ell, (1, 0, 0, 0), [], 4)
    with pytest.raises(ValueError):
        classify_component(ell, (1, 0, 0, 0), [-1, 2], 4)
    dbl = GramLattice(DOUBLED_INTERSECT)
    with pytest.raises(ValueError):
        classify_component(dbl, (1, 0, 0, 0), [-2], 4)


def test_rk2_hypothesis_direct_values():
    dbl = GramLattice(DOUBLED_INTERSECT)
    assert rk2_hypothesis(dbl, 5, -2)
    assert not rk2_hypothesis(dbl, 2, -2)
    assert not rk2_hypothesis(lat("ex1"), 11, -1)
    assert rk2_hypothesis(lat("ex0"), 2, -1)
    assert not rk2_hypothesis(lat("ex0"), 2, -2)


def test_rk2_primes_forbid_crossings_everywhere():
    """On every bundled lattice, a discriminant prime of residue
    dimension rank-1 with d*d below it rules out transversal pairs."""
    hit = 0
    for name in sorted(GRAMS):
        ell = lat(name)
        d = WALL_NORM[name]
        primes = set()
        for div in ell.discriminant().elementary_divisors:
            primes |= _prime_factors(div)
        for p in sorted(primes):
            if not rk2_hypothesis(ell, p, d):
                continue
            counts = pair_counts(ell, enumerate_norm(ell, d, 4))
            assert counts[PairClass.TRANSVERSAL] == 0, (name, p)
            hit += 1
    assert hit >= 5


def test_rk2_forbids_crossings_across_norm_classes():
    """Norm -1 against norm -4 on the five-adic lattice: the product of
    the norms stays under the prime, so crossings stay impossible."""
    ell = lat("ex2")
    assert ell.disc_fp_dimension(5) == 3
    small = enumerate_norm(ell, -1, 4)
    big = enumerate_norm(ell, -4, 4)
    assert small and big
    for u in small:
        for v in big:
            assert classify_pair(ell, u, v) is not PairClass.TRANSVERSAL


def test_rk3_no_negative_definite_triples():
    """Rank-5 lattice with residue dimension rank-2 at p=5: pairs may
    cross but no three walls of norm -2 are pairwise in crossing
    position with a definite span."""
    ell = GramLattice(RK3_RANK5)
    assert ell.rank == 5
    assert ell.disc_fp_dimension(5) == 3
    vectors = enumerate_norm(ell, -2, 2)
    assert len(vectors) >= 20
    counts = pair_counts(ell, vectors)
    assert counts[PairClass.TRANSVERSAL] >= 1
    n = len(vectors)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                sub = ell.restrict([vectors[i], vectors[j], vectors[k]])
                assert sub.signature() != (0, 3, 0), (i, j, k)


# ---------------------------------------------------------------------------
# density probe


def test_density_probe_full_cover_and_empty():
    frame = frame_of("ex0")
    walls = enumerate_walls(frame, EnumRequest(-1, 4))
    base = maximal_discs(walls, frame)
    covering = ChamberBoundary(
        walls=base.walls, word=(),
        regions=base.regions,
        maximal=(DiscRegion(kind="disc", center=(0.0, 0.0), radius=2.0),),
        pruned=False,
    )
    assert density_probe(covering, 500, 0.01) == 1.0
    empty = ChamberBoundary(walls=base.walls, word=(), regions=(),
                            maximal=(), pruned=False)
    assert density_probe(empty, 500, 0.01) == 0.0


def test_density_probe_monotone_in_bound():
    frame = frame_of("ex4")
    vals = []
    for bound in (4, 8, 16):
        walls = enumerate_walls(frame, EnumRequest(-1, bound))
        vals.append(density_probe(maximal_discs(walls, frame), 4000, 0.01, seed=7))
    assert vals == sorted(vals)
    assert 0.0 < vals[0] <= vals[-1] < 1.0


def test_density_probe_validation():
    frame = frame_of("ex0")
    boundary = maximal_discs(enumerate_walls(frame, EnumRequest(-1, 4)), frame)
    with pytest.raises(ValueError):
        density_probe(boundary, 0, 0.01)
    with pytest.raises(ValueError):
        density_probe(boundary, 100, -0.5)


def test_density_probe_deterministic_per_seed():
    frame = frame_of("ex0")
    boundary = maximal_discs(enumerate_walls(frame, EnumRequest(-1, 4)), frame)
    a = density_probe(boundary, 2000, 0.02, seed=3)
    b = density_probe(boundary, 2000, 0.02, seed=3)
    c = density_probe(boundary, 2000, 0.02, seed=4)
    assert a == b
    assert abs(a - c) < 0.1
