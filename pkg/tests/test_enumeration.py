import itertools

import numpy as np
import pytest

from markoff.conics import closed_form_total
from markoff.enumeration import (DEFAULT_MAX_PRIME, SolutionSet,
                                 count_solutions_bruteforce,
                                 enumerate_solutions, exchange_roots,
                                 zero_locus)
from markoff.field import chi, is_prime
from markoff.surface import SurfaceParams, apply_move, residual

from conftest import naive_solutions


def test_enumerate_frozen_examples():
    assert len(enumerate_solutions(SurfaceParams.make(3, (0, 0, 0)))) == 8
    assert len(enumerate_solutions(SurfaceParams.make(5, (0, 0, 0)))) == 40
    assert len(enumerate_solutions(SurfaceParams.make(7, (2, 2, -2)))) == 49


def test_enumerate_matches_naive():
    for p in (3, 5):
        for a in itertools.product(range(p), repeat=3):
            params = SurfaceParams.make(p, a)
            got = list(enumerate_solutions(params).iter_triples())
            assert got == naive_solutions(p, a), (p, a)
    for p, a in [(7, (1, 1, 1)), (7, (2, 2, 5)), (11, (4, 0, 9)), (13, (2, 3, 3))]:
        params = SurfaceParams.make(p, a)
        assert list(enumerate_solutions(params).iter_triples()) == naive_solutions(p, a)


def test_enumerate_is_sorted_unique_and_origin_free():
    sol = enumerate_solutions(SurfaceParams.make(13, (2, 2, -2)))
    pts = [tuple(int(v) for v in row) for row in sol.points]
    assert pts == sorted(set(pts))
    assert (0, 0, 0) not in pts
    assert not sol.includes_origin


def test_solution_set_lookup():
    params = SurfaceParams.make(7, (1, 1, 1))
    sol = enumerate_solutions(params)
    assert sol.index_of((1, 1, 1)) == sol.index_of((1, 1, 1))
    assert (1, 1, 1) in sol
    assert (0, 0, 0) not in sol
    with pytest.raises(KeyError):
        sol.index_of((0, 0, 0))
    idx = sol.lookup_array(sol.points[::-1])
    assert np.array_equal(idx, np.arange(len(sol))[::-1])


def test_solution_set_closed_under_moves():
    for p, a in [(7, (1, 1, 1)), (11, (2, 5, 5)), (13, (0, 4, 4))]:
        params = SurfaceParams.make(p, a)
        sol = enumerate_solutions(params)
        for x in sol.iter_triples():
            for i in range(3):
                assert apply_move(params, x, i) in sol


def test_size_equals_closed_form():
    for p in (5, 7, 11, 13):
        for a in itertools.product(range(p), repeat=3):
            params = SurfaceParams.make(p, a)
            if params.s == 0:
                continue
            assert len(enumerate_solutions(params)) == closed_form_total(params)


def test_bruteforce_count_matches_enumeration():
    for p, a in [(5, (0, 0, 0)), (7, (2, 2, -2)), (11, (1, 2, 3)), (13, (2, 3, 3)),
                 (7, (0, 0, -3)), (5, (2, 2, -2))]:
        params = SurfaceParams.make(p, a)
        assert count_solutions_bruteforce(params) == len(enumerate_solutions(params))


def test_bruteforce_count_chunking_invariant():
    params = SurfaceParams.make(11, (1, 2, 3))
    expected = count_solutions_bruteforce(params)
    for chunk in (1, 2, 5, 11):
        assert count_solutions_bruteforce(params, chunk=chunk) == expected


def test_enumerate_p2():
    params = SurfaceParams.make(2, (2, 2, -2))
    sol = enumerate_solutions(params)
    assert list(sol.iter_triples()) == [(0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]


def test_csv_export():
    sol = enumerate_solutions(SurfaceParams.make(3, (0, 0, 0)))
    lines = sol.to_csv().strip().split("\n")
    assert len(lines) == 8
    assert lines[0] == "1,1,1"
    assert all(len(line.split(",")) == 3 for line in lines)


def test_memory_guard():
    p = next(q for q in range(DEFAULT_MAX_PRIME + 1, DEFAULT_MAX_PRIME + 200)
             if is_prime(q))
    with pytest.raises(ValueError, match="guard"):
        enumerate_solutions(SurfaceParams.make(p, (0, 0, 0)))


class TestZeroLocus:
    def test_frozen_examples(self):
        locus = zero_locus(SurfaceParams.make(5, (0, 0, 0)), 0)
        assert locus.roots == (2, 3)
        assert len(locus) == 8
        locus = zero_locus(SurfaceParams.make(7, (1, 1, 1)), 0)
        assert locus.roots == (2, 4)
        assert len(locus) == 12
        locus = zero_locus(SurfaceParams.make(7, (0, 0, 3)), 2)
        assert locus.roots == ()
        assert len(locus) == 0

    def test_roots_satisfy_exchange_polynomial(self):
        for p in (5, 7, 11, 13, 17):
            for ai in range(p):
                params = SurfaceParams.make(p, (ai, 0, 0))
                for r in exchange_roots(params, 0):
                    assert (r * r + ai * r + 1) % p == 0
                    assert pow(r, -1, p) in exchange_roots(params, 0)

    def test_locus_equals_solution_slice(self):
        for p, a in [(7, (1, 1, 1)), (11, (2, 5, 5)), (13, (4, 1, 0)), (5, (2, 2, 2))]:
            params = SurfaceParams.make(p, a)
            sols = naive_solutions(p, params.a)
            for i in range(3):
                expected = sorted(x for x in sols if x[i] == 0)
                assert list(zero_locus(params, i).points) == expected

    def test_sizes_by_character(self):
        for p in (5, 7, 11, 13):
            for ai in range(p):
                params = SurfaceParams.make(p, (ai, 1, 1))
                ch = chi(ai * ai - 4, p)
                expected = {1: 2 * (p - 1), 0: p - 1, -1: 0}[ch]
                assert len(zero_locus(params, 0)) == expected

    def test_two_zero_coordinates_force_origin(self):
        for p, a in [(7, (1, 1, 1)), (11, (2, 5, 5)), (13, (3, 3, 0))]:
            params = SurfaceParams.make(p, a)
            for x in enumerate_solutions(params).iter_triples():
                assert sum(1 for v in x if v == 0) <= 1

    def test_points_are_on_surface(self):
        params = SurfaceParams.make(13, (2, 3, 3))
        for i in range(3):
            for x in zero_locus(params, i).points:
                assert residual(params, x) == 0
