import random

import pytest
from hypothesis import given, settings, strategies as st

from ifbases.cone import RationalCone, member
from ifbases.errors import CapExceededError, InfeasiblePointError
from ifbases.linalg import IntMatrix, matvec
from ifbases.optimality import (IMPROVABLE, INCONCLUSIVE, OPTIMAL, PolyIP, certify, lifted_map,
                                orthant_cones, orthant_moves, orthant_rays, verify_improvement)
from ifbases.polynomial import MultiPoly

from helpers import feasible_points, random_bounded_ip

z1, z2 = MultiPoly.variables(2)
PRODUCT = PolyIP.of(z1 * z2, [[1, 1]], [4])


def test_orthant_rays_examples():
    A = IntMatrix.from_rows([[1, 1]])
    assert orthant_rays(A, "+-").rays == ((1, -1),)
    assert orthant_rays(A, "++").rays == ()
    assert orthant_rays(IntMatrix.from_rows([[0, 0]]), "++").rays == ((0, 1), (1, 0))


def test_certify_examples():
    c = certify(PRODUCT, (1, 3), 10)
    assert c.verdict == IMPROVABLE and c.direction == (1, -1) and c.point == (2, 2)
    assert (c.value, c.improved_value) == (3, 4)
    assert verify_improvement(PRODUCT, c)
    assert certify(PRODUCT, (2, 2), 10).verdict == OPTIMAL
    x = MultiPoly.var(0, 1)
    c = certify(PolyIP(x, IntMatrix.from_rows([], 1), ()), (0,), 5)
    assert c.verdict == IMPROVABLE and c.direction == (1,)


def test_unbounded_without_improvement_is_inconclusive():
    x = MultiPoly.var(0, 1)
    c = certify(PolyIP(-x, IntMatrix.from_rows([], 1), ()), (0,), 5)
    assert c.verdict == INCONCLUSIVE


def test_infeasible_start_is_rejected():
    with pytest.raises(InfeasiblePointError) as info:
        certify(PRODUCT, (1, 2), 5)
    assert info.value.constraint == ("row", 0)
    with pytest.raises(InfeasiblePointError) as info:
        certify(PRODUCT, (5, -1), 5)
    assert info.value.constraint == ("nonneg", 1)


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("INTBASIS_MAX_DIM", "1")
    with pytest.raises(CapExceededError):
        certify(PRODUCT, (2, 2), 5)


def test_lifted_map():
    g = lifted_map(PRODUCT, (1, 3), [(1, -1)])
    assert g((1,)) == (1, -1, 1)     # p(2, 2) - p(1, 3) = 1
    assert g((3,)) == (3, -3, -3)    # p(4, 0) - 3


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_certify_agrees_with_exhaustive_maximization(seed):
    ip = random_bounded_ip(random.Random(seed))
    feas = feasible_points(ip)
    best = max(ip.value(z) for z in feas)
    moves = orthant_moves(ip.A)
    for z0 in feas:
        cert = certify(ip, z0, 200, moves)
        assert cert.verdict == (OPTIMAL if ip.value(z0) == best else IMPROVABLE)
        if cert.verdict == IMPROVABLE:
            assert verify_improvement(ip, cert)


def test_linear_objective_improving_directions_are_kernel_elements():
    c = (3, -1, 2)
    p = MultiPoly.from_dict(3, {(1, 0, 0): 3, (0, 1, 0): -1, (0, 0, 1): 2})
    ip = PolyIP.of(p, [[1, 1, 1]], [5])
    for z0 in feasible_points(ip):
        cert = certify(ip, z0, 50)
        if cert.verdict == IMPROVABLE:
            v = cert.direction
            assert matvec(ip.A, v) == (0,)
            assert sum(a * b for a, b in zip(c, v)) > 0
            # sign compatible with its orthant
            assert all(s * a >= 0 for s, a in zip(cert.orthant, v))


def test_difference_vectors_lie_in_their_orthant_cone():
    rng = random.Random(11)
    ip = random_bounded_ip(rng)
    cones = {oc.signs: oc for oc in orthant_cones(ip.A)}
    assert len(cones) == 2 ** ip.n
    feas = feasible_points(ip)
    for _ in range(50):
        za, zb = rng.choice(feas), rng.choice(feas)
        v = tuple(a - b for a, b in zip(za, zb))
        sig = tuple(1 if a >= 0 else -1 for a in v)
        oc = cones[sig]
        assert member(RationalCone(oc.rays, ip.n), v) if oc.rays else not any(v)
