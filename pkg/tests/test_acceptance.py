"""Acceptance criteria 1-10, each printing one PASS/FAIL line (run with -s to see them)."""
import io
import json
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

from ifbases import formats as fmt
from ifbases.cli import run
from ifbases.cone import RationalCone, SimplicialPiece, is_pointed
from ifbases.fixtures import load, names
from ifbases.funcbasis import covers, ifb_from_cone, split_basis, split_family
from ifbases.intbasis import hilbert_basis, integral_basis, parallelepiped_points
from ifbases.optimality import IMPROVABLE, OPTIMAL, certify, orthant_moves, verify_improvement
from ifbases.oracle import enumerate_box, is_irreducible, represent
from ifbases.polyhedron import ConeMinusExcluded
from ifbases.polynomial import (MultiPoly, PolyMap, correction_bounds, correction_residual,
                                evaluate, floor_vec)

from conftest import ACCEPTANCE_LINES
from helpers import brute_parallelepiped, det, feasible_points, random_bounded_ip


@contextmanager
def criterion(number, title, budget=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
    except BaseException as e:
        line = f"FAIL {number:>2} {title}: {e}"
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)
        raise
    line = f"PASS {number:>2} {title} ({time.perf_counter() - start:.2f}s)"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)


def cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue()


def test_01_infinite_basis_detection():
    with criterion(1, "infinite basis detected on y_ge_1", 1.0):
        fx = load("y_ge_1")
        code, text = cli(fx.argv())
        assert code == 0
        rep = json.loads(text)
        assert rep["finite"] is False
        assert rep["witness_ray"] == [1, 0]


def test_02_hilbert_basis_matches_oracle():
    with criterion(2, "Hilbert bases of cone{(1,0),(1,q)}", 5.0):
        for q in range(1, 7):
            C = RationalCone.of([(1, 0), (1, q)], 2)
            basis = hilbert_basis(C).points
            assert sorted(basis) == [(1, j) for j in range(q + 1)], (q, basis)
            c = (2 * q + 1, -1)  # strictly positive on both rays
            S = ConeMinusExcluded(C)
            for x in enumerate_box(S, (0, 0), (8, 8)):
                w = represent(basis, x, c)
                assert w is not None and w.total(2) == x, (q, x)
            for g in basis:
                assert is_irreducible(basis, g, c), (q, g)


def test_03_parallelepiped_count_is_determinant():
    with criterion(3, "parallelepiped point count equals |det|", 10.0):
        rng = random.Random(3)
        done = 0
        while done < 100:
            n = 2 if done % 2 == 0 else 3
            cols = [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(n)]
            d = det([list(c) for c in cols])
            if d == 0:
                continue
            pts = parallelepiped_points(SimplicialPiece(tuple(cols), tuple(range(n))))
            assert len(pts) == abs(d), (cols, len(pts), d)
            assert len(set(pts)) == len(pts)
            if n == 2:
                assert sorted(pts) == brute_parallelepiped(cols)
            done += 1


def _random_pointed_cone(rng):
    n = rng.choice((2, 3))
    c = tuple(rng.randint(1, 3) for _ in range(n))
    while True:
        gens = set()
        while len(gens) < rng.randint(n, n + 2):
            g = tuple(rng.randint(-3, 4) for _ in range(n))
            if sum(a * b for a, b in zip(c, g)) > 0:
                gens.add(g)
        C = RationalCone.of(sorted(gens), n)
        if is_pointed(C)[0] and len(C.generators) >= n:
            return C


def test_04_basis_independent_of_generator_order():
    with criterion(4, "minimized basis independent of insertion order"):
        rng = random.Random(4)
        for _ in range(20):
            C = _random_pointed_cone(rng)
            S = ConeMinusExcluded(C)
            results = []
            for _ in range(3):
                perm = list(range(len(C.generators)))
                rng.shuffle(perm)
                results.append(sorted(integral_basis(S, C, order=perm).points))
            assert results[0] == results[1] == results[2], C.generators


def _parabola_set():
    return fmt.decode_lattice_set(load("parabola_ifb").document)[0]


def test_05_function_basis_from_cone_and_split():
    with criterion(5, "cone-based function basis covers [0,6]^2; split drops a parameter", 30.0):
        S = _parabola_set()
        box = ((0, 0), (6, 6))
        B = ifb_from_cone(S, [(1, 0), (0, 1)], box)
        rep = covers(B, S, box)
        assert rep.ok, rep.counterexample
        assert B.max_param_count == 2
        e2 = (0, 1)
        assert S.contains(e2)
        first, ray = split_family(B.families[0], B.families[0].affine_shape()[1].index(e2), S)
        assert (first.param_count, ray.param_count) == (1, 1)
        split = split_basis(B, e2, S)
        assert split.max_param_count == B.max_param_count - 1
        assert split.max_param_count_with_offset == B.max_param_count_with_offset - 1


def test_06_parabola_function_basis():
    with criterion(6, "T1, T2 cover the parabola region in [0,16]x[0,4]", 10.0):
        fx = load("parabola_cone")
        doc = fx.document
        B = fmt.decode_function_basis(doc)
        S = fmt.decode_lattice_set(doc["set"])[0]
        assert [T.name for T in B.families] == ["T1", "T2"]
        box = ((0, 0), (16, 4))
        rep = covers(B, S, box, param_bound=16)
        assert rep.ok, rep.counterexample
        expected = [x for x in product(range(17), range(5)) if x[0] <= x[1] ** 2]
        assert rep.checked == len(expected)
        for x in expected:
            total = [0, 0]
            for i, t in rep.witnesses[x]:
                m = B.families[i](t)
                assert S.contains(m) and B.families[i].admits(t)
                total = [a + b for a, b in zip(total, m)]
            assert tuple(total) == x
        assert rep.witnesses[(0, 0)] == ()
        assert B.families[0]((0,)) == (0, 0)


def _sandwich(g, g_l, g_u, rng, samples):
    for _ in range(samples):
        y = tuple(Fraction(rng.randint(0, 600), rng.randint(1, 30)) for _ in range(g.nvars))
        lam = floor_vec(y)
        for j, (gy, gl) in enumerate(zip(g(y), g(lam))):
            lo = evaluate(g_l.components[j], lam)
            hi = evaluate(g_u.components[j], lam)
            if not lo <= gy - gl <= hi:
                return y
    return None


def test_07_taylor_bounds():
    with criterion(7, "correction bounds, degree drop and sandwich", 5.0):
        l1, l2 = MultiPoly.variables(2)
        g_l, g_u = correction_bounds(PolyMap((l1 ** 2, l1 + l2)))
        assert g_u.components[0] == 2 * l1 + 1
        assert g_u.components[1] == MultiPoly.const(2, 2)
        assert all(c == MultiPoly.const(0, 2) for c in g_l.components)
        rng = random.Random(7)
        poly_maps = [n for n in names() if load(n).document["kind"] == "poly_map"]
        assert poly_maps
        for name in poly_maps:
            g = fmt.decode_poly_map(load(name).document)
            lo, up = correction_bounds(g)
            assert lo.maxdeg < g.maxdeg and up.maxdeg < g.maxdeg, name
            assert _sandwich(g, lo, up, rng, 1000) is None, name


def test_08_zero_correction_term():
    with criterion(8, "zero correction term for (l1, l1^k + l2)"):
        for k in (2, 3):
            l1, l2 = MultiPoly.variables(2)
            g = PolyMap((l1, l1 ** k + l2))
            hits = 0
            for a, b in product(range(6), range(41)):
                # preimage of (a, b): y1 = a, y2 = b - a^k, which must be >= 0
                y = (Fraction(a), Fraction(b - a ** k))
                if y[1] < 0:
                    continue
                lam, v = correction_residual(g, (a, b), y)
                assert v == (0, 0), (k, a, b, v)
                hits += 1
            assert hits > 0


def test_09_certifier_matches_brute_force():
    with criterion(9, "certifier verdicts match exhaustive maximization", 60.0):
        rng = random.Random(9)
        for _ in range(25):
            ip = random_bounded_ip(rng)
            assert ip.n <= 3 and ip.p.degree <= 3
            feas = feasible_points(ip)
            assert 0 < len(feas) <= 2000
            best = max(ip.value(z) for z in feas)
            moves = orthant_moves(ip.A)
            for z0 in feas:
                cert = certify(ip, z0, 200, moves)
                assert cert.verdict == (OPTIMAL if ip.value(z0) == best else IMPROVABLE), z0
                if cert.verdict == IMPROVABLE:
                    assert verify_improvement(ip, cert)


_SUITE = """
import sys
from pathlib import Path
from ifbases.cli import run
from ifbases.fixtures import load, names
out = Path(sys.argv[1])
for name in names():
    fx = load(name)
    code = run(fx.argv(str(out / (name + ".json"))))
    assert code == 0, name
"""


def _run_suite(dest, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    subprocess.run([sys.executable, "-c", _SUITE, str(dest)], check=True, env=env)
    return {p.name: p.read_bytes() for p in sorted(dest.iterdir())}


def test_10_determinism(tmp_path):
    with criterion(10, "two CLI fixture runs are byte-identical"):
        (tmp_path / "a").mkdir()
        (tmp_path / "b").mkdir()
        first = _run_suite(tmp_path / "a", 1)
        second = _run_suite(tmp_path / "b", 2)
        assert len(first) == len(names())
        assert first == second
