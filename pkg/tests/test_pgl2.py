import random

import pytest

from prsdeep.gf import INF, field_of_order, make_field
from prsdeep.linalg import Matrix, normalize
from prsdeep.pgl2 import (
    Mobius,
    act_on_syndrome,
    affine,
    dual_automorphism_identity,
    generators,
    group_elements,
    identity,
    is_stable,
    monomial_automorphism,
    n_point,
    orbit,
    orbit_decomposition,
    reciprocal,
    rep_matrix,
    scaling,
    translation,
)
from prsdeep.prscode import c_vector, evaluation_points, make_code


def proportional(F, A: Matrix, B: Matrix) -> bool:
    a = [x for r in A.rows for x in r]
    b = [x for r in B.rows for x in r]
    return normalize(F, a) == normalize(F, b)


def random_mobius(F, rng):
    while True:
        e = [rng.randrange(F.q) for _ in range(4)]
        if F.sub(F.mul(e[0], e[3]), F.mul(e[1], e[2])):
            return Mobius(F, *e)


def closure_orbit(F, s):
    """Orbit by closing under the generators (independent of full group enumeration)."""
    s = normalize(F, s)
    seen = {s}
    todo = [s]
    gens = generators(F)
    while todo:
        x = todo.pop()
        for g in gens:
            y = act_on_syndrome(g, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def test_mobius_examples():
    F = make_field(7)
    for t in evaluation_points(F):
        assert identity(F)(t) == t
    r = reciprocal(F)
    assert r(0) is INF and r(INF) == 0 and r(3) == F.inv(3)
    assert translation(F, 4)(5) == 2
    assert translation(F, 4)(INF) is INF


def test_canonical_form_and_singular():
    F = make_field(5)
    assert Mobius(F, 2, 0, 0, 2) == identity(F)
    with pytest.raises(ValueError):
        Mobius(F, 1, 2, 2, 4)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_group_order_and_bijection(q):
    F = field_of_order(q)
    G = group_elements(F)
    assert len(G) == q * (q * q - 1)
    assert len(set(G)) == len(G)
    assert list(G) == sorted(G)
    pts = evaluation_points(F)
    for g in G[:: max(1, len(G) // 50)]:
        assert sorted(map(lambda t: -1 if t is INF else t, map(g, pts))) == [-1] + list(range(q))


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_composition_and_inverse(q):
    F = field_of_order(q)
    rng = random.Random(q)
    for _ in range(50):
        g, h = random_mobius(F, rng), random_mobius(F, rng)
        for t in evaluation_points(F):
            assert (g * h)(t) == g(h(t))
        assert g * g.inverse() == identity(F)


def test_generators_generate():
    for q in (4, 5, 7):
        F = field_of_order(q)
        seen = {identity(F)}
        todo = [identity(F)]
        while todo:
            x = todo.pop()
            for g in generators(F):
                y = g * x
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        assert len(seen) == q * (q * q - 1)


def test_rep_matrix_examples():
    F = make_field(7)
    for m in range(2, 7):
        R = rep_matrix(reciprocal(F), m)
        assert R.rows == [[int(i + j == m - 1) for j in range(m)] for i in range(m)]
    c = 3
    T = rep_matrix(translation(F, c), 4)
    assert T.rows == [
        [1, 0, 0, 0],
        [c, 1, 0, 0],
        [F.pow(c, 2), F.mul_int(2, c), 1, 0],
        [F.pow(c, 3), F.mul_int(3, F.pow(c, 2)), F.mul_int(3, c), 1],
    ]
    g = Mobius(F, 1, 2, 3, 5)
    a, b, c, d = g.entries
    assert rep_matrix(g, 3).rows[1] == [F.mul(a, c), F.add(F.mul(a, d), F.mul(b, c)), F.mul(b, d)]
    with pytest.raises(ValueError):
        rep_matrix(g, 1)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_homomorphism_and_equivariance(q):
    F = field_of_order(q)
    rng = random.Random(1000 + q)
    for m in range(2, min(q, 6) + 1):
        for _ in range(200):
            g, h = random_mobius(F, rng), random_mobius(F, rng)
            assert proportional(F, rep_matrix(g * h, m), rep_matrix(g, m) @ rep_matrix(h, m))
            t = rng.choice(evaluation_points(F))
            assert act_on_syndrome(g, c_vector(m, t, F)) == normalize(F, c_vector(m, g(t), F))


def test_monomial_automorphism_examples():
    F = make_field(5)
    aut = monomial_automorphism(identity(F), 3)
    assert aut.matrix() == Matrix.identity(F, 6)
    c = 2
    aut = monomial_automorphism(translation(F, c), 3)
    pts = evaluation_points(F)
    assert [pts[i] for i in aut.perm][:5] == [F.add(t, c) for t in range(5)]
    assert aut.perm[5] == 5
    assert aut.diag[:5] == [1] * 5


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_monomial_automorphism_all_group(q):
    # verify=True checks g_m G_m = G_m B_m(g) entrywise
    F = field_of_order(q)
    rng = random.Random(q)
    G = group_elements(F)
    for g in rng.sample(G, 40):
        for m in range(2, q + 1):
            monomial_automorphism(g, m)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_transpose_identity(q):
    F = field_of_order(q)
    rng = random.Random(77 + q)
    for _ in range(25):
        g = random_mobius(F, rng)
        k = rng.randrange(2, q - 1)
        assert dual_automorphism_identity(g, k)


def test_syndrome_action_preserves_deep_hole_status():
    # automorphisms preserve error distance, so they permute the levels
    F = make_field(7)
    code = make_code(F, 4)
    table = {}
    from prsdeep.prscode import error_distance_table
    table = error_distance_table(code)
    for g in generators(F):
        for s, d in table.items():
            assert table[act_on_syndrome(g, s)] == d


def test_n_point():
    assert n_point(3) == (0, 1, 0)
    assert n_point(4) == (0, 0, 1, 0)
    assert n_point(5) == (0, 0, 0, 1, 0)
    with pytest.raises(ValueError):
        n_point(2)


def test_orbit_examples():
    assert orbit(make_field(5), n_point(3)).size == 15
    assert orbit(field_of_order(4), n_point(3)).size == 1
    F5 = make_field(5)
    assert orbit(F5, n_point(6)).size == 6
    assert orbit(F5, (0, 0, 0, 0, 1, 1)).size == 24


@pytest.mark.parametrize("q", [4, 5, 7])
def test_orbit_matches_generator_closure(q):
    F = field_of_order(q)
    for m in range(3, 6):
        s = n_point(m)
        assert set(orbit(F, s).points) == closure_orbit(F, s)


def _stab_set(F, pred):
    return {g for g in group_elements(F) if pred(g)}


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_stabilizer_n3_odd(q):
    # t -> d t and t -> d / t
    F = field_of_order(q)
    want = {scaling(F, d) for d in range(1, q)} | {Mobius(F, 0, 1, d, 0) for d in range(1, q)}
    assert set(orbit(F, n_point(3)).stabilizer) == want


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_stabilizer_contents(q):
    F = field_of_order(q)
    p = F.p
    scalings = {scaling(F, d) for d in range(1, q)}
    affines = {affine(F, d, c) for d in range(1, q) for c in range(q)}
    translations = {translation(F, c) for c in range(q)}
    for m in range(4, q + 1):
        stab = set(orbit(F, n_point(m)).stabilizer)
        if m % p == 1:
            assert stab == affines, m
            s2 = tuple(F.add(x, y) for x, y in zip(n_point(m), c_vector(m, INF, F)))
            assert set(orbit(F, s2).stabilizer) == translations
        else:
            assert stab == scalings, m


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_orbit_stabilizer(q):
    F = field_of_order(q)
    order = q * (q * q - 1)
    rng = random.Random(q)
    for m in range(2, 6):
        for _ in range(3):
            s = tuple(rng.randrange(q) for _ in range(m))
            if any(s):
                o = orbit(F, s)
                assert o.size * o.stabilizer_order == order


def test_decomposition_and_stability():
    F = make_field(5)
    from prsdeep.linalg import enumerate_projective_points
    pts = enumerate_projective_points(F, 2)
    orbs = orbit_decomposition(F, pts)
    assert sum(len(o) for o in orbs) == len(pts)
    assert sorted(len(o) for o in orbs) == [6, 10, 15]
    assert is_stable(F, pts)
    assert not is_stable(F, [n_point(3)])
    with pytest.raises(ValueError):
        orbit_decomposition(F, [n_point(3)])
