import random
from itertools import product

import numpy as np
import pytest

from prsdeep.errors import BoundExceededError
from prsdeep.gf import INF, Poly, field_of_order, make_field
from prsdeep.linalg import Matrix, enumerate_projective_points, min_support_combination
from prsdeep.prscode import (
    arc_extension_exists,
    arc_extension_witnesses,
    brute_force_error_distance,
    c_prime_vector,
    c_vector,
    covering_radius,
    encode,
    error_distance,
    error_distance_table,
    genpoly_to_syndrome,
    genpoly_word,
    is_genpoly,
    make_code,
    mds_dual_extension_exists,
    mds_padded_supercode_exists,
    mds_supercode_exists,
    minimum_distance,
    syndrome,
    syndrome_to_genpoly,
)


def sweep_covering_radius(code):
    """Max over all q^(q+1) words of the distance to the nearest codeword."""
    q, n = code.q, code.n
    words = code.codewords()
    best = 0
    for chunk_start in range(0, q ** n, 4096):
        idx = np.arange(chunk_start, min(q ** n, chunk_start + 4096))
        u = np.stack([(idx // q ** j) % q for j in range(n)], axis=1)
        d = (u[:, None, :] != words[None, :, :]).sum(axis=2).min(axis=1)
        best = max(best, int(d.max()))
    return best


def test_c_vectors():
    F5, F3 = make_field(5), make_field(3)
    assert c_vector(4, 0, F5) == (1, 0, 0, 0)
    assert c_vector(4, INF, F5) == (0, 0, 0, 1)
    assert c_vector(3, 2, F5) == (1, 2, 4)
    assert c_prime_vector(4, 0, F5) == (0, 1, 0, 0)
    assert c_prime_vector(4, 1, F5) == (0, 1, 2, 3)
    assert c_prime_vector(4, 2, F3) == (0, 1, 1, 0)


def test_make_code_examples():
    F5 = make_field(5)
    code = make_code(F5, 2)
    assert code.G.shape == (2, 6) and code.H.shape == (4, 6)
    assert (code.G @ code.H.T).is_zero()
    full = make_code(make_field(2), 3)
    assert full.G.shape == (3, 3) and full.H is None
    with pytest.raises(ValueError):
        make_code(F5, 7)


def test_encode_examples():
    F5 = make_field(5)
    code = make_code(F5, 2)
    assert encode(code, []) == (0,) * 6
    assert encode(code, [1, 1]) == (1, 2, 3, 4, 0, 1)
    assert encode(code, Poly(F5, [0, 1]))[-1] == 1
    with pytest.raises(ValueError):
        encode(code, [0, 0, 1])


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_encode_matches_generator(q):
    F = field_of_order(q)
    for k in range(1, q + 2):
        code = make_code(F, k)
        rng = random.Random(q + k)
        for _ in range(5):
            msg = [rng.randrange(q) for _ in range(k)]
            assert encode(code, msg) == code.G.T.apply(msg)
            if code.H is not None:
                assert not any(syndrome(code, encode(code, msg)))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_minimum_distance_singleton(q):
    F = field_of_order(q)
    for k in range(1, q + 2):
        if q ** k > 10 ** 5:
            continue
        assert minimum_distance(make_code(F, k)) == q + 2 - k


def test_syndrome_family_a_example():
    F5 = make_field(5)
    code = make_code(F5, 2)
    for a in range(5):
        u = tuple(F5.pow(x, 2) for x in range(5)) + (a,)
        s = syndrome(code, u)
        assert genpoly_to_syndrome(code, syndrome_to_genpoly(code, s)) == (0, 0, 1, F5.neg(a))


def test_genpoly_roundtrip_exhaustive():
    F5 = make_field(5)
    code = make_code(F5, 2)
    pts = enumerate_projective_points(F5, 3)
    assert len(pts) == 156
    for s in pts:
        g = syndrome_to_genpoly(code, s)
        assert is_genpoly(code, g)
        assert genpoly_to_syndrome(code, g) == s
        # the word of g has syndrome proportional to s
        word = genpoly_word(code, g)
        w = syndrome(code, word)
        assert all(F5.mul(w[i], s[j]) == F5.mul(w[j], s[i]) for i in range(4) for j in range(4))


def test_genpoly_examples():
    F7 = make_field(7)
    code = make_code(F7, 3)
    assert genpoly_to_syndrome(code, Poly.monomial(F7, 3)) == (0, 0, 0, 1, 0)
    g = Poly(F7, [0, 0, F7.neg(2), 1])
    assert genpoly_to_syndrome(code, g) == (0, 0, 0, 1, 5)
    with pytest.raises(ValueError):
        genpoly_to_syndrome(code, Poly(F7, [1, 0, 0, 1]))


def test_error_distance_examples():
    F5 = make_field(5)
    code = make_code(F5, 2)
    assert error_distance(code, encode(code, [2, 3])) == 0
    assert brute_force_error_distance(code, (0,) * 6) == 0
    assert brute_force_error_distance(code, (0, 0, 0, 0, 0, 1)) == 1


@pytest.mark.parametrize("q", [4, 5, 7, 8])
def test_degree_k_word_distance(q):
    # q - k needs k distinct elements summing to zero; in characteristic 2
    # there are none for k = 2 (x + y = 0 forces x = y) or, by complement, k = q-2
    F = field_of_order(q)
    for k in range(2, q - 1):
        code = make_code(F, k, check=False)
        u = tuple(F.pow(x, k) for x in range(q)) + (0,)
        expected = q - k + 1 if q % 2 == 0 and k in (2, q - 2) else q - k
        assert error_distance(code, u) == expected
        if q ** k <= 10 ** 5:
            assert brute_force_error_distance(code, u) == expected


@pytest.mark.parametrize("q,k", [(4, 2), (5, 2), (5, 3), (7, 4), (7, 3), (8, 5)])
def test_error_distance_matches_brute_force(q, k):
    F = field_of_order(q)
    code = make_code(F, k)
    rng = random.Random(q * 100 + k)
    for _ in range(40):
        u = tuple(rng.randrange(q) for _ in range(q + 1))
        assert error_distance(code, u) == brute_force_error_distance(code, u)


@pytest.mark.parametrize("q,k", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)])
def test_covering_radius_matches_word_sweep(q, k):
    code = make_code(field_of_order(q), k)
    expected = sweep_covering_radius(code)
    assert covering_radius(code, method="enumerate") == expected
    assert covering_radius(code) == expected


@pytest.mark.parametrize("q,k", [(4, 2), (5, 2), (5, 3), (7, 5)])
def test_error_distance_table_matches_min_support(q, k):
    code = make_code(field_of_order(q), k)
    table = error_distance_table(code)
    for s, d in table.items():
        assert d == min_support_combination(s, code.H, code.redundancy)


@pytest.mark.parametrize("q,k,rho", [(7, 6, 1), (4, 2, 3), (5, 2, 3), (7, 4, 3), (8, 6, 3), (7, 5, 2)])
def test_covering_radius_examples(q, k, rho):
    assert covering_radius(make_code(field_of_order(q), k), method="enumerate") == rho


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_repetition_code_radius(q):
    # every word of length q+1 repeats a symbol, so it is within q-1 of a constant word
    code = make_code(field_of_order(q), 1)
    assert covering_radius(code, method="enumerate") == q - 1
    assert covering_radius(code) == q - 1


def test_codeword_bound():
    code = make_code(make_field(13), 7, check=False)
    with pytest.raises(BoundExceededError):
        code.codewords()


def test_arc_examples():
    F4 = make_field(2, 2)
    assert arc_extension_witnesses(F4, 3) == [(0, 1, 0)]
    assert not arc_extension_exists(make_field(5), 3)
    assert not arc_extension_exists(make_field(5), 4)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_odd_conic_is_complete(q):
    assert not arc_extension_exists(field_of_order(q), 3)


def rs_generator(F, k):
    return Matrix(F, [[F.pow(a, i) if (a or i) else 1 for a in range(F.q)] for i in range(k)])


def test_supercode_criteria_agree():
    F5 = make_field(5)
    for k in (2, 3):
        G = make_code(F5, k).G
        a2 = mds_supercode_exists(G)
        a3 = mds_padded_supercode_exists(G)
        a4 = mds_dual_extension_exists(G)
        assert a2 == a3 == a4
    assert not mds_supercode_exists(make_code(F5, 2).G)


@pytest.mark.parametrize("q,k", [(4, 2), (5, 2), (5, 3), (7, 3)])
def test_rs_supercode_exists(q, k):
    G = rs_generator(field_of_order(q), k)
    assert mds_supercode_exists(G)
    assert mds_padded_supercode_exists(G)
    assert mds_dual_extension_exists(G)


def test_supercode_search_matches_brute_force():
    # over F_3 compare the reduced search against every word u
    F3 = make_field(3)
    G = rs_generator(F3, 1)
    from prsdeep.linalg import all_minors_nonzero
    brute = any(all_minors_nonzero(G.vstack(list(u)), 2) for u in product(range(3), repeat=3) if any(u))
    assert mds_supercode_exists(G) == brute
