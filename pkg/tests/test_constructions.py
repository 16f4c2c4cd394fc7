from fractions import Fraction

import pytest

from subspace_forge.gf import field_from_order, make_field
from subspace_forge.matgf import MatrixGF, mat_vec
from subspace_forge.subspace import Subspace, enumerate_subspaces
from subspace_forge.family import Family, check_partial_spread, compute_L_aad, compute_L_as
from subspace_forge.constructions import (
    max_family_size_bound,
    max_family_size_bound_no_spread,
    bounds_table,
    build_code_based_family,
    build_random_family,
    build_rs_family,
    count_avoiding_subspaces,
    twist_codeword,
    growth_diagnostic,
    power_sum,
    make_rs_code,
    random_family_exponent,
    random_sample_size,
    rs_codewords,
    rs_guaranteed_L,
    vandermonde_matrix,
)


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def test_max_family_size_bound_values():
    assert max_family_size_bound(3, 1, 1, 2) == 4
    assert max_family_size_bound(3, 1, 1, 5) == 7
    assert max_family_size_bound(3, 1, 0, 5) == 1
    # fractional quotient is floored exactly: 1 + 31*1330/120 = 344.58...
    assert max_family_size_bound(5, 2, 31, 11) == 344


def test_max_family_size_bound_no_spread_values():
    assert max_family_size_bound_no_spread(3, 1, 1, 2) == 5
    assert max_family_size_bound_no_spread(3, 1, 1, 5) == 8
    for n, k, L, q in [(3, 1, 1, 2), (5, 2, 4, 3), (5, 1, 7, 5), (7, 3, 2, 4)]:
        assert max_family_size_bound_no_spread(n, k, L, q) >= max_family_size_bound(n, k, L, q)


def test_bounds_reject_bad_parameters():
    with pytest.raises(ValueError):
        max_family_size_bound(4, 2, 1, 3)  # 2k = n
    with pytest.raises(ValueError):
        max_family_size_bound(3, 1, -1, 3)


def test_rs_guaranteed_L():
    assert rs_guaranteed_L(3, 1) == 2
    assert rs_guaranteed_L(5, 1) == 4
    assert rs_guaranteed_L(5, 2) == 1 + 2 * 3 * 5 == 31
    with pytest.raises(ValueError):
        rs_guaranteed_L(6, 3)


def test_random_family_exponent_and_sample_size():
    # (5,1,7,5): 3 - 8/8 = 2, so 25 samples
    assert random_family_exponent(5, 1, 7) == Fraction(2)
    assert random_sample_size(5, 1, 7, 5) == 25
    # fractional exponent floors through an exact integer root
    assert random_family_exponent(5, 1, 2) == Fraction(1, 3)
    assert random_sample_size(5, 1, 2, 5) == 1  # floor(5^(1/3))
    assert random_sample_size(5, 1, 2, 27) == 3  # 27^(1/3)
    # negative exponent: no sample
    assert random_sample_size(3, 1, 1, 2) == 0


def test_count_avoiding_subspaces_vs_exhaustive(f2):
    # lines avoiding a fixed line in GF(2)^4
    fixed = Subspace.from_generators(f2, 4, [(1, 0, 0, 0)])
    observed = sum(
        1 for S in enumerate_subspaces(f2, 4, 1) if S.trivially_intersects(fixed)
    )
    assert observed == count_avoiding_subspaces(4, 1, 1, 2) == 14
    # lines avoiding a fixed plane
    plane = Subspace.from_generators(f2, 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    observed = sum(
        1 for S in enumerate_subspaces(f2, 4, 1) if S.trivially_intersects(plane)
    )
    assert observed == count_avoiding_subspaces(4, 1, 2, 2) == 12
    # planes avoiding a fixed plane
    observed = sum(
        1 for S in enumerate_subspaces(f2, 4, 2) if S.trivially_intersects(plane)
    )
    assert observed == count_avoiding_subspaces(4, 2, 2, 2) == 16


def test_bounds_table_json():
    obj = bounds_table(3, 1, 1, 2).to_json()
    assert obj["size_bound"] == 4
    assert obj["size_bound_no_spread"] == 5
    assert obj["rs_guaranteed_L"] == 2
    assert obj["random_exponent"] == {"num": -1, "den": 1}
    obj2 = bounds_table(7, 3, 5, 4).to_json()
    assert obj2["rs_guaranteed_L"] is None


def test_growth_diagnostic(f5):
    fam = build_rs_family(3, 1, f5)
    assert growth_diagnostic(fam) == Fraction(1)  # q lines at q = 5
    single = Family(f5, 3, 1, (Subspace.from_generators(f5, 3, [(1, 0, 0)]),))
    assert growth_diagnostic(single) == Fraction(0)
    fam2 = build_rs_family(4, 1, f5)  # 25 members: exactly n - 2k = 2
    assert growth_diagnostic(fam2) == Fraction(2)


# ---------------------------------------------------------------------------
# RS code machinery
# ---------------------------------------------------------------------------


def test_make_rs_code_k1_empty_parity(f5):
    spec = make_rs_code(f5, 3, 1)
    assert spec.parity_check.rows == 0
    assert spec.length == 1 and spec.dimension == 1
    assert [w for w in rs_codewords(spec)] == [(c,) for c in range(5)]


def test_make_rs_code_k2_single_ones_row():
    f11 = field_from_order(11)
    spec = make_rs_code(f11, 5, 2)
    assert spec.parity_check.row_list() == [(1, 1)]
    words = rs_codewords(spec)
    assert len(words) == 11
    # codewords are (a, -a)
    assert all(f11.add(a, b) == 0 for a, b in words)
    # generator-message order is lexicographic: first message 0 gives 0
    assert words[0] == (0, 0)


def test_make_rs_code_parity_rows_are_gamma_powers():
    f23 = field_from_order(23)
    spec = make_rs_code(f23, 7, 3)
    g = f23.gamma
    assert spec.parity_check.row_list() == [
        (1, 1, 1),
        (1, g, f23.mul(g, g)),
    ]


def test_rs_codewords_satisfy_parity():
    f13 = field_from_order(13)
    spec = make_rs_code(f13, 6, 2)
    words = rs_codewords(spec)
    assert len(words) == 13**2
    for w in words[:40]:
        assert mat_vec(spec.parity_check, w) == (0,)


def test_rs_code_min_weight_is_mds():
    # minimum Hamming weight equals the designed distance k
    cases = [(3, 1, 5), (5, 2, 11), (6, 2, 13), (7, 3, 23)]
    for n, k, q in cases:
        spec = make_rs_code(field_from_order(q), n, k)
        words = rs_codewords(spec)
        assert len(words) == q ** (n - 2 * k) <= 10**5
        nonzero_weights = {sum(1 for x in w if x) for w in words if any(w)}
        assert min(nonzero_weights) == k


def test_make_rs_code_rejects_small_q():
    with pytest.raises(ValueError):
        make_rs_code(make_field(2), 3, 1)  # q=2 < nk=3
    with pytest.raises(ValueError):
        make_rs_code(make_field(5), 5, 2)  # q=5 < 10


# ---------------------------------------------------------------------------
# twist_codeword / power_sum
# ---------------------------------------------------------------------------


def test_twist_codeword_j1_identity():
    f11 = field_from_order(11)
    spec = make_rs_code(f11, 5, 2)
    assert twist_codeword(spec, 1, (3, 7)) == (3, 7)


def test_twist_codeword_j2_powers():
    f11 = field_from_order(11)
    spec = make_rs_code(f11, 5, 2)
    g = f11.gamma
    assert twist_codeword(spec, 2, (1, 1)) == (g, f11.mul(g, g))


def test_twist_codeword_zero_and_range():
    f11 = field_from_order(11)
    spec = make_rs_code(f11, 5, 2)
    assert twist_codeword(spec, 2, (0, 0)) == (0, 0)
    with pytest.raises(ValueError):
        twist_codeword(spec, 0, (1, 1))
    with pytest.raises(ValueError):
        twist_codeword(spec, 3, (1, 1))


def test_power_sum_k1_square(f5):
    spec = make_rs_code(f5, 3, 1)
    for c in range(5):
        assert power_sum(spec, 1, (c,)) == pow(c, 2, 5)


def test_power_sum_zero():
    f11 = field_from_order(11)
    spec = make_rs_code(f11, 5, 2)
    assert power_sum(spec, 1, (0, 0)) == 0
    assert power_sum(spec, 2, (0, 0)) == 0


def test_power_sum_k2_exponents():
    # exponents for j=2, n=5, k=2 are 4 and 5
    f11 = field_from_order(11)
    spec = make_rs_code(f11, 5, 2)
    for a in range(11):
        for b in range(11):
            assert power_sum(spec, 2, (a, b)) == (pow(a, 4, 11) + pow(b, 5, 11)) % 11
            assert power_sum(spec, 1, (a, b)) == (pow(a, 2, 11) + pow(b, 3, 11)) % 11
    with pytest.raises(ValueError):
        power_sum(spec, 3, (1, 1))


# ---------------------------------------------------------------------------
# RS family builder
# ---------------------------------------------------------------------------


def test_build_rs_family_hand_expansion(f5):
    # k=1, n=3: members are the lines through (1, c, c^2)
    fam = build_rs_family(3, 1, f5)
    expected = {(1, c, pow(c, 2, 5)) for c in range(5)}
    assert {S.basis.row(0) for S in fam.members} == expected


def test_build_rs_family_spread_at_smallest_q():
    # smallest admissible prime power q >= nk for k = 1, 2, 3
    for n, k, q in [(3, 1, 3), (5, 2, 11), (7, 3, 23)]:
        fam = build_rs_family(n, k, field_from_order(q))
        assert len(fam) == q ** (n - 2 * k)
        assert check_partial_spread(fam)[0]


def test_build_rs_family_guarantee_k1(f5, f7):
    for n, field in [(3, f5), (3, f7), (4, f5)]:
        fam = build_rs_family(n, 1, field)
        L, _ = compute_L_aad(fam)
        assert L <= rs_guaranteed_L(n, 1)


def test_build_rs_family_rejects_small_q():
    with pytest.raises(ValueError):
        build_rs_family(3, 1, make_field(2))
    with pytest.raises(ValueError):
        build_rs_family(4, 2, make_field(11))  # 2k >= n


def test_build_rs_family_deterministic(f5):
    a = build_rs_family(3, 1, f5)
    b = build_rs_family(3, 1, f5)
    assert a.to_json() == b.to_json()


# ---------------------------------------------------------------------------
# code-column builder
# ---------------------------------------------------------------------------


def test_code_based_vandermonde_families(f5, f7):
    for field in (f5, f7):
        H = vandermonde_matrix(field, 3)
        fam = build_code_based_family(H, 1)
        assert len(fam) == field.q
        assert check_partial_spread(fam)[0]
        L, _ = compute_L_aad(fam)
        assert L <= 1  # distance-4 parity check gives AAD parameter 1


def test_code_based_repeated_column_fails(f5):
    H = MatrixGF.from_rows(f5, [[1, 1, 0], [0, 0, 1], [0, 0, 0]])
    # first two columns span the same line: duplicate members
    with pytest.raises(ValueError):
        build_code_based_family(H, 1)


def test_code_based_dependent_group_fails(f5):
    H = MatrixGF.from_rows(f5, [[1, 0], [0, 0], [0, 0]])
    with pytest.raises(ValueError):  # second column is zero
        build_code_based_family(H, 1)


def test_code_based_k2_grouping(f2):
    # 6 columns of an identity-like matrix in GF(2)^6: three disjoint planes
    H = MatrixGF.identity(f2, 6)
    fam = build_code_based_family(H, 2)
    assert len(fam) == 3
    assert fam.k == 2
    assert check_partial_spread(fam)[0]


# ---------------------------------------------------------------------------
# random builder
# ---------------------------------------------------------------------------


def test_random_family_acceptance_point(f5):
    res = build_random_family(5, 1, 7, f5, seed=1)
    assert res.sampled == 25
    fam = res.family
    assert check_partial_spread(fam)[0]
    L_as, _ = compute_L_as(fam)
    assert L_as <= 7
    assert res.achieved


def test_random_family_deterministic(f5):
    a = build_random_family(5, 1, 7, f5, seed=9)
    b = build_random_family(5, 1, 7, f5, seed=9)
    assert a.family.to_json() == b.family.to_json()
    c = build_random_family(5, 1, 7, f5, seed=10)
    assert c.family.to_json() != a.family.to_json()


def test_random_family_rejects_m_below_one(f2):
    with pytest.raises(ValueError):
        build_random_family(3, 1, 1, f2, seed=0)  # exponent -1


def test_random_family_prunes_to_target(f3):
    # (5,1,L=8,q=3): exponent 3 - 8/9, M = floor(3^(19/9)) = 10; small L
    # values force actual pruning on some seeds
    res = build_random_family(5, 1, 8, f3, seed=3)
    fam = res.family
    assert check_partial_spread(fam)[0]
    L_as, _ = compute_L_as(fam)
    assert L_as <= 8
    assert res.achieved
    assert len(fam) + res.spread_deletions + res.as_deletions == res.sampled


def test_random_family_best_effort_flag(f3):
    # max_rounds=0 forbids AS pruning; the flag reports whether the
    # sampled spread already met the target
    res = build_random_family(5, 1, 8, f3, seed=3, max_rounds=0)
    L_as, _ = compute_L_as(res.family)
    assert res.achieved == (L_as <= 8)
