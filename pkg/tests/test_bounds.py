import math
import random
from math import comb

import numpy as np
import pytest

from maximals.bounds import (
    BoundReport,
    ShearerInstance,
    binomial_tail_check,
    conjecture52_sweep,
    evaluate_bound,
    greedy_antichain_completion,
    h2,
    h_family_mis_count,
    hypercube_parity_matching,
    lattice_middle_matching,
    log2_big,
    matching_lower_bound,
    shearer_check,
)
from maximals.enumeration import count_mis
from maximals.errors import InvalidParameterError, PreconditionViolation
from maximals.graphs import (
    comparability_graph,
    h_n_graph,
    hypercube,
    is_induced_matching,
)
from maximals.posets import BooleanLattice


# ---------------------------------------------------------------------------
# Entropy basics


def test_h2_values():
    assert h2(0.5) == 1.0
    assert h2(0.0) == 0.0
    assert h2(1.0) == 0.0
    assert h2(0.3) == pytest.approx(0.8813, abs=1e-4)
    assert h2(0.25) == h2(0.75)


def test_h2_domain():
    with pytest.raises(InvalidParameterError):
        h2(-0.1)
    with pytest.raises(InvalidParameterError):
        h2(1.1)


def test_log2_big():
    assert log2_big(1) == 0.0
    assert log2_big(1 << 1000) == 1000.0
    assert log2_big(3**500) == pytest.approx(500 * math.log2(3), rel=1e-12)
    with pytest.raises(InvalidParameterError):
        log2_big(0)


def test_binomial_tail_examples():
    exact, bound = binomial_tail_check(10, 3)
    assert exact == 56
    assert bound == pytest.approx(2 ** (h2(0.3) * 10))
    assert binomial_tail_check(10, 0) == (0, 1.0)
    exact, bound = binomial_tail_check(4, 2)
    assert exact == 5 and bound == pytest.approx(16.0)


def test_binomial_tail_precondition():
    with pytest.raises(PreconditionViolation):
        binomial_tail_check(10, 6)


def test_binomial_tail_sweep():
    for n in range(41):
        for t in range(n // 2 + 1):
            exact, bound = binomial_tail_check(n, t)
            assert exact <= bound + 1e-9


# ---------------------------------------------------------------------------
# Entropy subadditivity


def uniform_bits(k):
    return np.full((2,) * k, 1.0 / 2**k)


def test_shearer_uniform_equality():
    inst = ShearerInstance((2, 2, 2), uniform_bits(3),
                           ((0, 1), (0, 2), (1, 2)), 2)
    lhs, rhs, slack = shearer_check(inst)
    assert lhs == pytest.approx(3.0)
    assert rhs == pytest.approx(3.0)
    assert abs(slack) <= 1e-9


def test_shearer_point_mass():
    pmf = np.zeros((2, 2, 2))
    pmf[1, 0, 1] = 1.0
    inst = ShearerInstance((2, 2, 2), pmf, ((0, 1), (0, 2), (1, 2)), 2)
    lhs, rhs, slack = shearer_check(inst)
    assert lhs == 0.0 and rhs == 0.0


def test_shearer_product_uniform_equality_m3():
    cover = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
    inst = ShearerInstance((2, 2, 2, 2), uniform_bits(4), cover, 3)
    lhs, rhs, slack = shearer_check(inst)
    assert lhs == pytest.approx(4.0)
    assert abs(slack) <= 1e-9


def test_shearer_random_pmfs(rng):
    cover = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
    for _ in range(100):
        pmf = np.array([rng.random() for _ in range(16)]).reshape((2,) * 4)
        pmf /= pmf.sum()
        _, _, slack = shearer_check(ShearerInstance((2,) * 4, pmf, cover, 3))
        assert slack >= -1e-9


def test_shearer_validation():
    with pytest.raises(InvalidParameterError):
        ShearerInstance((2, 2), np.array([[0.5, 0.6], [0.0, 0.0]]),
                        ((0, 1),), 1)
    with pytest.raises(InvalidParameterError):
        ShearerInstance((2, 2), np.full((2, 2), 0.25), ((0,),), 1)  # 1 uncovered
    with pytest.raises(InvalidParameterError):
        ShearerInstance((2, 2), np.full((2, 2), 0.25), ((0, 1),), 2)  # m too big


# ---------------------------------------------------------------------------
# Named bounds


def test_bound_values():
    assert evaluate_bound("lbs-ma", n=4).log2_value == 3.0
    assert evaluate_bound("lbs-mis-bilayer", n=5, k=2).log2_value == comb(4, 2)
    assert evaluate_bound("lbs-mis-cube", n=6).log2_value == 16.0
    assert evaluate_bound("kleitman", n=4).log2_value == 6.0
    assert evaluate_bound("dfr-cube", n=4).log2_value == pytest.approx(0.78 * 8)
    assert evaluate_bound("dfr-bilayer", n=4, k=1).log2_value == pytest.approx(
        1.3563 * 3
    )
    assert evaluate_bound("thm12a-tf", n=8).log2_value == 2.0
    assert evaluate_bound("thm12a-general", n=6).log2_value == pytest.approx(
        math.log2(3)
    )
    assert evaluate_bound("prop21a", a=3, b=7).log2_value == 3.0
    assert evaluate_bound("moon-moser", n=3).log2_value == pytest.approx(math.log2(3))
    assert evaluate_bound("hujter-tuza", n=9).log2_value == 4.5
    assert evaluate_bound("zhao-total", n=8, d=3).log2_value == pytest.approx(
        (8 / 6) * math.log2(15)
    )


def test_bound_conj52_equality_case():
    rep = evaluate_bound("conj52", n=6, d=5)
    assert rep.log2_value == pytest.approx(1 + math.log2(3))
    assert 2 ** rep.log2_value == pytest.approx(6.0)


def test_bound_thm12b_balanced_matches_tf():
    for n in (8, 12):
        assert (
            evaluate_bound("thm12b", n=n, r=5, s=5).log2_value
            == evaluate_bound("thm12a-tf", n=n).log2_value
        )


def test_bound_conj51():
    assert evaluate_bound("conj51a", n=3).log2_value == pytest.approx(
        math.log2(3) + comb(2, 1)
    )
    assert evaluate_bound("conj51a", n=4).log2_value == pytest.approx(
        1 + 2 + comb(3, 1)
    )
    assert evaluate_bound("conj51b", n=5).log2_value == pytest.approx(
        1 + math.log2(5) + 8
    )
    assert evaluate_bound("conj51c", n=5, k=1).log2_value == pytest.approx(
        math.log2(5) + 4
    )


def test_bound_exactness_tags():
    assert evaluate_bound("lbs-ma", n=4).exactness == "exact"
    assert evaluate_bound("kleitman", n=4).exactness == "main-term"
    assert evaluate_bound("thm12b", n=4, r=2, s=2).exactness == "main-term"
    assert evaluate_bound("conj52", n=6, d=5).exactness == "conjectured"


def test_bound_errors():
    with pytest.raises(InvalidParameterError):
        evaluate_bound("no-such-bound", n=4)
    with pytest.raises(InvalidParameterError):
        evaluate_bound("lbs-ma")
    with pytest.raises(InvalidParameterError):
        evaluate_bound("thm12b", n=4)


# ---------------------------------------------------------------------------
# Matching lower bound


def test_matching_lower_bound_examples():
    assert matching_lower_bound(BooleanLattice(3), 1) == (4, 4)
    assert matching_lower_bound(BooleanLattice(1), 1) == (2, 2)
    assert matching_lower_bound(BooleanLattice(5), 2) == (64, 64)


def test_matching_lower_bound_needs_odd():
    with pytest.raises(InvalidParameterError):
        matching_lower_bound(BooleanLattice(4), 1)


def test_greedy_completion_is_maximal_antichain():
    from maximals.graphs import is_maximal_independent

    L = BooleanLattice(4)
    G = comparability_graph(4)
    A = greedy_antichain_completion(L, [0b0011])
    assert is_maximal_independent(G, A)


def test_hypercube_parity_matching():
    for n in range(2, 7):
        M = hypercube_parity_matching(n)
        assert len(M) == 2 ** (n - 2)
        assert is_induced_matching(hypercube(n), M)


def test_lattice_middle_matching_any_parity():
    for n in range(1, 7):
        L = BooleanLattice(n)
        M = lattice_middle_matching(L, 1)
        assert len(M) == comb(n - 1, n // 2)
        assert is_induced_matching(comparability_graph(n), M)


# ---------------------------------------------------------------------------
# Equality families and sweep


def test_h_family_formula_matches_counts():
    for d, copies in ((5, 1), (5, 2), (8, 1)):
        expect = h_family_mis_count(d, copies)
        assert count_mis(h_n_graph(d, copies)).count == expect


def test_sweep_small():
    rep = conjecture52_sweep(3, n_max=10, samples=10, seed=7)
    assert len(rep.rows) == 11  # 10 random + hypercube(3)
    names = {row.name for row in rep.rows}
    assert "hypercube" in names
    assert not rep.violations
    assert 0 < rep.max_ratio <= 1.0
    cube_row = next(row for row in rep.rows if row.name == "hypercube")
    assert cube_row.count == 6
    assert cube_row.bound_log2 == pytest.approx(4 + (8 / 6) * math.log2(3))


def test_sweep_h_family_hits_equality():
    rep = conjecture52_sweep(5, n_max=5, samples=0, seed=0)
    h_row = next(row for row in rep.rows if row.name == "h-family")
    assert h_row.count == 6
    assert h_row.ratio == pytest.approx(1.0)
    assert not h_row.violation


def test_sweep_deterministic():
    a = conjecture52_sweep(3, n_max=12, samples=5, seed=3)
    b = conjecture52_sweep(3, n_max=12, samples=5, seed=3)
    assert [r.to_json_dict() for r in a.rows] == [r.to_json_dict() for r in b.rows]


def test_sweep_validation():
    with pytest.raises(InvalidParameterError):
        conjecture52_sweep(2, n_max=10, samples=1, seed=0)
    with pytest.raises(InvalidParameterError):
        conjecture52_sweep(7, n_max=7, samples=1, seed=0)
