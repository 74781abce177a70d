import io
import math

import numpy as np
import pytest

from lrcbench import linalg
from lrcbench.bounds import BoundQuery, KOptProvider, cm_bound, floor_bound, kopt_upper
from lrcbench.code import LinearCode, locality_of, min_distance
from lrcbench.constructions import build_simplex, sample_random_concat, sample_random_lrc
from lrcbench.errors import BudgetExceeded, ValidationError
from lrcbench.field import GF
from lrcbench.search import (SearchLimits, best_lrc_dimension, exact_kopt, exact_provider,
                             iter_linear_codes, kopt_table, max_code_size, oracle_distance,
                             oracle_locality, read_kopt_csv, write_kopt_csv)

# best binary linear dimensions k(n, d) for n <= 10, from standard code tables
LINEAR_BINARY = {
    7: [7, 6, 4, 3, 1, 1, 1], 8: [8, 7, 4, 4, 2, 1, 1, 1],
    9: [9, 8, 5, 4, 2, 2, 1, 1, 1], 10: [10, 9, 6, 5, 3, 2, 1, 1, 1, 1],
}
# A_2(n, d) for n <= 7
A2 = {4: [16, 8, 2, 2], 5: [32, 16, 4, 2, 2], 6: [64, 32, 8, 4, 2, 2],
      7: [128, 64, 16, 8, 2, 2, 2]}


def test_exact_kopt_examples():
    assert exact_kopt(7, 3, 2) == pytest.approx(4)
    assert exact_kopt(7, 3, 2, restriction="linear") == 4
    assert exact_kopt(4, 4, 2) == pytest.approx(1)
    for n in (3, 5):
        assert exact_kopt(n, 1, 3, restriction="linear") == n
    assert exact_kopt(5, 1, 2) == pytest.approx(5)
    assert exact_kopt(3, 5, 2) == 0
    with pytest.raises(ValidationError):
        exact_kopt(4, 2, 2, restriction="bogus")


@pytest.mark.parametrize("n", sorted(A2))
def test_unrestricted_sizes_match_tables(n):
    assert [max_code_size(n, d, 2) for d in range(1, n + 1)] == A2[n]


def test_ternary_unrestricted_small():
    assert max_code_size(4, 3, 3) == 9          # ternary Hamming [4, 2, 3]
    assert max_code_size(3, 2, 3) == 9


@pytest.mark.parametrize("n", sorted(LINEAR_BINARY))
def test_linear_dimensions_match_tables(n):
    assert [exact_kopt(n, d, 2, restriction="linear") for d in range(1, n)] == LINEAR_BINARY[n][:n - 1]


def test_search_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        max_code_size(8, 3, 2, SearchLimits(max_seconds=0.05))
    with pytest.raises(BudgetExceeded):
        list(iter_linear_codes(10, 5, 3, 2, SearchLimits(max_codewords=100)))


def test_iter_linear_codes_yields_valid_codes():
    F = GF(2)
    count = 0
    for G in iter_linear_codes(7, 4, 3, 2):
        code = LinearCode(F, G)
        assert min_distance(code) >= 3 and linalg.rank(F, G) == 4
        count += 1
    assert count >= 1


def test_best_lrc_examples():
    assert best_lrc_dimension(7, 4, 2, 2) == 3
    assert best_lrc_dimension(3, 2, 2, 1) == 1
    assert best_lrc_dimension(5, 1, 2, 2) >= 1


def test_best_lrc_never_exceeds_bound():
    for n in range(3, 9):
        for d in range(2, n + 1):
            exact = exact_provider(2, n, d, restriction="linear")
            for r in range(1, n):
                k = best_lrc_dimension(n, d, 2, r)
                assert k <= floor_bound(cm_bound(BoundQuery(n, d, 2, r), exact).bound)


def test_exact_values_below_analytic_providers():
    sing, plot = KOptProvider.singleton(), KOptProvider.plotkin()
    for n in range(1, 11):
        for d in range(1, n + 1):
            lin = exact_kopt(n, d, 2, restriction="linear")
            assert lin <= kopt_upper(sing, n, d, 2) + 1e-12
            assert lin <= kopt_upper(plot, n, d, 2) + 1e-12
            if n <= 7:
                unr = exact_kopt(n, d, 2)
                assert lin <= unr + 1e-12
                assert unr <= kopt_upper(sing, n, d, 2) + 1e-12
                assert unr <= kopt_upper(plot, n, d, 2) + 1e-12


# -- oracles ----------------------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 4])
def test_oracles_agree_on_simplex(m):
    code = build_simplex(m).code
    assert oracle_distance(code) == min_distance(code)
    assert oracle_locality(code) == locality_of(code)[0]


def test_oracles_on_repetition():
    rep = LinearCode(GF(2), [[1, 1, 1]])
    assert (oracle_distance(rep), oracle_locality(rep)) == (3, 1)
    assert oracle_locality(LinearCode(GF(2), [[1, 0, 0], [0, 1, 1]])) == math.inf


@pytest.mark.parametrize("seed", range(100))
def test_oracles_agree_on_random_codebooks(seed):
    q, r = (2, 2) if seed % 3 else (3, 1)
    n = (r + 1) * (2 + seed % 3)
    art = sample_random_lrc(q, r, n, 3 + seed % 10, seed)
    assert oracle_distance(art.code) == min_distance(art.code)
    assert oracle_locality(art.code) == locality_of(art.code)[0]


@pytest.mark.parametrize("seed", range(100))
def test_oracles_agree_on_random_concatenated(seed):
    art = sample_random_concat(2, 2, 12, 4, seed)
    code = art.code
    if linalg.rank(code.field, code.generator) < code.k:
        # a nonzero message hits the zero word; the ensemble counts it as weight 0
        assert min_distance(code) == 0
    else:
        assert oracle_distance(code) == min_distance(code)
    assert oracle_locality(code) == locality_of(code)[0]


# -- tables ------------------------------------------------------------------------------------------

def test_table_csv_round_trip():
    table = kopt_table(2, range(1, 8), [3, 4])
    buf = io.StringIO()
    write_kopt_csv(buf, table)
    text = buf.getvalue()
    assert text.splitlines()[0] == "q,n,d,kopt,restriction"
    provider = read_kopt_csv(io.StringIO(text))
    assert provider.variant == "exact-table" and provider.restriction == "unrestricted"
    for key, value in table.items():
        assert provider.table[key] == pytest.approx(value, abs=1e-11)
    assert cm_bound(BoundQuery(7, 4, 2, 2), provider).bound == 3


def test_exact_provider_defaults():
    assert exact_provider(2, 5, 3).restriction == "unrestricted"
    assert exact_provider(3, 4, 3).restriction == "linear"
    assert exact_provider(3, 4, 3).table[(3, 4, 3)] == 2
