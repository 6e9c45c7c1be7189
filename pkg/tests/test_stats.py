import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

from slcg.stats import (
    ResultTable,
    SchemaError,
    friedman,
    holm_posthoc,
    row_ranks,
    wilcoxon_one_sample,
)

TEXTBOOK = [1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06, 1.30]
ALL_D = {
    "S-LCG": 1.99, "GA": 2.54, "BACO": 3.77, "BSA": 4.80, "BPSO": 5.22,
    "T-BPSO": 6.20, "BTS": 6.24, "BDE": 6.31, "BGWO": 7.93,
}


def test_all_equal_to_reference():
    r = wilcoxon_one_sample([2.0] * 6, 2.0)
    assert r.verdict == "=" and r.p_value == 1.0


def test_textbook_vector_exact():
    # one negative difference (0.50 - 1) of rank 2: P = 2 * 3/512
    r = wilcoxon_one_sample(TEXTBOOK, 1.0)
    assert r.method == "exact" and r.w_minus == 2.0
    assert r.p_value == pytest.approx(6 / 512, abs=1e-12)
    assert r.verdict == "+"


def test_all_positive_differences_exact():
    r = wilcoxon_one_sample([abs(v - 1.0) + 1.0 for v in TEXTBOOK], 1.0)
    assert r.p_value == pytest.approx(2 / 512, abs=1e-12)
    assert r.p_value == pytest.approx(0.0039, abs=1e-4)


def test_near_reference_is_not_significant():
    s = 2.66e-7 + np.array([0.08, -0.05, 0.03, 0.11, -0.02, 0.06, -0.09, 0.04, 0.01, -0.03]) * 1e-7
    assert wilcoxon_one_sample(s, 2.66e-7).verdict == "="


def test_negation_flips_verdict():
    a = wilcoxon_one_sample(TEXTBOOK, 1.0)
    b = wilcoxon_one_sample([-v for v in TEXTBOOK], -1.0)
    assert (a.verdict, b.verdict) == ("+", "-")
    assert a.p_value == b.p_value


@given(st.lists(st.integers(-500, 500).filter(lambda v: v != 0), min_size=5, max_size=20, unique_by=abs))
@settings(max_examples=100, deadline=None)
def test_exact_matches_scipy_without_ties(diffs):
    r = wilcoxon_one_sample(np.array(diffs) / 7.0, 0.0)
    ref = sps.wilcoxon(np.array(diffs) / 7.0, method="exact")
    assert r.p_value == pytest.approx(ref.pvalue, rel=1e-9)


def test_normal_approximation_matches_scipy():
    rng = np.random.default_rng(3)
    x = rng.normal(0.4, 1.0, 40)
    r = wilcoxon_one_sample(x, 0.0)
    ref = sps.wilcoxon(x, method="approx", correction=True)
    assert r.method == "normal"
    assert r.p_value == pytest.approx(ref.pvalue, rel=1e-9)


def test_empty_samples_rejected():
    with pytest.raises(ValueError):
        wilcoxon_one_sample([], 0.0)


# -- tables, Friedman -------------------------------------------------------


CSV = """function,dim,A,B,C
F1,2,0.1,0.5,0.3
F2,2,1.0,2.0,3.0
F3,2,5.0,4.0,6.0
F4,2,0.0,0.0,1.0
"""


def test_read_table():
    t = ResultTable.from_csv(io.StringIO(CSV))
    assert t.N == 4 and t.k == 3
    assert t.rows[0] == ("F1", 2)
    np.testing.assert_array_equal(t.column("B"), [0.5, 2.0, 4.0, 0.0])


@pytest.mark.parametrize(
    "text,line",
    [
        ("fn,dim,A,B\nF1,2,1,2\n", 1),
        ("function,dim,A,B,C\nF1,2,1,2\n", 2),
        ("function,dim,A,B,C\nF1,2,1,2,3\nF2,2,1,x,3\n", 3),
        ("function,dim,A,B,C\nF1,2,1,nan,3\n", 2),
        ("", 1),
    ],
)
def test_schema_errors_report_line(text, line):
    with pytest.raises(SchemaError) as e:
        ResultTable.from_csv(io.StringIO(text))
    assert e.value.line == line


def test_friedman_ranks_and_statistic():
    t = ResultTable.from_csv(io.StringIO(CSV))
    r = friedman(t)
    assert r.mean_ranks == pytest.approx({"A": (1 + 1 + 2 + 1.5) / 4, "B": (3 + 2 + 1 + 1.5) / 4, "C": (2 + 3 + 3 + 3) / 4})
    assert sum(r.mean_ranks.values()) == pytest.approx(6.0)


def test_friedman_equals_scipy_without_ties():
    rng = np.random.default_rng(1)
    vals = rng.random((30, 5))
    t = ResultTable(tuple((f"F{i}", 2) for i in range(30)), tuple("ABCDE"), vals)
    ours = friedman(t)
    ref = sps.friedmanchisquare(*vals.T)
    assert ours.statistic == pytest.approx(ref.statistic, rel=1e-12)
    assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-9)


def test_always_smallest_column_gets_rank_one():
    vals = np.array([[0.0, 1.0, 2.0], [-5.0, 3.0, 1.0], [1.0, 2.0, 9.0]])
    t = ResultTable((("a", 2), ("b", 2), ("c", 2)), ("X", "Y", "Z"), vals)
    assert friedman(t).mean_ranks["X"] == 1.0


def test_identical_columns_tie():
    vals = np.array([[1.0, 1.0, 0.5], [2.0, 2.0, 3.0], [0.1, 0.1, 0.2]])
    r = row_ranks(vals).mean(axis=0)
    assert r[0] == r[1]


def test_friedman_needs_three_algorithms():
    t = ResultTable((("a", 2), ("b", 2)), ("X", "Y"), np.array([[1.0, 2.0], [2.0, 1.0]]))
    with pytest.raises(ValueError):
        friedman(t)


# -- Holm ----------------------------------------------------------------------


def test_holm_decisions_on_published_ranks():
    rows = {r.algorithm: r for r in holm_posthoc(ALL_D, k=9, N=138, control="S-LCG")}
    assert not rows["GA"].significant
    assert all(rows[a].significant for a in ALL_D if a not in ("GA", "S-LCG"))
    assert rows["S-LCG"].z == 0.0 and rows["S-LCG"].decision == "Not significant"


def test_holm_z_formula():
    rows = {r.algorithm: r for r in holm_posthoc(ALL_D, k=9, N=138, control="S-LCG")}
    assert rows["BGWO"].z == pytest.approx((7.93 - 1.99) / math.sqrt(90 / 828))
    assert rows["BGWO"].z == pytest.approx(18.02, abs=0.01)


@given(st.dictionaries(st.sampled_from("ABCDEFGH"), st.floats(1.0, 8.0), min_size=3, max_size=8), st.integers(5, 300))
@settings(max_examples=100)
def test_holm_adjusted_p_monotone(ranks, N):
    control = min(ranks, key=ranks.get)
    rows = holm_posthoc(ranks, k=len(ranks), N=N, control=control)[:-1]
    adj = [r.p_holm for r in rows]
    assert adj == sorted(adj)
    assert all(r.p_holm >= r.p_raw for r in rows)
    sig = [r.significant for r in rows]
    # step-down: once a hypothesis is retained, every later one is too
    assert sig == sorted(sig, reverse=True)


def test_holm_unknown_control():
    with pytest.raises(KeyError):
        holm_posthoc(ALL_D, 9, 138, control="PSO")
