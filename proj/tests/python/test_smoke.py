import pytest

import hypercount as hc


def test_field_basics():
    f4 = hc.Field(4)
    assert (f4.p, f4.k, f4.q) == (2, 2, 4)
    assert f4.modulus == [1, 1, 1]  # x^2 + x + 1
    # x * (x + 1) = 1 in F_4
    assert f4.mul(2, 3) == 1
    assert f4.elements()[:2] == [0, 1]
    f5 = hc.Field(5)
    assert f5.inv(2) == 3
    with pytest.raises(hc.NotAPrimePower):
        hc.Field(6)


def test_ws_classes():
    assert hc.ws_class(3) == [1, 1, 2, 1, 1]
    assert hc.ws_class_str(3) == "L^4 + L^3 + 2*L^2 + L + 1"
    assert hc.ws_class(4) == [1, 1, 2, -2, 4, 1, 1]
    assert hc.ws_T(3) == [2, -1, 4]
    y, y_prime = hc.ws_y(2)
    assert (y, y_prime) == ([1, 1], [1, 2])


def test_predicted_counts():
    assert hc.predicted_count(2) == 12128
    assert hc.predicted_count(3) == 2105235
    assert hc.predicted_count(5) == 1374196725
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23):
        assert hc.predicted_count(q) % (q * q) == 0


def test_counts_and_cone():
    rec = hc.stratified_count_xstrip(2, "baseline")
    assert rec["count"] == 12128
    assert rec["n_y"] == 1024 and rec["n_z"] == 1004
    assert hc.stratified_count_xstrip(2, "accelerated")["count"] == 12128
    ws = hc.brute_force_count("ws:3", 2)
    assert ws["count"] == 36
    assert hc.projective_count(36, 2) == 35
    assert hc.spanning_tree_count("ws:3") == 16
    assert hc.is_primitively_log_divergent("xstrip")


def test_budget_guard():
    with pytest.raises(hc.BudgetExceeded):
        hc.brute_force_count("xstrip", 5)


def test_reduced_fit_witness():
    qs = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]
    vals = [(q, hc.predicted_count(q)) for q in qs]
    report = hc.reduced_fit(vals)
    assert report["verdict"] == "non-polynomial-witness"
    # A single polynomial of the right shape is consistent.
    poly = [(q, q**13 + q**2) for q in qs]
    assert hc.reduced_fit(poly)["verdict"] == "consistent"
    with pytest.raises(hc.TooFewPoints):
        hc.reduced_fit(vals[:11])
