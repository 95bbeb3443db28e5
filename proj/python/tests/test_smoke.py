from fractions import Fraction

import pytest

import supnorm

EXAMPLE = [[3, -4, 0], [4, 3, 0], [0, 0, 5]]
I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_determinantal_divisors():
    assert supnorm.determinantal_divisors(EXAMPLE) == [1, 5, 125]
    snf = supnorm.smith_normal_form(EXAMPLE)
    assert [snf["D"][i][i] for i in range(3)] == [1, 5, 25]


def test_count_matches_cli_schema():
    s = supnorm.count(I3, 5, 5, matrices=True)
    assert s["schema"] == supnorm.SCHEMA
    assert s["count"] == 288 == len(s["matrices"])
    assert s["M"] == "inf"
    assert supnorm.count(I3, 2, 1)["stats"]["short_circuit"]


def test_rational_entries():
    half = [[1, Fraction(1, 2), 0], ["1/2", 1, 0], [0, 0, 1]]
    assert supnorm.count(half, 5, 5)["count"] == 144


def test_qgood_and_residues():
    q = [[2, 1], [1, 3]]
    assert supnorm.residue_system(q)["modulus"] == "60"
    assert supnorm.good_primes(q, 2, 60) == [11, 13, 17, 19, 31, 37, 53, 59]
    assert supnorm.is_q_good(11, q)
    assert not supnorm.is_q_good(7, q)
    assert supnorm.good_primes([[1, 0], [0, 1]], 2, 30) == [3, 7, 11, 19, 23]


def test_exchange_and_chain():
    r = supnorm.exchange([[1, 0], [0, 1]], [(1, 1, 1)])
    assert r["counts"] == [8]
    assert r["dim_H"] == 1
    assert r["verified"] == 8
    cert = supnorm.chain([[1, 0], [0, 1]], L=3, nus=[1, 2], prime_cap=20)
    assert cert["sound"]
    assert cert["outer"]["stable"] < 3


def test_delta_and_spectral():
    for n in range(2, 6):
        d = supnorm.delta(n)
        assert d["delta"] > 0
        assert d["terms"]["equal"]
    assert supnorm.laplace_eigenvalue([0, 0]) == Fraction(1, 4)
    assert supnorm.convexity_exponent(2) == Fraction(1, 4)


def test_errors():
    with pytest.raises(supnorm.DomainError):
        supnorm.laplace_eigenvalue([1, 0])
    with pytest.raises(ValueError):
        supnorm.count([[1, 2], [3, 4]], 1, 1)
    with pytest.raises(supnorm.ResourceError):
        supnorm.count(I3, 5, 5, budget=10)


def test_verify_module():
    results = supnorm.verify("bound")
    assert [r["id"] for r in results] == [12, 13]
    assert all(r["passed"] for r in results)
