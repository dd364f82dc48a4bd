"""Product expansions, Weyl exponents, eta products, identity reports."""

from fractions import Fraction as F

import pytest

from weilq.borcherds import (ProductResult, borcherds_product, eta_product,
                             exponent_table, verify_eta_identity, weyl_vector)
from weilq.fracq import FracSeries
from weilq.vvforms import (VVExpansion, apply_aut, basis_m_half,
                           random_supported, theta_series)


class TestExponentTable:
    def test_level_one_all_doubled(self):
        t = exponent_table(theta_series(1, 900), 30)
        assert t == {n: F(2) for n in range(1, 31)}

    def test_level_pattern(self):
        # slot (n^2, n) counts m = +-n with m = n mod 2N: 1 + [N | n]
        t = exponent_table(theta_series(6, 400), 20)
        for n in range(1, 21):
            assert t[n] == 1 + (n % 6 == 0)

    def test_twisted_pattern(self):
        tw = apply_aut(theta_series(6, 400), 2)
        t = exponent_table(tw, 20)
        for n in range(1, 21):
            assert t[n] == (n % 2 == 0) + (n % 3 == 0)

    def test_additive(self):
        a = theta_series(6, 400)
        b = apply_aut(a, 2)
        ta, tb = exponent_table(a, 20), exponent_table(b, 20)
        tsum = exponent_table(a + b, 20)
        assert tsum == {n: ta[n] + tb[n] for n in range(1, 21)}

    def test_truncation_precondition(self):
        with pytest.raises(ValueError, match="insufficient"):
            exponent_table(theta_series(1, 99), 10)
        with pytest.raises(ValueError):
            exponent_table(theta_series(1, 100), 0)


class TestWeylVector:
    def test_theta(self):
        for N in (1, 2, 6, 12):
            assert weyl_vector(theta_series(N, 4 * N)) == F(1 + N, 24)

    def test_twisted_theta(self):
        tw = apply_aut(theta_series(6, 24), 2)
        assert weyl_vector(tw) == F(2 + 3, 24)

    def test_linear(self):
        basis = basis_m_half(6, 24)
        f = basis[0].scaled(3) + basis[1].scaled(F(-1, 2))
        assert weyl_vector(f, basis) == 3 * F(7, 24) + F(-1, 2) * F(5, 24)

    def test_rejects_nonholomorphic(self):
        f = random_supported(2, F(1, 2), 1, seed=2, trunc=8)
        assert f.nonholo
        with pytest.raises(ValueError, match="external input"):
            weyl_vector(f)


class TestBorcherdsProduct:
    def test_level_one_is_squared_euler(self):
        # oracle: (q^(1/24) prod (1 - q^n))^2 multiplied out directly
        prec = 60
        prod = FracSeries.one(prec)
        for n in range(1, prec + 1):
            prod = prod * FracSeries(1, {0: F(1), n: F(-1)}, prec)
        oracle = FracSeries.monomial(F(1, 12), 1, F(1, 12) + prec) * prod * prod
        res = borcherds_product(theta_series(1, prec * prec), F(1, 12), prec)
        bound = min(res.expansion.trunc, oracle.trunc)
        assert (res.expansion - oracle).truncate(bound).is_zero()
        head = [res.expansion.coefficient(F(1, 12) + j) for j in range(7)]
        assert head == [1, -2, -1, 2, 1, 2, -2]

    def test_weight_is_constant_slot(self):
        res = borcherds_product(theta_series(6, 2500), F(7, 24), 50)
        assert res.weight == 1
        res.validate()

    def test_computes_weyl_when_omitted(self):
        res = borcherds_product(theta_series(2, 2500), prec=50)
        assert res.weyl == F(3, 24)

    def test_multiplicative_in_f(self):
        prec = 40
        a = theta_series(6, prec * prec)
        b = apply_aut(a, 2)
        ra = borcherds_product(a, F(7, 24), prec)
        rb = borcherds_product(b, F(5, 24), prec)
        rsum = borcherds_product(a + b, F(12, 24), prec)
        prod = ra.expansion * rb.expansion
        bound = min(prod.trunc, rsum.expansion.trunc)
        assert (rsum.expansion - prod).truncate(bound).is_zero()

    def test_explicit_weyl_for_harmonic_input(self):
        f = random_supported(1, F(1, 2), 1, seed=9, trunc=110)
        res = borcherds_product(f, weyl=F(0), prec=10)
        assert res.weyl == 0

    def test_validate_rejects_wrong_weyl(self):
        res = borcherds_product(theta_series(1, 2500), F(1, 12), 50)
        bad = ProductResult(res.weight, F(1, 24), res.expansion, res.exponents)
        with pytest.raises(ValueError, match="leading exponent"):
            bad.validate()

    def test_json(self):
        res = borcherds_product(theta_series(1, 400), F(1, 12), 20)
        data = res.to_json()
        assert data["weight"] == "1"
        assert data["weyl"] == "1/12"
        assert data["exponents"][0] == [1, "2"]
        assert FracSeries.from_json(data["expansion"]) == res.expansion


class TestEtaProduct:
    def test_squared_eta(self):
        from weilq.fracq import eta_series

        assert eta_product(1, 1, 30) == (eta_series(1, 30) * eta_series(1, 30)
                                         ).truncate(F(30) + F(1, 24))

    def test_symmetric(self):
        assert eta_product(6, 2, 25) == eta_product(6, 3, 25)

    def test_leading_exponent(self):
        assert eta_product(12, 3, 10).leading_exponent == F(3 + 4, 24)

    def test_rejects_nondivisor(self):
        with pytest.raises(ValueError):
            eta_product(6, 4, 10)


class TestEtaIdentity:
    def test_level_one(self):
        assert verify_eta_identity(1, 1, 40).ok

    def test_level_six(self):
        assert verify_eta_identity(6, 2, 40).ok
        assert verify_eta_identity(6, 3, 40).ok

    def test_report_json(self):
        rep = verify_eta_identity(6, 6, 30)
        assert rep.to_json() == {"N": 6, "c": 6, "ok": True}

    def test_witness_on_mismatch(self):
        # compare against the wrong eta product to exercise the witness path
        from weilq.borcherds import EtaIdentityReport

        res = borcherds_product(theta_series(6, 900), F(7, 24), 30)
        wrong = eta_product(6, 2, F(7, 24) + 30)
        diff = (res.expansion - wrong).truncate(F(7, 24) + 30)
        assert not diff.is_zero()
        rep = EtaIdentityReport(6, 6, False,
                                witness=(diff.leading_exponent, F(0), F(1)))
        data = rep.to_json()
        assert data["ok"] is False
        assert "witness" in data
