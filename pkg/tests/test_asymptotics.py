import mpmath as mp
import pytest
from gmpy2 import mpq

from moduli_euler import asymptotics as A


@pytest.fixture(autouse=True)
def working_precision():
    with mp.workdps(40):
        yield


def _check(certification, family, **params):
    key = (family, tuple(sorted(params.items())))
    assert key in certification, sorted(k for k in certification if k[0] == family)
    return certification[key]


def test_c_infinity_values():
    assert abs(A.c_infinity("even") - mp.mpf("12.8764948")) < 1e-6
    assert abs(A.c_infinity("odd") - mp.mpf("23.7991331")) < 1e-6
    with pytest.raises(ValueError):
        A.c_infinity("neither")


def test_c_infinity_precision_stable():
    a = A.c_infinity("even", dps=30)
    b = A.c_infinity("even", dps=60)
    assert abs(a - b) < mp.mpf("1e-25")


def test_z_asymp_sign_pattern_and_ratio():
    for g in range(4, 40):
        ratio = A.z_asymp(g + 2) / A.z_asymp(g)
        assert ratio < 0
        assert abs(abs(ratio) - g * (g - 1) / (2 * mp.pi) ** 2) < 1e-20
    with pytest.raises(ValueError):
        A.z_asymp(1)


def test_phi_k_gamma_small_x_matches_direct_sum():
    x = mp.mpf("0.3")
    direct = mp.fsum(
        x**J * mp.factorial(J - 1) / (mp.factorial(J - 3) * mp.factorial(2) * mp.factorial(J - 1))
        for J in range(3, 80)
    )
    assert abs(A.phi_k_gamma(2, 2, x) - direct) < 1e-30


def test_phi_gamma_matches_series():
    for gamma in (0, 3, 10):
        x = mp.mpf(7)
        direct = mp.fsum(
            x**J / (J * mp.factorial(J - gamma - 1)) for J in range(gamma + 1, 200)
        ) / mp.factorial(gamma)
        assert abs(A.phi_gamma(gamma, x) / direct - 1) < 1e-30


def test_phi_gamma_zero_matches_exponential_integral():
    # sum_{J>=1} x^J / (J (J-1)!) = sum x^J / J! = e^x - 1
    x = mp.mpf(5)
    assert abs(A.phi_gamma(0, x) - (mp.e**x - 1)) < 1e-30


def test_bounds_decrease_in_k_and_g():
    for k in (2, 3, 4):
        assert A.lambda_bound(600, k + 1, 10) < A.lambda_bound(600, k, 10)
        assert A.lambda_bound(700, k, 10) < A.lambda_bound(600, k, 10)
    assert A.lambda_prime_bound(600, 1, 10) == 0
    assert A.delta_prime_bound(600, 3, 10) < A.delta_prime_bound(600, 2, 10)


def test_f_k_small_cases():
    # compositions of N into parts... f_1(N) = N! (a single block)
    for N in range(1, 10):
        assert A.f_k(1, N) == mp.factorial(N)


def test_f_k_prime_closed_form_matches_direct():
    for k in range(2, 6):
        for N in range(k, 40):
            assert A.f_k_prime(k, N) == A._f_k_prime_direct(k, N), (k, N)


def test_a_prime_values():
    assert A.a_prime(2) == mpq(156, 7)
    assert A.a_prime(3) == mpq(6999, 70)
    assert A.a_prime(4) == mpq(9938, 35)
    assert A.a_prime(5) == mpq(13771, 21)
    assert A.k6_constant() == mpq(31, 10)


def test_f_k_ratio_bound():
    for k in range(2, 7):
        for N in range(k, 301):
            assert mpq(A.f_k(k, N), int(mp.factorial(N - k + 1))) <= mpq(31, 10) ** (k - 1)


def test_eta_decreasing():
    vals = [A.eta(g) for g in (300, 450, 600, 900)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_z_ratio_table_validation():
    with pytest.raises(ValueError):
        A.z_ratio_table(20, 10)
    rows = A.z_ratio_table(2, 12)
    assert [r[0] for r in rows if r[1] == 0] == [2, 3, 4, 5, 6, 7, 8, 12]


def test_ratio_approaches_one(z_series_150):
    rows = {r[0]: r[3] for r in A.z_ratio_table(60, 150)}
    assert all(abs(rows[g] - 1) < 0.1 for g in range(140, 151))
    for parity in (0, 1):
        assert abs(rows[150 - parity] - 1) < abs(rows[60 + 2 - parity] - 1)


def test_certification_requires_precision():
    with pytest.raises(ValueError):
        A.certification_checks(dps=20)


SPOTS = [
    ("lambda", 2, "4.87044e-4"),
    ("lambda", 3, "4.24646e-9"),
    ("lambda", 4, "2.41299e-14"),
    ("lambda_prime", 2, "9.65108e-6"),
    ("lambda_prime", 3, "1.63969e-10"),
    ("delta", 5, "0.10478"),
    ("delta_prime", 2, "0.641878"),
    ("delta_prime", 3, "0.0521099"),
    ("delta_prime", 4, "0.000578797"),
]


@pytest.mark.parametrize("family,k,value", SPOTS)
def test_spot_values(certification, family, k, value):
    c = _check(certification, family, g=600, k=k, gamma=10)
    assert c.passed
    assert abs(c.value / mp.mpf(value) - 1) < 1e-4


@pytest.mark.parametrize(
    "family",
    ["D", "E_prime", "E", "A_series_ratio_max", "F", "A_tilde", "F_A_tilde_eta", "remainder_total",
     "remainder_total_c_lambda_robust", "leading_relative_error", "sign_agreement", "delta_plus_beta",
     "delta_plus_beta_subleading", "eta_decreasing", "mixed_x1", "tail_part"],
)
def test_named_gating_checks_pass(certification, family):
    matches = [c for key, c in certification.items() if key[0] == family]
    assert matches and all(c.passed for c in matches)


def test_c_lambda_lemma_reported_as_non_gating(certification):
    c = next(c for key, c in certification.items() if key[0] == "c_lambda_lemma")
    assert not c.gating
    assert c.value == [4, 5]


def test_every_gating_check_passes(certification):
    failed = [c.family for c in certification.values() if c.gating and not c.passed]
    assert not failed


def test_zero_tolerance_fails_spot_checks():
    spots = A._close("x", {}, mp.mpf("0.1047801"), "0.10478", mp.mpf("1e-4"), True, 0)
    assert not spots.passed


def test_leading_error_small():
    errs = A.leading_relative_errors(100, 110)
    assert max(errs.values()) < 1e-20


def test_check_serialisation(certification):
    d = next(iter(certification.values())).as_dict()
    assert {"family", "params", "value", "tolerance", "pass"} <= set(d)
