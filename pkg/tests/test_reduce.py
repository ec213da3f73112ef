import json

import pytest

from rado.equations import Equation, Family
from rado.errors import DomainError, NotAWitness
from rado.reduce import (
    BoundCertificate,
    certificate_from_json,
    certificate_to_dict,
    certificate_to_json,
    chi_product_bound,
    closed_form_bound,
    lcm_of_set,
    lemma31_lcm_ratio,
    power_lift_bound,
    upper_bound_from_witness,
    verify_certificate,
)
from rado.witness_families import chi_set, lemma31_set, lemma33_set


def test_lcm_examples():
    assert lcm_of_set([1, 2, 3, 4, 5]) == 60
    assert lcm_of_set(lemma31_set(5)) == 420
    assert lcm_of_set(lemma33_set(4)) == 240


def test_lcm_errors():
    with pytest.raises(DomainError):
        lcm_of_set([])
    with pytest.raises(DomainError):
        lcm_of_set([0, 2])


def test_upper_bound_examples():
    cert = upper_bound_from_witness(range(1, 6), 2, 2)
    assert cert.bound == 60
    assert cert.claim == "f_2(2) <= 60"
    assert cert.verdict is not None and cert.verdict.is_witness

    cert5 = upper_bound_from_witness(lemma31_set(5), 2, 5)
    assert cert5.bound == 420
    assert cert5.claim == "f_2(5) <= 420"

    cert3 = upper_bound_from_witness(chi_set(3), 3, 3)
    assert cert3.bound == lcm_of_set(chi_set(3))
    assert cert3.r == 3


def test_upper_bound_not_a_witness():
    with pytest.raises(NotAWitness) as info:
        upper_bound_from_witness([1, 2, 3], 2, 2)
    assert info.value.counterexample is not None


def test_power_lift_examples():
    cert = upper_bound_from_witness(range(1, 6), 2, 2)
    lifted = power_lift_bound(cert, 2)
    assert lifted.bound == 3600
    assert lifted.claim == "f_2(2,2) <= 3600"
    assert lifted.ell == 2
    assert lifted.equation is Family.FRACTIONAL_POWER

    same = power_lift_bound(cert, 1)
    assert same.claim == cert.claim

    cert4 = upper_bound_from_witness(lemma33_set(4), 2, 4)
    assert cert4.bound == 240
    assert power_lift_bound(cert4, 3).bound == 13_824_000

    with pytest.raises(DomainError):
        power_lift_bound(lifted, 2)
    with pytest.raises(DomainError):
        power_lift_bound(cert, 0)


def test_closed_form_examples():
    assert closed_form_bound(5, "brown-rodl") == 15_225
    assert closed_form_bound(5, "new6") == 1_260
    assert closed_form_bound(4, "special2") == 240
    assert closed_form_bound(3, "lower", r=2) == 9


def test_closed_form_preconditions():
    with pytest.raises(DomainError):
        closed_form_bound(1, "new6")
    with pytest.raises(DomainError):
        closed_form_bound(9, "special2")  # odd and divisible by 3
    with pytest.raises(DomainError):
        closed_form_bound(3, "special2")
    with pytest.raises(DomainError):
        closed_form_bound(3, "lower")
    with pytest.raises(DomainError):
        closed_form_bound(3, "no-such-variant")
    assert closed_form_bound(10, "special2") == 2 * 10 * 11 * 12
    assert closed_form_bound(5, "special2") == 2 * 5 * 6 * 7


def test_divisibility_identity():
    for k in range(4, 201):
        bound = 6 * k * (k + 1) * (k + 2)
        assert bound % lcm_of_set(lemma31_set(k)) == 0


def test_exact_lcm_identities():
    for k in range(4, 201, 2):
        assert lcm_of_set(lemma33_set(k)) == 2 * k * (k + 1) * (k + 2)
    for k in range(5, 201):
        if k % 3 != 0:
            assert lcm_of_set(lemma31_set(k)) == 2 * k * (k + 1) * (k + 2)


def test_lemma31_ratio_is_measured_not_assumed():
    ratios = {k: lemma31_lcm_ratio(k) for k in range(4, 60)}
    assert all(r >= 1 for r in ratios.values())
    assert ratios[5] == 3  # lcm 420 against 1260
    assert ratios[9] == 1  # divisible by 3 and odd, yet the lcm is full


def test_chi_lcm_bound():
    for k in range(3, 51):
        assert lcm_of_set(chi_set(k)) <= chi_product_bound(k)
    assert closed_form_bound(7, "chi-product") == chi_product_bound(7)


def test_chi_product_grows_like_k43():
    # degree 43 with leading coefficient 2^5 * 3^3 = 864
    k = 10_000
    value = chi_product_bound(k)
    assert 864 * k**43 < value < 865 * k**43


def test_certificate_serialization_round_trip():
    cert = upper_bound_from_witness(lemma31_set(5), 2, 5)
    text = certificate_to_json(cert)
    obj = json.loads(text)
    assert obj["lcm"] == "420"
    assert obj["witness"] == list(lemma31_set(5))
    back = certificate_from_json(text)
    assert back.witness == cert.witness
    assert back.lcm == cert.lcm
    assert back.claim == cert.claim
    assert back.verdict is None


def test_certificate_self_verification():
    cert = upper_bound_from_witness(range(1, 6), 2, 2)
    assert verify_certificate(cert)
    reparsed = certificate_from_json(certificate_to_json(cert))
    assert verify_certificate(reparsed)

    tampered = BoundCertificate(
        cert.equation, cert.k, cert.ell, cert.r, cert.witness, cert.lcm + 1, cert.claim
    )
    assert not verify_certificate(tampered)

    not_witness = BoundCertificate(
        Family.UNIT_FRACTION, 2, 1, 2, (1, 2, 3), 6, "f_2(2) <= 6"
    )
    assert not verify_certificate(not_witness)


def test_sandwich_lower_vs_certificates():
    # k^r <= f_r(k) <= certified bounds wherever exact values are known
    known = {(2, 2): 60, (2, 3): 40, (2, 4): 48}
    for (r, k), value in known.items():
        assert closed_form_bound(k, "lower", r=r) <= value
        assert value <= closed_form_bound(k, "new6")
