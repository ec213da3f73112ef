"""The lcm reduction, the power lift, and closed-form bound formulas.

A verified witness set A for the k-term sum equation under r colorings
forces a monochromatic unit-fraction solution in every r-coloring of
{1, ..., lcm(A)}: color a in A by the color of L/a, take the resulting
monochromatic sum solution, and divide through by L (the equation is
homogeneous).  The certificate records the witness set, so the inequality
can be re-derived from scratch at any time.

Lifting a unit-fraction bound L to the fractional-power family replaces
each witness value by its ell-th power, giving f_r(k, ell) <= L^ell.

All arithmetic is arbitrary precision from the start; the chi product
bound passes k^43 long before native widths run out.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable

from .colorability import WitnessVerdict, is_witness
from .equations import Equation, Family
from .errors import DomainError, NotAWitness
from .witness_families import lemma31_set

VERIFIER_VERSION = "rado-0.1"

BOUND_VARIANTS = ("brown-rodl", "new6", "special2", "lower", "chi-product")


def lcm_of_set(values: Iterable[int]) -> int:
    """Exact lcm via pairwise gcd-reduction folds."""
    vals = sorted({int(v) for v in values})
    if not vals:
        raise DomainError("value set must be nonempty")
    if vals[0] < 1:
        raise DomainError("all values must be >= 1")
    return math.lcm(*vals)


def _claim_text(r: int, k: int, ell: int, bound: int) -> str:
    if ell == 1:
        return f"f_{r}({k}) <= {bound}"
    return f"f_{r}({k},{ell}) <= {bound}"


@dataclass(frozen=True)
class BoundCertificate:
    """A verified witness set and the Rado-number inequality it implies.

    ``witness`` is always a witness for the sum equation; ``equation``
    names the family the claim bounds (unit-fraction, or fractional-power
    once lifted).  ``verdict`` carries the search evidence for freshly
    minted certificates and is absent after deserialization; use
    verify_certificate to re-establish it.
    """

    equation: Family
    k: int
    ell: int
    r: int
    witness: tuple[int, ...]
    lcm: int
    claim: str
    verifier_version: str = VERIFIER_VERSION
    verdict: WitnessVerdict | None = field(default=None, compare=False, repr=False)

    @property
    def bound(self) -> int:
        return self.lcm**self.ell


def upper_bound_from_witness(
    values: Iterable[int], r: int, k: int, *, threads: int = 1
) -> BoundCertificate:
    """Verify that ``values`` is an r-coloring witness for the k-term sum
    equation and mint the certificate f_r(k) <= lcm(values)."""
    witness = tuple(sorted({int(v) for v in values}))
    verdict = is_witness(Equation(Family.LINEAR_SUM, k), witness, r, threads=threads)
    if not verdict.is_witness:
        raise NotAWitness(
            f"the set admits a {r}-coloring with no monochromatic solution",
            counterexample=verdict.counterexample,
        )
    lcm = lcm_of_set(witness)
    return BoundCertificate(
        Family.UNIT_FRACTION,
        k,
        1,
        r,
        witness,
        lcm,
        _claim_text(r, k, 1, lcm),
        verdict=verdict,
    )


def power_lift_bound(cert: BoundCertificate, ell: int) -> BoundCertificate:
    """Lift f_r(k) <= L to f_r(k, ell) <= L^ell; identity when ell = 1."""
    if ell < 1:
        raise DomainError(f"lift exponent must be >= 1, got {ell}")
    if cert.ell != 1:
        raise DomainError("only unlifted certificates can be lifted")
    if ell == 1:
        return replace(cert)
    return BoundCertificate(
        Family.FRACTIONAL_POWER,
        cert.k,
        ell,
        cert.r,
        cert.witness,
        cert.lcm,
        _claim_text(cert.r, cert.k, ell, cert.lcm**ell),
        verifier_version=cert.verifier_version,
        verdict=cert.verdict,
    )


def chi_product_bound(k: int) -> int:
    """The 21-factor product that bounds lcm(chi_set(k)); grows like k^43."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    factors = (
        k**3,
        k + 1,
        k + 2,
        k * k - k + 1,
        k - 1,
        k * k + 1,
        k * k + k - 1,
        k * k + k + 1,
        2 * k * k - 2 * k + 1,
        2 * k - 1,
        2 * k * k - k + 1,
        2 * k * k - 1,
        2 * k * k + k - 2,
        3 * k - 2,
        3 * k * k - k - 1,
        3 * k * k - 2,
        k**3 + k - 1,
        k**3 + k * k - 1,
        k**3 + k * k + k - 2,
        k**3 + 2 * k * k - k - 1,
        k**3 + 2 * k * k - 2,
    )
    return math.prod(factors)


def closed_form_bound(k: int, variant: str, r: int | None = None) -> int:
    """Evaluate one of the closed-form bound formulas, exactly.

    brown-rodl: k^2 (k^2-k+1)(k^2+k-1)      upper bound, 2 colors
    new6:       6 k (k+1)(k+2)              upper bound, 2 colors
    special2:   2 k (k+1)(k+2)              k >= 4 even or not divisible by 3
    lower:      k^r                          lower bound, needs r
    chi-product: the 21-factor chi lcm bound
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if variant == "brown-rodl":
        return k * k * (k * k - k + 1) * (k * k + k - 1)
    if variant == "new6":
        return 6 * k * (k + 1) * (k + 2)
    if variant == "special2":
        if k < 4 or (k % 2 == 1 and k % 3 == 0):
            raise DomainError(
                "variant 'special2' needs k >= 4 with k even or not divisible by 3"
            )
        return 2 * k * (k + 1) * (k + 2)
    if variant == "lower":
        if r is None or r < 2:
            raise DomainError("variant 'lower' needs a color count r >= 2")
        return k**r
    if variant == "chi-product":
        return chi_product_bound(k)
    raise DomainError(f"unknown variant {variant!r}; expected one of {BOUND_VARIANTS}")


def lemma31_lcm_ratio(k: int) -> int:
    """Measured ratio 6k(k+1)(k+2) / lcm(lemma31_set(k)).

    Every element of the family divides 6k(k+1)(k+2), so the ratio is a
    positive integer; its value per k is reported rather than assumed."""
    bound = 6 * k * (k + 1) * (k + 2)
    lcm = lcm_of_set(lemma31_set(k))
    if bound % lcm != 0:
        raise DomainError(f"lcm(lemma31_set({k})) does not divide 6k(k+1)(k+2)")
    return bound // lcm


def verify_certificate(cert: BoundCertificate, *, threads: int = 1) -> bool:
    """Re-check a certificate from its serialized content alone: recompute
    the lcm, re-derive the claim text, and re-run the witness search."""
    try:
        if lcm_of_set(cert.witness) != cert.lcm:
            return False
    except DomainError:
        return False
    if cert.claim != _claim_text(cert.r, cert.k, cert.ell, cert.bound):
        return False
    verdict = is_witness(
        Equation(Family.LINEAR_SUM, cert.k), cert.witness, cert.r, threads=threads
    )
    return verdict.is_witness


def certificate_to_dict(cert: BoundCertificate) -> dict:
    return {
        "equation": cert.equation.value,
        "k": cert.k,
        "ell": cert.ell,
        "r": cert.r,
        "witness": list(cert.witness),
        "lcm": str(cert.lcm),
        "claim": cert.claim,
        "verifier_version": cert.verifier_version,
    }


def certificate_to_json(cert: BoundCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def certificate_from_dict(obj: dict) -> BoundCertificate:
    return BoundCertificate(
        Family(obj["equation"]),
        int(obj["k"]),
        int(obj["ell"]),
        int(obj["r"]),
        tuple(int(v) for v in obj["witness"]),
        int(obj["lcm"]),
        str(obj["claim"]),
        verifier_version=str(obj["verifier_version"]),
    )


def certificate_from_json(text: str) -> BoundCertificate:
    return certificate_from_dict(json.loads(text))
