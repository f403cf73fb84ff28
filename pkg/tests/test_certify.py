"""Sign-certification engine: soundness, strictness at boundaries, witnesses."""

import random
from fractions import Fraction

import pytest

from tiltcert.certify import (
    Factor,
    FactoredClaim,
    Region,
    SIDE_LEFT,
    SIDE_RIGHT,
    certify_sign,
    default_region,
)
from tiltcert.kernel import BivariatePoly, RationalInterval, poly_eval

F = Fraction
A = BivariatePoly.alpha()
B = BivariatePoly.beta()
ONE = BivariatePoly.constant(1)


def C(x):
    return BivariatePoly.constant(F(x))


def violates(value, sign):
    return {
        ">0": value <= 0,
        ">=0": value < 0,
        "<0": value >= 0,
        "<=0": value > 0,
    }[sign]


def test_region_membership():
    region = default_region()
    assert region.contains(F(1, 6), F(-1, 4))
    assert region.contains(F(1, 6), F(-1, 2))  # closed beta-lo
    assert region.contains(F(1, 6), F(0))      # closed beta-hi
    assert not region.contains(F(0), F(-1, 4))   # open alpha-lo
    assert not region.contains(F(1, 3), F(-1, 4))  # open alpha-hi
    left = default_region(SIDE_LEFT)
    assert left.contains(F(1, 6), F(-1, 4))
    assert not left.contains(F(1, 6), F(-1, 8))
    right = default_region(SIDE_RIGHT)
    assert right.contains(F(1, 6), F(-1, 8))
    assert not right.contains(F(1, 6), F(-1, 4))
    # boundary of the side line belongs to both
    assert left.contains(F(1, 4), F(-1, 4))
    assert right.contains(F(1, 4), F(-1, 4))


def test_region_validation():
    with pytest.raises(ValueError):
        Region(
            beta=RationalInterval(F(0), F(0)),
            alpha=RationalInterval(F(0), F(1)),
        )
    with pytest.raises(ValueError):
        default_region("alpha=beta")


def test_factor_validation():
    with pytest.raises(ValueError):
        Factor(A, "!=0", "affine-vertex")
    with pytest.raises(ValueError):
        Factor(A, ">0", "newton")
    with pytest.raises(ValueError):
        Factor(A**2, ">0", "affine-vertex")  # not affine
    Factor(A**2, ">0", "interval-subdivision")  # fine


def test_claim_sign_composition():
    f_pos = Factor(A, ">0", "region-atom")
    f_neg = Factor(B, "<=0", "region-atom")
    FactoredClaim((f_pos, f_neg), "<=0")
    with pytest.raises(ValueError):
        FactoredClaim((f_pos, f_neg), "<0")  # nonstrict factor
    with pytest.raises(ValueError):
        FactoredClaim((f_pos, f_neg), ">=0")  # wrong polarity
    with pytest.raises(ValueError):
        FactoredClaim((), ">0")
    claim = FactoredClaim((f_pos, f_neg), "<=0")
    assert poly_eval(claim.product(), F(1, 4), F(-1, 2)) == F(-1, 8)


def test_affine_vertex_certified():
    claim = FactoredClaim((Factor(ONE + B - A, ">0", "affine-vertex"),), ">0")
    cert = certify_sign(claim, default_region())
    assert cert.status == "certified"
    assert cert.boxes == 0 and cert.depth == 0
    assert cert.factors[0].evidence["kind"] == "affine-vertex"
    # minimum over the polytope is 1/6 at (alpha, beta) = (1/3, -1/2)
    vertices = cert.factors[0].evidence["vertices"]
    values = [Fraction(v["value"]) for v in vertices]
    assert min(values) == F(1, 6)
    assert {"alpha": "1/3", "beta": "-1/2", "value": "1/6"} in vertices


def test_interval_hull_certifies_at_root():
    claim = FactoredClaim(
        (Factor(2 * B**2 + 2 * B - 1 - 2 * A**2, "<0", "interval-subdivision"),),
        "<0",
    )
    cert = certify_sign(claim, default_region())
    assert cert.status == "certified"
    assert cert.boxes == 1 and cert.depth == 0


def test_bernstein_certifies_tangent_zero_at_root():
    # b^2 + b - a^2 < 0 holds on the region but touches 0 at the excluded
    # corner (alpha, beta) = (0, 0); monomial hulls alone can never certify
    # this, Bernstein coefficients settle it without any splitting.
    claim = FactoredClaim(
        (Factor(B**2 + B - A**2, "<0", "interval-subdivision"),), "<0"
    )
    cert = certify_sign(claim, default_region())
    assert cert.status == "certified"
    assert cert.boxes == 1 and cert.depth == 0


def test_false_claim_fails_with_witness():
    claim = FactoredClaim(
        (Factor(B**2 - A**2, ">0", "interval-subdivision"),), ">0"
    )
    region = default_region()
    cert = certify_sign(claim, region)
    assert cert.status == "failed"
    alpha, beta = cert.witness
    assert region.contains(alpha, beta)
    assert violates(poly_eval(claim.product(), alpha, beta), ">0")


def test_zero_polynomial_claims():
    zero = BivariatePoly()
    nonstrict = FactoredClaim(
        (Factor(zero, "<=0", "interval-subdivision"),), "<=0"
    )
    cert = certify_sign(nonstrict, default_region())
    assert cert.status == "certified"
    strict = FactoredClaim((Factor(zero, "<0", "interval-subdivision"),), "<0")
    cert = certify_sign(strict, default_region())
    assert cert.status == "failed"
    alpha, beta = cert.witness
    assert poly_eval(zero, alpha, beta) == 0


def test_strict_atom_on_open_bound():
    # alpha > 0: zero vertices lie on the open alpha-lo facet only.
    claim = FactoredClaim((Factor(A, ">0", "region-atom"),), ">0")
    assert certify_sign(claim, default_region()).status == "certified"
    # -beta >= 0: zero at closed beta-hi is fine nonstrictly ...
    claim = FactoredClaim((Factor(-B, ">=0", "region-atom"),), ">=0")
    assert certify_sign(claim, default_region()).status == "certified"
    # ... but -beta > 0 is refuted at the closed facet beta = 0.
    claim = FactoredClaim((Factor(-B, ">0", "region-atom"),), ">0")
    cert = certify_sign(claim, default_region())
    assert cert.status == "failed"
    alpha, beta = cert.witness
    assert beta == 0 and violates(poly_eval(-B, alpha, beta), ">0")


def test_strict_vertex_zero_on_closed_facet_fails():
    claim = FactoredClaim((Factor(B + F(1, 2), ">0", "affine-vertex"),), ">0")
    cert = certify_sign(claim, default_region())
    assert cert.status == "failed"
    assert cert.witness[1] == F(-1, 2)


def test_side_constraint_vertex_logic():
    # On alpha <= -beta the expression beta - alpha is < 0: its only zero in
    # the closed polytope is the corner (0, 0), excluded by the open alpha
    # bound working jointly with the side line.
    claim = FactoredClaim((Factor(B - A, "<0", "region-atom"),), "<0")
    cert = certify_sign(claim, default_region(SIDE_LEFT))
    assert cert.status == "certified"
    # On the other side it reaches 0 only at (0,0) as well, but a nonstrict
    # bound needs no exclusions.
    claim = FactoredClaim((Factor(B - A, "<=0", "region-atom"),), "<=0")
    assert certify_sign(claim, default_region(SIDE_RIGHT)).status == "certified"
    # alpha + beta changes sign across the region: fails without a side ...
    claim = FactoredClaim((Factor(A + B, ">=0", "affine-vertex"),), ">=0")
    cert = certify_sign(claim, default_region())
    assert cert.status == "failed"
    # ... and is an atom of the right side.
    claim = FactoredClaim((Factor(A + B, ">=0", "region-atom"),), ">=0")
    assert certify_sign(claim, default_region(SIDE_RIGHT)).status == "certified"


def test_interval_side_dependence_stays_inconclusive():
    # beta^2 - alpha^2 >= 0 holds exactly on the left subregion, but the
    # interval strategy works on axis-aligned boxes only; every box that
    # straddles the alpha = -beta diagonal contains points of both signs, so
    # the claim can never certify and -- because it is true -- can never fail
    # either.  Soundness demands inconclusive with no witness, at any depth.
    claim = FactoredClaim(
        (Factor(B**2 - A**2, ">=0", "interval-subdivision"),), ">=0"
    )
    for depth in (2, 12):
        cert = certify_sign(claim, default_region(SIDE_LEFT), max_depth=depth)
        assert cert.status == "inconclusive"
        assert cert.witness is None
    # the same inequality weakened to hold on the full region does certify
    weaker = FactoredClaim(
        (Factor(F(1, 4) - (A + B) ** 2, ">=0", "interval-subdivision"),), ">=0"
    )
    cert = certify_sign(weaker, default_region())
    assert cert.status == "certified"


def test_max_depth_zero_is_inconclusive():
    claim = FactoredClaim(
        (Factor(B**2 + B - A**2, "<0", "interval-subdivision"),), "<0"
    )
    cert = certify_sign(claim, default_region(), max_depth=0)
    assert cert.status == "inconclusive"
    assert any("subdivision disabled" in note for note in cert.notes)
    assert cert.factors[0].evidence.get("note", "").startswith("subdivision disabled")


def test_determinism():
    claims = [
        FactoredClaim((Factor(B**2 - A**2, ">0", "interval-subdivision"),), ">0"),
        FactoredClaim((Factor(B**2 + B - A**2, "<0", "interval-subdivision"),), "<0"),
        FactoredClaim(
            (Factor(B**2 - A**2, ">=0", "interval-subdivision"),), ">=0"
        ),
    ]
    for region in (default_region(), default_region(SIDE_LEFT)):
        for claim in claims:
            first = certify_sign(claim, region, max_depth=10)
            second = certify_sign(claim, region, max_depth=10)
            assert first.status == second.status
            assert first.witness == second.witness
            assert first.boxes == second.boxes
            assert first.depth == second.depth


def test_certified_monotone_in_depth():
    # (beta + 1/4)^2 + 1/100 > 0 everywhere, but the middle Bernstein
    # coefficient on the root box is 1/100 - 1/16 < 0, so certification
    # genuinely requires splitting: inconclusive below depth 2, certified
    # at depth 2, and certified (with the identical box count) beyond.
    claim = FactoredClaim(
        (Factor((B + F(1, 4)) ** 2 + F(1, 100), ">0", "interval-subdivision"),),
        ">0",
    )
    for depth in (0, 1):
        shallow = certify_sign(claim, default_region(), max_depth=depth)
        assert shallow.status == "inconclusive"
    for depth in (2, 3, 8, 16):
        cert = certify_sign(claim, default_region(), max_depth=depth)
        assert cert.status == "certified"
        assert cert.depth == 2 and cert.boxes == 7


def _random_claim(rng):
    factors = []
    for _ in range(rng.randrange(1, 4)):
        kind = rng.randrange(3)
        if kind == 0:
            expr = (
                C(F(rng.randrange(-2, 3), rng.randrange(1, 4)))
                + F(rng.randrange(-2, 3)) * A
                + F(rng.randrange(-2, 3)) * B
            )
            strategy = "affine-vertex"
        elif kind == 1:
            expr = rng.choice((A, B, A + B, B - A, -B, ONE + B))
            strategy = "region-atom"
        else:
            coeffs = {}
            for _ in range(rng.randrange(1, 5)):
                coeffs[(rng.randrange(0, 3), rng.randrange(0, 3))] = F(
                    rng.randrange(-4, 5), rng.randrange(1, 4)
                )
            expr = BivariatePoly(coeffs)
            strategy = "interval-subdivision"
        factors.append(Factor(expr, rng.choice((">0", ">=0", "<0", "<=0")), strategy))
    polarity = 1
    strict = True
    for f in factors:
        if f.target in ("<0", "<=0"):
            polarity = -polarity
        if f.target in (">=0", "<=0"):
            strict = False
    implied = {1: ">0" if strict else ">=0", -1: "<0" if strict else "<=0"}[polarity]
    weaker = {">0": ">=0", "<0": "<=0"}
    overall = implied
    if implied in weaker and rng.random() < 0.3:
        overall = weaker[implied]
    return FactoredClaim(tuple(factors), overall)


def test_randomized_soundness():
    rng = random.Random(0xC0FFEE)
    regions = (default_region(), default_region(SIDE_LEFT), default_region(SIDE_RIGHT))
    grid = 24
    for trial in range(80):
        claim = _random_claim(rng)
        region = regions[trial % 3]
        cert = certify_sign(claim, region, max_depth=8)
        product = claim.product()
        if cert.status == "certified":
            for i in range(grid + 1):
                alpha = region.alpha.lo + F(i, grid) * region.alpha.width
                for j in range(grid + 1):
                    beta = region.beta.lo + F(j, grid) * region.beta.width
                    if not region.contains(alpha, beta):
                        continue
                    value = poly_eval(product, alpha, beta)
                    assert not violates(value, claim.overall_sign), (
                        f"trial {trial}: certified claim violated at "
                        f"({alpha}, {beta})"
                    )
        elif cert.status == "failed":
            alpha, beta = cert.witness
            assert region.contains(alpha, beta)
            value = poly_eval(product, alpha, beta)
            assert violates(value, claim.overall_sign)


def test_witness_found_before_any_subdivision():
    # A claim refuted by the deterministic witness search never spends boxes.
    claim = FactoredClaim(
        (Factor(A - F(1, 4), ">0", "affine-vertex"),), ">0"
    )
    cert = certify_sign(claim, default_region())
    assert cert.status == "failed"
    assert cert.boxes == 0
    alpha, beta = cert.witness
    region = default_region()
    assert region.contains(alpha, beta)
    assert alpha - F(1, 4) <= 0


def test_tiny_violation_sliver_is_inconclusive_not_misjudged():
    # alpha - 1/100 > 0 is false (violated only on a thin sliver the witness
    # grids never sample), and true on too little of the box to certify: the
    # sound outcome is inconclusive, never a bogus certificate.
    claim = FactoredClaim(
        (Factor(A - F(1, 100), ">0", "affine-vertex"),), ">0"
    )
    cert = certify_sign(claim, default_region())
    assert cert.status == "inconclusive"
    assert cert.witness is None
