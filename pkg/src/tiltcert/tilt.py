"""Tilt slopes, central charges, BG margins, and wall polynomials.

Conventions fixed here, with omega = alpha*H and B = beta*H:
  mu  = (ch1 - beta*ch0) / (alpha*ch0)
  nu  = (b_B - alpha^2*ch0/2) / (alpha*a_B)
  Z   = (-c_B + s*d*alpha^2*a_B) + i*(d*alpha*b_B - d*alpha^3*ch0/2)
where a_B, b_B are the twisted ch1, ch2 coordinates, c_B is the twisted
ch3 degree, and d = H^3.  Division by zero means +infinity throughout.
Every quantity exists both numerically (exact rational at a point) and
symbolically (BivariatePoly in a = alpha, b = beta).
"""

from dataclasses import dataclass
from fractions import Fraction

from .chern import QUADRIC, twist
from .kernel import BivariatePoly, format_rational, poly_eval


@dataclass(frozen=True)
class TiltParams:
    alpha: Fraction
    beta: Fraction
    s: Fraction = Fraction(1, 6)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "s", Fraction(self.s))
        if self.alpha <= 0:
            raise ValueError("tilt parameter alpha must be positive")


@dataclass(frozen=True)
class ExtendedSlope:
    """A rational slope or +infinity (the divide-by-zero convention)."""

    value: Fraction | None

    @classmethod
    def finite(cls, q):
        return cls(Fraction(q))

    @property
    def is_infinite(self):
        return self.value is None

    def __str__(self):
        return "inf" if self.value is None else format_rational(self.value)


INFINITE_SLOPE = ExtendedSlope(None)


@dataclass(frozen=True)
class ComplexRational:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other):
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __str__(self):
        return f"({format_rational(self.re)}, {format_rational(self.im)})"


def mu(v, p, X=QUADRIC):
    if v.ch0 == 0:
        return INFINITE_SLOPE
    return ExtendedSlope.finite((v.ch1 - p.beta * v.ch0) / (p.alpha * v.ch0))


def nu(v, p, X=QUADRIC):
    t = twist(v, p.beta, X)
    if t.ch1 == 0:
        return INFINITE_SLOPE
    return ExtendedSlope.finite((t.ch2 - p.alpha**2 * v.ch0 / 2) / (p.alpha * t.ch1))


def central_charge(v, p, X=QUADRIC):
    d = X.degree
    t = twist(v, p.beta, X)
    re = -t.ch3 + p.s * d * p.alpha**2 * t.ch1
    im = d * p.alpha * t.ch2 - d * p.alpha**3 * v.ch0 / 2
    return ComplexRational(re, im)


def lambda_slope(v, p, X=QUADRIC):
    z = central_charge(v, p, X)
    if z.im == 0:
        return INFINITE_SLOPE
    return ExtendedSlope.finite(-z.re / z.im)


def twisted_ch_polynomials(v, X=QUADRIC):
    """The four components of twist(v, b) as polynomials in b."""
    b = BivariatePoly.beta()
    d = X.degree
    c0, c1, c2, c3 = (BivariatePoly.constant(c) for c in v.as_tuple())
    return (
        c0,
        c1 - b * v.ch0,
        c2 - b * v.ch1 + b**2 * Fraction(v.ch0, 2),
        c3 - b * (d * v.ch2) + b**2 * (Fraction(d, 2) * v.ch1) - b**3 * (Fraction(d, 6) * v.ch0),
    )


def z_polynomials(v, s=Fraction(1, 6), X=QUADRIC):
    """(Re, Im) of the central charge as polynomials in (a, b)."""
    a = BivariatePoly.alpha()
    d = X.degree
    _, t1, t2, t3 = twisted_ch_polynomials(v, X)
    re = -t3 + a**2 * t1 * (Fraction(s) * d)
    im = a * t2 * d - a**3 * Fraction(d * v.ch0, 2)
    return re, im


def z_value(re_poly, im_poly, alpha, beta):
    return ComplexRational(poly_eval(re_poly, alpha, beta), poly_eval(im_poly, alpha, beta))


def cross_polynomial(v, w, s=Fraction(1, 6), X=QUADRIC):
    """Cross product Re Z(v)*Im Z(w) - Im Z(v)*Re Z(w) as a polynomial.

    Its sign tells which side of the ray through Z(v) the vector Z(w)
    lies on; antisymmetric in (v, w).
    """
    re_v, im_v = z_polynomials(v, s, X)
    re_w, im_w = z_polynomials(w, s, X)
    return re_v * im_w - im_v * re_w


def bg_margin(v, p, X=QUADRIC):
    """Margin s*omega^2*ch1^B - ch3^B of the degree-3 inequality.

    Nonnegative at nu = 0 for s = 1/6 (strict for s > 1/6) is the
    conjectural inequality this toolkit probes; equals Re Z by design.
    """
    return bg_margin_from_squared(v, p.alpha**2, p.beta, p.s, X)


def bg_margin_from_squared(v, alpha_squared, beta, s=Fraction(1, 6), X=QUADRIC):
    """Degree-3 margin as a function of alpha^2.

    The margin only sees alpha through its square, so the nu = 0 locus
    (where alpha^2 is rational but alpha usually is not) stays exact.
    """
    d = X.degree
    t = twist(v, Fraction(beta), X)
    return Fraction(s) * d * Fraction(alpha_squared) * t.ch1 - t.ch3


def nu_zero_alpha_squared(v, beta, X=QUADRIC):
    """Solve nu(v) = 0 for alpha^2 at fixed beta.

    Returns 2*b_B/ch0, which may be <= 0 (no real locus at this beta),
    or None for rank 0 (nu = 0 then needs b_B = 0 identically).
    """
    if v.ch0 == 0:
        return None
    t = twist(v, Fraction(beta), X)
    return 2 * t.ch2 / v.ch0


def wall_polynomial(v, w, X=QUADRIC):
    """Implicit curve W(a, b) = 0 where nu(v) = nu(w) (away from poles).

    W = (b_B(v) - a^2*ch0(v)/2)*a_B(w) - (b_B(w) - a^2*ch0(w)/2)*a_B(v).
    """
    a = BivariatePoly.alpha()
    _, t1v, t2v, _ = twisted_ch_polynomials(v, X)
    _, t1w, t2w, _ = twisted_ch_polynomials(w, X)
    num_v = t2v - a**2 * Fraction(v.ch0, 2)
    num_w = t2w - a**2 * Fraction(w.ch0, 2)
    return num_v * t1w - num_w * t1v
