"""Chern characters on Picard-rank-1 threefolds, numeric and twisted.

Coordinates: ch0 is the rank, ch1 and ch2 are coefficients of H and H^2,
and ch3 is the rational degree of the 0-cycle (point-class coefficient,
already an intersection number).  The mixed normalization keeps central
charges dimensionless; the ambient degree d = H^3 enters exactly where
an H^3 is produced, so twisting threads d through the ch3 component.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .kernel import format_rational, parse_rational


@dataclass(frozen=True)
class Threefold:
    """Ambient smooth threefold with Pic = Z*H and degree d = H^3 > 0."""

    name: str
    degree: int

    def __post_init__(self):
        if self.degree <= 0:
            raise ValueError("degree H^3 must be positive")


QUADRIC = Threefold("quadric threefold", 2)
PROJECTIVE_SPACE = Threefold("projective 3-space", 1)


@dataclass(frozen=True)
class ChernCharacter:
    ch0: Fraction
    ch1: Fraction
    ch2: Fraction
    ch3: Fraction

    def __post_init__(self):
        for field in ("ch0", "ch1", "ch2", "ch3"):
            object.__setattr__(self, field, Fraction(getattr(self, field)))

    def as_tuple(self):
        return (self.ch0, self.ch1, self.ch2, self.ch3)

    def __add__(self, other):
        return ChernCharacter(*(x + y for x, y in zip(self.as_tuple(), other.as_tuple())))

    def __sub__(self, other):
        return ChernCharacter(*(x - y for x, y in zip(self.as_tuple(), other.as_tuple())))

    def __neg__(self):
        return ChernCharacter(*(-x for x in self.as_tuple()))

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return ChernCharacter(*(x * scalar for x in self.as_tuple()))

    __rmul__ = __mul__

    def to_json_dict(self, name=None):
        out = {f"ch{k}": format_rational(v) for k, v in enumerate(self.as_tuple())}
        if name is not None:
            out["name"] = name
        return out

    @classmethod
    def from_json_dict(cls, data):
        vals = []
        for key in ("ch0", "ch1", "ch2", "ch3"):
            if key not in data:
                raise ValueError(f"missing field {key!r}")
            vals.append(parse_rational(data[key]))
        return cls(*vals)

    def __str__(self):
        return "(" + ", ".join(format_rational(x) for x in self.as_tuple()) + ")"


def load_chern(path):
    """Read a character from a JSON file ({"ch0": "r", ..., "name"?})."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("character file must hold a JSON object")
    return ChernCharacter.from_json_dict(data), data.get("name")


def line_bundle_ch(n, X=QUADRIC):
    """ch(O(nH)) = (1, n, n^2/2, n^3*d/6); the d lands in the degree slot."""
    n = Fraction(n)
    return ChernCharacter(Fraction(1), n, n * n / 2, n**3 * X.degree / 6)


def twist(v, beta, X=QUADRIC):
    """Twisted character e^{-beta*H} * ch.

    ch1, ch2 transform with plain H-coordinate arithmetic; the ch3 slot is
    a degree, so every product that lands in H^3 picks up d.
    """
    beta = Fraction(beta)
    d = X.degree
    r, c1, c2, c3 = v.as_tuple()
    return ChernCharacter(
        r,
        c1 - beta * r,
        c2 - beta * c1 + beta * beta / 2 * r,
        c3 - d * beta * c2 + d * beta * beta / 2 * c1 - d * beta**3 / 6 * r,
    )


def tensor_line(v, n, X=QUADRIC):
    """ch(E(nH)) = e^{nH} * ch(E); same arithmetic as twist with beta = -n."""
    return twist(v, -Fraction(n), X)


def shift(v, k):
    """Homological shift [k]: multiplies the character by (-1)^k."""
    return v if k % 2 == 0 else -v


@dataclass(frozen=True)
class CatalogObject:
    label: str
    ch: ChernCharacter
    heart_shift: int | None
    mu_stable: bool


def spinor_ch_minus_one(X=QUADRIC):
    # Rank-2 spinor bundle twisted down once.  Forced by the short exact
    # sequence 0 -> S(-1) -> O^4 -> S -> 0 with S = S(-1) tensor O(1):
    # solving ch(S(-1)) + tensor_line(ch(S(-1)), 1) = 4*ch(O) gives
    # (2, -1, 0, d/12).
    return ChernCharacter(2, -1, 0, Fraction(X.degree, 12))


def _skyscraper():
    # Alternating sum over 0 -> O(-1) -> S(-1)^2 -> O^4 -> O(1) -> k(x) -> 0.
    return ChernCharacter(0, 0, 0, 1)


def quadric_catalog():
    """The standard objects on the quadric: the four exceptional-collection
    generators with their heart shifts, the spinor bundle, and a point."""
    return (
        CatalogObject("O(-1)", line_bundle_ch(-1), 3, True),
        CatalogObject("S(-1)", spinor_ch_minus_one(), 2, True),
        CatalogObject("O", line_bundle_ch(0), 1, True),
        CatalogObject("O(1)", line_bundle_ch(1), 0, True),
        CatalogObject("S", tensor_line(spinor_ch_minus_one(), 1), None, True),
        CatalogObject("k(x)", _skyscraper(), None, False),
    )


def catalog_lookup(label):
    normalized = label.strip().replace(" ", "")
    aliases = {
        "O(-1)": "O(-1)", "O-1": "O(-1)",
        "S(-1)": "S(-1)", "S-1": "S(-1)",
        "O": "O", "O(0)": "O",
        "O(1)": "O(1)", "O1": "O(1)",
        "S": "S",
        "k(x)": "k(x)", "kx": "k(x)", "k": "k(x)",
    }
    key = aliases.get(normalized)
    if key is None:
        return None
    for obj in quadric_catalog():
        if obj.label == key:
            return obj
    return None
