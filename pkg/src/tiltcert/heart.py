"""The exceptional-collection heart as dimension vectors.

The heart is generated by O(-1)[3], S(-1)[2], O[1], O(1); an object is
recorded by its multiplicity vector (a, b, c, d) against those simple
generators.  This module enumerates the subobject candidates for the
skyscraper vector (1, 2, 4, 1) from declarative constraint rules and
reduces them to the two base cases via Im Z dominance.
"""

from dataclasses import dataclass

from .chern import QUADRIC, line_bundle_ch, shift, spinor_ch_minus_one
from .tilt import central_charge

GENERATOR_LABELS = ("O(-1)[3]", "S(-1)[2]", "O[1]", "O(1)")
GENERATOR_SHIFTS = (3, 2, 1, 0)

SUBREGION_LEFT = "alpha<=-beta"
SUBREGION_RIGHT = "alpha>=-beta"
FULL_REGION = "full"


@dataclass(frozen=True)
class DimensionVector:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"component {name} must be a nonnegative integer")

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        return DimensionVector(*(x + y for x, y in zip(self.as_tuple(), other.as_tuple())))

    def to_json(self):
        return list(self.as_tuple())

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise ValueError("dimension vector JSON must be [a, b, c, d]")
        return cls(*(int(x) for x in data))

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.as_tuple()) + ")"


SKYSCRAPER_VECTOR = DimensionVector(1, 2, 4, 1)


def generator_characters(X=QUADRIC):
    """Characters of the four shifted generators, in heart order."""
    plain = (
        line_bundle_ch(-1, X),
        spinor_ch_minus_one(X),
        line_bundle_ch(0, X),
        line_bundle_ch(1, X),
    )
    return tuple(shift(ch, k) for ch, k in zip(plain, GENERATOR_SHIFTS))


def heart_ch(v, X=QUADRIC):
    """Additive extension: -a*ch(O(-1)) + b*ch(S(-1)) - c*ch(O) + d*ch(O(1))."""
    gens = generator_characters(X)
    total = gens[0] * 0
    for mult, ch in zip(v.as_tuple(), gens):
        total = total + mult * ch
    return total


def heart_z(v, p, X=QUADRIC):
    return central_charge(heart_ch(v, X), p, X)


# --- candidate enumeration ---------------------------------------------------
#
# The constraint rules are data so a test can drop one and watch the
# candidate set grow.

@dataclass(frozen=True)
class ComponentBound:
    component: str
    maximum: int


@dataclass(frozen=True)
class ComponentEquals:
    component: str
    value: int


@dataclass(frozen=True)
class ComponentImplication:
    if_component: str
    if_value: int
    then_component: str
    then_value: int


DEFAULT_BOUNDS = tuple(
    ComponentBound(name, getattr(SKYSCRAPER_VECTOR, name)) for name in ("a", "b", "c", "d")
)

DEFAULT_RULES = (
    ComponentEquals("d", 1),
    ComponentEquals("a", 0),
    ComponentImplication("b", 2, "c", 4),
)


@dataclass(frozen=True)
class CandidateSet:
    vectors: tuple
    bases: tuple
    derivation: dict


class DerivationError(ValueError):
    """The supplied sign facts do not cover every candidate on every side."""


def _admits(vec, rules):
    for rule in rules:
        if isinstance(rule, ComponentEquals):
            if getattr(vec, rule.component) != rule.value:
                return False
        elif isinstance(rule, ComponentImplication):
            if getattr(vec, rule.if_component) == rule.if_value:
                if getattr(vec, rule.then_component) != rule.then_value:
                    return False
        else:
            raise TypeError(f"unknown rule {rule!r}")
    return True


def skyscraper_candidates(rules=DEFAULT_RULES, bounds=DEFAULT_BOUNDS):
    """All proper-subobject dimension vectors admitted by the rules."""
    limit = {bound.component: bound.maximum for bound in bounds}
    vectors = []
    for a in range(limit["a"] + 1):
        for b in range(limit["b"] + 1):
            for c in range(limit["c"] + 1):
                for d in range(limit["d"] + 1):
                    vec = DimensionVector(a, b, c, d)
                    if _admits(vec, rules):
                        vectors.append(vec)
    return CandidateSet(vectors=tuple(vectors), bases=(), derivation={})


BASE_VECTORS = (DimensionVector(0, 2, 4, 1), DimensionVector(0, 1, 0, 1))


@dataclass(frozen=True)
class ImSignFact:
    """A certified sign of Im Z for one heart generator on a subregion."""

    generator: str
    subregion: str
    sign: str  # one of <0, <=0, >0, >=0

    def allows_removal(self, subregion):
        return self.sign in ("<0", "<=0") and self.subregion in (FULL_REGION, subregion)

    def allows_addition(self, subregion):
        return self.sign in (">0", ">=0") and self.subregion in (FULL_REGION, subregion)


DEFAULT_SIGN_FACTS = (
    ImSignFact("S(-1)[2]", FULL_REGION, "<0"),
    ImSignFact("O[1]", SUBREGION_LEFT, "<=0"),
    ImSignFact("O[1]", SUBREGION_RIGHT, ">=0"),
)


@dataclass(frozen=True)
class DominanceEdge:
    base: DimensionVector
    delta: tuple  # signed multiplicities against GENERATOR_LABELS
    subregion: str

    def describe(self):
        moves = []
        for label, change in zip(GENERATOR_LABELS, self.delta):
            if change > 0:
                moves.append(f"add {change} x {label}")
            elif change < 0:
                moves.append(f"remove {-change} x {label}")
        action = ", ".join(moves) if moves else "identity"
        return f"{self.base} [{action}] on {self.subregion}"


def _edge_for(vec, base, subregion, facts):
    """Dominance edge base -> vec valid on `subregion`, or None.

    Removing a generator with Im Z <= 0 (or adding one with Im Z >= 0)
    cannot decrease Im Z, so positivity at the base propagates to vec.
    """
    delta = tuple(x - y for x, y in zip(vec.as_tuple(), base.as_tuple()))
    for label, change in zip(GENERATOR_LABELS, delta):
        if change == 0:
            continue
        if change < 0:
            if not any(f.generator == label and f.allows_removal(subregion) for f in facts):
                return None
        else:
            if not any(f.generator == label and f.allows_addition(subregion) for f in facts):
                return None
    return DominanceEdge(base=base, delta=delta, subregion=subregion)


def reduce_candidates(cands, sign_facts=DEFAULT_SIGN_FACTS):
    """Derive every candidate from the base set {(0,2,4,1), (0,1,0,1)}.

    Each non-base vector gets either one edge valid on the full region or
    one edge per subregion of the alpha = -beta split.  Raises
    DerivationError when the supplied facts leave a (vector, subregion)
    pair underived.
    """
    derivation = {}
    missing = []
    for vec in cands.vectors:
        if vec in BASE_VECTORS:
            derivation[vec] = "base"
            continue
        full_edge = None
        for base in BASE_VECTORS:
            full_edge = _edge_for(vec, base, FULL_REGION, sign_facts)
            if full_edge is not None:
                break
        if full_edge is not None:
            derivation[vec] = (full_edge,)
            continue
        edges = []
        for subregion in (SUBREGION_LEFT, SUBREGION_RIGHT):
            edge = None
            for base in BASE_VECTORS:
                edge = _edge_for(vec, base, subregion, sign_facts)
                if edge is not None:
                    break
            if edge is None:
                missing.append((vec, subregion))
            else:
                edges.append(edge)
        derivation[vec] = tuple(edges)
    if missing:
        gaps = "; ".join(f"{vec} on {side}" for vec, side in missing)
        raise DerivationError(f"sign facts do not cover: {gaps}")
    return CandidateSet(vectors=cands.vectors, bases=BASE_VECTORS, derivation=derivation)
