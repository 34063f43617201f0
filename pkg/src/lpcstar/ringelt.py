"""The *-algebra of finitely supported complex functions on a group.

Coefficients are complex numbers with exact rational real and imaginary
parts, so convolution, involution, and the ring axioms hold exactly; floats
only appear when a numeric layer asks for them (``l1_norm``,
``to_complex_items``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import hypot
from typing import Union

from . import groups
from .errors import GroupMismatch


@dataclass(frozen=True)
class RationalComplex:
    """A complex number with exact rational real/imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "RationalComplex":
        return RationalComplex(-self.re, -self.im)

    def conjugate(self) -> "RationalComplex":
        return RationalComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def abs_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return hypot(float(self.re), float(self.im))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


Scalar = Union[int, Fraction, float, complex, RationalComplex]


def as_coeff(value: Scalar) -> RationalComplex:
    """Coerce a scalar to an exact coefficient.

    Floats convert by their exact binary value; complex converts both parts.
    """
    if isinstance(value, RationalComplex):
        return value
    if isinstance(value, complex):
        return RationalComplex(Fraction(value.real), Fraction(value.imag))
    return RationalComplex(Fraction(value))


ONE = RationalComplex(Fraction(1))


class GroupRingElement:
    """A finitely supported function group -> C with convolution product."""

    __slots__ = ("group", "_terms")

    def __init__(self, group, terms=None):
        self.group = group
        clean = {}
        for elt, coeff in (terms or {}).items():
            coeff = as_coeff(coeff)
            if not coeff.is_zero():
                clean[elt] = coeff
        self._terms = clean

    @classmethod
    def zero(cls, group) -> "GroupRingElement":
        return cls(group, {})

    @classmethod
    def delta(cls, elt, coeff: Scalar = 1) -> "GroupRingElement":
        return cls(groups.group_of(elt), {elt: coeff})

    def coeff(self, elt) -> RationalComplex:
        return self._terms.get(elt, RationalComplex())

    def support(self):
        return self._terms.keys()

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check_group(self, other: "GroupRingElement"):
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_group(other)
        terms = dict(self._terms)
        for elt, c in other._terms.items():
            terms[elt] = terms.get(elt, RationalComplex()) + c
        return GroupRingElement(self.group, terms)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, {e: -c for e, c in self._terms.items()})

    def scale(self, scalar: Scalar) -> "GroupRingElement":
        s = as_coeff(scalar)
        return GroupRingElement(self.group, {e: c * s for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, scalar: Scalar) -> "GroupRingElement":
        return self.scale(scalar)

    def star(self) -> "GroupRingElement":
        """Involution: x*(s) = conj(x(s^-1))."""
        return GroupRingElement(
            self.group, {e.inverse(): c.conjugate() for e, c in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupRingElement)
            and self.group == other.group
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.group, frozenset(self._terms.items())))

    def to_complex_items(self):
        """Support with coefficients as machine complex numbers."""
        return [(e, c.to_complex()) for e, c in self._terms.items()]

    def __repr__(self):
        if not self._terms:
            return f"GroupRingElement({self.group}, 0)"
        parts = [f"({c.re}+{c.im}i)*d[{e}]" for e, c in list(self._terms.items())[:6]]
        more = " + ..." if len(self._terms) > 6 else ""
        return "GroupRingElement(" + " + ".join(parts) + more + ")"


def convolve(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    """(x*y)(s) = sum over t of x(t) y(t^-1 s)."""
    x._check_group(y)
    terms = {}
    for ex, cx in x.items():
        for ey, cy in y.items():
            key = ex * ey
            c = cx * cy
            if key in terms:
                terms[key] = terms[key] + c
            else:
                terms[key] = c
    return GroupRingElement(x.group, terms)


def involution(x: GroupRingElement) -> GroupRingElement:
    return x.star()


def l1_norm(x: GroupRingElement) -> float:
    """Sum of absolute values of the coefficients.

    Every unitary representation satisfies |pi(x)| <= l1_norm(x), which is
    what caps all seminorm intervals.
    """
    return sum(abs(c) for _, c in x.items())


def symmetric_generator_element(group) -> GroupRingElement:
    """Sum of generators and their inverses (the random-walk element h)."""
    if isinstance(group, groups.FreeGroup):
        terms = {}
        for i in range(1, group.rank + 1):
            terms[groups.Word(group.rank, (i,))] = ONE
            terms[groups.Word(group.rank, (-i,))] = ONE
        return GroupRingElement(group, terms)
    if isinstance(group, groups.SL2ZGroup):
        return GroupRingElement(
            group,
            {
                groups.T_GEN: ONE,
                groups.T_GEN.inverse(): ONE,
                groups.S_GEN: ONE,
                groups.S_GEN.inverse(): ONE,
            },
        )
    raise TypeError(f"no canonical generating set for {group!r}")


# ---------------------------------------------------------------------------
# JSON serialization


def _group_to_str(group) -> str:
    return str(group)


def _group_from_str(s: str):
    if "x" in s:
        left, right = s.split("x", 1)
        return groups.ProductGroup(_group_from_str(left), _group_from_str(right))
    if s == "SL2Z":
        return groups.SL2Z
    if s.startswith("SL2Z/"):
        return groups.QuotientGroup(int(s.split("/", 1)[1]))
    if s.startswith("F"):
        return groups.FreeGroup(int(s[1:]))
    raise ValueError(f"unknown group descriptor {s!r}")


def _elt_to_json(elt):
    if isinstance(elt, groups.Word):
        return groups.word_to_str(elt)
    if isinstance(elt, (groups.SL2Matrix, groups.QuotientMatrix)):
        return list(elt.entries())
    if isinstance(elt, groups.PairElement):
        return [_elt_to_json(elt.left), _elt_to_json(elt.right)]
    raise TypeError(f"cannot serialize {elt!r}")


def _elt_from_json(data, group):
    if isinstance(group, groups.FreeGroup):
        return groups.word_from_str(data, group.rank)
    if isinstance(group, groups.SL2ZGroup):
        return groups.SL2Matrix(*data)
    if isinstance(group, groups.QuotientGroup):
        return groups.QuotientMatrix(group.level, *data)
    if isinstance(group, groups.ProductGroup):
        return groups.PairElement(
            _elt_from_json(data[0], group.left), _elt_from_json(data[1], group.right)
        )
    raise TypeError(f"cannot deserialize into {group!r}")


def to_json_dict(x: GroupRingElement) -> dict:
    terms = [
        {"elt": _elt_to_json(e), "re": str(c.re), "im": str(c.im)}
        for e, c in sorted(x.items(), key=lambda item: repr(item[0]))
    ]
    return {"group": _group_to_str(x.group), "terms": terms}


def from_json_dict(data: dict) -> GroupRingElement:
    group = _group_from_str(data["group"])
    terms = {}
    for entry in data["terms"]:
        elt = _elt_from_json(entry["elt"], group)
        coeff = RationalComplex(Fraction(entry["re"]), Fraction(entry["im"]))
        terms[elt] = terms.get(elt, RationalComplex()) + coeff
    return GroupRingElement(group, terms)


def to_json(x: GroupRingElement) -> str:
    return json.dumps(to_json_dict(x), sort_keys=True)


def from_json(s: str) -> GroupRingElement:
    return from_json_dict(json.loads(s))
