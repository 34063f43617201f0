"""Group elements and enumeration: free groups, SL2(Z), congruence quotients,
direct products, and coset geometry for the subgroups the rest of the package
cares about.

Conventions
-----------
Free-group letters are nonzero signed integers: ``+i`` is the i-th generator,
``-i`` its inverse (1-based, ``i <= rank``).  Words are stored reduced.  The
canonical word order is shortlex with ``a < a^-1 < b < b^-1 < ...``.

Words serialize as strings over ``a..z`` for generators and ``A..Z`` for
inverses ("abA" means a*b*a^-1); integer matrices serialize as row-major
quadruples ``[a, b, c, d]``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import (
    EnumerationTooLarge,
    GroupMismatch,
    Inconclusive,
    InvalidLetter,
)

DEFAULT_ENUMERATION_CAP = 10**6

# ---------------------------------------------------------------------------
# group descriptors


@dataclass(frozen=True)
class FreeGroup:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("free group rank must be >= 1")

    def identity(self) -> "Word":
        return Word(self.rank, ())

    def __str__(self):
        return f"F{self.rank}"


@dataclass(frozen=True)
class SL2ZGroup:
    def identity(self) -> "SL2Matrix":
        return SL2Matrix(1, 0, 0, 1)

    def __str__(self):
        return "SL2Z"


@dataclass(frozen=True)
class QuotientGroup:
    """SL2 over Z/NZ."""

    level: int

    def __post_init__(self):
        if self.level < 2:
            raise ValueError("quotient level must be >= 2")

    def identity(self) -> "QuotientMatrix":
        return QuotientMatrix(self.level, 1, 0, 0, 1)

    def __str__(self):
        return f"SL2Z/{self.level}"


@dataclass(frozen=True)
class ProductGroup:
    left: "Group"
    right: "Group"

    def identity(self) -> "PairElement":
        return PairElement(self.left.identity(), self.right.identity())

    def __str__(self):
        return f"{self.left}x{self.right}"


Group = Union[FreeGroup, SL2ZGroup, QuotientGroup, ProductGroup]

SL2Z = SL2ZGroup()


# ---------------------------------------------------------------------------
# elements


def _letter_code(letter: int) -> int:
    # shortlex letter key: a < a^-1 < b < b^-1 < ...
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


def _reduce_letters(letters: Iterable[int]) -> tuple:
    out = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A reduced word in the free group of the given rank."""

    rank: int
    letters: tuple = ()

    def __post_init__(self):
        for l in self.letters:
            if not isinstance(l, int) or l == 0 or abs(l) > self.rank:
                raise InvalidLetter(f"letter {l!r} outside rank-{self.rank} alphabet")
        reduced = _reduce_letters(self.letters)
        if reduced != tuple(self.letters):
            raise ValueError("Word requires reduced letters; use reduce_word")

    @property
    def group(self) -> FreeGroup:
        return FreeGroup(self.rank)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if other.rank != self.rank:
            raise GroupMismatch(f"rank {self.rank} vs {other.rank}")
        return Word(self.rank, _reduce_letters(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-l for l in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        result = Word(self.rank, ())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return not self.letters

    def shortlex_key(self):
        return (len(self.letters), tuple(_letter_code(l) for l in self.letters))

    def __str__(self):
        return word_to_str(self)

    def __repr__(self):
        return f"Word({self.rank}, {word_to_str(self) or 'e'!r})"


def reduce_word(letters: Iterable[int], rank: int) -> Word:
    """Freely reduce a raw letter sequence into the unique reduced word."""
    letters = tuple(letters)
    for l in letters:
        if not isinstance(l, int) or l == 0 or abs(l) > rank:
            raise InvalidLetter(f"letter {l!r} outside rank-{rank} alphabet")
    return Word(rank, _reduce_letters(letters))


def word_to_str(w: Word) -> str:
    if w.rank > 26:
        raise InvalidLetter("string form only covers ranks up to 26")
    out = []
    for l in w.letters:
        ch = string.ascii_lowercase[abs(l) - 1]
        out.append(ch if l > 0 else ch.upper())
    return "".join(out)


def word_from_str(s: str, rank: int) -> Word:
    letters = []
    for ch in s:
        if ch in string.ascii_lowercase:
            letters.append(ord(ch) - ord("a") + 1)
        elif ch in string.ascii_uppercase:
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise InvalidLetter(f"bad word character {ch!r}")
    return reduce_word(letters, rank)


def free_generator(rank: int, i: int) -> Word:
    return Word(rank, (i,))


def word_length(w: Word) -> int:
    return len(w.letters)


@dataclass(frozen=True)
class SL2Matrix:
    """An element of SL2(Z); entries are exact arbitrary-precision ints."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant must be 1, got {self.entries()}")

    @property
    def group(self) -> SL2ZGroup:
        return SL2Z

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "SL2Matrix") -> "SL2Matrix":
        if not isinstance(other, SL2Matrix):
            return NotImplemented
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "SL2Matrix":
        if n < 0:
            return self.inverse() ** (-n)
        result = SL2Matrix(1, 0, 0, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return self.entries() == (1, 0, 0, 1)

    def mod(self, level: int) -> "QuotientMatrix":
        return QuotientMatrix(
            level, self.a % level, self.b % level, self.c % level, self.d % level
        )

    def __repr__(self):
        return f"SL2Matrix{self.entries()}"


T_GEN = SL2Matrix(1, 1, 0, 1)
S_GEN = SL2Matrix(0, -1, 1, 0)

SANOV_A = SL2Matrix(1, 2, 0, 1)
SANOV_B = SL2Matrix(1, 0, 2, 1)


@dataclass(frozen=True)
class QuotientMatrix:
    """An element of SL2(Z/NZ); entries are residues in [0, N)."""

    level: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        n = self.level
        if n < 2:
            raise ValueError("level must be >= 2")
        for x in (self.a, self.b, self.c, self.d):
            if not 0 <= x < n:
                raise ValueError(f"entry {x} not reduced mod {n}")
        if (self.a * self.d - self.b * self.c) % n != 1:
            raise ValueError("determinant must be 1 mod level")

    @property
    def group(self) -> QuotientGroup:
        return QuotientGroup(self.level)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "QuotientMatrix") -> "QuotientMatrix":
        if not isinstance(other, QuotientMatrix):
            return NotImplemented
        if other.level != self.level:
            raise GroupMismatch(f"level {self.level} vs {other.level}")
        n = self.level
        return QuotientMatrix(
            n,
            (self.a * other.a + self.b * other.c) % n,
            (self.a * other.b + self.b * other.d) % n,
            (self.c * other.a + self.d * other.c) % n,
            (self.c * other.b + self.d * other.d) % n,
        )

    def inverse(self) -> "QuotientMatrix":
        # det = 1 mod N, so the adjugate is the inverse
        n = self.level
        return QuotientMatrix(n, self.d % n, -self.b % n, -self.c % n, self.a % n)

    def __pow__(self, n: int) -> "QuotientMatrix":
        if n < 0:
            return self.inverse() ** (-n)
        result = QuotientGroup(self.level).identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return self.entries() == (1, 0, 0, 1)

    def __repr__(self):
        return f"QuotientMatrix(N={self.level}, {self.entries()})"


@dataclass(frozen=True)
class PairElement:
    """An element of a direct product H x K."""

    left: object
    right: object

    @property
    def group(self) -> ProductGroup:
        return ProductGroup(self.left.group, self.right.group)

    def __mul__(self, other: "PairElement") -> "PairElement":
        if not isinstance(other, PairElement):
            return NotImplemented
        return PairElement(self.left * other.left, self.right * other.right)

    def inverse(self) -> "PairElement":
        return PairElement(self.left.inverse(), self.right.inverse())

    def is_identity(self) -> bool:
        return self.left.is_identity() and self.right.is_identity()


GroupElement = Union[Word, SL2Matrix, QuotientMatrix, PairElement]


def group_of(elt: GroupElement) -> Group:
    return elt.group


# ---------------------------------------------------------------------------
# spheres and balls


def sphere_size(rank: int, radius: int) -> int:
    """|W_k| = 2d(2d-1)^(k-1) for k >= 1, 1 for k = 0."""
    if radius == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (radius - 1)


def _extend_sphere(rank: int, words: list) -> list:
    # children appended in letter-code order keep shortlex sortedness
    alphabet = [l for i in range(1, rank + 1) for l in (i, -i)]
    out = []
    for w in words:
        last = w[-1] if w else 0
        for l in alphabet:
            if l != -last:
                out.append(w + (l,))
    return out


def sphere(rank: int, radius: int, cap: int = DEFAULT_ENUMERATION_CAP):
    """All reduced words of length exactly ``radius``, shortlex-sorted.

    Returns ``(words, count)``.  Raises EnumerationTooLarge (carrying the
    formula count) when the sphere would exceed ``cap``.
    """
    if rank < 1 or radius < 0:
        raise ValueError("need rank >= 1 and radius >= 0")
    count = sphere_size(rank, radius)
    if count > cap:
        raise EnumerationTooLarge(
            f"sphere({rank},{radius}) has {count} words (cap {cap})", count=count
        )
    words = [()]
    for _ in range(radius):
        words = _extend_sphere(rank, words)
    return [Word(rank, w) for w in words], count


def ball(rank: int, radius: int, cap: int = DEFAULT_ENUMERATION_CAP):
    """All reduced words of length <= radius, shortlex-sorted."""
    total = sum(sphere_size(rank, k) for k in range(radius + 1))
    if total > cap:
        raise EnumerationTooLarge(f"ball({rank},{radius}) has {total} words", count=total)
    out = []
    words = [()]
    out.extend(words)
    for _ in range(radius):
        words = _extend_sphere(rank, words)
        out.extend(words)
    return [Word(rank, w) for w in out]


# ---------------------------------------------------------------------------
# Sanov subgroup and SL2(Z) words

_SANOV_GENS = {1: SANOV_A, -1: SANOV_A.inverse(), 2: SANOV_B, -2: SANOV_B.inverse()}


def sanov_embed(w: Word) -> SL2Matrix:
    """Image of a rank-2 word under a -> [[1,2],[0,1]], b -> [[1,0],[2,1]]."""
    if w.rank != 2:
        raise GroupMismatch("sanov_embed expects a rank-2 word")
    m = SL2Matrix(1, 0, 0, 1)
    for l in w.letters:
        m = m * _SANOV_GENS[l]
    return m


def _congruence_level2(m: SL2Matrix) -> bool:
    return m.a % 2 == 1 and m.d % 2 == 1 and m.b % 2 == 0 and m.c % 2 == 0


def sanov_coordinates(m: SL2Matrix) -> Optional[Word]:
    """Express ``m`` as a rank-2 word in the Sanov generators, or None.

    Works by the Euclidean peeling of left factors A^k (row1 -= 2k*row2) and
    B^k (row2 -= 2k*row1) inside the level-2 congruence subgroup; the sign of
    the reconstructed product distinguishes the Sanov subgroup from its coset
    by -I.
    """
    if not _congruence_level2(m):
        return None
    a, b, c, d = m.entries()
    letters = []
    while c != 0:
        if abs(a) > abs(c):
            # strip A^k: choose k with |a - 2kc| < |c| (unique: a odd, c even)
            r = a % (2 * abs(c))
            if r > abs(c):
                r -= 2 * abs(c)
            k = (a - r) // (2 * c)
            letters.extend([1] * k if k > 0 else [-1] * (-k))
            a, b = a - 2 * k * c, b - 2 * k * d
        else:
            r = c % (2 * abs(a))
            if r > abs(a):
                r -= 2 * abs(a)
            k = (c - r) // (2 * a)
            letters.extend([2] * k if k > 0 else [-2] * (-k))
            c, d = c - 2 * k * a, d - 2 * k * b
    # now the remainder is [[a, b], [0, a]] with a = +-1 and b even
    if b != 0:
        k = (a * b) // 2
        letters.extend([1] * k if k > 0 else [-1] * (-k))
    word = reduce_word(letters, 2)
    return word if sanov_embed(word) == m else None


def sl2z_generator_words(m: SL2Matrix) -> list:
    """Decompose ``m`` into a word in t = [[1,1],[0,1]] and s = [[0,-1],[1,0]].

    Returns a list of ("t"|"s", exponent) pairs whose ordered product is
    exactly ``m`` (continued-fraction algorithm; s has order 4).
    """
    word = []
    a, b, c, d = m.entries()
    while c != 0:
        # m = t^q * s * m' with m' = s^-1 t^-q m; nearest-integer division
        # keeps |new c| <= |c| / 2 (exact rational rounding, entries can be huge)
        q = round(Fraction(a, c))
        a1, b1 = a - q * c, b - q * d
        if q != 0:
            word.append(("t", q))
        word.append(("s", 1))
        a, b, c, d = c, d, -a1, -b1
    if a == 1:
        if b != 0:
            word.append(("t", b))
    else:
        # [[-1, b], [0, -1]] = s^2 * t^(-b)
        word.append(("s", 2))
        if b != 0:
            word.append(("t", -b))
    return word


# ---------------------------------------------------------------------------
# subgroup specs


@dataclass(frozen=True)
class FreeFactor:
    """F_{rank} sitting inside a larger free group on a generator prefix."""

    rank: int


@dataclass(frozen=True)
class CyclicGen:
    """The cyclic subgroup generated by one word."""

    generator: Word


@dataclass(frozen=True)
class Sanov:
    """The free rank-2 subgroup of SL2(Z) generated by [[1,2],[0,1]], [[1,0],[2,1]]."""


@dataclass(frozen=True)
class Congruence:
    """The principal congruence subgroup, kernel of reduction mod ``level``."""

    level: int


SubgroupSpec = Union[FreeFactor, CyclicGen, Sanov, Congruence]


def _cyclic_parts(w: Word):
    # w = u * v * u^-1 with v cyclically reduced
    letters = list(w.letters)
    u = []
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        u.append(letters[0])
        letters = letters[1:-1]
    return tuple(u), tuple(letters)


def _as_power(s: Word, w: Word) -> Optional[int]:
    """Return k with s == w^k, or None."""
    if w.is_identity():
        return 0 if s.is_identity() else None
    if s.is_identity():
        return 0
    u, v = _cyclic_parts(w)
    if not v:
        return 0 if s.is_identity() else None
    # s = u v^k u^-1 forces |s| >= k|v| - 2|u|
    kmax = (len(s) + 2 * len(u)) // len(v) + 1
    for k in range(1, kmax + 1):
        p = w**k
        if p == s:
            return k
        if p.inverse() == s:
            return -k
        if len(p) > len(s) + 2 * len(u):
            break
    return None


def intrinsic_group(spec: SubgroupSpec, ambient: Group) -> Group:
    """The group in whose coordinates subgroup elements are expressed."""
    if isinstance(spec, FreeFactor):
        return FreeGroup(spec.rank)
    if isinstance(spec, CyclicGen):
        return FreeGroup(1)
    if isinstance(spec, Sanov):
        return FreeGroup(2)
    if isinstance(spec, Congruence):
        return SL2Z
    raise TypeError(f"unknown subgroup spec {spec!r}")


def subgroup_coordinates(spec: SubgroupSpec, ambient: Group, elt: GroupElement):
    """Coordinates of ``elt`` in the subgroup's intrinsic group, or None."""
    if isinstance(spec, FreeFactor):
        if not isinstance(elt, Word):
            raise GroupMismatch("FreeFactor lives in a free group")
        if spec.rank > elt.rank:
            raise ValueError("free factor rank exceeds ambient rank")
        if all(abs(l) <= spec.rank for l in elt.letters):
            return Word(spec.rank, elt.letters)
        return None
    if isinstance(spec, CyclicGen):
        if not isinstance(elt, Word):
            raise GroupMismatch("CyclicGen lives in a free group")
        k = _as_power(elt, spec.generator)
        if k is None:
            return None
        return Word(1, (1,) * k if k >= 0 else (-1,) * (-k))
    if isinstance(spec, Sanov):
        if not isinstance(elt, SL2Matrix):
            raise GroupMismatch("Sanov lives in SL2(Z)")
        return sanov_coordinates(elt)
    if isinstance(spec, Congruence):
        if not isinstance(elt, SL2Matrix):
            raise GroupMismatch("Congruence lives in SL2(Z)")
        return elt if elt.mod(spec.level).is_identity() else None
    raise TypeError(f"unknown subgroup spec {spec!r}")


def subgroup_contains(spec: SubgroupSpec, ambient: Group, elt: GroupElement) -> bool:
    return subgroup_coordinates(spec, ambient, elt) is not None


def subgroup_embed(spec: SubgroupSpec, ambient: Group, coords: GroupElement):
    """Inverse of subgroup_coordinates: intrinsic coordinates -> ambient element."""
    if isinstance(spec, FreeFactor):
        return Word(ambient.rank, coords.letters)
    if isinstance(spec, CyclicGen):
        k = sum(1 if l > 0 else -1 for l in coords.letters)
        return spec.generator**k
    if isinstance(spec, Sanov):
        return sanov_embed(coords)
    if isinstance(spec, Congruence):
        return coords
    raise TypeError(f"unknown subgroup spec {spec!r}")


def coset_canonical(spec: SubgroupSpec, ambient: Group, elt: GroupElement):
    """Shortlex-least representative of the left coset ``elt * H``."""
    if isinstance(spec, FreeFactor):
        letters = list(elt.letters)
        while letters and abs(letters[-1]) <= spec.rank:
            letters.pop()
        return Word(elt.rank, tuple(letters))
    if isinstance(spec, CyclicGen):
        w = spec.generator
        if w.is_identity():
            return elt
        u, v = _cyclic_parts(w)
        # |elt * w^k| >= |k||v| - |elt| - 2|u|, so only a bounded window of
        # powers can be at most as short as elt itself
        kmax = (2 * len(elt) + 2 * len(u)) // max(len(v), 1) + 2
        best = elt
        for k in range(-kmax, kmax + 1):
            cand = elt * (w**k)
            if cand.shortlex_key() < best.shortlex_key():
                best = cand
        return best
    raise TypeError(f"no canonical coset form for {spec!r}")


# ---------------------------------------------------------------------------
# congruence quotient enumeration


@dataclass(frozen=True)
class QuotientEnumeration:
    level: int
    elements: tuple
    order: int
    generator_images: dict = field(hash=False)
    index: dict = field(hash=False)
    # per element: (parent index, generator name, exponent); identity has None
    parents: tuple = field(hash=False, default=())

    def index_of(self, q: QuotientMatrix) -> int:
        return self.index[q.entries()]

    def word_for(self, q: QuotientMatrix) -> list:
        """A word in ("t"|"s", +-1) letters multiplying to ``q``."""
        out = []
        i = self.index_of(q)
        while self.parents[i] is not None:
            parent, name, exp = self.parents[i]
            out.append((name, exp))
            i = parent
        out.reverse()
        return out


def quotient_order_formula(level: int) -> int:
    """|SL2(Z/NZ)| = N^3 * prod over primes p | N of (1 - p^-2)."""
    n = level
    order = n**3
    m, p = n, 2
    seen = set()
    while p * p <= m:
        if m % p == 0:
            seen.add(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        seen.add(m)
    for p in seen:
        order = order * (p * p - 1) // (p * p)
    return order


@lru_cache(maxsize=None)
def enumerate_quotient(level: int, cap: int = DEFAULT_ENUMERATION_CAP) -> QuotientEnumeration:
    """BFS closure of SL2(Z/NZ) from the images of t and s.

    Returns the element list (BFS order, identity first), the group order,
    and the generator images.
    """
    if level < 2:
        raise ValueError("level must be >= 2")
    if quotient_order_formula(level) > cap:
        raise EnumerationTooLarge(
            f"SL2(Z/{level}) has order {quotient_order_formula(level)} (cap {cap})",
            count=quotient_order_formula(level),
        )
    t_img = T_GEN.mod(level)
    s_img = S_GEN.mod(level)
    gens = [("t", 1, t_img), ("t", -1, t_img.inverse()), ("s", 1, s_img), ("s", -1, s_img.inverse())]
    ident = QuotientGroup(level).identity()
    elements = [ident]
    parents = [None]
    index = {ident.entries(): 0}
    head = 0
    while head < len(elements):
        current = elements[head]
        for name, exp, g in gens:
            nxt = current * g  # append on the right; BFS words read left to right
            key = nxt.entries()
            if key not in index:
                index[key] = len(elements)
                elements.append(nxt)
                parents.append((head, name, exp))
        head += 1
    return QuotientEnumeration(
        level=level,
        elements=tuple(elements),
        order=len(elements),
        generator_images={"t": t_img, "s": s_img},
        index=index,
        parents=tuple(parents),
    )


# ---------------------------------------------------------------------------
# generator words for elements (used to evaluate representations)


def generator_names(group: Group) -> list:
    if isinstance(group, FreeGroup):
        if group.rank > 26:
            raise InvalidLetter("generator names only cover ranks up to 26")
        return list(string.ascii_lowercase[: group.rank])
    if isinstance(group, (SL2ZGroup, QuotientGroup)):
        return ["t", "s"]
    raise TypeError(f"no named generators for {group!r}")


def generator_words(elt: GroupElement) -> list:
    """Express an element as a list of (generator name, exponent) pairs."""
    if isinstance(elt, Word):
        return [(string.ascii_lowercase[abs(l) - 1], 1 if l > 0 else -1) for l in elt.letters]
    if isinstance(elt, SL2Matrix):
        return sl2z_generator_words(elt)
    if isinstance(elt, QuotientMatrix):
        return enumerate_quotient(elt.level).word_for(elt)
    raise TypeError(f"no generator words for {elt!r}")


# ---------------------------------------------------------------------------
# coset tables


@dataclass
class CosetTable:
    """Left cosets of a designated subgroup with the generator action.

    ``index`` is None for subgroups of infinite index, in which case
    ``section`` lists the first representatives found up to the exploration
    bound and ``action`` is partial (pairs mapping outside the section are
    omitted).
    """

    subgroup: SubgroupSpec
    ambient: Group
    section: list
    index: Optional[int]
    action: dict  # (generator name, coset index) -> coset index

    def is_finite(self) -> bool:
        return self.index is not None

    def permutation(self, name: str) -> list:
        if not self.is_finite():
            raise Inconclusive("no full permutation action at infinite index")
        return [self.action[(name, i)] for i in range(self.index)]


def _ambient_generators(group: Group) -> list:
    if isinstance(group, FreeGroup):
        names = generator_names(group)
        out = []
        for i, name in enumerate(names, start=1):
            out.append((name, Word(group.rank, (i,))))
            out.append((name.upper(), Word(group.rank, (-i,))))
        return out
    if isinstance(group, SL2ZGroup):
        return [("t", T_GEN), ("T", T_GEN.inverse()), ("s", S_GEN), ("S", S_GEN.inverse())]
    raise TypeError(f"coset tables not supported over {group!r}")


def _known_infinite_index(spec: SubgroupSpec, ambient: Group) -> bool:
    if isinstance(spec, FreeFactor) and isinstance(ambient, FreeGroup):
        return spec.rank < ambient.rank
    if isinstance(spec, CyclicGen) and isinstance(ambient, FreeGroup):
        # a single word generates a finite-index subgroup only in F_1
        return ambient.rank >= 2 or spec.generator.is_identity()
    return False


def coset_table(ambient: Group, spec: SubgroupSpec, bound: int = 10**4) -> CosetTable:
    """BFS over left cosets, identity coset first, shortlex-least representatives.

    Finite-index subgroups (Sanov, Congruence, FreeFactor of full rank) close
    with a complete permutation action.  For known infinite-index subgroups the
    section is enumerated up to ``bound`` cosets.  Anything else that fails to
    close within ``bound`` raises Inconclusive.
    """
    gens = _ambient_generators(ambient)

    if isinstance(spec, (FreeFactor, CyclicGen)):
        canon = lambda g: coset_canonical(spec, ambient, g)
    elif isinstance(spec, Sanov):
        canon = None
    elif isinstance(spec, Congruence):
        canon = lambda g: g.mod(spec.level).entries()
    else:
        raise TypeError(f"unknown subgroup spec {spec!r}")

    identity = ambient.identity()
    section = [identity]
    keys = {}

    def key_of(g):
        return canon(g) if canon is not None else None

    def find_coset(g) -> Optional[int]:
        if canon is not None:
            return keys.get(key_of(g))
        # membership-based scan (Sanov): same coset iff r^-1 g in H
        for i, r in enumerate(section):
            if subgroup_contains(spec, ambient, r.inverse() * g):
                return i
        return None

    if canon is not None:
        keys[key_of(identity)] = 0
    action = {}
    head = 0
    while head < len(section):
        r = section[head]
        for name, g in gens:
            target = g * r
            j = find_coset(target)
            if j is None:
                if len(section) >= bound:
                    if _known_infinite_index(spec, ambient):
                        return CosetTable(spec, ambient, section, None, action)
                    raise Inconclusive(
                        f"coset exploration exceeded bound {bound} without closure"
                    )
                j = len(section)
                section.append(target if canon is None else _shortlex_rep(spec, ambient, target))
                if canon is not None:
                    keys[key_of(target)] = j
            action[(name, head)] = j
        head += 1
    return CosetTable(spec, ambient, section, len(section), action)


def _shortlex_rep(spec: SubgroupSpec, ambient: Group, g):
    if isinstance(spec, (FreeFactor, CyclicGen)):
        return coset_canonical(spec, ambient, g)
    return g
