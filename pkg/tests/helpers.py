"""Independent brute-force oracles shared by the test modules.

Everything here is deliberately naive: repeated-scan reduction, exhaustive
letter-tuple enumeration, double-loop convolution.  The point is that none of
it shares code paths with the package.
"""

import itertools
from fractions import Fraction

from lpcstar import groups
from lpcstar.ringelt import GroupRingElement, RationalComplex


def brute_reduce(letters):
    """Repeatedly scan for adjacent cancelling pairs until none remain."""
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i] == -letters[i + 1]:
                del letters[i : i + 2]
                changed = True
                break
    return tuple(letters)


def brute_sphere(rank, radius):
    """All reduced words of length radius via exhaustive tuple enumeration.

    Only feasible for tiny radius; complements the package's extension-based
    enumerator.
    """
    alphabet = [l for i in range(1, rank + 1) for l in (i, -i)]
    out = set()
    for tup in itertools.product(alphabet, repeat=radius):
        if brute_reduce(tup) == tup:
            out.add(tup)
    return out


def brute_convolve(x, y):
    """Double-loop convolution collecting coefficients by product element."""
    acc = {}
    for ex, cx in x.items():
        for ey, cy in y.items():
            key = ex * ey
            acc[key] = acc.get(key, RationalComplex()) + cx * cy
    return GroupRingElement(x.group, acc)


def random_word(rng, rank, max_len):
    n = int(rng.integers(0, max_len + 1))
    letters = [int(rng.integers(1, rank + 1)) * int(rng.choice([1, -1])) for _ in range(n)]
    return groups.reduce_word(letters, rank)


def random_ring_element(rng, group, elements, max_terms=4):
    """Random element with small exact rational coefficients."""
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        elt = elements[int(rng.integers(0, len(elements)))]
        coeff = RationalComplex(
            Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))),
            Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))),
        )
        terms[elt] = coeff
    return GroupRingElement(group, terms)
