"""Positive definite function families and their summability certificates.

The families are symbolic (evaluable at any group element); certification
returns closed forms where the geometry gives one, otherwise partial sums
with explicit geometric tail bounds.  ``Inconclusive`` is a first-class
outcome: no certificate is ever fabricated.

Threshold conventions for the exponential family alpha^|s| on a free group
F_d: lp summability is strict (alpha < (2d-1)^(-1/p), the geometric series
diverges at equality), while the sphere-cutoff state-extension test passes at
equality.  Floating-point inputs within BOUNDARY_RTOL of the threshold are
treated as sitting exactly on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import groups
from .errors import (
    EnumerationTooLarge,
    GroupMismatch,
    MissingCertificate,
    NotNormalized,
)

BOUNDARY_RTOL = 1e-12

SUMMABLE = "summable"
NOT_SUMMABLE = "not-summable"
INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Haagerup:
    """s -> alpha^|s| on a free group; |s| is the reduced word length."""

    alpha: float
    rank: int

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie strictly inside (0, 1)")
        if self.rank < 1:
            raise ValueError("rank must be >= 1")

    @property
    def ambient(self):
        return groups.FreeGroup(self.rank)


@dataclass(frozen=True)
class PointMass:
    """The delta function at the identity."""

    group: groups.Group

    @property
    def ambient(self):
        return self.group


@dataclass(frozen=True)
class ZeroExtension:
    """Extend a function on a subgroup by zero off the subgroup."""

    inner: "PosDefFamily"
    subgroup: groups.SubgroupSpec
    group: groups.Group

    @property
    def ambient(self):
        return self.group


@dataclass(frozen=True)
class GnsCoefficient:
    """s -> base(v^-1 s u): the coefficient of the cyclic vector translated
    by u and v in the representation generated by ``base``."""

    base: "PosDefFamily"
    u: groups.GroupElement
    v: groups.GroupElement

    @property
    def ambient(self):
        return self.base.ambient


@dataclass(frozen=True)
class CutoffProduct:
    """``base`` multiplied by the indicator of a finite union of left cosets.

    Representatives are stored in coset-canonical form so membership is a
    plain equality test.
    """

    base: "PosDefFamily"
    subgroup: groups.SubgroupSpec
    reps: tuple

    @property
    def ambient(self):
        return self.base.ambient


PosDefFamily = Union[Haagerup, PointMass, ZeroExtension, GnsCoefficient, CutoffProduct]


@dataclass(frozen=True)
class DpSpec:
    """Membership problem: restrictions to all double cosets of H are lp."""

    subgroup: groups.SubgroupSpec
    p: float

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")


# ---------------------------------------------------------------------------
# evaluation


def eval_posdef(family, s: groups.GroupElement):
    """Evaluate a family at a group element."""
    if isinstance(family, Haagerup):
        if not isinstance(s, groups.Word) or s.rank != family.rank:
            raise GroupMismatch(f"{s!r} not in {family.ambient}")
        return family.alpha ** len(s)
    if isinstance(family, PointMass):
        if groups.group_of(s) != family.group:
            raise GroupMismatch(f"{s!r} not in {family.group}")
        return 1.0 if s.is_identity() else 0.0
    if isinstance(family, ZeroExtension):
        if groups.group_of(s) != family.group:
            raise GroupMismatch(f"{s!r} not in {family.group}")
        coords = groups.subgroup_coordinates(family.subgroup, family.group, s)
        if coords is None:
            return 0.0
        return eval_posdef(family.inner, coords)
    if isinstance(family, GnsCoefficient):
        return eval_posdef(family.base, family.v.inverse() * s * family.u)
    if isinstance(family, CutoffProduct):
        canon = groups.coset_canonical(family.subgroup, family.ambient, s)
        if canon not in family.reps:
            return 0.0
        return eval_posdef(family.base, s)
    raise TypeError(f"not a positive definite family: {family!r}")


def zero_extend(inner, subgroup: groups.SubgroupSpec, ambient: groups.Group) -> ZeroExtension:
    """Extend ``inner`` (living on the subgroup's intrinsic group) by zero."""
    intrinsic = groups.intrinsic_group(subgroup, ambient)
    if inner.ambient != intrinsic:
        raise GroupMismatch(
            f"inner family lives on {inner.ambient}, subgroup coordinates are {intrinsic}"
        )
    return ZeroExtension(inner, subgroup, ambient)


# ---------------------------------------------------------------------------
# lp certificates


@dataclass(frozen=True)
class LpCertificate:
    p: float
    decision: str
    closed_form: Optional[float]
    partial_sum: float
    tail_bound: float
    enumeration_radius: int
    # positive lower bound on the per-sphere contributions when divergent
    sphere_lower_bound: Optional[float] = None

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "decision": self.decision,
            "closed_form": self.closed_form,
            "partial_sum": self.partial_sum,
            "tail_bound": self.tail_bound,
            "enumeration_radius": self.enumeration_radius,
            "sphere_lower_bound": self.sphere_lower_bound,
        }


def haagerup_threshold(rank: int, p: float) -> float:
    """The alpha below which sum over F_d of alpha^(p|s|) converges."""
    return float((2 * rank - 1) ** (-1.0 / p))


def haagerup_sum_closed(alpha: float, p: float, rank: int) -> float:
    """Sum over F_d of alpha^(p|s|) = 1 + 2d a^p / (1 - (2d-1) a^p)."""
    ap = alpha**p
    t = (2 * rank - 1) * ap
    return 1.0 + 2 * rank * ap / (1.0 - t)

def _haagerup_partial_and_tail(alpha: float, p: float, rank: int, radius: int):
    """Radial partial sum over the ball of the given radius plus exact tail."""
    ap = alpha**p
    t = (2 * rank - 1) * ap
    partial = 1.0
    term = 2 * rank * ap
    for _ in range(radius):
        partial += term
        term *= t
    tail = term / (1.0 - t) if t < 1.0 else math.inf
    return partial, tail


def _roundoff_slack(value: float) -> float:
    # keeps |partial - closed| <= tail valid in floats even when the exact
    # geometric tail is far below machine epsilon
    return 1e-14 * (1.0 + abs(value))


def _certify_haagerup(alpha: float, p: float, rank: int, radius: int = 40) -> LpCertificate:
    ap = alpha**p
    t = (2 * rank - 1) * ap
    if t >= 1.0 - BOUNDARY_RTOL:
        partial, _ = _haagerup_partial_and_tail(alpha, p, rank, radius)
        return LpCertificate(
            p=p,
            decision=NOT_SUMMABLE,
            closed_form=None,
            partial_sum=partial,
            tail_bound=math.inf,
            enumeration_radius=radius,
            sphere_lower_bound=2 * rank * ap,  # sphere k contributes 2d a^p t^(k-1) >= this
        )
    closed = haagerup_sum_closed(alpha, p, rank)
    partial, tail = _haagerup_partial_and_tail(alpha, p, rank, radius)
    return LpCertificate(
        p=p,
        decision=SUMMABLE,
        closed_form=closed,
        partial_sum=partial,
        tail_bound=tail + _roundoff_slack(closed),
        enumeration_radius=radius,
    )


def lp_certify(family, p: float) -> LpCertificate:
    """Decide summability of |family|^p over the ambient group."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if isinstance(family, Haagerup):
        return _certify_haagerup(family.alpha, p, family.rank)
    if isinstance(family, PointMass):
        return LpCertificate(p, SUMMABLE, 1.0, 1.0, 0.0, 0)
    if isinstance(family, ZeroExtension):
        # the sum over the big group equals the sum of the inner family
        return lp_certify(family.inner, p)
    if isinstance(family, GnsCoefficient):
        # s -> v^-1 s u is a bijection of the group, so the sum is unchanged
        return lp_certify(family.base, p)
    if isinstance(family, CutoffProduct):
        return _cutoff_certificate(family, p)
    return LpCertificate(p, INCONCLUSIVE, None, 0.0, math.inf, 0)


# ---------------------------------------------------------------------------
# sphere cutoffs and the state-extension table


@dataclass(frozen=True)
class SphereCutoffRow:
    k: int
    norm: float
    bound: float
    passed: bool


@dataclass(frozen=True)
class SphereCutoffTable:
    """Per-k norms of the sphere cutoffs against the k+1 extension bound."""

    p: float
    rank: int
    rows: tuple
    all_pass: bool  # every k up to k_max
    analytic_pass: Optional[bool]  # decided from the threshold, exponential family only
    alpha_star: Optional[float]

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "rank": self.rank,
            "rows": [
                {"k": r.k, "norm": r.norm, "bound": r.bound, "pass": r.passed}
                for r in self.rows
            ],
            "all_pass": self.all_pass,
            "analytic_pass": self.analytic_pass,
            "alpha_star": self.alpha_star,
        }


def sphere_cutoff_norm(family, p: float, k: int, cap: int = groups.DEFAULT_ENUMERATION_CAP) -> float:
    """lp norm of the restriction of the family to the sphere of radius k."""
    if isinstance(family, Haagerup):
        return (groups.sphere_size(family.rank, k) * family.alpha ** (p * k)) ** (1.0 / p)
    rank = family.ambient.rank  # free ambient required for sphere cutoffs
    words, _ = groups.sphere(rank, k, cap=cap)
    total = sum(abs(eval_posdef(family, w)) ** p for w in words)
    return total ** (1.0 / p)


def okayasu_table(family, p: float, k_max: int) -> SphereCutoffTable:
    """Tabulate the state-extension inequality |phi chi_k|_p <= k+1.

    For the exponential family the per-k norms use the closed form
    (2d (2d-1)^(k-1) alpha^(pk))^(1/p) and the analytic all-k decision
    alpha <= (2d-1)^(-1/p) is attached; for other families spheres are
    enumerated (within the cap).
    """
    if not isinstance(family.ambient, groups.FreeGroup):
        raise GroupMismatch("sphere cutoffs need a free ambient group")
    rank = family.ambient.rank
    if rank < 2:
        raise ValueError("the extension test needs rank >= 2")
    if p < 2:
        raise ValueError("the extension test needs p >= 2")
    e = family.ambient.identity()
    if abs(eval_posdef(family, e) - 1.0) > 1e-12:
        raise NotNormalized(f"family value at identity is {eval_posdef(family, e)}")
    rows = []
    for k in range(k_max + 1):
        norm = sphere_cutoff_norm(family, p, k)
        bound = float(k + 1)
        rows.append(SphereCutoffRow(k, norm, bound, norm <= bound * (1 + 1e-15)))
    all_pass = all(r.passed for r in rows)
    analytic_pass = None
    alpha_star = None
    if isinstance(family, Haagerup):
        alpha_star = haagerup_threshold(rank, p)
        analytic_pass = family.alpha <= alpha_star * (1 + BOUNDARY_RTOL)
    return SphereCutoffTable(p, rank, tuple(rows), all_pass, analytic_pass, alpha_star)


# ---------------------------------------------------------------------------
# Gram positivity check


def gram_psd_check(family, sample: Sequence[groups.GroupElement]):
    """Minimum eigenvalue of the Gram matrix G[i,j] = phi(s_i^-1 s_j).

    ``family`` may also be a plain callable element -> complex (handy for
    negative controls).  Pass criterion: min eigenvalue >= -1e-9 * |G|.
    Returns (min eigenvalue, pass).
    """
    if not sample:
        raise ValueError("sample must be nonempty")
    if len(set(sample)) != len(sample):
        raise ValueError("sample must be duplicate-free")
    evaluate: Callable = (
        family if callable(family) else lambda s: eval_posdef(family, s)
    )
    n = len(sample)
    g = np.zeros((n, n), dtype=complex)
    for i in range(n):
        si_inv = sample[i].inverse()
        for j in range(i, n):
            value = complex(evaluate(si_inv * sample[j]))
            g[i, j] = value
            g[j, i] = value.conjugate()
    eigs = np.linalg.eigvalsh(g)
    min_eig = float(eigs[0])
    norm = float(max(abs(eigs[0]), abs(eigs[-1])))
    return min_eig, min_eig >= -1e-9 * norm


# ---------------------------------------------------------------------------
# subgroup-relative certification (double cosets)


@dataclass(frozen=True)
class SandwichCheck:
    """Enumerated double-coset sum squeezed between translation bounds."""

    lower: float
    upper: float
    partial_sum: float
    tail_bound: float
    passed: bool


@dataclass(frozen=True)
class DpCertificate:
    spec: DpSpec
    ambient_rank: int
    in_dp: bool
    threshold: float
    subgroup_sum: Optional[float]
    sphere_lower_bound: Optional[float]
    sandwich: Optional[SandwichCheck]

    def to_json_dict(self) -> dict:
        d = {
            "p": self.spec.p,
            "in_dp": self.in_dp,
            "threshold": self.threshold,
            "subgroup_sum": self.subgroup_sum,
            "sphere_lower_bound": self.sphere_lower_bound,
        }
        if self.sandwich is not None:
            d["sandwich"] = {
                "lower": self.sandwich.lower,
                "upper": self.sandwich.upper,
                "partial_sum": self.sandwich.partial_sum,
                "tail_bound": self.sandwich.tail_bound,
                "pass": self.sandwich.passed,
            }
        return d


def dp_certify_haagerup(
    alpha: float,
    p: float,
    subgroup_rank: int,
    ambient_rank: int = 6,
    t1: Optional[groups.Word] = None,
    t2: Optional[groups.Word] = None,
    enum_radius: int = 8,
) -> DpCertificate:
    """Decide membership of the exponential family in the double-coset ideal
    of the free factor F_{subgroup_rank} inside F_{ambient_rank}.

    The decision reduces to summability over the factor.  When translation
    words t1, t2 are supplied, the enumerated double-coset sum
    sum over s in H of alpha^(p |t1 s t2|) is checked against the sandwich
    alpha^(p(|t1|+|t2|)) * S <= sum <= alpha^(-p(|t1|+|t2|)) * S,
    S the plain subgroup sum (lengths obey |s| - |t1| - |t2| <= |t1 s t2|
    <= |t1| + |s| + |t2|).
    """
    if subgroup_rank < 2:
        raise ValueError("subgroup rank must be >= 2")
    if subgroup_rank > ambient_rank:
        raise ValueError("subgroup rank exceeds ambient rank")
    spec = DpSpec(groups.FreeFactor(subgroup_rank), p)
    threshold = haagerup_threshold(subgroup_rank, p)
    base_cert = _certify_haagerup(alpha, p, subgroup_rank)
    if base_cert.decision != SUMMABLE:
        return DpCertificate(
            spec=spec,
            ambient_rank=ambient_rank,
            in_dp=False,
            threshold=threshold,
            subgroup_sum=None,
            sphere_lower_bound=base_cert.sphere_lower_bound,
            sandwich=None,
        )
    s_sum = base_cert.closed_form
    sandwich = None
    if t1 is not None or t2 is not None:
        ambient = groups.FreeGroup(ambient_rank)
        t1 = t1 if t1 is not None else ambient.identity()
        t2 = t2 if t2 is not None else ambient.identity()
        shift = alpha ** (p * (len(t1) + len(t2)))
        lower = shift * s_sum
        upper = s_sum / shift
        partial = 0.0
        for w in groups.ball(subgroup_rank, enum_radius, cap=2 * 10**6):
            s_amb = groups.Word(ambient_rank, w.letters)
            partial += alpha ** (p * len(t1 * s_amb * t2))
        _, h_tail = _haagerup_partial_and_tail(alpha, p, subgroup_rank, enum_radius)
        tail = h_tail / shift
        tol = 1e-9 * upper
        passed = (partial <= upper + tol) and (partial + tail >= lower - tol)
        sandwich = SandwichCheck(lower, upper, partial, tail, passed)
    return DpCertificate(
        spec=spec,
        ambient_rank=ambient_rank,
        in_dp=True,
        threshold=threshold,
        subgroup_sum=s_sum,
        sphere_lower_bound=None,
        sandwich=sandwich,
    )


# ---------------------------------------------------------------------------
# coset cutoff products


def _cyclic_coset_sum(base: Haagerup, spec: groups.CyclicGen, rep: groups.Word, p: float):
    """Partial sum and tail of alpha^(p |rep w^k|) over all powers k."""
    alpha = base.alpha
    w = spec.generator
    u, v = groups._cyclic_parts(w)
    step = max(len(v), 1)
    ratio = alpha ** (p * step)
    offset = len(rep) + 2 * len(u)
    # k = 0 term, then symmetric pairs until the geometric tail is negligible
    partial = alpha ** (p * len(rep))
    pos = neg = rep
    w_inv = w.inverse()
    k = 1
    while True:
        pos = pos * w
        neg = neg * w_inv
        partial += alpha ** (p * len(pos)) + alpha ** (p * len(neg))
        # |rep w^(+-m)| >= m*step - offset for every |m| > k
        tail = 2 * (alpha ** (p * (step * (k + 1) - offset))) / (1.0 - ratio)
        if tail <= 1e-15 * max(partial, 1.0) or k > 10_000:
            return partial, tail + _roundoff_slack(partial)
        k += 1


def _cutoff_certificate(family: CutoffProduct, p: float) -> LpCertificate:
    base = family.base
    spec = family.subgroup
    if isinstance(base, PointMass):
        ident = base.ambient.identity()
        total = 1.0 if any(r == ident for r in family.reps) else 0.0
        return LpCertificate(p, SUMMABLE, total, total, 0.0, 0)
    if not isinstance(base, Haagerup):
        raise MissingCertificate(
            f"no double-coset certificate for base family {type(base).__name__}"
        )
    alpha = base.alpha
    if isinstance(spec, groups.FreeFactor):
        t = (2 * spec.rank - 1) * alpha**p
        if t >= 1.0 - BOUNDARY_RTOL:
            raise MissingCertificate(
                "base family is not summable over the free factor; no certificate"
            )
        radius = 40
        s_closed = haagerup_sum_closed(alpha, p, spec.rank)
        s_partial, s_tail = _haagerup_partial_and_tail(alpha, p, spec.rank, radius)
        # canonical representatives never end in a subgroup letter, so
        # |r xi| = |r| + |xi| exactly and each coset sum factorizes
        weight = sum(alpha ** (p * len(r)) for r in family.reps)
        return LpCertificate(
            p=p,
            decision=SUMMABLE,
            closed_form=weight * s_closed,
            partial_sum=weight * s_partial,
            tail_bound=weight * s_tail + _roundoff_slack(weight * s_closed),
            enumeration_radius=radius,
        )
    if isinstance(spec, groups.CyclicGen):
        partial = tail = 0.0
        for rep in family.reps:
            ps, ts = _cyclic_coset_sum(base, spec, rep, p)
            partial += ps
            tail += ts
        closed = None
        w = spec.generator
        if len(w) == 1:
            # single-letter generator: |r a^k| = |r| + |k| exactly
            beta = alpha**p
            s_h = 1.0 + 2 * beta / (1.0 - beta)
            closed = sum(alpha ** (p * len(r)) for r in family.reps) * s_h
        return LpCertificate(p, SUMMABLE, closed, partial, tail, 0)
    raise MissingCertificate(f"unsupported subgroup spec {spec!r} for cutoffs")


def coset_cutoff_product(
    family, subgroup: groups.SubgroupSpec, coset_reps: Sequence[groups.GroupElement], p: float
):
    """Cut a certified family down to a finite union of left cosets.

    Returns the cutoff family together with its lp certificate (assembled
    per coset).  Raises MissingCertificate when the base family has no
    double-coset certificate over the subgroup.
    """
    ambient = family.ambient
    canon = []
    seen = set()
    for r in coset_reps:
        c = groups.coset_canonical(subgroup, ambient, r)
        if c not in seen:
            seen.add(c)
            canon.append(c)
    canon.sort(key=lambda w: w.shortlex_key())
    cutoff = CutoffProduct(family, subgroup, tuple(canon))
    return cutoff, _cutoff_certificate(cutoff, p)
