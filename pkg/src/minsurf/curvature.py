"""Gauss map, total curvature, and the Chern-Osserman / Gackstatter / Ejiri bounds.

The Gauss map of a conformal minimal immersion is the projective class of the
derivative components.  Clearing denominators and removing the common
polynomial factor leaves a basepoint-free polynomial map into the quadric
{sum x_j^2 = 0}; its hyperplane-intersection degree d (the max component
degree) determines the total curvature -2 pi d.  A Green-identity boundary
integral of -laplacian(log lambda) provides an independent numeric value.

Equalities in the curvature bounds are detected by integer comparison of the
pi-multiples, never by float comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailureError, DegenerateInputError, InternalConsistencyError
from .rational import multi_gcd, roots
from .weierstrass import (
    WeierstrassData,
    common_denominator,
    metric_order_at,
)

__all__ = [
    "GaussMap",
    "CurvatureReport",
    "InequalityResult",
    "gauss_map",
    "total_curvature_algebraic",
    "total_curvature_numeric",
    "chern_osserman",
    "fullness_and_degeneracy",
    "gackstatter_and_ejiri",
    "curvature_report",
]

RANK_TOL = 1e-8  # singular values below RANK_TOL * sigma_max count as zero


@dataclass(frozen=True)
class GaussMap:
    """Cleared, GCD-reduced projective components and the map degree."""

    psi: tuple
    degree: int


@dataclass
class CurvatureReport:
    d: int
    tc_algebraic: float
    m: int
    chi: int
    co_rhs: float
    co_equality: bool
    genus: int = 0
    tc_numeric: float | None = None
    full: bool | None = None
    l: int | None = None
    gackstatter_rhs: float | None = None
    gackstatter_applicable: bool | None = None
    ejiri_rhs: float | None = None
    ejiri_equality: bool | None = None

    # pi-multiples for symbolic reporting (integers; equality-safe)
    @property
    def tc_pi(self) -> int:
        return -2 * self.d

    @property
    def co_rhs_pi(self) -> int:
        return 2 * (self.chi - self.m)


def gauss_map(w: WeierstrassData) -> GaussMap:
    """Projective Gauss map [phi_1 : ... : phi_n] in cleared reduced form.

    The common denominator is projectively irrelevant once cleared, so the
    hyperplane-intersection degree (including the fiber over infinity, which
    the homogenization to the max component degree accounts for) is the max
    degree of the reduced numerators.
    """
    if all(r.is_zero for r in w.phi):
        raise DegenerateInputError("all components are zero")
    _D, nums = common_denominator(w.phi)
    g = multi_gcd(nums)
    if g.degree() >= 1:
        reduced = []
        groots = roots(g)
        for nj in nums:
            if nj.is_zero:
                reduced.append(nj)
                continue
            for r, m in groots:
                nj = nj.deflate(r, m)
            reduced.append(nj.trimmed())
        nums = reduced
    degree = max(nj.degree() for nj in nums if not nj.is_zero)
    return GaussMap(psi=tuple(nums), degree=int(degree))


def total_curvature_algebraic(g: GaussMap) -> float:
    """TC = -2 pi d for Gauss-map degree d."""
    return -2.0 * math.pi * g.degree


def _circle_flux(w: WeierstrassData, dphi, center: complex, radius: float,
                 n_theta: int) -> float:
    """Integral over the circle of d/dr log(lambda) * radius dtheta.

    With S = sum phi_j conj(phi_j), d/dr log lambda = Re[e^{i theta} *
    (sum phi_j' conj(phi_j)) / S]; the exact rational derivatives avoid any
    finite differencing.  Radius is nudged if a sample hits a zero of S.
    """
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    e = np.exp(1j * theta)
    rad = radius
    for _attempt in range(6):
        z = center + rad * e
        num = np.zeros_like(z)
        den = np.zeros(z.shape)
        for r, dr in zip(w.phi, dphi):
            if r.is_zero:
                continue
            v = r(z)
            num += dr(z) * np.conj(v)
            den += np.abs(v) ** 2
        if np.min(den) > 1e-280:
            vals = np.real(e * num / den) * rad
            return float(np.mean(vals) * 2.0 * math.pi)
        rad *= 1.0017
    raise ConvergenceFailureError("conformal factor vanished on every probed circle")


def total_curvature_numeric(w: WeierstrassData, tol: float = 1e-3,
                            n_theta: int = 512, max_iter: int = 48) -> float:
    """Quadrature cross-check of the total curvature.

    TC = int K dA = -int laplacian(log lambda) over the finite chart minus
    eps-disks around the punctures; by the Green identity this is a sum of
    circle integrals of the radial derivative of log lambda.  The disks are
    shrunk and the outer circle enlarged until successive estimates agree to
    tol (geometric convergence, since the boundary terms differ from their
    limits by powers of the radii).
    """
    dphi = [r.derivative() if not r.is_zero else r for r in w.phi]
    fin = w.finite_punctures
    eps0 = 0.08 * w.min_separation
    r_out0 = 4.0 * (1.0 + max((abs(p) for p in fin), default=0.0))
    shrink = 0.6
    prev = None
    for i in range(max_iter):
        eps = eps0 * shrink**i
        r_out = r_out0 / shrink**i
        inner = sum(_circle_flux(w, dphi, p, eps, n_theta) for p in fin)
        outer = _circle_flux(w, dphi, 0j, r_out, n_theta)
        tc = -(outer - inner)
        # successive differences underestimate the residual of a geometric
        # tail by ~shrink/(1-shrink), hence the margin factor
        if prev is not None and abs(tc - prev) <= 0.2 * tol * max(1.0, abs(tc)):
            return tc
        prev = tc
    raise ConvergenceFailureError(
        "total-curvature boundary terms did not stabilize",
        estimates=(prev, tc),
    )


def chern_osserman(w: WeierstrassData, gmap: GaussMap | None = None) -> CurvatureReport:
    """Chern-Osserman data: d, TC, chi, the bound 2 pi (chi - m), and equality.

    Equality is decided by the integer identity d == m - chi and
    cross-validated against all end orders being -2; a disagreement would
    contradict the degree formula and raises an internal-consistency error.
    """
    g = gmap if gmap is not None else gauss_map(w)
    m = len(w.punctures)
    chi = 2 - m  # genus 0
    co_pi = 2 * (chi - m)
    equality_by_degree = g.degree == (m - chi)
    orders = [metric_order_at(w, p) for p in w.punctures]
    equality_by_orders = all(mu == -2 for mu in orders)
    if equality_by_degree != equality_by_orders:
        raise InternalConsistencyError(
            f"degree-based equality {equality_by_degree} disagrees with end orders {orders}"
        )
    return CurvatureReport(
        d=g.degree,
        tc_algebraic=-2.0 * math.pi * g.degree,
        m=m,
        chi=chi,
        co_rhs=co_pi * math.pi,
        co_equality=equality_by_degree,
    )


def fullness_and_degeneracy(w: WeierstrassData, gmap: GaussMap | None = None):
    """(full, l): hyperplane test and Gauss-image degeneracy.

    full  <=>  no nonzero real v with sum v_j phi_j = 0, i.e. the stacked
    real/imaginary coefficient matrix of the cleared components has rank n.
    l = n - rank_C(coefficient matrix): the Gauss image spans a projective
    subspace of dimension n - 1 - l.
    """
    g = gmap if gmap is not None else gauss_map(w)
    L = max(p.degree() for p in g.psi if not p.is_zero) + 1
    A = np.zeros((L, w.n), dtype=complex)
    for j, p in enumerate(g.psi):
        if not p.is_zero:
            A[: p.coeffs.size, j] = p.coeffs
    sv_c = np.linalg.svd(A, compute_uv=False)
    rank_c = int(np.sum(sv_c > RANK_TOL * sv_c[0])) if sv_c.size and sv_c[0] > 0 else 0
    stacked = np.vstack([A.real, A.imag])
    sv_r = np.linalg.svd(stacked, compute_uv=False)
    rank_r = int(np.sum(sv_r > RANK_TOL * sv_r[0])) if sv_r.size and sv_r[0] > 0 else 0
    return rank_r == w.n, w.n - rank_c


@dataclass(frozen=True)
class InequalityResult:
    gackstatter_rhs: float
    ejiri_rhs: float
    ejiri_equality: bool
    applicable: bool  # False for non-full data (bounds stated for full immersions)


def gackstatter_and_ejiri(w: WeierstrassData, gmap: GaussMap | None = None,
                          fullness=None) -> InequalityResult:
    """Gackstatter bound (2 chi + m - 1 - n) pi and Ejiri bound (chi + m - 2n + 2l) pi.

    Both are stated for fully immersed surfaces; for non-full data the values
    are still reported with ``applicable=False``.
    """
    g = gmap if gmap is not None else gauss_map(w)
    full, l = fullness if fullness is not None else fullness_and_degeneracy(w, g)
    m = len(w.punctures)
    chi = 2 - m
    gack_pi = 2 * chi + m - 1 - w.n
    ejiri_pi = chi + m - 2 * w.n + 2 * l
    equality = (-2 * g.degree) == ejiri_pi
    return InequalityResult(
        gackstatter_rhs=gack_pi * math.pi,
        ejiri_rhs=ejiri_pi * math.pi,
        ejiri_equality=equality,
        applicable=full,
    )


def curvature_report(w: WeierstrassData, tc_tol: float = 1e-3,
                     numeric: bool = True) -> CurvatureReport:
    """Complete curvature report for a validated datum."""
    g = gauss_map(w)
    rep = chern_osserman(w, g)
    full, l = fullness_and_degeneracy(w, g)
    ineq = gackstatter_and_ejiri(w, g, (full, l))
    rep.full = full
    rep.l = l
    rep.gackstatter_rhs = ineq.gackstatter_rhs
    rep.gackstatter_applicable = ineq.applicable
    rep.ejiri_rhs = ineq.ejiri_rhs
    rep.ejiri_equality = ineq.ejiri_equality
    if numeric:
        rep.tc_numeric = total_curvature_numeric(w, tol=tc_tol)
    return rep
