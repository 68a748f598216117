"""Weierstrass data of genus-zero minimal immersions: validation and evaluation.

A datum is an n-tuple of rational maps phi_j with d f_j = 2 Re(phi_j dz),
together with the puncture set (the ends) on the Riemann sphere.  This module
checks the structural requirements -- the null (conformality) identity
sum phi_j^2 = 0, reality of all residues, and complete finite-total-curvature
end orders mu <= -2 -- and evaluates the immersion f = 2 Re int phi dz and its
conformal factor.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateInputError,
    EvaluationNearSingularityError,
    SingularMetricError,
)
from .quadrature import integrate_vector, route_path, route_segment
from .rational import (
    INF,
    ComplexPoly,
    LaurentSeries,
    RationalMap,
    compose_mobius,
    is_infinity,
    laurent_expand,
    points_equal,
    roots,
)

__all__ = [
    "WeierstrassData",
    "MetricSample",
    "NullCheck",
    "ResidueCheck",
    "ValidationReport",
    "validate_null",
    "detect_punctures",
    "check_residues_real",
    "metric_order_at",
    "immersion_eval",
    "immersion_delta",
    "conformal_factor",
    "form_series",
    "form_residue_vector",
    "common_denominator",
    "mobius_precompose",
]

NULL_TOL = 1e-10        # relative residual for the null identity
RESIDUE_IMAG_TOL = 1e-10
CLEARANCE_FACTOR = 1e-3  # path clearance = factor * min puncture separation


def _as_rational_tuple(phi):
    out = []
    for r in phi:
        out.append(r if isinstance(r, RationalMap) else RationalMap(r))
    return tuple(out)


class WeierstrassData:
    """Immutable Weierstrass datum: components, punctures, basepoint, label."""

    def __init__(self, phi, punctures=None, basepoint=None, label: str = ""):
        self.phi = _as_rational_tuple(phi)
        self.n = len(self.phi)
        if self.n < 3:
            raise DegenerateInputError("ambient dimension must be at least 3")
        if all(r.is_zero for r in self.phi):
            raise DegenerateInputError("all components are zero")
        if punctures is None:
            self.punctures = tuple(detect_punctures(self.phi))
        else:
            self.punctures = tuple(INF if is_infinity(p) else complex(p) for p in punctures)
        self.label = str(label)
        self.basepoint = complex(basepoint) if basepoint is not None else self._default_basepoint()
        if any(
            not is_infinity(p) and abs(self.basepoint - p) <= self.clearance
            for p in self.punctures
        ):
            raise DegenerateInputError("basepoint is within clearance of a puncture")

    # -- derived geometry ---------------------------------------------------

    @property
    def finite_punctures(self):
        return tuple(p for p in self.punctures if not is_infinity(p))

    @property
    def min_separation(self) -> float:
        """Min pairwise distance of the finite punctures (1.0 when fewer than two)."""
        fin = self.finite_punctures
        if len(fin) < 2:
            return 1.0
        return min(abs(a - b) for i, a in enumerate(fin) for b in fin[i + 1:])

    @property
    def clearance(self) -> float:
        return CLEARANCE_FACTOR * self.min_separation

    def _default_basepoint(self) -> complex:
        fin = self.finite_punctures
        guard = max(10.0 * self.clearance, 1e-6)
        if not fin or min(abs(p) for p in fin) > guard:
            return 0j
        near = min(fin, key=lambda p: (abs(p), p.real, p.imag))
        step = self.min_separation / 2.0
        for k in range(1, 8):
            cand = near + k * step
            if all(abs(cand - p) > guard for p in fin):
                return cand
        raise DegenerateInputError("could not place a default basepoint")

    # -- conveniences (thin wrappers over the module operations) ------------

    def validate(self) -> "ValidationReport":
        return validate(self)

    def immersion(self, z, via=None):
        return immersion_eval(self, z, via=via)

    def metric_order_at(self, p) -> int:
        return metric_order_at(self, p)

    def __repr__(self):
        return f"WeierstrassData(n={self.n}, label={self.label!r}, punctures={self.punctures!r})"


@dataclass(frozen=True)
class MetricSample:
    """Conformal factor sample: ds^2 = lambda_sq |dz|^2 at z."""

    z: complex
    lambda_sq: float


@dataclass(frozen=True)
class NullCheck:
    ok: bool
    defect: float
    coefficient_magnitudes: tuple


@dataclass(frozen=True)
class ResidueCheck:
    ok: bool
    worst_imag: float
    residues: tuple  # ((puncture, residue vector), ...)


@dataclass(frozen=True)
class ValidationReport:
    null: NullCheck
    residues: ResidueCheck
    end_orders: tuple  # ((puncture, mu), ...)
    orders_ok: bool
    punctures_ok: bool
    messages: tuple

    @property
    def ok(self) -> bool:
        return self.null.ok and self.residues.ok and self.orders_ok and self.punctures_ok


def common_denominator(phi):
    """Monic LCM of the denominators and the cleared numerators.

    Returns (D, nums) with phi_j = nums[j] / D exactly (zero components give
    zero numerators).
    """
    phi = _as_rational_tuple(phi)

    def same(z, m, zi, mi):
        tol = 1e-8 if max(m, mi) == 1 else 1e-5
        return abs(z - zi) <= tol * (1.0 + abs(zi))

    def consolidate(rts):
        # a multiple pole smeared into nearby simple roots must count with
        # its full local order, so cluster each component's roots first
        out: list[list] = []
        for z, m in rts:
            for item in out:
                if abs(z - item[0]) <= 1e-5 * (1.0 + abs(item[0])):
                    item[0] = (item[0] * item[1] + z * m) / (item[1] + m)
                    item[1] += m
                    break
            else:
                out.append([z, m])
        return [(z, m) for z, m in out]

    canon: list[list] = []  # [root, mult]
    per_comp = []
    for r in phi:
        if r.is_zero or r.den.degree() < 1:
            per_comp.append([])
            continue
        rts = consolidate(roots(r.den))
        per_comp.append(rts)
        for z, m in rts:
            for item in canon:
                if same(z, m, item[0], item[1]):
                    item[1] = max(item[1], m)
                    break
            else:
                canon.append([z, m])
    canon.sort(key=lambda it: (it[0].real, it[0].imag))
    D = ComplexPoly.from_roots([(z, m) for z, m in canon])
    nums = []
    for r, rts in zip(phi, per_comp):
        if r.is_zero:
            nums.append(ComplexPoly())
            continue
        missing = []
        for z, m in canon:
            have = sum(mr for zr, mr in rts if same(zr, mr, z, m))
            if m - have > 0:
                missing.append((z, m - have))
        lead = r.den.coeffs[-1]
        nums.append(r.num * ComplexPoly.from_roots(missing) * (1.0 / lead))
    return D, nums


def validate_null(w: WeierstrassData, tol: float = NULL_TOL) -> NullCheck:
    """Check the conformality identity sum phi_j^2 = 0 as a rational identity.

    The numerator of the sum over the common denominator must vanish; the
    defect is its max coefficient magnitude relative to the size of the
    individual squared terms.
    """
    _, nums = common_denominator(w.phi)
    total = ComplexPoly()
    scale = 0.0
    for nj in nums:
        sq = nj * nj
        total = total + sq
        scale = max(scale, sq.norm())
    mags = tuple(float(x) for x in np.abs(total.coeffs))
    defect = (max(mags) / scale) if (mags and scale > 0.0) else (max(mags) if mags else 0.0)
    return NullCheck(ok=defect <= tol, defect=defect, coefficient_magnitudes=mags)


def detect_punctures(phi):
    """Poles of the 1-forms phi_j dz, as sphere points.

    Finite poles are denominator roots of the (reduced) components; infinity
    is included when some form order there is negative, i.e. when
    deg num - deg den >= -1 for some component.
    """
    phi = _as_rational_tuple(phi)
    nonzero = [r for r in phi if not r.is_zero]
    if not nonzero:
        raise DegenerateInputError("all components are zero")
    finite: list[complex] = []
    for r in nonzero:
        if r.den.degree() < 1:
            continue
        for z, _m in roots(r.den):
            if not any(abs(z - q) <= 1e-6 * (1.0 + abs(q)) for q in finite):
                finite.append(z)
    # keep only genuine poles of some form (a denominator root cancelled by
    # the numerator up to tolerance is a regular point)
    finite = [
        z for z in finite
        if min(laurent_expand(r, z, 0).order for r in nonzero) < 0
    ]
    finite.sort(key=lambda z: (z.real, z.imag))
    out: list = list(finite)
    if any(r.degree_at_infinity() >= -1 for r in nonzero):
        out.append(INF)
    return out


def form_series(w: WeierstrassData, p, depth: int = 8):
    """Per-component Laurent series of the 1-forms phi_j dz at an end.

    The local coordinate is (z - p) at finite p and w = 1/z at infinity,
    where the Jacobian dz = -dw/w^2 shifts every order by -2 and flips signs.
    Zero components yield None.
    """
    out = []
    for r in w.phi:
        if r.is_zero:
            out.append(None)
            continue
        s = laurent_expand(r, p, depth)
        if is_infinity(p):
            out.append(LaurentSeries(INF, s.order - 2, -s.coeffs))
        else:
            out.append(s)
    return out


def form_coefficient_window(w: WeierstrassData, p, depth: int = 8):
    """Stacked form coefficients at an end.

    Returns (mu, C) where mu is the metric order (min form order) and C is an
    (n, depth+1) matrix with C[j, k] the coefficient of the local coordinate
    to the power mu + k in the j-th component of the form.
    """
    series = form_series(w, p, depth)
    orders = [s.order for s in series if s is not None]
    if not orders:
        raise DegenerateInputError("all components are zero")
    mu = min(orders)
    C = np.zeros((w.n, depth + 1), dtype=complex)
    for j, s in enumerate(series):
        if s is None:
            continue
        for k in range(depth + 1):
            C[j, k] = s.coefficient(mu + k)
    return mu, C


def metric_order_at(w: WeierstrassData, p) -> int:
    """Metric order mu at a sphere point: min over j of ord(phi_j dz).

    At punctures of valid complete finite-total-curvature data mu <= -2; at a
    regular point the value is nonnegative (a non-end).
    """
    orders = []
    for r in w.phi:
        if r.is_zero:
            continue
        if is_infinity(p):
            orders.append(laurent_expand(r, INF, 0).order - 2)
        else:
            orders.append(laurent_expand(r, p, 0).order)
    return min(orders)


def form_residue_vector(w: WeierstrassData, p) -> np.ndarray:
    """Residue vector of the 1-form at an end (w-chart convention at infinity)."""
    series = form_series(w, p, depth=max(2, 2 - metric_order_at(w, p)))
    return np.array([0j if s is None else s.coefficient(-1) for s in series])


def check_residues_real(w: WeierstrassData, tol: float = RESIDUE_IMAG_TOL) -> ResidueCheck:
    """All residues of the form at all ends must be real (period closing)."""
    worst = 0.0
    per_end = []
    for p in w.punctures:
        res = form_residue_vector(w, p)
        per_end.append((p, res))
        if res.size:
            worst = max(worst, float(np.max(np.abs(res.imag))))
    ok = worst <= tol * (1.0 + max((float(np.max(np.abs(r))) for _, r in per_end), default=0.0))
    return ResidueCheck(ok=ok, worst_imag=worst, residues=tuple(per_end))


def validate(w: WeierstrassData, tol_scale: float = 1.0) -> ValidationReport:
    """Full structural validation of a datum.

    ``tol_scale`` scales the null and residue tolerances by one factor (the
    CLI's global --tol flag).
    """
    messages = []
    null = validate_null(w, tol=NULL_TOL * tol_scale)
    if not null.ok:
        messages.append(f"null identity violated: defect {null.defect:.3e}")
    res = check_residues_real(w, tol=RESIDUE_IMAG_TOL * tol_scale)
    if not res.ok:
        messages.append(f"non-real residue: worst imaginary part {res.worst_imag:.3e}")

    detected = detect_punctures(w.phi)
    punctures_ok = True
    for p in detected:
        if not any(points_equal(p, q, 1e-6) for q in w.punctures):
            punctures_ok = False
            messages.append(f"pole at {p!r} is not listed among the punctures")
    for i, p in enumerate(w.punctures):
        for q in w.punctures[i + 1:]:
            if points_equal(p, q, 1e-10):
                punctures_ok = False
                messages.append(f"punctures {p!r} and {q!r} coincide")

    end_orders = []
    orders_ok = True
    for p in w.punctures:
        mu = metric_order_at(w, p)
        end_orders.append((p, mu))
        if mu > -2:
            orders_ok = False
            messages.append(
                f"end {p!r} has order {mu} > -2: not a complete finite-total-curvature end"
            )
    return ValidationReport(
        null=null,
        residues=res,
        end_orders=tuple(end_orders),
        orders_ok=orders_ok,
        punctures_ok=punctures_ok,
        messages=tuple(messages),
    )


def _phi_eval(w: WeierstrassData):
    def f(zs):
        zs = np.asarray(zs, dtype=complex)
        return np.stack([r(zs) for r in w.phi])

    return f


def immersion_eval(w: WeierstrassData, z, via=None, epsabs: float = 1e-12,
                   epsrel: float = 1e-10) -> np.ndarray:
    """f(z) = 2 Re int_{z0}^{z} phi dz along a puncture-avoiding path.

    Path independence holds because all residues are real (only the real part
    is taken), so any admissible path gives the same value.  The optional
    ``via`` waypoints perturb the path (used to test exactly that).
    """
    z = complex(z)
    clearance = w.clearance
    for p in w.finite_punctures:
        if abs(z - p) < clearance:
            raise EvaluationNearSingularityError(
                f"evaluation point {z} within clearance {clearance:.3e} of puncture {p}"
            )
    waypoints = [w.basepoint, *(complex(v) for v in (via or [])), z]
    pieces = route_path(waypoints, w.finite_punctures, clearance)
    if not pieces:
        return np.zeros(w.n)
    val, _err = integrate_vector(_phi_eval(w), pieces, epsabs=epsabs, epsrel=epsrel)
    return 2.0 * val.real


def immersion_delta(w: WeierstrassData, z1, z2, epsabs: float = 1e-13,
                    epsrel: float = 1e-12) -> np.ndarray:
    """f(z2) - f(z1) integrated directly along the segment (rerouted if needed)."""
    pieces = route_segment(complex(z1), complex(z2), w.finite_punctures, w.clearance)
    if not pieces:
        return np.zeros(w.n)
    val, _err = integrate_vector(_phi_eval(w), pieces, epsabs=epsabs, epsrel=epsrel)
    return 2.0 * val.real


def conformal_factor(w: WeierstrassData, z) -> MetricSample:
    """lambda_sq = 2 sum |phi_j(z)|^2 (the conformal factor of ds^2)."""
    z = complex(z)
    for p in w.finite_punctures:
        if abs(z - p) <= 1e-12 * (1.0 + abs(p)):
            raise SingularMetricError(f"metric is singular at puncture {p}")
    lam = 2.0 * float(sum(abs(r(z)) ** 2 for r in w.phi))
    return MetricSample(z=z, lambda_sq=lam)


def mobius_precompose(w: WeierstrassData, mobius) -> WeierstrassData:
    """Pull the datum back under z -> (a z + b)/(c z + d).

    The components transform as 1-forms: phi_j -> (phi_j o T) T'.  Punctures
    are re-detected; the basepoint is re-derived by the default rule.
    """
    a, b, c, d = (complex(x) for x in mobius)
    det = a * d - b * c
    td = ComplexPoly([d, c])
    tprime = RationalMap(ComplexPoly([det]), td * td)
    new_phi = []
    for r in w.phi:
        if r.is_zero:
            new_phi.append(RationalMap(ComplexPoly()))
        else:
            new_phi.append(compose_mobius(r, (a, b, c, d)) * tprime)
    return WeierstrassData(new_phi, label=w.label)
