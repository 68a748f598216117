"""Complex-coefficient polynomials, rational maps, and local Laurent expansions.

Everything downstream (Weierstrass validation, end analysis, curvature) reduces
to arithmetic on small-degree complex polynomials: products, tolerance-based
GCDs, root clustering with multiplicities, and sharp-order Laurent expansions
of rational functions at finite centers and at infinity (w = 1/z chart).

Coefficients are double-precision complex pairs, ascending powers.  Addition,
subtraction and multiplication are exact floating-point operations (bitwise
reproducible for integer-valued inputs); tolerances enter only through root
clustering, rational reduction and order detection, which all share the module
constants below.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DegenerateInputError, ZeroFunctionError

__all__ = [
    "INF",
    "is_infinity",
    "points_equal",
    "ComplexPoly",
    "RationalMap",
    "LaurentSeries",
    "poly_arith",
    "poly_gcd",
    "roots",
    "laurent_expand",
    "residue",
    "compose_mobius",
]

# Shared tolerance constants.  CLUSTER_RADIUS is the per-root merge radius
# (scaled by 1 + |root|); REDUCE_TOL drives num/den common-root cancellation;
# ORDER_TOL is the relative cutoff deciding that a shifted coefficient is zero
# when reading off a Laurent order.
CLUSTER_RADIUS = 1e-8
REDUCE_TOL = 1e-10
ORDER_TOL = 1e-11

# First-pass eigenvalue capture radius.  Companion-matrix eigenvalues of an
# exact double root split by ~1e-8, exactly at CLUSTER_RADIUS, so clusters are
# captured generously first and the centroids polished with multiplicity-aware
# Newton before the contractual merge radius is applied.
_CAPTURE_RADIUS = 1e-6


class _Infinity:
    """The point at infinity on the Riemann sphere (w = 1/z chart)."""

    __slots__ = ()

    def __repr__(self):
        return "inf"


INF = _Infinity()


def is_infinity(p) -> bool:
    return isinstance(p, _Infinity)


def points_equal(p, q, tol: float = 1e-9) -> bool:
    """Equality of sphere points, tolerance-based for finite ones."""
    if is_infinity(p) or is_infinity(q):
        return is_infinity(p) and is_infinity(q)
    return abs(complex(p) - complex(q)) <= tol * (1.0 + abs(complex(p)))


class ComplexPoly:
    """Polynomial with complex coefficients, ascending powers.

    The zero polynomial is the empty coefficient list.  Construction strips
    exactly-zero leading coefficients only, so integer-coefficient arithmetic
    stays bitwise exact.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        nz = np.nonzero(c)[0]
        if nz.size == 0:
            self.coeffs = np.zeros(0, dtype=complex)
        else:
            self.coeffs = np.array(c[: nz[-1] + 1], dtype=complex)

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.coeffs.size - 1

    def norm(self) -> float:
        """Max coefficient magnitude (0 for the zero polynomial)."""
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def __call__(self, z):
        if self.is_zero:
            z = np.asarray(z)
            return np.zeros(z.shape, dtype=complex) if z.ndim else 0j
        return npoly.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def __repr__(self):
        return f"ComplexPoly({self.coeffs.tolist()!r})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        n = max(self.coeffs.size, other.coeffs.size)
        c = np.zeros(n, dtype=complex)
        c[: self.coeffs.size] += self.coeffs
        c[: other.coeffs.size] += other.coeffs
        return ComplexPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return ComplexPoly(self.coeffs * other)
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return ComplexPoly()
        return ComplexPoly(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def derivative(self) -> "ComplexPoly":
        if self.coeffs.size <= 1:
            return ComplexPoly()
        k = np.arange(1, self.coeffs.size)
        return ComplexPoly(self.coeffs[1:] * k)

    def monic(self) -> "ComplexPoly":
        if self.is_zero:
            raise DegenerateInputError("zero polynomial has no monic form")
        return ComplexPoly(self.coeffs / self.coeffs[-1])

    def shift(self, c: complex) -> "ComplexPoly":
        """Taylor coefficients of p(c + t): repeated synthetic division."""
        if self.is_zero:
            return ComplexPoly()
        work = list(self.coeffs[::-1])  # descending
        taylor = []
        while work:
            q = [work[0]]
            for a in work[1:]:
                q.append(a + c * q[-1])
            taylor.append(q[-1])
            work = q[:-1]
        return ComplexPoly(taylor)

    def deflate(self, root: complex, mult: int = 1) -> "ComplexPoly":
        """Divide by (z - root)^mult via synthetic division, dropping remainders.

        Forward division is stable for |root| <= 1; otherwise the reversed
        polynomial is divided at 1/root (backward deflation), which avoids
        the ~|root|^degree error growth of the forward recurrence.
        """
        if abs(root) <= 1.0:
            work = list(self.coeffs[::-1])
            for _ in range(mult):
                if len(work) <= 1:
                    return ComplexPoly()
                q = [work[0]]
                for a in work[1:-1]:
                    q.append(a + root * q[-1])
                work = q
            return ComplexPoly(work[::-1])
        s = 1.0 / root
        work = list(self.coeffs)  # ascending = descending of the reversal
        for _ in range(mult):
            if len(work) <= 1:
                return ComplexPoly()
            q = [work[0]]
            for a in work[1:-1]:
                q.append(a + s * q[-1])
            work = [x / (-root) for x in q]
        return ComplexPoly(work)

    def trimmed(self, rel_tol: float = 1e-13) -> "ComplexPoly":
        """Strip leading coefficients below rel_tol * norm (noise control)."""
        if self.is_zero:
            return self
        cutoff = rel_tol * self.norm()
        keep = np.nonzero(np.abs(self.coeffs) > cutoff)[0]
        if keep.size == 0:
            return ComplexPoly()
        return ComplexPoly(self.coeffs[: keep[-1] + 1])

    @staticmethod
    def from_roots(root_mults, lead: complex = 1.0) -> "ComplexPoly":
        """lead * prod (z - r)^m for (r, m) pairs; empty product gives lead."""
        c = np.array([lead], dtype=complex)
        for r, m in root_mults:
            for _ in range(int(m)):
                c = np.convolve(c, np.array([-r, 1.0], dtype=complex))
        return ComplexPoly(c)


def _as_poly(p) -> ComplexPoly:
    return p if isinstance(p, ComplexPoly) else ComplexPoly(p)


def poly_arith(a: ComplexPoly, b: ComplexPoly, op: str) -> ComplexPoly:
    """Exact coefficient arithmetic: op in {"add", "sub", "mul"}."""
    a, b = _as_poly(a), _as_poly(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}; expected add, sub or mul")


_EPS = float(np.finfo(float).eps)


def _polish(p: ComplexPoly, z: complex, m: int) -> complex:
    """Newton-polish z as a multiplicity-m root of p.

    Runs on the (m-1)-th derivative, where the root is simple and Newton
    reaches machine precision; p itself is pure rounding noise within
    ~eps^(1/m) of a multiple root.
    """
    q = p
    for _ in range(m - 1):
        q = q.derivative()
    dq = q.derivative()
    for _ in range(25):
        qv = q(z)
        dv = dq(z)
        if abs(dv) < 1e-300:
            break
        step = qv / dv
        z = z - step
        if abs(step) <= 1e-15 * (1.0 + abs(z)):
            break
    return z


def _is_mfold_root(p: ComplexPoly, z: complex, m: int) -> bool:
    """True when p has an m-fold root at z in the backward sense.

    Zeroing the Taylor coefficients of p at z below order m is a coefficient
    perturbation of that size relative to the local scale sum |a_k| |z|^k, so
    the test accepts when that perturbation is within the module's reduction
    tolerance (and the m-th coefficient stands well clear of it).
    """
    taylor = np.abs(p.shift(z).coeffs)
    zbar = max(1.0, abs(z))
    scale = float(np.sum(np.abs(p.coeffs) * zbar ** np.arange(p.coeffs.size)))
    floor = REDUCE_TOL * scale
    if m >= taylor.size or taylor[m] < 1e3 * floor:
        return False
    return bool(taylor[:m].max(initial=0.0) <= floor)


def _capture_clusters(p: ComplexPoly, raw):
    """Multiplicity-verified eigenvalue clustering; returns (root, mult) pairs.

    The eigenvalues of an exact m-fold root split into a ring of radius
    ~(eps cond)^(1/m), too wide for any fixed capture radius.  Around each
    unused eigenvalue the largest nearest-neighbor set is accepted whose
    polished centroid verifiably IS a root of that multiplicity.
    """
    n = len(raw)
    used = [False] * n
    out: list[tuple[complex, int]] = []
    for i in range(n):
        if used[i]:
            continue
        cand = sorted((j for j in range(n) if not used[j]),
                      key=lambda j: (abs(raw[j] - raw[i]), j))
        chosen, polished = [i], None
        for size in range(len(cand), 1, -1):
            pts = [raw[j] for j in cand[:size]]
            c = sum(pts) / size
            rad = max(abs(z - c) for z in pts)
            if rad > 0.1 * (1.0 + abs(c)):
                continue
            z = _polish(p, c, size)
            # the polished root must lie inside its own cluster; Newton can
            # wander to a different genuine multiple root otherwise
            if abs(z - c) <= 0.5 * rad + 1e-12 * (1.0 + abs(c)) and _is_mfold_root(p, z, size):
                chosen, polished = cand[:size], z
                break
        if polished is None:
            polished = _polish(p, raw[i], 1)
        for j in chosen:
            used[j] = True
        out.append((polished, len(chosen)))
    return out


def roots(p: ComplexPoly, cluster_radius: float | None = None):
    """All complex roots with multiplicities, clustered.

    Companion-matrix eigenvalues are clustered with verified multiplicities,
    Newton-polished, and merged at the contractual radius
    ``cluster_radius * (1 + |root|)``.  Multiplicities sum to the degree.
    """
    p = _as_poly(p).trimmed(1e-12)
    if p.is_zero or p.degree() == 0:
        raise DegenerateInputError("roots undefined for zero/constant polynomial")
    radius = CLUSTER_RADIUS if cluster_radius is None else cluster_radius

    raw = np.roots(p.coeffs[::-1])
    raw = sorted(raw, key=lambda z: (z.real, z.imag))
    refined = _capture_clusters(p, raw)

    merged: list[list] = []
    for z, m in sorted(refined, key=lambda t: (t[0].real, t[0].imag)):
        for item in merged:
            if abs(z - item[0]) <= radius * (1.0 + abs(item[0])):
                item[0] = (item[0] * item[1] + z * m) / (item[1] + m)
                item[1] += m
                break
        else:
            merged.append([z, m])
    return [(complex(z), int(m)) for z, m in merged]


def _match_tol(ma: int, mb: int, radius: float) -> float:
    """Cross-polynomial root-match tolerance.

    Polished simple roots agree to ~1e-12, but near-coincident structures
    (multiplicity >= 2) are clustered only to ~1e-5 at double precision, so
    matches involving them use the wider radius and are verified by value.
    """
    return radius if max(ma, mb) == 1 else max(radius, 1e-5)


def _common_roots(a: ComplexPoly, b: ComplexPoly, radius: float):
    """Matched common roots of a and b with min multiplicities.

    A candidate match is kept only if the partner polynomial genuinely
    vanishes there (relative to its local Taylor scale), so the widened
    multiple-root tolerance cannot cancel non-common factors.
    """
    if a.degree() < 1 or b.degree() < 1:
        return []
    ra = roots(a)
    rb = roots(b)
    taken = [False] * len(rb)
    common = []
    for za, ma in ra:
        best = None
        best_d = None
        for i, (zb, mb) in enumerate(rb):
            if taken[i]:
                continue
            d = abs(za - zb)
            if d <= _match_tol(ma, mb, radius) * (1.0 + abs(za)) and (
                best_d is None or d < best_d
            ):
                best, best_d = i, d
        if best is None:
            continue
        zb, mb = rb[best]
        zm = (za + zb) / 2.0
        ta = np.abs(a.shift(zm).coeffs)
        tb = np.abs(b.shift(zm).coeffs)
        if ta[0] <= 1e-7 * ta.max() and tb[0] <= 1e-7 * tb.max():
            taken[best] = True
            common.append((zm, min(ma, mb)))
    return common


def poly_gcd(a: ComplexPoly, b: ComplexPoly, cluster_radius: float | None = None) -> ComplexPoly:
    """Monic GCD up to root-clustering tolerance.

    Computed by matching the root clusters of both inputs; for the small
    degrees this library handles that is more robust than Euclid remainders.
    """
    a, b = _as_poly(a), _as_poly(b)
    if a.is_zero and b.is_zero:
        raise DegenerateInputError("gcd undefined for two zero polynomials")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    if a.degree() == 0 or b.degree() == 0:
        return ComplexPoly([1.0])
    radius = CLUSTER_RADIUS if cluster_radius is None else cluster_radius
    return ComplexPoly.from_roots(_common_roots(a, b, radius))


def multi_gcd(polys) -> ComplexPoly:
    """GCD of several polynomials (zero entries ignored)."""
    nonzero = [_as_poly(p) for p in polys if not _as_poly(p).is_zero]
    if not nonzero:
        raise DegenerateInputError("gcd undefined: all inputs zero")
    g = nonzero[0].monic()
    for p in nonzero[1:]:
        if g.degree() == 0:
            return g
        g = poly_gcd(g, p)
    return g


class RationalMap:
    """Ratio of complex polynomials, kept in reduced form.

    Construction cancels common num/den roots (up to the clustering
    tolerance), so poles of ``den`` are genuine poles of the map.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1.0,), reduce: bool = True):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise DegenerateInputError("denominator is the zero polynomial")
        if num.is_zero:
            num, den = ComplexPoly(), ComplexPoly([1.0])
        elif reduce and num.degree() >= 1 and den.degree() >= 1:
            for r, m in _common_roots(num, den, CLUSTER_RADIUS):
                num = num.deflate(r, m)
                den = den.deflate(r, m)
            num = num.trimmed()
            den = den.trimmed()
        self.num = num
        self.den = den

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def __repr__(self):
        return f"RationalMap({self.num.coeffs.tolist()!r}, {self.den.coeffs.tolist()!r})"

    def derivative(self) -> "RationalMap":
        n, d = self.num, self.den
        return RationalMap(n.derivative() * d - n * d.derivative(), d * d)

    def __add__(self, other):
        other = _as_rational(other)
        return RationalMap(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalMap(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-_as_rational(other))

    def __mul__(self, other):
        other = _as_rational(other)
        return RationalMap(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rational(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational map")
        return RationalMap(self.num * other.den, self.den * other.num)

    def degree_at_infinity(self) -> int:
        """deg num - deg den: growth exponent of the function at infinity."""
        return self.num.degree() - self.den.degree()


def _as_rational(r) -> RationalMap:
    if isinstance(r, RationalMap):
        return r
    if isinstance(r, ComplexPoly):
        return RationalMap(r, reduce=False)
    return RationalMap(ComplexPoly([complex(r)]), reduce=False)


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """Truncated Laurent expansion at a sphere point.

    ``coeffs[k]`` is the coefficient of the local coordinate to the power
    ``order + k``; the local coordinate is (z - center) at finite centers and
    w = 1/z at infinity.  ``coeffs[0]`` is nonzero (the order is sharp).
    """

    center: object
    order: int
    coeffs: np.ndarray = field(repr=False)

    @property
    def depth(self) -> int:
        return self.coeffs.size - 1

    def coefficient(self, exponent: int) -> complex:
        """Coefficient at an exponent, zero outside the stored window."""
        k = exponent - self.order
        if 0 <= k < self.coeffs.size:
            return complex(self.coeffs[k])
        return 0j

    def __call__(self, t):
        """Evaluate the truncated series at local coordinate t (t != 0)."""
        t = np.asarray(t, dtype=complex)
        return t**self.order * npoly.polyval(t, self.coeffs)


def _series_order(coeffs: np.ndarray) -> int:
    mags = np.abs(coeffs)
    top = mags.max()
    idx = np.nonzero(mags > ORDER_TOL * top)[0]
    return int(idx[0])


def _series_quotient(p: ComplexPoly, q: ComplexPoly, depth: int):
    """Order and depth+1 coefficients of p/q as a Laurent series at 0."""
    a = p.coeffs
    b = q.coeffs
    alpha = _series_order(a)
    beta = _series_order(b)
    at = a[alpha:]
    bt = b[beta:]
    s = np.zeros(depth + 1, dtype=complex)
    s[0] = at[0] / bt[0]
    for k in range(1, depth + 1):
        acc = at[k] if k < at.size else 0j
        jmax = min(k, bt.size - 1)
        for j in range(1, jmax + 1):
            acc -= bt[j] * s[k - j]
        s[k] = acc / bt[0]
    return alpha - beta, s


def laurent_expand(r: RationalMap, center, depth: int = 8) -> LaurentSeries:
    """Laurent expansion of a rational function at a sphere point.

    At infinity the expansion is in w = 1/z and describes function values
    only; the 1-form Jacobian dz = -dw/w^2 is applied by the caller.
    """
    r = _as_rational(r)
    if r.is_zero:
        raise ZeroFunctionError("Laurent order undefined for the zero function")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if is_infinity(center):
        pn = ComplexPoly(r.num.coeffs[::-1])
        pd = ComplexPoly(r.den.coeffs[::-1])
        base = r.den.degree() - r.num.degree()
        rel, coeffs = _series_quotient(pn, pd, depth)
        return LaurentSeries(INF, base + rel, coeffs)
    c = complex(center)
    # expanding at a point slightly off a (multiple) pole produces bogus
    # orders and huge spurious coefficients; snap to the actual nearby pole
    if r.den.degree() >= 1 and abs(r.den(c)) <= 1e-4 * (r.den.norm() or 1.0):
        near = min(roots(r.den), key=lambda t: abs(t[0] - c))
        if 0 < abs(near[0] - c) <= 1e-5 * (1.0 + abs(c)):
            c = near[0]
    rel, coeffs = _series_quotient(r.num.shift(c), r.den.shift(c), depth)
    return LaurentSeries(c, rel, coeffs)


def residue(r: RationalMap, pole) -> complex:
    """Residue of r at a finite point, or of the 1-form r dz at infinity.

    Finite points: the coefficient of (z - pole)^(-1); regular points give 0.
    At infinity the standard 1-form convention in the w = 1/z chart applies:
    res_inf(r dz) = -[w^1 coefficient of r(1/w)].
    """
    r = _as_rational(r)
    if r.is_zero:
        return 0j
    probe = laurent_expand(r, pole, 0)
    if is_infinity(pole):
        target = 1
        if probe.order > target:
            return 0j
        s = laurent_expand(r, pole, target - probe.order)
        return -s.coefficient(target)
    if probe.order > -1:
        return 0j
    s = laurent_expand(r, pole, -1 - probe.order)
    return s.coefficient(-1)


def _compose_factored(p: ComplexPoly, a, b, c, d):
    """p(T) cleared over td^deg(p), built from the root factorization.

    Each root rho of p contributes the exact linear factor
    (a - rho c) z + (b - rho d), so composed multiplicities stay exact --
    monomial-wise expansion of p(T) suffers catastrophic cancellation that
    smears multiple roots far beyond any clustering tolerance.
    """
    k = p.degree()
    acc = ComplexPoly([p.coeffs[-1]])
    if k >= 1:
        for rho, m in roots(p):
            lin = ComplexPoly([b - rho * d, a - rho * c])
            for _ in range(m):
                acc = acc * lin
    return acc, k


def compose_mobius(r: RationalMap, mobius) -> RationalMap:
    """r((a z + b)/(c z + d)) as a reduced rational map."""
    a, b, c, d = (complex(x) for x in mobius)
    top = max(abs(a), abs(b), abs(c), abs(d), 1e-300)
    if abs(a * d - b * c) <= 1e-12 * top**2:
        raise DegenerateInputError("Moebius map is singular")
    a, b, c, d = a / top, b / top, c / top, d / top
    r = _as_rational(r)
    if r.is_zero:
        return RationalMap(ComplexPoly())
    td = ComplexPoly([d, c])
    pn, kn = _compose_factored(r.num, a, b, c, d)
    pd, kd = _compose_factored(r.den, a, b, c, d)
    # r(T) = (Pn / td^kn) / (Pd / td^kd): balance the td powers.
    for _ in range(kd - kn):
        pn = pn * td
    for _ in range(kn - kd):
        pd = pd * td
    return RationalMap(pn, pd)
