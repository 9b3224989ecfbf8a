"""Constant-curvature geometry of the upper half-plane.

Model: {z : Im z > 0} with metric |dz|/Im z (curvature -1), boundary
R u {oo}.  Boundary measures and arcs live in the disk-angle chart based
at BASEPOINT = (0,1): the Cayley map z -> (z-i)/(z+i) sends the basepoint
to the disk center and the boundary to the unit circle.

Everything here is a pure function of immutable inputs; no shared state.
Infinity is handled by explicit case splits (math.inf as the boundary tag),
never by large-number surrogates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

INF = math.inf

#: Thin-triangle constant calibrated by ``calibrate_alpha`` (1e6 mixed random
#: triangles, seed 20240813, max of inscribed diameter and vertex offsets,
#: rounded up to 2 decimals).  The sup is attained on ideal triangles, where
#: the inscribed diameter is arccosh(3/2) ~ 0.9624.
DEFAULT_ALPHA = 0.97

TOL_EXACT = 1e-9
TOL_ORACLE = 1e-6


class GeometryError(ValueError):
    """Invalid geometric input (degenerate configuration, bad coordinates)."""


@dataclass(frozen=True)
class Point:
    """Point of the upper half-plane; im must be strictly positive."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise GeometryError(f"non-finite point ({self.re}, {self.im})")
        if self.im <= 0.0:
            raise GeometryError(f"point not in upper half-plane: im={self.im}")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @staticmethod
    def from_complex(z: complex) -> "Point":
        return Point(z.real, z.imag)


@dataclass(frozen=True)
class BoundaryPoint:
    """Point of the boundary circle R u {oo}; x = math.inf tags infinity."""

    x: float

    def __post_init__(self):
        if math.isnan(self.x):
            raise GeometryError("NaN boundary coordinate")
        if math.isinf(self.x) and self.x < 0:
            # single point at infinity
            object.__setattr__(self, "x", INF)

    @property
    def is_infinity(self) -> bool:
        return math.isinf(self.x)

    @property
    def angle(self) -> float:
        return boundary_angle(self)


#: Fixed basepoint o of the model; the disk chart is centered here.
BASEPOINT = Point(0.0, 1.0)
INFINITY = BoundaryPoint(INF)

TWO_PI = 2.0 * math.pi


def boundary_angle(xi: BoundaryPoint) -> float:
    """Disk-chart angle in [0, 2pi); strictly increasing in the real
    coordinate, with angle(oo) = 0."""
    if xi.is_infinity:
        return 0.0
    r = xi.x
    # arg((r-i)/(r+i)) = atan2(-2r, r^2-1), shifted into [0, 2pi)
    theta = math.atan2(-2.0 * r, r * r - 1.0)
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:
        theta = 0.0
    return theta


def boundary_from_angle(theta: float) -> BoundaryPoint:
    """Inverse of ``boundary_angle``: theta = 0 maps to oo, else -cot(theta/2)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t == 0.0:
        return INFINITY
    return BoundaryPoint(-1.0 / math.tan(t / 2.0))


# ---------------------------------------------------------------------------
# Moebius matrices as plain (a, b, c, d) tuples with det 1.
# The Isometry class in the group module wraps these.


def mobius_normalize(m):
    """Scale a positive-determinant real matrix to det 1."""
    a, b, c, d = m
    det = a * d - b * c
    if det <= 0.0:
        raise GeometryError(f"matrix determinant {det} not positive")
    s = math.sqrt(det)
    return (a / s, b / s, c / s, d / s)


def mobius_compose(m1, m2):
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


def mobius_inverse(m):
    a, b, c, d = m
    det = a * d - b * c
    return (d / det, -b / det, -c / det, a / det)


def mobius_point(m, p: Point) -> Point:
    a, b, c, d = m
    w = (a * p.z + b) / (c * p.z + d)
    return Point(w.real, w.imag)


def mobius_complex(m, z: complex) -> complex:
    a, b, c, d = m
    return (a * z + b) / (c * z + d)


def mobius_boundary(m, xi: BoundaryPoint) -> BoundaryPoint:
    a, b, c, d = m
    if xi.is_infinity:
        return BoundaryPoint(a / c) if c != 0.0 else INFINITY
    den = c * xi.x + d
    if den == 0.0:
        return INFINITY
    return BoundaryPoint((a * xi.x + b) / den)


def mobius_boundary_real(m, x: float) -> float:
    """Boundary action on raw real coordinates (inf tags infinity)."""
    a, b, c, d = m
    if math.isinf(x):
        return a / c if c != 0.0 else INF
    den = c * x + d
    if den == 0.0:
        return INF
    return (a * x + b) / den


def normalize_to_axis(u: BoundaryPoint, v: BoundaryPoint):
    """det-1 matrix sending u -> 0, v -> oo (geodesic (uv) to the imaginary
    axis, oriented upward)."""
    if u == v:
        raise GeometryError("coincident geodesic endpoints")
    if v.is_infinity:
        m = (1.0, -u.x, 0.0, 1.0)
    elif u.is_infinity:
        m = (0.0, -1.0, 1.0, -v.x)
    elif u.x > v.x:
        m = (1.0, -u.x, 1.0, -v.x)
    else:
        m = (1.0, -u.x, -1.0, v.x)
    return mobius_normalize(m)


# ---------------------------------------------------------------------------
# Distance and Busemann cocycle


def dist(x: Point, y: Point) -> float:
    """Hyperbolic distance, in the asinh form that is stable for nearby
    points (equivalent to the arccosh formula rewritten through log1p)."""
    dre = x.re - y.re
    dim = x.im - y.im
    chord = math.hypot(dre, dim)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(x.im * y.im)))


def _busemann_raw(xi: BoundaryPoint, p: Point) -> float:
    """b_xi(p) with the normalization b_xi(BASEPOINT-independent offset);
    only differences of values at the same xi are geometrically meaningful."""
    if xi.is_infinity:
        return -math.log(p.im)
    dre = p.re - xi.x
    return math.log(dre * dre + p.im * p.im) - math.log(p.im)


def busemann(xi: BoundaryPoint, x: Point, y: Point) -> float:
    """Busemann cocycle beta_xi(x, y) = lim_{z->xi} d(x,z) - d(y,z)."""
    return _busemann_raw(xi, x) - _busemann_raw(xi, y)


# ---------------------------------------------------------------------------
# Geodesics and rays


@dataclass(frozen=True)
class Geodesic:
    """Oriented bi-infinite geodesic given by its distinct ideal endpoints."""

    neg: BoundaryPoint
    pos: BoundaryPoint

    def __post_init__(self):
        if self.neg == self.pos:
            raise GeometryError("geodesic endpoints coincide")

    def euclidean(self):
        """('vertical', x) or ('semicircle', center, radius)."""
        if self.neg.is_infinity:
            return ("vertical", self.pos.x)
        if self.pos.is_infinity:
            return ("vertical", self.neg.x)
        c = 0.5 * (self.neg.x + self.pos.x)
        return ("semicircle", c, abs(self.pos.x - self.neg.x) / 2.0)

    def reversed(self) -> "Geodesic":
        return Geodesic(self.pos, self.neg)


def ray_backward_endpoint(x: Point, xi: BoundaryPoint) -> BoundaryPoint:
    """Second ideal endpoint of the geodesic through x with forward end xi."""
    if xi.is_infinity:
        return BoundaryPoint(x.re)
    if x.re == xi.x:
        return INFINITY
    c = (x.re * x.re + x.im * x.im - xi.x * xi.x) / (2.0 * (x.re - xi.x))
    return BoundaryPoint(2.0 * c - xi.x)


def forward_endpoint(x: Point, z: Point) -> BoundaryPoint:
    """Ideal endpoint of the ray from x through z (x != z)."""
    dre = z.re - x.re
    if abs(dre) < 1e-300:
        if z.im == x.im:
            raise GeometryError("coincident points have no direction")
        return INFINITY if z.im > x.im else BoundaryPoint(x.re)
    # semicircle through x and z centered on the real axis
    c = (z.re * z.re + z.im * z.im - x.re * x.re - x.im * x.im) / (2.0 * dre)
    rho = math.hypot(x.re - c, x.im)
    return BoundaryPoint(c + math.copysign(rho, dre))


def _ray_chart(x: Point, xi: BoundaryPoint):
    """det-1 matrix sending the ray [x xi) onto [i, i*oo): backward endpoint
    to 0, xi to oo, x to i."""
    m = normalize_to_axis(ray_backward_endpoint(x, xi), xi)
    y0 = abs(mobius_complex(m, x.z))
    s = math.sqrt(y0)
    return mobius_compose((1.0 / s, 0.0, 0.0, s), m)


def point_on_ray(x: Point, xi: BoundaryPoint, t: float) -> Point:
    """Point at arclength t >= 0 from x along the ray [x xi)."""
    if t < 0.0:
        raise GeometryError(f"negative ray parameter {t}")
    if t == 0.0:
        return x
    m = _ray_chart(x, xi)
    return mobius_point(mobius_inverse(m), Point(0.0, math.exp(t)))


def project_to_ray(eta: BoundaryPoint, x: Point, xi: BoundaryPoint) -> float:
    """Parameter t* >= 0 of the closest-point projection of eta on the ray
    [x xi), clamped at the origin.  eta = xi is degenerate."""
    if eta == xi:
        raise GeometryError("cannot project a boundary point onto a ray it spans")
    m = _ray_chart(x, xi)
    w = mobius_boundary(m, eta)
    if w.is_infinity:  # numerically collapsed onto xi
        raise GeometryError("projection target indistinguishable from ray endpoint")
    if w.x == 0.0:
        return 0.0  # antipode: foot escapes to the ray origin
    return max(0.0, math.log(abs(w.x)))


def project_to_geodesic(p, geo: Geodesic):
    """Foot of the perpendicular from p (Point or BoundaryPoint) to geo,
    returned as (foot Point, signed axis parameter from the chart unit)."""
    m = normalize_to_axis(geo.neg, geo.pos)
    minv = mobius_inverse(m)
    if isinstance(p, BoundaryPoint):
        w = mobius_boundary(m, p)
        if w.is_infinity or w.x == 0.0:
            raise GeometryError("cannot project an endpoint of the geodesic onto it")
        y = abs(w.x)
    else:
        z = mobius_complex(m, p.z)
        y = abs(z)
    return mobius_point(minv, Point(0.0, y)), math.log(y)


def dist_to_geodesic(p: Point, geo: Geodesic) -> float:
    foot, _ = project_to_geodesic(p, geo)
    return dist(p, foot)


def dist_to_segment(p: Point, a, b) -> float:
    """Distance from p to the geodesic segment [a b]; either endpoint may be
    a BoundaryPoint, in which case that end is a full ray."""
    ea = a if isinstance(a, BoundaryPoint) else None
    eb = b if isinstance(b, BoundaryPoint) else None
    if ea is not None and eb is not None:
        return dist_to_geodesic(p, Geodesic(ea, eb))
    if ea is None and eb is None:
        end_b = forward_endpoint(a, b)
        geo = Geodesic(ray_backward_endpoint(a, end_b), end_b)
        lo, hi = sorted((_axis_parameter(geo, a), _axis_parameter(geo, b)))
    elif eb is not None:
        geo = Geodesic(ray_backward_endpoint(a, eb), eb)
        lo, hi = _axis_parameter(geo, a), INF
    else:
        geo = Geodesic(ray_backward_endpoint(b, ea), ea)
        lo, hi = _axis_parameter(geo, b), INF
    m = normalize_to_axis(geo.neg, geo.pos)
    s = math.log(abs(mobius_complex(m, p.z)))
    s = min(max(s, lo), hi)
    foot = mobius_point(mobius_inverse(m), Point(0.0, math.exp(s)))
    return dist(p, foot)


def _axis_parameter(geo: Geodesic, p: Point) -> float:
    m = normalize_to_axis(geo.neg, geo.pos)
    return math.log(abs(mobius_complex(m, p.z)))


# ---------------------------------------------------------------------------
# Visual (Gromov) metric on the boundary


def _chordal_at_basepoint(xi: BoundaryPoint, eta: BoundaryPoint) -> float:
    """Visual distance seen from BASEPOINT: |xi-eta|/sqrt((1+xi^2)(1+eta^2)),
    with the oo cases by continuity."""
    if xi == eta:
        return 0.0
    if xi.is_infinity:
        return 1.0 / math.sqrt(1.0 + eta.x * eta.x)
    if eta.is_infinity:
        return 1.0 / math.sqrt(1.0 + xi.x * xi.x)
    return abs(xi.x - eta.x) / math.sqrt((1.0 + xi.x * xi.x) * (1.0 + eta.x * eta.x))


def visual_distance(x: Point, xi: BoundaryPoint, eta: BoundaryPoint) -> float:
    """Gromov visual metric d_x(xi, eta) = exp(-(xi|eta)_x); witness-free
    closed form (chordal metric at the basepoint times the conformal factor)."""
    if xi == eta:
        return 0.0
    base = _chordal_at_basepoint(xi, eta)
    factor = math.exp(-0.5 * busemann(xi, x, BASEPOINT)
                      - 0.5 * busemann(eta, x, BASEPOINT))
    return base * factor


# ---------------------------------------------------------------------------
# Arcs of the boundary circle


@dataclass(frozen=True)
class Arc:
    """Half-open boundary arc [lo, hi) in disk angles, counterclockwise,
    possibly wrapping; lo == hi encodes the full circle."""

    lo_angle: float
    hi_angle: float

    def __post_init__(self):
        for v in (self.lo_angle, self.hi_angle):
            if not math.isfinite(v):
                raise GeometryError("non-finite arc angle")
        object.__setattr__(self, "lo_angle", _wrap_angle(self.lo_angle))
        object.__setattr__(self, "hi_angle", _wrap_angle(self.hi_angle))

    @property
    def length(self) -> float:
        if self.lo_angle == self.hi_angle:
            return TWO_PI
        d = self.hi_angle - self.lo_angle
        return d if d > 0.0 else d + TWO_PI

    def contains_angle(self, theta: float) -> bool:
        d = _wrap_angle(theta - self.lo_angle)
        return d < self.length

    def contains(self, xi: BoundaryPoint) -> bool:
        return self.contains_angle(boundary_angle(xi))

    def contains_arc(self, other: "Arc") -> bool:
        if self.length == TWO_PI:
            return True
        a = _wrap_angle(other.lo_angle - self.lo_angle)
        return a + other.length <= self.length + 1e-12

    def sample_angles(self, n: int, margin: float = 0.0):
        """n angles evenly spread in the arc interior, margin away from the
        endpoints (as a fraction of the length)."""
        eps = self.length * max(margin, 1.0 / (n + 1))
        span = self.length - 2.0 * eps
        if span <= 0.0:
            return [ _wrap_angle(self.lo_angle + 0.5 * self.length) ]
        return [_wrap_angle(self.lo_angle + eps + span * k / max(n - 1, 1))
                for k in range(n)]


def _wrap_angle(theta: float) -> float:
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    return t


# ---------------------------------------------------------------------------
# Shadows and boundary neighborhoods


def shadow_arc(x: Point, xi: BoundaryPoint, t: float) -> Arc:
    """The neighborhood V(x, xi, t): boundary points whose projection on the
    ray [x xi) lies beyond arclength t.  Its closure is the arc cut out by
    the geodesic orthogonal to the ray at arclength t, on the xi side."""
    if t < 0.0:
        raise GeometryError(f"negative shadow parameter {t}")
    minv = mobius_inverse(_ray_chart(x, xi))
    r = math.exp(t)
    e1 = mobius_boundary(minv, BoundaryPoint(r))
    e2 = mobius_boundary(minv, BoundaryPoint(-r))
    a1, a2 = boundary_angle(e1), boundary_angle(e2)
    arc = Arc(a1, a2)
    if not arc.contains(xi):
        arc = Arc(a2, a1)
    return arc


def shadow_visual_radius(t: float) -> float:
    """Radius for which V(x, xi, t) is exactly the visual ball around xi."""
    e = math.exp(-t)
    return e / math.sqrt(1.0 + e * e)


def hamenstadt_neighborhood_contains(x: Point, xi: BoundaryPoint, t: float,
                                     eta: BoundaryPoint, alpha: float) -> bool:
    """Membership in D(x, xi, t): the rays toward xi and eta are within alpha
    of each other at arclength t (closed condition)."""
    if eta == xi:
        return True
    return dist(point_on_ray(x, xi, t), point_on_ray(x, eta, t)) <= alpha


def sullivan_shadow_contains(x: Point, xi: BoundaryPoint, t: float,
                             eta: BoundaryPoint, r: float = 1.0) -> bool:
    """Membership in the classical shadow O(x, xi, t): the ray [x eta) meets
    the ball of radius r around the point at arclength t on [x xi)."""
    target = point_on_ray(x, xi, t)
    if eta == xi:
        return True
    # distance from target to the ray [x eta): project, clamp, measure
    m = _ray_chart(x, eta)
    w = mobius_complex(m, target.z)
    foot_param = max(0.0, math.log(abs(w)))
    foot = mobius_point(mobius_inverse(m), Point(0.0, math.exp(foot_param)))
    return dist(target, foot) <= r


# ---------------------------------------------------------------------------
# Inscribed triangle (tangency triple of the defining distance equalities)


def _side_constant(a, b) -> float:
    """C_ab with f_a + f_b = C_ab along the side (a b), where f_v is the
    distance to a finite vertex or the Busemann function of an ideal one."""
    a_ideal = isinstance(a, BoundaryPoint)
    b_ideal = isinstance(b, BoundaryPoint)
    if not a_ideal and not b_ideal:
        return dist(a, b)
    if a_ideal and not b_ideal:
        return _busemann_raw(a, b)
    if b_ideal and not a_ideal:
        return _busemann_raw(b, a)
    # both ideal: b_a + b_b is constant on (a b); evaluate at a chart point
    m = normalize_to_axis(a, b)
    z = mobius_point(mobius_inverse(m), Point(0.0, 1.0))
    return _busemann_raw(a, z) + _busemann_raw(b, z)


def _point_on_side(a, b, fa_value: float) -> Point:
    """Point r on the side (a b) with f_a(r) = fa_value."""
    if not isinstance(a, BoundaryPoint):
        end = b if isinstance(b, BoundaryPoint) else forward_endpoint(a, b)
        return point_on_ray(a, end, max(fa_value, 0.0))
    if not isinstance(b, BoundaryPoint):
        # f_b(r) = C_ab - fa_value is the distance from b
        fb = _side_constant(a, b) - fa_value
        return point_on_ray(b, a, max(fb, 0.0))
    # both ideal: in the chart a -> 0, b -> oo the point is i*y with
    # b_a(inv(m)(iy)) = log y + const
    m = normalize_to_axis(a, b)
    minv = mobius_inverse(m)
    c1 = _busemann_raw(a, mobius_point(minv, Point(0.0, 1.0)))
    return mobius_point(minv, Point(0.0, math.exp(fa_value - c1)))


def inscribed_triangle(a, b, c):
    """Inscribed triple (p, q, r) of the triangle (a, b, c): p in [bc],
    q in [ac], r in [ab], with the matching conditions d(b,p)=d(b,r),
    d(c,p)=d(c,q) and d(a,q)=d(a,r) (Busemann equalization for ideal
    vertices).  Vertices are Points or BoundaryPoints, pairwise distinct."""
    for u, v in ((a, b), (b, c), (a, c)):
        if type(u) is type(v) and u == v:
            raise GeometryError("coincident triangle vertices")
    c_ab = _side_constant(a, b)
    c_bc = _side_constant(b, c)
    c_ac = _side_constant(a, c)
    x_a = 0.5 * (c_ab + c_ac - c_bc)
    x_b = 0.5 * (c_ab + c_bc - c_ac)
    x_c = 0.5 * (c_bc + c_ac - c_ab)
    p = _point_on_side(b, c, x_b)   # f_b(p) = x_b
    q = _point_on_side(a, c, x_a)   # f_a(q) = x_a
    r = _point_on_side(a, b, x_a)   # f_a(r) = x_a
    return p, q, r


def vertex_projections(a, b, c):
    """Projections (p', q', r') of the vertices a, b, c onto their opposite
    sides [bc], [ac], [ab]."""

    def proj(v, s1, s2):
        e1 = s1 if isinstance(s1, BoundaryPoint) else None
        e2 = s2 if isinstance(s2, BoundaryPoint) else None
        if e1 is None and e2 is None:
            end2 = forward_endpoint(s1, s2)
            geo = Geodesic(ray_backward_endpoint(s1, end2), end2)
            lo, hi = sorted((_axis_parameter(geo, s1), _axis_parameter(geo, s2)))
        elif e1 is None:
            geo = Geodesic(ray_backward_endpoint(s1, e2), e2)
            lo, hi = _axis_parameter(geo, s1), INF
        elif e2 is None:
            geo = Geodesic(ray_backward_endpoint(s2, e1), e1)
            lo, hi = _axis_parameter(geo, s2), INF
        else:
            geo, lo, hi = Geodesic(e1, e2), -INF, INF
        m = normalize_to_axis(geo.neg, geo.pos)
        if isinstance(v, BoundaryPoint):
            w = mobius_boundary(m, v)
            s = math.log(abs(w.x)) if not (w.is_infinity or w.x == 0.0) else 0.0
            if w.is_infinity:
                s = hi if math.isfinite(hi) else max(lo, 0.0) + 40.0
            elif w.x == 0.0:
                s = lo if math.isfinite(lo) else -40.0
        else:
            s = math.log(abs(mobius_complex(m, v.z)))
        s = min(max(s, lo), hi)
        return mobius_point(mobius_inverse(m), Point(0.0, math.exp(s)))

    return proj(a, b, c), proj(b, a, c), proj(c, a, b)


def inscribed_diameter(a, b, c) -> float:
    p, q, r = inscribed_triangle(a, b, c)
    return max(dist(p, q), dist(q, r), dist(p, r))


# ---------------------------------------------------------------------------
# Horoballs


@dataclass(frozen=True)
class Horoball:
    """Horoball {y : beta_center(y, BASEPOINT) <= level}; the boundary
    horocycle carries the constant Busemann value ``level``."""

    center: BoundaryPoint
    level: float

    def __post_init__(self):
        if not math.isfinite(self.level):
            raise GeometryError("non-finite horoball level")

    @staticmethod
    def through(center: BoundaryPoint, boundary_point: Point) -> "Horoball":
        return Horoball(center, busemann(center, boundary_point, BASEPOINT))

    @staticmethod
    def at_infinity(height: float) -> "Horoball":
        """The horoball {Im z >= height}."""
        if height <= 0.0:
            raise GeometryError("horoball height must be positive")
        return Horoball(INFINITY, -math.log(height))

    @property
    def euclidean_height(self) -> float:
        """Half-plane size: Im of the boundary line (center oo) or the
        Euclidean diameter of the tangent disk (finite center)."""
        if self.center.is_infinity:
            return math.exp(-self.level)
        return (1.0 + self.center.x ** 2) * math.exp(self.level)

    def disk_diameter(self) -> float:
        """Euclidean diameter of the image in the disk chart."""
        k = self.euclidean_height
        if self.center.is_infinity:
            # {Im >= k} maps to the disk tangent to the circle at 1 through C(ik)
            w = (complex(0.0, k) - 1j) / (complex(0.0, k) + 1j)
            return abs(1.0 - w)
        zc = complex(self.center.x, 0.0)
        ztop = complex(self.center.x, k)
        wc = (zc - 1j) / (zc + 1j)
        wt = (ztop - 1j) / (ztop + 1j)
        return abs(wc - wt)

    def shrink(self, n: float) -> "Horoball":
        """Horoball shrunk by Busemann depth n > 0 (deeper toward the center)."""
        return Horoball(self.center, self.level - n)


def horoball_depth(h: Horoball, x: Point) -> float:
    """Busemann excess of x over the boundary horocycle: positive strictly
    inside, zero on the boundary, negative outside."""
    return h.level - busemann(h.center, x, BASEPOINT)


def mobius_horoball(m, h: Horoball) -> Horoball:
    """Image horoball under the Moebius map m (an isometry of the model)."""
    new_center = mobius_boundary(m, h.center)
    # beta_{m.c}(m y, o) = beta_c(y, o) + beta_{m.c}(m o, o) on the boundary
    shift = busemann(new_center, mobius_point(m, BASEPOINT), BASEPOINT)
    return Horoball(new_center, h.level + shift)


def ray_entry_time(x: Point, xi: BoundaryPoint, h: Horoball):
    """First arclength t >= 0 at which the ray [x xi) enters the horoball,
    or None if the ray misses it.  Requires x outside (depth <= 0)."""
    d0 = horoball_depth(h, x)
    if d0 > TOL_EXACT:
        raise GeometryError(f"ray origin lies inside the horoball (depth {d0})")
    # chart sending the horoball center to oo: horoball becomes {Im >= h0}
    if h.center.is_infinity:
        m = (1.0, 0.0, 0.0, 1.0)
    else:
        m = mobius_normalize((0.0, -1.0, 1.0, -h.center.x))
    himg = mobius_horoball(m, h)
    h0 = himg.euclidean_height
    xz = mobius_complex(m, x.z)
    eta = mobius_boundary(m, xi)
    if eta.is_infinity:
        # straight up into the horoball
        t = math.log(h0 / xz.imag)
        return max(t, 0.0)
    if abs(xz.real - eta.x) < 1e-300:
        return None  # straight down, away from the center at oo
    back = ray_backward_endpoint(Point(xz.real, xz.imag), eta)
    if back.is_infinity:
        return None  # vertical descent
    u, v = back.x, eta.x
    c0 = 0.5 * (u + v)
    rho = 0.5 * abs(v - u)
    if rho < h0:
        return None  # the whole semicircle stays below the horoball
    cap = math.acosh(rho / h0)  # |s| <= cap inside the horoball
    # unit-speed parameter of x on the semicircle, oriented toward eta
    sx = math.atanh(max(-1.0, min(1.0, (xz.real - c0) / rho)))
    if v < u:
        sx = -sx  # orient increasing toward the forward endpoint
    if sx < -cap:
        return -cap - sx
    if sx > cap:
        return None  # past the horoball, moving away
    return 0.0  # on the boundary circle (precondition rules out the interior)


# ---------------------------------------------------------------------------
# Parameters and calibration


@dataclass(frozen=True)
class GeometryParams:
    """Numerical contract shared by the comparison-lemma predicates."""

    alpha: float = DEFAULT_ALPHA
    tol_exact: float = TOL_EXACT
    tol_oracle: float = TOL_ORACLE

    def __post_init__(self):
        if self.alpha < 0.0:
            raise GeometryError("alpha must be nonnegative")
        if self.tol_exact <= 0.0 or self.tol_oracle <= 0.0:
            raise GeometryError("tolerances must be positive")

    @property
    def k1(self) -> float:
        return 6.0 * self.alpha

    def k2(self, d: float) -> float:
        return 2.0 * d + 4.0 * self.alpha


def calibrate_alpha(n: int = 1_000_000, seed: int = 20240813) -> float:
    """Empirical thin-triangle constant: max over n random triangles (mixed
    finite/ideal vertices) of the inscribed diameter and the vertex-to-
    inscribed offsets, rounded up to 2 decimals."""
    import random

    rng = random.Random(seed)
    worst = 0.0

    def rand_vertex():
        kind = rng.random()
        if kind < 0.4:
            return boundary_from_angle(rng.uniform(0.0, TWO_PI))
        theta = rng.uniform(0.0, TWO_PI)
        d = rng.uniform(0.0, 10.0)
        rho = math.tanh(d / 2.0)
        w = complex(rho * math.cos(theta), rho * math.sin(theta))
        z = 1j * (1.0 + w) / (1.0 - w)
        return Point(z.real, max(z.imag, 1e-12))

    made = 0
    while made < n:
        a, b, c = rand_vertex(), rand_vertex(), rand_vertex()
        try:
            p, q, r = inscribed_triangle(a, b, c)
            pp, qq, rr = vertex_projections(a, b, c)
            m = max(dist(p, q), dist(q, r), dist(p, r),
                    dist(p, pp), dist(q, qq), dist(r, rr))
        except GeometryError:
            continue
        made += 1
        if m > worst:
            worst = m
    return math.ceil(worst * 100.0) / 100.0
