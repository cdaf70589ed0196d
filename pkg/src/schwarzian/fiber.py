"""Schwarzian primitives: local power-series reconstruction and the global
Wronskian-fiber solver for prescribed simple critical points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Poly,
    RationalMap,
    TruncatedSeries,
    poly_discriminant,
    poly_resultant,
    series_inv,
    series_mul,
)
from .errors import DegenerateInput, ObstructionNonzero
from .quaddiff import laurent_at

OBSTRUCTION_TOL = 1e-8
RESIDUAL_TOL = 1e-9
DEDUP_TOL = 1e-6
ILL_CONDITION_CAP = 1e10


def catalan(d: int) -> int:
    """u_d = C(2(d-1), d-1) / d."""
    if d < 1:
        raise DegenerateInput("d must be >= 1")
    return math.comb(2 * (d - 1), d - 1) // d


@dataclass(frozen=True)
class NormalizedMapCoords:
    """Coefficient vector a = (a_p, a_q) of the normalized degree-(mu+1) family.

    p_a(z) = sum a_p[i] z^i + 0*z^mu + z^(mu+1),  q_a(z) = sum a_q[i] z^i + z^mu.
    """

    mu: int
    a_p: tuple
    a_q: tuple

    def __post_init__(self):
        object.__setattr__(self, "a_p", tuple(complex(c) for c in self.a_p))
        object.__setattr__(self, "a_q", tuple(complex(c) for c in self.a_q))
        if self.mu < 1 or len(self.a_p) != self.mu or len(self.a_q) != self.mu:
            raise DegenerateInput("need mu >= 1 and mu coefficients on each side")

    def p_poly(self) -> Poly:
        return Poly(list(self.a_p) + [0j, 1.0])

    def q_poly(self) -> Poly:
        return Poly(list(self.a_q) + [1.0])

    def vector(self):
        return np.array(list(self.a_p) + list(self.a_q), dtype=complex)

    @staticmethod
    def from_vector(mu, vec):
        vec = list(vec)
        return NormalizedMapCoords(mu, tuple(vec[:mu]), tuple(vec[mu:]))


@dataclass
class FiberSolveReport:
    """Outcome of Newton restarts on the Wronskian fiber over a monic target."""

    target: Poly
    solutions: list = field(default_factory=list)
    attempts: int = 0
    seed: int = 0
    residuals: list = field(default_factory=list)
    expected_max: int = 0
    warning: bool = False
    target_outside_omega_prime: bool = False
    ill_conditioned: bool = False


def local_g(d: int, q: TruncatedSeries, order: int) -> TruncatedSeries:
    """Solve 2(d-1)g' - 2zg'' = qg for g = 1 + c_1 z + ... + c_{order-1} z^{order-1}.

    Recursion -k_n c_n = a_n + a_{n-1} c_1 + ... + a_1 c_{n-1} with
    k_n = 2n(n-d); at the resonant index n = d the right side must vanish
    (ObstructionNonzero otherwise) and c_d is set to 0.
    """
    if d < 1:
        raise DegenerateInput("d must be >= 1")
    if order < d + 1:
        raise DegenerateInput("order must be >= d + 1")
    a = list(q.coeffs)
    scale = 1.0 + max((abs(x) for x in a), default=0.0)
    c = [1.0 + 0j]
    for n in range(1, order):
        rhs = 0j
        for j in range(n):
            if n - j - 1 < len(a):
                rhs += a[n - j - 1] * c[j]
        if n == d:
            if abs(rhs) > OBSTRUCTION_TOL * scale:
                raise ObstructionNonzero(rhs)
            c.append(0j)
        else:
            c.append(-rhs / (2.0 * n * (n - d)))
    return TruncatedSeries(base=q.base, coeffs=tuple(c))


def local_primitive(phi: RationalMap, c, order: int) -> TruncatedSeries:
    """Taylor coefficients about c of the normalized primitive f = int t^(d-1)/g(t)^2.

    f(c) = 0 with leading term (z-c)^d / d; requires the germ of phi at c to
    carry an integer local degree hint.
    """
    germ = laurent_at(phi, c, order)
    d = germ.local_degree_hint
    if d is None:
        raise DegenerateInput(
            f"leading coefficient {germ.leading} is not (1-d^2)/2 for integer d")
    q = TruncatedSeries(base=complex(c), coeffs=germ.residue_and_tail)
    g = local_g(d, q, order)
    g2 = series_mul(list(g.coeffs), list(g.coeffs), order)
    h = series_inv(g2, order)
    coeffs = [0j] * (d + order)
    for k, hk in enumerate(h):
        coeffs[d + k] = hk / (d + k)
    return TruncatedSeries(base=complex(c), coeffs=tuple(coeffs))


def wronskian(coords: NormalizedMapCoords) -> Poly:
    """w_a = p'q - q'p, a monic polynomial of degree 2*mu."""
    p, q = coords.p_poly(), coords.q_poly()
    return p.deriv() * q - q.deriv() * p


def _w_coeff_vector(coords):
    w = wronskian(coords)
    n = 2 * coords.mu
    out = np.zeros(n, dtype=complex)
    for i, c in enumerate(w.coeffs[:n]):
        out[i] = c
    return out


def wronskian_jacobian(coords: NormalizedMapCoords):
    """Jacobian of a -> (coefficients 0..2mu-1 of w_a), columns (a_p, a_q).

    Rows are coefficient indices; entries follow from the bilinearity
    dW = dp'.q - q'.dp + p'.dq - dq'.p applied to the monomial directions.
    """
    mu = coords.mu
    p, q = coords.p_poly(), coords.q_poly()
    pp, qp = p.deriv(), q.deriv()
    n = 2 * mu
    jac = np.zeros((n, n), dtype=complex)
    for i in range(mu):
        zi = Poly([0j] * i + [1.0])
        dzi = zi.deriv()
        col_p = dzi * q - qp * zi
        col_q = pp * zi - dzi * p
        for row, c in enumerate(col_p.coeffs[:n]):
            jac[row, i] = c
        for row, c in enumerate(col_q.coeffs[:n]):
            jac[row, mu + i] = c
    return jac


def _newton_run(mu, target_vec, start, max_iter=100):
    x = np.array(start, dtype=complex)
    fx = _w_coeff_vector(NormalizedMapCoords.from_vector(mu, x)) - target_vec
    res = float(np.max(np.abs(fx)))
    for _ in range(max_iter):
        # Iterate to the rounding floor: singular fibers converge linearly and
        # the coordinate error goes like sqrt(residual).
        if res == 0.0:
            break
        jac = wronskian_jacobian(NormalizedMapCoords.from_vector(mu, x))
        try:
            step = np.linalg.solve(jac, fx)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)):
            return None
        lam = 1.0
        for _ in range(20):
            x_new = x - lam * step
            f_new = _w_coeff_vector(NormalizedMapCoords.from_vector(mu, x_new)) - target_vec
            res_new = float(np.max(np.abs(f_new)))
            if res_new < res:
                break
            lam *= 0.5
        else:
            break
        x, fx, res = x_new, f_new, res_new
    if res <= RESIDUAL_TOL:
        return x, res
    return None


def solve_fiber(target: Poly, attempts: int | None = None, seed: int = 42) -> FiberSolveReport:
    """Newton restarts on a -> coeffs(w_a) over a monic even-degree target.

    Deterministic for fixed (target, attempts, seed): per-start RNG streams
    are derived from (seed, start index) and converged points are merged in
    start-index order, deduplicated at max-norm distance 1e-6.
    """
    if target.degree < 2 or target.degree % 2 != 0:
        raise DegenerateInput("target must be monic of even degree 2*mu >= 2")
    if abs(target.lead - 1.0) > 1e-9:
        raise DegenerateInput("target must be monic")
    mu = target.degree // 2
    if attempts is None:
        attempts = 64 * catalan(mu + 1)
    if attempts < 1:
        raise DegenerateInput("attempts must be >= 1")
    target_vec = np.zeros(2 * mu, dtype=complex)
    for i, c in enumerate(target.coeffs[: 2 * mu]):
        target_vec[i] = c
    report = FiberSolveReport(target=target, attempts=attempts, seed=seed,
                              expected_max=catalan(mu + 1))
    try:
        report.target_outside_omega_prime = abs(poly_discriminant(target)) <= 1e-9 * (
            1.0 + target.scale() ** (2 * mu))
    except DegenerateInput:
        report.target_outside_omega_prime = True
    radius = 1.0 + target.scale() ** (1.0 / (2 * mu))
    for start_index in range(attempts):
        rng = np.random.default_rng([seed, start_index])
        r = radius * np.sqrt(rng.uniform(0.0, 1.0, size=2 * mu))
        theta = rng.uniform(0.0, 2.0 * np.pi, size=2 * mu)
        start = r * np.exp(1j * theta)
        got = _newton_run(mu, target_vec, start)
        if got is None:
            continue
        x, res = got
        if any(np.max(np.abs(x - s.vector())) <= DEDUP_TOL for s in report.solutions):
            continue
        sol = NormalizedMapCoords.from_vector(mu, x)
        jac = wronskian_jacobian(sol)
        svals = np.linalg.svd(jac, compute_uv=False)
        if svals[-1] > 0 and svals[0] / svals[-1] > ILL_CONDITION_CAP:
            report.ill_conditioned = True
        report.solutions.append(sol)
        report.residuals.append(res)
    if not report.solutions:
        report.warning = True
    return report


def coords_to_map(coords: NormalizedMapCoords) -> RationalMap:
    """f_a = p_a / q_a, the degree-(mu+1) rational map of the coordinates."""
    p, q = coords.p_poly(), coords.q_poly()
    res = poly_resultant(p, q)
    if abs(res) <= 1e-9 * (1.0 + p.scale() * q.scale()) ** (p.degree + q.degree):
        raise DegenerateInput("p and q share a root; coordinates outside Omega")
    return RationalMap(p, q, reduce=False)


def reconstruct_rational(points, attempts: int | None = None, seed: int = 42):
    """All degree-d rational maps (mod postcomposition) with the given 2d-2
    simple critical points, via the Wronskian fiber."""
    pts = [complex(p) for p in points]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) <= 1e-12 * (1.0 + abs(pts[i])):
                raise DegenerateInput("critical points must be pairwise distinct")
    if len(pts) % 2 != 0 or not pts:
        raise DegenerateInput("need an even number 2d-2 of critical points")
    target = Poly.from_roots(pts)
    report = solve_fiber(target, attempts=attempts, seed=seed)
    maps = [coords_to_map(s) for s in report.solutions]
    return maps, report
