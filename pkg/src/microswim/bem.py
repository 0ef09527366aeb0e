"""Axisymmetric boundary-element Stokes solver for bodies of revolution.

Direct boundary-integral formulation for the exterior flow around a closed
body of revolution with boundary velocity u(x):

    (1/(8 pi eta)) SL[t](x0) = (1/(8 pi)) int (u(x) - u(x0)) . T(x, x0) . n(x) dS
                               - u(x0)

for collocation points x0 on the surface, where t is the exterior traction
(stress . outward normal), SL the single-layer (Stokeslet) potential, and
the double-layer term is desingularized by subtracting u(x0) (the Gauss
identity absorbs the principal value and the 1/2 jump).  For rigid surface
velocity the double-layer term vanishes and the classical single-layer
equation SL[t] = -8 pi eta u is recovered.

The single-layer ring kernels are closed forms in the complete elliptic
integrals K and E (evaluated by arithmetic-geometric-mean iteration); the
double-layer ring integrals are done numerically in the azimuth with a
sinh-stretched grid near the singular point.  The self-element of the
single layer is handled by subtracting the logarithmic part analytically
and integrating the remainder on a graded (cubically stretched) grid.

Solved problems: rigid-translation resistance (drag), the mobility problem
for a prescribed tangential squirming profile with a force-free body, spin
resistance about the symmetry axis (swirl), and a time-stepped oracle for
the mean speed of small-amplitude surface-oscillation propulsion.  The
traction solved for is determined up to an additive multiple of the normal
(the classical single-layer null density); forces, swimming speeds, and
the powers reported here are invariant to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .errors import GeometryError, InvalidParameterError, NumericalError
from .modes import ModeSpectrum, _displacement_fields
from .scenarios import Scenario

__all__ = [
    "SpheroidShape",
    "BemMesh",
    "BemSolution",
    "spheroid_mesh",
    "drag_translation",
    "solve_swim",
    "spin_torque",
    "swim_oscillation_oracle",
    "oberbeck_axial_drag",
    "ellip_KE",
]


# ----------------------------------------------------------------------
# elliptic integrals and ring kernels
# ----------------------------------------------------------------------

def ellip_KE(k2):
    """Complete elliptic integrals (K(k), E(k)) for parameter m = k^2.

    Arithmetic-geometric-mean iteration, relative error below 1e-12 for
    0 <= k^2 < 1; vectorized.
    """
    k2 = np.asarray(k2, dtype=float)
    if np.any((k2 < 0.0) | (k2 >= 1.0)):
        raise InvalidParameterError("elliptic parameter must satisfy 0 <= k^2 < 1")
    a = np.ones_like(k2)
    b = np.sqrt(1.0 - k2)
    c2_sum = 0.5 * k2  # accumulates 2^(n-1) c_n^2; c_0 = k enters with weight 1/2
    power = 0.5
    for _ in range(60):
        an = 0.5 * (a + b)
        bn = np.sqrt(a * b)
        c = 0.5 * (a - b)
        power *= 2.0
        c2_sum = c2_sum + power * c * c
        a, b = an, bn
        if np.all(np.abs(c) < 1e-17 * a):
            break
    K = 0.5 * math.pi / a
    E = K * (1.0 - 0.5 * c2_sum)
    return K, E


def _ring_J(rho0, z0, rho1, z1):
    """Azimuthal integrals J = (J1_0, J1_1, J3_0, J3_1, J3_2).

    J_{n,m} = int_0^{2pi} cos^m(phi) / r(phi)^n dphi with
    r^2 = A - B cos(phi), A = rho0^2 + rho1^2 + dz^2, B = 2 rho0 rho1.
    Closed forms in K, E for moderate modulus; a trapezoid rule (spectrally
    accurate for these smooth periodic integrands) for small modulus where
    the closed forms lose digits to cancellation.
    """
    rho0, z0, rho1, z1 = np.broadcast_arrays(*map(np.asarray, (rho0, z0, rho1, z1)))
    dz = z0 - z1
    A = rho0 * rho0 + rho1 * rho1 + dz * dz
    B = 2.0 * rho0 * rho1
    r2sq = A + B
    k2 = np.clip(2.0 * B / r2sq, 0.0, 1.0 - 1e-16)

    out = [np.empty_like(A) for _ in range(5)]
    small = k2 < 5e-3
    big = ~small

    if np.any(big):
        kk2 = k2[big]
        K, E = ellip_KE(kk2)
        kc2 = 1.0 - kk2
        r2 = np.sqrt(r2sq[big])
        r23 = r2 ** 3
        S0 = E / kc2
        S1 = (S0 - K) / kk2
        S2 = (2.0 * S1 - S0) / kk2
        C1 = (K - E) / kk2
        out[0][big] = 4.0 * K / r2
        out[1][big] = (4.0 / r2) * (2.0 * C1 - K)
        out[2][big] = 4.0 * S0 / r23
        out[3][big] = (4.0 / r23) * (2.0 * S1 - S0)
        out[4][big] = (4.0 / r23) * (4.0 * S2 - 4.0 * S1 + S0)

    if np.any(small):
        phi = (np.arange(48) + 0.5) * (2.0 * math.pi / 48)
        cph = np.cos(phi)
        rr = np.sqrt(A[small][..., None] - B[small][..., None] * cph)
        w = 2.0 * math.pi / 48
        inv1 = 1.0 / rr
        inv3 = inv1 / (rr * rr)
        out[0][small] = w * inv1.sum(-1)
        out[1][small] = w * (inv1 * cph).sum(-1)
        out[2][small] = w * inv3.sum(-1)
        out[3][small] = w * (inv3 * cph).sum(-1)
        out[4][small] = w * (inv3 * cph * cph).sum(-1)

    return out


def ring_stokeslet(rho0, z0, rho1, z1):
    """Azimuthally integrated Stokeslet kernel between meridional points.

    Maps a ring force density with cylindrical components (q_rho, q_z) to
    the velocity at (rho0, z0): returns (Mrr, Mrz, Mzr, Mzz) such that
    u_rho = Mrr q_rho + Mrz q_z etc. (ring radius factor not included).
    """
    J10, J11, J30, J31, J32 = _ring_J(rho0, z0, rho1, z1)
    dz = np.asarray(z0) - np.asarray(z1)
    rho0 = np.asarray(rho0)
    rho1 = np.asarray(rho1)
    Mrr = J11 + (rho0 * rho0 + rho1 * rho1) * J31 - rho0 * rho1 * (J30 + J32)
    Mrz = dz * (rho0 * J30 - rho1 * J31)
    Mzr = dz * (rho0 * J31 - rho1 * J30)
    Mzz = J10 + dz * dz * J30
    return Mrr, Mrz, Mzr, Mzz


def ring_swirl(rho0, z0, rho1, z1):
    """Azimuthal (swirl) ring kernel: u_phi = M q_phi."""
    J10, J11, J30, J31, J32 = _ring_J(rho0, z0, rho1, z1)
    return J11 + np.asarray(rho0) * np.asarray(rho1) * (J30 - J32)


# ----------------------------------------------------------------------
# geometry
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpheroidShape:
    """Prolate spheroid with symmetry semi-axis ``a`` >= equatorial ``b``."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a >= self.b > 0.0):
            raise InvalidParameterError(
                f"spheroid needs a >= b > 0, got a={self.a!r}, b={self.b!r}"
            )

    @property
    def is_sphere(self) -> bool:
        return self.a == self.b


def spheroid_curve(shape: SpheroidShape):
    """Generatrix (rho, z, drho/dt, dz/dt) of a spheroid, t in [0, pi]."""

    def curve(t):
        t = np.asarray(t, dtype=float)
        return (shape.b * np.sin(t), shape.a * np.cos(t),
                shape.b * np.cos(t), -shape.a * np.sin(t))

    return curve


class BemMesh:
    """Collocation mesh on a generatrix curve.

    Elements are curve segments between parameter nodes; collocation is at
    parameter midpoints with piecewise-constant densities.  Element arc
    lengths are the true curve arc lengths (16-point Gauss per element),
    so they sum to the generatrix arc length to rounding error.
    """

    NGAUSS = 8

    def __init__(self, curve, N: int, breakpoints=()):
        if N < 8:
            raise InvalidParameterError(f"need at least 8 elements, got {N}")
        self.curve = curve
        edges = self._build_edges(N, breakpoints)
        self.t_edges = edges
        self.N = len(edges) - 1
        self.t_mid = 0.5 * (edges[:-1] + edges[1:])
        rho, z, dr, dzt = curve(self.t_mid)
        jac = np.hypot(dr, dzt)
        if np.any(rho <= 0.0) or np.any(jac <= 0.0):
            raise GeometryError("generatrix must have rho > 0 away from the poles")
        self.rho = rho
        self.z = z
        self.normal = np.stack([-dzt / jac, dr / jac], axis=1)  # outward (n_rho, n_z)
        self.tangent = np.stack([dr / jac, dzt / jac], axis=1)

        # per-element Gauss nodes for regular integration
        x_g, w_g = roots_legendre(self.NGAUSS)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = self.t_mid
        tg = mid[:, None] + half[:, None] * x_g[None, :]
        rg, zg, drg, dzg = curve(tg.ravel())
        jg = np.hypot(drg, dzg)
        self.g_t = tg
        self.g_rho = rg.reshape(tg.shape)
        self.g_z = zg.reshape(tg.shape)
        self.g_jac = jg.reshape(tg.shape)
        self.g_w = (half[:, None] * w_g[None, :])
        ng_rho = (-dzg / jg).reshape(tg.shape)
        ng_z = (drg / jg).reshape(tg.shape)
        self.g_normal = np.stack([ng_rho, ng_z], axis=2)
        tg_rho = (drg / jg).reshape(tg.shape)
        tg_z = (dzg / jg).reshape(tg.shape)
        self.g_tangent = np.stack([tg_rho, tg_z], axis=2)

        # arc lengths with a finer rule
        x16, w16 = roots_legendre(16)
        t16 = mid[:, None] + half[:, None] * x16[None, :]
        _, _, dr16, dz16 = curve(t16.ravel())
        j16 = np.hypot(dr16, dz16).reshape(t16.shape)
        self.arc_lengths = (half[:, None] * w16[None, :] * j16).sum(axis=1)
        r16, _, _, _ = curve(t16.ravel())
        self.ring_areas = 2.0 * math.pi * (
            half[:, None] * w16[None, :] * j16 * r16.reshape(t16.shape)
        ).sum(axis=1)

        self.char_length = float(np.max(self.arc_lengths))

    @staticmethod
    def _build_edges(N: int, breakpoints) -> np.ndarray:
        breaks = sorted(b for b in breakpoints if 1e-12 < b < math.pi - 1e-12)
        pts = [0.0] + breaks + [math.pi]
        edges = []
        for lo, hi in zip(pts[:-1], pts[1:]):
            n = max(2, int(round(N * (hi - lo) / math.pi)))
            seg = np.linspace(lo, hi, n + 1)
            edges.append(seg[:-1] if hi < math.pi else seg)
        return np.concatenate(edges)

    def total_arc_length(self) -> float:
        return float(np.sum(self.arc_lengths))


# ----------------------------------------------------------------------
# single-layer assembly
# ----------------------------------------------------------------------

def _self_element_rows(mesh: BemMesh, i: int):
    """Quadrature nodes and log-correction for the singular self element.

    Returns (t nodes, weights incl. jacobian*rho, analytic log integral).
    The kernel behaves like -(2/rho0) ln(s) per diagonal component near the
    collocation point; that part is subtracted under the quadrature and
    integrated in closed form over the flat-element approximation.
    """
    ta, tb = mesh.t_edges[i], mesh.t_edges[i + 1]
    tc = mesh.t_mid[i]
    x_g, w_g = roots_legendre(16)
    u = 0.5 * (x_g + 1.0)  # (0,1)
    w_u = 0.5 * w_g
    nodes = []
    weights = []
    for end in (ta, tb):
        span = end - tc
        # cubic grading toward tc; innermost node kept a finite distance
        # away so the elliptic-integral cancellation keeps enough digits
        s = span * (1e-4 + (1.0 - 1e-4) * u ** 3)
        ds = span * 3.0 * (1.0 - 1e-4) * u ** 2
        nodes.append(tc + s)
        weights.append(np.abs(ds) * w_u)
    t_nodes = np.concatenate(nodes)
    w_nodes = np.concatenate(weights)
    rho, z, dr, dz = mesh.curve(t_nodes)
    jac = np.hypot(dr, dz)

    # analytic integral of ln(J |t - tc|) over the element
    J_c = float(np.hypot(*mesh.curve(tc)[2:]))
    H1, H2 = tc - ta, tb - tc
    log_int = (H1 * (math.log(J_c * H1) - 1.0) + H2 * (math.log(J_c * H2) - 1.0))
    return t_nodes, w_nodes, rho, z, jac, J_c, log_int


def assemble_single_layer(mesh: BemMesh) -> np.ndarray:
    """Matrix S with u(x0_i) = S q / (8 pi eta) for piecewise-constant q.

    Unknown ordering: (q_rho_0..q_rho_N-1, q_z_0..q_z_N-1); rows likewise.
    """
    N = mesh.N
    S = np.zeros((2 * N, 2 * N))
    for i in range(N):
        r0, z0 = mesh.rho[i], mesh.z[i]

        # regular elements (including near ones, with subdivision)
        dist = np.hypot(mesh.g_rho - r0, mesh.g_z - z0).min(axis=1)
        near = dist < 3.0 * mesh.arc_lengths
        for j in range(N):
            if j == i:
                continue
            if near[j]:
                tg, wg = _subdivided_nodes(mesh, j, r0, z0)
                rg, zg, drg, dzg = mesh.curve(tg)
                jg = np.hypot(drg, dzg)
                Mrr, Mrz, Mzr, Mzz = ring_stokeslet(r0, z0, rg, zg)
                wfull = wg * jg * rg
            else:
                rg, zg = mesh.g_rho[j], mesh.g_z[j]
                Mrr, Mrz, Mzr, Mzz = ring_stokeslet(r0, z0, rg, zg)
                wfull = mesh.g_w[j] * mesh.g_jac[j] * rg
            S[i, j] += float(np.sum(wfull * Mrr))
            S[i, N + j] += float(np.sum(wfull * Mrz))
            S[N + i, j] += float(np.sum(wfull * Mzr))
            S[N + i, N + j] += float(np.sum(wfull * Mzz))

        # self element: graded quadrature with analytic log subtraction
        t_n, w_n, rg, zg, jg, J_c, log_int = _self_element_rows(mesh, i)
        Mrr, Mrz, Mzr, Mzz = ring_stokeslet(r0, z0, rg, zg)
        s_dist = np.abs(t_n - mesh.t_mid[i])
        log_term = -(2.0 / r0) * np.log(J_c * s_dist)
        wfull = w_n * jg * rg
        w_log = w_n * J_c * r0  # flat-element weight paired with the closed form
        # quadrature of (full kernel - log part) + analytic integral of the log
        corr = -(2.0 / r0) * r0 * log_int
        S[i, i] += float(np.sum(wfull * Mrr - w_log * log_term)) + corr
        S[i, N + i] += float(np.sum(wfull * Mrz))
        S[N + i, i] += float(np.sum(wfull * Mzr))
        S[N + i, N + i] += float(np.sum(wfull * Mzz - w_log * log_term)) + corr
    return S


def _subdivided_nodes(mesh: BemMesh, j: int, r0: float, z0: float, nsub: int = 8):
    """Gauss nodes on element j subdivided for near-singular integration."""
    ta, tb = mesh.t_edges[j], mesh.t_edges[j + 1]
    x_g, w_g = roots_legendre(8)
    edges = np.linspace(ta, tb, nsub + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    tg = (mids[:, None] + half[:, None] * x_g[None, :]).ravel()
    wg = (half[:, None] * w_g[None, :]).ravel()
    return tg, wg


def assemble_swirl_layer(mesh: BemMesh) -> np.ndarray:
    """N x N single-layer matrix for azimuthal (swirl) flow."""
    N = mesh.N
    S = np.zeros((N, N))
    for i in range(N):
        r0, z0 = mesh.rho[i], mesh.z[i]
        dist = np.hypot(mesh.g_rho - r0, mesh.g_z - z0).min(axis=1)
        near = dist < 3.0 * mesh.arc_lengths
        for j in range(N):
            if j == i:
                continue
            if near[j]:
                tg, wg = _subdivided_nodes(mesh, j, r0, z0)
                rg, zg, drg, dzg = mesh.curve(tg)
                jg = np.hypot(drg, dzg)
                M = ring_swirl(r0, z0, rg, zg)
                S[i, j] += float(np.sum(wg * jg * rg * M))
            else:
                rg, zg = mesh.g_rho[j], mesh.g_z[j]
                M = ring_swirl(r0, z0, rg, zg)
                S[i, j] += float(np.sum(mesh.g_w[j] * mesh.g_jac[j] * rg * M))
        t_n, w_n, rg, zg, jg, J_c, log_int = _self_element_rows(mesh, i)
        M = ring_swirl(r0, z0, rg, zg)
        s_dist = np.abs(t_n - mesh.t_mid[i])
        log_term = -(2.0 / r0) * np.log(J_c * s_dist)
        corr = -(2.0 / r0) * r0 * log_int
        S[i, i] += float(np.sum(w_n * jg * rg * M - w_n * J_c * r0 * log_term)) + corr
    return S


# ----------------------------------------------------------------------
# double layer action
# ----------------------------------------------------------------------

def _dl_ring_integrand(rho0, z0, rho1, z1, n_rho, n_z, u_rho, u_z, u0_rho, u0_z, phi, wphi):
    """Sum over azimuth of -6 (du . xh)(xh . n) xh / r^5 (components rho, z at x0).

    ``phi``/``wphi`` may be 1-d (shared grid) or 2-d (per-point grids).
    Source quantities broadcast against the phi axis (last axis).
    """
    cph = np.cos(phi)
    sph = np.sin(phi)
    xh_x = rho0 - rho1[..., None] * cph
    xh_y = -rho1[..., None] * sph
    xh_z = (z0 - z1)[..., None] + 0.0 * cph
    r2 = xh_x ** 2 + xh_y ** 2 + xh_z ** 2
    du_x = u_rho[..., None] * cph - u0_rho
    du_y = u_rho[..., None] * sph
    du_z = (u_z - u0_z)[..., None] + 0.0 * cph
    n_x = n_rho[..., None] * cph
    n_y = n_rho[..., None] * sph
    n_zz = n_z[..., None] + 0.0 * cph
    dot_un = (du_x * xh_x + du_y * xh_y + du_z * xh_z) * (
        n_x * xh_x + n_y * xh_y + n_zz * xh_z
    )
    scal = -6.0 * dot_un / (r2 ** 2 * np.sqrt(r2))
    out_rho = (scal * xh_x * wphi).sum(axis=-1)
    out_z = (scal * xh_z * wphi).sum(axis=-1)
    return out_rho, out_z


def double_layer_action(mesh: BemMesh, u_rho_g: np.ndarray, u_z_g: np.ndarray,
                        u_rho_c: np.ndarray, u_z_c: np.ndarray) -> np.ndarray:
    """(1/(8 pi)) int (u - u(x0)) . T . n dS at every collocation point.

    ``u_*_g`` hold the boundary velocity at the mesh Gauss nodes (shape
    (N, NGAUSS)) and ``u_*_c`` at the collocation points (shape (N,)).
    Returns a 2N vector ordered like the single-layer rows.  The kernel's
    azimuthal peak (width ~ distance/radius) is resolved with a sinh-
    stretched grid for near pairs and a plain trapezoid farther away.
    """
    N = mesh.N
    out = np.zeros(2 * N)
    rho_g = mesh.g_rho.ravel()
    z_g = mesh.g_z.ravel()
    n_rho = mesh.g_normal[:, :, 0].ravel()
    n_z = mesh.g_normal[:, :, 1].ravel()
    w_g = (mesh.g_w * mesh.g_jac * mesh.g_rho).ravel()
    u_r = u_rho_g.ravel()
    u_zf = u_z_g.ravel()

    for i in range(N):
        r0, z0 = mesh.rho[i], mesh.z[i]
        dist = np.hypot(rho_g - r0, z_g - z0)
        rbar = np.sqrt(np.maximum(rho_g * r0, 1e-300))
        wpeak = dist / rbar

        acc_rho = 0.0
        acc_z = 0.0
        far = wpeak >= 0.15
        if np.any(far):
            nphi = 256
            phi = (np.arange(nphi) + 0.5) * (2.0 * math.pi / nphi)
            wphi = np.full(nphi, 2.0 * math.pi / nphi)
            o_r, o_z = _dl_ring_integrand(
                r0, z0, rho_g[far], z_g[far], n_rho[far], n_z[far],
                u_r[far], u_zf[far], u_rho_c[i], u_z_c[i], phi, wphi,
            )
            acc_rho += float(np.sum(w_g[far] * o_r))
            acc_z += float(np.sum(w_g[far] * o_z))

        nearm = ~far
        if np.any(nearm):
            # phi = w sinh(s): resolves the algebraic peak of width w exactly
            x_s, w_s = roots_legendre(48)
            w_loc = np.maximum(wpeak[nearm], 1e-8)
            smax = np.arcsinh(math.pi / w_loc)
            s = 0.5 * (x_s[None, :] + 1.0) * smax[:, None]
            phi = w_loc[:, None] * np.sinh(s)
            dphi = w_loc[:, None] * np.cosh(s) * 0.5 * smax[:, None] * w_s[None, :]
            # even integrand: integrate phi in (0, pi) and double
            o_r, o_z = _dl_ring_integrand(
                r0, z0, rho_g[nearm], z_g[nearm], n_rho[nearm], n_z[nearm],
                u_r[nearm], u_zf[nearm], u_rho_c[i], u_z_c[i], phi, 2.0 * dphi,
            )
            acc_rho += float(np.sum(w_g[nearm] * o_r))
            acc_z += float(np.sum(w_g[nearm] * o_z))

        out[i] = acc_rho / (8.0 * math.pi)
        out[N + i] = acc_z / (8.0 * math.pi)
    return out


# ----------------------------------------------------------------------
# solvers
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BemSolution:
    """Traction density, rigid velocity, and power of a solved problem."""

    mesh: BemMesh
    traction: np.ndarray      # (N, 2) exterior traction (t_rho, t_z), Pa
    rigid_velocity: float     # translation along the symmetry axis, m/s
    power: float              # delivered to the fluid, W

    @property
    def total_force_z(self) -> float:
        return float(np.sum(self.traction[:, 1] * self.mesh.ring_areas))


def spheroid_mesh(shape: SpheroidShape, N: int = 128, breakpoints=()) -> BemMesh:
    return BemMesh(spheroid_curve(shape), N, breakpoints=breakpoints)


def _solve_dense(A: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Row-equilibrated least-squares solve (rank-deficient by the normal
    null density; the minimum-norm solution is taken)."""
    norms = np.linalg.norm(A, axis=1)
    norms[norms == 0.0] = 1.0
    sol, *_ = np.linalg.lstsq(A / norms[:, None], rhs / norms, rcond=1e-10)
    return sol


def drag_translation(shape: SpheroidShape, eta: float, U: float, N: int = 128) -> float:
    """Drag force for rigid axial translation at speed ``U`` (resistance).

    Returns the force required to pull the body, 6 pi eta a U for a sphere.
    """
    if eta <= 0.0 or U < 0.0:
        raise InvalidParameterError("need eta > 0 and U >= 0")
    mesh = spheroid_mesh(shape, N)
    sol = _solve_rigid(mesh, eta, U)
    return -sol.total_force_z


def _solve_rigid(mesh: BemMesh, eta: float, U: float) -> BemSolution:
    """Resistance problem: boundary velocity U zhat, traction unknown."""
    N = mesh.N
    S = assemble_single_layer(mesh)
    rhs = np.concatenate([np.zeros(N), -8.0 * math.pi * eta * U * np.ones(N)])
    q = _solve_dense(S, rhs)
    traction = np.stack([q[:N], q[N:]], axis=1)
    sol = BemSolution(mesh=mesh, traction=traction, rigid_velocity=U, power=0.0)
    power = -U * sol.total_force_z
    return BemSolution(mesh=mesh, traction=traction, rigid_velocity=U, power=power)


def solve_swim(shape: SpheroidShape, surface_velocity, eta: float,
               N: int = 128, breakpoints=(), mesh: BemMesh | None = None,
               curve=None) -> BemSolution:
    """Mobility problem: tangential actuation, force-free body.

    ``surface_velocity(t)`` returns the boundary velocity (u_rho, u_z) at
    generatrix parameter(s) t, in the body frame.  The solved rigid
    translation U (along +z) and exterior traction give the propulsion
    power P = -int u . t dS >= 0.
    """
    if mesh is None:
        if curve is not None:
            mesh = BemMesh(curve, N, breakpoints=breakpoints)
        else:
            mesh = spheroid_mesh(shape, N, breakpoints=breakpoints)
    Nel = mesh.N
    S = assemble_single_layer(mesh)

    us_rho_g, us_z_g = surface_velocity(mesh.g_t)
    us_rho_c, us_z_c = surface_velocity(mesh.t_mid)
    dl = double_layer_action(mesh, np.asarray(us_rho_g), np.asarray(us_z_g),
                             np.asarray(us_rho_c), np.asarray(us_z_c))

    # Unknowns: (q_rho, q_z, U).  Equations: collocation (2N) + force-free.
    A = np.zeros((2 * Nel + 1, 2 * Nel + 1))
    A[: 2 * Nel, : 2 * Nel] = S / (8.0 * math.pi * eta)
    A[Nel: 2 * Nel, 2 * Nel] = 1.0  # U zhat on the left side
    A[2 * Nel, Nel: 2 * Nel] = mesh.ring_areas
    rhs = np.zeros(2 * Nel + 1)
    rhs[:Nel] = dl[:Nel] - us_rho_c
    rhs[Nel: 2 * Nel] = dl[Nel:] - us_z_c
    sol = _solve_dense(A, rhs)
    traction = np.stack([sol[:Nel], sol[Nel: 2 * Nel]], axis=1)
    U = float(sol[2 * Nel])

    u_rho_tot = us_rho_c
    u_z_tot = us_z_c + U
    power = -float(np.sum(
        (u_rho_tot * traction[:, 0] + u_z_tot * traction[:, 1]) * mesh.ring_areas
    ))
    return BemSolution(mesh=mesh, traction=traction, rigid_velocity=U, power=power)


def spin_torque(shape: SpheroidShape, eta: float, omega: float, N: int = 128) -> float:
    """Torque resisting rigid rotation about the symmetry axis.

    Returns |T|/omega * omega = magnitude of the hydrodynamic torque;
    8 pi eta a^3 omega for a sphere.
    """
    if eta <= 0.0 or omega < 0.0:
        raise InvalidParameterError("need eta > 0 and omega >= 0")
    mesh = spheroid_mesh(shape, N)
    S = assemble_swirl_layer(mesh)
    rhs = -8.0 * math.pi * eta * omega * mesh.rho
    q = _solve_dense(S, rhs)
    torque = float(np.sum(q * mesh.rho * mesh.ring_areas))
    return abs(torque)


def oberbeck_axial_drag(shape: SpheroidShape, eta: float, U: float) -> float:
    """Closed-form drag of a prolate spheroid translating along its axis.

    F = 16 pi eta U / (chi + a^2 alpha_a) with the classical ellipsoid
    integrals chi = 2L/c, alpha_a = (2/c^3)(L - c/a), L = ln((a+c)/b);
    reduces to 6 pi eta a U for a sphere.
    """
    a, b = shape.a, shape.b
    c = math.sqrt(max(a * a - b * b, 0.0))
    if c < 1e-8 * a:
        return 6.0 * math.pi * eta * a * U
    L = math.log((a + c) / b)
    chi = 2.0 * L / c
    alpha_a = (2.0 / c ** 3) * (L - c / a)
    return 16.0 * math.pi * eta * U / (chi + a * a * alpha_a)


# ----------------------------------------------------------------------
# oscillation oracle
# ----------------------------------------------------------------------

def _deformed_curve(spec: ModeSpectrum, a: float, tau: float):
    """Generatrix of the deformed sphere at phase tau, parameterized by the
    reference angle; raises GeometryError on self-intersection."""
    from .spherestokes import legendre_basis

    n, A, B, gam, etap = spec.arrays()
    eps = spec.epsilon
    nmax = spec.nmax
    al = A * np.cos(tau - gam)
    be = B * np.cos(tau - etap)

    def curve(t):
        t = np.asarray(t, dtype=float)
        mu = np.cos(t)
        basis = legendre_basis(nmax, mu.ravel())
        f = np.einsum("i,ij->j", al, basis.P[n]).reshape(t.shape)
        g = np.einsum("i,ij->j", be, basis.V[n]).reshape(t.shape)
        df = np.einsum("i,ij->j", al, basis.dP_dth[n]).reshape(t.shape)
        dg = np.einsum("i,ij->j", be, basis.dP1_dth[n] / (np.asarray(n)[:, None] + 1.0)
                       ).reshape(t.shape)
        r = a * (1.0 + eps * f)
        th = t + eps * g
        dr = a * eps * df
        dth = 1.0 + eps * dg
        rho = r * np.sin(th)
        z = r * np.cos(th)
        drho = dr * np.sin(th) + r * np.cos(th) * dth
        dz = dr * np.cos(th) - r * np.sin(th) * dth
        return rho, z, drho, dz

    # basic sanity: the mapped polar angle must stay monotone
    probe = np.linspace(1e-3, math.pi - 1e-3, 512)
    _, _, drho, dz = curve(probe)
    if np.any(np.hypot(drho, dz) <= 0.0):
        raise GeometryError("deformed generatrix is degenerate (epsilon too large)")
    basis = legendre_basis(nmax, np.cos(probe))
    g = np.einsum("i,ij->j", be, basis.V[n])
    if np.any(np.diff(probe + eps * g) <= 0.0):
        raise GeometryError("surface folds over itself (epsilon too large)")
    return curve


def swim_oscillation_oracle(spec: ModeSpectrum, a: float, scenario: Scenario,
                            n_periods: int = 1, N: int = 128,
                            steps_per_period: int = 64) -> float:
    """Mean swimming speed by time-stepping the deforming body.

    At each step the instantaneous quasi-static mobility problem is solved
    on the deformed generatrix with the material boundary velocity; the
    force-free translation is averaged over ``n_periods`` periods.  Wholly
    independent of the O(eps^2) expansion.
    """
    if not spec.normalized:
        raise InvalidParameterError("spectrum must be normalized")
    if spec.epsilon > 0.05:
        raise InvalidParameterError("oracle validated for epsilon <= 0.05")
    if spec.epsilon == 0.0:
        return 0.0
    eta = scenario.eta
    omega = spec.omega
    n, A, B, gam, etap = spec.arrays()
    eps = spec.epsilon
    nmax = spec.nmax
    from .spherestokes import legendre_basis

    n_steps = n_periods * steps_per_period
    taus = 2.0 * math.pi * n_periods * (np.arange(n_steps) + 0.5) / n_steps
    U_sum = 0.0
    for tau in taus:
        curve = _deformed_curve(spec, a, tau)
        dal = -A * np.sin(tau - gam)
        dbe = -B * np.sin(tau - etap)

        def material_velocity(t, dal=dal, dbe=dbe, tau=tau):
            t = np.asarray(t, dtype=float)
            mu = np.cos(t.ravel())
            basis = legendre_basis(nmax, mu)
            al = A * np.cos(tau - gam)
            be = B * np.cos(tau - etap)
            f = np.einsum("i,ij->j", al, basis.P[n])
            g = np.einsum("i,ij->j", be, basis.V[n])
            fdot = np.einsum("i,ij->j", dal, basis.P[n])
            gdot = np.einsum("i,ij->j", dbe, basis.V[n])
            r = a * (1.0 + eps * f)
            th = t.ravel() + eps * g
            v_r = a * eps * omega * fdot
            v_t = r * eps * omega * gdot
            u_rho = v_r * np.sin(th) + v_t * np.cos(th)
            u_z = v_r * np.cos(th) - v_t * np.sin(th)
            return u_rho.reshape(t.shape), u_z.reshape(t.shape)

        sol = solve_swim(None, material_velocity, eta, N=N, curve=curve)
        U_sum += sol.rigid_velocity
    return U_sum / n_steps
