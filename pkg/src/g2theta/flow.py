"""Flow constants, inversion differential equations, addition and derivative formulas.

The recovered pair (x1(u,v), x2(u,v)) obeys first-order flow equations

    dx1/du = (A + B x2) sigma1 / (x2 - x1)
    dx2/du = -(A + B x1) sigma2 / (x2 - x1)

(and the same in v with constants C, D), where A, B, C, D come from four
scalars a_u, b_u, c_v, d_v built out of theta-null derivatives.  Inverting
the 2x2 system gives the Abelian differentials

    du = sum_i (P + Q x_i) dx_i / sigma_i,   dv = sum_i (R + S x_i) dx_i / sigma_i

with P = -C/det, Q = -D/det, R = A/det, S = B/det, det = AD - BC.

Closed forms are certified against central finite differences of the
recovered pair.  The sigma_i carry one essential overall sign (the class
choice of recover_pair is only fixed up to simultaneous negation by the
squared parameterizations), so residuals are minimized over that single
global sign; the relative sign between sigma1 and sigma2 is fixed and
meaningful, and a wrong relative sign fails loudly.

Derivative nulls are always term-wise differentiated series, never finite
differences; the finite-difference noise budget is reserved for the outer
comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CoincidentPoints,
    SingularDenominator,
    SingularJacobian,
    StencilCrossesDivisor,
    TildeMismatch,
)
from .inversion import recover_pair
from .moduli import moduli_from_tau
from .theta import (
    HalfCharacteristic,
    PeriodMatrix,
    Point2,
    SeriesControl,
    theta2,
    theta2_grad,
    theta_null,
    theta_null_grad,
)

__all__ = [
    "FlowConstants",
    "flow_constants",
    "flow_residuals",
    "abelian_differential_residuals",
    "addition_formula_residuals",
    "derivative_formula_residuals",
]


@dataclass(frozen=True)
class FlowConstants:
    a_u: complex
    b_u: complex
    c_v: complex
    d_v: complex
    A: complex
    B: complex
    C: complex
    D: complex
    P: complex
    Q: complex
    R: complex
    S: complex
    det: complex


def _nul(bits, tau, ctrl):
    return theta_null(HalfCharacteristic(*bits), tau, ctrl)


def flow_constants(
    tau: PeriodMatrix, ctrl: SeriesControl = SeriesControl()
) -> FlowConstants:
    """Build the flow constants from theta-null derivatives at the origin.

    a_u and b_u have a second, independent expression (different null
    prefactors); both are computed and must agree to 1e-8 relative, else the
    moduli-root branch bookkeeping upstream is broken and we refuse to
    return.
    """
    ms = moduli_from_tau(tau, ctrl)
    du1010, dv1010 = theta_null_grad(HalfCharacteristic(1, 0, 1, 0), tau, ctrl)
    du1110, dv1110 = theta_null_grad(HalfCharacteristic(1, 1, 1, 0), tau, ctrl)
    den = _nul((1, 0, 0, 1), tau, ctrl) * _nul((0, 0, 0, 1), tau, ctrl)
    den_tilde = _nul((1, 0, 0, 1), tau, ctrl) * _nul((0, 0, 1, 1), tau, ctrl)

    a_u = 2.0 / (ms.kp2 * ms.k02 * ms.k12) * _nul((0, 0, 1, 0), tau, ctrl) * du1010 / den
    b_u = 2.0 / (ms.kp1 * ms.k01 * ms.k12) * _nul((0, 1, 1, 0), tau, ctrl) * du1110 / den
    a_tilde = 2.0 / (ms.k02 * ms.k12) * _nul((0, 0, 0, 0), tau, ctrl) * du1010 / den_tilde
    b_tilde = 2.0 / (ms.k01 * ms.k12) * _nul((0, 1, 0, 0), tau, ctrl) * du1110 / den_tilde
    if abs(a_u - a_tilde) > 1e-8 * abs(a_u):
        raise TildeMismatch(f"a = {a_u} but tilde expression gives {a_tilde}")
    if abs(b_u - b_tilde) > 1e-8 * abs(b_u):
        raise TildeMismatch(f"b = {b_u} but tilde expression gives {b_tilde}")

    c_v = 2.0 / (ms.kp2 * ms.k02 * ms.k12) * _nul((0, 0, 1, 0), tau, ctrl) * dv1010 / den
    d_v = 2.0 / (ms.kp1 * ms.k01 * ms.k12) * _nul((0, 1, 1, 0), tau, ctrl) * dv1110 / den

    big_a = -a_u + b_u
    big_b = a_u * ms.k2_sq - b_u * ms.k1_sq
    big_c = -c_v + d_v
    big_d = c_v * ms.k2_sq - d_v * ms.k1_sq
    det = big_a * big_d - big_b * big_c
    scale = max(abs(big_a * big_d), abs(big_b * big_c))
    if abs(det) <= 1e-12 * scale:
        raise SingularJacobian(f"AD - BC = {det} is numerically singular")
    return FlowConstants(
        a_u=a_u, b_u=b_u, c_v=c_v, d_v=d_v,
        A=big_a, B=big_b, C=big_c, D=big_d,
        P=-big_c / det, Q=-big_d / det, R=big_a / det, S=big_b / det,
        det=det,
    )


def _match_to_reference(ref: tuple[complex, complex], cand) -> tuple[complex, complex]:
    """Label an unordered pair consistently with a nearby reference pair."""
    a1, a2 = cand
    keep = abs(a1 - ref[0]) + abs(a2 - ref[1])
    swap = abs(a2 - ref[0]) + abs(a1 - ref[1])
    return (a1, a2) if keep <= swap else (a2, a1)


def _pair_stencil(point: Point2, tau: PeriodMatrix, ctrl: SeriesControl, h: float):
    """Center pair plus matched pairs at (u +- h, v) and (u, v +- h)."""
    center = recover_pair(point, tau, ctrl)
    ref = (center.x1, center.x2)

    def pair_at(du: float, dv: float):
        try:
            p = recover_pair(Point2(point.u + du, point.v + dv), tau, ctrl)
        except (SingularDenominator, CoincidentPoints) as exc:
            raise StencilCrossesDivisor(
                f"stencil point at offset ({du}, {dv}) failed: {exc}"
            ) from exc
        return _match_to_reference(ref, (p.x1, p.x2))

    up, um = pair_at(h, 0.0), pair_at(-h, 0.0)
    vp, vm = pair_at(0.0, h), pair_at(0.0, -h)
    d_du = ((up[0] - um[0]) / (2 * h), (up[1] - um[1]) / (2 * h))
    d_dv = ((vp[0] - vm[0]) / (2 * h), (vp[1] - vm[1]) / (2 * h))
    return center, d_du, d_dv


def flow_residuals(
    point: Point2,
    tau: PeriodMatrix,
    ctrl: SeriesControl = SeriesControl(),
    h: float = 1e-5,
) -> list[float]:
    """Residuals |FD - closed form| for dx1/du, dx2/du, dx1/dv, dx2/dv."""
    fc = flow_constants(tau, ctrl)
    center, d_du, d_dv = _pair_stencil(point, tau, ctrl, h)
    x1, x2 = center.x1, center.x2
    dx = x2 - x1

    best = None
    for s in (1.0, -1.0):
        sg1, sg2 = s * center.sigma1, s * center.sigma2
        closed = (
            (fc.A + fc.B * x2) * sg1 / dx,
            -(fc.A + fc.B * x1) * sg2 / dx,
            (fc.C + fc.D * x2) * sg1 / dx,
            -(fc.C + fc.D * x1) * sg2 / dx,
        )
        fd = (d_du[0], d_du[1], d_dv[0], d_dv[1])
        res = [
            abs(f - c) / (1.0 + max(abs(f), abs(c))) for f, c in zip(fd, closed)
        ]
        if best is None or max(res) < max(best):
            best = res
    return best


def abelian_differential_residuals(
    point: Point2,
    tau: PeriodMatrix,
    ctrl: SeriesControl = SeriesControl(),
    h: float = 1e-5,
) -> list[float]:
    """Residuals of the inverted system: du and dv recovered from dx1, dx2."""
    fc = flow_constants(tau, ctrl)
    center, d_du, d_dv = _pair_stencil(point, tau, ctrl, h)
    x1, x2 = center.x1, center.x2

    best = None
    for s in (1.0, -1.0):
        sg1, sg2 = s * center.sigma1, s * center.sigma2
        du_rec = (fc.P + fc.Q * x1) * d_du[0] / sg1 + (fc.P + fc.Q * x2) * d_du[1] / sg2
        dv_rec = (fc.R + fc.S * x1) * d_dv[0] / sg1 + (fc.R + fc.S * x2) * d_dv[1] / sg2
        res = [abs(du_rec - 1.0), abs(dv_rec - 1.0)]
        if best is None or max(res) < max(best):
            best = res
    return best


def _th(bits, point, tau, ctrl):
    return theta2(HalfCharacteristic(*bits), point, tau, ctrl)


def addition_formula_residuals(
    p: Point2, q: Point2, tau: PeriodMatrix, ctrl: SeriesControl = SeriesControl()
) -> list[float]:
    """Residuals of the two four-point addition theorems at (p, q)."""
    plus = Point2(p.u + q.u, p.v + q.v)
    minus = Point2(p.u - q.u, p.v - q.v)

    lhs1 = (
        _nul((1, 0, 0, 1), tau, ctrl)
        * _nul((0, 0, 0, 1), tau, ctrl)
        * (
            _th((1, 0, 1, 1), plus, tau, ctrl) * _th((0, 0, 1, 1), minus, tau, ctrl)
            - _th((0, 0, 1, 1), plus, tau, ctrl) * _th((1, 0, 1, 1), minus, tau, ctrl)
        )
    )
    rhs1 = 2.0 * (
        _th((1, 0, 0, 0), p, tau, ctrl)
        * _th((0, 0, 0, 0), p, tau, ctrl)
        * _th((0, 0, 1, 0), q, tau, ctrl)
        * _th((1, 0, 1, 0), q, tau, ctrl)
        - _th((1, 1, 0, 0), p, tau, ctrl)
        * _th((0, 1, 0, 0), p, tau, ctrl)
        * _th((1, 1, 1, 0), q, tau, ctrl)
        * _th((0, 1, 1, 0), q, tau, ctrl)
    )

    lhs2 = (
        _nul((1, 0, 0, 1), tau, ctrl)
        * _nul((0, 0, 1, 1), tau, ctrl)
        * (
            _th((1, 0, 0, 1), plus, tau, ctrl) * _th((0, 0, 1, 1), minus, tau, ctrl)
            - _th((0, 0, 1, 1), plus, tau, ctrl) * _th((1, 0, 0, 1), minus, tau, ctrl)
        )
    )
    rhs2 = 2.0 * (
        -_th((0, 0, 0, 0), p, tau, ctrl)
        * _th((1, 0, 1, 0), p, tau, ctrl)
        * _th((0, 0, 0, 0), q, tau, ctrl)
        * _th((1, 0, 1, 0), q, tau, ctrl)
        + _th((0, 1, 0, 0), p, tau, ctrl)
        * _th((1, 1, 1, 0), p, tau, ctrl)
        * _th((0, 1, 0, 0), q, tau, ctrl)
        * _th((1, 1, 1, 0), q, tau, ctrl)
    )
    return [
        abs(lhs1 - rhs1) / (1.0 + max(abs(lhs1), abs(rhs1))),
        abs(lhs2 - rhs2) / (1.0 + max(abs(lhs2), abs(rhs2))),
    ]


def derivative_formula_residuals(
    point: Point2, tau: PeriodMatrix, ctrl: SeriesControl = SeriesControl()
) -> list[float]:
    """Residuals of the four closed forms for d/du, d/dv of two theta ratios.

    The derivative of theta[10;11]/theta[00;11] (and of theta[10;01]/theta[00;11])
    is evaluated through term-wise gradients and the quotient rule, and
    compared against products of nulls, null derivatives, and theta values.
    Both sides here are the quotient-rule numerators (derivative times the
    squared denominator), which avoids dividing by small values twice.
    """
    ref = _th((0, 0, 1, 1), point, tau, ctrl)
    scale = max(
        abs(theta_null(c, tau, ctrl))
        for c in (HalfCharacteristic(0, 0, 0, 0), HalfCharacteristic(0, 0, 1, 1))
    )
    if abs(ref) <= 1e-10 * scale:
        raise SingularDenominator("theta[00;11] vanishes at the point")

    g1011 = theta2_grad(HalfCharacteristic(1, 0, 1, 1), point, tau, ctrl)
    g1001 = theta2_grad(HalfCharacteristic(1, 0, 0, 1), point, tau, ctrl)
    g0011 = theta2_grad(HalfCharacteristic(0, 0, 1, 1), point, tau, ctrl)
    t1011 = _th((1, 0, 1, 1), point, tau, ctrl)
    t1001 = _th((1, 0, 0, 1), point, tau, ctrl)
    d1010 = theta_null_grad(HalfCharacteristic(1, 0, 1, 0), tau, ctrl)
    d1110 = theta_null_grad(HalfCharacteristic(1, 1, 1, 0), tau, ctrl)

    out = []
    for idx in (0, 1):
        lhs = (
            _nul((1, 0, 0, 1), tau, ctrl)
            * _nul((0, 0, 0, 1), tau, ctrl)
            * (g1011[idx] * ref - t1011 * g0011[idx])
        )
        rhs = (
            _nul((0, 0, 1, 0), tau, ctrl)
            * d1010[idx]
            * _th((1, 0, 0, 0), point, tau, ctrl)
            * _th((0, 0, 0, 0), point, tau, ctrl)
            - _nul((0, 1, 1, 0), tau, ctrl)
            * d1110[idx]
            * _th((1, 1, 0, 0), point, tau, ctrl)
            * _th((0, 1, 0, 0), point, tau, ctrl)
        )
        out.append(abs(lhs - rhs) / (1.0 + max(abs(lhs), abs(rhs))))
    for idx in (0, 1):
        lhs = (
            _nul((1, 0, 0, 1), tau, ctrl)
            * _nul((0, 0, 1, 1), tau, ctrl)
            * (g1001[idx] * ref - t1001 * g0011[idx])
        )
        rhs = (
            -_nul((0, 0, 0, 0), tau, ctrl)
            * d1010[idx]
            * _th((0, 0, 0, 0), point, tau, ctrl)
            * _th((1, 0, 1, 0), point, tau, ctrl)
            + _nul((0, 1, 0, 0), tau, ctrl)
            * d1110[idx]
            * _th((0, 1, 0, 0), point, tau, ctrl)
            * _th((1, 1, 1, 0), point, tau, ctrl)
        )
        out.append(abs(lhs - rhs) / (1.0 + max(abs(lhs), abs(rhs))))
    return out
