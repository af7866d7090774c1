"""Riemann transform on argument quadruples and the eight theta relations.

Four products of theta values over a quadruple of points,

    M   = prod theta[00;00](u_i, v_i) + prod theta[01;00](u_i, v_i)
    M'  = prod theta[10;00](u_i, v_i) + prod theta[11;00](u_i, v_i)
    M'' = prod theta[10;10](u_i, v_i) + prod theta[11;10](u_i, v_i)
    M'''= prod theta[00;10](u_i, v_i) + prod theta[01;10](u_i, v_i)

satisfy linear relations against the same products evaluated at the
transformed quadruple (u~, v~) = (A u, A v), where A is the orthogonal
involution (1/2)[[1,1,1,1],[1,1,-1,-1],[1,-1,1,-1],[1,-1,-1,1]].  With
S = 2A the relations read 2*(M, M', M'', M''') = S * (M~, M'~, M''~, M'''~)
and symmetrically with both sides swapped.

Also here: the three fundamental squared-theta identities in two variables
linking a product of nulls and theta values across four characteristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .theta import (
    HalfCharacteristic,
    PeriodMatrix,
    Point2,
    SeriesControl,
    theta2,
    theta_null,
)

__all__ = [
    "Quadruple",
    "ProductVariant",
    "riemann_transform",
    "product_m",
    "riemann_relation_residuals",
    "fundamental_identity_residuals",
]


@dataclass(frozen=True)
class Quadruple:
    points: tuple[Point2, Point2, Point2, Point2]

    def __post_init__(self):
        if len(self.points) != 4:
            raise ValueError("quadruple needs exactly 4 points")


class ProductVariant(Enum):
    M = "M"
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"


_VARIANT_PAIRS = {
    ProductVariant.M: (HalfCharacteristic(0, 0, 0, 0), HalfCharacteristic(0, 1, 0, 0)),
    ProductVariant.M1: (HalfCharacteristic(1, 0, 0, 0), HalfCharacteristic(1, 1, 0, 0)),
    ProductVariant.M2: (HalfCharacteristic(1, 0, 1, 0), HalfCharacteristic(1, 1, 1, 0)),
    ProductVariant.M3: (HalfCharacteristic(0, 0, 1, 0), HalfCharacteristic(0, 1, 1, 0)),
}

# rows of 2A; its own inverse up to the factor 4 (S @ S == 4 I)
_S_ROWS = (
    (1, 1, 1, 1),
    (1, 1, -1, -1),
    (1, -1, 1, -1),
    (1, -1, -1, 1),
)


def riemann_transform(q: Quadruple) -> Quadruple:
    us = [p.u for p in q.points]
    vs = [p.v for p in q.points]
    new = []
    for row in _S_ROWS:
        nu = sum(w * x for w, x in zip(row, us)) / 2.0
        nv = sum(w * x for w, x in zip(row, vs)) / 2.0
        new.append(Point2(nu, nv))
    return Quadruple(tuple(new))


def product_m(
    variant: ProductVariant,
    q: Quadruple,
    tau: PeriodMatrix,
    ctrl: SeriesControl = SeriesControl(),
) -> complex:
    total = 0.0 + 0.0j
    for c in _VARIANT_PAIRS[variant]:
        prod = 1.0 + 0.0j
        for p in q.points:
            prod *= theta2(c, p, tau, ctrl)
        total += prod
    return total


def _relation_residuals(lhs_vec, rhs_vec):
    """Residuals of 2*lhs_i = sum_j S_ij rhs_j, normalized per relation."""
    out = []
    for i, row in enumerate(_S_ROWS):
        lhs = 2.0 * lhs_vec[i]
        rhs = sum(w * m for w, m in zip(row, rhs_vec))
        scale = 1.0 + max(
            abs(lhs), max(abs(m) for m in rhs_vec)
        )
        out.append(abs(lhs - rhs) / scale)
    return out


def riemann_relation_residuals(
    q: Quadruple, tau: PeriodMatrix, ctrl: SeriesControl = SeriesControl()
) -> list[float]:
    """Eight residuals: the four forward relations, then the four inverse ones."""
    qt = riemann_transform(q)
    variants = (ProductVariant.M, ProductVariant.M1, ProductVariant.M2, ProductVariant.M3)
    m = [product_m(t, q, tau, ctrl) for t in variants]
    mt = [product_m(t, qt, tau, ctrl) for t in variants]
    return _relation_residuals(m, mt) + _relation_residuals(mt, m)


# each identity: null(n0)^2 th(t0)^2 = sum of signed null^2 th^2 terms
_FUNDAMENTAL_TERMS = (
    (
        ((0, 0, 0, 0), (0, 0, 0, 0)),
        (
            (1, (0, 0, 1, 0), (0, 0, 1, 0)),
            (1, (1, 0, 0, 0), (1, 0, 0, 0)),
            (1, (1, 1, 1, 1), (1, 1, 1, 1)),
        ),
    ),
    (
        ((0, 1, 0, 0), (0, 0, 0, 0)),
        (
            (1, (0, 1, 1, 0), (0, 0, 1, 0)),
            (1, (1, 1, 0, 0), (1, 0, 0, 0)),
            (1, (1, 1, 1, 1), (1, 0, 1, 1)),
        ),
    ),
    (
        ((0, 0, 0, 1), (0, 0, 0, 0)),
        (
            (1, (0, 0, 1, 1), (0, 0, 1, 0)),
            (1, (1, 0, 0, 1), (1, 0, 0, 0)),
            (-1, (1, 1, 1, 1), (1, 1, 1, 0)),
        ),
    ),
)


def fundamental_identity_residuals(
    point: Point2, tau: PeriodMatrix, ctrl: SeriesControl = SeriesControl()
) -> list[float]:
    """Residuals of the three four-term squared-theta identities at (u, v)."""

    def nul2(bits):
        return theta_null(HalfCharacteristic(*bits), tau, ctrl) ** 2

    def th2(bits):
        return theta2(HalfCharacteristic(*bits), point, tau, ctrl) ** 2

    out = []
    for (n0, t0), rhs_terms in _FUNDAMENTAL_TERMS:
        lhs = nul2(n0) * th2(t0)
        terms = [sign * nul2(nb) * th2(tb) for sign, nb, tb in rhs_terms]
        rhs = sum(terms)
        scale = 1.0 + max(abs(lhs), max(abs(t) for t in terms))
        out.append(abs(lhs - rhs) / scale)
    return out
