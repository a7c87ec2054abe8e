"""Plane-curve models for the difference equations with index pairs
(2,3), (3,2), (2,4), (4,2).

Clearing denominators in C(y, 2) - C(x, 3) = s*k and C(y, 2) - C(x, 4) = s*k
turns each instance into a curve with integer coefficients:

    cubic:   Y^2 = X^3 - 144*X + (1296 + 10368*s*k)
    quartic: Y^2 = 3*X^4 + 6*X^3 - 3*X^2 - 6*X + (9 + 72*s*k)

under the invertible substitutions

    cubic:   x = (X + 12) / 12,  y = (Y + 36) / 72
    quartic: x = X + 2,          y = (Y + 3) / 6.

Throughout, the affine coordinate y is the argument of the index-2 binomial
and x is the argument of the index-3 or index-4 binomial; s = +1 puts the
index-2 binomial on the positive side of the difference.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt

from .equations import EquationInstance, EquationSolution
from .errors import ArithmeticGuardError, ResourceLimitError, UsageError
from .intkernel import U63_MAX, prime_power_decompose

CUBIC_LINEAR = -144

#: published constant for the cubic with s = -1, k = 1; inconsistent with the
#: published point list, which lies on the recomputed constant instead
PUBLISHED_CUBIC_NEG_K1 = -3024

CORRECTION_NOTES = {
    ("cubic", -1, 1): (
        "published constant -3024 does not contain the published points "
        "(36,180) and (84,756); this model uses the recomputed -9072"
    ),
    ("quartic", "map"): (
        "published substitution x=(X+3)/6, y=Y+2 is inconsistent with the "
        "published points and solutions; this model uses x=X+2, y=(Y+3)/6"
    ),
    ("quartic", "shift", 2): (
        "published k=2 quartics are written in the shifted variable "
        "X' = X + 2; a published point (X', Y) equals (X' - 2, Y) here"
    ),
}


@dataclass(frozen=True)
class CurvePoint:
    X: int
    Y: int


@dataclass(frozen=True)
class CurveModel:
    kind: str                 # "cubic" | "quartic"
    s: int                    # +1 | -1
    k: int
    coeffs: tuple[int, ...]   # cubic: (c1, c0) for X^3 + c1*X + c0
    published_shift: int = 0  # add to model X to recover the published variable
    notes: tuple[str, ...] = ()

    @property
    def instance(self) -> EquationInstance:
        high = 3 if self.kind == "cubic" else 4
        if self.s > 0:
            return EquationInstance(2, high, self.k)
        return EquationInstance(high, 2, self.k)

    def rhs(self, X: int) -> int:
        if self.kind == "cubic":
            c1, c0 = self.coeffs
            return X**3 + c1 * X + c0
        c4, c3, c2, c1, c0 = self.coeffs
        return c4 * X**4 + c3 * X**3 + c2 * X**2 + c1 * X + c0

    def contains(self, pt: CurvePoint) -> bool:
        return pt.Y * pt.Y == self.rhs(pt.X)

    def equation_text(self) -> str:
        def term(c: int, mono: str) -> str:
            return f" {'+' if c >= 0 else '-'} {abs(c)}{mono}"

        if self.kind == "cubic":
            c1, c0 = self.coeffs
            return "Y^2 = X^3" + term(c1, "*X") + term(c0, "")
        c4, c3, c2, c1, c0 = self.coeffs
        return (
            f"Y^2 = {c4}*X^4" + term(c3, "*X^3") + term(c2, "*X^2")
            + term(c1, "*X") + term(c0, "")
        )


def cubic_model(s: int, k: int) -> CurveModel:
    """Model for C(y,2) - C(x,3) = s*k (s = +1) or C(x,3) - C(y,2) = k (s = -1)."""
    if s not in (1, -1) or k < 1:
        raise UsageError("cubic_model needs s in {1, -1} and k >= 1")
    notes = []
    if (("cubic", s, k)) in CORRECTION_NOTES:
        notes.append(CORRECTION_NOTES[("cubic", s, k)])
    return CurveModel(
        kind="cubic",
        s=s,
        k=k,
        coeffs=(CUBIC_LINEAR, 1296 + 10368 * s * k),
        notes=tuple(notes),
    )


def quartic_model(s: int, k: int) -> CurveModel:
    """Model for C(y,2) - C(x,4) = s*k (s = +1) or C(x,4) - C(y,2) = k (s = -1)."""
    if s not in (1, -1) or k < 1:
        raise UsageError("quartic_model needs s in {1, -1} and k >= 1")
    notes = [CORRECTION_NOTES[("quartic", "map")]]
    shift = 0
    if k == 2:
        shift = 2
        notes.append(CORRECTION_NOTES[("quartic", "shift", 2)])
    return CurveModel(
        kind="quartic",
        s=s,
        k=k,
        coeffs=(3, 6, -3, -6, 9 + 72 * s * k),
        published_shift=shift,
        notes=tuple(notes),
    )


def lift_coordinates(model: CurveModel, pt: CurvePoint) -> tuple[int, int] | None:
    """The divisibility/sign filters and the bare affine inverse; does not
    check curve membership.  The filters accept exactly the image of
    map_solution over positive (x, y)."""
    if pt.Y <= 0:
        return None
    if model.kind == "cubic":
        if pt.X % 12 != 0 or pt.Y % 72 != 36:
            return None
        return (pt.X + 12) // 12, (pt.Y + 36) // 72
    if pt.Y % 6 != 3:
        return None
    return pt.X + 2, (pt.Y + 3) // 6


def lift_point(model: CurveModel, pt: CurvePoint) -> tuple[int, int] | None:
    """Affine (x, y) behind an integral point, or None when the divisibility
    and sign filters rule the point out.  Raises for points off the curve."""
    if not model.contains(pt):
        raise UsageError(f"({pt.X}, {pt.Y}) is not on {model.equation_text()}")
    return lift_coordinates(model, pt)


def map_solution(model: CurveModel, x: int, y: int) -> CurvePoint:
    """Point with coordinates mapped from affine (x, y); y is always the
    index-2 argument.  Pure transform: the result lies on the curve exactly
    when (x, y) solves the model's difference equation."""
    if model.kind == "cubic":
        return CurvePoint(12 * x - 12, 72 * y - 36)
    return CurvePoint(x - 2, 6 * y - 3)


def _guard_window(model: CurveModel, span: int) -> None:
    # conservative envelope on |rhs| over |X| <= span
    if model.kind == "cubic":
        c1, c0 = model.coeffs
        peak = span**3 + abs(c1) * span + abs(c0)
    else:
        c4, c3, c2, c1, c0 = model.coeffs
        peak = c4 * span**4 + abs(c3) * span**3 + abs(c2) * span**2 + abs(c1) * span + abs(c0)
    if peak > U63_MAX:
        raise ArithmeticGuardError(
            f"|rhs| may reach {peak} within |X| <= {span}, beyond 2^63 - 1"
        )


def search_integral_points(model: CurveModel, xmax: int) -> list[CurvePoint]:
    """All integral points with |X| <= xmax and Y >= 0, ascending by X."""
    if xmax < 1:
        raise UsageError("xmax must be >= 1")
    _guard_window(model, xmax)
    out: list[CurvePoint] = []
    for X in range(-xmax, xmax + 1):
        r = model.rhs(X)
        if r < 0:
            continue
        y = isqrt(r)
        if y * y == r:
            out.append(CurvePoint(X, y))
    return out


def lift_to_solutions(
    model: CurveModel, points: list[CurvePoint], inst: EquationInstance
) -> list[EquationSolution]:
    """Solutions of ``inst`` arising from curve points.

    A point contributes iff its lift passes the divisibility filters, both
    affine coordinates are prime powers, and both binomials are positive.
    """
    expected = model.instance
    if inst.key != expected.key:
        raise UsageError(
            f"instance {inst.key} does not belong to this model (expected {expected.key})"
        )
    out: list[EquationSolution] = []
    for pt in points:
        lifted = lift_point(model, pt)
        if lifted is None:
            continue
        x, y = lifted
        left_arg, right_arg = (y, x) if model.s > 0 else (x, y)
        if left_arg < inst.i or right_arg < inst.j:
            continue
        dl = prime_power_decompose(left_arg)
        dr = prime_power_decompose(right_arg)
        if dl is None or dr is None:
            continue
        left = comb(left_arg, inst.i)
        right = comb(right_arg, inst.j)
        if left - right != inst.k:
            continue
        out.append(EquationSolution(dl.p, dl.a, dr.p, dr.a, left, right))
    out.sort(key=lambda sol: (sol.right, sol.left))
    return out


def emit_samples(
    model: CurveModel,
    xlo: int,
    xhi: int,
    step: int = 1,
    max_rows: int = 1_000_000,
) -> list[tuple[int, int, bool, int | None]]:
    """Rows (X, rhs, is_square, Y) over an X window, for offline inspection."""
    if step < 1 or xlo > xhi:
        raise UsageError("need step >= 1 and xlo <= xhi")
    if (xhi - xlo) // step + 1 > max_rows:
        raise ResourceLimitError(f"window exceeds {max_rows} rows")
    _guard_window(model, max(abs(xlo), abs(xhi)))
    rows: list[tuple[int, int, bool, int | None]] = []
    for X in range(xlo, xhi + 1, step):
        r = model.rhs(X)
        if r >= 0:
            y = isqrt(r)
            ok = y * y == r
            rows.append((X, r, ok, y if ok else None))
        else:
            rows.append((X, r, False, None))
    return rows
