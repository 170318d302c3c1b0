"""Curve data for F = x*z*z' with z = x - y^2 and z' = x - l*y^2.

The three branches are parametrised by t as (0, t), (t^2, t) and (l*t^2, t);
exactly one of x, z, z' vanishes on each.  Modules over the partial
normalisation come in four stripe types, each with a fixed annihilator and a
fixed basis of extension classes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .poly import L, ONE, NotDivisible, Poly, PolyMatrix, T, X, Y, exact_div, format_poly, substitute

__all__ = [
    "BadLambda",
    "CurveData",
    "make_curve",
    "parse_lambda",
    "Branch",
    "branches",
    "branch_eval",
    "StripeKind",
    "ExtSymbol",
    "ext_basis",
    "annihilator",
    "factored",
]


class BadLambda(ValueError):
    """The curve degenerates for l in {0, 1}."""


def parse_lambda(text: Union[str, int, Fraction, None]) -> Optional[Fraction]:
    """``None``/``"symbolic"`` -> None, otherwise a rational outside {0, 1}."""
    if text is None:
        return None
    if isinstance(text, str):
        s = text.strip()
        if s.lower() in ("", "symbolic", "sym", "l", "λ"):
            return None
        try:
            value = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise BadLambda(f"cannot read lambda from {text!r}") from exc
    else:
        value = Fraction(text)
    if value in (0, 1):
        raise BadLambda(f"lambda must avoid 0 and 1, got {value}")
    return value


@dataclass(frozen=True)
class CurveData:
    """F, z, z' in either symbolic or rational lambda mode.

    ``lam`` is ``None`` in symbolic mode.  ``mu`` is kept as the pair
    (1 - l, l) and never expanded into the polynomial ring.
    """

    lam: Optional[Fraction]
    F: Poly
    z: Poly
    zp: Poly

    @property
    def symbolic(self) -> bool:
        return self.lam is None

    @property
    def lambda_mode(self) -> str:
        return "symbolic" if self.lam is None else str(self.lam)

    @property
    def lam_poly(self) -> Poly:
        return L if self.lam is None else Poly.const(self.lam)

    @property
    def mu(self) -> Tuple[Poly, Poly]:
        lam = self.lam_poly
        return ONE - lam, lam

    def specialize(self, p: Poly) -> Poly:
        """Substitute this curve's lambda into ``p`` (identity when symbolic)."""
        return p if self.lam is None else substitute(p, {"l": Poly.const(self.lam)})

    def specialize_matrix(self, m: PolyMatrix) -> PolyMatrix:
        return m if self.lam is None else m.map(self.specialize)


def factored(p: Poly, curve: Optional[CurveData] = None, latex: bool = False) -> str:
    """``p`` as a signed product of x, y, z, z' when it is one, else expanded."""
    curve = curve or make_curve()
    if not p or p.is_constant():
        return format_poly(p, latex)
    rest, parts = p, []
    for name, f in zip(("x", "y", "z", "z'"), (X, Y, curve.z, curve.zp)):
        k = 0
        while True:
            try:
                q = exact_div(rest, f)
            except NotDivisible:
                break
            rest, k = q, k + 1
        if k:
            parts.append(name if k == 1 else f"{name}^{k}" if not latex else f"{name}^{{{k}}}")
    if not rest.is_constant():
        return format_poly(p, latex)
    c = rest.constant_term()
    head = "-" if c == -1 else "" if c == 1 else format_poly(rest, latex) + ("" if latex else "*")
    return head + ("" if latex else "*").join(parts)


def make_curve(mode: Union[str, int, Fraction, None] = None) -> CurveData:
    """Curve in symbolic mode (``None``/``"symbolic"``) or at a rational lambda."""
    lam = parse_lambda(mode)
    lam_p = L if lam is None else Poly.const(lam)
    z = X - Y ** 2
    zp = X - lam_p * Y ** 2
    return CurveData(lam=lam, F=X * z * zp, z=z, zp=zp)


@dataclass(frozen=True)
class Branch:
    index: int
    x_image: Poly
    y_image: Poly

    def bindings(self) -> dict:
        return {"x": self.x_image, "y": self.y_image}


def branches(curve: CurveData) -> Tuple[Branch, Branch, Branch]:
    """Branch parametrisations; branch 3 carries the curve's lambda."""
    return (
        Branch(1, Poly.const(0), T),
        Branch(2, T ** 2, T),
        Branch(3, curve.lam_poly * T ** 2, T),
    )


def branch_eval(m: PolyMatrix, b: Branch) -> PolyMatrix:
    """Entrywise substitution of the branch images for x and y."""
    for e in m:
        if "t" in e.variables():
            raise ValueError("matrix already involves t")
    return m.substitute(b.bindings())


class StripeKind(enum.Enum):
    """Indecomposable modules over the two-branch ring, one per row stripe."""

    R1 = "R1"
    R2 = "R2"
    R12prime = "R12'"
    R12 = "R12"

    @property
    def annihilator(self) -> Poly:
        return annihilator(self)

    @property
    def ext_basis(self) -> Tuple["ExtSymbol", ...]:
        return ext_basis(self)


def annihilator(stripe: StripeKind) -> Poly:
    if stripe is StripeKind.R1:
        return X
    if stripe is StripeKind.R2:
        return X - Y ** 2
    return X * (X - Y ** 2)


class ExtSymbol(enum.Enum):
    """Basis symbols of the extension groups, tagged by stripe.

    ``t1^2 = mu * t2^2`` holds where both sides exist; the pipeline never
    needs it because squared terms are removed during the reduction.
    """

    ONE_1 = ("R1", "1_1")
    T_ONE_1 = ("R1", "t*1_1")
    ONE_2 = ("R2", "1_2")
    T2_R2 = ("R2", "t_2")
    ONE_12P = ("R12'", "1_12")
    T1_12P = ("R12'", "t_1")
    T2_12P = ("R12'", "t_2")
    T1SQ_12P = ("R12'", "t_1^2")
    ONE_12 = ("R12", "1_12")
    T12_12 = ("R12", "t_12")
    T1SQ_12 = ("R12", "t_1^2")
    T1CU_12 = ("R12", "t_1^3")

    @property
    def stripe(self) -> StripeKind:
        return StripeKind(self.value[0])

    @property
    def label(self) -> str:
        return self.value[1]

    @property
    def degree(self) -> int:
        """Power of t carried by the symbol."""
        lab = self.value[1]
        if lab.startswith("1"):
            return 0
        if lab.endswith("^2"):
            return 2
        if lab.endswith("^3"):
            return 3
        return 1

    def __str__(self) -> str:
        return self.value[1]


_BASES = {
    StripeKind.R1: (ExtSymbol.ONE_1, ExtSymbol.T_ONE_1),
    StripeKind.R2: (ExtSymbol.ONE_2, ExtSymbol.T2_R2),
    StripeKind.R12prime: (ExtSymbol.ONE_12P, ExtSymbol.T1_12P, ExtSymbol.T2_12P, ExtSymbol.T1SQ_12P),
    StripeKind.R12: (ExtSymbol.ONE_12, ExtSymbol.T12_12, ExtSymbol.T1SQ_12, ExtSymbol.T1CU_12),
}


def ext_basis(stripe: StripeKind) -> Tuple[ExtSymbol, ...]:
    """Ordered basis of the extension classes for ``stripe``."""
    return _BASES[stripe]
