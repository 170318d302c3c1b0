"""Canonical striped matrices: the free-term form A0 and the P-matrices.

Entries are linear forms ``c + a*t1 + b*t2`` with integer coefficients; t12
stands for t1 + t2.  Each row belongs to a stripe (one of the four
:class:`~t36mf.curve.StripeKind` values) and each column is an extension
generator ``v_j``.

Row layout of the P-matrices (``u^1``/``u^2`` are the single-branch rows and
``u_i`` the two-branch rows):

======  ==========================================================
family  rows
======  ==========================================================
a       unit row (R1), t2*e1 (R2), A(n) with t2*e_n^T appended
b       t1*e1 (R1), unit row (R2), B(n) with t1*e_n^T appended
c       t1*e1 (R1), t2*e1 (R2), C(n)
d       units for the two extra columns, D(n) | t2*e_{n+1}^T | t1*e_{n+1}^T
c'      t1*e1 (R1), t2*e1 (R2), B(n+1)^T with a unit in an extra column
d'      as d plus a decoration column (t1 at the last R12' row) whose
        unit sits in a trailing R12 row
======  ==========================================================

In the primed families the decoration entry is a single unit: after the
reduction only one nonzero element survives there.  The decoration column of
``d'`` is stored last so elimination reaches it after the t1 column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .curve import StripeKind
from .pencil import Pencil, QQ
from .words import Word

__all__ = [
    "LinearForm",
    "UnknownSymbol",
    "ShapeMismatch",
    "StripedMatrix",
    "BlockSpec",
    "build_A0",
    "build_P",
    "truncate_P",
    "to_text",
    "to_latex",
]


class UnknownSymbol(ValueError):
    """Entry outside the alphabet {0, 1, t1, t2, t12}."""


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LinearForm:
    """``const + a*t1 + b*t2``."""

    const: int = 0
    a: int = 0
    b: int = 0

    @classmethod
    def parse(cls, text: str) -> "LinearForm":
        s = "".join(str(text).split())
        table = {"0": cls(), "1": cls(1), "t1": cls(0, 1), "t2": cls(0, 0, 1),
                 "t12": cls(0, 1, 1), "t1+t2": cls(0, 1, 1)}
        if s not in table:
            raise UnknownSymbol(f"entry {text!r} is not one of 0, 1, t1, t2, t12")
        return table[s]

    def __bool__(self) -> bool:
        return bool(self.const or self.a or self.b)

    def __str__(self) -> str:
        if self.a and self.a == self.b and not self.const and self.a == 1:
            return "t12"
        parts = []
        for coef, name in ((self.const, ""), (self.a, "t1"), (self.b, "t2")):
            if not coef:
                continue
            if name:
                parts.append(name if coef == 1 else f"{coef}{name}")
            else:
                parts.append(str(coef))
        return "+".join(parts) if parts else "0"

    def latex(self) -> str:
        s = str(self)
        return {"t1": "t_1", "t2": "t_2", "t12": "t_{12}"}.get(s, s)


ZERO_F = LinearForm()
ONE_F = LinearForm(1)
T1 = LinearForm(0, 1)
T2 = LinearForm(0, 0, 1)


@dataclass(frozen=True)
class StripedMatrix:
    """A P-type matrix with its stripe metadata.

    ``pencil_rows``/``pencil_cols`` locate the Kronecker block inside the body.
    """

    body: Tuple[Tuple[LinearForm, ...], ...]
    row_stripes: Tuple[StripeKind, ...]
    row_labels: Tuple[str, ...]
    col_labels: Tuple[str, ...]
    pencil_rows: Tuple[int, ...] = ()
    pencil_cols: Tuple[int, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.row_stripes) != len(self.body) or len(self.row_labels) != len(self.body):
            raise ShapeMismatch("one stripe and one label per row")
        if any(len(r) != len(self.col_labels) for r in self.body):
            raise ShapeMismatch("row length differs from the column label count")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.body), len(self.col_labels)

    def __getitem__(self, ij: Tuple[int, int]) -> LinearForm:
        return self.body[ij[0]][ij[1]]

    def stripe_ranges(self) -> List[Tuple[StripeKind, range]]:
        """Maximal runs of rows sharing a stripe."""
        out: List[Tuple[StripeKind, range]] = []
        start = 0
        for i in range(1, len(self.row_stripes) + 1):
            if i == len(self.row_stripes) or self.row_stripes[i] != self.row_stripes[start]:
                out.append((self.row_stripes[start], range(start, i)))
                start = i
        return out

    def pencil(self) -> Pencil:
        """The Kronecker sub-block as a pencil over Q."""
        X1 = [[self.body[i][j].a for j in self.pencil_cols] for i in self.pencil_rows]
        X2 = [[self.body[i][j].b for j in self.pencil_cols] for i in self.pencil_rows]
        return Pencil.make(X1, X2, QQ, shape=(len(self.pencil_rows), len(self.pencil_cols)))

    def delete(self, rows: Sequence[int] = (), cols: Sequence[int] = ()) -> "StripedMatrix":
        dr, dc = set(rows), set(cols)
        keep_r = [i for i in range(len(self.body)) if i not in dr]
        keep_c = [j for j in range(len(self.col_labels)) if j not in dc]
        rmap = {old: new for new, old in enumerate(keep_r)}
        cmap = {old: new for new, old in enumerate(keep_c)}
        return StripedMatrix(
            body=tuple(tuple(self.body[i][j] for j in keep_c) for i in keep_r),
            row_stripes=tuple(self.row_stripes[i] for i in keep_r),
            row_labels=tuple(self.row_labels[i] for i in keep_r),
            col_labels=tuple(self.col_labels[j] for j in keep_c),
            pencil_rows=tuple(rmap[i] for i in self.pencil_rows if i in rmap),
            pencil_cols=tuple(cmap[j] for j in self.pencil_cols if j in cmap),
            name=self.name,
        )


# -- free-term form ---------------------------------------------------------------

# Identity blocks of A0 as (row group, column group); groups are 0-based.
_A0_BLOCKS: Tuple[Tuple[int, int], ...] = ((0, 3), (1, 1), (3, 2), (4, 1), (6, 4), (8, 5))
_A0_ROW_STRIPES = (StripeKind.R1,) * 3 + (StripeKind.R2,) * 3 + (StripeKind.R12prime,) * 2 + (StripeKind.R12,) * 2


@dataclass(frozen=True)
class BlockSpec:
    """Sizes of the ten row groups and six column groups of A0.

    Row groups 0-2 lie in stripe R1, 3-5 in R2, 6-7 in R12' and 8-9 in R12.
    Identity blocks sit at (row group, column group) = (0,3), (1,1), (3,2),
    (4,1), (6,4), (8,5); each must be square.
    """

    row_sizes: Tuple[int, ...] = (1,) * 10
    col_sizes: Tuple[int, ...] = (1,) * 6

    @classmethod
    def uniform(cls, k: int) -> "BlockSpec":
        return cls((k,) * 10, (k,) * 6)


def build_A0(spec: BlockSpec) -> StripedMatrix:
    """Block pattern of the free-term matrix with identity blocks 1_s * I."""
    rs, cs = tuple(spec.row_sizes), tuple(spec.col_sizes)
    if len(rs) != 10 or len(cs) != 6 or min(rs + cs) < 0:
        raise ShapeMismatch("need ten non-negative row sizes and six column sizes")
    for rg, cg in _A0_BLOCKS:
        if rs[rg] != cs[cg]:
            raise ShapeMismatch(f"identity block at row group {rg}, column group {cg} is not square")
    r0 = [sum(rs[:g]) for g in range(10)]
    c0 = [sum(cs[:g]) for g in range(6)]
    nr, nc = sum(rs), sum(cs)
    body = [[ZERO_F] * nc for _ in range(nr)]
    for rg, cg in _A0_BLOCKS:
        for k in range(rs[rg]):
            body[r0[rg] + k][c0[cg] + k] = ONE_F
    stripes = tuple(s for g, s in enumerate(_A0_ROW_STRIPES) for _ in range(rs[g]))
    row_labels = tuple(f"g{g}.{k}" for g in range(10) for k in range(rs[g]))
    col_labels = tuple(f"c{g}.{k}" for g in range(6) for k in range(cs[g]))
    return StripedMatrix(tuple(map(tuple, body)), stripes, row_labels, col_labels, name="A0")


# -- P-matrices ----------------------------------------------------------------------

def _kron(kind: str, n: int) -> List[List[LinearForm]]:
    """Pencil block with t1/t2 entries."""
    if kind == "A":
        return [[T1 if j == i else T2 if j == i + 1 else ZERO_F for j in range(n)] for i in range(n)]
    if kind == "B":
        return [[T2 if j == i else T1 if j == i + 1 else ZERO_F for j in range(n)] for i in range(n)]
    if kind == "C":
        return [[T1 if j == i else T2 if j == i + 1 else ZERO_F for j in range(n + 1)] for i in range(n)]
    if kind == "D":
        c = _kron("C", n)
        return [[c[i][j] for i in range(n)] for j in range(n + 1)]
    raise ValueError(kind)


def _e(n: int, k: int, f: LinearForm) -> List[LinearForm]:
    return [f if j == k else ZERO_F for j in range(n)]


R1, R2, R12P, R12 = StripeKind.R1, StripeKind.R2, StripeKind.R12prime, StripeKind.R12


def build_P(w: Word) -> StripedMatrix:
    """The P-matrix of an untruncated word (cuts are ignored)."""
    n, fam = w.n, w.family
    vs = [f"v{j}" for j in range(1, n + 3)]
    us = [f"u{i}" for i in range(1, n + 2)]
    if fam == "a":
        A = _kron("A", n)
        body = [_e(n + 1, n, ONE_F), _e(n + 1, 0, T2)]
        body += [A[i] + [T2 if i == n - 1 else ZERO_F] for i in range(n)]
        stripes = (R1, R2) + (R12P,) * n
        rows = ("u^1", "u^2") + tuple(us[:n])
        cols = tuple(vs[:n + 1])
        prow, pcol = range(2, n + 2), range(n)
    elif fam == "b":
        B = _kron("B", n)
        body = [_e(n + 1, 0, T1), _e(n + 1, n, ONE_F)]
        body += [B[i] + [T1 if i == n - 1 else ZERO_F] for i in range(n)]
        stripes = (R1, R2) + (R12P,) * n
        rows = ("u^1", "u^2") + tuple(us[:n])
        cols = tuple(vs[:n + 1])
        prow, pcol = range(2, n + 2), range(n)
    elif fam == "c":
        body = [_e(n + 1, 0, T1), _e(n + 1, 0, T2)] + _kron("C", n)
        stripes = (R1, R2) + (R12P,) * n
        rows = ("u^1", "u^2") + tuple(us[:n])
        cols = tuple(vs[:n + 1])
        prow, pcol = range(2, n + 2), range(n + 1)
    elif fam == "d":
        D = _kron("D", n)
        body = [[ZERO_F] * n + [ONE_F, ZERO_F], [ZERO_F] * n + [ZERO_F, ONE_F]]
        body += [D[i] + ([T2, T1] if i == n else [ZERO_F, ZERO_F]) for i in range(n + 1)]
        stripes = (R1, R2) + (R12P,) * (n + 1)
        rows = ("u^1", "u^2") + tuple(us[:n + 1])
        cols = tuple(vs[:n + 2])
        prow, pcol = range(2, n + 3), range(n)
    elif fam == "c'":
        Bt = _kron("B", n + 1)
        Bt = [[Bt[j][i] for j in range(n + 1)] for i in range(n + 1)]
        body = [_e(n + 2, 0, T1), _e(n + 2, 0, T2)]
        body += [Bt[i] + [ONE_F if i == 0 else ZERO_F] for i in range(n + 1)]
        stripes = (R1, R2) + (R12P,) * (n + 1)
        rows = ("u^1", "u^2", "u0") + tuple(us[:n])
        cols = tuple(vs[:n + 2])
        prow, pcol = range(3, n + 3), range(n + 1)
    elif fam == "d'":
        D = _kron("D", n)
        z3 = [ZERO_F] * 3
        body = [[ZERO_F] * n + [ONE_F, ZERO_F, ZERO_F], [ZERO_F] * n + [ZERO_F, ONE_F, ZERO_F]]
        body += [D[i] + ([T2, T1, T1] if i == n else z3) for i in range(n + 1)]
        body += [[ZERO_F] * (n + 2) + [ONE_F]]
        stripes = (R1, R2) + (R12P,) * (n + 1) + (R12,)
        rows = ("u^1", "u^2") + tuple(us[:n + 1]) + ("u^12",)
        # decoration column is stored last but named v_{n+2}
        cols = tuple(vs[:n + 1]) + (f"v{n + 3}", f"v{n + 2}")
        prow, pcol = range(2, n + 3), range(n)
    else:  # pragma: no cover - Word validates families
        raise ValueError(fam)
    return StripedMatrix(
        body=tuple(tuple(r) for r in body),
        row_stripes=stripes,
        row_labels=rows,
        col_labels=cols,
        pencil_rows=tuple(prow),
        pencil_cols=tuple(pcol),
        name=f"P_{fam}({n})",
    )


# Which part of P each end letter owns: ("row", label) deletes a row; ("col",
# label) deletes a column together with the row holding its unit entry.
_ENDS: Dict[str, Tuple[Tuple[str, str], Tuple[str, str]]] = {
    "a": (("row", "u^2"), ("col", "last")),
    "b": (("row", "u^1"), ("col", "last")),
    "c": (("row", "u^2"), ("row", "u^1")),
    "d": (("col", "t2"), ("col", "t1")),
    "c'": (("row", "u^2"), ("row", "u^1")),
    "d'": (("col", "t2"), ("col", "t1")),
}


def truncate_P(P: StripedMatrix, w: Word) -> StripedMatrix:
    """Remove the parts of ``build_P(w.untruncated)`` owned by cut end letters."""
    n = w.n
    drop_r: List[int] = []
    drop_c: List[int] = []
    ends = _ENDS[w.family]
    for cut, (what, which) in zip((w.left_cut, w.right_cut), ends):
        if not cut:
            continue
        if what == "row":
            drop_r.append(P.row_labels.index(which))
            continue
        if which == "last":
            j = n
        else:
            j = n + (0 if which == "t2" else 1)
        drop_c.append(j)
        unit_rows = [i for i in range(len(P.body)) if P.body[i][j] == ONE_F]
        drop_r.extend(unit_rows)
    return P.delete(drop_r, drop_c)


# -- emission --------------------------------------------------------------------------

def to_text(P: StripedMatrix) -> str:
    """Grid with a rule between stripes, row stripe and label on the left."""
    cells = [[str(e) for e in r] for r in P.body]
    w = max([len(c) for r in cells for c in r] + [len(c) for c in P.col_labels] + [1])
    lw = max([len(f"{s.value} {l}") for s, l in zip(P.row_stripes, P.row_labels)] + [1])
    head = " " * (lw + 3) + "  ".join(c.rjust(w) for c in P.col_labels)
    out = [head]
    rule = " " * lw + " +" + "-" * (len(head) - lw - 2)
    prev: Optional[StripeKind] = None
    for s, lab, r in zip(P.row_stripes, P.row_labels, cells):
        if prev is not None and s != prev:
            out.append(rule)
        out.append(f"{s.value} {lab}".ljust(lw) + " | " + "  ".join(c.rjust(w) for c in r))
        prev = s
    return "\n".join(out)


def to_latex(P: StripedMatrix) -> str:
    """``array`` environment with ``\\hline`` between stripes."""
    ncols = len(P.col_labels)
    lines = [r"\left(\begin{array}{" + "c" * ncols + "}"]
    prev: Optional[StripeKind] = None
    for s, r in zip(P.row_stripes, P.body):
        if prev is not None and s != prev:
            lines.append(r"\hline")
        lines.append(" & ".join(e.latex() for e in r) + r" \\")
        prev = s
    lines.append(r"\end{array}\right)")
    return "\n".join(lines)
