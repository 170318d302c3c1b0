"""From a P-matrix to a minimal presentation over the curve ring.

Generators: one ``u`` per row of P (plus a companion ``~u`` for rows of
stripe R12', standing for t1 acting on ``u``) and one ``v_j`` per column.

Relations:

* annihilators ``ann(stripe) * u = 0`` and ``x * ~u = 0``;
* extensions ``z' * v_j = sum_i lift(P_ij)``, where on R12' rows
  ``1 -> u``, ``t1 -> ~u``, ``t2 -> y*u - ~u``; on R1 rows ``t1 -> y*u``; on
  R2 rows ``t2 -> y*u``; on R12 rows ``1 -> u`` and ``t12 -> y*u``.

:func:`eliminate_units` then removes generators that appear with a unit
coefficient.  Pivots are chosen extension row by extension row.  Inside a
row a companion ``~u`` with coefficient -1 wins over a plain unit, which wins
over a companion with coefficient +1; ties go to the later generator.  An
eliminated generator's annihilator row is remembered together with the
extension row used, and once elimination stops those rows clear multiples of
their own pivot entry from the other rows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .canon import LinearForm, StripedMatrix, UnknownSymbol
from .curve import CurveData, StripeKind, annihilator, make_curve
from .poly import ZERO, NotDivisible, Poly, PolyMatrix, X, Y, exact_div

__all__ = [
    "Presentation",
    "MinimalPresentation",
    "NonTerminating",
    "NonConstantUnit",
    "relations_from_P",
    "eliminate_units",
    "minimal_presentation",
]


class NonTerminating(RuntimeError):
    pass


class NonConstantUnit(ValueError):
    """A unit pivot that is not a nonzero rational constant."""


@dataclass(frozen=True)
class Presentation:
    """Relation matrix: rows are relations, columns are generators.

    ``row_tags`` are ``("ext", v_label)`` or ``("ann", generator_label)``.
    """

    generators: Tuple[str, ...]
    relations: PolyMatrix
    row_tags: Tuple[Tuple[str, str], ...]

    def __str__(self) -> str:
        return _show(self.generators, self.relations, self.row_tags)


@dataclass(frozen=True)
class MinimalPresentation:
    Q: PolyMatrix
    labels: Tuple[str, ...]
    row_tags: Tuple[Tuple[str, str], ...]

    def __str__(self) -> str:
        return _show(self.labels, self.Q, self.row_tags)


def _show(labels: Sequence[str], m: PolyMatrix, tags: Sequence[Tuple[str, str]]) -> str:
    cells = [[str(e) for e in m.row(i)] for i in range(m.rows)]
    w = max([len(c) for r in cells for c in r] + [len(l) for l in labels] + [1])
    out = [" " * 12 + "  ".join(l.rjust(w) for l in labels)]
    for (kind, lab), r in zip(tags, cells):
        out.append(f"{kind}:{lab}".ljust(12) + "  ".join(c.rjust(w) for c in r))
    return "\n".join(out)


def _lift(e: LinearForm, stripe: StripeKind, u: str, ub: Optional[str], where: str) -> Dict[str, Poly]:
    out: Dict[str, Poly] = {}

    def put(g: str, c: Poly) -> None:
        out[g] = out.get(g, ZERO) + c

    if e.const:
        put(u, Poly.const(e.const))
    if stripe is StripeKind.R12prime:
        assert ub is not None
        if e.a:
            put(ub, Poly.const(e.a))
        if e.b:
            put(u, Y.scale(e.b))
            put(ub, Poly.const(-e.b))
    elif stripe is StripeKind.R1:
        if e.b:
            raise UnknownSymbol(f"t2 does not act on the R1 row at {where}")
        if e.a:
            put(u, Y.scale(e.a))
    elif stripe is StripeKind.R2:
        if e.a:
            raise UnknownSymbol(f"t1 does not act on the R2 row at {where}")
        if e.b:
            put(u, Y.scale(e.b))
    else:
        if e.a != e.b:
            raise UnknownSymbol(f"only t12 acts on the R12 row at {where}")
        if e.a:
            put(u, Y.scale(e.a))
    return out


def relations_from_P(P: StripedMatrix, curve: Optional[CurveData] = None) -> Presentation:
    """Generators and relations of the module presented by ``P``."""
    curve = curve or make_curve()
    row_gens: List[Tuple[str, Optional[str]]] = []
    gens: List[str] = []
    ann: Dict[str, Poly] = {}
    for lab, stripe in zip(P.row_labels, P.row_stripes):
        gens.append(lab)
        ann[lab] = annihilator(stripe)
        if stripe is StripeKind.R12prime:
            ub = "~" + lab
            gens.append(ub)
            ann[ub] = X
            row_gens.append((lab, ub))
        else:
            row_gens.append((lab, None))
    gens.extend(P.col_labels)
    index = {g: k for k, g in enumerate(gens)}
    rows: List[List[Poly]] = []
    tags: List[Tuple[str, str]] = []
    for j, v in enumerate(P.col_labels):
        row = [ZERO] * len(gens)
        row[index[v]] = curve.zp
        for i, (u, ub) in enumerate(row_gens):
            e = P.body[i][j]
            if not e:
                continue
            for g, c in _lift(e, P.row_stripes[i], u, ub, f"row {i}, column {j}").items():
                row[index[g]] = row[index[g]] - c
        rows.append(row)
        tags.append(("ext", v))
    for g in gens[: len(gens) - len(P.col_labels)]:
        row = [ZERO] * len(gens)
        row[index[g]] = ann[g]
        rows.append(row)
        tags.append(("ann", g))
    flat = [e for r in rows for e in r]
    return Presentation(tuple(gens), PolyMatrix(len(rows), len(gens), flat), tuple(tags))


def _unit_value(e: Poly, where: str) -> Optional[Fraction]:
    """Rational value of a unit entry, ``None`` for non-units."""
    if not e.is_unit_at_origin():
        return None
    if not e.is_constant():
        raise NonConstantUnit(f"unit entry {e} at {where} is not a rational constant")
    return Fraction(e.constant_term())


def eliminate_units(p: Presentation, rng: Optional[random.Random] = None) -> MinimalPresentation:
    """Remove every generator that occurs with a unit coefficient.

    ``rng`` switches to uniformly random pivot choices (used to probe
    order independence); the default is the deterministic priority rule.
    """
    m = [list(p.relations.row(i)) for i in range(p.relations.rows)]
    labels = list(p.generators)
    tags = list(p.row_tags)
    pivot_of: List[Optional[str]] = [None] * len(m)
    for _ in range(len(labels) + 1):
        choice = _choose(m, labels, tags, rng)
        if choice is None:
            break
        r, c, val = choice
        row_r = m[r]
        for s in range(len(m)):
            if s == r or not m[s][c]:
                continue
            f = m[s][c].scale(1 / val) if val != 1 else m[s][c]
            row_s = m[s]
            for k in range(len(labels)):
                if row_r[k]:
                    row_s[k] = row_s[k] - f * row_r[k]
            if tags[s] == ("ann", labels[c]):
                pivot_of[s] = tags[r][1]
        del m[r]
        del tags[r]
        del pivot_of[r]
        for row in m:
            del row[c]
        del labels[c]
    else:
        raise NonTerminating("elimination exceeded the generator count")
    _interreduce(m, labels, pivot_of)
    flat = [e for row in m for e in row]
    return MinimalPresentation(PolyMatrix(len(m), len(labels), flat), tuple(labels), tuple(tags))


def _choose(m: List[List[Poly]], labels: List[str], tags: List[Tuple[str, str]],
            rng: Optional[random.Random]) -> Optional[Tuple[int, int, Fraction]]:
    if rng is not None:
        units = [(r, c, v) for r in range(len(m)) for c in range(len(labels))
                 for v in [_unit_value(m[r][c], f"({r}, {c})")] if v is not None]
        return rng.choice(units) if units else None
    for r in range(len(m)):
        best: Optional[Tuple[Tuple[int, int], int, Fraction]] = None
        for c in range(len(labels)):
            v = _unit_value(m[r][c], f"({r}, {c})")
            if v is None:
                continue
            if labels[c].startswith("~"):
                prio = 0 if v == -1 else 2
            else:
                prio = 1
            key = (prio, -c)
            if best is None or key < best[0]:
                best = (key, c, v)
        if best is not None:
            return r, best[1], best[2]
    return None


def _interreduce(m: List[List[Poly]], labels: List[str], pivot_of: List[Optional[str]]) -> None:
    for i in range(len(m)):
        lab = pivot_of[i]
        if lab is None or lab not in labels:
            continue
        c = labels.index(lab)
        d = m[i][c]
        if not d:
            continue
        for s in range(len(m)):
            if s == i or not m[s][c]:
                continue
            try:
                q = exact_div(m[s][c], d)
            except NotDivisible:
                continue
            m[s] = [a - q * b if b else a for a, b in zip(m[s], m[i])]


def minimal_presentation(P: StripedMatrix, curve: Optional[CurveData] = None,
                         rng: Optional[random.Random] = None) -> MinimalPresentation:
    return eliminate_units(relations_from_P(P, curve), rng)
