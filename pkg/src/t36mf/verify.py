"""Matrix-factorization checks, determinant exponents and branch invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import univariate as U
from .curve import CurveData, branch_eval, branches, make_curve
from .factor import NotFactorization, complement
from .poly import NotDivisible, NotSquare, Poly, PolyMatrix, det, exact_div

__all__ = [
    "MFPair",
    "MFReport",
    "BranchInvariant",
    "is_mf",
    "det_exponents",
    "snf_univariate",
    "snf_elimination",
    "snf_minors",
    "to_upoly",
    "branch_invariants",
    "signed_permutation_witness",
    "equivalent_up_to_signed_permutation",
    "report_dict",
    "report_json",
    "collision_table",
    "DEFAULT_BRANCH_LAMBDA",
]

DEFAULT_BRANCH_LAMBDA = Fraction(2)

UMatrix = List[List[U.UPoly]]


@dataclass(frozen=True)
class MFPair:
    Q: PolyMatrix
    psi: PolyMatrix
    F: Poly

    def check(self) -> bool:
        n = self.Q.rows
        FI = PolyMatrix.identity(n, self.F)
        return self.Q @ self.psi == FI and self.psi @ self.Q == FI


@dataclass
class MFReport:
    ok: bool
    size: int
    det_exponents: Optional[Tuple[int, int, int]]
    minimal: bool
    psi: Optional[PolyMatrix] = None
    det: Optional[Poly] = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.ok and self.minimal


def _has_unit(m: PolyMatrix) -> bool:
    return any(e.is_unit_at_origin() for e in m)


def det_exponents(d: Poly, curve: Optional[CurveData] = None) -> Optional[Tuple[int, int, int]]:
    """(a, b, c) with d = unit * x^a z^b z'^c, or ``None`` if d has another factor."""
    curve = curve or make_curve()
    if not d:
        return None
    out = []
    for f in (Poly.var("x"), curve.z, curve.zp):
        k = 0
        while True:
            try:
                q = exact_div(d, f)
            except NotDivisible:
                break
            d, k = q, k + 1
        out.append(k)
    if not d.is_constant():
        return None
    return out[0], out[1], out[2]


def is_mf(Q: PolyMatrix, curve: Optional[CurveData] = None) -> MFReport:
    """Check that Q is one factor of a reduced matrix factorization of F.

    ``ok``: det(Q) != 0, F * Q^-1 is polynomial, both products equal F*I and
    Q has no unit entries.  ``minimal``: additionally psi has no unit entries.
    """
    curve = curve or make_curve()
    n = Q.rows
    if not Q.is_square():
        return MFReport(False, n, None, False, detail=f"Q is {Q.rows}x{Q.cols}, not square")
    d = det(Q)
    if not d:
        return MFReport(False, n, None, False, det=d, detail="det(Q) = 0")
    exps = det_exponents(d, curve)
    try:
        psi = complement(Q, curve)
    except NotFactorization as exc:
        return MFReport(False, n, exps, False, det=d, detail=str(exc))
    if not MFPair(Q, psi, curve.F).check():
        return MFReport(False, n, exps, False, psi, d, "Q*psi or psi*Q differs from F*I")
    if _has_unit(Q):
        return MFReport(False, n, exps, False, psi, d, "Q has unit entries")
    minimal = not _has_unit(psi)
    return MFReport(True, n, exps, minimal, psi, d, "" if minimal else "psi has unit entries")


# -- Smith normal form over k[t] ---------------------------------------------------

def to_upoly(p: Poly) -> U.UPoly:
    """A polynomial in t alone as a dense univariate polynomial."""
    coeffs: Dict[int, Fraction] = {}
    for m, c in p.terms():
        if m.x or m.y or m.l:
            raise ValueError(f"{p} is not a polynomial in t")
        coeffs[m.t] = Fraction(c)
    top = max(coeffs, default=-1)
    return U.make(coeffs.get(i, 0) for i in range(top + 1))


def _copy(M: Sequence[Sequence[U.UPoly]]) -> UMatrix:
    return [list(r) for r in M]


def snf_elimination(M: Sequence[Sequence[U.UPoly]]) -> List[U.UPoly]:
    """Elementary divisors by row and column reduction.

    Returns min(rows, cols) monic divisors in divisibility order, zeros last.
    """
    A = _copy(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    out: List[U.UPoly] = []
    for k in range(min(rows, cols)):
        while True:
            piv = None
            for i in range(k, rows):
                for j in range(k, cols):
                    if A[i][j] and (piv is None or U.deg(A[i][j]) < U.deg(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                out.extend([U.ZERO] * (min(rows, cols) - k))
                return out
            i, j = piv
            A[k], A[i] = A[i], A[k]
            for r in A:
                r[k], r[j] = r[j], r[k]
            p = A[k][k]
            dirty = False
            for i in range(k + 1, rows):
                if A[i][k]:
                    q, rem = U.divmod_(A[i][k], p)
                    A[i] = [U.sub(a, U.mul(q, b)) for a, b in zip(A[i], A[k])]
                    dirty = dirty or bool(rem)
            for j in range(k + 1, cols):
                if A[k][j]:
                    q, rem = U.divmod_(A[k][j], p)
                    for r in A:
                        r[j] = U.sub(r[j], U.mul(q, r[k]))
                    dirty = dirty or bool(rem)
            if dirty:
                continue
            # p must divide the rest; otherwise fold an offending row in
            bad = next((i for i in range(k + 1, rows) for j in range(k + 1, cols)
                        if not U.divides(p, A[i][j])), None)
            if bad is None:
                break
            A[k] = [U.add(a, b) for a, b in zip(A[k], A[bad])]
        out.append(U.monic(A[k][k]))
    return out


def _udet(M: Sequence[Sequence[U.UPoly]]) -> U.UPoly:
    """Fraction-free Bareiss determinant over k[t]."""
    A = _copy(M)
    n = len(A)
    if n == 0:
        return U.ONE
    sign = 1
    prev: U.UPoly = U.ONE
    for k in range(n - 1):
        if not A[k][k]:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return U.ZERO
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = U.sub(U.mul(A[i][j], A[k][k]), U.mul(A[i][k], A[k][j]))
                A[i][j] = U.divmod_(num, prev)[0] if num else U.ZERO
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else U.neg(d)


def snf_minors(M: Sequence[Sequence[U.UPoly]]) -> List[U.UPoly]:
    """Elementary divisors as ratios of gcds of k x k minors."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    out: List[U.UPoly] = []
    prev: U.UPoly = U.ONE
    for k in range(1, min(rows, cols) + 1):
        g: U.UPoly = U.ZERO
        for rs in combinations(range(rows), k):
            # skip row sets with an all-zero row
            if any(not any(M[r]) for r in rs):
                continue
            for cs in combinations(range(cols), k):
                m = _udet([[M[r][c] for c in cs] for r in rs])
                if m:
                    g = U.gcd_(g, m) if g else U.monic(m)
        if not g:
            out.extend([U.ZERO] * (min(rows, cols) - k + 1))
            return out
        out.append(U.divmod_(g, prev)[0])
        prev = g
    return out


def snf_univariate(M, method: str = "auto") -> List[U.UPoly]:
    """Elementary divisors of a matrix over k[t].

    ``M`` may be a PolyMatrix in t or nested lists of univariate tuples.
    ``method`` is ``"elimination"``, ``"minors"`` or ``"auto"`` (minors up to
    6x6, elimination above).
    """
    if isinstance(M, PolyMatrix):
        M = [[to_upoly(e) for e in M.row(i)] for i in range(M.rows)]
    if method == "auto":
        n = max(len(M), len(M[0]) if M else 0)
        method = "minors" if n <= 6 else "elimination"
    if method == "minors":
        return snf_minors(M)
    if method == "elimination":
        return snf_elimination(M)
    raise ValueError(f"unknown SNF method {method!r}")


# -- branch invariants --------------------------------------------------------------

@dataclass(frozen=True)
class BranchInvariant:
    """Sorted t-valuations of the SNF of Q on each branch (``inf`` for zero)."""

    valuations: Tuple[Tuple[float, ...], Tuple[float, ...], Tuple[float, ...]]
    lam: Fraction

    def as_json(self) -> List[List]:
        return [[("inf" if v == float("inf") else int(v)) for v in vs] for vs in self.valuations]


def branch_invariants(Q: PolyMatrix, curve: Optional[CurveData] = None,
                      lam0: Optional[Fraction] = None, method: str = "auto") -> BranchInvariant:
    """Valuation multisets of Q restricted to the three branches.

    In symbolic mode lambda is first set to ``lam0`` (default 2).
    """
    curve = curve or make_curve()
    if curve.symbolic:
        lam = Fraction(lam0) if lam0 is not None else DEFAULT_BRANCH_LAMBDA
        curve = make_curve(lam)
        Q = curve.specialize_matrix(Q.substitute({"l": Poly.const(lam)}))
    else:
        lam = curve.lam  # type: ignore[assignment]
    vals = []
    for b in branches(curve):
        M = branch_eval(Q, b)
        divs = snf_univariate(M, method)
        vals.append(tuple(sorted(U.valuation(d) for d in divs)))
    return BranchInvariant((vals[0], vals[1], vals[2]), lam)


# -- signed permutation equivalence -----------------------------------------------

def _norm(e: Poly) -> Poly:
    if not e:
        return e
    return -e if e.leading()[1] < 0 else e


def signed_permutation_witness(A: PolyMatrix, B: PolyMatrix):
    """Find row/column permutations and signs with B[s(i), t(j)] = r_i c_j A[i, j].

    Returns ``(s, r, t, c)`` as lists, or ``None`` if no such data exist.
    """
    if A.shape != B.shape:
        return None
    n, m = A.shape
    Ar = [A.row(i) for i in range(n)]
    Br = [B.row(i) for i in range(n)]

    def rkey(row):
        return tuple(sorted((str(_norm(e)) for e in row if e)))

    if sorted(map(rkey, Ar)) != sorted(map(rkey, Br)):
        return None
    cand = [[k for k in range(n) if rkey(Br[k]) == rkey(Ar[i])] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(cand[i]))
    s: Dict[int, int] = {}
    rs: Dict[int, int] = {}
    t: Dict[int, Tuple[int, int]] = {}
    used_rows: set = set()
    used_cols: set = set()

    def match_cols(i, i2, r, cols, k):
        if k == len(cols):
            return True
        j = cols[k]
        a = Ar[i][j]
        if j in t:
            j2, c = t[j]
            return Br[i2][j2] == a.scale(r * c) and match_cols(i, i2, r, cols, k + 1)
        for j2 in range(m):
            if j2 in used_cols or not Br[i2][j2]:
                continue
            for c in (1, -1):
                if Br[i2][j2] == a.scale(r * c):
                    t[j] = (j2, c)
                    used_cols.add(j2)
                    if match_cols(i, i2, r, cols, k + 1):
                        return True
                    del t[j]
                    used_cols.discard(j2)
        return False

    def zeros_ok(i, i2):
        # mapped columns where A is zero must be zero in B as well
        return all(Br[i2][j2] or not Ar[i][j] for j, (j2, _) in t.items()) and \
            all(not Br[i2][j2] for j, (j2, _) in t.items() if not Ar[i][j])

    def rec(pos):
        if pos == n:
            return True
        i = order[pos]
        nz = [j for j in range(m) if Ar[i][j]]
        for i2 in cand[i]:
            if i2 in used_rows:
                continue
            for r in (1, -1):
                saved = dict(t)
                saved_used = set(used_cols)
                if match_cols(i, i2, r, nz, 0) and zeros_ok(i, i2):
                    s[i], rs[i] = i2, r
                    used_rows.add(i2)
                    if rec(pos + 1):
                        return True
                    used_rows.discard(i2)
                    del s[i], rs[i]
                t.clear()
                t.update(saved)
                used_cols.clear()
                used_cols.update(saved_used)
        return False

    if not rec(0):
        return None
    free = [j2 for j2 in range(m) if j2 not in used_cols]
    for j in range(m):
        if j not in t:
            t[j] = (free.pop(0), 1)
    perm_s = [s[i] for i in range(n)]
    perm_t = [t[j][0] for j in range(m)]
    if any(B[perm_s[i], perm_t[j]] != A[i, j].scale(rs[i] * t[j][1]) for i in range(n) for j in range(m)):
        return None  # pragma: no cover - guarded by the search
    return perm_s, [rs[i] for i in range(n)], perm_t, [t[j][1] for j in range(m)]


def equivalent_up_to_signed_permutation(A: PolyMatrix, B: PolyMatrix) -> bool:
    return signed_permutation_witness(A, B) is not None


# -- reports -----------------------------------------------------------------------

def report_dict(word: Optional[str], rep: MFReport, inv: Optional[BranchInvariant],
                lambda_mode: str) -> Dict:
    d = {
        "word": word,
        "size": rep.size,
        "ok": rep.ok,
        "det_exponents": list(rep.det_exponents) if rep.det_exponents else None,
        "minimal": rep.minimal,
        "branch_valuations": inv.as_json() if inv else None,
        "lambda_mode": lambda_mode,
    }
    if inv is not None:
        d["branch_lambda"] = str(inv.lam)
    if rep.detail:
        d["detail"] = rep.detail
    return d


def report_json(word: Optional[str], rep: MFReport, inv: Optional[BranchInvariant],
                lambda_mode: str) -> str:
    return json.dumps(report_dict(word, rep, inv, lambda_mode), ensure_ascii=False)


def collision_table(items: Iterable[Tuple[str, BranchInvariant]]) -> List[Tuple[str, List[str]]]:
    """Groups of words sharing the same branch invariant, largest first."""
    groups: Dict[str, List[str]] = {}
    for word, inv in items:
        groups.setdefault(json.dumps(inv.as_json()), []).append(word)
    clashes = [(k, v) for k, v in groups.items() if len(v) > 1]
    return sorted(clashes, key=lambda kv: (-len(kv[1]), kv[0]))
