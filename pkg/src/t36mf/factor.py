"""Direct builders for the Q-matrices of all 24 word types.

Row ``i`` of every Q is the relation "owned" by generator ``labels[i]``: an
annihilator row for the ``u`` generators and an extension row for the ``v``
generators.  Columns use the same order.  Recipes, with ``z = x - y^2`` and
``z' = x - l*y^2``:

a(n)   u^2 (z), u1..un (xz), v1..v{n+1} (xz'); v1 couples -xy to u^2 and
       v{k+1} couples -xy to uk.
b(n)   u^1 (x), u1..un (xz), v1..vn (xz'), v{n+1} (zz'); v1 couples -xy to
       u^1 and u1, vk (k >= 2) couples +xy to uk, and the v{n+1} row is
       -zy*(u^1 + u1) + zy*(u2 + ... + un) + zz'*(v1 + ... + vn).
c(n)   the a(n) couplings with the v columns listed in reverse.
d(n)   u^2 (z), u1..u{n+1} (xz), v1..v{n+2} (xz'); vk couples -xy to u{k+1}
       for k <= n, v{n+1} couples -xy to u{n+1} and v{n+2} couples -x to u^2.
c'(n)  u^1 (x), u^2 (z), u1..un (xz), v1..v{n+1} (xz'), v{n+2} (xzz');
       v1 couples -xy to u^1 and u^2 and -xyz' to v{n+2}, v{k+1} couples -xy
       to uk.
d'(n)  d(n) with the t1 column renamed v{n+3} plus a decoration generator
       v{n+2} whose row is -xzz' on the diagonal only.

At n = 2 these reproduce the fixture matrices entry for entry, including
their column orders and signs.

Cutting a word deletes generators: the left cut removes what the left end
letter contributes and the right cut what the right end letter contributes.
If removing a column leaves a ``u`` generator coupled to nothing else that
came from the same end letter, that ``u`` goes as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .curve import CurveData, make_curve
from .matrixio import fixture_path, read_matrix
from .poly import ZERO, NotDivisible, Poly, PolyMatrix, X, Y, adjugate, det, exact_div, triangular_order
from .words import Word

__all__ = [
    "QMatrix",
    "NotFactorization",
    "build_Q",
    "cut_labels",
    "complement",
    "complement_adjugate",
    "complement_triangular",
    "load_fixture",
    "FIXTURE_WORDS",
]


class NotFactorization(ArithmeticError):
    """F * Q^-1 is not a polynomial matrix."""


@dataclass(frozen=True)
class QMatrix:
    Q: PolyMatrix
    word: Word
    labels: Tuple[str, ...]
    lambda_mode: str = "symbolic"

    @property
    def size(self) -> int:
        return self.Q.rows


class _Builder:
    def __init__(self, labels: Sequence[str]):
        self.labels = list(labels)
        self.index = {l: i for i, l in enumerate(self.labels)}
        n = len(self.labels)
        self.rows: List[List[Poly]] = [[ZERO] * n for _ in range(n)]

    def put(self, row: str, col: str, value: Poly) -> None:
        self.rows[self.index[row]][self.index[col]] = value

    def diag(self, label: str, value: Poly) -> None:
        self.put(label, label, value)

    def matrix(self) -> PolyMatrix:
        return PolyMatrix.from_rows(self.rows) if self.rows else PolyMatrix.zeros(0, 0)


def _us(a: int, b: int) -> List[str]:
    return [f"u{k}" for k in range(a, b + 1)]


def _vs(a: int, b: int) -> List[str]:
    return [f"v{k}" for k in range(a, b + 1)]


def _full(fam: str, n: int, curve: CurveData) -> _Builder:
    z, zp = curve.z, curve.zp
    x, y = X, Y
    xz, xzp, zzp = x * z, x * zp, z * zp
    xy = x * y
    if fam in ("a", "c"):
        vs = _vs(1, n + 1)
        b = _Builder(["u^2"] + _us(1, n) + (vs if fam == "a" else vs[::-1]))
        b.diag("u^2", z)
        for u in _us(1, n):
            b.diag(u, xz)
        for v in vs:
            b.diag(v, xzp)
        b.put("v1", "u^2", -xy)
        for k in range(1, n + 1):
            b.put(f"v{k + 1}", f"u{k}", -xy)
        return b
    if fam == "b":
        b = _Builder(["u^1"] + _us(1, n) + _vs(1, n + 1))
        b.diag("u^1", x)
        for u in _us(1, n):
            b.diag(u, xz)
        for v in _vs(1, n):
            b.diag(v, xzp)
        b.put("v1", "u^1", -xy)
        b.put("v1", "u1", -xy)
        for k in range(2, n + 1):
            b.put(f"v{k}", f"u{k}", xy)
        last = f"v{n + 1}"
        b.put(last, "u^1", -(z * y))
        b.put(last, "u1", -(z * y))
        for k in range(2, n + 1):
            b.put(last, f"u{k}", z * y)
        for v in _vs(1, n + 1):
            b.put(last, v, zzp)
        return b
    if fam in ("d", "d'"):
        t1 = f"v{n + 3}" if fam == "d'" else f"v{n + 2}"
        cols = ["u^2"] + _us(1, n + 1) + [t1]
        if fam == "d'":
            cols.append(f"v{n + 2}")
        cols += _vs(1, n + 1)[::-1]
        b = _Builder(cols)
        b.diag("u^2", z)
        for u in _us(1, n + 1):
            b.diag(u, xz)
        for v in _vs(1, n + 1) + [t1]:
            b.diag(v, xzp)
        b.put(t1, "u^2", -x)
        for k in range(1, n + 1):
            b.put(f"v{k}", f"u{k + 1}", -xy)
        b.put(f"v{n + 1}", f"u{n + 1}", -xy)
        if fam == "d'":
            b.diag(f"v{n + 2}", -(x * zzp))
        return b
    if fam == "c'":
        dec = f"v{n + 2}"
        b = _Builder(["u^1", "u^2"] + _us(1, n) + [dec] + _vs(1, n + 1)[::-1])
        b.diag("u^1", x)
        b.diag("u^2", z)
        for u in _us(1, n):
            b.diag(u, xz)
        b.diag(dec, x * zzp)
        for v in _vs(1, n + 1):
            b.diag(v, xzp)
        b.put("v1", "u^1", -xy)
        b.put("v1", "u^2", -xy)
        b.put("v1", dec, -(xy * zp))
        for k in range(1, n + 1):
            b.put(f"v{k + 1}", f"u{k}", -xy)
        return b
    raise ValueError(fam)  # pragma: no cover


def cut_labels(w: Word) -> Tuple[str, ...]:
    """Generators removed by the cuts of ``w``."""
    n = w.n
    left: Tuple[str, ...]
    right: Tuple[str, ...]
    fam = w.family
    if fam in ("a", "c"):
        left, right = ("u^2",), (f"v{n + 1}",)
    elif fam == "b":
        left, right = ("u^1",), (f"v{n + 1}",)
    elif fam == "d":
        left, right = (f"v{n + 1}",), (f"v{n + 2}", "u^2")
    elif fam == "d'":
        left, right = (f"v{n + 1}",), (f"v{n + 3}", "u^2")
    else:
        left, right = ("u^2",), ("u^1",)
    return (left if w.left_cut else ()) + (right if w.right_cut else ())


def build_Q(w: Word, curve: Optional[CurveData] = None) -> QMatrix:
    """Q-matrix of ``w``; rows and columns follow ``labels``."""
    curve = curve or make_curve()
    b = _full(w.family, w.n, curve)
    m = b.matrix()
    drop = [b.index[l] for l in cut_labels(w)]
    labels = tuple(l for i, l in enumerate(b.labels) if i not in drop)
    if drop:
        m = m.delete(drop, drop)
    return QMatrix(m, w, labels, curve.lambda_mode)


# -- complements -----------------------------------------------------------------

def complement_triangular(Q: PolyMatrix, F: Poly) -> Optional[PolyMatrix]:
    """F * Q^-1 by forward substitution when Q is a permuted triangular matrix.

    Returns ``None`` if Q has no triangular form; raises
    :class:`NotFactorization` when some division is inexact.
    """
    order = triangular_order(Q)
    if order is None:
        return None
    rows, cols = order
    n = Q.rows
    L = [[Q[rows[i], cols[j]] for j in range(n)] for i in range(n)]
    Xs: List[List[Poly]] = []
    for i in range(n):
        d = L[i][i]
        out = []
        for c in range(n):
            acc = F if c == i else ZERO
            for j in range(i):
                if L[i][j] and Xs[j][c]:
                    acc = acc - L[i][j] * Xs[j][c]
            try:
                out.append(exact_div(acc, d) if acc else ZERO)
            except NotDivisible as exc:
                raise NotFactorization(f"F*Q^-1 has a non-polynomial entry: {exc}") from exc
        Xs.append(out)
    # L = Q[rows][:, cols], so Q^-1[cols[j], rows[i]] = L^-1[j, i]
    psi = [[ZERO] * n for _ in range(n)]
    for j in range(n):
        for i in range(n):
            psi[cols[j]][rows[i]] = Xs[j][i]
    return PolyMatrix.from_rows(psi) if n else PolyMatrix.zeros(0, 0)


def complement_adjugate(Q: PolyMatrix, F: Poly) -> PolyMatrix:
    """F * adj(Q) / det(Q) with exact division of every entry."""
    d = det(Q)
    if not d:
        raise NotFactorization("det(Q) = 0")
    adj = adjugate(Q)
    try:
        return adj.map(lambda e: exact_div(F * e, d) if e else ZERO)
    except NotDivisible as exc:
        raise NotFactorization(f"F*adj(Q)/det(Q) has a non-polynomial entry: {exc}") from exc


def complement(q, curve: Optional[CurveData] = None) -> PolyMatrix:
    """The partner factor psi with Q*psi = psi*Q = F*I.

    Accepts a :class:`QMatrix` or a plain square :class:`PolyMatrix`.
    """
    Q = q.Q if isinstance(q, QMatrix) else q
    curve = curve or make_curve()
    if not Q.is_square():
        raise NotFactorization(f"Q is {Q.rows}x{Q.cols}")
    psi = complement_triangular(Q, curve.F)
    return psi if psi is not None else complement_adjugate(Q, curve.F)


# -- fixtures ---------------------------------------------------------------------

FIXTURE_WORDS: Tuple[str, ...] = ("a:2", "b:2", "c:2", "d:2", "cp:2", "dp:2")


def load_fixture(word: str) -> Tuple[PolyMatrix, Tuple[str, ...], Dict]:
    """Golden matrix for a word in :data:`FIXTURE_WORDS`: (Q, labels, metadata)."""
    name = "Q_" + word.replace(":", "_") + ".json"
    path = fixture_path(name)
    if path is None:
        raise KeyError(f"no fixture for {word}")
    m, _, meta = read_matrix(path)
    return m, tuple(meta.get("labels", ())), meta
