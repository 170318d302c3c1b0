"""Kronecker canonical form of pencils X1*t1 + X2*t2 over Q or GF(p).

Block vocabulary (n >= 1):

* ``A(n)``: t1 on the diagonal, t2 on the superdiagonal; eigenvalue at t1 = 0.
* ``B(n)``: the same with t1 and t2 exchanged; eigenvalue at t2 = 0.
* ``C(n)``: n x (n+1), t1 on the diagonal and t2 just right of it.
* ``D(n)``: the transpose of ``C(n)``.
* ``Regular(alpha)``: X1 = I, X2 = alpha*I + N, singular where t1 + alpha*t2 = 0.

:func:`decompose` only computes equivalence invariants, never transforming
matrices: column minimal indices (``C``) and row minimal indices (``D``) from
kernel dimensions of block Toeplitz matrices, then for each singular point of
the pencil the Jordan sizes from local kernel dimensions.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from . import univariate as up

__all__ = [
    "Field",
    "QQ",
    "GF",
    "parse_field",
    "Pencil",
    "PencilBlock",
    "BadSize",
    "EigenvalueNotInField",
    "PencilFormatError",
    "block",
    "direct_sum",
    "blocks_pencil",
    "decompose",
    "random_invertible",
    "conjugate",
    "rank",
    "load_pencil",
    "dump_pencil",
]


class BadSize(ValueError):
    pass


class EigenvalueNotInField(ArithmeticError):
    """The regular part has eigenvalues outside the ground field."""


class PencilFormatError(ValueError):
    pass


# -- fields --------------------------------------------------------------------

class Field:
    """Exact field interface; elements are plain Python numbers."""

    name: str

    def __call__(self, v: Any) -> Any:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def random(self, rng: random.Random) -> Any:
        raise NotImplementedError

    def sort_key(self, a: Any) -> Any:
        return a

    def fmt(self, a: Any) -> str:
        return str(a)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return self.name


class _Rationals(Field):
    name = "Q"

    def __call__(self, v: Any) -> Fraction:
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise PencilFormatError(f"not a rational number: {v!r}") from exc

    def inv(self, a: Fraction) -> Fraction:
        return 1 / a

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-9, 9))


class _PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"Fp:{p}"

    def __call__(self, v: Any) -> int:
        if isinstance(v, str):
            try:
                v = Fraction(v.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise PencilFormatError(f"not a field element: {v!r}") from exc
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise PencilFormatError(f"{v} has no image in {self.name}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return int(v) % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)


QQ: Field = _Rationals()


def GF(p: int = 101) -> Field:
    return _PrimeField(p)


def parse_field(desc: str) -> Field:
    """``"Q"`` or ``"Fp:<prime>"``."""
    d = desc.strip()
    if d in ("Q", "QQ"):
        return QQ
    if d.startswith("Fp:"):
        try:
            return GF(int(d[3:]))
        except ValueError as exc:
            raise PencilFormatError(str(exc)) from exc
    raise PencilFormatError(f"unknown field descriptor {desc!r}")


def _is_gf(k: Field) -> bool:
    return isinstance(k, _PrimeField)


# -- dense linear algebra -------------------------------------------------------

Matrix = List[List[Any]]


def _reduce(k: Field, a: Any) -> Any:
    return a % k.p if _is_gf(k) else a  # type: ignore[attr-defined]


def rank(k: Field, m: Sequence[Sequence[Any]]) -> int:
    """Rank by Gaussian elimination (works on a copy)."""
    rows = [list(r) for r in m if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    gf = _is_gf(k)
    p = getattr(k, "p", 0)
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = k.inv(rows[r][c])
        pr = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv
                ri = rows[i]
                if gf:
                    for j in range(c, ncols):
                        if pr[j]:
                            ri[j] = (ri[j] - f * pr[j]) % p
                else:
                    for j in range(c, ncols):
                        if pr[j]:
                            ri[j] = ri[j] - f * pr[j]
        r += 1
        if r == len(rows):
            break
    return r


def _matmul(k: Field, a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        out.append([_reduce(k, sum(row[t] * b[t][j] for t in range(inner))) for j in range(cols)])
    return out


def _identity(k: Field, n: int) -> Matrix:
    return [[k(1) if i == j else k(0) for j in range(n)] for i in range(n)]


def _zeros(k: Field, r: int, c: int) -> Matrix:
    return [[k(0)] * c for _ in range(r)]


def _combo(k: Field, a: Any, m1: Matrix, b: Any, m2: Matrix) -> Matrix:
    return [[_reduce(k, a * u + b * v) for u, v in zip(r1, r2)] for r1, r2 in zip(m1, m2)]


# -- pencils and blocks ---------------------------------------------------------

@dataclass(frozen=True)
class Pencil:
    """Pair of equally shaped constant matrices over ``field``."""

    X1: Tuple[Tuple[Any, ...], ...]
    X2: Tuple[Tuple[Any, ...], ...]
    rows: int
    cols: int
    field: Field = field(default=QQ)

    @classmethod
    def make(cls, X1: Sequence[Sequence[Any]], X2: Sequence[Sequence[Any]], k: Field = QQ,
             shape: Optional[Tuple[int, int]] = None) -> "Pencil":
        r = len(X1)
        c = len(X1[0]) if X1 else (shape[1] if shape else 0)
        if shape is not None and (r, c) != tuple(shape):
            raise BadSize(f"matrix shape {(r, c)} does not match {tuple(shape)}")
        if len(X2) != r or any(len(row) != c for row in list(X1) + list(X2)):
            raise BadSize("X1 and X2 must share one rectangular shape")
        t1 = tuple(tuple(k(v) for v in row) for row in X1)
        t2 = tuple(tuple(k(v) for v in row) for row in X2)
        return cls(t1, t2, r, c, k)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def at(self, a: Any, b: Any) -> Matrix:
        """The constant matrix a*X1 + b*X2."""
        k = self.field
        return [[_reduce(k, a * u + b * v) for u, v in zip(r1, r2)] for r1, r2 in zip(self.X1, self.X2)]

    def transpose(self) -> "Pencil":
        t1 = tuple(zip(*self.X1)) if self.rows else tuple(() for _ in range(self.cols))
        t2 = tuple(zip(*self.X2)) if self.rows else tuple(() for _ in range(self.cols))
        return Pencil(tuple(map(tuple, t1)), tuple(map(tuple, t2)), self.cols, self.rows, self.field)

    def entry_text(self, i: int, j: int) -> str:
        """Entry (i, j) as a linear form in t1, t2."""
        a, b = self.X1[i][j], self.X2[i][j]
        parts = []
        for coef, name in ((a, "t1"), (b, "t2")):
            if coef:
                parts.append(name if coef == 1 else f"{self.field.fmt(coef)}*{name}")
        return " + ".join(parts) if parts else "0"


_KIND_ORDER = {"A": 0, "B": 1, "C": 2, "D": 3, "Regular": 4}


@dataclass(frozen=True)
class PencilBlock:
    kind: str
    size: int
    alpha: Any = None

    def __post_init__(self) -> None:
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.size < 1:
            raise BadSize(f"block size must be at least 1, got {self.size}")
        if self.kind == "Regular":
            if self.alpha is None or self.alpha == 0:
                raise ValueError("Regular blocks need a nonzero alpha; alpha = 0 is A(n)")
        elif self.alpha is not None:
            raise ValueError(f"{self.kind} blocks carry no alpha")

    def sort_key(self, k: Field = QQ) -> Tuple:
        return (_KIND_ORDER[self.kind], self.size, k.sort_key(self.alpha) if self.alpha is not None else 0)

    @property
    def shape(self) -> Tuple[int, int]:
        if self.kind == "C":
            return self.size, self.size + 1
        if self.kind == "D":
            return self.size + 1, self.size
        return self.size, self.size

    def __str__(self) -> str:
        if self.kind == "Regular":
            return f"Regular({self.alpha}; {self.size})"
        return f"{self.kind}({self.size})"


def block(kind: str, n: int, alpha: Any = None, k: Field = QQ) -> Pencil:
    """Pencil of a single canonical block."""
    b = PencilBlock(kind, n, None if alpha is None else k(alpha))
    return _block_pencil(b, k)


def _block_pencil(b: PencilBlock, k: Field) -> Pencil:
    n = b.size
    one, zero = k(1), k(0)
    if b.kind == "C" or b.kind == "D":
        X1 = [[one if j == i else zero for j in range(n + 1)] for i in range(n)]
        X2 = [[one if j == i + 1 else zero for j in range(n + 1)] for i in range(n)]
        p = Pencil.make(X1, X2, k)
        return p.transpose() if b.kind == "D" else p
    eye = [[one if i == j else zero for j in range(n)] for i in range(n)]
    nil = [[one if j == i + 1 else zero for j in range(n)] for i in range(n)]
    if b.kind == "A":
        return Pencil.make(eye, nil, k)
    if b.kind == "B":
        return Pencil.make(nil, eye, k)
    jordan = [[b.alpha if i == j else nil[i][j] for j in range(n)] for i in range(n)]
    return Pencil.make(eye, jordan, k)


def direct_sum(blocks: Iterable[Pencil], k: Optional[Field] = None) -> Pencil:
    """Block-diagonal pencil."""
    blocks = list(blocks)
    if k is None:
        k = blocks[0].field if blocks else QQ
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    X1, X2 = _zeros(k, r, c), _zeros(k, r, c)
    i0 = j0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                X1[i0 + i][j0 + j] = b.X1[i][j]
                X2[i0 + i][j0 + j] = b.X2[i][j]
        i0 += b.rows
        j0 += b.cols
    return Pencil.make(X1, X2, k, shape=(r, c))


def blocks_pencil(blocks: Iterable[PencilBlock], k: Field = QQ) -> Pencil:
    return direct_sum([_block_pencil(b, k) for b in blocks], k)


def random_invertible(k: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        m = [[k.random(rng) for _ in range(n)] for _ in range(n)]
        if rank(k, m) == n:
            return m


def conjugate(p: Pencil, S: Matrix, T: Matrix) -> Pencil:
    """The equivalent pencil S * p * T."""
    k = p.field
    X1 = _matmul(k, _matmul(k, S, [list(r) for r in p.X1]), T) if p.rows and p.cols else [list(r) for r in p.X1]
    X2 = _matmul(k, _matmul(k, S, [list(r) for r in p.X2]), T) if p.rows and p.cols else [list(r) for r in p.X2]
    return Pencil.make(X1, X2, k, shape=p.shape)


# -- decomposition ----------------------------------------------------------------

def _toeplitz(k: Field, lead: Sequence[Sequence[Any]], follow: Sequence[Sequence[Any]],
              blocks: int, extra_row: bool) -> Matrix:
    """Block lower-bidiagonal matrix with ``lead`` on the diagonal.

    With ``extra_row`` there are ``blocks + 1`` block rows, the last holding
    only ``follow``; this encodes homogeneous polynomial kernel vectors.
    """
    r = len(lead)
    c = len(lead[0]) if lead else 0
    nrows = (blocks + (1 if extra_row else 0)) * r
    out = [[k(0)] * (blocks * c) for _ in range(nrows)]
    for b in range(blocks):
        for i in range(r):
            for j in range(c):
                out[b * r + i][b * c + j] = lead[i][j]
                if b * r + r + i < nrows:
                    out[(b + 1) * r + i][b * c + j] = follow[i][j]
    return out


def _normal_rank(p: Pencil) -> int:
    k = p.field
    pts = [(k(0), k(1))] + [(k(1), k(s)) for s in range(min(p.rows, p.cols) + 1)]
    return max((rank(k, p.at(a, b)) for a, b in pts), default=0)


def _minimal_indices(p: Pencil, count: int) -> List[int]:
    """Column minimal indices (sizes of C blocks, possibly 0)."""
    k = p.field
    X1 = [list(r) for r in p.X1]
    X2 = [list(r) for r in p.X2]
    found: List[int] = []
    prev = [0, 0]  # N_{k-1}, N_{k-2}
    eps = 0
    while len(found) < count:
        if eps > p.rows + 1:
            raise ArithmeticError("minimal index search did not terminate")
        if p.rows == 0:
            nk = (eps + 1) * p.cols
        else:
            T = _toeplitz(k, X1, X2, eps + 1, extra_row=True)
            nk = (eps + 1) * p.cols - rank(k, T)
        c_eps = nk - 2 * prev[0] + prev[1]
        found.extend([eps] * c_eps)
        prev = [nk, prev[0]]
        eps += 1
    return found


def _jordan_sizes(p: Pencil, point: Tuple[Any, Any], direction: Tuple[Any, Any], n_c: int, cap: int) -> List[int]:
    """Jordan block sizes of ``p`` at ``point``; ``n_c`` is the number of C blocks."""
    k = p.field
    P0 = p.at(*point)
    P1 = p.at(*direction)
    sizes: Dict[int, int] = {}
    J_prev = 0
    at_least_prev = None
    kk = 1
    while True:
        W = _toeplitz(k, P0, P1, kk, extra_row=False)
        J = kk * p.cols - rank(k, W) - kk * n_c
        at_least = J - J_prev
        if at_least_prev is not None and at_least_prev > at_least:
            sizes[kk - 1] = at_least_prev - at_least
        if at_least == 0 or kk > cap:
            break
        J_prev, at_least_prev = J, at_least
        kk += 1
    out: List[int] = []
    for s in sorted(sizes):
        out.extend([s] * sizes[s])
    return out


def _finite_points_q(p: Pencil, R: int, target_deg: int, seed: int = 0) -> List[Fraction]:
    """Rational s with rank(X1 + s*X2) < R, via gcd of random compressions."""
    if target_deg == 0:
        return []
    k = p.field
    rng = random.Random(seed)
    nodes = [Fraction(i) for i in range(R + 1)]
    g: Optional[up.UPoly] = None
    for _ in range(24):
        U = [[Fraction(rng.randint(-3, 3)) for _ in range(p.rows)] for _ in range(R)]
        V = [[Fraction(rng.randint(-3, 3)) for _ in range(R)] for _ in range(p.cols)]
        vals = [_det_q(_matmul(k, _matmul(k, U, p.at(Fraction(1), s)), V)) for s in nodes]
        f = up.interpolate(nodes, vals)
        if not f:
            continue
        g = f if g is None else up.gcd_(g, f)
        if g is not None and up.deg(g) <= target_deg:
            break
    if g is None or up.deg(g) < target_deg:
        raise ArithmeticError("could not isolate the regular part")
    return [r for r, _ in up.rational_roots(g)] if up.deg(g) > 0 else []


def _det_q(m: Matrix) -> Fraction:
    a = [list(r) for r in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return d


def decompose(p: Pencil) -> List[PencilBlock]:
    """Canonical block multiset of ``p``, sorted by (kind, size, alpha).

    Raises :class:`EigenvalueNotInField` when the regular part does not split
    over ``p.field``.  Zero rows and columns are reported as ``D``/``C``
    blocks of size 0 would be, so they raise :class:`BadSize` instead.
    """
    k = p.field
    R = _normal_rank(p)
    n_c = p.cols - R
    n_d = p.rows - R
    eps = _minimal_indices(p, n_c)
    eta = _minimal_indices(p.transpose(), n_d)
    if any(e == 0 for e in eps + eta):
        raise BadSize("pencil has a zero row or column (a size-0 minimal block)")
    n_reg = p.rows - sum(eps) - sum(e + 1 for e in eta)
    blocks: List[PencilBlock] = [PencilBlock("C", e) for e in eps] + [PencilBlock("D", e) for e in eta]
    found = 0
    if n_reg:
        # point t1 = 0 gives A blocks
        a_sizes = _jordan_sizes(p, (k(0), k(1)), (k(1), k(0)), n_c, n_reg)
        blocks += [PencilBlock("A", s) for s in a_sizes]
        found += sum(a_sizes)
        if _is_gf(k):
            candidates = [k(s) for s in range(k.p)]  # type: ignore[attr-defined]
            candidates = [s for s in candidates if rank(k, p.at(k(1), s)) < R]
        else:
            candidates = _finite_points_q(p, R, n_reg - found)
        for s in candidates:
            if found >= n_reg:
                break
            sizes = _jordan_sizes(p, (k(1), s), (k(0), k(1)), n_c, n_reg)
            if s == 0:
                blocks += [PencilBlock("B", m) for m in sizes]
            else:
                alpha = _reduce(k, -k.inv(s))
                blocks += [PencilBlock("Regular", m, alpha) for m in sizes]
            found += sum(sizes)
        if found != n_reg:
            raise EigenvalueNotInField(
                f"regular part of size {n_reg} has only {found} eigenvalue multiplicity over {k.name}")
    return sorted(blocks, key=lambda b: b.sort_key(k))


# -- file format --------------------------------------------------------------------

def load_pencil(data: Any) -> Pencil:
    """Pencil from a parsed JSON object or a JSON string."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise PencilFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or not {"field", "X1", "X2"} <= data.keys():
        raise PencilFormatError('pencil JSON needs "field", "X1" and "X2"')
    k = parse_field(str(data["field"]))
    X1, X2 = data["X1"], data["X2"]
    if not isinstance(X1, list) or not isinstance(X2, list):
        raise PencilFormatError("X1 and X2 must be arrays of rows")
    shape = None
    if "rows" in data and "cols" in data:
        shape = (int(data["rows"]), int(data["cols"]))
    try:
        return Pencil.make(X1, X2, k, shape=shape)
    except BadSize as exc:
        raise PencilFormatError(str(exc)) from exc


def dump_pencil(p: Pencil) -> Dict[str, Any]:
    k = p.field
    return {
        "field": k.name,
        "rows": p.rows,
        "cols": p.cols,
        "X1": [[k.fmt(v) for v in r] for r in p.X1],
        "X2": [[k.fmt(v) for v in r] for r in p.X2],
    }
