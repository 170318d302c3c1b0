"""Exact sparse polynomials in x, y, l (lambda) and t over the rationals.

Monomials are packed into a single integer so that multiplying monomials is
integer addition and the graded lexicographic order (x > y > l > t) is plain
integer comparison::

    key = deg << 64 | ex << 48 | ey << 32 | el << 16 | et

Every exponent must stay below 2**16.  Coefficients are ``int`` whenever the
value is integral and :class:`fractions.Fraction` otherwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

__all__ = [
    "VARIABLES",
    "Monomial",
    "Poly",
    "PolyMatrix",
    "NotDivisible",
    "DivisorZero",
    "NotSquare",
    "PolyParseError",
    "add",
    "mul",
    "exact_div",
    "substitute",
    "det",
    "det_bareiss",
    "det_cofactor",
    "adjugate",
    "triangular_order",
    "minors",
    "parse",
    "format_poly",
    "format_matrix",
]

VARIABLES = ("x", "y", "l", "t")
_SHIFTS = (48, 32, 16, 0)
_DEG = 64
_MASK = 0xFFFF

Coeff = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_div` when the quotient is not a polynomial."""


class DivisorZero(ZeroDivisionError):
    """Raised when dividing by the zero polynomial."""


class NotSquare(ValueError):
    """Raised by determinant-type operations on non-square matrices."""


class PolyParseError(ValueError):
    """Raised for text that does not follow the polynomial grammar."""


def _norm(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _pack(ex: int, ey: int, el: int, et: int) -> int:
    if min(ex, ey, el, et) < 0 or max(ex, ey, el, et) > _MASK:
        raise ValueError("exponent out of range")
    return ((ex + ey + el + et) << _DEG) | (ex << 48) | (ey << 32) | (el << 16) | et


def _unpack(key: int) -> Tuple[int, int, int, int]:
    return ((key >> 48) & _MASK, (key >> 32) & _MASK, (key >> 16) & _MASK, key & _MASK)


def _divides(a: int, b: int) -> bool:
    """True when monomial ``a`` divides monomial ``b``."""
    for s in _SHIFTS:
        if (a >> s) & _MASK > (b >> s) & _MASK:
            return False
    return True


class Monomial(NamedTuple):
    """Exponent vector over (x, y, l, t)."""

    x: int = 0
    y: int = 0
    l: int = 0
    t: int = 0

    @property
    def degree(self) -> int:
        return self.x + self.y + self.l + self.t

    @property
    def key(self) -> int:
        """Sort key realising the graded lexicographic order."""
        return _pack(*self)

    def exponents(self) -> Dict[str, int]:
        """Nonzero exponents only, keyed by variable name."""
        return {v: e for v, e in zip(VARIABLES, self) if e}

    def __str__(self) -> str:
        parts = []
        for v, e in zip(VARIABLES, self):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"


class Poly:
    """Immutable sparse polynomial.

    Equal polynomials have identical term maps, so ``==`` and ``hash`` are
    structural.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Coeff]] = None):
        # ``terms`` maps packed monomial keys to coefficients; zeros are dropped.
        if terms:
            self._t = {k: _norm(c) for k, c in terms.items() if c}
        else:
            self._t = {}
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[int, Coeff]) -> "Poly":
        # Trusted constructor: terms already normalised and nonzero.
        p = object.__new__(cls)
        p._t = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Union[int, Fraction, str]) -> "Poly":
        c = Fraction(c) if isinstance(c, str) else c
        return cls._raw({0: _norm(c)}) if c else cls._raw({})

    @classmethod
    def var(cls, name: str) -> "Poly":
        if name == "λ":
            name = "l"
        if name not in VARIABLES:
            raise ValueError(f"unknown variable {name!r}")
        e = [0, 0, 0, 0]
        e[VARIABLES.index(name)] = 1
        return cls._raw({_pack(*e): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: Coeff = 1) -> "Poly":
        return cls._raw({m.key: _norm(c)}) if c else cls._raw({})

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return parse(text)

    # -- inspection -------------------------------------------------------
    def terms(self) -> List[Tuple[Monomial, Coeff]]:
        """Terms in descending monomial order."""
        return [(Monomial(*_unpack(k)), self._t[k]) for k in sorted(self._t, reverse=True)]

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> Coeff:
        return self._t.get(0, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max(self._t) >> _DEG if self._t else -1

    def degree_in(self, var: str) -> int:
        s = _SHIFTS[VARIABLES.index(var)]
        return max(((k >> s) & _MASK for k in self._t), default=-1)

    def variables(self) -> Tuple[str, ...]:
        seen = [False] * 4
        for k in self._t:
            for i, s in enumerate(_SHIFTS):
                if (k >> s) & _MASK:
                    seen[i] = True
        return tuple(v for v, f in zip(VARIABLES, seen) if f)

    def leading(self) -> Tuple[Monomial, Coeff]:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return Monomial(*_unpack(k)), self._t[k]

    def value_at_origin(self) -> "Poly":
        """Part of the polynomial free of x and y (a polynomial in l and t)."""
        keep = (_MASK << 48) | (_MASK << 32)
        return Poly._raw({k: c for k, c in self._t.items() if not k & keep})

    def is_unit_at_origin(self) -> bool:
        """True when the polynomial does not vanish at x = y = 0."""
        return bool(self.value_at_origin())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "PolyLike") -> "Poly":
        other = _coerce(other)
        if not other._t:
            return self
        if not self._t:
            return other
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other: "PolyLike") -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "PolyLike") -> "Poly":
        return _coerce(other) + (-self)

    def __mul__(self, other: "PolyLike") -> "Poly":
        other = _coerce(other)
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            if kb == 0 and cb == 1:
                return Poly._raw(dict(a))
            return Poly._raw({k + kb: _norm(c * cb) for k, c in a.items()})
        out: Dict[int, Coeff] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return Poly._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: Coeff) -> "Poly":
        if not c:
            return ZERO
        return Poly._raw({k: _norm(v * c) for k, v in self._t.items()})

    def exact_div(self, d: "PolyLike") -> "Poly":
        return exact_div(self, d)

    def substitute(self, bindings: Mapping[str, "PolyLike"]) -> "Poly":
        return substitute(self, bindings)

    def evaluate(self, **values: Coeff) -> Coeff:
        """Evaluate at rational values for every occurring variable."""
        p = substitute(self, {k: Poly.const(v) for k, v in values.items()})
        if not p.is_constant():
            raise ValueError(f"unbound variables {p.variables()}")
        return p.constant_term()

    # -- comparison / printing -------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def latex(self) -> str:
        return format_poly(self, latex=True)


PolyLike = Union[Poly, int, Fraction]


def _coerce(p: PolyLike) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, (int, Fraction)):
        return Poly.const(p)
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


ZERO = Poly._raw({})
ONE = Poly._raw({0: 1})


# -- module-level operations -------------------------------------------------

def add(p: PolyLike, q: PolyLike) -> Poly:
    return _coerce(p) + _coerce(q)


def mul(p: PolyLike, q: PolyLike) -> Poly:
    return _coerce(p) * _coerce(q)


def exact_div(p: PolyLike, d: PolyLike) -> Poly:
    """Return ``q`` with ``q * d == p`` or raise :class:`NotDivisible`.

    Uses division by the leading term; when ``d`` divides ``p`` every
    intermediate leading term is divisible by ``lt(d)``, so the first failure
    is conclusive.
    """
    p, d = _coerce(p), _coerce(d)
    if not d._t:
        raise DivisorZero("division by the zero polynomial")
    if not p._t:
        return ZERO
    dt = d._t
    kd = max(dt)
    cd = dt[kd]
    rest = [(k, c) for k, c in dt.items() if k != kd]
    if not rest:
        out = {}
        for k, c in p._t.items():
            if not _divides(kd, k):
                raise NotDivisible(f"{d} does not divide {p}")
            out[k - kd] = _qc(c, cd)
        return Poly._raw(out)
    r = dict(p._t)
    q: Dict[int, Coeff] = {}
    while r:
        kr = max(r)
        if not _divides(kd, kr):
            raise NotDivisible(f"{d} does not divide {p}")
        cq = _qc(r.pop(kr), cd)
        km = kr - kd
        q[km] = cq
        for k, c in rest:
            kk = k + km
            v = r.get(kk, 0) - cq * c
            if v:
                r[kk] = v
            else:
                r.pop(kk, None)
    return Poly._raw({k: _norm(c) for k, c in q.items()})


def _qc(a: Coeff, b: Coeff) -> Coeff:
    if type(a) is int and type(b) is int:
        if b == 1:
            return a
        if b == -1:
            return -a
        if a % b == 0:
            return a // b
    return _norm(Fraction(a) / b)


def substitute(p: PolyLike, bindings: Mapping[str, PolyLike]) -> Poly:
    """Replace variables by polynomials; unbound variables are kept."""
    p = _coerce(p)
    images: List[Optional[Poly]] = [None] * 4
    for name, img in bindings.items():
        if name == "λ":
            name = "l"
        images[VARIABLES.index(name)] = _coerce(img)
    if not p._t or all(i is None for i in images):
        return p
    powers: List[Dict[int, Poly]] = [{} for _ in range(4)]

    def power(i: int, e: int) -> Poly:
        cache = powers[i]
        if e not in cache:
            cache[e] = images[i] ** e  # type: ignore[operator]
        return cache[e]

    acc: Dict[int, Coeff] = {}
    for k, c in p._t.items():
        ex = list(_unpack(k))
        term = Poly._raw({0: c})
        for i in range(4):
            if images[i] is not None and ex[i]:
                term = term * power(i, ex[i])
                ex[i] = 0
        kept = _pack(*ex)
        for kt, ct in term._t.items():
            kk = kt + kept
            acc[kk] = acc.get(kk, 0) + ct
    return Poly._raw({k: _norm(c) for k, c in acc.items() if c})


# -- text grammar ------------------------------------------------------------

_TOKEN = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^(?:(x|y|l|t|λ)(?:\^(\d+))?|(\d+(?:/\d+)?))$")


def parse(text: str) -> Poly:
    """Parse ``c*x^a*y^b*l^c*t^d`` terms joined by ``+``/``-``.

    Whitespace is ignored; ``λ`` is accepted for ``l``; a factor may repeat.
    """
    s = "".join(text.split())
    if not s:
        raise PolyParseError("empty polynomial")
    pos = 0
    acc = ZERO
    first = True
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None or m.end() == pos:
            raise PolyParseError(f"cannot parse {text!r} at offset {pos}")
        sign, body = m.group(1), m.group(2)
        if sign is None and not first:
            raise PolyParseError(f"missing operator in {text!r}")
        first = False
        coeff: Coeff = -1 if sign == "-" else 1
        ex = [0, 0, 0, 0]
        for factor in body.split("*"):
            f = _FACTOR.match(factor)
            if f is None:
                raise PolyParseError(f"bad factor {factor!r} in {text!r}")
            if f.group(3) is not None:
                try:
                    num = Fraction(f.group(3))
                except ZeroDivisionError:
                    raise PolyParseError(f"zero denominator in {text!r}") from None
                coeff = coeff * num
            else:
                v = "l" if f.group(1) == "λ" else f.group(1)
                ex[VARIABLES.index(v)] += int(f.group(2) or 1)
        acc = acc + Poly._raw({_pack(*ex): _norm(coeff)}) if coeff else acc
        pos = m.end()
    return acc


def format_poly(p: Poly, latex: bool = False) -> str:
    """Canonical text (or LaTeX) form, terms in descending monomial order."""
    if not p._t:
        return "0"
    out = []
    for i, k in enumerate(sorted(p._t, reverse=True)):
        c = p._t[k]
        neg = c < 0
        a = -c if neg else c
        mono = Monomial(*_unpack(k))
        if latex:
            body = _latex_mono(mono)
            cs = "" if a == 1 and k else _latex_coeff(a)
            term = cs + body
        else:
            body = "" if k == 0 else str(mono)
            if a == 1 and k:
                term = body
            else:
                term = str(a) + ("*" + body if body else "")
        if i == 0:
            out.append(("-" if neg else "") + term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out)


def _latex_coeff(a: Coeff) -> str:
    if type(a) is Fraction:
        return rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
    return str(a)


def _latex_mono(m: Monomial) -> str:
    names = {"x": "x", "y": "y", "l": r"\lambda ", "t": "t"}
    parts = []
    for v, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(names[v])
        elif e:
            parts.append(f"{names[v].strip()}^{{{e}}}")
    return "".join(parts).strip()


# -- matrices ----------------------------------------------------------------

class PolyMatrix:
    """Immutable dense matrix of :class:`Poly`."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable[PolyLike]):
        e = tuple(_coerce(v) for v in entries)
        if rows < 0 or cols < 0 or len(e) != rows * cols:
            raise ValueError(f"{len(e)} entries do not fill a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._e = e

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[PolyLike, str]]], cols: Optional[int] = None) -> "PolyMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else (cols or 0)
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(parse(v) if isinstance(v, str) else _coerce(v) for v in row)
        return cls(r, c, flat)

    @classmethod
    def identity(cls, n: int, scale: PolyLike = 1) -> "PolyMatrix":
        s = _coerce(scale)
        return cls(n, n, [s if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def diag(cls, entries: Sequence[PolyLike]) -> "PolyMatrix":
        n = len(entries)
        return cls(n, n, [_coerce(entries[i]) if i == j else ZERO for i in range(n) for j in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> Poly:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._e[i * self.cols + j]

    def row(self, i: int) -> Tuple[Poly, ...]:
        return self._e[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[Poly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def entries(self) -> Tuple[Poly, ...]:
        return self._e

    def __iter__(self) -> Iterator[Poly]:
        return iter(self._e)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"

    def __str__(self) -> str:
        return format_matrix(self)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [fn(e) for e in self._e])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols, [a + b for a, b in zip(self._e, other._e)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols, [a - b for a, b in zip(self._e, other._e)])

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def scale(self, c: PolyLike) -> "PolyMatrix":
        c = _coerce(c)
        return self.map(lambda e: e * c)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        out = []
        for i in range(n):
            ri = self.row(i)
            nz = [(k, a) for k, a in enumerate(ri) if a]
            for j in range(p):
                acc = ZERO
                for k, a in nz:
                    b = other._e[k * p + j]
                    if b:
                        acc = acc + a * b
                out.append(acc)
        return PolyMatrix(n, p, out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def delete(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "PolyMatrix":
        dr, dc = set(rows), set(cols)
        return self.submatrix([i for i in range(self.rows) if i not in dr],
                              [j for j in range(self.cols) if j not in dc])

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "PolyMatrix":
        return self.map(lambda e: substitute(e, bindings))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def det(self) -> Poly:
        return det(self)

    def adjugate(self) -> "PolyMatrix":
        return adjugate(self)


def format_matrix(m: PolyMatrix) -> str:
    """Right-aligned text grid of canonical entries."""
    cells = [[str(e) for e in m.row(i)] for i in range(m.rows)]
    if not cells:
        return f"[{m.rows}x{m.cols} empty]"
    w = max((len(c) for r in cells for c in r), default=1)
    return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)


# -- determinants and adjugates --------------------------------------------

def _require_square(m: PolyMatrix) -> None:
    if m.rows != m.cols:
        raise NotSquare(f"matrix is {m.rows}x{m.cols}")


def triangular_order(m: PolyMatrix) -> Optional[Tuple[List[int], List[int]]]:
    """Row and column orders that make ``m`` lower triangular, if any exist.

    Peels off a row with a single nonzero entry among the remaining columns
    until nothing is left.  Returns ``None`` when the matrix is not a
    permutation of a triangular matrix with nonzero diagonal.
    """
    _require_square(m)
    n = m.rows
    support = [{j for j in range(n) if m[i, j]} for i in range(n)]
    col_rows: Dict[int, set] = {j: set() for j in range(n)}
    for i, s in enumerate(support):
        for j in s:
            col_rows[j].add(i)
    live = [len(s) for s in support]
    ready = [i for i in range(n) if live[i] == 1]
    done_r = [False] * n
    done_c = [False] * n
    rows: List[int] = []
    cols: List[int] = []
    while ready:
        i = ready.pop()
        if done_r[i] or live[i] != 1:
            continue
        j = next(j for j in support[i] if not done_c[j])
        done_r[i] = done_c[j] = True
        rows.append(i)
        cols.append(j)
        for r in col_rows[j]:
            if not done_r[r]:
                live[r] -= 1
                if live[r] == 1:
                    ready.append(r)
    if len(rows) != n:
        return None
    # Row k of the peeled order has no entries right of column k.
    return rows, cols


def _perm_sign(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det(m: PolyMatrix) -> Poly:
    """Determinant.

    Matrices that are row/column permutations of a triangular matrix (all
    matrices built by this package) use the signed diagonal product; other
    inputs go through :func:`det_bareiss`.
    """
    _require_square(m)
    order = triangular_order(m) if m.rows else None
    if order is None:
        return det_bareiss(m)
    rows, cols = order
    acc = ONE
    for i, j in zip(rows, cols):
        acc = acc * m[i, j]
    # sign of the permutation sending row i -> column paired with it
    sigma = [0] * m.rows
    for i, j in zip(rows, cols):
        sigma[i] = j
    return acc if _perm_sign(sigma) > 0 else -acc


def _pivot_row(a: List[List[Poly]], k: int, start: int) -> Optional[int]:
    best, size = None, None
    for r in range(start, len(a)):
        e = a[r][k]
        if e and (size is None or len(e) < size):
            best, size = r, len(e)
    return best


def det_bareiss(m: PolyMatrix) -> Poly:
    """Fraction-free (Bareiss) elimination; every division is exact."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return ONE
    a = m.to_rows()
    sign = 1
    prev = ONE
    for k in range(n - 1):
        p = _pivot_row(a, k, k)
        if p is None:
            return ZERO
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                v = piv * row_i[j]
                if aik and row_k[j]:
                    v = v - aik * row_k[j]
                row_i[j] = exact_div(v, prev) if v else ZERO
            row_i[k] = ZERO
        prev = piv
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det_cofactor(m: PolyMatrix) -> Poly:
    """Laplace expansion along the first row; an independent oracle for small sizes."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return ONE
    rows = m.to_rows()

    def rec(rs: Tuple[int, ...], cs: Tuple[int, ...]) -> Poly:
        if len(rs) == 1:
            return rows[rs[0]][cs[0]]
        acc = ZERO
        r0 = rs[0]
        for idx, c in enumerate(cs):
            e = rows[r0][c]
            if not e:
                continue
            sub = rec(rs[1:], cs[:idx] + cs[idx + 1:])
            acc = acc + e * sub if idx % 2 == 0 else acc - e * sub
        return acc

    return rec(tuple(range(n)), tuple(range(n)))


def adjugate(m: PolyMatrix, method: str = "gauss-jordan") -> PolyMatrix:
    """Classical adjoint, ``m @ adj(m) == det(m) * I``.

    ``method="gauss-jordan"`` runs fraction-free Gauss-Jordan elimination on
    ``[m | I]``; ``method="minors"`` takes signed cofactors one by one and is
    kept as an independent cross-check.  Singular input falls back to minors.
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return m
    if method == "minors":
        return _adjugate_minors(m)
    if method != "gauss-jordan":
        raise ValueError(f"unknown adjugate method {method!r}")
    a = [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m.to_rows())]
    sign = 1
    prev = ONE
    width = 2 * n
    for k in range(n):
        p = _pivot_row(a, k, k)
        if p is None:
            return _adjugate_minors(m)
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        row_k = a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            aik = row_i[k]
            for j in range(width):
                if j == k:
                    continue
                v = piv * row_i[j] if row_i[j] else ZERO
                if aik and row_k[j]:
                    v = v - aik * row_k[j]
                row_i[j] = exact_div(v, prev) if v else ZERO
            row_i[k] = ZERO
        prev = piv
    flat = [e if sign > 0 else -e for row in a for e in row[n:]]
    return PolyMatrix(n, n, flat)


def _adjugate_minors(m: PolyMatrix) -> PolyMatrix:
    n = m.rows
    if n == 1:
        return PolyMatrix(1, 1, [ONE])
    out = [ZERO] * (n * n)
    for i in range(n):
        for j in range(n):
            minor = m.delete(rows=[i], cols=[j])
            c = det_bareiss(minor)
            out[j * n + i] = c if (i + j) % 2 == 0 else -c
    return PolyMatrix(n, n, out)


def minors(m: PolyMatrix, k: int) -> Iterator[Poly]:
    """All k-by-k minors (any shape)."""
    for rs in combinations(range(m.rows), k):
        for cs in combinations(range(m.cols), k):
            yield det_bareiss(m.submatrix(rs, cs))


# common generators
X = Poly.var("x")
Y = Poly.var("y")
L = Poly.var("l")
T = Poly.var("t")
