import sympy
from hypothesis import strategies as st

from t36mf.poly import Monomial, Poly, PolyMatrix

X_, Y_, L_, T_ = sympy.symbols("x y l t")


def to_sympy(p: Poly):
    return sympy.sympify(str(p).replace("^", "**"), locals={"l": L_, "x": X_, "y": Y_, "t": T_})


def monomials(max_exp=3, vars="xyl"):
    def mk(ex):
        d = dict(zip(vars, ex))
        return Monomial(d.get("x", 0), d.get("y", 0), d.get("l", 0), d.get("t", 0))
    return st.tuples(*[st.integers(0, max_exp)] * len(vars)).map(mk)


@st.composite
def polys(draw, max_terms=4, max_exp=3, vars="xyl", coeff=5):
    terms = draw(st.lists(st.tuples(monomials(max_exp, vars), st.integers(-coeff, coeff)),
                          max_size=max_terms))
    acc = {}
    for m, c in terms:
        acc[m.key] = acc.get(m.key, 0) + c
    return Poly(acc)


@st.composite
def sparse_matrices(draw, n, density=0.5, **kw):
    entries = []
    for _ in range(n * n):
        entries.append(draw(polys(**kw)) if draw(st.floats(0, 1)) < density else Poly())
    return PolyMatrix(n, n, entries)


def random_blocks(rng, k, max_total=12):
    """Random block multiset of total size at most ``max_total``."""
    from t36mf.pencil import PencilBlock

    out, total = [], 0
    while True:
        kind = rng.choice(["A", "B", "C", "D", "Regular"])
        n = rng.randint(1, 3)
        if total + n + 1 > max_total:
            break
        alpha = k(rng.randrange(1, 101)) if kind == "Regular" else None
        out.append(PencilBlock(kind, n, alpha))
        total += n + (kind in ("C", "D"))
        if rng.random() < 0.2:
            break
    return out


def random_unimodular(n, rng, steps=6):
    """Product of elementary matrices I + c*E_ij with c in Q[x, y]."""
    from t36mf.poly import PolyMatrix, parse

    pool = ["1", "-1", "2", "x", "y", "x - y", "y^2", "-x*y", "1/2*x"]
    U = PolyMatrix.identity(n)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        rows = [[parse("0")] * n for _ in range(n)]
        for k in range(n):
            rows[k][k] = parse("1")
        rows[i][j] = parse(rng.choice(pool))
        U = PolyMatrix.from_rows(rows) @ U
    return U


# -- acceptance summary -------------------------------------------------------------

_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num = int(name.split("_")[2])
        title = " ".join(name.split("_")[3:]).split("[")[0]
        ok = report.outcome == "passed"
        prev = _CRITERIA.get(num, (title, True))
        _CRITERIA[num] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
