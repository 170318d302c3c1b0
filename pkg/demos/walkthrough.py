"""Follow one module from its canonical P-matrix to a checked factorization.

Run with ``python3 demos/walkthrough.py [word]`` (default ``a:2``).
"""

import sys

from t36mf.canon import build_P, to_text
from t36mf.curve import factored, make_curve
from t36mf.factor import build_Q, complement
from t36mf.present import minimal_presentation, relations_from_P
from t36mf.verify import branch_invariants, equivalent_up_to_signed_permutation, is_mf
from t36mf.words import parse_word, word_text


def main(text: str = "a:2") -> None:
    curve = make_curve()
    w = parse_word(text)
    print(f"word {w.cli()}: {word_text(w)}\n")

    P = build_P(w.untruncated)
    print("canonical matrix P")
    print(to_text(P), "\n")

    pres = relations_from_P(P, curve)
    print(f"{len(pres.generators)} generators, {pres.relations.rows} relations before elimination")
    mp = minimal_presentation(P, curve)
    print(f"{len(mp.labels)} generators left after removing unit entries\n")

    q = build_Q(w, curve)
    print("direct builder Q (factored entries)")
    for i in range(q.size):
        print("  " + "  ".join(factored(e, curve).rjust(8) for e in q.Q.row(i)))
    if not w.cuts:
        same = equivalent_up_to_signed_permutation(mp.Q, q.Q)
        print(f"\npipeline matrix equals Q up to permutation and sign: {same}")

    psi = complement(q, curve)
    rep = is_mf(q.Q, curve)
    print(f"\npsi diagonal: {[factored(psi[i, i], curve) for i in range(psi.rows)]}")
    print(f"ok={rep.ok} minimal={rep.minimal} det ~ x^{rep.det_exponents[0]} z^{rep.det_exponents[1]} "
          f"z'^{rep.det_exponents[2]}")
    inv = branch_invariants(q.Q, curve)
    print(f"branch valuations at lambda={inv.lam}: {inv.as_json()}")


if __name__ == "__main__":
    main(*sys.argv[1:2])
