"""Hide a block structure behind random changes of basis and recover it."""

import random

from t36mf.pencil import GF, PencilBlock, blocks_pencil, conjugate, decompose, random_invertible
from t36mf.words import blocks_to_words

K = GF(101)
rng = random.Random(1)

blocks = [PencilBlock("A", 2), PencilBlock("C", 1), PencilBlock("D", 2), PencilBlock("Regular", 1, K(7))]
p = blocks_pencil(blocks, K)
q = conjugate(p, random_invertible(K, p.rows, rng), random_invertible(K, p.cols, rng))
print(f"{q.rows}x{q.cols} pencil over {K.name}")
for r1, r2 in zip(q.X1, q.X2):
    print("  " + " ".join(f"{a:>3}" for a in r1) + "   |" + " ".join(f"{b:>3}" for b in r2))
found = decompose(q)
print("blocks:", ", ".join(map(str, found)))
print("words for the non-regular part:", [w.cli() for w in blocks_to_words([b for b in found if b.kind != "Regular"])])
