"""Generate crates/core/data/niemeier_glue.json from the classical glue codes.

Glue words are written per component in the usual bracket notation ([i] for A_n
classes, [1]=s [2]=v [3]=c for D_n, [1],[2] for E6, [1] for E7) and translated
into dual-basis vectors in the concatenated simple-root coordinates used by the
Rust crate. The loader re-verifies everything; this script only checks evenness
and code order as a sanity pass.
"""
import itertools
import json
import sys
from fractions import Fraction

import sympy


def cartan(fam, n):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    edges = []
    if fam == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif fam == "D":
        edges = [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    elif fam == "E":
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    for a, b in edges:
        g[a][b] = g[b][a] = 1
    return g


def class_node(fam, n, cls):
    """Node whose dual vector represents the bracket class `cls`."""
    if fam == "A":
        return cls - 1
    if fam == "D":
        return {1: n - 2, 2: 0, 3: n - 1}[cls]
    if fam == "E" and n == 6:
        return {1: 0, 2: 4}[cls]
    if fam == "E" and n == 7:
        return {1: 5}[cls]
    raise ValueError((fam, n, cls))


def parse(t):
    return t[0], int(t[1:])


def cyc(word, start):
    """All cyclic shifts of word[start:], keeping word[:start] fixed."""
    head, tail = word[:start], word[start:]
    return [head + tail[k:] + tail[:k] for k in range(len(tail))]


def even_perms(word):
    out = []
    for p in itertools.permutations(range(len(word))):
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        if inv % 2 == 0:
            out.append([word[k] for k in p])
    return out


def hexacode():
    # words are closed under the simultaneous rotation 1 -> 2 -> 3 (GF(4)-scaling)
    rot = {0: 0, 1: 2, 2: 3, 3: 1}
    words = [[1] * 6] + cyc([0, 0, 2, 3, 3, 2], 1)
    return words + [[rot[x] for x in w] for w in words]


def golay():
    # extended binary quadratic-residue code of length 24
    q = {(x * x) % 23 for x in range(1, 23)}
    base = [1 if i in q else 0 for i in range(23)]
    rows = []
    for s in range(23):
        w = [base[(i - s) % 23] for i in range(23)]
        rows.append(w + [sum(w) % 2])
    rows.append([1] * 24)
    # row-reduce over GF(2) to a basis
    basis = []
    for r in rows:
        r = r[:]
        for b in basis:
            p = b.index(1)
            if r[p]:
                r = [(x + y) % 2 for x, y in zip(r, b)]
        if any(r):
            basis.append(r)
    assert len(basis) == 12, len(basis)
    return basis


TABLE = [
    ("D24", [[1]]),
    ("D16 E8", [[1, 0]]),
    ("E8 E8 E8", []),
    ("A24", [[5]]),
    ("D12 D12", [[1, 2], [2, 1]]),
    ("A17 E7", [[3, 1]]),
    ("D10 E7 E7", [[1, 1, 0], [3, 0, 1]]),
    ("A15 D9", [[2, 1]]),
    ("D8 D8 D8", cyc([1, 2, 2], 0)),
    ("A12 A12", [[1, 5]]),
    ("A11 D7 E6", [[1, 1, 1]]),
    ("E6 E6 E6 E6", cyc([1, 0, 1, 2], 1)),
    ("A9 A9 D6", [[2, 4, 0], [5, 0, 1], [0, 5, 3]]),
    ("D6 D6 D6 D6", even_perms([0, 1, 2, 3])),
    ("A8 A8 A8", cyc([1, 1, 4], 0)),
    ("A7 A7 D5 D5", [[1, 1, 1, 2], [1, 7, 2, 1]]),
    ("A6 A6 A6 A6", cyc([1, 2, 1, 6], 1)),
    ("A5 A5 A5 A5 D4", [[2, 0, 2, 4, 0], [2, 4, 0, 2, 0], [2, 2, 4, 0, 0], [3, 3, 0, 0, 1], [3, 0, 3, 0, 2], [3, 0, 0, 3, 3]]),
    ("D4 D4 D4 D4 D4 D4", hexacode()),
    ("A4 A4 A4 A4 A4 A4", cyc([1, 0, 1, 4, 4, 1], 1)),
    ("A3 A3 A3 A3 A3 A3 A3 A3", cyc([3, 2, 0, 0, 1, 0, 1, 1], 1)),
    ("A2 " * 12, cyc([2, 1, 1, 2, 1, 1, 1, 2, 2, 2, 1, 2], 1)),
    ("A1 " * 24, golay()),
]

FAM_ORDER = {"A": 0, "D": 1, "E": 2}


def frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def build(label_types, words):
    types = [parse(t) for t in label_types.split()]
    order = sorted(range(len(types)), key=lambda i: (FAM_ORDER[types[i][0]], types[i][1]), reverse=True)
    types_sorted = [types[i] for i in order]
    invs = []
    for fam, n in types_sorted:
        invs.append(sympy.Matrix(cartan(fam, n)).inv())
    glue = []
    for w in words:
        w = [w[i] for i in order]
        vec = []
        for (fam, n), inv, cls in zip(types_sorted, invs, w):
            if cls == 0:
                vec += [Fraction(0)] * n
            else:
                j = class_node(fam, n, cls)
                vec += [Fraction(int(inv[k, j].p), int(inv[k, j].q)) for k in range(n)]
        glue.append(vec)
    return types_sorted, glue


def check(types, glue):
    blocks = [sympy.Matrix(cartan(f, n)) for f, n in types]
    g = sympy.diag(*blocks)
    dim = g.shape[0]
    assert dim == 24
    gl = [sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in v]) for v in glue]
    for a in gl:
        assert (a.T * g * a)[0] % 2 == 0, "odd glue"
        for b in gl:
            assert (a.T * g * b)[0].q == 1, "non-integral pairing"
    # size of generated code in (Q/Z)^24
    def red(v):
        return tuple(Fraction(x) % 1 for x in v)
    seen = {red([0] * 24)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for e in frontier:
            for v in glue:
                s = red([a + b for a, b in zip(e, v)])
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    det = abs(g.det())
    assert len(seen) ** 2 == det, (len(seen), det)
    return len(seen)


def main():
    out = {"format": "niemeier-glue", "version": 1, "lattices": []}
    for label, words in TABLE:
        types, glue = build(label, words)
        order = check(types, glue)
        comps = [f"{f}{n}" for f, n in types]
        out["lattices"].append({
            "components": comps,
            "glue": [[frac_str(x) for x in v] for v in glue],
        })
        print(" ".join(comps), "code order", order, file=sys.stderr)
    json.dump(out, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
