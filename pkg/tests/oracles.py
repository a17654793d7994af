"""Independent oracles built on sympy, sharing no code with the package."""

import itertools

import sympy


def traceless(m):
    out = []
    for i in range(1, m + 1):
        a, b, c = sympy.symbols(f"a{i} b{i} c{i}")
        out.append(sympy.Matrix([[a, b], [c, -a]]))
    return out


def lie(a, b):
    return a * b - b * a


def left_normed(idx, z):
    acc = z[idx[0] - 1]
    for i in idx[1:]:
        acc = lie(acc, z[i - 1])
    return acc


def rank_of(elements):
    """Rank of sympy matrices / expressions as vectors of coefficients."""
    elements = [sympy.Matrix([e]) if not isinstance(e, sympy.MatrixBase) else e for e in elements]
    gens = sorted(set().union(*(e.free_symbols for e in elements)), key=str)
    cols, rows = {}, []
    for e in elements:
        row = {}
        for pos, entry in enumerate(e):
            entry = sympy.expand(entry)
            if entry == 0:
                continue
            for mono, coeff in sympy.Poly(entry, *gens).terms():
                key = (mono, pos)
                cols.setdefault(key, len(cols))
                row[cols[key]] = coeff
        rows.append(row)
    if not cols:
        return 0
    mat = sympy.zeros(len(rows), len(cols))
    for i, row in enumerate(rows):
        for j, c in row.items():
            mat[i, j] = c
    return mat.rank()


def lyndon_brute_force(m, n):
    """Words strictly smaller than every proper rotation."""
    out = []
    for w in itertools.product(range(1, m + 1), repeat=n):
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            out.append(w)
    return out
