"""Independent brute-force oracles. Nothing here uses the package's group algorithms."""
from __future__ import annotations

from collections import deque


def closure(gens, degree):
    """All products of the generators, as tuples, by breadth-first search."""
    ident = tuple(range(degree))
    gens = [tuple(int(x) for x in g) for g in gens]
    seen = {ident}
    todo = deque([ident])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = tuple(g[x[i]] for i in range(degree))
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def compose(a, b):
    """a then b."""
    return tuple(b[a[i]] for i in range(len(a)))


def sympy_order(pres, max_cosets=4096):
    """Order of the presented group via sympy's bounded coset enumeration; None past the cap."""
    from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r
    from sympy.combinatorics.free_groups import free_group

    F, *gens = free_group(" ".join(f"s{i}" for i in range(1, pres.ngens + 1)))
    rels = []
    for w in pres.relators():
        x = F.identity
        for letter in w.letters:
            g = gens[abs(letter) - 1]
            x = x * (g if letter > 0 else g ** -1)
        rels.append(x)
    try:
        C = coset_enumeration_r(FpGroup(F, rels), [], max_cosets=max_cosets)
    except ValueError:
        return None
    C.compress()
    return len(C.table)


def tight_multiplication(p, q, F, G):
    """Regular action of a tight {p,q} group on pairs (a, b) meaning s1^a s2^b, from the table s2^b s1 = s1^F(b) s2^G(b)."""
    def idx(a, b):
        return (a % p) * q + (b % q)
    s1 = [0] * (p * q)
    s2 = [0] * (p * q)
    for a in range(p):
        for b in range(q):
            s2[idx(a, b)] = idx(a, b + 1)
            s1[idx(a, b)] = idx(a + F[b], G[b])
    return s1, s2


def _sympy_regular_action(pres, max_cosets):
    from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r
    from sympy.combinatorics.free_groups import free_group

    F, *gens = free_group(" ".join(f"s{i}" for i in range(1, pres.ngens + 1)))
    rels = []
    for w in pres.relators():
        x = F.identity
        for letter in w.letters:
            g = gens[abs(letter) - 1]
            x = x * (g if letter > 0 else g ** -1)
        rels.append(x)
    try:
        C = coset_enumeration_r(FpGroup(F, rels), [], max_cosets=max_cosets)
    except ValueError:
        return None
    C.compress()
    C.standardize()
    # columns alternate generator, inverse
    return [tuple(row[2 * i] for row in C.table) for i in range(pres.ngens)]


def power(a, e):
    n = len(a)
    out = tuple(range(n))
    inv = [0] * n
    for i, x in enumerate(a):
        inv[x] = i
    base = a if e >= 0 else tuple(inv)
    for _ in range(abs(e)):
        out = compose(out, base)
    return out


def evaluate_word(letters, gens):
    n = len(gens[0])
    out = tuple(range(n))
    for x in letters:
        out = compose(out, power(gens[abs(x) - 1], 1 if x > 0 else -1))
    return out


def census_oracle(p, q, max_cosets=4096):
    """{(x1,y1,x2,y2): "regular"|"chiral"} for tight polyhedra of type {p,q}, by trying every tuple."""
    from itertools import product

    from rotary_forge.census import census_presentation

    out = {}
    for t in product(range(p), range(q), range(p), range(q)):
        pres = census_presentation(p, q, t)
        act = _sympy_regular_action(pres, max_cosets)
        if act is None or len(act[0]) != p * q:
            continue
        s1, s2 = act
        ident = tuple(range(p * q))
        nf = {}
        for a in range(p):
            for b in range(q):
                nf.setdefault(compose(power(s1, a), power(s2, b)), (a, b))
        if len(nf) != p * q:
            continue
        # exact generator orders
        if any(power(s1, d) == ident for d in range(1, p)) or any(power(s2, d) == ident for d in range(1, q)):
            continue
        x1, y1 = nf[compose(s2, power(s1, -1))]
        x2, y2 = nf[compose(power(s2, -1), s1)]
        if (x1, y1, x2, y2) != t:
            continue
        enant = (power(s1, -1), compose(compose(s1, s1), s2))
        regular = all(evaluate_word(w.letters, enant) == ident for w in pres.relators())
        out[t] = "regular" if regular else "chiral"
    return out
