"""Independent oracles shared by the test modules.

Everything here is deliberately naive: plain permutation arithmetic and
brute-force closures, with no reliance on the library's internal
representations, so the two sides of each assertion fail independently.
"""

from collections import deque


# ---------------------------------------------------------- one-line oracle

def compose_lines(a, b):
    """Product a*b of one-line permutations, b acting first."""
    return tuple(a[x - 1] for x in b)


def invert_line(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x - 1] = i + 1
    return tuple(out)


def inversions(line):
    return sum(1 for i in range(len(line)) for j in range(i + 1, len(line))
               if line[i] > line[j])


# ------------------------------------------------- signed permutation oracle

def signed_closure(gens):
    """BFS closure of signed permutations; returns {element: word length}.

    A signed permutation on n letters is a tuple p with p[i] = +-j meaning
    the i-th basis vector maps to +-(j-th); composition applies the right
    factor first.
    """
    n = len(gens[0])
    ident = tuple(range(1, n + 1))

    def comp(a, b):
        return tuple(a[x - 1] if x > 0 else -a[-x - 1] for x in b)

    depth = {ident: 0}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = comp(p, g)
            if q not in depth:
                depth[q] = depth[p] + 1
                queue.append(q)
    return depth


def b3_signed_oracle():
    """Type B3 as signed permutations of 3 letters, bond 4 on the first pair."""
    flip1 = (-1, 2, 3)
    swap12 = (2, 1, 3)
    swap23 = (1, 3, 2)
    return signed_closure([flip1, swap12, swap23])


# ------------------------------------------------------ Bruhat subword oracle

def bruhat_leq_subword(system, u, w):
    """u <= w iff u has a reduced expression inside a fixed word for w."""
    word = system.reduced_word(w)
    below = {0}
    for i in word:
        s = system.gens[i]
        grown = set()
        for v in below:
            vs = system.mult(v, s)
            if system.length(vs) > system.length(v):
                grown.add(vs)
        below |= grown
    return u in below


def all_reduced_words(system, w):
    """Every reduced word of w, by recursive left-descent peeling."""
    if w == 0:
        return [()]
    out = []
    for i in system.left_descents(w):
        rest = system.mult(system.gens[i], w)
        out.extend((i,) + tail for tail in all_reduced_words(system, rest))
    return out
