"""Finite Coxeter systems with exact root arithmetic.

A system is built from its Coxeter matrix.  Construction runs two breadth
first searches:

  1. over the positive roots of the geometric representation, with exact
     coordinates in Q(2cos(pi/N)) (see numberfield), N the lcm of the bond
     labels;
  2. over the group elements, each stored as the signed permutation it
     induces on the positive roots.

Group elements are integer ids into the BFS-ordered element table
(identity first, weakly increasing length).  The signed permutation of
``w`` maps root index r to s when w(beta_r) = beta_s, and to ~s (bitwise
complement) when w(beta_r) = -beta_s.  Length is the number of
complemented images, a right descent at i is a complemented image of the
i-th simple root, and the reflection attached to each positive root is
read off during the root BFS.  Everything downstream (Bruhat order,
parabolic quotients, the cell posets) works with these ids.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .numberfield import RealCyclotomicField

CACHE_VERSION = 1
DEFAULT_ORDER_BOUND = 3_628_800  # 10!


class MalformedMatrixError(ValueError):
    """Coxeter matrix fails the symmetry/diagonal/label constraints."""


class NonFiniteTypeError(RuntimeError):
    """The matrix does not define a finite group within the configured bounds."""


class SystemMismatchError(ValueError):
    """An element id does not belong to this system's table."""


class NotReducedError(ValueError):
    pass


class NotShorteningError(ValueError):
    pass


def coxeter_matrix(name: str) -> list[list[int]]:
    """Coxeter matrix for a standard type name: A3, B3, D4, E6, F4, G2, H3, I2(7)."""
    m = re.fullmatch(r"([A-H])(\d+)|I2\((\d+)\)", name.strip())
    if not m:
        raise MalformedMatrixError(f"unrecognized type name: {name!r}")
    if m.group(3) is not None:
        k = int(m.group(3))
        if k < 2:
            raise MalformedMatrixError("I2(m) needs m >= 2")
        return [[1, k], [k, 1]]
    letter, rank = m.group(1), int(m.group(2))
    lo = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2, "H": 3}
    hi = {"E": 8, "F": 4, "G": 2, "H": 4}
    if rank < lo[letter] or rank > hi.get(letter, 10**9):
        raise MalformedMatrixError(f"no type {name}")
    mat = [[2] * rank for _ in range(rank)]
    for i in range(rank):
        mat[i][i] = 1

    def bond(i, j, v=3):
        mat[i][j] = mat[j][i] = v

    if letter in ("A", "B", "C", "D", "H"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if letter in ("B", "C"):
            bond(0, 1, 4)
        if letter == "H":
            bond(0, 1, 5)
        if letter == "D" and rank >= 3:
            mat[rank - 2][rank - 1] = mat[rank - 1][rank - 2] = 2
            bond(rank - 3, rank - 1)
    elif letter == "E":
        # chain 0-2-3-4-... with node 1 hanging off node 3
        chain = [0] + list(range(2, rank))
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(1, 3)
    elif letter == "F":
        bond(0, 1)
        bond(1, 2, 4)
        bond(2, 3)
    elif letter == "G":
        bond(0, 1, 6)
    return mat


def _validate_matrix(matrix) -> list[list[int]]:
    mat = [list(row) for row in matrix]
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise MalformedMatrixError("matrix must be square and nonempty")
    for i in range(n):
        if mat[i][i] != 1:
            raise MalformedMatrixError(f"m({i},{i}) must be 1")
        for j in range(n):
            v = mat[i][j]
            if not isinstance(v, int):
                raise MalformedMatrixError("entries must be integers")
            if i != j and (v < 2 or v != mat[j][i]):
                raise MalformedMatrixError(
                    f"m({i},{j}) must equal m({j},{i}) and be >= 2"
                )
    return mat


@dataclass(frozen=True)
class ParabolicSubset:
    """A standard parabolic subgroup W_J with its coset representative tables."""

    J: frozenset
    elements: tuple      # ids of W_J, BFS order
    u0: int              # longest element of W_J
    min_reps: tuple      # W^J, ids with no right descent in J, length order
    max_reps: tuple      # W^J_max = { w' * u0 : w' in W^J }, same order
    member: frozenset = field(repr=False)
    min_set: frozenset = field(repr=False)
    max_set: frozenset = field(repr=False)


class CoxeterSystem:
    """A finite Coxeter group with cached root and element tables."""

    def __init__(self, matrix, order_bound: int = DEFAULT_ORDER_BOUND,
                 cache_dir: str | None = None):
        self.matrix = _validate_matrix(matrix)
        self.rank = len(self.matrix)
        self.order_bound = order_bound
        labels = [self.matrix[i][j] for i in range(self.rank)
                  for j in range(i + 1, self.rank)]
        self.field = RealCyclotomicField(math.lcm(*labels) if labels else 1)
        self._build_roots()
        if cache_dir is None:
            cache_dir = os.environ.get("TNN_CACHE_DIR", "./.tnn-cache")
        self._cache_dir = cache_dir
        if not self._load_cached_elements():
            self._build_elements()
            self._save_cached_elements()
        if self.order > self.order_bound:
            # a cached table must not sneak past the bound either
            raise NonFiniteTypeError(
                f"group order {self.order} exceeds bound {self.order_bound}"
                " (raise order_bound if the type is known finite)")
        self._build_reflections()
        self.w0 = self.order - 1  # BFS order is weakly increasing in length
        assert int(self.lengths[self.w0]) == self.nroots, "l(w0) must equal |T|"
        self._parabolic_cache: dict[frozenset, ParabolicSubset] = {}
        self._covers_down: list[tuple] | None = None
        self._leq: np.ndarray | None = None

    # ---------------------------------------------------------------- roots

    def _root_cap(self) -> int:
        # Upper bound for the positive-root count of any finite type of this
        # rank and bond size (worst per-rank ratios: E8/H4 give 15, I2(m)
        # gives m/2); exceeding it proves the type is not finite.
        max_m = max((self.matrix[i][j] for i in range(self.rank)
                     for j in range(i + 1, self.rank)), default=2)
        return max(self.rank * self.rank,
                   self.rank * max(15, (max_m + 1) // 2))

    def _build_roots(self):
        F = self.field
        n = self.rank
        cap = self._root_cap()
        coeff = [[None if i == j or self.matrix[i][j] == 2
                  else F.two_cos(self.matrix[i][j]) for j in range(n)]
                 for i in range(n)]

        def apply_simple(i, vec):
            acc = F.neg(vec[i])
            for j in range(n):
                c = coeff[i][j]
                if c is not None:
                    acc = F.add(acc, F.mul(c, vec[j]))
            return vec[:i] + (acc,) + vec[i + 1:]

        simple = []
        for i in range(n):
            v = [F.zero] * n
            v[i] = F.one
            simple.append(tuple(v))
        roots = list(simple)
        index = {v: r for r, v in enumerate(simple)}
        parent = [(-1, -1)] * n  # (root it came from, generator applied)
        queue = deque(range(n))
        while queue:
            r = queue.popleft()
            vec = roots[r]
            for i in range(n):
                if vec == simple[i]:
                    continue  # s_i negates its own root
                new = apply_simple(i, vec)
                if new not in index:
                    if len(roots) >= cap:
                        raise NonFiniteTypeError(
                            f"positive roots exceed {cap}: not a finite type")
                    index[new] = len(roots)
                    roots.append(new)
                    parent.append((r, i))
                    queue.append(len(roots) - 1)
        self.roots = tuple(roots)
        self.nroots = len(roots)
        self._root_index = index
        self._root_parent = parent
        # signed permutation of each generator on the positive roots
        sigma = []
        for i in range(n):
            row = []
            for r, vec in enumerate(roots):
                row.append(~r if r == i else index[apply_simple(i, vec)])
            sigma.append(tuple(row))
        self._sigma = sigma

    # ------------------------------------------------------------- elements

    @staticmethod
    def _compose(a, b):
        # apply b first, then a
        return tuple(a[e] if e >= 0 else ~a[~e] for e in b)

    @staticmethod
    def _invert_perm(a):
        out = [0] * len(a)
        for r, e in enumerate(a):
            if e >= 0:
                out[e] = r
            else:
                out[~e] = ~r
        return tuple(out)

    def _build_elements(self):
        ident = tuple(range(self.nroots))
        perms = [ident]
        index = {ident: 0}
        rmult_rows = []
        queue = deque([0])
        while queue:
            e = queue.popleft()
            row = []
            for i in range(self.rank):
                new = self._compose(perms[e], self._sigma[i])
                t = index.get(new)
                if t is None:
                    if len(perms) > self.order_bound:
                        raise NonFiniteTypeError(
                            f"group order exceeds bound {self.order_bound}"
                            " (raise order_bound if the type is known finite)")
                    t = len(perms)
                    index[new] = t
                    perms.append(new)
                    queue.append(t)
                row.append(t)
            rmult_rows.append(row)
        self._perms = perms
        self._index = index
        self.order = len(perms)
        self.lengths = np.array([sum(1 for e in p if e < 0) for p in perms],
                                dtype=np.int32)
        self.rmult = np.array(rmult_rows, dtype=np.int32)
        self.inv = np.array([index[self._invert_perm(p)] for p in perms],
                            dtype=np.int32)
        self.gens = tuple(int(self.rmult[0][i]) for i in range(self.rank))

    def _build_reflections(self):
        refl = [-1] * self.nroots
        for r in range(self.nroots):
            if r < self.rank:
                refl[r] = self.gens[r]
            else:
                p, i = self._root_parent[r]
                s = self.gens[i]
                refl[r] = self.mult(self.mult(s, refl[p]), s)
        self.reflections = tuple(refl)  # root index -> element id
        self._root_of_refl = {t: r for r, t in enumerate(refl)}
        assert len(self._root_of_refl) == self.nroots

    # ---------------------------------------------------------------- cache

    def _cache_path(self, kind):
        blob = json.dumps(self.matrix).encode()
        key = hashlib.sha256(blob + f"|v{CACHE_VERSION}".encode()).hexdigest()[:16]
        return os.path.join(self._cache_dir, f"cox-{key}-{kind}.npz")

    def _load_cached_elements(self) -> bool:
        path = self._cache_path("elems")
        if not os.path.exists(path):
            return False
        try:
            z = np.load(path)
            if json.loads(str(z["matrix"])) != self.matrix:
                return False
            perms = [tuple(int(x) for x in row) for row in z["perms"]]
        except Exception:
            return False
        # sanity: the first rank+1 rows must match a fresh BFS start
        ident = tuple(range(self.nroots))
        if not perms or perms[0] != ident:
            return False
        self._perms = perms
        self._index = {p: e for e, p in enumerate(perms)}
        self.order = len(perms)
        self.lengths = z["lengths"].astype(np.int32)
        self.rmult = z["rmult"].astype(np.int32)
        self.inv = z["inv"].astype(np.int32)
        self.gens = tuple(int(self.rmult[0][i]) for i in range(self.rank))
        for i in range(self.rank):
            if perms[self.gens[i]] != self._sigma[i]:
                return False
        return True

    def _save_cached_elements(self):
        try:
            os.makedirs(self._cache_dir, exist_ok=True)
            np.savez_compressed(
                self._cache_path("elems"),
                matrix=json.dumps(self.matrix),
                perms=np.array(self._perms, dtype=np.int32),
                lengths=self.lengths, rmult=self.rmult, inv=self.inv)
        except OSError:
            pass  # cache is best-effort

    # ------------------------------------------------------ group operations

    def _check(self, w: int) -> int:
        if not 0 <= w < self.order:
            raise SystemMismatchError(f"element id {w} not in this system")
        return w

    def mult(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        return self._index[self._compose(self._perms[a], self._perms[b])]

    def multiply(self, a: int, b: int) -> int:
        """Group product a*b (b acts first under the one-line convention)."""
        return self.mult(a, b)

    def inverse(self, a: int) -> int:
        return int(self.inv[self._check(a)])

    def length(self, a: int) -> int:
        return int(self.lengths[self._check(a)])

    def right_descents(self, w: int) -> tuple:
        p = self._perms[self._check(w)]
        return tuple(i for i in range(self.rank) if p[i] < 0)

    def left_descents(self, w: int) -> tuple:
        return self.right_descents(int(self.inv[self._check(w)]))

    def element_by_word(self, word) -> int:
        w = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise SystemMismatchError(f"generator index {i} out of range")
            w = int(self.rmult[w][i])
        return w

    def reduced_word(self, w: int) -> tuple:
        """Lexicographically smallest reduced word (greedy left-descent strip)."""
        w = self._check(w)
        word = []
        while w != 0:
            i = self.left_descents(w)[0]
            word.append(i)
            w = self.mult(self.gens[i], w)
        return tuple(word)

    def root_image(self, w: int, r: int) -> int:
        """Signed image of root r under w: index s, or ~s for the negative."""
        return self._perms[self._check(w)][r]

    def is_reflection(self, w: int) -> bool:
        return self._check(w) in self._root_of_refl

    def root_of_reflection(self, t: int) -> int:
        return self._root_of_refl[self._check(t)]

    def strong_exchange(self, word, t: int) -> int:
        """Index i (0-based) with word-minus-letter-i a word for w*t.

        Requires word reduced and l(w*t) < l(w); the index is then unique.
        """
        word = list(word)
        w = self.element_by_word(word)
        if self.length(w) != len(word):
            raise NotReducedError("word is not reduced")
        if not self.is_reflection(t):
            raise ValueError("t is not a reflection")
        wt = self.mult(w, t)
        if self.length(wt) >= self.length(w):
            raise NotShorteningError("l(wt) >= l(w)")
        hits = [i for i in range(len(word))
                if self.element_by_word(word[:i] + word[i + 1:]) == wt]
        assert len(hits) == 1, "strong exchange index must be unique"
        return hits[0]

    # ----------------------------------------------------------- Bruhat order

    def bruhat_covers(self, w: int) -> tuple:
        """Elements covered by w: all wt, t in T, with length drop exactly 1."""
        self._check(w)
        if self._covers_down is None:
            self._compute_covers()
        return self._covers_down[w]

    def _compute_covers(self):
        lw = self.lengths
        covers = []
        for w in range(self.order):
            down = []
            target = lw[w] - 1
            for t in self.reflections:
                v = self.mult(w, t)
                if lw[v] == target:
                    down.append(v)
            covers.append(tuple(sorted(down)))
        self._covers_down = covers

    def bruhat_leq(self, u: int, w: int) -> bool:
        self._check(u), self._check(w)
        return bool(self.leq_matrix()[w, u])

    def leq_matrix(self) -> np.ndarray:
        """Boolean matrix M with M[w, u] true iff u <= w in Bruhat order."""
        if self._leq is not None:
            return self._leq
        path = self._cache_path("leq")
        if os.path.exists(path):
            try:
                z = np.load(path)
                m = np.unpackbits(z["bits"], count=self.order * self.order)
                self._leq = m.reshape(self.order, self.order).astype(bool)
                return self._leq
            except Exception:
                pass
        if self._covers_down is None:
            self._compute_covers()
        m = np.zeros((self.order, self.order), dtype=bool)
        # elements are in length order, so covered rows are already final
        for w in range(self.order):
            m[w, w] = True
            for v in self._covers_down[w]:
                m[w] |= m[v]
        self._leq = m
        try:
            os.makedirs(self._cache_dir, exist_ok=True)
            np.savez_compressed(path, bits=np.packbits(m))
        except OSError:
            pass
        return m

    # ------------------------------------------------------ parabolic cosets

    def parabolic(self, J) -> ParabolicSubset:
        J = frozenset(J)
        for j in J:
            if not 0 <= j < self.rank:
                raise SystemMismatchError(f"generator index {j} out of range")
        if J in self._parabolic_cache:
            return self._parabolic_cache[J]
        # BFS inside W_J
        seen = {0}
        order = [0]
        queue = deque([0])
        while queue:
            e = queue.popleft()
            for j in sorted(J):
                t = int(self.rmult[e][j])
                if t not in seen:
                    seen.add(t)
                    order.append(t)
                    queue.append(t)
        u0 = max(order, key=lambda e: int(self.lengths[e]))
        min_reps = tuple(w for w in range(self.order)
                         if not any(self._perms[w][j] < 0 for j in J))
        max_reps = tuple(self.mult(w, u0) for w in min_reps)
        sub = ParabolicSubset(
            J=J, elements=tuple(sorted(order, key=lambda e: (int(self.lengths[e]), e))),
            u0=u0, min_reps=min_reps, max_reps=max_reps,
            member=frozenset(seen), min_set=frozenset(min_reps),
            max_set=frozenset(max_reps))
        self._parabolic_cache[J] = sub
        return sub

    def parabolic_factor(self, w: int, J) -> tuple:
        """Unique (w', u) with w = w'u, w' in W^J, u in W_J, lengths adding."""
        sub = J if isinstance(J, ParabolicSubset) else self.parabolic(J)
        w = self._check(w)
        u = 0
        J_sorted = sorted(sub.J)
        while True:
            p = self._perms[w]
            for j in J_sorted:
                if p[j] < 0:
                    w = int(self.rmult[w][j])
                    u = self.mult(self.gens[j], u)
                    break
            else:
                return w, u

    def min_coset_reps(self, J) -> tuple:
        return self.parabolic(J).min_reps

    def max_coset_reps(self, J) -> tuple:
        return self.parabolic(J).max_reps

    def projection_WJ(self, w: int, J) -> int:
        return self.parabolic_factor(w, J)[0]

    # ------------------------------------------------------- type A niceties

    def is_type_a(self) -> bool:
        n = self.rank
        return all(self.matrix[i][j] == (3 if abs(i - j) == 1 else (1 if i == j else 2))
                   for i in range(n) for j in range(n))

    def one_line(self, w: int) -> tuple:
        """One-line notation (type A only): w as a permutation of 1..rank+1."""
        assert self.is_type_a(), "one-line notation needs type A"
        line = list(range(1, self.rank + 2))
        for i in self.reduced_word(w):
            line[i], line[i + 1] = line[i + 1], line[i]
        return tuple(line)

    def from_one_line(self, line) -> int:
        assert self.is_type_a(), "one-line notation needs type A"
        line = list(line)
        assert sorted(line) == list(range(1, self.rank + 2)), "not a permutation"
        letters = []
        changed = True
        while changed:
            changed = False
            for i in range(len(line) - 1):
                if line[i] > line[i + 1]:
                    line[i], line[i + 1] = line[i + 1], line[i]
                    letters.append(i)
                    changed = True
                    break
        return self.element_by_word(reversed(letters))

    def refl_str(self, t: int) -> str:
        """Reflection as a transposition "(i j)" in type A, else root coordinates."""
        if self.is_type_a():
            line = self.one_line(t)
            moved = [p + 1 for p, v in enumerate(line) if v != p + 1]
            return f"({moved[0]} {moved[-1]})" if moved else "e"
        vec = self.roots[self._root_of_refl[t]]
        return "[" + ", ".join(f"{self.field.to_float(c):g}" for c in vec) + "]"

    def __repr__(self):
        return f"CoxeterSystem(rank={self.rank}, order={self.order})"


def symmetric_group(n: int) -> CoxeterSystem:
    """S_n as the type A Coxeter system on n-1 generators."""
    if n < 2:
        raise MalformedMatrixError("need n >= 2")
    return CoxeterSystem(coxeter_matrix(f"A{n - 1}"))
