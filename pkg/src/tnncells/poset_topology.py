"""Finite poset machinery: grading, Mobius functions, order complexes,
EL-labelings, and shellings.

Nothing in this module knows about Coxeter groups.  A poset is handed to
us as a list of element labels plus its Hasse diagram (a list of
(upper, lower) cover pairs).  Internally elements are reindexed so that
ids increase with rank, which makes the id order a linear extension and
lets most computations run as boolean or integer matrix sweeps.

Conventions used throughout:

* rank(x) is the length of the longest chain from a minimal element up
  to x, so minimal elements have rank 0.
* chains in an interval [a, b] are read from the top down; a chain is
  "increasing" if its label word is weakly increasing in that reading.
* the order complex of a poset has the elements as vertices and the
  chains as faces; its facets are the maximal chains.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np


class NotComparableError(ValueError):
    """The two elements are not related in the partial order."""


class NotACoverError(ValueError):
    """The given edge is not a cover relation of the poset."""


class NotLengthTwoError(ValueError):
    """The interval does not have length two."""


class UnlabeledEdgeError(KeyError):
    """A cover relation has no label assigned."""


class NotPureError(ValueError):
    """The facets do not all have the same dimension."""


# entries of chain-count matrices live in int64; beyond this we refuse
# rather than risk silent overflow
_COUNT_LIMIT = 2**53


def _chain_power_sums(strict, max_len):
    """Yield (k, Z^k) for k = 1 .. max_len where Z is the strict order
    matrix; stops early once the power vanishes.  Raises if counts leave
    the exactly-representable range."""
    z = strict.astype(np.int64)
    power = z.copy()
    k = 1
    while True:
        m = int(power.max(initial=0))
        if m >= _COUNT_LIMIT:
            raise OverflowError("chain counts exceed the exact integer range")
        yield k, power
        if m == 0 or k >= max_len:
            return
        power = power @ z
        k += 1


class GradedPoset:
    """A finite poset given by its Hasse diagram.

    The name is aspirational: construction only requires an acyclic
    cover relation, and is_graded() reports whether the rank function
    is compatible with every cover.
    """

    def __init__(self, labels, covers):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate element labels")
        pos = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)

        edges = set()
        for hi, lo in covers:
            a, b = pos[hi], pos[lo]
            if a == b:
                raise ValueError("cover relation from an element to itself")
            edges.add((a, b))

        # longest-path rank via Kahn's algorithm on lo -> hi edges
        up_adj = [[] for _ in range(n)]
        indeg = [0] * n
        for a, b in edges:
            up_adj[b].append(a)
            indeg[a] += 1
        rank0 = [0] * n
        queue = [i for i in range(n) if indeg[i] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in up_adj[v]:
                rank0[a] = max(rank0[a], rank0[v] + 1)
                indeg[a] -= 1
                if indeg[a] == 0:
                    queue.append(a)
        if seen != n:
            raise ValueError("cover relations contain a cycle")

        order = sorted(range(n), key=lambda i: (rank0[i], i))
        new_id = {old: new for new, old in enumerate(order)}

        self.n = n
        self.labels = tuple(labels[old] for old in order)
        self._id_of = {lab: i for i, lab in enumerate(self.labels)}
        self.rank = np.array([rank0[old] for old in order], dtype=np.int64)
        self.covers = tuple(sorted((new_id[a], new_id[b]) for a, b in edges))
        self._lower = [[] for _ in range(n)]
        self._upper = [[] for _ in range(n)]
        for hi, lo in self.covers:
            self._lower[hi].append(lo)
            self._upper[lo].append(hi)

        # leq[i, j] means i <= j; ids ascend with rank, so one sweep fills it
        leq = np.eye(n, dtype=bool)
        for hi in range(n):
            for lo in self._lower[hi]:
                leq[:, hi] |= leq[:, lo]
        self._leq = leq

        # reject Hasse edges that are not genuine covers
        strict = leq & ~np.eye(n, dtype=bool)
        two_step = (strict.astype(np.uint8) @ strict.astype(np.uint8)) > 0
        for hi, lo in self.covers:
            if two_step[lo, hi]:
                raise NotACoverError(
                    "edge (%r, %r) is implied by a longer chain"
                    % (self.labels[hi], self.labels[lo])
                )

        self._mobius = None

    # ---- basic queries ----------------------------------------------

    def id_of(self, label):
        return self._id_of[label]

    def leq(self, a, b):
        return bool(self._leq[a, b])

    def lt(self, a, b):
        return a != b and bool(self._leq[a, b])

    def is_cover(self, hi, lo):
        return lo in self._lower[hi]

    def lower_covers(self, v):
        return tuple(self._lower[v])

    def upper_covers(self, v):
        return tuple(self._upper[v])

    def minimal_ids(self):
        return tuple(v for v in range(self.n) if not self._lower[v])

    def maximal_ids(self):
        return tuple(v for v in range(self.n) if not self._upper[v])

    def bottom(self):
        mins = self.minimal_ids()
        return mins[0] if len(mins) == 1 else None

    def top(self):
        maxs = self.maximal_ids()
        return maxs[0] if len(maxs) == 1 else None

    def is_bounded(self):
        return self.n > 0 and self.bottom() is not None and self.top() is not None

    def is_graded(self):
        """Every cover relation raises rank by exactly one.  For bounded
        posets this is the usual condition that all maximal chains have
        the same length."""
        return all(self.rank[hi] == self.rank[lo] + 1 for hi, lo in self.covers)

    # ---- intervals and subposets ------------------------------------

    def interval_ids(self, a, b):
        if not self._leq[a, b]:
            raise NotComparableError(
                "%r is not below %r" % (self.labels[a], self.labels[b])
            )
        return np.nonzero(self._leq[a] & self._leq[:, b])[0]

    def interval(self, a, b):
        """The closed interval [a, b] as a poset.  Its covers are the
        covers of the ambient poset between retained elements."""
        ids = self.interval_ids(a, b)
        return self._restrict_to(ids)

    def induced_subposet(self, ids):
        """The subposet on an arbitrary id subset, with covers recomputed
        from the induced order."""
        ids = sorted(set(int(i) for i in ids))
        sub = self._leq[np.ix_(ids, ids)]
        strict = sub & ~np.eye(len(ids), dtype=bool)
        two = (strict.astype(np.uint8) @ strict.astype(np.uint8)) > 0
        hasse = strict & ~two
        labels = [self.labels[i] for i in ids]
        covers = [
            (labels[j], labels[i]) for i, j in zip(*np.nonzero(hasse))
        ]
        return GradedPoset(labels, covers)

    def _restrict_to(self, ids):
        # valid when ids is order-convex, so ambient covers restrict
        keep = set(int(i) for i in ids)
        labels = [self.labels[i] for i in sorted(keep)]
        covers = [
            (self.labels[hi], self.labels[lo])
            for hi, lo in self.covers
            if hi in keep and lo in keep
        ]
        return GradedPoset(labels, covers)

    def lower_ideal(self, b):
        """The principal lower ideal of b, as a poset."""
        return self._restrict_to(np.nonzero(self._leq[:, b])[0])

    def proper_part(self):
        if not self.is_bounded():
            raise ValueError("proper part needs a bounded poset")
        ids = [v for v in range(self.n) if v not in (self.bottom(), self.top())]
        return self.induced_subposet(ids)

    # ---- Mobius function and Eulerian tests --------------------------

    def mobius_matrix(self):
        """M[a, b] = mu(a, b) for a <= b, else 0."""
        if self._mobius is None:
            n = self.n
            mu = np.zeros((n, n), dtype=np.int64)
            for b in range(n):
                below = self._leq[:, b].copy()
                below[b] = False
                col = -mu[:, np.nonzero(below)[0]].sum(axis=1)
                col[~self._leq[:, b]] = 0
                mu[:, b] = col
                mu[b, b] = 1
            self._mobius = mu
        return self._mobius

    def mobius(self, a, b):
        if not self._leq[a, b]:
            raise NotComparableError(
                "%r is not below %r" % (self.labels[a], self.labels[b])
            )
        return int(self.mobius_matrix()[a, b])

    def hall_identity_holds(self):
        """The alternating sum over k of the number of chains
        a = x0 < x1 < ... < xk = b must equal mu(a, b)."""
        if self.n == 0:
            return True
        strict = self._leq & ~np.eye(self.n, dtype=bool)
        total = np.eye(self.n, dtype=np.int64)
        for k, power in _chain_power_sums(strict, self.n):
            total += (-1) ** k * power
        return bool(np.array_equal(total, self.mobius_matrix()))

    def eulerian_report(self):
        """Two readings of the Eulerian condition, which must agree:

        * counts: every interval of length >= 1 contains as many odd
          rank elements as even rank ones;
        * mobius: mu(a, b) = (-1)^(rank(b) - rank(a)) for all a <= b.
        """
        n = self.n
        if n == 0:
            return EulerianReport(True, True, None)
        a = self._leq.astype(np.float64)
        even = (self.rank % 2 == 0).astype(np.float64)
        evens = (a * even[None, :]) @ a
        odds = (a * (1.0 - even)[None, :]) @ a
        if max(evens.max(), odds.max()) >= _COUNT_LIMIT:
            raise OverflowError("interval sizes exceed the exact float range")
        diff = self.rank[None, :] - self.rank[:, None]
        relevant = self._leq & (diff >= 1)
        counts_ok = bool(np.all(evens[relevant] == odds[relevant]))

        mu = self.mobius_matrix()
        expected = np.where(self._leq, (-1) ** (diff % 2).astype(np.int64), 0)
        mobius_ok = bool(np.array_equal(mu, expected))

        bad = None
        if not counts_ok:
            idx = np.argwhere(relevant & (evens != odds))[0]
            bad = (self.labels[idx[0]], self.labels[idx[1]])
        elif not mobius_ok:
            idx = np.argwhere(mu != expected)[0]
            bad = (self.labels[idx[0]], self.labels[idx[1]])
        return EulerianReport(counts_ok, mobius_ok, bad)

    def is_eulerian(self):
        rep = self.eulerian_report()
        return rep.counts_ok and rep.mobius_ok

    def is_thin(self):
        """Every interval of length two contains exactly four elements."""
        if self.n == 0:
            return True
        a = self._leq.astype(np.float64)
        sizes = a @ a
        diff = self.rank[None, :] - self.rank[:, None]
        relevant = self._leq & (diff == 2)
        return bool(np.all(sizes[relevant] == 4))

    def diamond_middles(self, a, b):
        if not self._leq[a, b]:
            raise NotComparableError(
                "%r is not below %r" % (self.labels[a], self.labels[b])
            )
        if self.rank[b] - self.rank[a] != 2:
            raise NotLengthTwoError(
                "[%r, %r] does not have length two"
                % (self.labels[a], self.labels[b])
            )
        ids = self.interval_ids(a, b)
        return tuple(int(z) for z in ids if z != a and z != b)

    # ---- order complex ------------------------------------------------

    def maximal_chains(self, limit=2_000_000):
        """All maximal chains, each listed from top to bottom."""
        out = []
        stack = [(v, [v]) for v in sorted(self.maximal_ids(), reverse=True)]
        while stack:
            v, chain = stack.pop()
            lows = self._lower[v]
            if not lows:
                out.append(tuple(chain))
                if len(out) > limit:
                    raise MemoryError("too many maximal chains")
            else:
                for lo in sorted(lows, reverse=True):
                    stack.append((lo, chain + [lo]))
        return out

    def order_complex(self, limit=2_000_000):
        return SimplicialComplex(self.maximal_chains(limit=limit))

    def order_complex_euler(self):
        """Euler characteristic of the order complex, computed from chain
        counts without enumerating faces."""
        if self.n == 0:
            return 0
        strict = self._leq & ~np.eye(self.n, dtype=bool)
        chi = self.n
        for k, power in _chain_power_sums(strict, self.n):
            chi += (-1) ** k * int(power.sum())
        return chi

    # ---- export -------------------------------------------------------

    def to_json_dict(self, label_str=str):
        return {
            "elements": [
                {"id": i, "rank": int(self.rank[i]), "label": label_str(self.labels[i])}
                for i in range(self.n)
            ],
            "covers": [[hi, lo] for hi, lo in self.covers],
            "bottom": self.bottom(),
            "top": self.top(),
        }

    def to_dot(self, label_str=str, edge_str=None):
        lines = ["digraph poset {", "  rankdir=BT;"]
        for i in range(self.n):
            lines.append('  n%d [label="%s"];' % (i, label_str(self.labels[i])))
        for hi, lo in self.covers:
            attr = ""
            if edge_str is not None:
                attr = ' [label="%s"]' % edge_str(self.labels[hi], self.labels[lo])
            lines.append("  n%d -> n%d%s;" % (lo, hi, attr))
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class EulerianReport:
    counts_ok: bool
    mobius_ok: bool
    first_bad: object = None

    def agree(self):
        return self.counts_ok == self.mobius_ok


# ---- edge labelings and EL verification ------------------------------


class EdgeLabeling:
    """Labels on the cover relations of a poset.

    labels maps (upper_id, lower_id) to an arbitrary label; key maps a
    label to a sortable value used for all comparisons.
    """

    def __init__(self, labels, key=None):
        self.labels = dict(labels)
        self.key = key if key is not None else lambda lab: lab

    def label_of(self, hi, lo):
        try:
            return self.labels[(hi, lo)]
        except KeyError:
            raise UnlabeledEdgeError("no label on edge (%r, %r)" % (hi, lo))

    def key_of(self, hi, lo):
        return self.key(self.label_of(hi, lo))


@dataclass
class ELReport:
    ok: bool
    intervals_checked: int
    failures: list = field(default_factory=list)


def verify_el_labeling(poset, labeling, max_failures=5):
    """Check the EL property: every interval has exactly one maximal
    chain with a weakly increasing top-down label word, and that chain
    is lexicographically first among all maximal chains of the interval.

    The two conditions verified per interval are (a) the number of
    increasing chains is one and (b) the lexicographically minimal label
    word is itself weakly increasing; together these are equivalent to
    the textbook definition.
    """
    if not poset.is_graded():
        raise ValueError("EL verification requires a graded poset")
    kappa = {}
    for hi, lo in poset.covers:
        kappa[(hi, lo)] = labeling.key_of(hi, lo)

    n = poset.n
    failures = []
    checked = 0
    for a in range(n):
        up = poset._leq[a]
        ids = np.nonzero(up)[0]
        if len(ids) == 1:
            continue
        # tables[z] = (sorted keys of down-edges inside the up-set of a,
        # suffix sums of the increasing-chain counts through each edge)
        tables = {}
        for z in ids:
            if z == a:
                continue
            entries = []
            for lo in poset._lower[z]:
                if not up[lo]:
                    continue
                k = kappa[(z, lo)]
                if lo == a:
                    cnt = 1
                else:
                    keys, sums = tables[lo]
                    cnt = sums[bisect_left(keys, k)]
                entries.append((k, cnt))
            entries.sort(key=lambda e: e[0])
            keys = [k for k, _ in entries]
            sums = [0] * (len(entries) + 1)
            for i in range(len(entries) - 1, -1, -1):
                sums[i] = sums[i + 1] + entries[i][1]
            tables[z] = (keys, sums)

        for b in ids:
            if b == a:
                continue
            checked += 1
            count = tables[b][1][0]
            word = _lexmin_word(poset, kappa, up, a, b)
            increasing = all(word[i] <= word[i + 1] for i in range(len(word) - 1))
            if count != 1 or not increasing:
                failures.append((poset.labels[a], poset.labels[b], count, word))
                if len(failures) >= max_failures:
                    return ELReport(False, checked, failures)
    return ELReport(not failures, checked, failures)


def _lexmin_word(poset, kappa, up, a, b):
    word = []
    frontier = {b}
    while frontier != {a}:
        best = None
        nxt = set()
        for z in frontier:
            for lo in poset._lower[z]:
                if not up[lo]:
                    continue
                k = kappa[(z, lo)]
                if best is None or k < best:
                    best = k
                    nxt = {lo}
                elif k == best:
                    nxt.add(lo)
        word.append(best)
        frontier = nxt
    return word


def shelling_from_el(poset, labeling):
    """Order the facets of the order complex of the proper part by the
    lexicographic order of the (top-down) label words of the
    corresponding maximal chains."""
    if not poset.is_bounded():
        raise ValueError("need a bounded poset")
    kappa = {e: labeling.key_of(*e) for e in poset.covers}
    chains = poset.maximal_chains()
    keyed = []
    for chain in chains:
        word = tuple(kappa[(chain[i], chain[i + 1])] for i in range(len(chain) - 1))
        keyed.append((word, chain))
    keyed.sort(key=lambda t: t[0])
    bot, top = poset.bottom(), poset.top()
    facets = []
    for _, chain in keyed:
        facet = tuple(sorted(v for v in chain if v != bot and v != top))
        if facet:
            facets.append(facet)
    return facets


def verify_shelling(facets):
    """Check that the given facet order is a shelling: each facet meets
    the union of the earlier ones in a nonempty union of maximal proper
    faces.  Facets must be pure.  A list of 0-dimensional facets counts
    as shelled."""
    if not facets:
        return True
    dim = len(facets[0])
    sets = [frozenset(f) for f in facets]
    if any(len(f) != dim for f in sets):
        raise NotPureError("facets of unequal dimension")
    if len(set(sets)) != len(sets):
        raise ValueError("repeated facet")
    for k in range(1, len(sets)):
        fk = sets[k]
        earlier = sets[:k]
        walls = {v for v in fk if any((fk - {v}) <= e for e in earlier)}
        if not walls:
            return False
        for e in earlier:
            if not any(v not in e for v in walls):
                return False
    return True


# ---- simplicial complexes ---------------------------------------------


class SimplicialComplex:
    """A finite simplicial complex given by its facets."""

    def __init__(self, facets):
        cleaned = sorted({tuple(sorted(set(f))) for f in facets if f})
        sets = [frozenset(f) for f in cleaned]
        for i, f in enumerate(sets):
            for j, g in enumerate(sets):
                if i != j and f <= g:
                    raise ValueError("facet %r is contained in %r" % (cleaned[i], cleaned[j]))
        self.facets = tuple(cleaned)

    def dim(self):
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self):
        return len({len(f) for f in self.facets}) <= 1

    def faces(self, limit=5_000_000):
        out = set()
        for f in self.facets:
            for r in range(1, len(f) + 1):
                for c in itertools.combinations(f, r):
                    out.add(c)
                    if len(out) > limit:
                        raise MemoryError("too many faces")
        return out

    def f_vector(self):
        counts = {}
        for face in self.faces():
            counts[len(face) - 1] = counts.get(len(face) - 1, 0) + 1
        return tuple(counts.get(d, 0) for d in range(self.dim() + 1))

    def euler_characteristic(self):
        return sum((-1) ** d * fd for d, fd in enumerate(self.f_vector()))

    def reduced_euler_characteristic(self):
        return self.euler_characteristic() - 1


def sphere_euler_characteristic(dim):
    """Euler characteristic of the dim-sphere; dim -1 means the empty
    complex (so 0)."""
    if dim < 0:
        return 0
    return 1 + (-1) ** dim


# ---- bundled evidence --------------------------------------------------


def cw_ball_evidence(poset, labeling=None, max_chains=2_000_000):
    """Run the whole battery on a bounded poset and report the results.

    All checks are pass or fail except the Euler characteristic of the
    proper part, which is reported alongside the value a sphere of the
    matching dimension would have; callers decide what to make of it.
    """
    report = {
        "n": poset.n,
        "bounded": poset.is_bounded(),
        "graded": poset.is_graded(),
        "thin": poset.is_thin(),
        "hall": poset.hall_identity_holds(),
    }
    eul = poset.eulerian_report()
    report["eulerian_counts"] = eul.counts_ok
    report["eulerian_mobius"] = eul.mobius_ok
    report["eulerian_agree"] = eul.agree()

    if report["bounded"]:
        proper = poset.proper_part()
        report["chi_proper"] = proper.order_complex_euler()
        top_rank = int(poset.rank[poset.top()])
        report["chi_sphere"] = sphere_euler_characteristic(top_rank - 2)
    if labeling is not None:
        el = verify_el_labeling(poset, labeling)
        report["el"] = el.ok
        if report["bounded"] and report["graded"] and el.ok:
            facets = shelling_from_el(poset, labeling)
            report["shelling"] = verify_shelling(facets)
            report["facets"] = len(facets)
    report["all_pass"] = all(
        report.get(k, False)
        for k in (
            "bounded",
            "graded",
            "thin",
            "hall",
            "eulerian_counts",
            "eulerian_mobius",
        )
    ) and report.get("el", True) and report.get("shelling", True)
    return report
