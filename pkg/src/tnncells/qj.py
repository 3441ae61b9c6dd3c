"""The cell poset of the totally nonnegative part of a flag variety.

Cells are indexed by triples (x, u, w) with x a maximal coset
representative, u in the parabolic subgroup W_J, w a minimal
representative, and x <= wu; an extra bottom element (represented by
None) sits below the 0-cells.  The order is defined existentially:
(x', v, w') <= (x, u, w) when some length-additive factorization
v = v1 v2 satisfies x u^-1 <= x' v2^-1 <= w' v1 <= w.

The poset is assembled from that relation: covers are its transitive
reduction, ranks come from longest chains, and the syntactic
three-type description of the covers is verified against them rather
than trusted.  Edge labels refine a W_J-last reflection order: Type 1
edges carry (wu)^-1 w'v, Type 2 edges carry (x'v^-1)^-1 x u^-1, the
edges to the bottom carry the empty label, and the comparator puts
every Type 1 label before the empty label before every Type 2 label.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bruhat_el import CheckReport
from .coxeter import SystemMismatchError
from .poset_topology import EdgeLabeling, GradedPoset, NotACoverError

BOTTOM = None

TYPE1, TYPE2, TYPE3 = 1, 2, 3

EMPTY_LABEL = ("empty",)


class OrderNotWJLastError(ValueError):
    """The reflection order does not put reflections of W_J last."""


class WrongParabolicError(ValueError):
    """A triple component lies in the wrong piece of the parabolic
    factorization."""


class FactorizationFailureError(RuntimeError):
    """A cover relation fits none of the three syntactic types, or the
    constructed relation is not the order it should be."""


def validate_cell(system, J, cell):
    if cell is BOTTOM:
        return
    x, u, w = cell
    for g in (x, u, w):
        if not isinstance(g, int) or not 0 <= g < system.order:
            raise SystemMismatchError("%r is not an element id of the system" % (g,))
    park = system.parabolic(J)
    if x not in park.max_set:
        raise WrongParabolicError("x component %r is not a maximal representative" % (x,))
    if u not in park.member:
        raise WrongParabolicError("u component %r is outside the subgroup" % (u,))
    if w not in park.min_set:
        raise WrongParabolicError("w component %r is not a minimal representative" % (w,))
    if not system.bruhat_leq(x, system.mult(w, u)):
        raise WrongParabolicError("triple %r fails x <= wu" % (cell,))


def cell_dimension(system, cell):
    if cell is BOTTOM:
        return -1
    x, u, w = cell
    return system.length(system.mult(w, u)) - system.length(x)


def cell_rank(system, cell):
    return cell_dimension(system, cell) + 1


def enumerate_cells(system, J):
    """All cells, bottom first, then triples by (dimension, triple)."""
    park = system.parabolic(J)
    leq = system.leq_matrix()
    mul = system.mult
    triples = []
    for x in park.max_reps:
        for u in park.elements:
            for w in park.min_reps:
                if leq[mul(w, u), x]:
                    triples.append((x, u, w))
    triples.sort(key=lambda c: (cell_dimension(system, c), c))
    return [BOTTOM] + triples


def top_cell(system, J):
    park = system.parabolic(J)
    w0_min = system.projection_WJ(system.w0, J)
    return (park.u0, park.u0, w0_min)


def qj_leq(system, J, a, b):
    """The raw order relation between two cells."""
    validate_cell(system, J, a)
    validate_cell(system, J, b)
    if a is BOTTOM:
        return True
    if b is BOTTOM:
        return False
    park = system.parabolic(J)
    inv, mul = system.inverse, system.mult
    xs, us, ws = a
    xb, ub, wb = b
    head = mul(xb, inv(ub))
    for v2 in park.elements:
        v1 = mul(us, inv(v2))
        if system.length(v1) + system.length(v2) != system.length(us):
            continue
        mid_lo = mul(xs, inv(v2))
        mid_hi = mul(ws, v1)
        if (
            system.bruhat_leq(head, mid_lo)
            and system.bruhat_leq(mid_lo, mid_hi)
            and system.bruhat_leq(mid_hi, wb)
        ):
            return True
    return False


def _length_additive_suffixes(system, park):
    """For each u in W_J the list of v2 with u = v1 v2, lengths adding."""
    out = {}
    for u in park.elements:
        lu = system.length(u)
        out[u] = [
            v2
            for v2 in park.elements
            if system.length(system.mult(u, system.inverse(v2))) + system.length(v2) == lu
        ]
    return out


def _relation_matrix(system, J, triples):
    """rel[i, j] = triples[i] <= triples[j], via the factorization
    formula, vectorized over pairs of cells."""
    park = system.parabolic(J)
    L = system.leq_matrix().T  # L[a, b] means a <= b
    inv, mul = system.inverse, system.mult
    n = len(triples)
    suffixes = _length_additive_suffixes(system, park)

    # per smaller cell, the factorization middles (x v2^-1, w v1) that
    # already satisfy the inner inequality
    middles = []
    for x, u, w in triples:
        pairs = []
        for v2 in suffixes[u]:
            a = mul(x, inv(v2))
            b = mul(w, mul(u, inv(v2)))
            if L[a, b]:
                pairs.append((a, b))
        middles.append(sorted(pairs))

    heads = np.array([mul(x, inv(u)) for x, u, w in triples], dtype=np.int64)
    tails = np.array([w for _, _, w in triples], dtype=np.int64)

    rel = np.zeros((n, n), dtype=bool)
    depth = max((len(m) for m in middles), default=0)
    for k in range(depth):
        rows = np.array([i for i in range(n) if len(middles[i]) > k], dtype=np.int64)
        a_k = np.array([middles[i][k][0] for i in rows], dtype=np.int64)
        b_k = np.array([middles[i][k][1] for i in rows], dtype=np.int64)
        rel[rows] |= L[np.ix_(heads, a_k)].T & L[np.ix_(b_k, tails)]
    return rel


def classify_cover(system, J, big, small):
    """Match a cover against the three syntactic descriptions, returning
    (type, reflection or None)."""
    inv, mul = system.inverse, system.mult
    if small is BOTTOM:
        x, u, w = big
        if mul(w, u) != x:
            raise FactorizationFailureError(
                "bottom cover of %r, which is not a 0-cell" % (big,)
            )
        return TYPE3, None
    x, u, w = big
    xp, v, wp = small
    if wp == w:
        # x u^-1 must be covered by x' v^-1
        lo, hi = mul(x, inv(u)), mul(xp, inv(v))
        if system.length(hi) != system.length(lo) + 1 or not system.bruhat_leq(lo, hi):
            raise FactorizationFailureError(
                "bad w-preserving cover %r > %r" % (big, small)
            )
        return TYPE2, mul(inv(hi), lo)
    # otherwise x is fixed, v = v1 u with lengths adding, w'v1 covered by w
    v1 = mul(v, inv(u))
    if (
        xp != x
        or system.length(v1) + system.length(u) != system.length(v)
        or system.length(w) != system.length(mul(wp, v1)) + 1
        or not system.bruhat_leq(mul(wp, v1), w)
    ):
        raise FactorizationFailureError("cover %r > %r fits no type" % (big, small))
    return TYPE1, mul(inv(mul(w, u)), mul(wp, v))


def label_key(order):
    def key(label):
        if label == EMPTY_LABEL:
            return (1, 0)
        kind, t = label
        return (0, order.key(t)) if kind == "t1" else (2, order.key(t))

    return key


@dataclass
class QJPoset:
    """The finished poset plus everything needed to talk about it."""

    system: object
    J: tuple
    order: object
    poset: GradedPoset
    labeling: EdgeLabeling
    cover_types: dict
    cover_labels: dict

    def cells(self):
        return self.poset.labels

    def id_of(self, cell):
        return self.poset.id_of(cell)

    def covers(self, cell):
        """Cells covered by the given cell, with their cover types."""
        hi = self.poset.id_of(cell)
        return [
            (self.poset.labels[lo], self.cover_types[(hi, lo)])
            for lo in self.poset.lower_covers(hi)
        ]

    def el_label(self, big, small):
        hi = self.poset.id_of(big)
        lo = self.poset.id_of(small)
        if not self.poset.is_cover(hi, lo):
            raise NotACoverError("(%r, %r) is not a cover" % (big, small))
        return self.labeling.label_of(hi, lo)

    def cell_closure_euler(self, cell):
        """Alternating sum of cell dimensions over the closure."""
        j = self.poset.id_of(cell)
        total = 0
        for i in np.nonzero(self.poset._leq[:, j])[0]:
            c = self.poset.labels[i]
            if c is not BOTTOM:
                total += (-1) ** cell_dimension(self.system, c)
        return total

    def all_closures_euler_one(self):
        sign = np.array(
            [
                0 if c is BOTTOM else (-1) ** cell_dimension(self.system, c)
                for c in self.poset.labels
            ],
            dtype=np.int64,
        )
        sums = sign @ self.poset._leq
        mask = np.array([c is not BOTTOM for c in self.poset.labels])
        return bool(np.all(sums[mask] == 1))


def qj_el_label(qj, big, small):
    return qj.el_label(big, small)


def build_qj_poset(system, J, order):
    """Construct the poset, its covers, cover types, and EL labeling.

    The order relation is computed wholesale and then audited: it must
    be reflexive and antisymmetric, regenerate from its own transitive
    reduction, and every cover must classify as one of the three types.
    """
    J = tuple(sorted(J))
    if not order.is_wj_last(J):
        raise OrderNotWJLastError("reflection order must put W_J last for J=%r" % (J,))

    cells = enumerate_cells(system, J)
    triples = cells[1:]
    n = len(triples)
    rel = _relation_matrix(system, J, triples)

    if not np.all(np.diag(rel)):
        raise FactorizationFailureError("order relation is not reflexive")
    if np.any(rel & rel.T & ~np.eye(n, dtype=bool)):
        raise FactorizationFailureError("order relation is not antisymmetric")

    strict = rel & ~np.eye(n, dtype=bool)
    two = (strict.astype(np.float32) @ strict.astype(np.float32)) > 0
    hasse = strict & ~two

    covers = [(triples[j], triples[i]) for i, j in zip(*np.nonzero(hasse))]
    minimal = [i for i in range(n) if not np.any(strict[:, i])]
    covers += [(triples[i], BOTTOM) for i in minimal]

    poset = GradedPoset(cells, covers)

    # the relation must be exactly the transitive closure of its covers
    ids = [poset.id_of(t) for t in triples]
    if not np.array_equal(poset._leq[np.ix_(ids, ids)], rel):
        raise FactorizationFailureError("order relation is not transitive")

    cover_types = {}
    cover_labels = {}
    labels = {}
    for hi, lo in poset.covers:
        ctype, t = classify_cover(system, J, poset.labels[hi], poset.labels[lo])
        cover_types[(hi, lo)] = ctype
        cover_labels[(hi, lo)] = t
        if ctype == TYPE3:
            labels[(hi, lo)] = EMPTY_LABEL
        else:
            labels[(hi, lo)] = ("t1" if ctype == TYPE1 else "t2", t)
    labeling = EdgeLabeling(labels, key=label_key(order))
    return QJPoset(system, J, order, poset, labeling, cover_types, cover_labels)


# ---- structural checks -----------------------------------------------------


def check_cover_types(qj):
    """Every cover classifies; bottom covers are exactly the Type 3
    edges; Type 1 and 2 labels are reflections."""
    report = CheckReport("cover_types", True, 0)
    system = qj.system
    for (hi, lo), ctype in qj.cover_types.items():
        report.checked += 1
        small = qj.poset.labels[lo]
        if (ctype == TYPE3) != (small is BOTTOM):
            report.note_failure((hi, lo, "bottom/type mismatch"))
        if ctype != TYPE3 and not system.is_reflection(qj.cover_labels[(hi, lo)]):
            report.note_failure((hi, lo, "label is not a reflection"))
    return report


def check_type1_labels_outside_wj(qj):
    """Type 1 labels never lie in W_J."""
    report = CheckReport("type1_labels_outside_wj", True, 0)
    park = qj.system.parabolic(qj.J)
    for edge, ctype in qj.cover_types.items():
        if ctype != TYPE1:
            continue
        report.checked += 1
        if qj.cover_labels[edge] in park.member:
            report.note_failure(edge)
    return report


def check_type2_over_type1_diamonds(qj):
    """No diamond has both upper edges of Type 2 and both lower edges of
    Type 1."""
    report = CheckReport("type2_over_type1_diamonds", True, 0)
    p = qj.poset
    types = qj.cover_types
    for top in range(p.n):
        seconds = {}
        for mid in p.lower_covers(top):
            for bot in p.lower_covers(mid):
                seconds.setdefault(bot, []).append(mid)
        for bot, mids in seconds.items():
            if len(mids) != 2:
                continue
            report.checked += 1
            if all(types[(top, m)] == TYPE2 for m in mids) and all(
                types[(m, bot)] == TYPE1 for m in mids
            ):
                report.note_failure((p.labels[top], p.labels[bot]))
    return report


def check_witness_below(qj):
    """For cells small < big there is a lower cover z of big with
    small <= z; z can be chosen with a strictly smaller w part when the
    w parts differ, and with the same w part when they agree."""
    report = CheckReport("witness_below", True, 0)
    p = qj.poset
    system = qj.system
    leq = p._leq
    bottom = p.bottom()
    for j in range(p.n):
        big = p.labels[j]
        if big is BOTTOM:
            continue
        w_big = big[2]
        same_w, smaller_w = [], []
        for lo in p.lower_covers(j):
            c = p.labels[lo]
            if c is BOTTOM:
                continue
            (same_w if c[2] == w_big else smaller_w).append(lo)
        for i in np.nonzero(leq[:, j])[0]:
            if i == j or i == bottom:
                continue
            small = p.labels[i]
            report.checked += 1
            if small[2] == w_big:
                witnesses = same_w
            elif system.bruhat_leq(small[2], w_big):
                witnesses = smaller_w
            else:
                # w parts of comparable cells are always comparable
                report.note_failure((small, big, "w parts incomparable"))
                continue
            if not any(leq[i, z] for z in witnesses):
                report.note_failure((small, big))
    return report


def check_rank_formula(qj):
    """Poset ranks agree with length(wu) - length(x) + 1."""
    report = CheckReport("rank_formula", True, 0)
    p = qj.poset
    for i in range(p.n):
        report.checked += 1
        if int(p.rank[i]) != cell_rank(qj.system, p.labels[i]):
            report.note_failure((p.labels[i], int(p.rank[i])))
    return report


def check_top_cell(qj):
    report = CheckReport("top_cell", True, 1)
    top = qj.poset.top()
    if top is None or qj.poset.labels[top] != top_cell(qj.system, qj.J):
        report.note_failure(("top", None if top is None else qj.poset.labels[top]))
    return report


def check_minimal_cells(qj):
    """Cells covering the bottom are exactly the 0-cells x = wu, and
    they cover nothing else."""
    report = CheckReport("minimal_cells", True, 0)
    p = qj.poset
    bottom = p.bottom()
    for i in range(p.n):
        if i == bottom:
            continue
        report.checked += 1
        x, u, w = p.labels[i]
        zero_cell = qj.system.mult(w, u) == x
        lows = p.lower_covers(i)
        if zero_cell != (lows == (bottom,)):
            report.note_failure(p.labels[i])
        if (bottom in lows) != zero_cell:
            report.note_failure(p.labels[i])
    return report


def check_diamond_cases(qj):
    """Every length-two interval between triples sorts into one of three
    cases by the Bruhat gaps (left, right) around the middle pair of its
    factorization witnesses, which always sum to two.

    A (2, 0) witness forces c = w and a trivial first factor, and such
    diamonds carry only (2, 0) witnesses and only w-preserving edges.  A
    (0, 2) witness forces a = x, u = b2, and a length-two Bruhat
    interval [cb, wu].  Diamonds with neither kind have only (1, 1)
    witnesses, each of which names the two middle cells exactly.
    Intervals over the bottom have the two prescribed middle cells."""
    report = CheckReport("diamond_cases", True, 0)
    p = qj.poset
    system = qj.system
    park = system.parabolic(qj.J)
    inv, mul = system.inverse, system.mult
    suffixes = _length_additive_suffixes(system, park)
    bottom = p.bottom()
    case_counts = {1: 0, 2: 0, 3: 0}
    for top in range(p.n):
        seconds = {}
        for mid in p.lower_covers(top):
            for bot in p.lower_covers(mid):
                seconds.setdefault(bot, set()).add(mid)
        for bot, mids in seconds.items():
            report.checked += 1
            if len(mids) != 2:
                report.note_failure((p.labels[top], p.labels[bot], "not a diamond"))
                continue
            x, u, w = p.labels[top]
            if bot == bottom:
                want = {
                    (mul(w, park.u0), park.u0, w),
                    (x, park.u0, mul(x, park.u0)),
                }
                got = {p.labels[m] for m in mids}
                if got != want:
                    report.note_failure((p.labels[top], "bottom diamond", got))
                continue
            a, b, c = p.labels[bot]
            head = mul(x, inv(u))
            witnesses = []
            for b2 in suffixes[b]:
                b1 = mul(b, inv(b2))
                mid_lo = mul(a, inv(b2))
                mid_hi = mul(c, b1)
                if not (
                    system.bruhat_leq(head, mid_lo)
                    and system.bruhat_leq(mid_lo, mid_hi)
                    and system.bruhat_leq(mid_hi, w)
                ):
                    continue
                left = system.length(mid_lo) - system.length(head)
                right = system.length(w) - system.length(mid_hi)
                witnesses.append((left, right, b1, b2))
            shapes = {(l, r) for l, r, _, _ in witnesses}
            if not shapes or not shapes <= {(0, 2), (1, 1), (2, 0)}:
                report.note_failure((p.labels[top], p.labels[bot], shapes))
                continue
            got = {p.labels[m] for m in mids}
            if (2, 0) in shapes:
                case_counts[3] += 1
                ok = (
                    c == w
                    and shapes == {(2, 0)}
                    and all(b1 == 0 for _, _, b1, _ in witnesses)
                    and all(
                        qj.cover_types[(top, m)] == TYPE2
                        and qj.cover_types[(m, bot)] == TYPE2
                        for m in mids
                    )
                )
                if not ok:
                    report.note_failure((p.labels[top], p.labels[bot], "case 3"))
            elif (0, 2) in shapes:
                case_counts[1] += 1
                ok = a == x and all(
                    u == b2
                    and system.bruhat_leq(mul(c, b), mul(w, u))
                    and system.length(mul(w, u)) - system.length(mul(c, b)) == 2
                    for l, r, b1, b2 in witnesses
                    if (l, r) == (0, 2)
                )
                if not ok:
                    report.note_failure((p.labels[top], p.labels[bot], "case 1"))
            else:
                case_counts[2] += 1
                ok = all(
                    got == {(a, b2, w), (x, mul(b1, u), c)}
                    for _, _, b1, b2 in witnesses
                )
                if not ok:
                    report.note_failure((p.labels[top], p.labels[bot], "case 2"))
    report.case_counts = case_counts
    return report


def increasing_chain_to_bottom(qj, cell=None):
    """The lexicographically first maximal chain from the given cell
    (default the top) to the bottom.  It must be increasing, consist of
    Type 1 edges followed by the single empty edge, and pass through the
    0-cell sharing the x part of the starting cell."""
    p = qj.poset
    node = p.top() if cell is None else p.id_of(cell)
    start = p.labels[node]
    bottom = p.bottom()
    chain = [node]
    word = []
    while node != bottom:
        # all down-edge keys from one node are distinct
        key, node = min(
            (qj.labeling.key_of(node, lo), lo) for lo in p.lower_covers(node)
        )
        word.append(key)
        chain.append(node)
    if any(word[i] > word[i + 1] for i in range(len(word) - 1)):
        raise FactorizationFailureError("first chain to the bottom not increasing")
    types = [qj.cover_types[(chain[i], chain[i + 1])] for i in range(len(chain) - 1)]
    if types != [TYPE1] * (len(types) - 1) + [TYPE3]:
        raise FactorizationFailureError("chain to the bottom has unexpected edge types")
    x = start[0]
    w_min, u_part = qj.system.parabolic_factor(x, qj.J)
    if p.labels[chain[-2]] != (x, u_part, w_min):
        raise FactorizationFailureError("chain misses the 0-cell of the x part")
    return [p.labels[i] for i in chain]


def check_chains_to_bottom(qj):
    """From every cell the greedy chain to the bottom has the promised
    shape."""
    report = CheckReport("chains_to_bottom", True, 0)
    for cell in qj.poset.labels:
        if cell is BOTTOM:
            continue
        report.checked += 1
        try:
            increasing_chain_to_bottom(qj, cell)
        except FactorizationFailureError as exc:
            report.note_failure((cell, str(exc)))
    return report


def structural_suite(qj):
    reports = [
        check_cover_types(qj),
        check_type1_labels_outside_wj(qj),
        check_type2_over_type1_diamonds(qj),
        check_witness_below(qj),
        check_rank_formula(qj),
        check_top_cell(qj),
        check_minimal_cells(qj),
        check_diamond_cases(qj),
        check_chains_to_bottom(qj),
    ]
    return {r.name: r for r in reports}


# ---- the interval poset of the Bruhat order --------------------------------


def interval_poset(system):
    """All Bruhat intervals [x, w] ordered by containment, with the
    empty interval below the singletons."""
    leq = system.leq_matrix()
    labels = [BOTTOM] + [
        (x, w) for w in range(system.order) for x in range(system.order) if leq[w, x]
    ]
    n = len(labels)
    mat = np.zeros((n, n), dtype=bool)
    mat[0, :] = True
    for i in range(1, n):
        x, w = labels[i]
        for j in range(1, n):
            a, b = labels[j]
            mat[i, j] = leq[x, a] and leq[b, w]
    np.fill_diagonal(mat, True)
    strict = mat & ~np.eye(n, dtype=bool)
    two = (strict.astype(np.float32) @ strict.astype(np.float32)) > 0
    hasse = strict & ~two
    covers = [(labels[j], labels[i]) for i, j in zip(*np.nonzero(hasse))]
    return GradedPoset(labels, covers)


def interval_poset_iso_check(system, order=None):
    """For J empty the map (x, e, w) -> [x, w], bottom to bottom, is an
    isomorphism onto the interval poset."""
    from .reflection_order import order_with_wj_last

    if order is None:
        order = order_with_wj_last(system, ())
    qj = build_qj_poset(system, (), order)
    ip = interval_poset(system)
    if qj.poset.n != ip.n:
        return False

    mapping = {}
    for i in range(qj.poset.n):
        cell = qj.poset.labels[i]
        if cell is BOTTOM:
            mapping[i] = ip.id_of(BOTTOM)
        else:
            x, u, w = cell
            if u != 0:
                return False
            mapping[i] = ip.id_of((x, w))
    if len(set(mapping.values())) != ip.n:
        return False
    for i in range(qj.poset.n):
        for j in range(qj.poset.n):
            if qj.poset._leq[i, j] != ip._leq[mapping[i], mapping[j]]:
                return False
    qc = {(mapping[hi], mapping[lo]) for hi, lo in qj.poset.covers}
    return qc == set(ip.covers)


# ---- export ------------------------------------------------------------


def _element_json(system, g):
    if system.is_type_a():
        return list(system.one_line(g))
    return list(system.reduced_word(g))


def cell_json(system, cell):
    x, u, w = cell
    return {
        "x": _element_json(system, x),
        "u": _element_json(system, u),
        "w": _element_json(system, w),
        "dim": cell_dimension(system, cell),
        "rank": cell_rank(system, cell),
    }


def label_str(qj, edge):
    if qj.cover_types[edge] == TYPE3:
        return "empty"
    return qj.system.refl_str(qj.cover_labels[edge])


def qj_json_dict(qj):
    p = qj.poset
    elements = []
    for i in range(p.n):
        c = p.labels[i]
        elements.append(
            {
                "id": i,
                "rank": int(p.rank[i]),
                "label": None if c is BOTTOM else cell_json(qj.system, c),
            }
        )
    return {
        "elements": elements,
        "covers": [[hi, lo] for hi, lo in p.covers],
        "bottom": p.bottom(),
        "top": p.top(),
    }


def labels_json_dict(qj):
    edges = []
    for hi, lo in qj.poset.covers:
        edges.append(
            {
                "upper": hi,
                "lower": lo,
                "type": qj.cover_types[(hi, lo)],
                "label": label_str(qj, (hi, lo)),
            }
        )
    return {"order": qj.order.describe(), "edges": edges}


def _cell_str(system, c):
    if c is BOTTOM:
        return "0"

    def fmt(g):
        if system.is_type_a():
            return "".join(str(v) for v in system.one_line(g))
        return "-".join(str(s) for s in system.reduced_word(g)) or "e"

    return "%s|%s|%s" % tuple(fmt(g) for g in c)


def qj_dot(qj):
    p = qj.poset
    lines = ["digraph qj {", "  rankdir=BT;"]
    for i in range(p.n):
        lines.append('  n%d [label="%s"];' % (i, _cell_str(qj.system, p.labels[i])))
    for hi, lo in p.covers:
        lines.append(
            '  n%d -> n%d [label="%s (T%d)"];'
            % (lo, hi, label_str(qj, (hi, lo)), qj.cover_types[(hi, lo)])
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
