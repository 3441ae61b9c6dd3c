"""EL-shellability of the Bruhat order under reflection orders, plus the
family of coset factorization lemmas that the cell poset construction
leans on.

Edges of the Bruhat order are labeled on the right: the edge x > y
carries the reflection x^-1 y.  Chains are read from the top down, and
a chain is increasing when its labels weakly increase in the chosen
reflection order.  All checks below are exhaustive over their stated
range and return a CheckReport rather than asserting, so callers can
both test and count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poset_topology import EdgeLabeling, GradedPoset, verify_el_labeling


@dataclass
class CheckReport:
    name: str
    ok: bool
    checked: int
    failures: list = field(default_factory=list)

    def note_failure(self, item, max_kept=5):
        self.ok = False
        if len(self.failures) < max_kept:
            self.failures.append(item)


def bruhat_poset(system):
    """The full Bruhat order of the group as a poset; element labels are
    the group's element ids."""
    if getattr(system, "_bruhat_poset", None) is None:
        covers = []
        for w in range(system.order):
            for v in system.bruhat_covers(w):
                covers.append((w, v))
        system._bruhat_poset = GradedPoset(range(system.order), covers)
    return system._bruhat_poset


def bruhat_interval(system, u, w):
    p = bruhat_poset(system)
    return p.interval(p.id_of(u), p.id_of(w))


def reflection_labeling(system, order, poset):
    """Dyer's labeling of a Bruhat (sub)poset: edge x > y gets x^-1 y,
    compared through the given reflection order."""
    labels = {}
    for hi, lo in poset.covers:
        x, y = poset.labels[hi], poset.labels[lo]
        labels[(hi, lo)] = system.mult(system.inverse(x), y)
    return EdgeLabeling(labels, key=order.key)


def check_el(system, order, poset=None):
    """Every interval of the Bruhat order has exactly one increasing
    maximal chain, and it is lexicographically first."""
    p = poset if poset is not None else bruhat_poset(system)
    rep = verify_el_labeling(p, reflection_labeling(system, order, p))
    out = CheckReport("el", rep.ok, rep.intervals_checked)
    out.failures = rep.failures
    return out


def check_diamond(system, order):
    """In every length-two interval [u, w] one middle element gives a
    decreasing chain and the other an increasing one, with the increasing
    chain lexicographically smaller on top and larger on the bottom."""
    p = bruhat_poset(system)
    inv = system.inverse
    mul = system.mult
    report = CheckReport("diamond", True, 0)
    for w in range(system.order):
        # elements two ranks down, reached through covers
        seconds = {}
        for x in system.bruhat_covers(w):
            for u in system.bruhat_covers(x):
                seconds.setdefault(u, []).append(x)
        for u, middles in seconds.items():
            report.checked += 1
            if len(middles) != 2:
                report.note_failure((u, w, "middles", len(middles)))
                continue
            increasing = []
            decreasing = []
            tops = {}
            bottoms = {}
            for x in middles:
                top = order.key(mul(inv(w), x))
                bottom = order.key(mul(inv(x), u))
                tops[x], bottoms[x] = top, bottom
                if bottom > top:
                    increasing.append(x)
                elif bottom < top:
                    decreasing.append(x)
            if len(increasing) != 1 or len(decreasing) != 1:
                report.note_failure((u, w, "split", len(increasing), len(decreasing)))
                continue
            y, x = increasing[0], decreasing[0]
            if not (tops[y] < tops[x] and bottoms[x] < bottoms[y]):
                report.note_failure((u, w, "order", tops, bottoms))
    return report


def interval_chains_with_words(system, order, u, w):
    """All maximal chains of [u, w], top-down, with their label words."""
    p = bruhat_interval(system, u, w)
    lab = reflection_labeling(system, order, p)
    out = []
    for chain in p.maximal_chains():
        word = tuple(
            lab.key_of(chain[i], chain[i + 1]) for i in range(len(chain) - 1)
        )
        out.append(([p.labels[v] for v in chain], word))
    return out


def increasing_chain(system, order, u, w):
    """The unique increasing maximal chain of [u, w], as element ids read
    from w down to u, together with its label word."""
    found = [
        (chain, word)
        for chain, word in interval_chains_with_words(system, order, u, w)
        if all(word[i] <= word[i + 1] for i in range(len(word) - 1))
    ]
    if len(found) != 1:
        raise ValueError("expected one increasing chain, found %d" % len(found))
    return found[0]


# ---- coset factorization lemmas ----------------------------------------
#
# Throughout, J is a set of simple generators, reps are the minimal
# coset representatives, and proj is the order preserving projection
# onto them.  The reflection order is expected to put reflections of
# W_J last; the checks that depend on the order say so.


def _coset_cover_pairs(system, J):
    """Triples (w, z, w') where w is a minimal representative, z is
    covered by w, and w' is the projection of z."""
    reps = set(system.min_coset_reps(J))
    for w in reps:
        for z in system.bruhat_covers(w):
            wp, _ = system.parabolic_factor(z, J)
            yield w, z, wp


def check_tail_labels(system, J, order):
    """After stepping from w down to w'v, any way of continuing down to
    w' uses labels strictly greater than the first one (W_J-last order)."""
    report = CheckReport("tail_labels", True, 0)
    inv, mul = system.inverse, system.mult
    for w, z, wp in _coset_cover_pairs(system, J):
        lam = order.key(mul(inv(w), z))
        for chain, word in interval_chains_with_words(system, order, wp, z):
            report.checked += 1
            if any(k <= lam for k in word):
                report.note_failure((w, z, wp, word))
    return report


def check_increasing_chain_start(system, J, order):
    """The unique increasing chain from w down to w' starts along the
    edge from w to w'v."""
    report = CheckReport("increasing_chain_start", True, 0)
    inv, mul = system.inverse, system.mult
    for w, z, wp in _coset_cover_pairs(system, J):
        lam = order.key(mul(inv(w), z))
        report.checked += 1
        chain, word = increasing_chain(system, order, wp, w)
        if word[0] != lam or chain[1] != z:
            report.note_failure((w, z, wp, word))
    return report


def check_unique_cover_in_coset(system, J):
    """Among the elements covered by a minimal representative w, at most
    one lies in any given coset w' W_J."""
    report = CheckReport("unique_cover_in_coset", True, 0)
    reps = system.min_coset_reps(J)
    for w in reps:
        seen = {}
        for z in system.bruhat_covers(w):
            wp, _ = system.parabolic_factor(z, J)
            seen[wp] = seen.get(wp, 0) + 1
        for wp, count in seen.items():
            if wp == w:
                continue
            report.checked += 1
            if count > 1:
                report.note_failure((w, wp, count))
    return report


def check_cover_factorization(system, J):
    """If w'u is covered by wv (w', w minimal representatives, u, v in
    W_J) then u = rv with lengths adding."""
    report = CheckReport("cover_factorization", True, 0)
    park = system.parabolic(J)
    reps = system.min_coset_reps(J)
    rep_set = set(reps)
    for wv in range(system.order):
        w, v = system.parabolic_factor(wv, J)
        for zu in system.bruhat_covers(wv):
            wp, u = system.parabolic_factor(zu, J)
            if wp == w or wp not in rep_set or w not in rep_set:
                continue
            report.checked += 1
            r = system.mult(u, system.inverse(v))
            if r not in park.elements:
                report.note_failure((wv, zu, "r outside subgroup"))
            elif system.length(u) != system.length(r) + system.length(v):
                report.note_failure((wv, zu, "lengths do not add"))
    return report


def check_unique_covered_in_coset(system, J):
    """wv covers at most one element of the form w'u for each fixed
    minimal representative w' below w."""
    report = CheckReport("unique_covered_in_coset", True, 0)
    for wv in range(system.order):
        seen = {}
        for zu in system.bruhat_covers(wv):
            wp, _ = system.parabolic_factor(zu, J)
            seen[wp] = seen.get(wp, 0) + 1
        w, _ = system.parabolic_factor(wv, J)
        for wp, count in seen.items():
            if wp == w:
                continue
            report.checked += 1
            if count > 1:
                report.note_failure((wv, wp, count))
    return report


def check_unique_covering_in_coset(system, J):
    """w'u is covered by at most one element of the form wv for each
    fixed minimal representative w above w'."""
    report = CheckReport("unique_covering_in_coset", True, 0)
    p = bruhat_poset(system)
    for zu in range(system.order):
        wp, _ = system.parabolic_factor(zu, J)
        seen = {}
        for wv in p.upper_covers(p.id_of(zu)):
            w, _ = system.parabolic_factor(p.labels[wv], J)
            seen[w] = seen.get(w, 0) + 1
        for w, count in seen.items():
            if w == wp:
                continue
            report.checked += 1
            if count > 1:
                report.note_failure((zu, w, count))
    return report


def lemma_suite(system, J, order):
    """Run every coset factorization check for one parabolic subset."""
    reports = [
        check_tail_labels(system, J, order),
        check_increasing_chain_start(system, J, order),
        check_unique_cover_in_coset(system, J),
        check_cover_factorization(system, J),
        check_unique_covered_in_coset(system, J),
        check_unique_covering_in_coset(system, J),
    ]
    return {r.name: r for r in reports}
