"""Total orders on the reflection set T with Dyer's dihedral property.

A total order on T qualifies when, inside every dihedral reflection
subgroup, the induced order is one of the two end-to-end sweeps
r, rsr, rsrsr, ..., srs, s.  Such orders arise as the sequence of prefix
conjugates t_k = s_{i_1} ... s_{i_{k-1}} s_{i_k} s_{i_{k-1}} ... s_{i_1}
of a reduced word for the longest element, which is how this module
builds them.
"""

from __future__ import annotations

from .coxeter import CoxeterSystem


class NotATotalOrderOnTError(ValueError):
    """Candidate sequence is not a permutation of the reflection set."""


class NotReducedForW0Error(ValueError):
    """Word is not a reduced word of the longest element."""


class ReflectionOrder:
    """A verified-shape total order on T; use is_reflection_order to vet it."""

    def __init__(self, system: CoxeterSystem, refls):
        refls = tuple(refls)
        if sorted(refls) != sorted(system.reflections):
            raise NotATotalOrderOnTError(
                "sequence must list every reflection exactly once")
        self.system = system
        self.refls = refls
        self.pos = {t: k for k, t in enumerate(refls)}

    def key(self, t: int) -> int:
        return self.pos[t]

    def reversed(self) -> "ReflectionOrder":
        return ReflectionOrder(self.system, self.refls[::-1])

    def is_wj_last(self, J) -> bool:
        sub = self.system.parabolic(J)
        inside = [t for t in self.system.reflections if t in sub.member]
        return set(self.refls[len(self.refls) - len(inside):]) == set(inside)

    def describe(self) -> list:
        return [self.system.refl_str(t) for t in self.refls]

    def __len__(self):
        return len(self.refls)

    def __iter__(self):
        return iter(self.refls)

    def __getitem__(self, k):
        return self.refls[k]

    def __eq__(self, other):
        return (isinstance(other, ReflectionOrder)
                and self.system is other.system and self.refls == other.refls)

    def __repr__(self):
        return f"ReflectionOrder({self.describe()})"


def order_from_reduced_word(system: CoxeterSystem, word) -> ReflectionOrder:
    """Prefix-conjugate order of a reduced word for w0."""
    word = tuple(word)
    if (len(word) != system.nroots
            or system.element_by_word(word) != system.w0):
        raise NotReducedForW0Error("need a reduced word of the longest element")
    refls = []
    prefix = 0
    for i in word:
        s = system.gens[i]
        refls.append(system.mult(system.mult(prefix, s), system.inverse(prefix)))
        prefix = system.mult(prefix, s)
    return ReflectionOrder(system, refls)


def order_with_wj_last(system: CoxeterSystem, J) -> ReflectionOrder:
    """Deterministic reflection order putting the reflections of W_J last.

    Take the lexicographically smallest reduced word of w0 that starts
    with a reduced word of u0 (so the W_J reflections come first), then
    reverse the resulting order.  Reversal preserves the dihedral
    property, since the two legal sweeps are reverses of each other.
    """
    sub = system.parabolic(J)
    head = system.reduced_word(sub.u0)
    tail = system.reduced_word(system.mult(sub.u0, system.w0))
    order = order_from_reduced_word(system, head + tail)
    assert all(t in sub.member for t in order.refls[:len(head)])
    return order.reversed()


def _dihedral_sweep(system: CoxeterSystem, refls):
    """The canonical sweep r, rsr, ..., srs, s of a dihedral reflection set.

    r and s are the subgroup's canonical generators: the reflections that
    keep every other positive root of the rank-2 subsystem positive.
    """
    root_of = {t: system.root_of_reflection(t) for t in refls}
    canon = [t for t in refls
             if all(system.root_image(t, r) >= 0
                    for u, r in root_of.items() if u != t)]
    assert len(canon) == 2, "dihedral subgroup must have two canonical generators"
    r, s = canon
    rot = system.mult(r, s)
    sweep = [r]
    while sweep[-1] != s:
        sweep.append(system.mult(rot, sweep[-1]))
    assert len(sweep) == len(refls)
    return sweep


def is_reflection_order(system: CoxeterSystem, candidate):
    """(True, None) if the order is legal, else (False, offending sweep).

    The offending value is the induced sequence of reflections of the
    first dihedral reflection subgroup whose sweep condition fails.
    """
    order = candidate if isinstance(candidate, ReflectionOrder) \
        else ReflectionOrder(system, candidate)
    seen = set()
    T = order.refls
    for a in range(len(T)):
        for b in range(a + 1, len(T)):
            t, tp = T[a], T[b]
            # reflections of <t, t'>: (tt')^k t for k = 0..m-1
            rot = system.mult(t, tp)
            refls = {t}
            cur = t
            while True:
                cur = system.mult(rot, cur)
                if cur in refls:
                    break
                refls.add(cur)
            key = frozenset(refls)
            if key in seen:
                continue
            seen.add(key)
            induced = sorted(refls, key=order.key)
            sweep = _dihedral_sweep(system, refls)
            if induced != sweep and induced != sweep[::-1]:
                return False, tuple(induced)
    return True, None
