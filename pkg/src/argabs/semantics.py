"""Dung acceptability semantics.

``grounded`` runs the least-fixpoint iteration of the characteristic function
as a linear-time worklist. ``enumerate_extensions`` searches labellings with
constraint propagation. ``oracle_enumerate`` is a separate brute-force sweep
over every subset, written directly from the definitions on bitmasks; it
shares nothing with the labelling engine so the two can check each other.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Mapping

from .af import ArgumentationFramework, characteristic, is_conflict_free
from .errors import BoundExceededError

SOLVER_BOUND = int(os.environ.get("ARGABS_SOLVER_BOUND", "60"))
ORACLE_CAP = 20


class SemanticsKind(str, enum.Enum):
    GROUNDED = "grounded"
    ADMISSIBLE = "admissible"
    COMPLETE = "complete"
    PREFERRED = "preferred"
    STABLE = "stable"

    def __str__(self):
        return self.value


class Label(str, enum.Enum):
    IN = "IN"
    OUT = "OUT"
    UNDEC = "UNDEC"

    def __str__(self):
        return self.value


def canonical_key(s: Iterable[str]):
    members = sorted(s)
    return (len(members), members)


@dataclass(frozen=True)
class Labelling:
    assignment: Mapping[str, Label]

    def _with(self, label):
        return frozenset(a for a, lab in self.assignment.items() if lab is label)

    @property
    def in_set(self) -> frozenset[str]:
        return self._with(Label.IN)

    @property
    def out_set(self) -> frozenset[str]:
        return self._with(Label.OUT)

    @property
    def undec_set(self) -> frozenset[str]:
        return self._with(Label.UNDEC)

    def is_complete_for(self, af: ArgumentationFramework) -> bool:
        if set(self.assignment) != af.arg_set:
            return False
        for a in af.args:
            labs = [self.assignment[b] for b in af._attackers[a]]
            if Label.IN in labs:
                expected = Label.OUT
            elif all(lab is Label.OUT for lab in labs):
                expected = Label.IN
            else:
                expected = Label.UNDEC
            if self.assignment[a] is not expected:
                return False
        return True


@dataclass(frozen=True)
class ExtensionSet:
    semantics: SemanticsKind
    extensions: tuple[frozenset[str], ...]

    def __post_init__(self):
        ordered = tuple(sorted(set(self.extensions), key=canonical_key))
        object.__setattr__(self, "extensions", ordered)

    def __iter__(self):
        return iter(self.extensions)

    def __len__(self):
        return len(self.extensions)

    def __contains__(self, s):
        return frozenset(s) in self.extensions

    def as_lists(self) -> list[list[str]]:
        return [sorted(e) for e in self.extensions]


def grounded(af: ArgumentationFramework) -> frozenset[str]:
    """Least fixpoint of the characteristic function.

    Equivalent to iterating F from the empty set, but each argument is
    touched once: an argument goes IN when its last live attacker is knocked
    OUT, and an argument goes OUT as soon as an IN argument attacks it.
    """
    live = {a: len(af._attackers[a]) for a in af.args}
    todo = [a for a, n in live.items() if n == 0]
    accepted = set(todo)
    defeated = set()
    while todo:
        a = todo.pop()
        for b in af._targets[a]:
            if b in defeated:
                continue
            defeated.add(b)
            for c in af._targets[b]:
                live[c] -= 1
                if live[c] == 0 and c not in accepted and c not in defeated:
                    accepted.add(c)
                    todo.append(c)
    return frozenset(accepted)


# ---------------------------------------------------------------- labelling search

_IN, _OUT, _UNDEC = 1, 2, 4
_ALL = _IN | _OUT | _UNDEC
_TO_LABEL = {_IN: Label.IN, _OUT: Label.OUT, _UNDEC: Label.UNDEC}


class _Search:
    """Backtracking over per-argument label domains (bitsets of IN/OUT/UNDEC).

    mode "complete": IN iff all attackers OUT, OUT iff some attacker IN.
    mode "admissible": as complete, but UNDEC needs only that no attacker is
    IN; IN-sets of these labellings are exactly the admissible sets.
    mode "stable": complete with UNDEC removed.
    """

    def __init__(self, af, mode):
        self.n = len(af.args)
        idx = {a: i for i, a in enumerate(af.args)}
        self.names = af.args
        self.att = [[idx[b] for b in sorted(af._attackers[a])] for a in af.args]
        self.tgt = [[idx[b] for b in sorted(af._targets[a])] for a in af.args]
        self.complete = mode in ("complete", "stable")
        self.initial = (_IN | _OUT) if mode == "stable" else _ALL

    def _supported(self, dom, i):
        d = dom[i]
        att = self.att[i]
        if d & _IN and not all(dom[b] & _OUT for b in att):
            d &= ~_IN
        if d & _OUT and not any(dom[b] & _IN for b in att):
            d &= ~_OUT
        if d & _UNDEC:
            if any(dom[b] == _IN for b in att):
                d &= ~_UNDEC
            elif self.complete and not any(dom[b] & _UNDEC for b in att):
                d &= ~_UNDEC
        return d

    def _narrow_attackers(self, dom, i):
        # yields (attacker, new domain) implied by i's fixed label
        d = dom[i]
        att = self.att[i]
        if d == _IN:
            for b in att:
                yield b, dom[b] & _OUT
        elif d == _UNDEC:
            for b in att:
                yield b, dom[b] & ~_IN
            if self.complete:
                cands = [b for b in att if dom[b] & _UNDEC]
                if len(cands) == 1:
                    yield cands[0], dom[cands[0]] & _UNDEC
        elif d == _OUT:
            cands = [b for b in att if dom[b] & _IN]
            if len(cands) == 1:
                yield cands[0], dom[cands[0]] & _IN

    def propagate(self, dom, queue):
        pending = set(queue)
        queue = list(queue)
        while queue:
            i = queue.pop()
            pending.discard(i)
            changed = []
            d = self._supported(dom, i)
            if d != dom[i]:
                dom[i] = d
                changed.append(i)
            if not d:
                return False
            for b, nd in self._narrow_attackers(dom, i):
                if nd != dom[b]:
                    if not nd:
                        return False
                    dom[b] = nd
                    changed.append(b)
            for j in changed:
                for k in (j, *self.tgt[j], *self.att[j]):
                    if k not in pending:
                        pending.add(k)
                        queue.append(k)
        return True

    def legal(self, dom):
        for i in range(self.n):
            labs = [dom[b] for b in self.att[i]]
            if _IN in labs:
                want = (_OUT,)
            elif all(lab == _OUT for lab in labs):
                want = (_IN,) if self.complete else (_IN, _UNDEC)
            else:
                want = (_UNDEC,)
            if dom[i] not in want:
                return False
        return True

    def run(self):
        dom = [self.initial] * self.n
        if not self.propagate(dom, range(self.n)):
            return
        yield from self._branch(dom)

    def _branch(self, dom):
        free = [i for i in range(self.n) if dom[i] & (dom[i] - 1)]
        if not free:
            if self.legal(dom):
                yield tuple(dom)
            return
        i = min(free, key=lambda k: (bin(dom[k]).count("1"), k))
        for lab in (_IN, _OUT, _UNDEC):
            if dom[i] & lab:
                child = list(dom)
                child[i] = lab
                if self.propagate(child, [i, *self.tgt[i], *self.att[i]]):
                    yield from self._branch(child)


def _check_bound(af, bound):
    if len(af.args) > bound:
        raise BoundExceededError(len(af.args), bound, "argumentation framework")


def _labellings(af, mode, bound):
    _check_bound(af, bound)
    search = _Search(af, mode)
    for dom in search.run():
        yield Labelling({search.names[i]: _TO_LABEL[d] for i, d in enumerate(dom)})


def complete_labellings(af: ArgumentationFramework, bound: int | None = None) -> list[Labelling]:
    """All complete labellings, ordered canonically by their IN-sets."""
    found = list(_labellings(af, "complete", SOLVER_BOUND if bound is None else bound))
    return sorted(found, key=lambda lab: canonical_key(lab.in_set))


def _maximal(sets):
    sets = list(sets)
    return [s for s in sets if not any(s < t for t in sets)]


def enumerate_extensions(af: ArgumentationFramework, kind: SemanticsKind | str,
                         bound: int | None = None) -> ExtensionSet:
    kind = SemanticsKind(kind)
    bound = SOLVER_BOUND if bound is None else bound
    if kind is SemanticsKind.GROUNDED:
        return ExtensionSet(kind, (grounded(af),))
    mode = {SemanticsKind.ADMISSIBLE: "admissible", SemanticsKind.STABLE: "stable"}.get(kind, "complete")
    ins = [lab.in_set for lab in _labellings(af, mode, bound)]
    if kind is SemanticsKind.PREFERRED:
        ins = _maximal(set(ins))
    return ExtensionSet(kind, tuple(ins))


def verify(af: ArgumentationFramework, s: Iterable[str], kind: SemanticsKind | str,
           bound: int | None = None) -> bool:
    """Check ``s`` against the defining conditions of ``kind``.

    Admissible, complete and stable are polynomial. Grounded compares against
    the least fixpoint. Preferred checks completeness and then that no complete
    extension strictly contains ``s``, which needs enumeration under ``bound``.
    """
    kind = SemanticsKind(kind)
    s = af.argument_set(s)
    if kind is SemanticsKind.GROUNDED:
        return s == grounded(af)
    if not is_conflict_free(af, s):
        return False
    if kind is SemanticsKind.STABLE:
        hit = set(s)
        for a in s:
            hit |= af._targets[a]
        return hit == af.arg_set
    defended = characteristic(af, s)
    if not s <= defended:
        return False
    if kind is SemanticsKind.ADMISSIBLE:
        return True
    if s != defended:
        return False
    if kind is SemanticsKind.COMPLETE:
        return True
    return not any(s < e for e in enumerate_extensions(af, SemanticsKind.COMPLETE, bound))


# ---------------------------------------------------------------- brute-force oracle

def oracle_enumerate(af: ArgumentationFramework, kind: SemanticsKind | str) -> ExtensionSet:
    """Sweep all 2^n subsets checking each definition literally (n <= 20)."""
    kind = SemanticsKind(kind)
    n = len(af.args)
    if n > ORACLE_CAP:
        raise BoundExceededError(n, ORACLE_CAP, "oracle input")
    pos = {a: i for i, a in enumerate(af.args)}
    att_of = [0] * n  # bitmask of attackers of i
    hits = [0] * n    # bitmask of arguments i attacks
    for a, b in af.attacks:
        att_of[pos[b]] |= 1 << pos[a]
        hits[pos[a]] |= 1 << pos[b]
    full = (1 << n) - 1

    def attacked_by(s):
        out = 0
        i = 0
        while s:
            if s & 1:
                out |= hits[i]
            s >>= 1
            i += 1
        return out

    def defended_by(s):
        counter = attacked_by(s)
        return sum(1 << i for i in range(n) if att_of[i] & ~counter == 0)

    conflict_free, admissible, complete, stable = [], [], [], []
    for s in range(1 << n):
        out = attacked_by(s)
        if out & s:
            continue
        conflict_free.append(s)
        d = defended_by(s)
        if s & ~d == 0:
            admissible.append(s)
            if d == s:
                complete.append(s)
        if s | out == full:
            stable.append(s)

    if kind is SemanticsKind.ADMISSIBLE:
        chosen = admissible
    elif kind is SemanticsKind.COMPLETE:
        chosen = complete
    elif kind is SemanticsKind.STABLE:
        chosen = stable
    elif kind is SemanticsKind.PREFERRED:
        chosen = [s for s in admissible if not any(t != s and s & t == s for t in admissible)]
    else:
        least = [s for s in complete if all(s & t == s for t in complete)]
        chosen = least[:1]

    def decode(s):
        return frozenset(af.args[i] for i in range(n) if s >> i & 1)

    return ExtensionSet(kind, tuple(decode(s) for s in chosen))
