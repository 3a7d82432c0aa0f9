"""Partition-based abstraction of argumentation frameworks.

A :class:`Partition` clusters arguments into named blocks. The quotient
framework has one argument per block and lifts attacks existentially: block
``B1`` attacks ``B2`` when some member of ``B1`` attacks some member of ``B2``.
``alpha`` maps a set of arguments to the blocks it touches and ``gamma`` maps
block names back to the union of their members; the two form a Galois
insertion between the powerset lattices of arguments and of blocks.

An abstraction is *faithful* for a semantics when the quotient's extensions
are exactly the alpha-images of the concrete extensions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .af import ArgumentationFramework, check_identifier
from .errors import (
    BoundExceededError,
    CarrierMismatchError,
    InvalidIdentifierError,
    MembershipError,
    NoSplittableBlockError,
    PartitionError,
    StaleWitnessError,
)
from .order import GALOIS_PAIR_BOUND, FinitePoset, GaloisPair, GaloisReport, check_galois
from .semantics import ExtensionSet, SemanticsKind, canonical_key, enumerate_extensions

GALOIS_EXHAUSTIVE_BOUND = 12
SEARCH_EXHAUSTIVE_BOUND = 8

Enumerator = Callable[[ArgumentationFramework, SemanticsKind], ExtensionSet]


@dataclass(frozen=True)
class Partition:
    """Named, disjoint, covering blocks, ordered by smallest member."""

    blocks: tuple[tuple[str, frozenset[str]], ...]

    def __post_init__(self):
        blocks = tuple(sorted(((n, frozenset(m)) for n, m in self.blocks), key=lambda b: min(b[1])))
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_by_name", dict(blocks))
        object.__setattr__(self, "_block_of", {a: n for n, m in blocks for a in m})

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.blocks)

    @property
    def universe(self) -> frozenset[str]:
        return frozenset(self._block_of)

    def members(self, name: str) -> frozenset[str]:
        try:
            return self._by_name[name]
        except KeyError:
            raise MembershipError(name, "block names") from None

    def block_of(self, arg: str) -> str:
        try:
            return self._block_of[arg]
        except KeyError:
            raise MembershipError(arg, "partitioned arguments") from None

    def is_identity(self) -> bool:
        return all(len(m) == 1 for _, m in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def as_dict(self) -> dict[str, list[str]]:
        return {n: sorted(m) for n, m in self.blocks}


def _check_block_name(name):
    try:
        check_identifier(name, "block")
    except InvalidIdentifierError as exc:
        raise PartitionError(str(exc), witness=name) from None
    if ":" in name:
        raise PartitionError(f"block name {name!r} may not contain ':'", witness=name)


def build_partition(af: ArgumentationFramework,
                    named_blocks: Mapping[str, Iterable[str]] | Iterable[tuple[str, Iterable[str]]],
                    require_conflict_free: bool = False) -> Partition:
    """Validate named blocks against ``af`` and return the partition.

    ``named_blocks`` may be a mapping or a sequence of ``(name, members)``
    pairs; the latter lets duplicate names be reported rather than silently
    merged.
    """
    items = list(named_blocks.items()) if isinstance(named_blocks, Mapping) else list(named_blocks)
    owner = {}
    names = set()
    blocks = []
    for name, members in items:
        _check_block_name(name)
        if name in names:
            raise PartitionError(f"duplicate block name {name!r}", witness=name)
        names.add(name)
        members = list(members)
        if not members:
            raise PartitionError(f"block {name!r} is empty", witness=name)
        for a in members:
            if a not in af:
                raise PartitionError(f"block {name!r} names unknown argument {a!r}", witness=a)
            if a in owner and owner[a] != name:
                raise PartitionError(f"argument {a!r} appears in blocks {owner[a]!r} and {name!r}", witness=a)
            owner[a] = name
        blocks.append((name, frozenset(members)))
    for a in af.args:
        if a not in owner:
            raise PartitionError(f"argument {a!r} is not covered by any block", witness=a)
    p = Partition(tuple(blocks))
    if require_conflict_free:
        for a, b in af.attacks:
            if owner[a] == owner[b]:
                raise PartitionError(f"block {owner[a]!r} contains the attack {a} -> {b}", witness=(a, b))
    return p


def auto_name(members: Iterable[str]) -> str:
    return "+".join(sorted(members))


def partition_from_blocks(af: ArgumentationFramework, blocks: Iterable[Iterable[str]]) -> Partition:
    """Build a partition with generated names: a singleton keeps its argument's id."""
    blocks = sorted((frozenset(b) for b in blocks), key=min)
    taken = set()
    named = []
    for b in blocks:
        name = auto_name(b)
        base, k = name, 1
        while name in taken:
            k += 1
            name = f"{base}~{k}"
        taken.add(name)
        named.append((name, b))
    return build_partition(af, named)


def identity_partition(af: ArgumentationFramework) -> Partition:
    return partition_from_blocks(af, ([a] for a in af.args))


def single_block_partition(af: ArgumentationFramework) -> Partition:
    return partition_from_blocks(af, [af.args]) if af.args else Partition(())


def _check_belongs(af, p):
    if p.universe != af.arg_set:
        raise CarrierMismatchError("partition does not cover exactly the framework's arguments")


# ---------------------------------------------------------------- quotient

@dataclass(frozen=True)
class QuotientAF:
    base: ArgumentationFramework
    partition: Partition
    abstract_af: ArgumentationFramework


def quotient_af(af: ArgumentationFramework, p: Partition) -> QuotientAF:
    _check_belongs(af, p)
    lifted = {(p._block_of[a], p._block_of[b]) for a, b in af.attacks}
    labels = {n: "{" + ",".join(sorted(m)) + "}" for n, m in p.blocks}
    return QuotientAF(af, p, ArgumentationFramework(p.names, lifted, labels))


def quotient_edge_violations(q: QuotientAF) -> list[tuple[str, str]]:
    """Abstract attacks lacking a concrete witness, plus concrete attacks whose lift is missing."""
    p = q.partition
    lifted = {(p.block_of(a), p.block_of(b)) for a, b in q.base.attacks}
    present = set(q.abstract_af.attacks)
    return sorted(present ^ lifted)


def alpha(p: Partition, s: Iterable[str]) -> frozenset[str]:
    """The blocks that ``s`` touches."""
    return frozenset(p.block_of(a) for a in s)


def gamma(p: Partition, t: Iterable[str]) -> frozenset[str]:
    """Union of the named blocks."""
    out = set()
    for name in t:
        out |= p.members(name)
    return frozenset(out)


# ---------------------------------------------------------------- Galois connection

def galois_pair(p: Partition) -> GaloisPair:
    """Explicit alpha/gamma tables between the two powerset lattices."""
    size = (1 << len(p.universe)) * (1 << len(p))
    if size > GALOIS_PAIR_BOUND:
        raise BoundExceededError(size, GALOIS_PAIR_BOUND, "Galois pair space")
    concrete = FinitePoset.powerset(p.universe)
    abstract = FinitePoset.powerset(p.names)
    alpha_table = {x: alpha(p, x) for x in concrete.carrier}
    gamma_table = {t: gamma(p, t) for t in abstract.carrier}
    return GaloisPair(concrete, abstract, alpha_table, gamma_table)


def partition_galois(p: Partition, exhaustive_bound: int = GALOIS_EXHAUSTIVE_BOUND,
                     samples: int = 2000, seed: int = 0) -> GaloisReport:
    """Check the Galois laws for ``p``.

    Exhaustive when the argument count is within ``exhaustive_bound``;
    otherwise ``samples`` random (set, block-set) pairs are checked on bitmasks
    and the report is marked ``sampled``.
    """
    if len(p.universe) <= exhaustive_bound:
        return check_galois(galois_pair(p))
    return _sampled_galois(p, samples, seed)


def _sampled_galois(p, samples, seed):
    args = sorted(p.universe)
    names = list(p.names)
    bit = {a: 1 << i for i, a in enumerate(args)}
    block_mask = [sum(bit[a] for a in p.members(n)) for n in names]
    n, k = len(args), len(names)

    def alpha_m(s):
        return sum(1 << j for j, bm in enumerate(block_mask) if bm & s)

    def gamma_m(t):
        out = 0
        for j in range(k):
            if t >> j & 1:
                out |= block_mask[j]
        return out

    def sub(x, y):
        return x & ~y == 0

    def decode_c(s):
        return frozenset(a for a in args if bit[a] & s)

    def decode_a(t):
        return frozenset(names[j] for j in range(k) if t >> j & 1)

    rng = random.Random(seed)
    cx = {}

    def note(law, witness):
        cx.setdefault(law, [])
        if len(cx[law]) < 3:
            cx[law].append(witness)

    for _ in range(samples):
        s, s2, t, t2 = rng.getrandbits(n), rng.getrandbits(n), rng.getrandbits(k), rng.getrandbits(k)
        if sub(alpha_m(s), t) != sub(s, gamma_m(t)):
            note("adjunction", (decode_c(s), decode_a(t)))
        lo, hi = s & s2, s | s2
        if not sub(alpha_m(lo), alpha_m(hi)):
            note("alpha_monotone", (decode_c(lo), decode_c(hi)))
        tlo, thi = t & t2, t | t2
        if not sub(gamma_m(tlo), gamma_m(thi)):
            note("gamma_monotone", (decode_a(tlo), decode_a(thi)))
        if not sub(s, gamma_m(alpha_m(s))):
            note("extensive", (decode_c(s), decode_c(gamma_m(alpha_m(s)))))
        back = alpha_m(gamma_m(t))
        if not sub(back, t):
            note("reductive", (decode_a(t), decode_a(back)))
        if back != t:
            note("insertion", (decode_a(t), decode_a(back)))

    return GaloisReport(
        adjunction_holds="adjunction" not in cx,
        alpha_monotone="alpha_monotone" not in cx,
        gamma_monotone="gamma_monotone" not in cx,
        extensive_holds="extensive" not in cx,
        reductive_holds="reductive" not in cx,
        insertion_holds="insertion" not in cx,
        counterexamples=cx,
        sampled=True,
        checked_pairs=samples,
    )


# ---------------------------------------------------------------- faithfulness

@dataclass(frozen=True)
class FaithfulnessReport:
    semantics: SemanticsKind
    concrete: tuple[frozenset[str], ...]
    abstract: tuple[frozenset[str], ...]
    image: tuple[frozenset[str], ...]
    spurious: tuple[frozenset[str], ...]
    lost: tuple[frozenset[str], ...]

    @property
    def sound(self) -> bool:
        return not self.lost

    @property
    def faithful(self) -> bool:
        return self.sound and not self.spurious


def _family(sets):
    return tuple(sorted(set(sets), key=canonical_key))


def classify(af: ArgumentationFramework, p: Partition, kind: SemanticsKind | str,
             enumerator: Enumerator = enumerate_extensions,
             concrete: ExtensionSet | None = None) -> FaithfulnessReport:
    """Compare the concrete extensions' alpha-images with the quotient's extensions.

    ``concrete`` may carry precomputed concrete extensions (search loops reuse
    them across candidate partitions).
    """
    kind = SemanticsKind(kind)
    if concrete is None:
        concrete = enumerator(af, kind)
    q = quotient_af(af, p)
    abstract = set(enumerator(q.abstract_af, kind))
    image = {e: alpha(p, e) for e in concrete}
    return FaithfulnessReport(
        semantics=kind,
        concrete=_family(concrete),
        abstract=_family(abstract),
        image=_family(image.values()),
        spurious=_family(abstract - set(image.values())),
        lost=_family(e for e, img in image.items() if img not in abstract),
    )


def witnesses(report: FaithfulnessReport, p: Partition) -> list[frozenset[str]]:
    """Abstract sets usable as refinement witnesses: spurious extensions, then images of lost ones."""
    out = list(report.spurious)
    for e in report.lost:
        img = alpha(p, e)
        if img not in out:
            out.append(img)
    return out


def refine(af: ArgumentationFramework, p: Partition, witness: Iterable[str], kind: SemanticsKind | str,
           enumerator: Enumerator = enumerate_extensions, report: FaithfulnessReport | None = None) -> Partition:
    """Split one block so the partition becomes strictly finer.

    The block chosen is the canonically first non-singleton block named in
    ``witness``; when the witness names none (for example the empty set), the
    canonically first non-singleton block overall. Its smallest argument moves
    into a fresh singleton block.
    """
    witness = frozenset(witness)
    if report is None:
        report = classify(af, p, kind, enumerator)
    if witness not in witnesses(report, p):
        raise StaleWitnessError(f"{sorted(witness)} is neither spurious nor the image of a lost extension")
    splittable = [(n, m) for n, m in p.blocks if len(m) > 1]
    if not splittable:
        raise NoSplittableBlockError("partition is already the identity")
    named = [b for b in splittable if b[0] in witness]
    name, members = (named or splittable)[0]

    head = min(members)
    rest = members - {head}
    taken = set(p.names) - {name}
    rest_name = auto_name(rest) if name == auto_name(members) else name
    head_name = head
    k = 1
    while head_name in taken or head_name == rest_name:
        k += 1
        head_name = f"{head}~{k}"
    taken.add(head_name)
    base, k = rest_name, 1
    while rest_name in taken:
        k += 1
        rest_name = f"{base}~{k}"
    blocks = [(n, m) for n, m in p.blocks if n != name] + [(head_name, {head}), (rest_name, rest)]
    return build_partition(af, blocks)


def refinement_loop(af: ArgumentationFramework, p: Partition, kind: SemanticsKind | str,
                    enumerator: Enumerator = enumerate_extensions) -> list[tuple[Partition, FaithfulnessReport]]:
    """Classify and refine until faithful; returns each visited partition with its report."""
    kind = SemanticsKind(kind)
    concrete = enumerator(af, kind)
    trail = []
    while True:
        report = classify(af, p, kind, enumerator, concrete)
        trail.append((p, report))
        if report.faithful:
            return trail
        p = refine(af, p, witnesses(report, p)[0], kind, enumerator, report)


# ---------------------------------------------------------------- coarsest faithful search

def set_partitions(items: Sequence[str]) -> Iterator[list[list[str]]]:
    """All set partitions of ``items`` as restricted-growth strings, in lexicographic order."""
    items = list(items)
    n = len(items)
    if n == 0:
        yield []
        return

    def grow(prefix, top):
        if len(prefix) == n:
            blocks = [[] for _ in range(top + 1)]
            for item, b in zip(items, prefix):
                blocks[b].append(item)
            yield blocks
            return
        for b in range(top + 2):
            yield from grow(prefix + [b], max(top, b))

    yield from grow([0], 0)


def all_partitions(af: ArgumentationFramework) -> Iterator[Partition]:
    for blocks in set_partitions(af.args):
        yield partition_from_blocks(af, blocks)


def _has_internal_attack(af, members):
    return any(af._targets[a] & members for a in members)


def coarsest_faithful(af: ArgumentationFramework, kind: SemanticsKind | str, mode: str = "greedy",
                      enumerator: Enumerator = enumerate_extensions,
                      exhaustive_bound: int = SEARCH_EXHAUSTIVE_BOUND,
                      require_conflict_free: bool = False) -> Partition:
    """Find a faithful partition with few blocks.

    ``exhaustive`` sweeps every set partition by increasing block count and
    returns the first faithful one (lexicographic restricted-growth order
    within a block count), so no faithful partition has fewer blocks.
    ``greedy`` starts from the identity and keeps applying the first merge of
    two blocks (pairs in canonical order) that stays faithful.
    """
    kind = SemanticsKind(kind)
    concrete = enumerator(af, kind)

    def ok(blocks):
        if require_conflict_free and any(_has_internal_attack(af, b) for b in blocks):
            return None
        p = partition_from_blocks(af, blocks)
        return p if classify(af, p, kind, enumerator, concrete).faithful else None

    if mode == "exhaustive":
        if len(af.args) > exhaustive_bound:
            raise BoundExceededError(len(af.args), exhaustive_bound, "exhaustive partition search")
        by_size = {}
        for blocks in set_partitions(af.args):
            by_size.setdefault(len(blocks), []).append(blocks)
        for size in sorted(by_size):
            for blocks in by_size[size]:
                p = ok([frozenset(b) for b in blocks])
                if p is not None:
                    return p
        raise AssertionError("identity partition must be faithful")
    if mode != "greedy":
        raise ValueError(f"unknown search mode {mode!r}")

    blocks = [frozenset([a]) for a in af.args]
    best = partition_from_blocks(af, blocks)
    merged = True
    while merged:
        merged = False
        for i, j in itertools.combinations(range(len(blocks)), 2):
            trial = sorted([b for k, b in enumerate(blocks) if k not in (i, j)] + [blocks[i] | blocks[j]], key=min)
            p = ok(trial)
            if p is not None:
                blocks, best, merged = trial, p, True
                break
    return best


# ---------------------------------------------------------------- partition files

def parse_partition(text: str, af: ArgumentationFramework, source: str | None = None,
                    require_conflict_free: bool = False) -> Partition:
    """Read ``Name: id id ...`` lines; blank lines and ``#`` comments are skipped."""
    items = []
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition(":")
        name = name.strip()
        if not sep or not name:
            raise PartitionError(f"expected 'Name: id id ...', got {raw.strip()!r}", line=lineno, source=source)
        items.append((name, rest.split()))
        lines[name] = lineno
        for a in rest.split():
            lines[a] = lineno
    try:
        return build_partition(af, items, require_conflict_free)
    except PartitionError as exc:
        w = exc.witness
        lineno = lines.get(w[0] if isinstance(w, tuple) else w)
        raise PartitionError(exc.detail, witness=w, line=lineno, source=source) from None


def format_partition(p: Partition) -> str:
    return "".join(f"{n}: {' '.join(sorted(m))}\n" for n, m in p.blocks)
