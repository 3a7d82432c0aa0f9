"""Argumentation framework data model, file formats and Dung primitives.

Arguments are plain strings. Every collection an :class:`ArgumentationFramework`
exposes is in canonical order (codepoint order on identifiers, which coincides
with byte order on their UTF-8 encoding), so serialization is reproducible.
Argument sets are passed around as ``frozenset`` and sorted only on output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    InvalidIdentifierError,
    MembershipError,
    ParseError,
    UndeclaredArgumentError,
    UnknownArgumentError,
)

FORMATS = ("apx", "tgf")

_FORBIDDEN = re.compile(r"[\s(),]")


def check_identifier(ident: str, what: str = "argument") -> str:
    if not isinstance(ident, str) or not ident:
        raise InvalidIdentifierError(f"{what} identifier must be a nonempty string, got {ident!r}")
    if _FORBIDDEN.search(ident) or ident == "#":
        raise InvalidIdentifierError(f"{what} identifier {ident!r} contains a reserved character")
    return ident


@dataclass(frozen=True)
class ArgumentationFramework:
    """Finite set of arguments with a binary attack relation.

    Construction normalizes the inputs: ``args`` and ``attacks`` are
    deduplicated and sorted. Labels are free-text metadata and take no part in
    equality or in any algorithm.
    """

    args: tuple[str, ...]
    attacks: tuple[tuple[str, str], ...] = ()
    labels: Mapping[str, str] = field(default_factory=dict, compare=False, repr=False)

    def __init__(self, args: Iterable[str] = (), attacks: Iterable[tuple[str, str]] = (),
                 labels: Mapping[str, str] | None = None, lenient: bool = False):
        arg_set = {check_identifier(a) for a in args}
        attack_set = set()
        for a, b in attacks:
            for end in (a, b):
                if end not in arg_set:
                    if not lenient:
                        raise UndeclaredArgumentError(end)
                    arg_set.add(check_identifier(end))
            attack_set.add((a, b))
        labels = dict(labels or {})
        for a in labels:
            if a not in arg_set:
                raise UnknownArgumentError(a)
        object.__setattr__(self, "args", tuple(sorted(arg_set)))
        object.__setattr__(self, "attacks", tuple(sorted(attack_set)))
        object.__setattr__(self, "labels", labels)

        attackers = {a: set() for a in self.args}
        targets = {a: set() for a in self.args}
        for a, b in self.attacks:
            attackers[b].add(a)
            targets[a].add(b)
        object.__setattr__(self, "_attackers", {a: frozenset(s) for a, s in attackers.items()})
        object.__setattr__(self, "_targets", {a: frozenset(s) for a, s in targets.items()})
        object.__setattr__(self, "_arg_set", frozenset(self.args))

    def __len__(self):
        return len(self.args)

    def __contains__(self, arg):
        return arg in self._arg_set

    @property
    def arg_set(self) -> frozenset[str]:
        return self._arg_set

    def targets(self, a: str) -> frozenset[str]:
        """Arguments attacked by ``a``."""
        self._require(a)
        return self._targets[a]

    def argument_set(self, members: Iterable[str]) -> frozenset[str]:
        """Validate ``members`` against the argument set and freeze it."""
        s = frozenset(members)
        extra = s - self._arg_set
        if extra:
            raise MembershipError(min(extra), "argument set")
        return s

    def unattacked(self) -> frozenset[str]:
        return frozenset(a for a in self.args if not self._attackers[a])

    def _require(self, a):
        if a not in self._arg_set:
            raise UnknownArgumentError(a)


def attackers(af: ArgumentationFramework, a: str) -> frozenset[str]:
    af._require(a)
    return af._attackers[a]


def is_conflict_free(af: ArgumentationFramework, s: Iterable[str]) -> bool:
    s = af.argument_set(s)
    return not any(af._targets[a] & s for a in s)


def defends(af: ArgumentationFramework, s: Iterable[str], a: str) -> bool:
    """True iff every attacker of ``a`` is attacked by some member of ``s``."""
    s = af.argument_set(s)
    af._require(a)
    return all(af._attackers[b] & s for b in af._attackers[a])


def characteristic(af: ArgumentationFramework, s: Iterable[str]) -> frozenset[str]:
    """Dung's characteristic function: the arguments defended by ``s``."""
    s = af.argument_set(s)
    counter_attacked = set()
    for c in s:
        counter_attacked |= af._targets[c]
    return frozenset(a for a in af.args if af._attackers[a] <= counter_attacked)


# ---------------------------------------------------------------- parsing

_APX_FACT = re.compile(r"\s*(arg|att)\s*\(([^()]*)\)\s*\.")
_WS = re.compile(r"\s*")


def _parse_apx(text, lenient, source):
    declared = {}
    pending = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("%", 1)[0]
        pos = 0
        while True:
            pos = _WS.match(line, pos).end()
            if pos >= len(line):
                break
            m = _APX_FACT.match(line, pos)
            if m is None:
                raise ParseError(f"malformed fact near {line[pos:pos + 30]!r}", lineno, source)
            kind, inner = m.group(1), [t.strip() for t in m.group(2).split(",")]
            if kind == "arg":
                if len(inner) != 1 or not inner[0]:
                    raise ParseError(f"arg/1 expects one identifier, got {m.group(0).strip()!r}", lineno, source)
                declared.setdefault(inner[0], lineno)
            else:
                if len(inner) != 2 or not all(inner):
                    raise ParseError(f"att/2 expects two identifiers, got {m.group(0).strip()!r}", lineno, source)
                pending.append((inner[0], inner[1], lineno))
            pos = m.end()
    return _assemble(declared, pending, {}, lenient, source)


def _parse_tgf(text, lenient, source):
    declared = {}
    labels = {}
    pending = []
    in_edges = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line == "#":
            if in_edges:
                raise ParseError("second '#' separator", lineno, source)
            in_edges = True
            continue
        parts = line.split(None, 2 if in_edges else 1)
        if in_edges:
            if len(parts) < 2:
                raise ParseError(f"edge line needs two identifiers, got {line!r}", lineno, source)
            pending.append((parts[0], parts[1], lineno))
        else:
            declared.setdefault(parts[0], lineno)
            if len(parts) > 1:
                labels[parts[0]] = parts[1]
    return _assemble(declared, pending, labels, lenient, source)


def _assemble(declared, pending, labels, lenient, source):
    args = set(declared)
    for a, b, lineno in pending:
        for end in (a, b):
            if end not in args:
                if not lenient:
                    raise UndeclaredArgumentError(end, lineno, source)
                args.add(end)
    try:
        return ArgumentationFramework(args, [(a, b) for a, b, _ in pending], labels)
    except InvalidIdentifierError as exc:
        bad = next((ln for a, ln in declared.items() if a in str(exc)), None)
        raise ParseError(str(exc), bad, source) from exc


def parse(text: str, format: str = "apx", lenient: bool = False, source: str | None = None) -> ArgumentationFramework:
    """Parse an APX or TGF document.

    In strict mode (the default) an attack on an undeclared argument raises
    :class:`UndeclaredArgumentError`; ``lenient=True`` declares it implicitly.
    Repeated declarations are harmless.
    """
    if format == "apx":
        return _parse_apx(text, lenient, source)
    if format == "tgf":
        return _parse_tgf(text, lenient, source)
    raise ValueError(f"unsupported input format {format!r}")


def _dot_quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def serialize(af: ArgumentationFramework, format: str = "apx", name: str = "af") -> str:
    if format == "apx":
        lines = [f"arg({a})." for a in af.args]
        lines += [f"att({a},{b})." for a, b in af.attacks]
    elif format == "tgf":
        lines = [f"{a} {af.labels[a]}" if af.labels.get(a) else a for a in af.args]
        lines.append("#")
        lines += [f"{a} {b}" for a, b in af.attacks]
    elif format == "dot":
        lines = [f"digraph {_dot_quote(name)} {{"]
        for a in af.args:
            text = af.labels.get(a)
            attrs = f" [tooltip={_dot_quote(text)}]" if text else ""
            lines.append(f"  {_dot_quote(a)}{attrs};")
        lines += [f"  {_dot_quote(a)} -> {_dot_quote(b)};" for a, b in af.attacks]
        lines.append("}")
    else:
        raise ValueError(f"unsupported output format {format!r}")
    return "\n".join(lines) + "\n" if lines else ""


def read_af(path, format: str | None = None, lenient: bool = False) -> ArgumentationFramework:
    """Load an AF from disk; the format defaults to the file extension (``.tgf`` or APX)."""
    path = str(path)
    if format is None:
        format = "tgf" if path.lower().endswith(".tgf") else "apx"
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), format, lenient=lenient, source=path)
