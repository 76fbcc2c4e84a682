"""Plain-text domain and SWF files.

Both start with a header::

    alternatives: a b c
    voters: 2
    domain: full-linear        # optional; full-weak or full-linear

A domain file without a ``domain:`` line lists one profile per line.  An SWF
file lists ``<profile> -> <chain>`` lines, e.g. ``a>b>c ; c>b>a -> a>b~c``,
covering the domain exactly once.  An outcome that is not a weak order (a
majority cycle, say) is written as its pair set, ``{a>=b, b>=c, c>=a}``.
Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .orders import AlternativeSet, Relation, format_chain, is_weak_order, parse_chain
from .profiles import (
    EXPLICIT,
    FULL_LINEAR,
    FULL_WEAK,
    Domain,
    Profile,
    explicit,
    format_profile,
    full_linear,
    full_weak,
)
from .swf import Swf


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<string>"):
        self.message, self.line, self.column, self.source = message, line, column, source
        super().__init__(f"{source}:{line}:{column}: {message}")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield no, raw, body


def _parse_header(lines, source):
    header = {}
    rest = []
    for no, raw, body in lines:
        key, sep, value = body.partition(":")
        key = key.strip()
        if sep and key in ("alternatives", "voters", "domain"):
            if key in header:
                raise ParseError(f"duplicate header field {key!r}", no, 1, source)
            header[key] = (value.strip(), no, raw.index(":") + 2)
        else:
            rest.append((no, raw, body))
    if "alternatives" not in header:
        raise ParseError("missing 'alternatives:' header", 1, 1, source)
    if "voters" not in header:
        raise ParseError("missing 'voters:' header", 1, 1, source)
    value, no, col = header["alternatives"]
    try:
        carrier = AlternativeSet(tuple(value.split()))
    except ValueError as exc:
        raise ParseError(str(exc), no, col, source) from None
    value, no, col = header["voters"]
    try:
        m = int(value)
        if m < 1:
            raise ValueError
    except ValueError:
        raise ParseError(f"voters must be a positive integer, got {value!r}", no, col, source) from None
    kind = EXPLICIT
    if "domain" in header:
        value, no, col = header["domain"]
        if value not in (FULL_WEAK, FULL_LINEAR):
            raise ParseError(f"unknown domain {value!r}; expected full-weak or full-linear", no, col, source)
        kind = value
    return carrier, m, kind, rest


def _parse_profile_at(text: str, carrier, m, no, raw, source) -> Profile:
    parts = text.split(";")
    entries = []
    offset = raw.find(text.strip()) if text.strip() else 0
    for part in parts:
        col = raw.find(part.strip(), offset) + 1 if part.strip() else offset + 1
        try:
            entries.append(parse_chain(part, carrier))
        except ValueError as exc:
            raise ParseError(str(exc), no, max(col, 1), source) from None
        offset += len(part) + 1
    if len(entries) != m:
        raise ParseError(f"expected {m} ballots, found {len(entries)}", no, 1, source)
    return Profile(entries)


def _full_domain(carrier, m, kind) -> Domain:
    return full_weak(carrier, m) if kind == FULL_WEAK else full_linear(carrier, m)


def parse_domain(text: str, source: str = "<string>") -> Domain:
    carrier, m, kind, rest = _parse_header(_lines(text), source)
    if kind != EXPLICIT:
        if rest:
            no, _, _ = rest[0]
            raise ParseError("profile lines are not allowed with a full domain", no, 1, source)
        return _full_domain(carrier, m, kind)
    profs = []
    seen = set()
    for no, raw, body in rest:
        p = _parse_profile_at(body, carrier, m, no, raw, source)
        if p in seen:
            raise ParseError(f"duplicate profile {format_profile(p)}", no, 1, source)
        seen.add(p)
        profs.append(p)
    if not profs:
        raise ParseError("explicit domain lists no profiles", 1, 1, source)
    return explicit(carrier, m, profs)


def format_outcome(r: Relation) -> str:
    if is_weak_order(r):
        return format_chain(r)
    return "{" + ", ".join(f"{a}>={b}" for a, b in r.pairs()) + "}"


def parse_outcome(text: str, carrier: AlternativeSet) -> Relation:
    text = text.strip()
    if not text.startswith("{"):
        return parse_chain(text, carrier)
    if not text.endswith("}"):
        raise ValueError(f"unterminated pair set {text!r}")
    pairs = []
    for item in filter(None, (t.strip() for t in text[1:-1].split(","))):
        a, sep, b = item.partition(">=")
        if not sep:
            raise ValueError(f"expected 'x>=y' in pair set, got {item!r}")
        pairs.append((a.strip(), b.strip()))
    return Relation.from_pairs(carrier, pairs)


def parse_swf(text: str, source: str = "<string>") -> Swf:
    carrier, m, kind, rest = _parse_header(_lines(text), source)
    table = {}
    first_line = {}
    for no, raw, body in rest:
        lhs, arrow, rhs = body.partition("->")
        if not arrow:
            raise ParseError("expected '<profile> -> <chain>'", no, 1, source)
        p = _parse_profile_at(lhs, carrier, m, no, raw, source)
        col = raw.index("->") + 3 + len(rhs) - len(rhs.lstrip())
        try:
            r = parse_outcome(rhs, carrier)
        except ValueError as exc:
            raise ParseError(str(exc), no, col, source) from None
        if p in table:
            raise ParseError(f"duplicate profile (first on line {first_line[p]})", no, 1, source)
        table[p] = r
        first_line[p] = no
    if not table:
        raise ParseError("SWF file has no table lines", 1, 1, source)
    if kind == EXPLICIT:
        domain = explicit(carrier, m, table)
    else:
        domain = _full_domain(carrier, m, kind)
        for p, no in first_line.items():
            if p not in domain:
                raise ParseError(f"profile {format_profile(p)} is outside the {kind} domain", no, 1, source)
        missing = [p for p in domain.profiles if p not in table]
        if missing:
            raise ParseError(
                f"{len(missing)} profiles of the {kind} domain have no line, first: {format_profile(missing[0])}",
                len(text.splitlines()) or 1, 1, source,
            )
    try:
        return Swf(domain, table, allow_intransitive=not all(is_weak_order(r) for r in table.values()))
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1, source) from None


def _header(carrier: AlternativeSet, m: int, kind: str) -> list[str]:
    out = [f"alternatives: {' '.join(carrier.labels)}", f"voters: {m}"]
    if kind != EXPLICIT:
        out.append(f"domain: {kind}")
    return out


def dump_domain(d: Domain) -> str:
    lines = _header(d.carrier, d.m, d.kind)
    if d.kind == EXPLICIT:
        lines += [format_profile(p) for p in d.profiles]
    return "\n".join(lines) + "\n"


def dump_swf(s: Swf) -> str:
    lines = _header(s.carrier, s.m, s.domain.kind)
    lines += [f"{format_profile(p)} -> {format_outcome(r)}" for p, r in s.items()]
    return "\n".join(lines) + "\n"


def read_domain(path) -> Domain:
    path = Path(path)
    return parse_domain(path.read_text(encoding="ascii"), str(path))


def read_swf(path) -> Swf:
    path = Path(path)
    return parse_swf(path.read_text(encoding="ascii"), str(path))


def write_swf(s: Swf, path) -> None:
    Path(path).write_text(dump_swf(s), encoding="ascii")
