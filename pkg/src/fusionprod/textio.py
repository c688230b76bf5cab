"""Text formats: group definition files and fusion-system dumps.

Group files are line oriented::

    # the symmetric group on four points
    degree 4
    gen a (1 2 3 4)
    gen b (1 2)
    subgroup A4 = a*b, b*a
    subgroup Z = a^2

A word is a ``*``-separated product of generator names, each with an
optional integer exponent.  Dumps list every morphism of a system by its
images on the canonical generators of the domain; subgroups are written
``S<i>`` where ``i`` indexes the carrier's sorted subgroup list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .fusion import FusionSystem
from .groups import (
    FiniteGroup,
    GroupError,
    Morphism,
    Subgroup,
    build_group_from_permutations,
    morphism_from_generators,
    parse_cycles,
)


class ParseError(GroupError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")
_FACTOR = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)\s*(?:\^\s*(-?\d+))?\s*$")


@dataclass
class GroupFile:
    group: FiniteGroup
    degree: int
    generators: dict[str, int] = field(default_factory=dict)
    subgroups: dict[str, Subgroup] = field(default_factory=dict)

    def evaluate(self, word: str) -> int:
        """The element named by a word such as ``a*b^-1``."""
        G = self.group
        x = 0
        for part in word.split("*"):
            m = _FACTOR.match(part)
            if not m:
                raise ParseError(f"bad word factor {part.strip()!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if name not in self.generators:
                raise ParseError(f"unknown generator {name!r}")
            x = G.mul(x, G.power(self.generators[name], exp))
        return x

    def subgroup_from_words(self, words: str) -> Subgroup:
        items = [w for w in (s.strip() for s in words.split(",")) if w]
        if not items:
            raise ParseError("empty generator list")
        return self.group.generate(self.evaluate(w) for w in items)

    def lookup(self, name: str) -> Subgroup:
        if name in self.subgroups:
            return self.subgroups[name]
        if name == "G":
            return self.group.whole
        raise ParseError(f"no subgroup named {name!r}")


def parse_group_text(text: str, cap: int | None = None, name: str = "G") -> GroupFile:
    degree = None
    gens: dict[str, tuple] = {}
    subs: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "degree":
            if degree is not None:
                raise ParseError("degree given twice", lineno)
            try:
                degree = int(rest)
            except ValueError:
                raise ParseError(f"bad degree {rest!r}", lineno) from None
            if degree < 1:
                raise ParseError("degree must be positive", lineno)
        elif head == "gen":
            if degree is None:
                raise ParseError("gen before degree", lineno)
            gname, _, cycles = rest.partition(" ")
            if not _NAME.match(gname):
                raise ParseError(f"bad generator name {gname!r}", lineno)
            if gname in gens:
                raise ParseError(f"generator {gname!r} defined twice", lineno)
            try:
                gens[gname] = parse_cycles(degree, cycles.strip())
            except (GroupError, ValueError) as exc:
                raise ParseError(str(exc), lineno) from None
        elif head == "subgroup":
            sname, eq, words = rest.partition("=")
            sname = sname.strip()
            if not eq or not _NAME.match(sname):
                raise ParseError("expected 'subgroup NAME = words'", lineno)
            subs.append((lineno, sname, words))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if degree is None:
        raise ParseError("missing degree")
    if not gens:
        raise ParseError("no generators")
    order = list(gens)
    G = build_group_from_permutations(degree, [gens[g] for g in order], name=name, cap=cap)
    gf = GroupFile(G, degree, {g: G.index(gens[g]) for g in order})
    for lineno, sname, words in subs:
        if sname in gf.subgroups:
            raise ParseError(f"subgroup {sname!r} defined twice", lineno)
        try:
            gf.subgroups[sname] = gf.subgroup_from_words(words)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    return gf


def load_group_file(path: str | Path, cap: int | None = None) -> GroupFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror}") from None
    return parse_group_text(text, cap=cap, name=p.stem)


# ---------------------------------------------------------------------------
# fusion dumps

def subgroup_id(F: FusionSystem, P: Subgroup) -> str:
    return f"S{F.subgroups.index(P)}"


def dump_fusion_system(F: FusionSystem) -> str:
    top = subgroup_id(F, F.carrier)
    lines = [f"fusion p={F.prime} carrier={top}"]
    for P in F.subgroups:
        gens = P.generators
        pid = subgroup_id(F, P)
        for f in sorted(F.homs[P], key=lambda m: (m.image.sort_key, m.images)):
            imgs = ",".join(str(f(x)) for x in gens)
            lines.append(f"hom {pid} -> {subgroup_id(F, f.image)} : {imgs}")
    return "\n".join(lines) + "\n"


_HOM = re.compile(r"hom\s+S(\d+)\s*->\s*S(\d+)\s*:\s*(.*)$")
_HEAD = re.compile(r"fusion\s+p=(\d+)\s+carrier=S(\d+)\s*$")


def parse_fusion_dump(text: str, carrier: Subgroup) -> FusionSystem:
    """Rebuild a system on ``carrier`` (the same group object that was dumped)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty dump")
    m = _HEAD.match(lines[0])
    if not m:
        raise ParseError("bad header", 1)
    p = int(m.group(1))
    subs = carrier.all_subgroups
    if int(m.group(2)) >= len(subs) or subs[int(m.group(2))] != carrier:
        raise ParseError("carrier id does not match", 1)
    homs: dict[Subgroup, set[Morphism]] = {P: set() for P in subs}
    for lineno, ln in enumerate(lines[1:], 2):
        h = _HOM.match(ln)
        if not h:
            raise ParseError(f"bad line {ln!r}", lineno)
        try:
            P, Q = subs[int(h.group(1))], subs[int(h.group(2))]
            imgs = [int(v) for v in h.group(3).split(",")] if h.group(3).strip() else []
            if len(imgs) != len(P.generators):
                raise ValueError("wrong number of generator images")
            f = morphism_from_generators(P, dict(zip(P.generators, imgs)), Q).as_iso()
        except (IndexError, ValueError, GroupError) as exc:
            raise ParseError(f"bad morphism: {exc}", lineno) from None
        homs[P].add(f)
    return FusionSystem(p, carrier, {P: frozenset(v) for P, v in homs.items()}, provenance="dump")
