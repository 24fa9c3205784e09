"""Line-based ``.isg`` / ``.act`` text formats and DOT output.

``.isg`` comes in two kinds::

    kind partial_maps          kind table
    ground 3                   elements e a
    element S12 map 1:2 2:1    row e: e a
    element I0 map             row a: a e
                               inverse e:e a:a

``.act``::

    semigroup order28.isg      # optional, resolved relative to the .act file
    idempotents 6
    ideal I12 = 1 2
    map D12^13 : 1>3 2>4

Everything after ``#`` is a comment.
"""

from __future__ import annotations

from pathlib import Path

from .act import Action, complete_action
from .alg import SplitAlgebra
from .errors import InvalidStructure, ParseError
from .gpd import OrderedGroupoid
from .scalars import QQ, Field
from .sgrp import InverseSemigroup, PartialBijection, close


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no) from None


def _pair(tok: str, sep: str, no: int) -> tuple[int, int]:
    a, found, b = tok.partition(sep)
    if not found:
        raise ParseError(f"expected i{sep}j, got {tok!r}", no)
    return _int(a, no), _int(b, no)


# -- .isg ------------------------------------------------------------------------------


def parse_isg(text: str) -> InverseSemigroup:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "kind" or len(lines[0][1]) != 2:
        raise ParseError("first line must be 'kind partial_maps' or 'kind table'",
                         lines[0][0] if lines else 1)
    kind = lines[0][1][1]
    if kind == "partial_maps":
        return _parse_partial_maps(lines[1:])
    if kind == "table":
        return _parse_table(lines[1:])
    raise ParseError(f"unknown kind {kind!r}", lines[0][0])


def _parse_partial_maps(lines) -> InverseSemigroup:
    ground = None
    gens, names = [], {}
    for no, toks in lines:
        if toks[0] == "ground":
            if len(toks) != 2:
                raise ParseError("expected 'ground m'", no)
            ground = _int(toks[1], no)
        elif toks[0] == "element":
            if ground is None:
                raise ParseError("'ground' must precede elements", no)
            if len(toks) < 3 or toks[2] != "map":
                raise ParseError("expected 'element NAME map i:j ...'", no)
            pairs = [_pair(t, ":", no) for t in toks[3:]]
            try:
                f = PartialBijection(ground, tuple(pairs))
            except (ValueError, InvalidStructure) as exc:
                raise ParseError(str(exc), no) from None
            if f in names and names[f] != toks[1]:
                raise ParseError(f"{toks[1]} repeats the map of {names[f]}", no)
            if toks[1] in names.values() and names.get(f) != toks[1]:
                raise ParseError(f"name {toks[1]} used twice", no)
            names[f] = toks[1]
            gens.append(f)
        else:
            raise ParseError(f"unknown keyword {toks[0]!r}", no)
    if not gens:
        raise ParseError("no elements listed")
    return close(gens, names)


def _parse_table(lines) -> InverseSemigroup:
    names, rows, inverse = None, {}, {}
    for no, toks in lines:
        if toks[0] == "elements":
            names = toks[1:]
            if len(set(names)) != len(names):
                raise ParseError("duplicate element names", no)
        elif toks[0] == "row":
            if names is None:
                raise ParseError("'elements' must precede rows", no)
            if len(toks) < 2 or not toks[1].endswith(":"):
                raise ParseError("expected 'row a: ...'", no)
            a = toks[1][:-1]
            if a not in names or len(toks) - 2 != len(names):
                raise ParseError(f"row {a!r} must name an element and list {len(names)} products", no)
            bad = [t for t in toks[2:] if t not in names]
            if bad:
                raise ParseError(f"unknown element {bad[0]!r}", no)
            rows[a] = [names.index(t) for t in toks[2:]]
        elif toks[0] == "inverse":
            if names is None:
                raise ParseError("'elements' must precede inverse", no)
            for tok in toks[1:]:
                a, found, b = tok.partition(":")
                if not found or a not in names or b not in names:
                    raise ParseError(f"bad inverse entry {tok!r}", no)
                inverse[a] = names.index(b)
        else:
            raise ParseError(f"unknown keyword {toks[0]!r}", no)
    if names is None:
        raise ParseError("missing 'elements' line")
    missing = [a for a in names if a not in rows]
    if missing:
        raise ParseError(f"missing row for {missing[0]!r}")
    mul = [rows[a] for a in names]
    if inverse:
        if set(inverse) != set(names):
            raise ParseError("inverse must be given for every element or none")
        return InverseSemigroup(names, mul, [inverse[a] for a in names])
    return InverseSemigroup.from_table(names, mul)


def emit_isg(S: InverseSemigroup) -> str:
    """Partial-map form when the elements are known partial bijections, table form otherwise."""
    if S.payload is not None:
        ground = S.payload[0].ground_size
        out = ["kind partial_maps", f"ground {ground}"]
        for name, f in zip(S.names, S.payload):
            pairs = " ".join(f"{i}:{j}" for i, j in sorted(f.mapping.items()))
            out.append(f"element {name} map {pairs}".rstrip())
        return "\n".join(out) + "\n"
    out = ["kind table", "elements " + " ".join(S.names)]
    for s in S:
        out.append(f"row {S.names[s]}: " + " ".join(S.names[t] for t in S.mul[s]))
    out.append("inverse " + " ".join(f"{S.names[s]}:{S.names[S.inv[s]]}" for s in S))
    return "\n".join(out) + "\n"


# -- .act ------------------------------------------------------------------------------


def act_semigroup_reference(text: str) -> str | None:
    """The path named on a ``semigroup`` line, if any."""
    for no, toks in _lines(text):
        if toks[0] == "semigroup":
            if len(toks) != 2:
                raise ParseError("expected 'semigroup FILE'", no)
            return toks[1]
    return None


def parse_act(text: str, S: InverseSemigroup, field: Field = QQ) -> Action:
    n = None
    ideals, maps = {}, {}
    for no, toks in _lines(text):
        key = toks[0]
        if key in ("semigroup", "kind"):
            continue
        if key == "idempotents":
            if len(toks) != 2:
                raise ParseError("expected 'idempotents n'", no)
            n = _int(toks[1], no)
        elif key in ("ideal", "map"):
            sep = "=" if key == "ideal" else ":"
            if len(toks) < 3 or toks[2] != sep:
                raise ParseError(f"expected '{key} NAME {sep} ...'", no)
            name = toks[1]
            if name not in S.names:
                raise ParseError(f"unknown element {name!r}", no)
            if key == "ideal":
                ideals[name] = [_int(t, no) for t in toks[3:]]
            else:
                pairs = [_pair(t, ">", no) for t in toks[3:]]
                m = dict(pairs)
                if len(m) != len(pairs):
                    raise ParseError(f"map {name} is not a function", no)
                maps[name] = m
        else:
            raise ParseError(f"unknown keyword {key!r}", no)
    if n is None:
        raise ParseError("missing 'idempotents n'")
    for name, supp in ideals.items():
        bad = [i for i in supp if not 1 <= i <= n]
        if bad:
            raise InvalidStructure("ideal index outside 1..n", witness=(name, bad))
    return complete_action(S, SplitAlgebra(n, field), ideals, maps)


def emit_act(action: Action, semigroup_file: str | None = None) -> str:
    """All ideals of idempotents and all nonempty maps of other elements."""
    S = action.semigroup
    out = []
    if semigroup_file:
        out.append(f"semigroup {semigroup_file}")
    out.append(f"idempotents {action.algebra.n}")
    for e in S.idempotents:
        if action.supports[e]:
            out.append(f"ideal {S.names[e]} = " + " ".join(map(str, sorted(action.supports[e]))))
    for s in S:
        if not S.is_idempotent(s) and action.maps[s]:
            out.append(f"map {S.names[s]} : " + " ".join(f"{i}>{j}" for i, j in action.maps[s]))
    return "\n".join(out) + "\n"


def load_isg(path) -> InverseSemigroup:
    return parse_isg(Path(path).read_text())


def load_act(path, S: InverseSemigroup | None = None, field: Field = QQ):
    """``(S, action)``; S is read from the file's ``semigroup`` line when not given."""
    path = Path(path)
    text = path.read_text()
    if S is None:
        ref = act_semigroup_reference(text)
        if ref is None:
            raise ParseError("action file names no semigroup; pass one explicitly")
        S = load_isg(path.parent / ref)
    return S, parse_act(text, S, field)


# -- DOT -------------------------------------------------------------------------------


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _covers(n, less):
    """Covering pairs ``(a, b)`` of a strict order given by ``less(a, b)``."""
    for a in range(n):
        for b in range(n):
            if less(a, b) and not any(less(a, c) and less(c, b) for c in range(n)):
                yield a, b


def hasse_dot(names, leq, title="order") -> str:
    """Hasse diagram with edges pointing up (smaller → larger)."""
    n = len(names)
    out = [f"digraph {_quote(title)} {{", "  rankdir=BT;"]
    for a in range(n):
        out.append(f"  {_quote(names[a])};")
    for a, b in _covers(n, lambda x, y: x != y and leq(x, y)):
        out.append(f"  {_quote(names[a])} -> {_quote(names[b])};")
    out.append("}")
    return "\n".join(out) + "\n"


def semigroup_hasse_dot(S: InverseSemigroup) -> str:
    return hasse_dot(S.names, S.leq, "natural order")


def groupoid_hasse_dot(G: OrderedGroupoid) -> str:
    return hasse_dot(G.names, G.leq, "groupoid order")


def correspondence_dot(report) -> str:
    """Subalgebra lattice of the pairs; an edge ``B → B'`` when B' covers B (B' ⊂ B)."""
    pairs = report.pairs
    names = [p.label or str(p.subalgebra) for p in pairs]
    out = ['digraph "correspondence" {', "  rankdir=TB;"]
    for p, name in zip(pairs, names):
        label = name + "\\n|T| = " + str(len(p.subsemigroup))
        out.append(f'  {_quote(name)} [label="{label}"];')
    finer = lambda a, b: a != b and pairs[a].subalgebra.refines(pairs[b].subalgebra)
    for a, b in _covers(len(pairs), finer):
        out.append(f"  {_quote(names[a])} -> {_quote(names[b])};")
    out.append("}")
    return "\n".join(out) + "\n"
