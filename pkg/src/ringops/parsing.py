"""Text grammars: polynomials, maps, terms, morphisms, wreath data, fixtures.

Every value has one canonical printed form and parse/print round-trips
byte-exactly on canonical output.  Parse failures carry positions; semantic
failures (out-of-range variables, duplicate monomials) name the violated
condition.
"""
from __future__ import annotations

import re
from typing import Union

from .errors import FixtureError, NotInR, ParseFailure
from .indexcat import E, ExtMap, RMorphism, validate
from .operads import TableRingOperad
from .polynomials import RPoly, TypeSignature, canon_str, rpoly, zero_poly
from .terms import Term, node_str, plus, times, var, ZERO, ONE
from .wreath import FFMorphism, FFObject


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise ParseFailure(f"expected {token!r}", self.pos)
        self.pos += len(token)

    def try_take(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        match = re.match(r"\d+", self.text[self.pos:])
        if not match:
            raise ParseFailure("expected an integer", self.pos)
        self.pos += match.end()
        return int(match.group())

    def name(self) -> str:
        self.skip_ws()
        match = re.match(r"[A-Za-z0-9_*.'-]+", self.text[self.pos:])
        if not match:
            raise ParseFailure("expected a name", self.pos)
        self.pos += match.end()
        return match.group()


# ---------------------------------------------------------------------------
# Polynomials


def parse_poly(text: str) -> RPoly:
    scanner = _Scanner(text)
    scanner.expect("R")
    scanner.expect("(")
    arity = scanner.integer()
    scanner.expect(")")
    scanner.expect(":")
    if scanner.try_take("0"):
        if not scanner.done():
            raise ParseFailure("unexpected input after 0", scanner.pos)
        return zero_poly(arity)
    supports = []
    while True:
        supports.append(_parse_monomial(scanner, arity))
        if not scanner.try_take("+"):
            break
    if not scanner.done():
        raise ParseFailure("unexpected trailing input", scanner.pos)
    return rpoly(arity, supports)


def _parse_monomial(scanner: _Scanner, arity: int) -> tuple[int, ...]:
    indices = []
    while True:
        scanner.expect("x")
        i = scanner.integer()
        if not 1 <= i <= arity:
            raise NotInR(f"variable x{i} out of range for arity {arity}")
        if i in indices:
            raise NotInR(f"monomial contains a square at x{i}")
        indices.append(i)
        if not scanner.try_take("*"):
            break
    return tuple(sorted(indices))


def print_poly(f: RPoly) -> str:
    return canon_str(f)


# ---------------------------------------------------------------------------
# Maps and morphisms


def parse_map(text: str, source_size: int, target_size: int) -> ExtMap:
    scanner = _Scanner(text)
    scanner.expect("{")
    entries: dict[int, int] = {}
    if not scanner.try_take("}"):
        while True:
            key = scanner.integer()
            scanner.expect("->")
            if scanner.try_take("e"):
                value = E
            else:
                value = scanner.integer()
            if key in entries:
                raise ParseFailure(f"duplicate map key {key}", scanner.pos)
            entries[key] = value
            if scanner.try_take("}"):
                break
            scanner.expect(",")
    if not scanner.done():
        raise ParseFailure("unexpected trailing input", scanner.pos)
    if sorted(entries) != list(range(1, source_size + 1)):
        raise ParseFailure(
            f"map must define exactly the keys 1..{source_size}", 0
        )
    return ExtMap(source_size, target_size, tuple(entries[i] for i in range(1, source_size + 1)))


def print_map(phi: ExtMap) -> str:
    return str(phi)


def parse_morphism(text: str) -> RMorphism:
    left, rest = text.split("|", 1)
    middle, right = rest.rsplit("|", 1)
    source = parse_poly(left.strip())
    target = parse_poly(right.strip())
    phi = parse_map(middle.strip(), source.arity, target.arity)
    return validate(source, phi, target)


def print_morphism(mor: RMorphism) -> str:
    return f"{print_poly(mor.source)} |{print_map(mor.map)}| {print_poly(mor.target)}"


# ---------------------------------------------------------------------------
# Terms


def parse_term(text: str, arity: int) -> Term:
    scanner = _Scanner(text)
    node = _parse_sum(scanner, arity)
    if not scanner.done():
        raise ParseFailure("unexpected trailing input", scanner.pos)
    return Term(arity, node)


def _parse_sum(scanner: _Scanner, arity: int):
    node = _parse_product(scanner, arity)
    while scanner.try_take("+"):
        node = plus(node, _parse_product(scanner, arity))
    return node


def _parse_product(scanner: _Scanner, arity: int):
    node = _parse_atom(scanner, arity)
    while scanner.try_take("*"):
        node = times(node, _parse_atom(scanner, arity))
    return node


def _parse_atom(scanner: _Scanner, arity: int):
    if scanner.try_take("("):
        node = _parse_sum(scanner, arity)
        scanner.expect(")")
        return node
    if scanner.try_take("0"):
        return ZERO
    if scanner.try_take("1"):
        return ONE
    scanner.expect("x")
    i = scanner.integer()
    if not 1 <= i <= arity:
        raise ParseFailure(f"variable x{i} out of range for arity {arity}", scanner.pos)
    return var(i)


def print_term(term: Term) -> str:
    return node_str(term.node)


# ---------------------------------------------------------------------------
# Wreath objects and morphisms


def parse_ff_object(text: str) -> FFObject:
    scanner = _Scanner(text)
    obj = _parse_ff_object(scanner)
    if not scanner.done():
        raise ParseFailure("unexpected trailing input", scanner.pos)
    return obj


def _parse_ff_object(scanner: _Scanner) -> FFObject:
    scanner.expect("(")
    n = scanner.integer()
    scanner.expect(":")
    scanner.expect("[")
    sizes = []
    if not scanner.try_take("]"):
        while True:
            sizes.append(scanner.integer())
            if scanner.try_take("]"):
                break
            scanner.expect(",")
    scanner.expect(")")
    if len(sizes) != n:
        raise ParseFailure(f"declared length {n} but {len(sizes)} sizes", scanner.pos)
    return FFObject(tuple(sizes))


def print_ff_object(obj: FFObject) -> str:
    return str(obj)


def parse_ff_morphism(text: str) -> FFMorphism:
    pieces = [piece.strip() for piece in text.split(";")]
    if len(pieces) < 2:
        raise ParseFailure("expected 'source -> target; phi=...; d1=...'", 0)
    header = pieces[0]
    if "->" not in header:
        raise ParseFailure("expected 'source -> target' header", 0)
    left, right = header.split("->", 1)
    source = parse_ff_object(left.strip())
    target = parse_ff_object(right.strip())
    phi: Union[tuple[int, ...], None] = None
    ds: dict[int, dict[tuple[int, ...], int]] = {}
    for piece in pieces[1:]:
        if not piece:
            continue
        key, _, body = piece.partition("=")
        key = key.strip()
        body = body.strip()
        if key == "phi":
            mapping = _parse_int_map(body, source.n)
            phi = tuple(mapping[i] for i in range(1, source.n + 1))
        elif key.startswith("d"):
            ds[int(key[1:])] = _parse_tuple_map(body)
        else:
            raise ParseFailure(f"unknown section {key!r}", 0)
    if phi is None:
        raise ParseFailure("missing phi section", 0)
    if sorted(ds) != list(range(1, target.n + 1)):
        raise ParseFailure(
            f"expected component maps d1..d{target.n}", 0
        )
    return FFMorphism.make(source, target, phi, [ds[j] for j in sorted(ds)])


def _parse_int_map(text: str, size: int) -> dict[int, int]:
    scanner = _Scanner(text)
    scanner.expect("{")
    entries: dict[int, int] = {}
    if not scanner.try_take("}"):
        while True:
            key = scanner.integer()
            scanner.expect("->")
            entries[key] = scanner.integer()
            if scanner.try_take("}"):
                break
            scanner.expect(",")
    if sorted(entries) != list(range(1, size + 1)):
        raise ParseFailure(f"phi must define exactly the keys 1..{size}", 0)
    return entries


def _parse_tuple_map(text: str) -> dict[tuple[int, ...], int]:
    scanner = _Scanner(text)
    scanner.expect("{")
    rows: dict[tuple[int, ...], int] = {}
    if not scanner.try_take("}"):
        while True:
            scanner.expect("(")
            key = []
            if not scanner.try_take(")"):
                while True:
                    key.append(scanner.integer())
                    if scanner.try_take(")"):
                        break
                    scanner.expect(",")
            scanner.expect("->")
            rows[tuple(key)] = scanner.integer()
            if scanner.try_take("}"):
                break
            scanner.expect(",")
    return rows


def print_ff_morphism(mor: FFMorphism) -> str:
    parts = [f"{mor.source} -> {mor.target}"]
    phi_body = ", ".join(f"{i}->{v}" for i, v in enumerate(mor.phi, start=1))
    parts.append(f"phi={{{phi_body}}}")
    for j in range(1, mor.target.n + 1):
        rows = ", ".join(
            f"({','.join(str(k) for k in key)})->{value}"
            for key, value in sorted(mor.d(j).items())
        )
        parts.append(f"d{j}={{{rows}}}")
    return "; ".join(parts)


# ---------------------------------------------------------------------------
# Type signatures


def parse_signature(text: str) -> TypeSignature:
    scanner = _Scanner(text)
    scanner.expect("(")
    l = scanner.integer()
    scanner.expect(";")
    sizes = []
    if l:
        while True:
            sizes.append(scanner.integer())
            if not scanner.try_take(","):
                break
    scanner.expect(")")
    return TypeSignature(l, tuple(sizes))


# ---------------------------------------------------------------------------
# Ring-operad fixtures


def parse_fixture(text: str, name: str = "fixture") -> TableRingOperad:
    """Read a table-backed ring operad from structured text.

    Rows: `component <poly> = names...`, `unit = name`,
    `gamma <g-elt> (<elt>,...) = <elt>`,
    `act <poly> |{map}| <poly> : <elt> -> <elt>`.
    """
    components: dict[RPoly, list[str]] = {}
    unit: Union[str, None] = None
    gamma_rows: dict[tuple[str, tuple[str, ...]], str] = {}
    action_rows: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("component "):
                body, _, names = line[len("component "):].partition("=")
                poly = parse_poly(body.strip())
                components[poly] = names.split()
            elif line.startswith("unit"):
                _, _, value = line.partition("=")
                unit = value.strip()
            elif line.startswith("gamma "):
                head, _, result = line[len("gamma "):].partition("=")
                head = head.strip()
                g_elt, _, arg_body = head.partition("(")
                args = tuple(
                    token.strip()
                    for token in arg_body.rstrip(")").split(",")
                    if token.strip()
                )
                gamma_rows[(g_elt.strip(), args)] = result.strip()
            elif line.startswith("act "):
                spec, _, motion = line[len("act "):].rpartition(":")
                mor = parse_morphism(spec.strip())
                source_elt, _, target_elt = motion.partition("->")
                action_rows[
                    (mor.source, mor.map.images, mor.target, source_elt.strip())
                ] = target_elt.strip()
            else:
                raise FixtureError(f"unrecognized row: {line!r}")
        except ParseFailure as err:
            raise FixtureError(f"line {lineno}: {err}") from err
    if unit is None:
        raise FixtureError("fixture is missing the unit row")
    return TableRingOperad(components, unit, gamma_rows, action_rows, name=name)


def parse_pair_fixture(text: str, name: str = "pair"):
    """Read an operad pair: [additive] and [multiplicative] operad sections
    plus a [lambda] section of distributivity rows.

    Shared row shapes with the ring-operad fixture, with integer-arity
    components, `sigma <j> (<perm>) : <elt> -> <elt>` action rows and
    `lambda <g-elt> (<c-elts>) = <c-elt>` rows.
    """
    from .operad_pair import OperadPairData, TableFiniteOperad

    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise FixtureError(f"line {lineno}: row outside any section")
        sections[current].append((lineno, line))
    for required in ("additive", "multiplicative", "lambda"):
        if required not in sections:
            raise FixtureError(f"missing [{required}] section")
    operads = {}
    for section in ("additive", "multiplicative"):
        components: dict[int, list[str]] = {}
        identity = None
        sigma_rows: dict = {}
        gamma_rows: dict = {}
        for lineno, line in sections[section]:
            if line.startswith("component "):
                body, _, names = line[len("component "):].partition("=")
                components[int(body.strip())] = names.split()
            elif line.startswith("identity"):
                _, _, value = line.partition("=")
                identity = value.strip()
            elif line.startswith("sigma "):
                spec, _, motion = line[len("sigma "):].rpartition(":")
                source_elt, _, target_elt = motion.partition("->")
                scanner = _Scanner(spec)
                scanner.integer()
                scanner.expect("(")
                perm = []
                while not scanner.try_take(")"):
                    perm.append(scanner.integer())
                sigma_rows[(source_elt.strip(), tuple(perm))] = target_elt.strip()
            elif line.startswith("gamma "):
                head, _, result = line[len("gamma "):].partition("=")
                g_elt, _, arg_body = head.strip().partition("(")
                args = tuple(
                    token.strip()
                    for token in arg_body.rstrip(")").split(",")
                    if token.strip()
                )
                gamma_rows[(g_elt.strip(), args)] = result.strip()
            else:
                raise FixtureError(f"line {lineno}: unrecognized row {line!r}")
        if identity is None:
            raise FixtureError(f"[{section}] is missing the identity row")
        operads[section] = TableFiniteOperad(
            components, identity, sigma_rows, gamma_rows, name=f"{name}.{section}"
        )
    lambda_rows: dict = {}
    for lineno, line in sections["lambda"]:
        if not line.startswith("lambda "):
            raise FixtureError(f"line {lineno}: unrecognized row {line!r}")
        head, _, result = line[len("lambda "):].partition("=")
        g_elt, _, arg_body = head.strip().partition("(")
        args = tuple(
            token.strip()
            for token in arg_body.rstrip(")").split(",")
            if token.strip()
        )
        lambda_rows[(g_elt.strip(), args)] = result.strip()

    def lam(g_elt, tagged_args):
        key = (g_elt, tuple(x for _, x in tagged_args))
        if key not in lambda_rows:
            raise FixtureError(f"missing lambda row for {key}")
        return lambda_rows[key]

    return OperadPairData(operads["additive"], operads["multiplicative"], lam)


def serialize_fixture(table: TableRingOperad) -> str:
    lines = []
    polys = sorted(table._components, key=lambda f: (f.arity, canon_str(f)))
    for f in polys:
        lines.append(f"component {canon_str(f)} = {' '.join(table._components[f])}")
    lines.append(f"unit = {table._unit}")
    for (g_elt, args), result in sorted(table._gamma_rows.items()):
        lines.append(f"gamma {g_elt} ({', '.join(args)}) = {result}")
    for (source, images, target, elt), moved in sorted(
        table._action_rows.items(),
        key=lambda item: (str(item[0][0]), item[0][1], str(item[0][2]), item[0][3]),
    ):
        phi = ExtMap(source.arity, target.arity, images)
        lines.append(
            f"act {canon_str(source)} |{phi}| {canon_str(target)} : {elt} -> {moved}"
        )
    return "\n".join(lines) + "\n"
