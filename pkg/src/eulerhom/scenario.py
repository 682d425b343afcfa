"""Scenario files: a PL circle action of a free group plus a finite quotient.

The format is a small strict INI-like text:

    [generators]
    a = [["0","1/2"]]
    b = [["0","0"],["1/2","3/4"]]

    [quotient]
    degree = 2
    a = "(0 1)"
    b = "()"

    [lifts]
    offsets = [0, 0, 0]

    [verify]
    samples = 200
    seed = 42
    max_word_len = 8
    tau_budget = 4096

Rationals are quoted strings ("1/2", "0.5"); nothing is ever parsed as
a float.  Unknown sections or keys are rejected with positions, and
emit() produces a canonical text whose reparse equals the original
scenario, which also makes the sha-256 digest of a scenario well
defined.  [lifts] holds one integer T-power per Schreier generator of
the kernel (default all zero); its length is checked when the quotient
data is actually built, in validate_scenario.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .plmaps import InvalidPLMap, LiftPL, breakpoints_to_strings, lift_from_breakpoints
from .words import QuotientMap, SchreierData, cycles_string, permutation_from_cycles


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class ValidationError(ValueError):
    """Semantically invalid scenario; message names the offending field."""


@dataclass(frozen=True)
class VerifyParams:
    samples: int = 200
    seed: int = 42
    max_word_len: int = 8
    tau_budget: int = 4096


@dataclass(frozen=True)
class ActionScenario:
    generators: tuple[str, ...]
    maps: tuple[LiftPL, ...]
    degree: int
    permutations: tuple[tuple[int, ...], ...]
    lift_offsets: tuple[int, ...] | None = None
    verify: VerifyParams = field(default_factory=VerifyParams)


# --- tokenizer -------------------------------------------------------------

_PUNCT = {"[": "lbrack", "]": "rbrack", "=": "equals", ",": "comma"}


@dataclass(frozen=True)
class _Token:
    kind: str  # lbrack rbrack equals comma name int string end
    value: Any
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch in _PUNCT:
            toks.append(_Token(_PUNCT[ch], ch, line, start_col))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                raise ParseError("unterminated string", line, start_col)
            toks.append(_Token("string", text[i + 1 : j], line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("int", int(text[i:j]), line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("name", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    toks.append(_Token("end", None, line, col))
    return toks


# --- parser ----------------------------------------------------------------


@dataclass(frozen=True)
class _Node:
    value: Any  # int | str | list[_Node]
    line: int
    col: int


class _Parser:
    def __init__(self, toks: list[_Token]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def take(self, kind: str) -> _Token:
        t = self.toks[self.pos]
        if t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.kind}", t.line, t.col)
        self.pos += 1
        return t

    def value(self) -> _Node:
        t = self.peek()
        if t.kind in ("int", "string"):
            self.pos += 1
            return _Node(t.value, t.line, t.col)
        if t.kind == "lbrack":
            self.pos += 1
            items: list[_Node] = []
            if self.peek().kind == "rbrack":
                self.pos += 1
                return _Node(items, t.line, t.col)
            while True:
                items.append(self.value())
                nxt = self.peek()
                if nxt.kind == "comma":
                    self.pos += 1
                    continue
                if nxt.kind == "rbrack":
                    self.pos += 1
                    return _Node(items, t.line, t.col)
                raise ParseError("expected ',' or ']'", nxt.line, nxt.col)
        raise ParseError(f"expected a value, found {t.kind}", t.line, t.col)

    def sections(self) -> list[tuple[_Token, list[tuple[_Token, _Node]]]]:
        out: list[tuple[_Token, list[tuple[_Token, _Node]]]] = []
        while self.peek().kind != "end":
            self.take("lbrack")
            name = self.take("name")
            self.take("rbrack")
            pairs: list[tuple[_Token, _Node]] = []
            while self.peek().kind == "name":
                key = self.take("name")
                self.take("equals")
                pairs.append((key, self.value()))
            out.append((name, pairs))
        return out


_KNOWN_SECTIONS = ("generators", "quotient", "lifts", "verify")
_VERIFY_KEYS = ("samples", "seed", "max_word_len", "tau_budget")


def _want_int(node: _Node, what: str) -> int:
    if not isinstance(node.value, int):
        raise ParseError(f"{what} must be an integer", node.line, node.col)
    return node.value


def _want_str(node: _Node, what: str) -> str:
    if not isinstance(node.value, str):
        raise ParseError(f"{what} must be a quoted string", node.line, node.col)
    return node.value


def parse_scenario(text: str) -> ActionScenario:
    parser = _Parser(_tokenize(text))
    raw = parser.sections()

    by_name: dict[str, list[tuple[_Token, _Node]]] = {}
    for tok, pairs in raw:
        if tok.value not in _KNOWN_SECTIONS:
            raise ParseError(f"unknown section [{tok.value}]", tok.line, tok.col)
        if tok.value in by_name:
            raise ParseError(f"duplicate section [{tok.value}]", tok.line, tok.col)
        by_name[tok.value] = pairs

    if "generators" not in by_name:
        raise ValidationError("missing [generators] section")
    if "quotient" not in by_name:
        raise ValidationError("missing [quotient] section")

    names: list[str] = []
    maps: list[LiftPL] = []
    for key, node in by_name["generators"]:
        if key.value in names:
            raise ParseError(f"duplicate generator {key.value}", key.line, key.col)
        if not isinstance(node.value, list):
            raise ParseError("breakpoints must be an array of pairs", node.line, node.col)
        pairs = []
        for item in node.value:
            if not isinstance(item.value, list) or len(item.value) != 2:
                raise ParseError(
                    "each breakpoint must be a two-element array", item.line, item.col
                )
            pairs.append([_want_str(p, "breakpoint coordinate") for p in item.value])
        try:
            maps.append(lift_from_breakpoints(pairs))
        except InvalidPLMap as exc:
            raise ValidationError(f"{key.value}: {type(exc).__name__}: {exc}") from exc
        names.append(key.value)
    if not names:
        raise ValidationError("no generators declared")

    degree: int | None = None
    perm_strs: dict[str, str] = {}
    for key, node in by_name["quotient"]:
        if key.value == "degree":
            degree = _want_int(node, "degree")
        elif key.value in names:
            if key.value in perm_strs:
                raise ParseError(f"duplicate image for {key.value}", key.line, key.col)
            perm_strs[key.value] = _want_str(node, "permutation")
        else:
            raise ParseError(
                f"unknown key {key.value!r} in [quotient]", key.line, key.col
            )
    if degree is None:
        raise ValidationError("quotient: missing degree")
    if degree < 1:
        raise ValidationError("quotient: degree must be >= 1")
    perms = []
    for name in names:
        if name not in perm_strs:
            raise ValidationError(f"{name}: no quotient image")
        try:
            perms.append(permutation_from_cycles(perm_strs[name], degree))
        except ValueError as exc:
            raise ValidationError(f"{name}: bad permutation: {exc}") from exc

    offsets: tuple[int, ...] | None = None
    if "lifts" in by_name:
        seen_off = False
        for key, node in by_name["lifts"]:
            if key.value != "offsets":
                raise ParseError(
                    f"unknown key {key.value!r} in [lifts]", key.line, key.col
                )
            if seen_off:
                raise ParseError("duplicate offsets", key.line, key.col)
            seen_off = True
            if not isinstance(node.value, list):
                raise ParseError("offsets must be an array of integers", node.line, node.col)
            offsets = tuple(_want_int(item, "offset") for item in node.value)
        if not seen_off:
            raise ValidationError("[lifts] section without offsets")

    vp = {}
    if "verify" in by_name:
        for key, node in by_name["verify"]:
            if key.value not in _VERIFY_KEYS:
                raise ParseError(
                    f"unknown key {key.value!r} in [verify]", key.line, key.col
                )
            if key.value in vp:
                raise ParseError(f"duplicate key {key.value}", key.line, key.col)
            vp[key.value] = _want_int(node, key.value)
    verify = VerifyParams(**vp)
    if verify.samples < 1 or verify.max_word_len < 1 or verify.tau_budget < 1:
        raise ValidationError("verify: samples, max_word_len and tau_budget must be >= 1")

    return ActionScenario(
        generators=tuple(names),
        maps=tuple(maps),
        degree=degree,
        permutations=tuple(perms),
        lift_offsets=offsets,
        verify=verify,
    )


def emit_scenario(s: ActionScenario) -> str:
    lines = ["[generators]"]
    for name, f in zip(s.generators, s.maps):
        bp = json.dumps(breakpoints_to_strings(f), separators=(",", ":"))
        lines.append(f"{name} = {bp}")
    lines.append("")
    lines.append("[quotient]")
    lines.append(f"degree = {s.degree}")
    for name, p in zip(s.generators, s.permutations):
        lines.append(f'{name} = "{cycles_string(p)}"')
    if s.lift_offsets is not None:
        lines.append("")
        lines.append("[lifts]")
        lines.append(f"offsets = [{', '.join(str(o) for o in s.lift_offsets)}]")
    lines.append("")
    lines.append("[verify]")
    v = s.verify
    lines.append(f"samples = {v.samples}")
    lines.append(f"seed = {v.seed}")
    lines.append(f"max_word_len = {v.max_word_len}")
    lines.append(f"tau_budget = {v.tau_budget}")
    lines.append("")
    return "\n".join(lines)


def scenario_digest(s: ActionScenario) -> str:
    return "sha256:" + hashlib.sha256(emit_scenario(s).encode()).hexdigest()


def load_scenario(path: str) -> ActionScenario:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def validate_scenario(s: ActionScenario) -> dict:
    """Build the quotient and Schreier data and cross-check the scenario.

    Returns a summary dict; raises ValidationError when the offsets do
    not match the kernel rank.
    """
    quotient = QuotientMap(s.degree, s.permutations)
    schreier = SchreierData(quotient)
    if s.lift_offsets is not None and len(s.lift_offsets) != schreier.rank:
        raise ValidationError(
            f"offsets: expected {schreier.rank} entries (kernel rank), got {len(s.lift_offsets)}"
        )
    return {
        "generators": list(s.generators),
        "quotientOrder": quotient.order,
        "kernelRank": schreier.rank,
    }
