"""Free-group words, finite permutation quotients and Schreier data.

Words are reduced sequences of (generator index, +1/-1) letters over an
unnamed alphabet; the same type serves words over the declared
generators of G and words over the Schreier generators of the kernel K.
Evaluation is the homomorphism convention evaluate(v * w) =
evaluate(v) o evaluate(w), matching left-to-right reading of words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .plmaps import CIRCLE_IDENTITY, IDENTITY, CirclePL, LiftPL

Letter = tuple[int, int]


class UnknownGenerator(KeyError):
    """A word letter refers to a generator the current alphabet lacks."""

    def __str__(self) -> str:
        # KeyError would repr() the argument; keep a readable message
        return f"unknown generator {self.args[0]!r}" if self.args else "unknown generator"


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, s in letters:
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +-1, got {s}")
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @staticmethod
    def of(letters: Iterable[Letter]) -> "Word":
        return Word(_reduce(letters))

    @staticmethod
    def generator(i: int, sign: int = 1) -> "Word":
        return Word(((i, sign),))

    def __mul__(self, other: "Word") -> "Word":
        return Word.of(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = EPSILON
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def conjugated_by(self, g: "Word") -> "Word":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)


EPSILON = Word()


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse "a b^-1 a^2" over the given generator names; "" and "1" are identity."""
    index = {n: i for i, n in enumerate(names)}
    letters: list[Letter] = []
    for token in text.split():
        if token == "1":
            continue
        name, _, exp = token.partition("^")
        if name not in index:
            raise UnknownGenerator(name)
        power = 1
        if exp:
            try:
                power = int(exp)
            except ValueError:
                raise ValueError(f"bad exponent in token {token!r}") from None
        sign = 1 if power >= 0 else -1
        letters.extend(((index[name], sign),) * abs(power))
    return Word.of(letters)


def format_word(w: Word, names: Sequence[str]) -> str:
    """Inverse of parse_word, grouping runs: "a b^-1 a^2"; identity prints "1"."""
    if w.is_identity:
        return "1"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        g, s = letters[i]
        j = i
        while j < len(letters) and letters[j] == (g, s):
            j += 1
        power = (j - i) * s
        if g >= len(names):
            raise UnknownGenerator(g)
        parts.append(names[g] if power == 1 else f"{names[g]}^{power}")
        i = j
    return " ".join(parts)


def evaluate_circle(maps: Sequence[CirclePL], w: Word) -> CirclePL:
    """Homomorphism into circle maps: letters act left-to-right by composition."""
    out = CIRCLE_IDENTITY
    for g, s in w.letters:
        if not 0 <= g < len(maps):
            raise UnknownGenerator(g)
        f = maps[g] if s == 1 else maps[g].inverse()
        out = out.compose(f)
    return out


def evaluate_lift(lifts: Sequence[LiftPL], w: Word) -> LiftPL:
    """Same homomorphism on chosen lifts; exact in T-powers as well."""
    out = IDENTITY
    for g, s in w.letters:
        if not 0 <= g < len(lifts):
            raise UnknownGenerator(g)
        f = lifts[g] if s == 1 else lifts[g].inverse()
        out = out.compose(f)
    return out


# ---------------------------------------------------------------------------
# permutations and finite quotients


def permutation_from_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse disjoint cycle notation "(0 1)(2 4 3)"; "()" is the identity."""
    perm = list(range(degree))
    seen: set[int] = set()
    body = text.strip()
    if body in ("", "()"):
        return tuple(perm)
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"bad cycle notation {text!r}")
    for cycle_text in body[1:-1].split(")("):
        items = cycle_text.split()
        if not items:
            continue
        try:
            cycle = [int(t) for t in items]
        except ValueError:
            raise ValueError(f"bad cycle entry in {text!r}") from None
        for v in cycle:
            if not 0 <= v < degree:
                raise ValueError(f"point {v} outside 0..{degree - 1} in {text!r}")
            if v in seen:
                raise ValueError(f"point {v} repeated in {text!r}")
            seen.add(v)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a] = b
    return tuple(perm)


def cycles_string(perm: Sequence[int]) -> str:
    seen: set[int] = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        seen.add(start)
        v = perm[start]
        while v != start:
            cycle.append(v)
            seen.add(v)
            v = perm[v]
        parts.append("(" + " ".join(str(c) for c in cycle) + ")")
    return "".join(parts) if parts else "()"


def _compose_perm(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    # (p o q)[i] = p[q[i]]
    return tuple(p[q[i]] for i in range(len(p)))


def _invert_perm(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


MAX_QUOTIENT_ORDER = 100_000


class QuotientMap:
    """G -> Q for the finite permutation group Q generated by the images.

    Elements are indexed in BFS discovery order, identity first, with a
    full multiplication table; the enumeration and hence all derived
    objects are deterministic in the declared generator order.
    """

    def __init__(self, degree: int, images: Sequence[Sequence[int]]):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = degree
        self.images = tuple(tuple(p) for p in images)
        for p in self.images:
            if sorted(p) != list(range(degree)):
                raise ValueError(f"not a permutation of 0..{degree - 1}: {p}")

        identity = tuple(range(degree))
        elements = [identity]
        index = {identity: 0}
        frontier = [identity]
        while frontier:
            nxt = []
            for e in frontier:
                for p in self.images:
                    prod = _compose_perm(e, p)
                    if prod not in index:
                        index[prod] = len(elements)
                        elements.append(prod)
                        nxt.append(prod)
                    if len(elements) > MAX_QUOTIENT_ORDER:
                        raise ValueError("quotient order exceeds safety bound")
            frontier = nxt
        self.elements = tuple(elements)
        self.order = len(elements)
        self.mult = tuple(
            tuple(index[_compose_perm(a, b)] for b in elements) for a in elements
        )
        inv = [0] * self.order
        for i, e in enumerate(elements):
            inv[i] = index[_invert_perm(e)]
        self.inv = tuple(inv)
        self.generator_elements = tuple(index[p] for p in self.images)

    @property
    def n_generators(self) -> int:
        return len(self.images)

    def word_image(self, w: Word) -> int:
        out = 0
        for g, s in w.letters:
            if not 0 <= g < len(self.images):
                raise UnknownGenerator(g)
            e = self.generator_elements[g]
            out = self.mult[out][e if s == 1 else self.inv[e]]
        return out

    def in_kernel(self, w: Word) -> bool:
        return self.word_image(w) == 0


class SchreierData:
    """Shortlex Schreier transversal and free generators of the kernel.

    The transversal is built by BFS over cosets trying letters in the
    fixed order g0, g0^-1, g1, g1^-1, ...; discovered representative
    words are prefix-closed and shortlex-minimal for that letter order.
    Kernel generators are the nontrivial t * g * rep(t g)^-1, enumerated
    transversal-major then generator-major, and K is free on them of
    rank |Q| * (n - 1) + 1.
    """

    def __init__(self, quotient: QuotientMap):
        self.quotient = quotient
        n = quotient.n_generators
        order = quotient.order

        transversal: list[Word | None] = [None] * order
        transversal[0] = EPSILON
        queue = [0]
        while queue:
            nxt = []
            for c in queue:
                for g in range(n):
                    for s in (1, -1):
                        e = quotient.generator_elements[g]
                        tgt = quotient.mult[c][e if s == 1 else quotient.inv[e]]
                        if transversal[tgt] is None:
                            transversal[tgt] = transversal[c] * Word.generator(g, s)
                            nxt.append(tgt)
            queue = nxt
        assert all(t is not None for t in transversal)
        self.transversal: tuple[Word, ...] = tuple(transversal)  # type: ignore[arg-type]

        self.k_generators: list[Word] = []
        self._pair_gen: dict[tuple[int, int], int | None] = {}
        trivial = 0
        for c in range(order):
            for g in range(n):
                tgt = quotient.mult[c][quotient.generator_elements[g]]
                word = self.transversal[c] * Word.generator(g) * self.transversal[tgt].inverse()
                if word.is_identity:
                    self._pair_gen[(c, g)] = None
                    trivial += 1
                else:
                    self._pair_gen[(c, g)] = len(self.k_generators)
                    self.k_generators.append(word)
        # the trivial pairs are exactly the spanning-tree edges
        assert trivial == order - 1
        assert len(self.k_generators) == order * (n - 1) + 1

    @property
    def rank(self) -> int:
        return len(self.k_generators)

    def rewrite(self, w: Word) -> Word:
        """Express a kernel element as a word in the Schreier generators.

        Scans w left to right tracking the coset of each prefix; each
        letter contributes its Schreier factor (or nothing, on tree
        edges).  The factors telescope, so expanding the result always
        reproduces w exactly.
        """
        q = self.quotient
        state = 0
        out: list[Letter] = []
        for g, s in w.letters:
            if not 0 <= g < q.n_generators:
                raise UnknownGenerator(g)
            e = q.generator_elements[g]
            if s == 1:
                gen = self._pair_gen[(state, g)]
                if gen is not None:
                    out.append((gen, 1))
                state = q.mult[state][e]
            else:
                state = q.mult[state][q.inv[e]]
                gen = self._pair_gen[(state, g)]
                if gen is not None:
                    out.append((gen, -1))
        if state != 0:
            raise ValueError("word has nontrivial quotient image, not a kernel element")
        return Word.of(out)

    def expand(self, kword: Word) -> Word:
        """Inverse of rewrite: substitute each Schreier generator by its word in G."""
        out = EPSILON
        for g, s in kword.letters:
            if not 0 <= g < self.rank:
                raise UnknownGenerator(g)
            factor = self.k_generators[g]
            out = out * (factor if s == 1 else factor.inverse())
        return out

    def decompose(self, w: Word) -> tuple[int, Word]:
        """w = rep(q) * x with x in K: returns (q, x rewritten over Schreier generators)."""
        q = self.quotient.word_image(w)
        return q, self.rewrite(self.transversal[q].inverse() * w)

    def conjugated_generator(self, rep: Word, i: int) -> Word:
        """rep^-1 * x_i * rep as a Schreier-generator word (rep need not be in K)."""
        return self.rewrite(self.k_generators[i].conjugated_by(rep))
