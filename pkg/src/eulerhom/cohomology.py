"""Normalized cochains of a finite group with integer-lattice coefficients.

The module M is Z^rank with a right-to-left action of the finite group
Q given by one unimodular matrix per element; cochains are dense tables
over Q (degrees 0..2) that vanish whenever an argument is the identity.
Coboundaries follow the convention

    (delta c)(q1, ..., q_{n+1}) = q1 . c(q2, ..., q_{n+1})
        + sum_i (-1)^i c(..., q_i q_{i+1}, ...)
        + (-1)^{n+1} c(q1, ..., q_n).

Crossed homomorphisms Q -> M are exactly the 1-cocycles; membership in
the coboundaries is decided by the integer echelon solver, while the
full classification of H^1 = Z^1 / B^1 goes through a Smith normal form
of the inclusion, giving canonical coordinates that decide equality of
classes.  The two routes are independent and cross-checked in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import intlinalg
from .words import QuotientMap

Vec = tuple[int, ...]


class RankMismatch(ValueError):
    """Vector or cochain shape does not match the module rank."""


class NotACocycle(ValueError):
    """Operation requires a 1-cocycle (crossed homomorphism)."""


def _vec(v: Sequence[int], rank: int) -> Vec:
    t = tuple(int(x) for x in v)
    if len(t) != rank:
        raise RankMismatch(f"expected vector of length {rank}, got {len(t)}")
    return t


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


class QModule:
    """Z^rank with an action of Q by unimodular matrices, one per element.

    Matrices act by ordinary matrix-vector product.  Validation checks
    the identity matrix at the identity element, the homomorphism
    property on all pairs, and invertibility over Z.
    """

    def __init__(self, quotient: QuotientMap, rank: int, matrices: Sequence[Sequence[Sequence[int]]]):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        if len(matrices) != quotient.order:
            raise ValueError("need one matrix per quotient element")
        self.quotient = quotient
        self.rank = rank
        self.matrices = tuple(
            tuple(_vec(row, rank) for row in m) for m in matrices
        )
        for m in self.matrices:
            if len(m) != rank:
                raise RankMismatch(f"matrix must be {rank}x{rank}")
        ident = tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
        if self.matrices[0] != ident:
            raise ValueError("identity element must act by the identity matrix")
        for a in range(quotient.order):
            if abs(intlinalg.determinant(self.matrices[a])) != 1:
                raise ValueError(f"matrix for element {a} is not unimodular")
            for b in range(quotient.order):
                prod = intlinalg.mat_mul(self.matrices[a], self.matrices[b])
                if [list(r) for r in self.matrices[quotient.mult[a][b]]] != prod:
                    raise ValueError(
                        f"action matrices are not a homomorphism at pair ({a}, {b})"
                    )

    @property
    def order(self) -> int:
        return self.quotient.order

    def act(self, q: int, v: Sequence[int]) -> Vec:
        vv = _vec(v, self.rank)
        return tuple(intlinalg.mat_vec(self.matrices[q], list(vv)))


def _zero(rank: int) -> Vec:
    return (0,) * rank


@dataclass(frozen=True)
class Cochain:
    """Dense normalized cochain of degree 0, 1 or 2 over Q with values in Z^rank.

    Degree 0 stores one vector; degree 1 a vector per element; degree 2
    a vector per ordered pair.  Slots with an identity argument must be
    zero (checked), except in degree 0 where there is no argument.
    """

    degree: int
    rank: int
    order: int
    values: tuple

    @staticmethod
    def deg0(v: Sequence[int], rank: int, order: int) -> "Cochain":
        return Cochain(0, rank, order, _vec(v, rank))

    @staticmethod
    def deg1(rows: Sequence[Sequence[int]], rank: int) -> "Cochain":
        order = len(rows)
        vals = tuple(_vec(r, rank) for r in rows)
        c = Cochain(1, rank, order, vals)
        if vals and vals[0] != _zero(rank):
            raise ValueError("normalized 1-cochain must vanish at the identity")
        return c

    @staticmethod
    def deg2(table: Sequence[Sequence[Sequence[int]]], rank: int) -> "Cochain":
        order = len(table)
        vals = tuple(tuple(_vec(v, rank) for v in row) for row in table)
        for row in vals:
            if len(row) != order:
                raise ValueError("degree-2 table must be square over Q")
        c = Cochain(2, rank, order, vals)
        z = _zero(rank)
        for q in range(order):
            if vals[0][q] != z or vals[q][0] != z:
                raise ValueError("normalized 2-cochain must vanish on identity slots")
        return c

    def at(self, *args: int) -> Vec:
        if len(args) != self.degree:
            raise ValueError(f"degree-{self.degree} cochain takes {self.degree} arguments")
        if self.degree == 0:
            return self.values
        if self.degree == 1:
            return self.values[args[0]]
        return self.values[args[0]][args[1]]

    def _map2(self, other: "Cochain", op: Callable[[int, int], int]) -> "Cochain":
        if (self.degree, self.rank, self.order) != (other.degree, other.rank, other.order):
            raise RankMismatch("cochain shapes differ")

        def walk(a, b):
            if isinstance(a, tuple) and a and isinstance(a[0], tuple):
                return tuple(walk(x, y) for x, y in zip(a, b))
            if isinstance(a, tuple):
                return tuple(op(x, y) for x, y in zip(a, b))
            raise AssertionError

        return Cochain(self.degree, self.rank, self.order, walk(self.values, other.values))

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._map2(other, lambda x, y: x + y)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._map2(other, lambda x, y: x - y)

    def is_zero(self) -> bool:
        def flat(v):
            if isinstance(v, tuple) and v and isinstance(v[0], tuple):
                return all(flat(x) for x in v)
            return all(x == 0 for x in v) if isinstance(v, tuple) else v == 0

        return flat(self.values) if self.values != () else True


class CochainView:
    """Degree-3 coboundary evaluated on demand (dense storage is pointless)."""

    def __init__(self, rank: int, order: int, fn: Callable[[int, int, int], Vec]):
        self.degree = 3
        self.rank = rank
        self.order = order
        self._fn = fn

    def at(self, q1: int, q2: int, q3: int) -> Vec:
        return self._fn(q1, q2, q3)


def delta(c: Cochain, module: QModule):
    """Coboundary of a normalized cochain; degree 2 input yields a lazy view."""
    if c.rank != module.rank or c.order != module.order:
        raise RankMismatch("cochain does not match module")
    mult = module.quotient.mult
    n = module.order
    if c.degree == 0:
        rows = [vec_sub(module.act(q, c.values), c.values) for q in range(n)]
        return Cochain.deg1(rows, module.rank)
    if c.degree == 1:
        table = [
            [
                vec_add(
                    vec_sub(module.act(q1, c.at(q2)), c.at(mult[q1][q2])),
                    c.at(q1),
                )
                for q2 in range(n)
            ]
            for q1 in range(n)
        ]
        return Cochain.deg2(table, module.rank)
    if c.degree == 2:

        def fn(q1: int, q2: int, q3: int) -> Vec:
            return tuple(
                a - b + x - y
                for a, b, x, y in zip(
                    module.act(q1, c.at(q2, q3)),
                    c.at(mult[q1][q2], q3),
                    c.at(q1, mult[q2][q3]),
                    c.at(q1, q2),
                )
            )

        return CochainView(module.rank, module.order, fn)
    raise ValueError(f"no coboundary for degree {c.degree}")


def crossed_hom_violation(k: Cochain, module: QModule) -> tuple[int, int] | None:
    """First pair (q1, q2) with k(q1 q2) != k(q1) + q1.k(q2), or None.

    Exhaustive over Q x Q; None means k is a 1-cocycle.
    """
    if k.degree != 1:
        raise ValueError("expected a 1-cochain")
    if k.rank != module.rank or k.order != module.order:
        raise RankMismatch("cochain does not match module")
    mult = module.quotient.mult
    for q1 in range(module.order):
        for q2 in range(module.order):
            if k.at(mult[q1][q2]) != vec_add(k.at(q1), module.act(q1, k.at(q2))):
                return (q1, q2)
    return None


def is_crossed_hom(k: Cochain, module: QModule) -> bool:
    return crossed_hom_violation(k, module) is None


def _require_cocycle(k: Cochain, module: QModule) -> None:
    bad = crossed_hom_violation(k, module)
    if bad is not None:
        raise NotACocycle(f"not a crossed homomorphism, violated at pair {bad}")


def _flatten1(k: Cochain) -> list[int]:
    out: list[int] = []
    for q in range(1, k.order):
        out.extend(k.at(q))
    return out


def _coboundary_matrix(module: QModule) -> intlinalg.Matrix:
    """Matrix of delta^0: M -> C^1 restricted to non-identity slots."""
    rows: intlinalg.Matrix = []
    for q in range(1, module.order):
        m = module.matrices[q]
        for i in range(module.rank):
            rows.append([m[i][j] - (1 if i == j else 0) for j in range(module.rank)])
    return rows


def coboundary_witness(k: Cochain, module: QModule) -> Vec | None:
    """A vector m with delta m = k, or None; requires k to be a cocycle.

    Decided by the Hermite-echelon integer solver on the stacked system
    (A_q - I) m = k(q) over the non-identity elements.
    """
    _require_cocycle(k, module)
    if module.order == 1:
        return _zero(module.rank)
    sol = intlinalg.solve(_coboundary_matrix(module), _flatten1(k))
    return None if sol is None else tuple(sol)


def is_coboundary(k: Cochain, module: QModule) -> bool:
    return coboundary_witness(k, module) is not None


@dataclass(frozen=True, eq=False)
class H1Class:
    """A cohomology class in canonical coordinates.

    invariant_factors lists the torsion orders > 1 followed by one 0 per
    free summand of H^1; coordinates are reduced mod the torsion orders.
    Classes compare equal iff their coordinates (and factors) agree.
    """

    coordinates: tuple[int, ...]
    invariant_factors: tuple[int, ...]
    representative: Cochain

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, H1Class):
            return NotImplemented
        return (self.coordinates, self.invariant_factors) == (
            other.coordinates,
            other.invariant_factors,
        )

    def __hash__(self) -> int:
        return hash((self.coordinates, self.invariant_factors))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)


class H1Lattice:
    """Canonical-coordinate machine for H^1(Q; M) = Z^1 / B^1.

    Z^1 is the kernel lattice of delta^1 on flattened 1-cochains, B^1
    the image lattice of delta^0.  Writing B^1 in a basis Z of Z^1 gives
    an integer matrix X; the Smith form D = U X V turns membership and
    quotient coordinates into componentwise arithmetic: a cocycle with
    Z-coordinates w gets canonical coordinates U w reduced modulo the
    invariant factors.
    """

    def __init__(self, module: QModule):
        self.module = module
        n, r = module.order, module.rank
        mult = module.quotient.mult
        dim = (n - 1) * r

        def slot(q: int, i: int) -> int:
            return (q - 1) * r + i

        d1: intlinalg.Matrix = []
        for q1 in range(1, n):
            for q2 in range(1, n):
                for i in range(r):
                    row = [0] * dim
                    m = module.matrices[q1]
                    for j in range(r):
                        row[slot(q2, j)] += m[i][j]
                    prod = mult[q1][q2]
                    if prod != 0:
                        row[slot(prod, i)] -= 1
                    row[slot(q1, i)] += 1
                    d1.append(row)
        self._zbasis = intlinalg.kernel_basis(d1) if dim else []
        z = len(self._zbasis)
        zmat = [[self._zbasis[j][i] for j in range(z)] for i in range(dim)]
        self._zmat = zmat

        b_cols = []
        d0 = _coboundary_matrix(module)
        for j in range(r):
            e = [1 if t == j else 0 for t in range(r)]
            b_cols.append(intlinalg.mat_vec(d0, e) if d0 else [])
        x: intlinalg.Matrix = [[0] * r for _ in range(z)]
        for j, col in enumerate(b_cols):
            w = intlinalg.solve(zmat, col) if dim else []
            assert w is not None, "coboundary not in cocycle lattice"
            for i in range(z):
                x[i][j] = w[i] if z else 0
        self._d, self._u, _ = intlinalg.smith_normal_form(x)
        diag = [self._d[i][i] for i in range(min(len(self._d), r))]
        self._snf_rank = sum(1 for v in diag if v != 0)
        self._torsion = [
            (i, diag[i]) for i in range(self._snf_rank) if diag[i] != 1
        ]
        self.invariant_factors = tuple(d for _, d in self._torsion) + (0,) * (
            z - self._snf_rank
        )

    def coordinates(self, k: Cochain) -> tuple[int, ...]:
        _require_cocycle(k, self.module)
        dim = (self.module.order - 1) * self.module.rank
        if dim == 0:
            return ()
        w = intlinalg.solve(self._zmat, _flatten1(k))
        assert w is not None, "cocycle not in kernel lattice"
        c = intlinalg.mat_vec(self._u, w)
        coords = [c[i] % d for i, d in self._torsion]
        coords.extend(c[i] for i in range(self._snf_rank, len(c)))
        return tuple(coords)

    def class_of(self, k: Cochain) -> H1Class:
        return H1Class(self.coordinates(k), self.invariant_factors, k)


def h1_classify(cochains: Iterable[Cochain], module: QModule) -> list[H1Class]:
    """Classes of the given 1-cocycles in one consistent coordinate system."""
    lattice = H1Lattice(module)
    return [lattice.class_of(k) for k in cochains]
