"""Exact linear algebra over Q: row reduction, kernels, subspaces of H_k and
a pivoted LDL^T positive-semidefiniteness test."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .forms import TernaryForm, monomials

Matrix = list[list[Fraction]]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {v : A v = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of A v = b, or None when inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    v = [Fraction(0)] * ncols
    for row, pc in zip(red, piv):
        v[pc] = row[-1]
    return v


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*a)]


@dataclass(frozen=True)
class LinSubspace:
    """A subspace of the degree-``degree`` forms, held as an echelon basis
    (graded-lex monomial order, leading coefficients 1)."""

    degree: int
    basis: tuple[TernaryForm, ...]

    @classmethod
    def span(cls, forms: Iterable[TernaryForm], degree: int | None = None) -> "LinSubspace":
        forms = list(forms)
        if degree is None:
            nz = [f.degree for f in forms if f]
            if not nz:
                raise ValueError("cannot infer the degree of an empty span")
            degree = nz[0]
        for f in forms:
            if f and f.degree != degree:
                raise ValueError("mixed degrees in span")
        rows = [f.to_vector() if f else [Fraction(0)] * len(monomials(degree)) for f in forms]
        red, _ = rref(rows) if rows else ([], [])
        return cls(degree, tuple(TernaryForm.from_vector(degree, r) for r in red))

    @classmethod
    def from_vectors(cls, degree: int, vectors: Iterable[Sequence]) -> "LinSubspace":
        return cls.span([TernaryForm.from_vector(degree, v) for v in vectors], degree)

    @classmethod
    def full(cls, degree: int) -> "LinSubspace":
        n = len(monomials(degree))
        return cls.from_vectors(degree, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, degree: int) -> "LinSubspace":
        return cls(degree, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def vectors(self) -> Matrix:
        return [f.to_vector() for f in self.basis]

    def contains(self, f: TernaryForm) -> bool:
        if not f:
            return True
        if f.degree != self.degree:
            return False
        return rank(self.vectors() + [f.to_vector()]) == self.dim

    __contains__ = contains

    def issubspace(self, other: "LinSubspace") -> bool:
        return all(other.contains(f) for f in self.basis)

    def __le__(self, other: "LinSubspace") -> bool:
        return self.issubspace(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinSubspace):
            return NotImplemented
        if self.dim == 0 and other.dim == 0:
            return True
        return self.degree == other.degree and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.degree, self.basis))

    def coordinates(self, f: TernaryForm) -> list[Fraction] | None:
        """Coefficients of ``f`` in the stored basis, or None if ``f`` is outside."""
        if not self.basis:
            return [] if not f else None
        cols = transpose(self.vectors())
        return solve(cols, f.to_vector())

    def sum(self, other: "LinSubspace") -> "LinSubspace":
        return LinSubspace.span(list(self.basis) + list(other.basis), self.degree)

    def intersection(self, other: "LinSubspace") -> "LinSubspace":
        if not self.basis or not other.basis:
            return LinSubspace.zero(self.degree)
        # a.self = b.other
        cols = transpose(self.vectors() + [[-v for v in w] for w in other.vectors()])
        ker = nullspace(cols, self.dim + other.dim)
        out = []
        for k in ker:
            f = TernaryForm.zero(self.degree)
            for c, b in zip(k[: self.dim], self.basis):
                f = f + b.scale(c)
            out.append(f)
        return LinSubspace.span(out, self.degree) if out else LinSubspace.zero(self.degree)

    def __str__(self) -> str:
        return "span(" + ", ".join(str(b) for b in self.basis) + ")"


def ldl_psd(m: Sequence[Sequence]) -> tuple[bool, list[Fraction]]:
    """Exact symmetric-pivoted LDL^T.

    Returns (is_psd, pivots). A zero diagonal pivot is only acceptable when
    its whole remaining row vanishes; otherwise the matrix is indefinite.
    """
    a = [[Fraction(v) for v in r] for r in m]
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    active = list(range(n))
    pivots: list[Fraction] = []
    while active:
        k = max(active, key=lambda i: a[i][i])
        d = a[k][k]
        if d < 0:
            return False, pivots + [d]
        if d == 0:
            if any(a[i][j] for i in active for j in active):
                return False, pivots + [d]
            pivots.extend([Fraction(0)] * len(active))
            return True, pivots
        pivots.append(d)
        active.remove(k)
        for i in active:
            for j in active:
                a[i][j] -= a[i][k] * a[k][j] / d
    return True, pivots


def is_psd(m: Sequence[Sequence]) -> bool:
    return ldl_psd(m)[0]


def signature(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia counts of a symmetric rational matrix
    via exact congruence diagonalisation."""
    a = [[Fraction(v) for v in r] for r in m]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if a[i][i]), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # row/col op: e_i <- e_i + e_j gives a nonzero diagonal entry
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            k = i
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = a[i][k] / d
            for j in range(n):
                a[i][j] -= f * a[k][j]
        for i in active:
            a[k][i] = a[i][k] = Fraction(0)
    return pos, neg, n - pos - neg


def quadratic_matrix(q: TernaryForm) -> Matrix:
    """Symmetric matrix M with q(v) = v^T M v."""
    if q.degree != 2:
        raise ValueError("expected a quadratic form")
    M = [[Fraction(0)] * 3 for _ in range(3)]
    for e, c in q.items():
        idx = [i for i in range(3) for _ in range(e[i])]
        i, j = idx
        if i == j:
            M[i][i] += c
        else:
            M[i][j] += c / 2
            M[j][i] += c / 2
    return M


def orthogonal_basis(m: Sequence[Sequence]) -> tuple[Matrix, list[Fraction]]:
    """Basis v_1..v_n of Q^n with v_i^T M v_j = 0 for i != j.

    Returns (vectors, diagonal values v_i^T M v_i); vectors with value 0
    come last and span the kernel.
    """
    M = [[Fraction(v) for v in r] for r in m]
    n = len(M)

    def b(u, w):
        return sum((u[i] * M[i][j] * w[j] for i in range(n) for j in range(n)), Fraction(0))

    remaining = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    out, diag = [], []
    while remaining:
        v = next((u for u in remaining if b(u, u)), None)
        if v is None:
            v = next(
                ([a + c for a, c in zip(remaining[i], remaining[j])]
                 for i in range(len(remaining)) for j in range(i + 1, len(remaining))
                 if b(remaining[i], remaining[j])),
                None,
            )
        if v is None:
            out.extend(remaining)
            diag.extend([Fraction(0)] * len(remaining))
            break
        d = b(v, v)
        out.append(v)
        diag.append(d)
        proj = [[a - b(v, w) / d * c for a, c in zip(w, v)] for w in remaining]
        red, _ = rref(proj)
        remaining = red
    return out, diag
