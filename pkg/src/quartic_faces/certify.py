"""Gram certificates over a subspace of quadrics, exposedness via the kernel of
the bilinear form B_L(f, g) = L(f g), and searches for product identities
f g = c d that rule exposedness out."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .forms import ProjPoint, TernaryForm, divide_exact, monomials
from .linalg import LinSubspace, Matrix, ldl_psd, nullspace, rank, solve, transpose
from .textio import format_form, parse_form, parse_rational, vec_to_json


class CertificateError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gram certificates


@dataclass(frozen=True)
class GramCertificate:
    """``target == sum_ij gram[i][j] * basis[i] * basis[j]`` with ``gram`` PSD."""

    basis: tuple[TernaryForm, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    target: TernaryForm

    def expand(self) -> TernaryForm:
        out = TernaryForm.zero(4)
        for i, qi in enumerate(self.basis):
            for j, qj in enumerate(self.basis):
                if self.gram[i][j]:
                    out = out + (qi * qj).scale(self.gram[i][j])
        return out

    def check(self) -> list[str]:
        """List of violated invariants (empty when the certificate is valid)."""
        problems = []
        k = len(self.basis)
        if len(self.gram) != k or any(len(r) != k for r in self.gram):
            return ["gram matrix has the wrong shape"]
        if any(q.degree != 2 for q in self.basis if q):
            problems.append("basis elements must be quadrics")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(k) for j in range(k)):
            return problems + ["gram matrix is not symmetric"]
        if not ldl_psd(self.gram)[0]:
            problems.append("gram matrix is not positive semidefinite")
        if self.expand() != self.target:
            problems.append("gram expansion differs from the target")
        return problems

    def verify(self) -> bool:
        return not self.check()

    @property
    def rank(self) -> int:
        return rank([list(r) for r in self.gram])

    def to_json(self) -> dict:
        return {
            "basis": [format_form(q) for q in self.basis],
            "gram": [vec_to_json(r) for r in self.gram],
            "target": format_form(self.target),
        }

    @classmethod
    def from_json(cls, data: dict) -> "GramCertificate":
        try:
            basis = tuple(parse_form(s, 2) for s in data["basis"])
            gram = tuple(tuple(parse_rational(v) for v in row) for row in data["gram"])
            target = parse_form(data["target"], 4)
        except KeyError as exc:
            raise CertificateError(f"missing field {exc}") from exc
        return cls(basis, gram, target)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _pairs(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(i, k)]


@dataclass(frozen=True)
class GramSlice:
    """Affine space of symmetric matrices M with sum M_ij q_i q_j = f:
    ``particular + sum t_k directions[k]``."""

    basis: tuple[TernaryForm, ...]
    particular: Matrix
    directions: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    def at(self, t: Sequence[Fraction]) -> Matrix:
        k = len(self.basis)
        M = [row[:] for row in self.particular]
        for c, D in zip(t, self.directions):
            for i in range(k):
                for j in range(k):
                    M[i][j] += c * D[i][j]
        return M


def _sym_from_pairs(k: int, u: Sequence[Fraction]) -> Matrix:
    M = [[Fraction(0)] * k for _ in range(k)]
    for (i, j), v in zip(_pairs(k), u):
        M[i][j] = M[j][i] = Fraction(v)
    return M


def gram_slice(f: TernaryForm, J: LinSubspace) -> GramSlice | None:
    """The Gram slice of f over the basis of J; None when f is not even in
    the span of the products."""
    if f.degree != 4:
        raise ValueError("Gram certificates are for quartics")
    if J.degree != 2:
        raise ValueError("the subspace must consist of quadrics")
    k = J.dim
    if k == 0:
        return GramSlice((), [], ()) if f.is_zero() else None
    pairs = _pairs(k)
    cols = []
    for i, j in pairs:
        v = (J.basis[i] * J.basis[j]).to_vector()
        cols.append(v if i == j else [2 * c for c in v])
    A = transpose(cols)
    u = solve(A, f.to_vector())
    if u is None:
        return None
    ker = nullspace(A, len(pairs))
    return GramSlice(J.basis, _sym_from_pairs(k, u), tuple(_sym_from_pairs(k, w) for w in ker))


def gram_nullity(J: LinSubspace) -> int:
    """Dimension of the linear relations among the products q_i q_j."""
    k = J.dim
    if k == 0:
        return 0
    return len(_pairs(k)) - rank([(J.basis[i] * J.basis[j]).to_vector() for i, j in _pairs(k)])


def _numeric_probe(sl: GramSlice, objective=None):
    """Maximise the smallest eigenvalue over the slice (capped at 1); returns
    the parameter vector as floats or None if the solver fails."""
    import cvxpy as cp
    import numpy as np

    k = len(sl.basis)
    M0 = np.array([[float(v) for v in r] for r in sl.particular])
    Ds = [np.array([[float(v) for v in r] for r in D]) for D in sl.directions]
    t = cp.Variable(len(Ds))
    lam = cp.Variable()
    M = M0 + sum((t[i] * Ds[i] for i in range(len(Ds))), np.zeros((k, k)))
    M = (M + M.T) / 2
    cons = [M - lam * np.eye(k) >> 0, lam <= 1, cp.norm(t, "inf") <= 1e4]
    obj = cp.Maximize(lam) if objective is None else cp.Minimize(cp.trace(objective @ M))
    if objective is not None:
        cons = [M >> 0, cp.norm(t, "inf") <= 1e4]
    prob = cp.Problem(obj, cons)
    try:
        prob.solve(solver=cp.CLARABEL)
    except Exception:  # solver failure is reported as "no certificate"
        try:
            prob.solve(solver=cp.SCS, eps=1e-9)
        except Exception:
            return None, None
    if t.value is None:
        return None, None
    return [float(v) for v in t.value], (float(lam.value) if objective is None else None)


def _rationalize(values: Sequence[float], max_den: int) -> list[Fraction]:
    return [Fraction(v).limit_denominator(max_den) for v in values]


def sos_in_subspace(f: TernaryForm, J: LinSubspace) -> tuple[GramCertificate | None, str]:
    """Search for a PSD Gram matrix of f over J.

    Returns (certificate or None, reason). The reason distinguishes sound
    rejections (``not in span``, ``0-dimensional slice``) from an
    inconclusive numeric search.
    """
    sl = gram_slice(f, J)
    if sl is None:
        if gram_nullity(J) == 0:
            return None, "rejected (0-dimensional Gram slice)"
        return None, "rejected (not in the span of products of J)"
    if J.dim == 0:
        return GramCertificate((), (), f), "zero form"
    if sl.dim == 0:
        M = sl.particular
        if ldl_psd(M)[0]:
            return _cert(sl, M, f), "exact (0-dimensional Gram slice)"
        return None, "rejected (0-dimensional Gram slice)"
    if ldl_psd(sl.particular)[0]:
        return _cert(sl, sl.particular, f), "exact (particular solution)"
    t, _ = _numeric_probe(sl)
    if t is not None:
        for den in (1, 2, 4, 10, 100, 10**3, 10**4, 10**6, 10**9):
            M = sl.at(_rationalize(t, den))
            if ldl_psd(M)[0]:
                return _cert(sl, M, f), "numeric probe, exact re-verification"
    return None, "no certificate found (numeric probe inconclusive)"


def _cert(sl: GramSlice, M: Matrix, f: TernaryForm) -> GramCertificate:
    cert = GramCertificate(tuple(sl.basis), tuple(tuple(r) for r in M), f)
    if not cert.verify():
        raise AssertionError("internal error: constructed certificate fails verification")
    return cert


def max_gram_rank(f: TernaryForm, J: LinSubspace, samples: int | None = None, seed: int = 0) -> int:
    """Largest rank of a PSD Gram matrix of f over J.

    Exact when the slice is a point. Otherwise the solutions of several
    random linear objectives are averaged (a relative-interior point of
    the feasible set with probability one); the rounded average is checked
    exactly and its exact rank returned, falling back to a numerical rank.
    """
    import numpy as np

    sl = gram_slice(f, J)
    if sl is None:
        raise ValueError("f is not in the span of products of J")
    if sl.dim == 0:
        if not ldl_psd(sl.particular)[0]:
            raise ValueError("f is not a sum of squares from J")
        return rank(sl.particular)
    rng = np.random.default_rng(seed)
    k = len(sl.basis)
    sols = []
    for _ in range(samples or 2 * k + 2):
        R = rng.standard_normal((k, k))
        t, _ = _numeric_probe(sl, objective=R @ R.T)
        if t is not None:
            sols.append(np.array(t))
    if not sols:
        raise ValueError("numeric probe failed")
    avg = sum(sols) / len(sols)
    for den in (10**3, 10**4, 10**6):
        M = sl.at(_rationalize(avg, den))
        ok, _ = ldl_psd(M)
        if ok:
            return rank(M)
    M = np.array([[float(v) for v in r] for r in sl.at([Fraction(v) for v in avg])])
    ev = np.linalg.eigvalsh(M)
    return int((ev > 1e-7 * max(1.0, ev.max())).sum())


# ---------------------------------------------------------------------------
# exposedness


@dataclass(frozen=True)
class ExposednessFunctional:
    """L(f) = sum w_i f(p_i), nonnegative on nonnegative forms by construction."""

    weights: tuple[tuple[ProjPoint, Fraction], ...]

    def __post_init__(self):
        for _, w in self.weights:
            if w <= 0:
                raise ValueError("weights must be positive")

    @classmethod
    def uniform(cls, points: Iterable[ProjPoint]) -> "ExposednessFunctional":
        return cls(tuple((p, Fraction(1)) for p in points))

    def __call__(self, f: TernaryForm) -> Fraction:
        return sum((w * f(p.coords) for p, w in self.weights), Fraction(0))

    def bilinear_matrix(self) -> Matrix:
        mons = [TernaryForm.monomial(m) for m in monomials(2)]
        return [[self(a * b) for b in mons] for a in mons]

    def kernel(self) -> LinSubspace:
        ker = nullspace(self.bilinear_matrix(), 6)
        return LinSubspace.from_vectors(2, ker) if ker else LinSubspace.zero(2)


def exposedness_certificate(J: LinSubspace, L: ExposednessFunctional) -> bool:
    """True iff ker B_L equals J; then L exposes the face with that J."""
    if not isinstance(L, ExposednessFunctional):
        raise TypeError("only point-evaluation functionals are supported")
    return L.kernel() == J


# ---------------------------------------------------------------------------
# non-exposedness


@dataclass(frozen=True)
class NonExposednessWitness:
    """f in J, c = d mod J, c not in J and f g = c d."""

    f: TernaryForm
    g: TernaryForm
    c: TernaryForm
    d: TernaryForm

    def check(self, J: LinSubspace) -> list[str]:
        problems = []
        for name in ("f", "g", "c", "d"):
            if getattr(self, name).degree != 2:
                problems.append(f"{name} must be a quadric")
        if problems:
            return problems
        if self.f.is_zero() or self.f not in J:
            problems.append("f must be a nonzero member of J")
        if self.c in J:
            problems.append("c must not lie in J")
        if (self.c - self.d) not in J:
            problems.append("c - d must lie in J")
        if self.f * self.g != self.c * self.d:
            problems.append("f g differs from c d")
        return problems

    def verify(self, J: LinSubspace) -> bool:
        return not self.check(J)

    def to_json(self) -> dict:
        return {k: format_form(getattr(self, k)) for k in ("f", "g", "c", "d")}

    @classmethod
    def from_json(cls, data: dict) -> "NonExposednessWitness":
        return cls(*(parse_form(data[k], 2) for k in ("f", "g", "c", "d")))


def _small_combos(basis: Sequence[TernaryForm], bound: int, include_zero: bool = True):
    """Integer combinations of ``basis`` with coefficients in [-bound, bound],
    ordered by support size then lexicographically."""
    rng = list(range(-bound, bound + 1))
    rng.sort(key=lambda v: (abs(v), v < 0))
    combos = list(itertools.product(rng, repeat=len(basis)))
    combos.sort(key=lambda c: (sum(1 for v in c if v), sum(abs(v) for v in c)))
    for coeffs in combos:
        if not include_zero and not any(coeffs):
            continue
        out = TernaryForm.zero(2)
        for a, b in zip(coeffs, basis):
            if a:
                out = out + b.scale(a)
        yield out


def nonexposedness_search(J: LinSubspace, bound: int = 2) -> NonExposednessWitness | None:
    """Bounded search for f g = c d with d = c - r, r in J.

    Candidates c run over monomials first, then integer combinations of
    monomials with coefficients in [-bound, bound]; r over integer
    combinations of the basis of J. The first verified witness is returned
    (deterministic order).
    """
    if J.dim == 0:
        raise ValueError("the zero space has no witnesses")
    mons = [TernaryForm.monomial(m) for m in monomials(2)]
    seen: set = set()

    def candidates():
        yield from mons
        yield from _small_combos(mons, bound, include_zero=False)

    rs = list(_small_combos(list(J.basis), bound))
    for c in candidates():
        if c in J:
            continue
        key = tuple(c.to_vector())
        if key in seen:
            continue
        seen.add(key)
        for r in rs:
            d = c - r
            p = c * d
            for f in J.basis:
                g = divide_exact(p, f)
                if g is not None and g.degree == 2:
                    w = NonExposednessWitness(f, g, c, d)
                    if w.verify(J):
                        return w
    return None
