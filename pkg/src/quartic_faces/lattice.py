"""Inclusions between face classes up to projective transformations.

A class F lies below G when some transform sigma maps F into G; on the
quadric side this is act(sigma, J_F) inside J_G. Positive relations are
backed by frozen transforms (one per covering edge, composed along paths)
and re-verified with an exact Gram certificate of the transported inner
form. Non-inclusions are backed by obstruction predicates.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import networkx as nx

from .catalog import IDS, FaceClass, get_class
from .certify import GramCertificate, sos_in_subspace
from .forms import ProjPoint, TernaryForm, Transform, act, gradient, monomials, ord_at
from .linalg import LinSubspace, nullspace, rank, transpose
from .spaces import e_set, g_set, real_zero_set

OBSTRUCTIONS = ("dimension", "zero-count", "order-4-uniqueness", "explicit-argument")

# covering relations (lower, upper) with a transform mapping J_lower into J_upper
_I = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
_SWAP_YZ = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
_SWAP_XY = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
COVER_WITNESSES: dict[tuple[str, str], tuple] = {
    ("S1", "Fempty"): _I,
    ("S2", "S1"): _I,
    ("T1", "S1"): _I,
    ("S3", "S2"): _I,
    ("L0", "S2"): _I,
    ("T2", "S2"): _I,
    ("L0", "T1"): _SWAP_YZ,
    ("T1*", "T1"): _I,
    ("T2", "T1"): _I,
    ("D", "T1"): _I,
    ("S4", "S3"): _I,
    ("L1", "S3"): _I,
    ("T4", "S3"): _I,
    ("L1", "T2"): _SWAP_YZ,
    ("T4", "T2"): ((1, 0, 0), (0, 1, -1), (0, 0, 1)),
    ("T3", "T2"): _I,
    ("T2*", "T2"): _I,
    ("T1**", "T1*"): _I,
    ("T2*", "T1*"): _I,
    ("L2", "T1*"): _SWAP_YZ,
    ("L2", "D"): _I,
    ("L3", "S4"): ((0, 0, 1), (0, 1, 0), (1, 1, 0)),
    ("Q", "S4"): ((-2, 6, -6), (8, -8, 4), (2, -2, 2)),
    ("L3", "T4"): _SWAP_XY,
    ("Q", "T4"): ((0, 0, 1), (1, 1, 1), (1, -1, -1)),
    ("L3", "T3"): _SWAP_YZ,
    ("Q", "T3"): ((0, 1, 1), (0, 1, -1), (1, 0, 0)),
    ("L3", "T2*"): _SWAP_XY,
    ("Q", "T2*"): ((0, 1, 1), (0, -1, 1), (1, 0, 0)),
    ("Q", "T1**"): ((0, 1, 1), (0, -1, 1), (1, 0, 0)),
    ("L4", "T1**"): _SWAP_YZ,
    ("L2", "T2"): _I,
    ("L4", "T3"): _I,
    ("F0", "L3"): _I,
    ("F0", "Q"): _I,
    ("F0", "L4"): _I,
    # the lattice inside type A
    ("L1", "L0"): _I,
    ("L2", "L0"): _I,
    ("L3", "L1"): _I,
    ("L3", "L2"): _SWAP_XY,
    ("L4", "L2"): _I,
}


@dataclass(frozen=True)
class Witness:
    sigma: Transform
    form: TernaryForm
    certificate: GramCertificate


@dataclass(frozen=True)
class LatticeEdge:
    lower: str
    upper: str
    holds: bool | None
    witness: Witness | None = None
    obstruction: str | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out: dict = {"lo": self.lower, "hi": self.upper, "holds": self.holds}
        if self.witness:
            out["sigma"] = self.witness.sigma.to_json()
            out["form"] = str(self.witness.form)
        if self.obstruction:
            out["obstruction"] = self.obstruction
        if self.detail:
            out["detail"] = self.detail
        return out


def transported_certificate(lo: FaceClass, hi: FaceClass, sigma: Transform) -> Witness | None:
    """Gram certificate of act(sigma, inner form of lo) over J_hi, read off
    from the coordinates of the transported basis of J_lo."""
    rows = []
    for q in lo.j_basis.basis:
        c = hi.j_basis.coordinates(act(sigma, q))
        if c is None:
            return None
        rows.append(c)
    k = hi.dim_J
    if not rows:
        gram = tuple(tuple(Fraction(0) for _ in range(k)) for _ in range(k))
    else:
        C = rows
        gram = tuple(tuple(sum((C[r][i] * C[r][j] for r in range(len(C))), Fraction(0)) for j in range(k)) for i in range(k))
    h = act(sigma, lo.inner_form)
    cert = GramCertificate(tuple(hi.j_basis.basis), gram, h)
    if not cert.verify():
        return None
    return Witness(sigma, h, cert)


# ---------------------------------------------------------------------------
# zero structure


def zero_kind(c: FaceClass) -> tuple[str, int]:
    """('plane' | 'line' | 'conic' | 'finite', number of points for finite)."""
    if c.dim_J == 0:
        return "plane", 0
    Z = real_zero_set(c.j_basis.basis)
    if Z.kind == "infinite":
        return ("line", 0) if Z.contains_line else ("conic", 0)
    if Z.kind != "finite":
        raise RuntimeError(f"zero set of {c.id} could not be certified")
    return "finite", len(Z.points) + Z.n_irrational


def _profile(c: FaceClass, p: ProjPoint) -> tuple[int, int, int]:
    """(linear dim of gradients, dim of singular members, order of the inner form) at p."""
    return g_set(c.j_basis, p).linear_dim, e_set(c.j_basis, p).dim, ord_at(c.inner_form, p)


_INF = 10**6


@lru_cache(maxsize=None)
def zero_profiles(id_: str) -> tuple[tuple[tuple[int, int, int], int], ...]:
    """Local invariants at the zeros of the class, with multiplicities
    (``_INF`` for the generic points of a curve)."""
    c = get_class(id_)
    kind, _ = zero_kind(c)
    if kind == "finite":
        Z = real_zero_set(c.j_basis.basis)
        return tuple((_profile(c, p), 1) for p in Z.points)
    special = {
        # canonical representatives: l = Var(z); generic point (1:2:0)
        "L0": [((1, 2, 0), _INF)],
        "L1": [((1, 2, 0), _INF), ((0, 0, 1), 1)],
        "L2": [((1, 2, 0), _INF), ((1, 0, 0), 1)],
        "L3": [((1, 2, 0), _INF), ((0, 1, 2), _INF), ((0, 1, 0), 1)],
        "L4": [((1, 2, 0), _INF)],
        "Q": [((1, 1, 0), _INF)],
    }
    if id_ not in special:
        return ()
    return tuple((_profile(c, ProjPoint(v)), m) for v, m in special[id_])


def _local_matching_exists(lo: str, hi: str) -> bool:
    """Can every zero of hi be matched injectively to a zero of lo whose
    gradient span and singular members fit inside those of hi and whose
    order is at least as large?"""
    hi_prof = [p for p, _ in zero_profiles(hi)]
    lo_prof = zero_profiles(lo)
    G = nx.Graph()
    slots = []
    for j, (pl, mult) in enumerate(lo_prof):
        for r in range(min(mult, len(hi_prof))):
            slots.append((j, r, pl))
    for i, ph in enumerate(hi_prof):
        G.add_node(("h", i))
        for j, r, pl in slots:
            if pl[0] <= ph[0] and pl[1] <= ph[1] and pl[2] >= ph[2]:
                G.add_edge(("h", i), ("l", j, r))
    if not hi_prof:
        return True
    m = nx.bipartite.maximum_matching(G, top_nodes=[("h", i) for i in range(len(hi_prof))])
    return all(("h", i) in m for i in range(len(hi_prof)))


def zero_obstruction(lo: FaceClass, hi: FaceClass) -> str | None:
    """Z(hi) must embed in sigma Z(lo) with compatible local data."""
    kl, nl = zero_kind(lo)
    kh, nh = zero_kind(hi)
    if kl == "plane":
        return None
    if kh == "plane":
        return "Z(hi) is the whole plane but Z(lo) is not"
    if kh == "line" and kl != "line":
        return "Z(hi) contains a line, Z(lo) does not"
    if kh == "conic" and kl not in ("conic",):
        return "Z(hi) is an irreducible conic, Z(lo) is not"
    if kh == "finite" and kl == "finite" and nh > nl:
        return f"|Z(hi)| = {nh} > |Z(lo)| = {nl}"
    if kh == "finite" and not _local_matching_exists(lo.id, hi.id):
        return "no injective matching of zeros with compatible local data"
    return None


# ---------------------------------------------------------------------------
# structure of J_hi


def _annihilator(J: LinSubspace) -> list[list[Fraction]]:
    """Linear functionals on H2 (coefficient vectors) vanishing on J."""
    if J.dim == 0:
        return [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
    return nullspace(J.vectors(), 6)


def _square_conditions(J: LinSubspace) -> list[TernaryForm]:
    """Quadrics in the coefficients (u, v, w) of a linear form l whose common
    zeros are exactly the l with l^2 in J."""
    mons = monomials(2)
    out = []
    for phi in _annihilator(J):
        # l^2 = sum over monomials of products of coefficients
        terms: dict = {}
        for m, c in zip(mons, phi):
            if c:
                terms[m] = terms.get(m, Fraction(0)) + c
        out.append(TernaryForm(2, terms))
    return [q for q in out if q]


def contains_square_of_line(J: LinSubspace) -> bool | None:
    """Whether some l^2 (l a real linear form) lies in J; None if undecided."""
    conds = _square_conditions(J)
    if not conds:
        return True
    Z = real_zero_set(conds)
    if Z.kind == "uncertified":
        return None
    if Z.kind == "finite":
        return bool(Z.points) or Z.n_irrational > 0
    return True


def _det_poly_identically_zero(J: LinSubspace) -> bool:
    """det(sum a_i M_i) vanishes identically, i.e. every member is degenerate.

    The determinant has degree 3 in each a_i, so vanishing on the grid
    {0,1,2,3}^k proves it is the zero polynomial.
    """
    from .linalg import quadratic_matrix

    mats = [quadratic_matrix(q) for q in J.basis]
    for a in product(range(4), repeat=len(mats)):
        M = [[sum((ai * m[i][j] for ai, m in zip(a, mats)), Fraction(0)) for j in range(3)] for i in range(3)]
        if rank(M) == 3:
            return False
    return True


def _pencil_members_of_rank(J: LinSubspace, r: int) -> list[tuple[int, int, int]] | None:
    """For a pencil J = span(A, B): signatures of the degenerate members.

    Degenerate members are the real roots of the binary cubic det(sA + tB);
    returns None if a root is irrational (not decided here).
    """
    from . import upoly
    from .linalg import quadratic_matrix, signature

    A, B = (quadratic_matrix(q) for q in J.basis)

    def det_at(s, t):
        M = [[s * A[i][j] + t * B[i][j] for j in range(3)] for i in range(3)]
        from .forms import det3

        return det3(M)

    # interpolate the cubic in u = s/t at t = 1, plus the point (1:0)
    xs = [Fraction(k) for k in range(4)]
    ys = [det_at(x, 1) for x in xs]
    coeffs = _interpolate(xs, ys)
    roots = []
    if coeffs and len(upoly.strip(coeffs)) > 0:
        for rr in upoly.isolate_real_roots(coeffs):
            if not rr.exact:
                return None
            roots.append((rr.value, Fraction(1)))
    elif not upoly.strip(coeffs):
        return None
    if det_at(1, 0) == 0:
        roots.append((Fraction(1), Fraction(0)))
    sigs = []
    for s, t in roots:
        M = [[s * A[i][j] + t * B[i][j] for j in range(3)] for i in range(3)]
        sigs.append(signature(M))
    return sigs


def _interpolate(xs, ys) -> list[Fraction]:
    from . import upoly

    n = len(xs)
    out: list[Fraction] = []
    for i in range(n):
        term = [Fraction(ys[i])]
        for j in range(n):
            if j != i:
                term = upoly.mul(term, [-xs[j] / (xs[i] - xs[j]), 1 / (xs[i] - xs[j])])
        out = upoly.add(out, term)
    return out


def det_polynomial(J: LinSubspace) -> TernaryForm | None:
    """det(a_1 q_1 + ... + a_k q_k) as a cubic in a (k <= 3; the variables
    x, y, z stand for a_1, a_2, a_3)."""
    from .linalg import quadratic_matrix

    k = J.dim
    if k == 0 or k > 3:
        return None
    mats = [quadratic_matrix(q) for q in J.basis]
    coords = [TernaryForm.linear([int(i == j) for j in range(3)]) for i in range(k)]
    M = [[TernaryForm.zero(1) for _ in range(3)] for _ in range(3)]
    for a, m in zip(coords, mats):
        for i in range(3):
            for j in range(3):
                M[i][j] = M[i][j] + a.scale(m[i][j])
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def _cube_root_linear(c: TernaryForm) -> TernaryForm | None:
    """lambda with c = const * lambda^3, or None. A nonzero cubic is such a
    cube exactly when its first partial derivatives span one dimension."""
    if c.is_zero():
        return None
    parts = [c.derivative(i) for i in range(3)]
    vecs = [p.to_vector() for p in parts if p]
    if rank(vecs) != 1:
        return None
    # lambda is proportional to the vector of partial ratios
    g = next(p for p in parts if p)
    ratios = []
    for p in parts:
        if not p:
            ratios.append(Fraction(0))
        else:
            m = next(e for e, _ in g.items())
            ratios.append(p.coeff(m) / g.coeff(m))
    return TernaryForm.linear(ratios)


def degenerate_hyperplane(J: LinSubspace) -> LinSubspace | None:
    """When det on J is a nonzero cube lambda^3, the members with lambda = 0
    (exactly the degenerate ones); otherwise None."""
    c = det_polynomial(J)
    if c is None:
        return None
    lam = _cube_root_linear(c)
    if lam is None:
        return None
    coeffs = [lam.coeff(tuple(int(i == j) for j in range(3))) for i in range(J.dim)]
    ker = nullspace([coeffs], J.dim)
    members = []
    for v in ker:
        f = TernaryForm.zero(2)
        for a, b in zip(v, J.basis):
            f = f + b.scale(a)
        members.append(f)
    return LinSubspace.span(members, 2) if members else LinSubspace.zero(2)


def hyperplane_obstruction(lo: FaceClass, hi: FaceClass) -> str | None:
    """If det on J_hi is a cube lambda^3, a transported J_lo either lies in
    ker(lambda) or meets it in codimension one; in the latter case det on J_lo
    is itself a nonzero cube. Otherwise J_lo must fit into ker(lambda)."""
    from .catalog import classify_subspace_type_a

    H = degenerate_hyperplane(hi.j_basis)
    if H is None:
        return None
    c_lo = det_polynomial(lo.j_basis)
    if c_lo is None or _cube_root_linear(c_lo) is not None:
        return None
    if lo.dim_J > H.dim:
        return f"det on J_lo is not a cube and dim J_lo > dim of the degenerate members ({H.dim})"
    a = classify_subspace_type_a(H)
    if a is None:
        return None
    sub = check_inclusion(lo.id, a[0])
    if sub.holds is False:
        return f"det on J_lo is not a cube, so J_lo would lie in the degenerate members of J_hi, a class {a[0]} space"
    return None


def _lines_with_factor(J: LinSubspace) -> list[tuple[TernaryForm, LinSubspace]] | None:
    """All real lines l with dim(J intersect l*H1) >= 2, each with that W
    (J intersect l*H1 = l*W). None if the set is not finite and rational."""
    ann = _annihilator(J)
    if not ann:
        return None
    mons = monomials(2)
    lin = [TernaryForm.linear([int(i == j) for j in range(3)]) for i in range(3)]
    # entry (phi, w) = phi(l * w) as a linear form in the coefficients of l
    rows = []
    for phi in ann:
        row = []
        for w in lin:
            coeffs = [Fraction(0)] * 3
            for i in range(3):
                prod = (lin[i] * w).to_vector()
                coeffs[i] = sum((a * b for a, b in zip(phi, prod)), Fraction(0))
            row.append(TernaryForm.linear(coeffs))
        rows.append(row)
    minors = []
    for r1, r2 in itertools.combinations(range(len(rows)), 2):
        for c1, c2 in itertools.combinations(range(3), 2):
            m = rows[r1][c1] * rows[r2][c2] - rows[r1][c2] * rows[r2][c1]
            if m:
                minors.append(m)
    if len(rows) == 1:
        return None
    if not minors:
        return None
    Z = real_zero_set(minors)
    if Z.kind != "finite" or Z.n_irrational:
        return None
    out = []
    for p in Z.points:
        l = TernaryForm.linear(p.coords)
        W = J.intersection(LinSubspace.span([l * w for w in lin], 2))
        if W.dim >= 2:
            out.append((l, W))
    return out


def line_factor_obstruction(lo: FaceClass, hi: FaceClass) -> str | None:
    """For L0, L1, L2 the space J_hi must contain l*W with dim W >= 2."""
    if lo.id not in ("L0", "L1", "L2"):
        return None
    found = _lines_with_factor(hi.j_basis)
    if found is None:
        return None
    kinds = set()
    for l, V in found:
        if V.dim >= 3:
            kinds |= {"L0", "L1", "L2"}
            continue
        lf = l
        from .forms import divide_exact, incident, ProjLine

        W = [divide_exact(q, lf) for q in V.basis]
        u = ProjPoint(tuple(nullspace([w.to_vector() for w in W], 3)[0]))
        kinds.add("L2" if incident(u, ProjLine(lf.to_vector())) else "L1")
    if lo.id not in kinds:
        desc = ", ".join(sorted(kinds)) or "none"
        return f"lines l with dim(J_hi meet l*H1) >= 2 only give the shapes: {desc}"
    return None


def structure_obstruction(lo: FaceClass, hi: FaceClass) -> str | None:
    """Exact tests on J_hi for the square generators of the small classes."""
    J = hi.j_basis
    if lo.id == "L4":
        if contains_square_of_line(J) is False:
            return "J_hi contains no square of a real linear form"
    if lo.id == "Q":
        if J.dim and _det_poly_identically_zero(J):
            return "every member of J_hi is a degenerate conic"
    if lo.id == "L3" and J.dim == 2:
        sigs = _pencil_members_of_rank(J, 2)
        if sigs is not None and not any(p == 1 and n == 1 for p, n, _ in sigs):
            return "no member of the pencil J_hi is a product of two distinct real lines"
    return line_factor_obstruction(lo, hi) or hyperplane_obstruction(lo, hi)


# ---------------------------------------------------------------------------
# the order


@lru_cache(maxsize=1)
def cover_graph() -> nx.DiGraph:
    """Verified covering relations, edges directed lower -> upper."""
    G = nx.DiGraph()
    G.add_nodes_from(IDS)
    for (lo, hi), m in COVER_WITNESSES.items():
        w = transported_certificate(get_class(lo), get_class(hi), Transform(m))
        if w is None:
            raise RuntimeError(f"frozen witness for {lo} below {hi} does not verify")
        G.add_edge(lo, hi, witness=w)
    return G


def _path_witness(lo: str, hi: str) -> Witness | None:
    G = cover_graph()
    try:
        path = nx.shortest_path(G, lo, hi)
    except nx.NetworkXNoPath:
        return None
    sigma = Transform.identity()
    for a, b in zip(path, path[1:]):
        sigma = Transform(COVER_WITNESSES[(a, b)]) @ sigma
    return transported_certificate(get_class(lo), get_class(hi), sigma)


def check_inclusion(lo_id: str, hi_id: str) -> LatticeEdge:
    lo, hi = get_class(lo_id), get_class(hi_id)
    if lo.id == hi.id:
        w = transported_certificate(lo, hi, Transform.identity())
        return LatticeEdge(lo.id, hi.id, True, w, detail="same class")
    w = _path_witness(lo.id, hi.id)
    if w is not None:
        return LatticeEdge(lo.id, hi.id, True, w)
    if lo.dim_F >= hi.dim_F:
        return LatticeEdge(lo.id, hi.id, False, obstruction="dimension",
                           detail=f"dim F_lo = {lo.dim_F} >= dim F_hi = {hi.dim_F}")
    s = structure_obstruction(lo, hi)
    if s:
        return LatticeEdge(lo.id, hi.id, False, obstruction="explicit-argument", detail=s)
    z = zero_obstruction(lo, hi)
    if z:
        return LatticeEdge(lo.id, hi.id, False, obstruction="zero-count", detail=z)
    return LatticeEdge(lo.id, hi.id, None, detail="undecided")


@lru_cache(maxsize=1)
def all_relations() -> tuple[LatticeEdge, ...]:
    return tuple(check_inclusion(a, b) for a in IDS for b in IDS)


def order_graph() -> nx.DiGraph:
    """All verified strict inclusions, edges directed lower -> upper."""
    G = nx.DiGraph()
    G.add_nodes_from(IDS)
    for e in all_relations():
        if e.holds is None:
            raise RuntimeError(f"undecided relation {e.lower} < {e.upper}")
        if e.holds and e.lower != e.upper:
            G.add_edge(e.lower, e.upper)
    if not nx.is_directed_acyclic_graph(G):
        raise RuntimeError("inclusion relation has a cycle")
    return G


def hasse() -> nx.DiGraph:
    H = nx.transitive_reduction(order_graph())
    H.add_nodes_from(IDS)
    return H


def _sorted_edges(H: nx.DiGraph) -> list[tuple[str, str]]:
    pos = {c: i for i, c in enumerate(IDS)}
    return sorted(H.edges, key=lambda e: (pos[e[0]], pos[e[1]]))


def emit_dot() -> str:
    """Hasse diagram in DOT, nodes grouped in ranks by dim F."""
    H = hasse()
    dims = {c: get_class(c).dim_F for c in IDS}
    lines = ["digraph faces {", "  rankdir=BT;", "  node [shape=box];"]
    for c in IDS:
        lines.append(f'  "{c}" [label="{c} (dim={dims[c]})"];')
    for d in sorted(set(dims.values())):
        members = " ".join(f'"{c}";' for c in IDS if dims[c] == d)
        lines.append(f"  {{ rank=same; {members} }}")
    for lo, hi in _sorted_edges(H):
        lines.append(f'  "{lo}" -> "{hi}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_json() -> str:
    H = hasse()
    nodes = [{"id": c, "dim": get_class(c).dim_F} for c in IDS]
    edges = [{"lo": lo, "hi": hi} for lo, hi in _sorted_edges(H)]
    return json.dumps({"nodes": nodes, "edges": edges}, indent=2) + "\n"
