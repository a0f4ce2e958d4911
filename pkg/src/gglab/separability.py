"""Separability idempotents over a subring, Azumaya detection, double
centralizers, and the separable-subalgebra enumeration feeding the
Galois-correspondence checks.

Every positive separability answer carries a certificate re-verified by
substitution; every negative answer is a rank argument (the defining
system is genuinely linear, so "no solution" is a proof).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Algebra, commutant, is_unital_subalgebra, subalgebra_generated
from .config import caps
from .fields import Field
from .linalg import Subspace, all_subspaces


@dataclass
class RelativeTensorSquare:
    """R (x)_S R as a quotient of R (x) R by the balancing relations."""

    algebra: Algebra
    subring: Subspace
    relations: np.ndarray  # RREF rows inside R (x) R (row-major (k,l) index)
    rel_pivots: list[int]
    quotient_coords: list[int]  # non-pivot flat indices

    @property
    def dim(self) -> int:
        return len(self.quotient_coords)

    def reduce_vector(self, v: np.ndarray) -> np.ndarray:
        """Canonical coset representative: eliminate pivot coordinates."""
        f = self.algebra.field
        out = v.astype(f.dtype, copy=True)
        for row, piv in zip(self.relations, self.rel_pivots):
            c = out[piv]
            if c != 0:
                out = f.reduce(out - c * row)
        return out

    def project(self, v: np.ndarray) -> np.ndarray:
        return self.reduce_vector(v)[self.quotient_coords]

    def lift(self, q: np.ndarray) -> np.ndarray:
        n2 = self.algebra.dim ** 2
        out = self.algebra.field.zeros(n2)
        out[self.quotient_coords] = q
        return out


def tensor_square(alg: Algebra, sub: Subspace) -> RelativeTensorSquare:
    """Build R (x)_S R from the relation span {bi*s (x) bj - bi (x) s*bj}."""
    f = alg.field
    n = alg.dim
    rows = []
    basis = alg.basis_vectors()
    for s in sub.basis:
        for i in range(n):
            left = alg.mul(basis[i], s)  # bi*s
            for j in range(n):
                right = alg.mul(s, basis[j])  # s*bj
                rel = f.zeros(n * n)
                rel[i * n : (i + 1) * n] -= right
                rel = rel.reshape(n, n)
                rel[:, j] = f.reduce(rel[:, j] + left)
                rows.append(f.reduce(rel.reshape(n * n)))
    if rows:
        rel_mat, pivots = linalg.rref(f, np.vstack(rows))
        rel_mat = rel_mat[: len(pivots)]
    else:
        rel_mat, pivots = f.zeros((0, n * n)), []
    quotient = [c for c in range(n * n) if c not in set(pivots)]
    return RelativeTensorSquare(alg, sub, rel_mat, pivots, quotient)


@dataclass
class SeparabilityCertificate:
    tensor: RelativeTensorSquare
    element: np.ndarray  # representative in R (x) R, row-major
    verified: bool

    def pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """The certificate as explicit sum of x (x) y with basis x."""
        n = self.tensor.algebra.dim
        out = []
        for i in range(n):
            y = self.element[i * n : (i + 1) * n]
            if np.any(y != 0):
                out.append((self.tensor.algebra.basis_vector(i), y))
        return out

    def to_json(self) -> dict:
        f = self.tensor.algebra.field
        return {
            "pairs": [[f.vector_json(x), f.vector_json(y)] for x, y in self.pairs()],
            "verified": self.verified,
        }


def _mu_matrix(alg: Algebra) -> np.ndarray:
    """Multiplication map R (x) R -> R on flat coordinates."""
    f = alg.field
    n = alg.dim
    m = f.zeros((n, n * n))
    for i in range(n):
        for j in range(n):
            m[:, i * n + j] = alg.mul(alg.basis_vector(i), alg.basis_vector(j))
    return m


def _commute_operator(alg: Algebra, r: np.ndarray) -> np.ndarray:
    """r.z - z.r on flat R (x) R coordinates (bimodule actions)."""
    f = alg.field
    n = alg.dim
    eye = f.eye(n)
    return f.reduce(
        linalg.kron(f, alg.left_mult(r), eye) - linalg.kron(f, eye, alg.right_mult(r))
    )


def separability_idempotent(alg: Algebra, sub: Subspace) -> SeparabilityCertificate | None:
    """Separability element of R over S, or None (provably none exists).

    Solves {mu(z) = 1, r.z = z.r in R (x)_S R for all basis r} exactly in
    quotient coordinates, then re-verifies the solution by substitution.
    """
    f = alg.field
    n = alg.dim
    ts = tensor_square(alg, sub)
    q = ts.dim
    lifts = [ts.lift(col) for col in f.eye(q)] if q else []

    mu = _mu_matrix(alg)
    mu_q = (
        np.column_stack([linalg.matmul(f, mu, v) for v in lifts]) if q else f.zeros((n, 0))
    )
    blocks = [mu_q]
    rhs = [alg.unit]
    for r in alg.basis_vectors():
        op = _commute_operator(alg, r)
        proj = (
            np.column_stack([ts.project(linalg.matmul(f, op, v)) for v in lifts])
            if q
            else f.zeros((ts.dim, 0))
        )
        blocks.append(proj)
        rhs.append(f.zeros(proj.shape[0]))
    sol = linalg.solve(f, np.vstack(blocks), np.concatenate(rhs))
    if sol is None:
        return None
    z = ts.lift(sol)
    cert = SeparabilityCertificate(ts, z, verified=False)
    cert.verified = verify_certificate(cert)
    if not cert.verified:
        raise RuntimeError("internal: separability solution failed substitution")
    return cert


def verify_certificate(cert: SeparabilityCertificate) -> bool:
    """Independent substitution check of mu(z)=1 and r.z = z.r mod relations."""
    alg = cert.tensor.algebra
    f = alg.field
    total = f.zeros(alg.dim)
    for x, y in cert.pairs():
        total = f.reduce(total + alg.mul(x, y))
    if not np.array_equal(total, alg.unit):
        return False
    for r in alg.basis_vectors():
        moved = linalg.matmul(f, _commute_operator(alg, r), cert.element)
        if np.any(cert.tensor.reduce_vector(moved) != 0):
            return False
    return True


def is_separable(alg: Algebra, sub: Subspace) -> bool:
    return separability_idempotent(alg, sub) is not None


def is_azumaya(alg: Algebra, center_sub: Subspace | None = None):
    """R separable over its center; returns (flag, certificate or None)."""
    from .algebra import center as _center

    c = center_sub if center_sub is not None else _center(alg)
    cert = separability_idempotent(alg, c)
    return cert is not None, cert


def is_central_galois(center_sub: Subspace, invariant_ring: Subspace, coords_certified: bool) -> bool:
    """Certified coordinates plus C(R) = R^beta as reduced bases."""
    return coords_certified and center_sub == invariant_ring


@dataclass
class DoubleCentralizerResult:
    subalgebra: Subspace
    bicommutant: Subspace
    double_centralizer_holds: bool
    commutant_separable: bool
    tensor_clause: str  # "holds" | "fails" | "skipped (A not central)"


def double_centralizer_check(
    alg: Algebra, a: Subspace, center_sub: Subspace
) -> DoubleCentralizerResult:
    """The Azumaya double-centralizer statement, clause by clause."""
    full = alg.full_space
    va = commutant(alg, a, full)
    vva = commutant(alg, va, full)
    holds = vva == a
    sep = is_separable_subalgebra_over(alg, va, center_sub)
    # A central over C: A cap V(A) = C, i.e. the center of A is exactly C
    central = a.intersection(va) == center_sub
    if central:
        # mu: A (x)_S V(A) -> R is an isomorphism iff the relative tensor
        # product has dim R and the products span R
        ok = (
            relative_tensor_dim(alg, a, va, center_sub) == alg.dim
            and _products_span(alg, a, va)
        )
        tensor_clause = "holds" if ok else "fails"
    else:
        tensor_clause = "skipped (A not central)"
    return DoubleCentralizerResult(a, vva, holds, sep, tensor_clause)


def relative_tensor_dim(alg: Algebra, a: Subspace, b: Subspace, base: Subspace) -> int:
    """dim of A (x)_S B for subalgebras A, B both containing the central S.

    Works in internal coordinates of A and B; the balancing relations
    a_i s (x) b_j - a_i (x) s b_j stay inside A and B because S is
    central and contained in both.
    """
    f = alg.field
    ka, kb = a.dim, b.dim
    if ka == 0 or kb == 0:
        return 0
    rows = []
    for s in base.basis:
        left = [a.coords(alg.mul(x, s)) for x in a.basis]
        right = [b.coords(alg.mul(s, y)) for y in b.basis]
        if any(v is None for v in left) or any(v is None for v in right):
            raise ValueError("base does not stabilize the factors")
        for i in range(ka):
            for j in range(kb):
                rel = f.zeros((ka, kb))
                rel[:, j] = f.reduce(rel[:, j] + left[i])
                rel[i, :] = f.reduce(rel[i, :] - right[j])
                rows.append(rel.reshape(ka * kb))
    return ka * kb - linalg.rank(f, np.vstack(rows))


def _products_span(alg: Algebra, a: Subspace, b: Subspace) -> bool:
    rows = [alg.mul(x, y) for x in a.basis for y in b.basis]
    return Subspace(alg.field, alg.dim, np.vstack(rows)).dim == alg.dim


def is_separable_subalgebra_over(alg: Algebra, sub: Subspace, base: Subspace) -> bool:
    """S separable over a base contained in S: certificate in S (x)_base S."""
    if not sub.contains_space(base):
        return False
    if not is_unital_subalgebra(alg, sub):
        return False
    from .algebra import subspace_algebra

    small, _ = subspace_algebra(alg, sub, alg.unit)
    base_coords = np.vstack([sub.coords(v) for v in base.basis])
    base_sub = Subspace(alg.field, sub.dim, base_coords)
    return separability_idempotent(small, base_sub) is not None


@dataclass
class SeparableEnumeration:
    subalgebras: list[Subspace]  # S >= base, unital, separable over base
    exhaustive: bool
    note: str


def enumerate_separable_subalgebras(
    alg: Algebra, base: Subspace, pool: list[Subspace] | None = None
) -> SeparableEnumeration:
    """Unital subalgebras S with base <= S <= R, separable over base.

    Exhaustive subspace walk when dim R is at or below the cap (prime
    fields only); otherwise the provided pool (already-generated
    subalgebra candidates) is filtered and the result is labeled
    pool-restricted.
    """
    f = alg.field
    cap = caps()["exhaustive_dim"]
    exhaustive = f.modular and alg.dim <= cap
    candidates: dict[tuple, Subspace] = {}

    if exhaustive:
        # subspaces containing base <-> subspaces of a complement of base
        comp_idx = _complement_coordinates(f, base)
        for quot in all_subspaces(f, len(comp_idx)):
            lift = f.zeros((quot.shape[0], alg.dim))
            for r in range(quot.shape[0]):
                for k, c in enumerate(comp_idx):
                    lift[r, c] = quot[r, k]
            cand = Subspace(f, alg.dim, np.vstack([base.basis, lift]))
            candidates.setdefault(cand.key(), cand)
        note = "exhaustive"
    else:
        note = "pool-restricted"
        for cand in pool or []:
            grown = subalgebra_generated(alg, np.vstack([base.basis, cand.basis]))
            candidates.setdefault(grown.key(), grown)

    out = []
    for key in sorted(candidates):
        s = candidates[key]
        if not s.contains_space(base):
            continue
        if not is_unital_subalgebra(alg, s):
            continue
        if is_separable_subalgebra_over(alg, s, base):
            s.flags["is_subalgebra"] = True
            out.append(s)
    return SeparableEnumeration(out, exhaustive, note)


def _complement_coordinates(f: Field, sub: Subspace) -> list[int]:
    _, pivots = linalg.rref(f, sub.basis)
    return [c for c in range(sub.ambient) if c not in set(pivots)]
