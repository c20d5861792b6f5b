"""Finite-dimensional local F_p-algebras given by multiplication tables.

A LocalAlgebra stores an F_p-basis with the unit at index 0 and the maximal
ideal m spanned by indices 1..dim-1 (every constructor arranges this), plus
the full structure-constant table. Algebras arise from polynomial
presentations F_p[x_1..x_n]/I with I m-primary, from idealizations S x N,
from tensor products, and from quotients by ideals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .linalg import PrimeFieldMatrix
from . import polyparse
from .polyparse import InfiniteDimensionError, Monomial, Polynomial


class NotLocalError(ValueError):
    """The presented quotient is not local with nilpotent variables."""


class EdimTooSmallError(ValueError):
    """An operation needs at least two minimal generators of m."""


@dataclass(frozen=True)
class Presentation:
    """Polynomial origin of an algebra: variables, relations, Groebner data."""

    variables: tuple[str, ...]
    p: int
    relations: tuple[Polynomial, ...]
    groebner: tuple[Polynomial, ...]
    monomials: tuple[Monomial, ...]


@dataclass(frozen=True)
class AlgebraInvariants:
    length: int
    edim: int
    hilbert: tuple[int, ...]
    socle_dim: int
    top_socle_degree: int


@dataclass(frozen=True)
class AlgebraClass:
    is_field: bool
    is_hypersurface: bool
    is_gorenstein: bool
    is_stretched: bool


class IdealSubspace:
    """An ideal of a LocalAlgebra stored as a canonical subspace basis."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: "LocalAlgebra", basis: PrimeFieldMatrix, validate: bool = True):
        self.ambient = ambient
        self.basis = linalg.column_space(basis)
        if validate and self.basis.cols:
            images = []
            for i in range(ambient.dim):
                images.append((ambient.mult_matrix(i) @ self.basis.array) % ambient.p)
            stacked = PrimeFieldMatrix(np.hstack(images), ambient.p)
            if not linalg.is_subspace(stacked, self.basis):
                raise ValueError("subspace is not closed under the algebra action")

    @property
    def dim(self) -> int:
        return self.basis.cols

    def is_zero(self) -> bool:
        return self.dim == 0

    def contains(self, v: np.ndarray) -> bool:
        return linalg.contains_vector(self.basis, v)

    def contains_ideal(self, other: "IdealSubspace") -> bool:
        return linalg.is_subspace(other.basis, self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IdealSubspace)
            and self.ambient is other.ambient
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.basis))

    def sum(self, other: "IdealSubspace") -> "IdealSubspace":
        return IdealSubspace(self.ambient, linalg.subspace_sum(self.basis, other.basis), validate=False)

    def intersection(self, other: "IdealSubspace") -> "IdealSubspace":
        return IdealSubspace(
            self.ambient, linalg.subspace_intersection(self.basis, other.basis), validate=False
        )

    def product(self, other: "IdealSubspace") -> "IdealSubspace":
        A = self.ambient
        if self.is_zero() or other.is_zero():
            return A.zero_ideal()
        cols = []
        for i in range(self.dim):
            u = self.basis.column(i)
            mu = A.mult_by(u)
            cols.append((mu @ other.basis.array) % A.p)
        return IdealSubspace(A, linalg.column_space(PrimeFieldMatrix(np.hstack(cols), A.p)), validate=False)

    def power(self, n: int) -> "IdealSubspace":
        if n < 0:
            raise ValueError("negative ideal power")
        acc = self.ambient.unit_ideal()
        for _ in range(n):
            acc = acc.product(self)
            if acc.is_zero():
                break
        return acc

    def __repr__(self) -> str:
        return f"IdealSubspace(dim={self.dim} of {self.ambient.dim})"


class LocalAlgebra:
    """Commutative local F_p-algebra with unit e_0 and m = span(e_1..e_{d-1})."""

    def __init__(
        self,
        p: int,
        table: np.ndarray,
        labels: Sequence[str],
        presentation: Optional[Presentation] = None,
        validate: bool = True,
    ):
        table = np.mod(np.asarray(table, dtype=np.int64), p)
        if table.ndim != 3 or table.shape[0] != table.shape[1] or table.shape[1] != table.shape[2]:
            raise ValueError("structure table must have shape (dim, dim, dim)")
        table.setflags(write=False)
        self.p = p
        self.dim = table.shape[0]
        self.table = table
        self.labels = tuple(labels)
        if len(self.labels) != self.dim:
            raise ValueError("label count does not match dimension")
        self.presentation = presentation
        self._mult_matrices: Optional[np.ndarray] = None
        self._generator_set: Optional[PrimeFieldMatrix] = None
        if validate:
            problems = check_axioms(self)
            if problems:
                raise NotLocalError("; ".join(problems))

    # -- elements ---------------------------------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def unit(self) -> np.ndarray:
        v = self.zero()
        v[0] = 1
        return v

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def mult_matrix(self, i: int) -> np.ndarray:
        """Matrix of multiplication by the basis element e_i."""
        if self._mult_matrices is None:
            m = np.transpose(self.table, (0, 2, 1)).copy()
            m.setflags(write=False)
            self._mult_matrices = m
        return self._mult_matrices[i]

    def mult_by(self, v: np.ndarray) -> np.ndarray:
        """Matrix of multiplication by the element with coordinates v."""
        v = np.asarray(v, dtype=np.int64) % self.p
        return np.tensordot(v, self.table, axes=(0, 0)).T % self.p

    def mult(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return (self.mult_by(u) @ (np.asarray(v, dtype=np.int64) % self.p)) % self.p

    def element_power(self, v: np.ndarray, n: int) -> np.ndarray:
        acc = self.unit()
        for _ in range(n):
            acc = self.mult(acc, v)
        return acc

    def element_from_polynomial(self, f: Polynomial) -> np.ndarray:
        if self.presentation is None:
            raise ValueError("algebra has no polynomial presentation")
        pres = self.presentation
        if f.variables != pres.variables or f.p != self.p:
            raise ValueError("polynomial does not match the presentation ring")
        nf = polyparse.normal_form(f, pres.groebner)
        index = {m: i for i, m in enumerate(pres.monomials)}
        v = self.zero()
        for m, c in nf.terms.items():
            v[index[m]] = c
        return v

    def element_from_string(self, text: str) -> np.ndarray:
        if self.presentation is None:
            raise ValueError("algebra has no polynomial presentation")
        pres = self.presentation
        return self.element_from_polynomial(polyparse.parse_polynomial(text, pres.variables, self.p))

    # -- ideals -------------------------------------------------------------------

    def zero_ideal(self) -> IdealSubspace:
        return IdealSubspace(self, PrimeFieldMatrix.zeros(self.dim, 0, self.p), validate=False)

    def unit_ideal(self) -> IdealSubspace:
        return IdealSubspace(self, PrimeFieldMatrix.identity(self.dim, self.p), validate=False)

    def maxideal(self) -> IdealSubspace:
        basis = np.eye(self.dim, dtype=np.int64)[:, 1:]
        return IdealSubspace(self, PrimeFieldMatrix(basis, self.p), validate=False)

    def ideal(self, generators: Sequence[np.ndarray]) -> IdealSubspace:
        """Ideal generated by the given elements: span of g * e_i."""
        cols = []
        for g in generators:
            cols.append(self.mult_by(g))  # columns are g * e_i
        if not cols:
            return self.zero_ideal()
        return IdealSubspace(self, linalg.column_space(PrimeFieldMatrix(np.hstack(cols), self.p)), validate=False)

    def principal_ideal(self, v: np.ndarray) -> IdealSubspace:
        return self.ideal([v])

    def colon(self, ideal: IdealSubspace, x) -> IdealSubspace:
        """(ideal : x) for an element, or (ideal : J) for an ideal J."""
        if isinstance(x, IdealSubspace):
            acc = self.unit_ideal()
            for j in range(x.dim):
                acc = acc.intersection(self.colon(ideal, x.basis.column(j)))
            return acc
        mx = PrimeFieldMatrix(self.mult_by(x), self.p)
        if ideal.dim == 0:
            return IdealSubspace(self, linalg.kernel_basis(mx), validate=False)
        aug = mx.hstack(ideal.basis.scale(-1))
        ker = linalg.kernel_basis(aug)
        part = PrimeFieldMatrix(ker.array[: self.dim], self.p)
        return IdealSubspace(self, linalg.column_space(part), validate=False)

    def annihilator(self, x) -> IdealSubspace:
        return self.colon(self.zero_ideal(), x)

    def socle(self) -> IdealSubspace:
        """(0 : m), the simultaneous kernel of all maximal-ideal actions."""
        if self.dim == 1:
            return self.unit_ideal()
        stacked = np.vstack([self.mult_matrix(i) for i in range(1, self.dim)])
        return IdealSubspace(self, linalg.kernel_basis(PrimeFieldMatrix(stacked, self.p)), validate=False)

    # -- invariants ------------------------------------------------------------------

    @property
    def generator_set(self) -> PrimeFieldMatrix:
        """Minimal generators of m: lexicographically first basis completion
        of m^2 inside m over the stored basis order."""
        if self._generator_set is None:
            m2 = self.maxideal().power(2)
            chosen: list[np.ndarray] = []
            span = m2.basis
            for i in range(1, self.dim):
                v = self.basis_vector(i)
                if not linalg.contains_vector(span, v):
                    chosen.append(v)
                    span = linalg.subspace_sum(span, PrimeFieldMatrix(v.reshape(-1, 1), self.p))
            self._generator_set = PrimeFieldMatrix.from_columns(chosen, self.dim, self.p)
        return self._generator_set

    def maxideal_powers(self) -> list[IdealSubspace]:
        """[m^0, m^1, ...] down to the first zero power."""
        powers = [self.unit_ideal()]
        m = self.maxideal()
        while not powers[-1].is_zero():
            powers.append(powers[-1].product(m))
        return powers

    def invariants(self) -> AlgebraInvariants:
        powers = self.maxideal_powers()
        dims = [pw.dim for pw in powers]
        hilbert = tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))
        socle_dim = self.socle().dim
        top = len(dims) - 2  # largest i with m^i != 0
        return AlgebraInvariants(
            length=self.dim,
            edim=self.generator_set.cols,
            hilbert=hilbert,
            socle_dim=socle_dim,
            top_socle_degree=top,
        )

    def classify(self) -> AlgebraClass:
        inv = self.invariants()
        # stretched means m^(length - edim) != 0
        stretched = (inv.length - inv.edim) <= inv.top_socle_degree
        return AlgebraClass(
            is_field=self.dim == 1,
            is_hypersurface=inv.edim <= 1,
            is_gorenstein=inv.socle_dim == 1,
            is_stretched=stretched,
        )

    def is_in_maxideal(self, v: np.ndarray) -> bool:
        return (np.asarray(v, dtype=np.int64) % self.p)[0] == 0

    def render_element(self, v: np.ndarray) -> str:
        """Human-readable form of a coordinate vector, e.g. 'x + 2y'."""
        v = np.asarray(v, dtype=np.int64) % self.p
        pieces = []
        for i in range(self.dim):
            c = int(v[i])
            if c == 0:
                continue
            label = self.labels[i]
            if label == "1":
                pieces.append(str(c))
            elif c == 1:
                pieces.append(label)
            else:
                pieces.append(f"{c}{label}")
        return " + ".join(pieces) if pieces else "0"

    def find_orthogonal_generator_pair(self) -> Optional[tuple[np.ndarray, np.ndarray]]:
        """First pair (x, y) of m-generator combinations with x*y = 0 and
        x, y independent modulo m^2, scanning coefficient tuples as base-p
        digits of 1..p^e-1 (first generator in the least significant digit).
        Returns None when the exhaustive scan finds nothing."""
        gens = self.generator_set
        e = gens.cols
        if e < 2:
            raise EdimTooSmallError("need edim >= 2 for an orthogonal generator pair")
        p = self.p

        def combos():
            for n in range(1, p**e):
                digits = []
                k = n
                for _ in range(e):
                    digits.append(k % p)
                    k //= p
                yield np.array(digits, dtype=np.int64)

        for a in combos():
            x = (gens.array @ a) % p
            for b in combos():
                # independence mod m^2 is rank 2 of the coefficient rows
                if linalg.PrimeFieldMatrix(np.vstack([a, b]), p).rank != 2:
                    continue
                y = (gens.array @ b) % p
                if not np.any(self.mult(x, y)):
                    return x, y
        return None

    def __repr__(self) -> str:
        return f"LocalAlgebra(p={self.p}, dim={self.dim})"


def check_axioms(A: LocalAlgebra) -> list[str]:
    """Violations of the algebra axioms; empty list when everything holds.

    Checks: e_0 is a two-sided unit, the table is commutative and
    associative, span(e_1..e_{d-1}) is an ideal, and that ideal is nilpotent.
    """
    problems = []
    d, p, t = A.dim, A.p, A.table
    if d == 0:
        return ["zero algebra"]
    for i in range(d):
        if not np.array_equal(t[0, i] % p, A.basis_vector(i)):
            problems.append(f"e_0 * e_{i} != e_{i}")
        if not np.array_equal(t[i, 0] % p, A.basis_vector(i)):
            problems.append(f"e_{i} * e_0 != e_{i}")
    for i in range(d):
        for j in range(i + 1, d):
            if not np.array_equal(t[i, j], t[j, i]):
                problems.append(f"e_{i} * e_{j} != e_{j} * e_{i}")
    # associativity via multiplication matrices: M_i M_j = sum_k t[i,j,k] M_k
    mats = np.stack([A.mult_matrix(k) for k in range(d)])
    for i in range(d):
        for j in range(i, d):
            lhs = (mats[i] @ mats[j]) % p
            rhs = np.tensordot(t[i, j], mats, axes=(0, 0)) % p
            if not np.array_equal(lhs, rhs):
                problems.append(f"associativity fails at (e_{i}, e_{j})")
    if problems:
        return problems
    # m = span(e_1..) must be an ideal: products of m-elements avoid e_0
    if d > 1 and np.any(t[1:, 1:, 0] % p):
        problems.append("span(e_1..e_{d-1}) is not closed under multiplication")
        return problems
    m = IdealSubspace(A, PrimeFieldMatrix(np.eye(d, dtype=np.int64)[:, 1:], p), validate=False)
    power = m
    for _ in range(d + 1):
        if power.is_zero():
            break
        power = power.product(m)
    else:
        problems.append("maximal ideal is not nilpotent")
    return problems


def from_presentation(variables: Sequence[str], relations: Sequence[Polynomial]) -> LocalAlgebra:
    """Quotient F_p[variables]/(relations) as a LocalAlgebra.

    The relations must generate an m-primary ideal (every variable nilpotent
    in the quotient); otherwise NotLocalError or InfiniteDimensionError.
    Basis labels are the standard monomials, degree-then-degrevlex sorted,
    so index 0 is the monomial 1.
    """
    variables = tuple(variables)
    if not relations:
        raise InfiniteDimensionError("no relations; quotient is the polynomial ring")
    p = relations[0].p
    for f in relations:
        if f.variables != variables or f.p != p:
            raise ValueError("relations live in different rings")
    gb = polyparse.buchberger(relations)
    monomials = polyparse.standard_monomial_basis(gb, variables)
    dim = len(monomials)
    if dim == 0:
        raise NotLocalError("relations generate the unit ideal")
    index = {m: i for i, m in enumerate(monomials)}

    def nf_vector(f: Polynomial) -> np.ndarray:
        nf = polyparse.normal_form(f, gb)
        v = np.zeros(dim, dtype=np.int64)
        for m, c in nf.terms.items():
            v[index[m]] = c
        return v

    # every variable must be nilpotent, else the quotient is not local
    for i, name in enumerate(variables):
        exps = [0] * len(variables)
        exps[i] = dim + 1
        if np.any(nf_vector(Polynomial(variables, p, {tuple(exps): 1}))):
            raise NotLocalError(f"variable {name} is not nilpotent in the quotient")

    table = np.zeros((dim, dim, dim), dtype=np.int64)
    polys = [Polynomial(variables, p, {m: 1}) for m in monomials]
    for i in range(dim):
        for j in range(i, dim):
            v = nf_vector(polys[i] * polys[j])
            table[i, j] = v
            table[j, i] = v
    labels = [polyparse.monomial_label(m, variables) for m in monomials]
    pres = Presentation(
        variables=variables,
        p=p,
        relations=tuple(relations),
        groebner=tuple(gb),
        monomials=tuple(monomials),
    )
    return LocalAlgebra(p, table, labels, presentation=pres)


def idealization(S: LocalAlgebra, action: np.ndarray, labels: Optional[Sequence[str]] = None) -> LocalAlgebra:
    """Trivial extension S x N for an S-module given by its action tensor.

    `action` has shape (dim_S, n, n) with action[i] the matrix of e_i on N.
    The result has basis (S-basis, N-basis), N embedded as a square-zero
    ideal spanned by the trailing n coordinates.
    """
    action = np.mod(np.asarray(action, dtype=np.int64), S.p)
    n = action.shape[1]
    d = S.dim + n
    table = np.zeros((d, d, d), dtype=np.int64)
    table[: S.dim, : S.dim, : S.dim] = S.table
    for i in range(S.dim):
        for j in range(n):
            table[i, S.dim + j, S.dim :] = action[i, :, j]
            table[S.dim + j, i, S.dim :] = action[i, :, j]
    if labels is None:
        labels = [f"n{j}" for j in range(n)]
    return LocalAlgebra(S.p, table, list(S.labels) + list(labels))


def tensor_product(S: LocalAlgebra, T: LocalAlgebra) -> LocalAlgebra:
    """S tensor T over F_p, basis ordered lexicographically by (i, j)."""
    if S.p != T.p:
        raise ValueError("tensor factors must share the prime")
    ds, dt = S.dim, T.dim
    d = ds * dt
    full = np.zeros((d, d, d), dtype=np.int64)
    for i in range(ds):
        for k in range(ds):
            sv = S.table[i, k]
            for j in range(dt):
                for l in range(dt):
                    # (e_i(x)f_j)(e_k(x)f_l) = (e_i e_k)(x)(f_j f_l)
                    full[i * dt + j, k * dt + l] = np.outer(sv, T.table[j, l]).reshape(-1) % S.p
    labels = [
        f"{S.labels[i]}(x){T.labels[j]}" if i or j else "1"
        for i in range(ds)
        for j in range(dt)
    ]
    return LocalAlgebra(S.p, full, labels)


@dataclass
class QuotientRing:
    """A/I as a LocalAlgebra plus the projection and a linear section."""

    algebra: LocalAlgebra
    proj: PrimeFieldMatrix  # dim(B) x dim(A)
    lift: PrimeFieldMatrix  # dim(A) x dim(B)
    ideal: IdealSubspace


def quotient_ring(A: LocalAlgebra, ideal: IdealSubspace) -> QuotientRing:
    """Quotient algebra A/I with canonical complement coordinates.

    The surviving coordinates are the non-pivot rows of the rref of I, so
    the unit coordinate always survives at index 0 for proper ideals.
    """
    if ideal.ambient is not A:
        raise ValueError("ideal does not live in this algebra")
    rr = linalg.rref(ideal.basis.transpose())
    pivots = set(rr.pivots)
    if 0 in pivots:
        raise ValueError("cannot form the quotient by the unit ideal")
    keep = [i for i in range(A.dim) if i not in pivots]
    d = len(keep)
    reducer = rr.matrix.array[: rr.rank]  # rows reduce pivot coordinates

    def project(v: np.ndarray) -> np.ndarray:
        v = v.copy() % A.p
        for r, c in enumerate(rr.pivots):
            v = (v - v[c] * reducer[r]) % A.p
        return v[keep]

    proj = np.stack([project(np.eye(A.dim, dtype=np.int64)[:, i]) for i in range(A.dim)], axis=1)
    lift = np.zeros((A.dim, d), dtype=np.int64)
    for j, c in enumerate(keep):
        lift[c, j] = 1
    table = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(i, d):
            v = project(A.mult(lift[:, i], lift[:, j]))
            table[i, j] = v
            table[j, i] = v
    labels = [f"[{A.labels[c]}]" for c in keep]
    B = LocalAlgebra(A.p, table, labels)
    return QuotientRing(
        algebra=B,
        proj=PrimeFieldMatrix(proj, A.p),
        lift=PrimeFieldMatrix(lift, A.p),
        ideal=ideal,
    )
