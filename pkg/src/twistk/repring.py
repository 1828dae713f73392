"""Representation rings of finite cyclic and finite abelian groups.

``R(Z_d)`` is modelled as ``Z[xi]/(xi^d - 1)`` with basis ``1, xi, ..., xi^(d-1)``.
Multiplication by a character ``xi^a`` permutes that basis, which is all the
structure the K-group computations need.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterator, Sequence

from .errors import CharacterDomainMismatch, IllFormedHom, ModulusMismatch, NotASubgroup, ShapeError
from .exactalg import (
    IntMatrix,
    PresentedModule,
    cokernel,
    echelon_basis,
    kernel_basis,
    smith_normal_form,
    solve_columns,
)


def cyclic_gcd(n: int, k: int) -> int:
    """gcd with the convention gcd(n, 0) = n."""
    return gcd(n, k) if k else n


@dataclass(frozen=True)
class GroupRingElement:
    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.modulus:
            raise ShapeError(f"{len(self.coeffs)} coefficients for R(Z_{self.modulus})")

    @classmethod
    def zero(cls, d: int) -> "GroupRingElement":
        return cls(d, (0,) * d)

    @classmethod
    def one(cls, d: int) -> "GroupRingElement":
        return cls.monomial(d, 0)

    @classmethod
    def monomial(cls, d: int, a: int, c: int = 1) -> "GroupRingElement":
        """``c * xi^a`` in R(Z_d)."""
        out = [0] * d
        out[a % d] = c
        return cls(d, tuple(out))

    @classmethod
    def geometric(cls, d: int, a: int, terms: int) -> "GroupRingElement":
        """``1 + xi^a + ... + xi^(a*(terms-1))``."""
        out = [0] * d
        for t in range(terms):
            out[(a * t) % d] += 1
        return cls(d, tuple(out))

    def _check(self, other: "GroupRingElement"):
        if not isinstance(other, GroupRingElement):
            raise TypeError(f"cannot combine GroupRingElement with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"R(Z_{self.modulus}) vs R(Z_{other.modulus})")

    def __add__(self, other):
        self._check(other)
        return GroupRingElement(self.modulus, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return GroupRingElement(self.modulus, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return GroupRingElement(self.modulus, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.modulus, tuple(other * x for x in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GroupRingElement":
        out = GroupRingElement.one(self.modulus)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def augmentation(self) -> int:
        return sum(self.coeffs)

    def to_dict(self) -> dict:
        return {"modulus": self.modulus, "coeffs": list(self.coeffs)}

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if i == 0 else ("ξ" if i == 1 else f"ξ^{i}")
            if i and abs(c) == 1:
                terms.append(("-" if c < 0 else "+") + mono)
            else:
                terms.append(f"{c:+d}" + ("" if i == 0 else mono))
        s = "".join(terms).lstrip("+")
        return s or "0"


def mul(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    """Cyclic convolution in R(Z_d)."""
    if x.modulus != y.modulus:
        raise ModulusMismatch(f"R(Z_{x.modulus}) vs R(Z_{y.modulus})")
    d = x.modulus
    out = [0] * d
    for i, a in enumerate(x.coeffs):
        if a:
            for j, b in enumerate(y.coeffs):
                if b:
                    out[(i + j) % d] += a * b
    return GroupRingElement(d, tuple(out))


def multiplication_matrix(x: GroupRingElement) -> IntMatrix:
    """Matrix of ``p -> x * p`` on the basis ``1, xi, ..., xi^(d-1)``."""
    d = x.modulus
    return IntMatrix.from_rows([[x.coeffs[(i - j) % d] for j in range(d)] for i in range(d)], d)


def char_action_matrix(d: int, a: int) -> IntMatrix:
    """Permutation matrix of multiplication by ``xi^a``: basis index i goes to i + a."""
    if d < 1:
        raise ValueError("modulus must be positive")
    a %= d
    return IntMatrix.from_rows([[1 if (j + a) % d == i else 0 for j in range(d)] for i in range(d)], d)


def orbits(d: int, a: int) -> list[list[int]]:
    """Orbits of ``i -> i + a`` on Z/d, each listed from its least element."""
    seen = [False] * d
    out = []
    for i in range(d):
        if seen[i]:
            continue
        orb = []
        j = i
        while not seen[j]:
            seen[j] = True
            orb.append(j)
            j = (j + a) % d
        out.append(orb)
    return out


@dataclass(frozen=True)
class InvariantSubmodule:
    basis: IntMatrix
    module: PresentedModule


def invariant_submodule(d: int, a: int) -> InvariantSubmodule:
    """Fixed points of multiplication by ``xi^a`` on R(Z_d).

    The basis columns are orbit sums, ordered by least orbit element, so the
    fixed submodule is free of rank gcd(d, a).
    """
    cols = []
    for orb in orbits(d, a):
        v = [0] * d
        for i in orb:
            v[i] = 1
        cols.append(v)
    return InvariantSubmodule(IntMatrix.from_columns(cols, d), PresentedModule.free(len(cols)))


def quotient_by_one_minus(d: int, a: int) -> PresentedModule:
    """``R(Z_d) / <1 - xi^a>`` presented on the monomial basis."""
    return cokernel(IntMatrix.identity(d) - char_action_matrix(d, a))


def restriction_ring_map(d: int, d_sub: int) -> IntMatrix:
    """Matrix of R(Z_d) -> R(Z_d_sub), ``xi^i -> eta^(i mod d_sub)``."""
    if d_sub < 1 or d % d_sub:
        raise NotASubgroup(f"Z_{d_sub} is not a subgroup of Z_{d}")
    return IntMatrix.from_rows([[1 if j % d_sub == i else 0 for j in range(d)] for i in range(d_sub)], d)


# ---------------------------------------------------------------------------
# finite abelian groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups ``Z_m1 x ... x Z_mr``."""

    cyclic_factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cyclic_factors", tuple(int(m) for m in self.cyclic_factors))
        if any(m < 1 for m in self.cyclic_factors):
            raise ValueError("cyclic factor orders must be positive")

    @property
    def order(self) -> int:
        return prod(self.cyclic_factors)

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.cyclic_factors))

    def index(self, elem: Sequence[int]) -> int:
        """Mixed-radix position of ``elem`` in :meth:`elements` order."""
        i = 0
        for x, m in zip(elem, self.cyclic_factors):
            i = i * m + x % m
        return i

    def dual(self) -> "FiniteAbelianGroup":
        return self

    def to_dict(self) -> dict:
        return {"factors": list(self.cyclic_factors)}


@dataclass(frozen=True)
class Character:
    """One-dimensional character of a finite abelian group, as a dual-group element."""

    group: FiniteAbelianGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.group.cyclic_factors):
            raise ShapeError("one exponent per cyclic factor")
        object.__setattr__(
            self,
            "exponents",
            tuple(int(e) % m for e, m in zip(self.exponents, self.group.cyclic_factors)),
        )

    @classmethod
    def trivial(cls, group: FiniteAbelianGroup) -> "Character":
        return cls(group, (0,) * len(group.cyclic_factors))

    def __call__(self, elem: Sequence[int]) -> Fraction:
        """Value as an element of Q/Z: the character is ``exp(2 pi i * value)``."""
        return sum((Fraction(e * x, m) for e, x, m in zip(self.exponents, elem, self.group.cyclic_factors)), Fraction(0)) % 1

    def __mul__(self, other: "Character") -> "Character":
        if other.group != self.group:
            raise CharacterDomainMismatch("characters of different groups")
        return Character(self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    @property
    def order(self) -> int:
        out = 1
        for e, m in zip(self.exponents, self.group.cyclic_factors):
            t = m // gcd(m, e)
            out = out * t // gcd(out, t)
        return out

    def to_dict(self) -> dict:
        return {"factors": list(self.group.cyclic_factors), "exponents": list(self.exponents)}


def characters(group: FiniteAbelianGroup) -> list[Character]:
    return [Character(group, e) for e in group.elements()]


def translation_matrix(chi: Character) -> IntMatrix:
    """Multiplication by ``chi`` on R(K), permuting the basis Irr(K) = dual group."""
    g = chi.group
    size = g.order
    rows = [[0] * size for _ in range(size)]
    for j, e in enumerate(g.elements()):
        i = g.index(tuple(x + y for x, y in zip(e, chi.exponents)))
        rows[i][j] = 1
    return IntMatrix.from_rows(rows, size)


def _check_hom(g: FiniteAbelianGroup, phi: Sequence[int], n: int):
    if n < 1:
        raise IllFormedHom("target order must be positive")
    if len(phi) != len(g.cyclic_factors):
        raise IllFormedHom("one image exponent per cyclic factor")
    for c, m in zip(phi, g.cyclic_factors):
        if (c * m) % n:
            raise IllFormedHom(f"generator of order {m} cannot map to {c} in Z_{n}")


@dataclass(frozen=True)
class KernelData:
    group: FiniteAbelianGroup
    generators: IntMatrix  # columns: elements of G generating the kernel, one per cyclic factor


def kernel_with_generators(g: FiniteAbelianGroup, phi: Sequence[int], n: int) -> KernelData:
    """Kernel of ``G -> Z_n`` with generators realising its cyclic-factor form."""
    _check_hom(g, phi, n)
    r = len(g.cyclic_factors)
    if r == 0:
        return KernelData(FiniteAbelianGroup(()), IntMatrix.zeros(0, 0))
    # x in Z^r maps into the kernel iff sum(phi_i x_i) + n y = 0 for some y
    kb = kernel_basis(IntMatrix.from_rows([list(phi) + [n]]))
    lat = echelon_basis((c[:r] for c in kb.columns()), r)
    lat_m = IntMatrix.from_columns(lat, r)
    rel = solve_columns(lat_m, IntMatrix.diagonal(g.cyclic_factors))
    # K = Z^lat / rel; diagonalise to read off cyclic factors and generators
    snf = smith_normal_form(rel)
    u_inv = _unimodular_inverse(snf.u)
    gens = lat_m @ u_inv
    factors, cols = [], []
    for i, dval in enumerate(snf.diagonal):
        if dval > 1:
            factors.append(dval)
            cols.append(tuple(x % m for x, m in zip(gens.column(i), g.cyclic_factors)))
    # the relation matrix has full rank, so no free part survives
    if not cols:
        return KernelData(FiniteAbelianGroup(()), IntMatrix.zeros(r, 0))
    return KernelData(FiniteAbelianGroup(tuple(factors)), IntMatrix.from_columns(cols, r))


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    inv = solve_columns(u, IntMatrix.identity(u.rows))
    assert inv is not None
    return inv


def kernel_of_hom(g: FiniteAbelianGroup, phi: Sequence[int], n: int) -> FiniteAbelianGroup:
    """Kernel of the homomorphism ``G -> Z_n`` sending the i-th generator to ``phi[i]``."""
    return kernel_with_generators(g, phi, n).group


def image_order(g: FiniteAbelianGroup, phi: Sequence[int], n: int) -> int:
    _check_hom(g, phi, n)
    step = n
    for c in phi:
        step = gcd(step, c % n)
    return n // step
