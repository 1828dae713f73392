"""Twisted equivariant K-groups of circle bundles over a point.

A Z_n-equivariant pair over a point is ``(E_k, tau_ell)`` with ``k * ell = 0 mod n``.
Its K-groups are computed two ways:

* ``mv``: kernel and cokernel of the two-cell Mayer-Vietoris matrix
  ``[[1, -xi^e], [1, -1]]`` over R(Z_d), ``d = gcd(n, k)``, ``e = d * ell / n``;
* ``closed_form``: the xi^e-invariants of R(Z_d) and the quotient
  ``R(Z_d) / <1 - xi^e>``.

The same Mayer-Vietoris shape over R(K) handles finite abelian G acting on the
circle through a character with kernel K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import CharacterDomainMismatch, InvalidPair
from .exactalg import IntMatrix, PresentedModule, cokernel, kernel_basis
from .repring import (
    Character,
    FiniteAbelianGroup,
    char_action_matrix,
    cyclic_gcd,
    invariant_submodule,
    kernel_with_generators,
    quotient_by_one_minus,
    translation_matrix,
)


@dataclass(frozen=True, order=True)
class PointPair:
    """The Z_n-equivariant pair (E_k, tau_ell) over a point."""

    n: int
    k: int
    ell: int

    def __post_init__(self):
        n, k, ell = self.n, self.k, self.ell
        if n < 1:
            raise InvalidPair(f"group order must be positive, got n={n}")
        if not (0 <= k < n and 0 <= ell < n):
            raise InvalidPair(f"k and ell must lie in [0, {n}), got k={k}, ell={ell}")
        if (k * ell) % n:
            raise InvalidPair(f"k*ell = {k * ell} is not 0 mod {n}")

    @property
    def d(self) -> int:
        return cyclic_gcd(self.n, self.k)

    @property
    def twist_exponent(self) -> int:
        """``d * ell / n``, which must be an integer for a valid pair."""
        num = self.d * self.ell
        if num % self.n:
            raise InvalidPair(f"d*ell/n = {num}/{self.n} is not an integer")
        return num // self.n

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "ell": self.ell}

    def __str__(self) -> str:
        return f"(n={self.n}, k={self.k}, ell={self.ell})"


@dataclass(frozen=True)
class KGroupPair:
    k0: PresentedModule
    k1: PresentedModule
    provenance: str
    witnesses: dict = field(default_factory=dict, compare=False)

    def factors(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.k0.invariant_factors, self.k1.invariant_factors)

    def to_dict(self) -> dict:
        return {"k0": self.k0.to_dict(), "k1": self.k1.to_dict(), "provenance": self.provenance}


def classify_twists(n: int, k: int) -> list[int]:
    """All twist classes ell on E_k, i.e. ell in Z_n with k * ell = 0."""
    if n < 1 or not 0 <= k < n:
        raise InvalidPair(f"need n >= 1 and 0 <= k < n, got n={n}, k={k}")
    step = n // cyclic_gcd(n, k)
    return list(range(0, n, step))


def classify_pairs(n: int) -> list[PointPair]:
    """Every Z_n-equivariant pair over a point, lexicographic in (k, ell)."""
    if n < 1:
        raise InvalidPair(f"group order must be positive, got n={n}")
    return [PointPair(n, k, ell) for k in range(n) for ell in classify_twists(n, k)]


def mayer_vietoris_block(action: IntMatrix) -> IntMatrix:
    """``[[I, -A], [I, -I]]``: the map (x, y) -> (x - A y, x - y)."""
    size = action.rows
    eye = IntMatrix.identity(size)
    return IntMatrix.block([[eye, -action], [eye, -eye]])


def mv_matrix(pair: PointPair) -> IntMatrix:
    return mayer_vietoris_block(char_action_matrix(pair.d, pair.twist_exponent))


def _kernel_and_cokernel(matrix: IntMatrix, provenance: str) -> KGroupPair:
    kb = kernel_basis(matrix)
    return KGroupPair(
        k0=PresentedModule.free(kb.cols),
        k1=cokernel(matrix),
        provenance=provenance,
        witnesses={"k0_basis": kb, "mv_matrix": matrix},
    )


def compute_kgroups_mv(pair: PointPair) -> KGroupPair:
    return _kernel_and_cokernel(mv_matrix(pair), "mv")


def compute_kgroups_closed(pair: PointPair) -> KGroupPair:
    d, e = pair.d, pair.twist_exponent
    inv = invariant_submodule(d, e)
    return KGroupPair(
        k0=inv.module,
        k1=quotient_by_one_minus(d, e),
        provenance="closed_form",
        witnesses={"k0_basis": inv.basis},
    )


# ---------------------------------------------------------------------------
# finite abelian groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianPointInput:
    """G acting on the circle through ``phi: G -> Z_n``, twisted by a character of ker(phi)."""

    g: FiniteAbelianGroup
    phi: tuple[int, ...]
    n: int
    twist_char: Character

    def kernel(self) -> FiniteAbelianGroup:
        return kernel_with_generators(self.g, self.phi, self.n).group

    def validate(self) -> FiniteAbelianGroup:
        k = self.kernel()
        if self.twist_char.group != k:
            raise CharacterDomainMismatch(
                f"twist character lives on {self.twist_char.group.cyclic_factors}, "
                f"kernel is {k.cyclic_factors}"
            )
        return k

    def orbit_count(self) -> int:
        """Number of twist-character orbits on Irr(K)."""
        k = self.validate()
        return k.order // self.twist_char.order

    def to_dict(self) -> dict:
        return {
            "group": self.g.to_dict(),
            "phi": list(self.phi),
            "n": self.n,
            "twist_char": self.twist_char.to_dict(),
        }


def abelian_mv_matrix(inp: AbelianPointInput) -> IntMatrix:
    inp.validate()
    return mayer_vietoris_block(translation_matrix(inp.twist_char))


def compute_kgroups_abelian(inp: AbelianPointInput) -> KGroupPair:
    return _kernel_and_cokernel(abelian_mv_matrix(inp), "mv")


def cyclic_abelian_input(pair: PointPair) -> AbelianPointInput:
    """``pair`` recast as G = Z_n acting through ``x -> k x``.

    The kernel is the subgroup generated by n/d; the twist character is the
    restriction of xi^e, read off on whichever generator the kernel computation picks.
    """
    n, d, e = pair.n, pair.d, pair.twist_exponent
    g = FiniteAbelianGroup((n,))
    kd = kernel_with_generators(g, (pair.k,), n)
    if not kd.group.cyclic_factors:
        chi = Character.trivial(kd.group)
    else:
        gen = kd.generators.column(0)[0]
        unit = gen // (n // d)
        chi = Character(kd.group, ((e * unit) % d,))
    return AbelianPointInput(g, (pair.k,), n, chi)


def abelian_input(factors: Sequence[int], phi: Sequence[int], n: int, twist: Sequence[int] | None = None) -> AbelianPointInput:
    """Convenience constructor; ``twist`` gives exponents on the kernel's cyclic factors."""
    g = FiniteAbelianGroup(tuple(factors))
    k = kernel_with_generators(g, tuple(phi), n).group
    chi = Character.trivial(k) if twist is None else Character(k, tuple(twist))
    return AbelianPointInput(g, tuple(phi), n, chi)
