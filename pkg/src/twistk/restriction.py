"""Restriction of K-groups of (E_k, tau_ell) along Z_m -> Z_n.

Two constructions of the same maps:

* closed form: ``p(xi) -> p(eta)`` on invariants (degree 0) and
  ``[p(xi)] -> [(1 + a + ... + a^(j-1)) p(eta)]`` on quotients (degree 1);
* the block map Phi on ``[R(Z_d')^j]^2``, whose kernel and cokernel are
  identified with the Z_m-groups, transported through the Mayer-Vietoris ladder.

Here ``d = gcd(n, k)``, ``d' = gcd(m, k)`` (called ``d_sub``), ``j = n d' / (m d)``
and ``a = eta^(d ell / n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IllFormedMap, InvalidPair, NotASubgroup
from .exactalg import (
    IntMatrix,
    ModuleMap,
    PresentedModule,
    cokernel,
    hstack,
    induced_map_analysis,
    kernel_basis,
    solve_columns,
    vstack,
)
from .ktheory import PointPair, compute_kgroups_closed, mv_matrix
from .report import VerificationReport
from .repring import (
    GroupRingElement,
    char_action_matrix,
    cyclic_gcd,
    multiplication_matrix,
    quotient_by_one_minus,
    restriction_ring_map,
)


@dataclass(frozen=True)
class RestrictionContext:
    n: int
    m: int
    k: int
    ell: int

    def __post_init__(self):
        PointPair(self.n, self.k, self.ell)
        if self.m < 1 or self.n % self.m:
            raise NotASubgroup(f"Z_{self.m} is not a subgroup of Z_{self.n}")
        num = self.n * self.d_sub
        if num % (self.m * self.d):
            raise InvalidPair("orbit count n*d'/(m*d) is not an integer")

    @property
    def pair(self) -> PointPair:
        return PointPair(self.n, self.k, self.ell)

    @property
    def restricted_pair(self) -> PointPair:
        """The same bundle and twist regarded as Z_m-equivariant."""
        return PointPair(self.m, self.k % self.m, self.ell % self.m)

    @property
    def d(self) -> int:
        return cyclic_gcd(self.n, self.k)

    @property
    def d_sub(self) -> int:
        return cyclic_gcd(self.m, self.k % self.m)

    @property
    def j(self) -> int:
        return self.n * self.d_sub // (self.m * self.d)

    @property
    def a_exponent(self) -> int:
        """Exponent of ``a = eta^(d ell / n)`` in R(Z_d_sub)."""
        return self.pair.twist_exponent % self.d_sub

    @property
    def target_exponent(self) -> int:
        """``d' ell / m`` reduced mod d'; equals ``j`` times the a-exponent."""
        return self.restricted_pair.twist_exponent

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "k": self.k, "ell": self.ell}


def restriction_contexts(max_n: int) -> list[RestrictionContext]:
    out = []
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            if n % m:
                continue
            for k in range(n):
                for ell in range(n):
                    if (k * ell) % n == 0:
                        out.append(RestrictionContext(n, m, k, ell))
    return out


def _coords(basis: IntMatrix, vectors: IntMatrix, what: str) -> IntMatrix:
    c = solve_columns(basis, vectors)
    if c is None:
        raise IllFormedMap(f"{what}: image does not lie in the span of the target basis")
    return c


def rest_k0_closed(ctx: RestrictionContext) -> ModuleMap:
    """K^0_{Z_n} -> K^0_{Z_m} on invariant submodules, ``p(xi) -> p(eta)``."""
    src = compute_kgroups_closed(ctx.pair)
    tgt = compute_kgroups_closed(ctx.restricted_pair)
    ring = restriction_ring_map(ctx.d, ctx.d_sub)
    coords = _coords(tgt.witnesses["k0_basis"], ring @ src.witnesses["k0_basis"], "rest_k0")
    f = ModuleMap(src.k0, tgt.k0, coords)
    f.certificate()
    return f


def k1_multiplier(ctx: RestrictionContext) -> GroupRingElement:
    """``1 + a + ... + a^(j-1)`` in R(Z_d_sub)."""
    return GroupRingElement.geometric(ctx.d_sub, ctx.a_exponent, ctx.j)


def rest_k1_closed(ctx: RestrictionContext) -> ModuleMap:
    """K^1_{Z_n} -> K^1_{Z_m}, ``[p(xi)] -> [(1 + a + ... + a^(j-1)) p(eta)]``."""
    src = quotient_by_one_minus(ctx.d, ctx.pair.twist_exponent)
    tgt = quotient_by_one_minus(ctx.d_sub, ctx.target_exponent)
    matrix = multiplication_matrix(k1_multiplier(ctx)) @ restriction_ring_map(ctx.d, ctx.d_sub)
    f = ModuleMap(src, tgt, matrix)
    f.certificate()
    return f


def phi_matrix(ctx: RestrictionContext) -> IntMatrix:
    """Block matrix of Phi on (p_1..p_j, q_1..q_j) over R(Z_d_sub).

    Output blocks: ``p_i - a q_i`` for i = 1..j, then ``p_i - q_(i+1)`` with the
    last one wrapping round to ``p_j - q_1``.
    """
    j, ds = ctx.j, ctx.d_sub
    eye = IntMatrix.identity(ds)
    zero = IntMatrix.zeros(ds, ds)
    a = char_action_matrix(ds, ctx.a_exponent)
    blocks = []
    for i in range(j):
        row = [zero] * (2 * j)
        row[i] = eye
        row[j + i] = -a
        blocks.append(row)
    for i in range(j):
        row = [zero] * (2 * j)
        row[i] = eye
        row[j + (i + 1) % j] = -eye
        blocks.append(row)
    return IntMatrix.block(blocks)


def ladder_vertical(ctx: RestrictionContext) -> IntMatrix:
    """``(p, q) -> (p(eta), ..., p(eta), q(eta), ..., q(eta))``, j copies each."""
    r = restriction_ring_map(ctx.d, ctx.d_sub)
    z = IntMatrix.zeros(ctx.d_sub, ctx.d)
    return IntMatrix.block([[r, z]] * ctx.j + [[z, r]] * ctx.j)


@dataclass(frozen=True)
class PhiIdentifications:
    phi: IntMatrix
    kernel_basis: IntMatrix
    ker_iso: ModuleMap
    coker_iso: ModuleMap
    coker_inverse: ModuleMap


def phi_identifications(ctx: RestrictionContext) -> PhiIdentifications:
    """ker(Phi) -> invariants via ``p_1``, and coker(Phi) -> quotient via the a-weighted sum."""
    j, ds = ctx.j, ctx.d_sub
    phi = phi_matrix(ctx)
    kb = kernel_basis(phi)
    tgt = compute_kgroups_closed(ctx.restricted_pair)
    first = IntMatrix.from_columns([c[:ds] for c in kb.columns()], ds) if kb.cols else IntMatrix.zeros(ds, 0)
    ker_coords = _coords(tgt.witnesses["k0_basis"], first, "ker_iso") if kb.cols else IntMatrix.zeros(tgt.k0.generators, 0)
    ker_iso = ModuleMap(PresentedModule.free(kb.cols), tgt.k0, ker_coords)

    a = char_action_matrix(ds, ctx.a_exponent)
    blocks = [IntMatrix.identity(ds)]
    blocks += [a ** (j + 1 - i) for i in range(2, j + 1)]
    blocks += [-a ** (j + 1 - i) for i in range(1, j + 1)]
    coker_src = cokernel(phi)
    quotient = quotient_by_one_minus(ds, ctx.target_exponent)
    coker_iso = ModuleMap(coker_src, quotient, hstack(blocks))
    inverse = ModuleMap(
        quotient,
        coker_src,
        vstack([IntMatrix.identity(ds), IntMatrix.zeros((2 * j - 1) * ds, ds)]),
    )
    return PhiIdentifications(phi, kb, ker_iso, coker_iso, inverse)


def _is_iso(f: ModuleMap) -> tuple[bool, dict]:
    try:
        an = induced_map_analysis(f)
    except IllFormedMap as exc:
        return False, {"error": str(exc)}
    return an.is_injective and an.is_surjective, {
        "kernel": an.kernel.to_dict(),
        "injective": an.is_injective,
        "surjective": an.is_surjective,
    }


def verify_phi_identifications(ctx: RestrictionContext, ids: PhiIdentifications, report: VerificationReport):
    ok, w = _is_iso(ids.ker_iso)
    report.add("phi_ker_iso", ok, w)
    ok, w = _is_iso(ids.coker_iso)
    report.add("phi_coker_iso", ok, w)
    inv_ok = ids.coker_inverse.is_well_defined()
    left = ids.coker_iso.compose(ids.coker_inverse)
    right = ids.coker_inverse.compose(ids.coker_iso)
    two_sided = (
        inv_ok
        and left.equals(ModuleMap.identity(ids.coker_iso.target))
        and right.equals(ModuleMap.identity(ids.coker_iso.source))
    )
    report.add("phi_coker_inverse", two_sided, {"well_defined": inv_ok})


def verify_restriction_agreement(ctx: RestrictionContext) -> VerificationReport:
    """Closed-form restriction maps against the maps transported through Phi."""
    report = VerificationReport("restriction", ctx.to_dict())
    with report.timed():
        pair = ctx.pair
        d = ctx.d
        mv = mv_matrix(pair)
        vert = ladder_vertical(ctx)
        ids = phi_identifications(ctx)
        report.add("ladder_commutes", ids.phi @ vert == vert @ mv)

        try:
            r0 = rest_k0_closed(ctx)
            r1 = rest_k1_closed(ctx)
        except IllFormedMap as exc:
            report.add("closed_maps_well_defined", False, {"error": str(exc)})
            return report
        report.add("closed_maps_well_defined", True)
        verify_phi_identifications(ctx, ids, report)

        # degree 0: invariants -> ker(MV) via p -> (p, p), down the ladder, then p_1
        src_basis = compute_kgroups_closed(pair).witnesses["k0_basis"]
        in_ker = vstack([src_basis, src_basis])
        lifted = vert @ in_ker
        if (mv @ in_ker).is_zero() and (ids.phi @ lifted).is_zero() and ids.kernel_basis.cols:
            coords = solve_columns(ids.kernel_basis, lifted)
            transported = ids.ker_iso.matrix @ coords if coords is not None else None
        else:
            transported = None
        report.add(
            "k0_agreement",
            transported is not None and transported == r0.matrix,
            {"closed": r0.matrix, "transported": transported},
        )

        # degree 1: quotient -> coker(MV) via p -> (p, 0), down the ladder, then the weighted sum
        section = vstack([IntMatrix.identity(d), IntMatrix.zeros(d, d)])
        down = ModuleMap(cokernel(mv), cokernel(ids.phi), vert)
        up = ModuleMap(r1.source, cokernel(mv), section)
        transported1 = ids.coker_iso.compose(down.compose(up))
        ok1 = (
            down.is_well_defined()
            and up.is_well_defined()
            and transported1.is_well_defined()
            and transported1.equals(r1)
        )
        report.add("k1_agreement", ok1, {"closed": r1.matrix, "transported": transported1.matrix})
    return report
