"""T-dual pairs over a point and the checks reducing T-admissibility to computation.

For the dual pairs (E_k, tau_ell) and (E_ell, tau_k) with d = gcd(n, k) and
d' = gcd(n, ell), restriction to Z_d turns both into pairs with trivial
action.  The residual Z_n generator acts on the restricted groups by
multiplication by xi^(d ell/n), respectively zeta^(d' k/n).  Left-diagram
restrictions must be isomorphisms onto the fixed submodules; right-diagram
restrictions must be injective onto C times the fixed submodules, with the same
constant C on both sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import ConstantMismatch
from .exactalg import (
    IntMatrix,
    ModuleMap,
    cokernel,
    fixed_submodule,
    index_in,
    induced_map_analysis,
    kernel_basis,
    echelon_basis,
    lattice_le,
    solve_columns,
    submodule_equal,
)
from .ktheory import PointPair, classify_pairs, compute_kgroups_closed, compute_kgroups_mv
from .report import MODEL_NOTE, VerificationReport
from .repring import char_action_matrix, cyclic_gcd, restriction_ring_map
from .restriction import RestrictionContext, rest_k0_closed, rest_k1_closed

BUNDLE, DUAL = "bundle", "dual"


def dual_pair(p: PointPair) -> PointPair:
    return PointPair(p.n, p.ell, p.k)


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualityConstants:
    n: int
    k: int
    ell: int
    d: int
    d_prime: int
    alpha: int
    beta: int
    beta_prime: int
    c_left: int
    c_right: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _exact_div(a: int, b: int, what: str) -> int:
    q, r = divmod(a, b)
    if r:
        raise ConstantMismatch(f"{what} = {a}/{b} is not an integer")
    return q


def _raw_constants(n: int, k: int, ell: int) -> tuple[int, ...]:
    d = gcd(n, k) if k else n
    dp = gcd(n, ell) if ell else n
    g = gcd(d, ell)
    e = _exact_div(d * ell, n, "d*ell/n")
    f = _exact_div(dp * k, n, "d'*k/n")
    alpha = _exact_div(g, gcd(g, e), "alpha")
    beta = _exact_div(dp, gcd(dp, f), "beta")
    beta_prime = _exact_div(g, gcd(g, f), "beta'")
    c_left = _exact_div(n, d * alpha, "n/(d*alpha)")
    c_right = _exact_div(beta, beta_prime, "beta/beta'")
    if c_left != c_right:
        raise ConstantMismatch(f"n/(d alpha) = {c_left} but beta/beta' = {c_right} for (n={n}, k={k}, ell={ell})")
    return (n, k, ell, d, dp, alpha, beta, beta_prime, c_left, c_right)


def duality_constants(p: PointPair) -> DualityConstants:
    """alpha, beta, beta' and both expressions for the constant C.

    Raises ConstantMismatch if any quantity fails to be an integer or the two
    expressions for C disagree.
    """
    return DualityConstants(*_raw_constants(p.n, p.k, p.ell))


@lru_cache(maxsize=None)
def _divisors(m: int) -> tuple[int, ...]:
    small, large = [], []
    i = 1
    while i * i <= m:
        if m % i == 0:
            small.append(i)
            if i * i != m:
                large.append(m // i)
        i += 1
    return tuple(small + large[::-1])


def additive_order(x: int, m: int) -> int:
    """Order of x in Z_m: least divisor t of m with t*x = 0 mod m.

    This is the multiplicative order of xi^x in a cyclic group of order m.
    """
    for t in _divisors(m):
        if (t * x) % m == 0:
            return t
    raise AssertionError("unreachable: m itself kills x")


def constants_check(n: int, k: int, ell: int) -> tuple[bool, dict | None]:
    """Fast gcd-chain and order checks for sweeps; witness only on failure.

    The caller guarantees k*ell = 0 mod n.
    """
    try:
        _, _, _, d, dp, alpha, beta, beta_prime, _, _ = _raw_constants(n, k, ell)
    except ConstantMismatch as exc:
        return False, {"n": n, "k": k, "ell": ell, "error": str(exc)}
    g = gcd(d, ell)
    f = dp * k // n
    ok = (
        alpha == additive_order(d * ell // n, g)
        and beta == additive_order(f, dp)
        and beta_prime == additive_order(f, g)
    )
    if ok:
        return True, None
    return False, DualityConstants(*_raw_constants(n, k, ell)).to_dict()


def verify_constants(p: PointPair) -> VerificationReport:
    report = VerificationReport("constants", p.to_dict())
    with report.timed():
        try:
            c = duality_constants(p)
        except ConstantMismatch as exc:
            report.add("gcd_chain", False, {"error": str(exc)})
            return report
        d, dp = c.d, c.d_prime
        g = gcd(d, p.ell)
        e = d * p.ell // p.n
        f = dp * p.k // p.n
        report.add("gcd_chain", c.c_left == c.c_right, c)
        # the quotient R(Z_d)/<1 - xi^ell> forces xi to have order gcd(d, ell)
        report.add(
            "alpha_order",
            c.alpha == additive_order(e, g),
            {"alpha": c.alpha, "order_in_quotient": additive_order(e, g), "order_in_R(Z_d)": additive_order(e, d)},
        )
        report.add("beta_order", c.beta == additive_order(f, dp), {"beta": c.beta, "order": additive_order(f, dp)})
        report.add(
            "beta_prime_order",
            c.beta_prime == additive_order(f, g),
            {"beta_prime": c.beta_prime, "order": additive_order(f, g)},
        )
    return report


# ---------------------------------------------------------------------------
# group isomorphism
# ---------------------------------------------------------------------------


def verify_group_isomorphism(p: PointPair) -> VerificationReport:
    """K^0(p) ≅ K^1(dual p) and K^1(p) ≅ K^0(dual p), both routes agreeing."""
    q = dual_pair(p)
    report = VerificationReport("isomorphism", p.to_dict(), note=MODEL_NOTE)
    with report.timed():
        groups = {}
        for side, pair in ((BUNDLE, p), (DUAL, q)):
            mv = compute_kgroups_mv(pair)
            cf = compute_kgroups_closed(pair)
            groups[side] = cf
            report.add(
                "routes_agree_k0",
                mv.k0.invariant_factors == cf.k0.invariant_factors,
                {"side": side, "mv": mv.k0, "closed": cf.k0},
            )
            report.add(
                "routes_agree_k1",
                mv.k1.invariant_factors == cf.k1.invariant_factors,
                {"side": side, "mv": mv.k1, "closed": cf.k1},
            )
        a, b = groups[BUNDLE], groups[DUAL]
        report.add("k0_iso", a.k0.isomorphic(b.k1), {"k0": a.k0, "dual_k1": b.k1})
        report.add("k1_iso", a.k1.isomorphic(b.k0), {"k1": a.k1, "dual_k0": b.k0})
    return report


# ---------------------------------------------------------------------------
# generator action and restriction diagrams
# ---------------------------------------------------------------------------


def _context(p: PointPair, side: str) -> RestrictionContext:
    if side == BUNDLE:
        return RestrictionContext(p.n, p.d, p.k, p.ell)
    if side == DUAL:
        return RestrictionContext(p.n, p.d, p.ell, p.k)
    raise ValueError(f"side must be {BUNDLE!r} or {DUAL!r}")


def action_exponent(p: PointPair, side: str) -> int:
    """xi^(d ell/n) on the bundle side, zeta^(d' k/n) on the dual side."""
    if side == BUNDLE:
        return p.twist_exponent
    return cyclic_gcd(p.n, p.ell) * p.k // p.n


def generator_action(p: PointPair, side: str, degree: int) -> ModuleMap:
    """Action of the Z_n generator on the Z_d-restricted K-group of one side."""
    ctx = _context(p, side)
    rp = ctx.restricted_pair  # a Z_d pair with trivial action
    ring = rp.d
    mult = char_action_matrix(ring, action_exponent(p, side))
    closed = compute_kgroups_closed(rp)
    if degree == 0:
        basis = closed.witnesses["k0_basis"]
        coords = kernel_free_coords(basis, mult @ basis)
        return ModuleMap(closed.k0, closed.k0, coords)
    if degree == 1:
        return ModuleMap(closed.k1, closed.k1, mult)
    raise ValueError("degree must be 0 or 1")


def kernel_free_coords(basis: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    c = solve_columns(basis, vectors)
    if c is None:
        raise ValueError("action does not preserve the invariant submodule")
    return c


def map_order(f: ModuleMap, bound: int) -> int | None:
    """Least t <= bound with f^t = id on the quotient, else None."""
    ident = ModuleMap.identity(f.source)
    power = ident
    for t in range(1, bound + 1):
        power = f.compose(power)
        if power.equals(ident):
            return t
    return None


def _scaled(inclusion: ModuleMap, c: int) -> ModuleMap:
    return ModuleMap(inclusion.source, inclusion.target, inclusion.matrix.scale(c))


def _left_check(report: VerificationReport, name: str, rest: ModuleMap, action: ModuleMap):
    fixed = fixed_submodule(action)
    an = induced_map_analysis(rest)
    onto = submodule_equal(rest, fixed)
    report.add(
        name,
        an.is_injective and onto,
        {"injective": an.is_injective, "image_equals_fixed": onto, "fixed_rank": fixed.source.rank},
    )


def _constant_from_index(quotient: tuple[int, ...] | None, rank: int) -> int | None:
    """C if fixed/image is (Z_C)^rank, else None."""
    if quotient is None:
        return None
    if not quotient:
        return 1
    if len(quotient) == rank and len(set(quotient)) == 1 and quotient[0] > 1:
        return quotient[0]
    return None


def _right_check(report: VerificationReport, name: str, rest: ModuleMap, action: ModuleMap, c_expected: int) -> int | None:
    fixed = fixed_submodule(action)
    an = induced_map_analysis(rest)
    quotient = index_in(rest, fixed)
    c_img = _constant_from_index(quotient, fixed.source.rank)
    equal_to_scaled = submodule_equal(rest, _scaled(fixed, c_expected))
    report.add(
        name,
        an.is_injective and equal_to_scaled and c_img is not None,
        {
            "injective": an.is_injective,
            "fixed_over_image": None if quotient is None else list(quotient),
            "C_from_index": c_img,
            "image_equals_C_fixed": equal_to_scaled,
        },
    )
    return c_img


def verify_admissibility_diagrams(p: PointPair) -> VerificationReport:
    report = VerificationReport("diagrams", p.to_dict(), note=MODEL_NOTE)
    with report.timed():
        consts = duality_constants(p)
        c = consts.c_left
        bundle_ctx, dual_ctx = _context(p, BUNDLE), _context(p, DUAL)

        actions = {(s, i): generator_action(p, s, i) for s in (BUNDLE, DUAL) for i in (0, 1)}
        orders = {f"{s}_k{i}": map_order(a, p.n) for (s, i), a in actions.items()}
        report.add(
            "action_order_divides_n",
            all(t is not None and p.n % t == 0 for t in orders.values()),
            orders,
        )

        _left_check(report, "left_k0_fixed_iso", rest_k0_closed(bundle_ctx), actions[BUNDLE, 0])
        _left_check(report, "left_k1_fixed_iso", rest_k1_closed(dual_ctx), actions[DUAL, 1])
        c1 = _right_check(report, "right_k1_image_C", rest_k1_closed(bundle_ctx), actions[BUNDLE, 1], c)
        c0 = _right_check(report, "right_k0_image_C", rest_k0_closed(dual_ctx), actions[DUAL, 0], c)
        report.add(
            "constant_C_matches",
            c1 == c and c0 == c,
            {"c_left": consts.c_left, "c_right": consts.c_right, "right_k1": c1, "right_k0": c0},
        )
        report.note = MODEL_NOTE + " " + _literal_exponent_note(p)
    return report


def literal_exponent_comparison(p: PointPair) -> dict:
    """Compare the dual-side exponent d'k/n against the literal d'k/ell reading.

    Both are reduced into R(Z_gcd(d, ell)).  ``literal`` is None when d'k/ell is
    not an integer (or ell = 0).
    """
    d, dp = p.d, cyclic_gcd(p.n, p.ell)
    g = gcd(d, p.ell)
    used = (dp * p.k // p.n) % g
    literal = None
    if p.ell and (dp * p.k) % p.ell == 0:
        literal = (dp * p.k // p.ell) % g
    return {
        "used_exponent": used,
        "literal_exponent": literal,
        "differs": literal is not None and literal != used,
    }


def _literal_exponent_note(p: PointPair) -> str:
    cmp = literal_exponent_comparison(p)
    if cmp["literal_exponent"] is None:
        return "Literal d'k/ell exponent is undefined here (not an integer, or ell = 0)."
    if not cmp["differs"]:
        return "Literal d'k/ell exponent agrees with d'k/n here."
    return (
        f"Literal d'k/ell exponent ({cmp['literal_exponent']}) differs from the "
        f"d'k/n exponent ({cmp['used_exponent']}) used here."
    )


def verify_ek0_claims(n: int, k: int) -> VerificationReport:
    """Trivial-twist case: (E_k, 0) against (E_0, k), restricted to Z_d."""
    p = PointPair(n, k, 0)
    d = p.d
    report = VerificationReport("ek0", {"n": n, "k": k})
    with report.timed():
        ring = restriction_ring_map(n, d)
        ker = echelon_basis(kernel_basis(ring).columns(), n)
        ideal = echelon_basis((IntMatrix.identity(n) - char_action_matrix(n, k)).columns(), n)
        report.add(
            "ek0_kernel_ideal",
            lattice_le(ker, ideal) and lattice_le(ideal, ker),
            {"kernel_rank": len(ker), "ideal_rank": len(ideal)},
        )
        report.add("ek0_surjective", cokernel(ring).is_trivial)

        scale = n // d
        for name, f in (
            ("ek0_k1_image", rest_k1_closed(RestrictionContext(n, d, k, 0))),
            ("ek0_k0_dual_image", rest_k0_closed(RestrictionContext(n, d, 0, k))),
        ):
            target = ModuleMap.identity(f.target)
            an = induced_map_analysis(f)
            eq = submodule_equal(f, _scaled(target, scale))
            report.add(name, an.is_injective and eq, {"injective": an.is_injective, "scale": scale})
    return report


def duality_instances(max_n: int) -> list[PointPair]:
    return [p for n in range(1, max_n + 1) for p in classify_pairs(n)]
