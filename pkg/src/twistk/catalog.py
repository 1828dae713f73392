"""Worked examples as queryable data.

S^1-equivariant groups are stored facts (they live over R(S^1), outside the
integer engine).  Each module payload records rank and torsion, and is
materialised as a :class:`PresentedModule` for consistency checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedParameter
from .exactalg import IntMatrix, PresentedModule
from .ktheory import PointPair
from .tduality import dual_pair

KGROUP_FORMULA = "kgroup_formula"
H3_CLASS = "h3_class"
DUAL_PAIR_RULE = "dual_pair_rule"


@dataclass(frozen=True)
class ModuleDescription:
    """A finitely generated abelian group named by rank and torsion."""

    rank: int
    torsion: tuple[int, ...] = ()
    label: str = ""

    def build(self) -> PresentedModule:
        g = self.rank + len(self.torsion)
        rel = IntMatrix.diagonal(list(self.torsion), g, len(self.torsion))
        return PresentedModule(g, rel)

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion), "label": self.label}


@dataclass(frozen=True)
class CatalogEntry:
    identifier: str
    inputs: dict
    kind: str
    payload: dict
    anchor: str

    def to_dict(self) -> dict:
        return {
            "identifier": self.identifier,
            "inputs": dict(self.inputs),
            "kind": self.kind,
            "payload": {k: (v.to_dict() if hasattr(v, "to_dict") else v) for k, v in self.payload.items()},
            "anchor": self.anchor,
        }


S1_ANCHOR = "Examples: S^1 acting on E_k over a point"
S2_ANCHOR = "Examples: S^1 acting on S^2 by rotations"
NOFLUX_ANCHOR = "Equivariant T-duality setup: trivial twist versus trivial bundle"


def s1_point_entry(k: int) -> CatalogEntry:
    """K-groups of the S^1-equivariant pairs (E_k, 0) and (E_0, P_k)."""
    if k == 0:
        raise UnsupportedParameter("k = 0 is the trivial bundle with untabulated K-groups")
    if k < 0:
        raise UnsupportedParameter("bundle class must be a positive integer")
    rk = ModuleDescription(k, (), f"R(Z_{k})")
    zero = ModuleDescription(0, (), "0")
    return CatalogEntry(
        identifier=f"s1_point_k{k}",
        inputs={"k": k},
        kind=KGROUP_FORMULA,
        payload={
            "K0(E_k)": rk,
            "K1(E_k)": zero,
            "K0(E_0,P_k)": zero,
            "K1(E_0,P_k)": rk,
        },
        anchor=S1_ANCHOR,
    )


def s2_h3(p: int, q: int) -> ModuleDescription:
    """Degree-3 equivariant cohomology of E_{p,q} over S^2."""
    zeros = (p == 0) + (q == 0)
    return ModuleDescription(zeros, (), {2: "Z^2", 1: "Z", 0: "0"}[zeros])


def s2_h3_entry(p: int, q: int) -> CatalogEntry:
    return CatalogEntry(f"s2_h3_{p}_{q}", {"p": p, "q": q}, H3_CLASS, {"H3": s2_h3(p, q)}, S2_ANCHOR)


def _zero_twist(p: int, q: int) -> tuple[int, ...]:
    # H^3 of E_{p,q} has one integer per vanishing bundle coordinate
    return (0,) * ((p == 0) + (q == 0))


@dataclass(frozen=True)
class S2Pair:
    """Bundle E_{p,q} over S^2 together with its twist class.

    Twists on E_{0,0} are pairs (k, l); on E_{p,0} or E_{0,q} with the other
    coordinate nonzero a single integer; E_{p,q} with p, q nonzero only carries
    the trivial twist ``()``.
    """

    bundle: tuple[int, int]
    twist: tuple[int, ...]

    def __post_init__(self):
        p, q = self.bundle
        if len(self.twist) != len(_zero_twist(p, q)):
            raise UnsupportedParameter(
                f"E_{{{p},{q}}} has twists classified by Z^{len(_zero_twist(p, q))}, got {self.twist}"
            )

    def to_dict(self) -> dict:
        return {"bundle": list(self.bundle), "twist": list(self.twist)}


def s2_dual_rule(pair: S2Pair) -> S2Pair:
    """(E_{p,0}, P_q) <-> (E_{0,q}, Q_p) and (E_{0,0}, P_{p,q}) <-> (E_{p,q}, 0)."""
    p, q = pair.bundle
    if p == 0 and q == 0:
        k, l = pair.twist
        return S2Pair((k, l), _zero_twist(k, l))
    if p != 0 and q != 0:
        return S2Pair((0, 0), (p, q))
    (t,) = pair.twist
    if q == 0:
        return S2Pair((0, t), (p,)) if t else S2Pair((0, 0), (p, 0))
    return S2Pair((t, 0), (q,)) if t else S2Pair((0, 0), (0, q))


def s2_pair(p: int, twist_q: int) -> S2Pair:
    """The pair (E_{p,0}, P_q); for p = 0 the twist is P_{0,q} on the trivial bundle."""
    return S2Pair((p, 0), (twist_q,)) if p else S2Pair((0, 0), (0, twist_q))


def s2_rule_entry(p: int, q: int) -> CatalogEntry:
    src = s2_pair(p, q)
    return CatalogEntry(
        f"s2_dual_{p}_{q}",
        {"p": p, "q": q},
        DUAL_PAIR_RULE,
        {"pair": src.to_dict(), "dual": s2_dual_rule(src).to_dict()},
        S2_ANCHOR,
    )


def noflux_rule(n: int, k: int) -> PointPair:
    """(E_k, 0) is dual to (E_0, k)."""
    out = PointPair(n, 0, k)
    assert out == dual_pair(PointPair(n, k, 0))
    return out


def noflux_entry(n: int, k: int) -> CatalogEntry:
    return CatalogEntry(
        f"noflux_{n}_{k}",
        {"n": n, "k": k},
        DUAL_PAIR_RULE,
        {"pair": PointPair(n, k, 0).to_dict(), "dual": noflux_rule(n, k).to_dict()},
        NOFLUX_ANCHOR,
    )


def default_catalog(max_k: int = 4) -> list[CatalogEntry]:
    entries = [s1_point_entry(k) for k in range(1, max_k + 1)]
    entries += [s2_h3_entry(p, q) for p in range(0, 3) for q in range(0, 3)]
    entries += [s2_rule_entry(p, q) for p in range(0, 3) for q in range(0, 3)]
    entries += [noflux_entry(max_k, k) for k in range(max_k)]
    return entries
