"""Verification reports shared by the restriction and duality checks."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from .exactalg import IntMatrix, PresentedModule

MODEL_NOTE = (
    "Checks cover invariant factors and restriction-diagram constraints; "
    "the T-duality homomorphism itself is not computed."
)

CHECK_NAMES = frozenset(
    {
        # K-group routes
        "routes_agree_k0",
        "routes_agree_k1",
        "torsion_free",
        "rank_gcd",
        "abelian_torsion_free",
        "abelian_orbit_rank",
        # restriction along Z_m -> Z_n
        "ladder_commutes",
        "closed_maps_well_defined",
        "phi_ker_iso",
        "phi_coker_iso",
        "phi_coker_inverse",
        "k0_agreement",
        "k1_agreement",
        # duality
        "k0_iso",
        "k1_iso",
        "gcd_chain",
        "alpha_order",
        "beta_order",
        "beta_prime_order",
        "left_k0_fixed_iso",
        "left_k1_fixed_iso",
        "right_k1_image_C",
        "right_k0_image_C",
        "constant_C_matches",
        "action_order_divides_n",
        "ek0_kernel_ideal",
        "ek0_surjective",
        "ek0_k1_image",
        "ek0_k0_dual_image",
    }
)


def jsonable(obj: Any) -> Any:
    """Convert witnesses (matrices, modules, tuples) into JSON-native data."""
    if isinstance(obj, (IntMatrix, PresentedModule)):
        return obj.to_dict()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None

    def __post_init__(self):
        if self.name not in CHECK_NAMES:
            raise ValueError(f"unregistered check name {self.name!r}")
        self.passed = bool(self.passed)

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": jsonable(self.witness)}


@dataclass
class VerificationReport:
    kind: str
    instance: dict
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: Any = None) -> bool:
        self.checks.append(Check(name, passed, witness))
        return bool(passed)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def sort_key(self) -> tuple:
        """Order by (n, k, ell) first, then kind and the remaining instance data."""
        inst = self.instance
        head = tuple(inst.get(x, -1) for x in ("n", "k", "ell"))
        rest = tuple(_key_part(v) for key, v in inst.items() if key not in ("n", "k", "ell"))
        return head + (self.kind, rest)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "instance": jsonable(self.instance),
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "elapsed": self.elapsed,
            "note": self.note,
        }

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed = time.perf_counter() - start


def _key_part(v):
    if isinstance(v, dict):
        return tuple(_key_part(x) for x in v.values())
    if isinstance(v, (list, tuple)):
        return tuple(_key_part(x) for x in v)
    return v
