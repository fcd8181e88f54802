"""Built-in catalog of pairs and the assembly pipeline for one entry.

Entry schema (JSON-compatible, all matrices row-major integers):

    {
      "name": str,
      "cartan_matrix": [[int]],
      "theta_on_costar_T": [[int]],      # involution on the cocharacter lattice
      "kernel_N_mod2": [[0/1]],          # classes killed in the component group
      "tau_on_I_gens": [+-1],            # sign character on the quotient basis
      "notes": str,
      "expected": { ... }                # optional regression pins
    }

The expected block pins the group order, the sorted reflection deltas,
the component group rank, and the per-character orders of the selected
Coxeter subgroups; when present it must match the computed values
exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .component_group import (
    ComponentGroup,
    CoxeterSelection,
    build_component_group,
    coxeter_sub_W0,
)
from .hecke import HeckeRing
from .monodromy import MonodromyRep, build_lambda, build_mu_chi1
from .root_datum import DatumError, RestrictedSystem, RootDatum, build_restricted, load_datum
from .weyl import LittleWeylGroup

SPLIT_A1 = {
    "name": "sl2_split",
    "cartan_matrix": [[2]],
    "theta_on_costar_T": [[-1]],
    "kernel_N_mod2": [],
    "tau_on_I_gens": [1],
    "notes": "split rank-one pair; the worked fixture",
    "expected": {
        "order_Wa": 2,
        "deltas": [1],
        "I_rank": 1,
        "W0_orders": {"+": 2, "-": 1},
    },
}

SPLIT_A2 = {
    "name": "sl3_split",
    "cartan_matrix": [[2, -1], [-1, 2]],
    "theta_on_costar_T": [[-1, 0], [0, -1]],
    "kernel_N_mod2": [],
    "tau_on_I_gens": [1, 1],
    "notes": "split rank-two pair of type A2",
    "expected": {
        "order_Wa": 6,
        "deltas": [1, 1, 1],
        "I_rank": 2,
        "W0_orders": {"++": 6, "+-": 2, "-+": 2, "--": 2},
    },
}

SPLIT_A3 = {
    "name": "sl4_split",
    "cartan_matrix": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "theta_on_costar_T": [[-1, 0, 0], [0, -1, 0], [0, 0, -1]],
    "kernel_N_mod2": [],
    "tau_on_I_gens": [1, 1, 1],
    "notes": "split rank-three pair of type A3",
    "expected": {
        "order_Wa": 24,
        "deltas": [1, 1, 1, 1, 1, 1],
        "I_rank": 3,
        "W0_orders": {
            "+++": 24,
            "++-": 6,
            "+-+": 4,
            "+--": 6,
            "-++": 6,
            "-+-": 4,
            "--+": 6,
            "---": 4,
        },
    },
}

SPLIT_B2 = {
    "name": "b2_split",
    "cartan_matrix": [[2, -1], [-2, 2]],
    "theta_on_costar_T": [[-1, 0], [0, -1]],
    "kernel_N_mod2": [],
    "tau_on_I_gens": [1, 1],
    "notes": "split pair with restricted system of type B2",
    "expected": {
        "order_Wa": 8,
        "deltas": [1, 1, 1, 1],
        "I_rank": 2,
        "W0_orders": {"++": 8, "+-": 2, "-+": 4, "--": 2},
    },
}

SWAP_A1A1 = {
    "name": "sl2_sl2_swap",
    "cartan_matrix": [[2, 0], [0, 2]],
    "theta_on_costar_T": [[0, 1], [1, 0]],
    "kernel_N_mod2": [],
    "tau_on_I_gens": [1],
    "notes": (
        "product of two rank-one factors exchanged by the involution; "
        "restricted system A1 with multiplicity 2 (delta even). Component "
        "data is synthetic: the factor-swap group itself has a connected "
        "centralizer, the trivial kernel here exercises the even-delta "
        "character branches."
    ),
    "expected": {
        "order_Wa": 2,
        "deltas": [2],
        "I_rank": 1,
        "W0_orders": {"+": 2, "-": 2},
    },
}

SWAP_A1A1_TAU = {
    "name": "sl2_sl2_swap_tau",
    "cartan_matrix": [[2, 0], [0, 2]],
    "theta_on_costar_T": [[0, 1], [1, 0]],
    "kernel_N_mod2": [],
    "tau_on_I_gens": [-1],
    "notes": "the factor-swap entry with a nontrivial invariant sign character",
    "expected": {
        "order_Wa": 2,
        "deltas": [2],
        "I_rank": 1,
        "W0_orders": {"+": 2, "-": 2},
    },
}

TWISTED_A2 = {
    "name": "a2_twisted",
    "cartan_matrix": [[2, -1], [-1, 2]],
    "theta_on_costar_T": [[0, -1], [-1, 0]],
    "kernel_N_mod2": [[1, 1]],
    "tau_on_I_gens": [],
    "notes": (
        "rank-one pair with a non-reduced restricted system (type BC1) and "
        "delta = 3; the centralizer torus is connected, so the full order-2 "
        "lattice is killed in the component group"
    ),
    "expected": {
        "order_Wa": 2,
        "deltas": [3],
        "I_rank": 0,
        "W0_orders": {"": 2},
    },
}

TWISTED_A4 = {
    "name": "a4_twisted",
    "cartan_matrix": [
        [2, -1, 0, 0],
        [-1, 2, -1, 0],
        [0, -1, 2, -1],
        [0, 0, -1, 2],
    ],
    "theta_on_costar_T": [
        [0, 0, 0, -1],
        [0, 0, -1, 0],
        [0, -1, 0, 0],
        [-1, 0, 0, 0],
    ],
    "kernel_N_mod2": [[1, 0, 0, 1], [0, 1, 1, 0]],
    "tau_on_I_gens": [],
    "notes": (
        "quasi-split rank-two pair with restricted system of type BC2 and "
        "mixed deltas {2, 3}; component group trivial (connected centralizer "
        "torus), Hecke parameters genuinely unequal"
    ),
    "expected": {
        "order_Wa": 8,
        "deltas": [2, 2, 3, 3],
        "I_rank": 0,
        "W0_orders": {"": 8},
    },
}

SPLIT_A3_MODN = {
    "name": "sl4_split_modN",
    "cartan_matrix": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "theta_on_costar_T": [[-1, 0, 0], [0, -1, 0], [0, 0, -1]],
    "kernel_N_mod2": [[1, 0, 1]],
    "tau_on_I_gens": [1, 1],
    "notes": (
        "the split rank-three pair with the invariant diagonal class killed; "
        "exercises a nontrivial quotient in the component group"
    ),
    "expected": {
        "order_Wa": 24,
        "deltas": [1, 1, 1, 1, 1, 1],
        "I_rank": 2,
        "W0_orders": {"++": 24, "+-": 4, "-+": 4, "--": 4},
    },
}

DEFAULT_CATALOG = [
    SPLIT_A1,
    SPLIT_A2,
    SPLIT_A3,
    SPLIT_B2,
    SWAP_A1A1,
    SWAP_A1A1_TAU,
    TWISTED_A2,
    TWISTED_A4,
    SPLIT_A3_MODN,
]


def catalog_names() -> list[str]:
    return [e["name"] for e in DEFAULT_CATALOG]


def catalog_entry(name: str) -> dict:
    for e in DEFAULT_CATALOG:
        if e["name"] == name:
            return e
    raise KeyError(name)


def entry_hash(entry: dict) -> str:
    payload = {k: v for k, v in entry.items() if k != "expected"}
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()


# ---------------------------------------------------------------------------


@dataclass
class PairData:
    """Everything computed for one catalog entry, with per-character caches."""

    entry: dict
    datum: RootDatum
    restricted: RestrictedSystem
    weyl: LittleWeylGroup
    component: ComponentGroup
    _selections: dict = field(default_factory=dict)
    _heckes: dict = field(default_factory=dict)
    _reps: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.entry["name"]

    def characters(self) -> list[tuple]:
        return self.component.characters()

    def selection(self, chi: tuple) -> CoxeterSelection:
        if chi not in self._selections:
            self._selections[chi] = coxeter_sub_W0(self.weyl, self.component, chi)
        return self._selections[chi]

    def hecke(self, chi: tuple) -> HeckeRing:
        if chi not in self._heckes:
            sel = self.selection(chi)
            self._heckes[chi] = HeckeRing(sel.subsystem, sel.parameters)
        return self._heckes[chi]

    def rep(self, chi: tuple) -> MonodromyRep:
        if chi not in self._reps:
            rep = build_lambda(
                self.name,
                self.restricted,
                self.weyl,
                self.component,
                chi,
                self.selection(chi),
            )
            if rep.family_action is not None:
                # replace the closed form with the ring construction after
                # checking the two agree, so mismatches surface at build time
                ring_mu = build_mu_chi1(self.weyl, self.hecke(chi))
                for g, m in ring_mu.items():
                    if not np.array_equal(m, rep.family_action[g]):
                        raise DatumError(
                            "family action from the ring disagrees with closed form"
                        )
            self._reps[chi] = rep
        return self._reps[chi]

    def trivial_chi(self) -> tuple:
        return tuple([1] * self.component.dim_I)


def build_pair(source) -> PairData:
    """Build a pair from a catalog name, an entry dict, or a JSON path."""
    if isinstance(source, str):
        try:
            entry = catalog_entry(source)
        except KeyError:
            try:
                with open(source, "r", encoding="utf-8") as fh:
                    entry = json.load(fh)
            except FileNotFoundError:
                raise DatumError(f"unknown pair and no such file: {source}") from None
            except json.JSONDecodeError as exc:
                raise DatumError(f"invalid JSON in {source}: {exc}") from None
    else:
        entry = source
    for key in ("name", "cartan_matrix", "theta_on_costar_T", "kernel_N_mod2", "tau_on_I_gens"):
        if key not in entry:
            raise DatumError(f"catalog entry missing field {key!r}")

    datum = load_datum(entry)
    rs = build_restricted(datum)
    W = LittleWeylGroup(rs)
    G = build_component_group(rs, W, entry["kernel_N_mod2"], entry["tau_on_I_gens"])
    pair = PairData(entry=entry, datum=datum, restricted=rs, weyl=W, component=G)
    expected = entry.get("expected")
    if expected:
        _check_expected(pair, expected)
    return pair


def _check_expected(pair: PairData, expected: dict) -> None:
    if "order_Wa" in expected and pair.weyl.n != expected["order_Wa"]:
        raise DatumError(
            f"expected group order {expected['order_Wa']}, computed {pair.weyl.n}"
        )
    if "deltas" in expected:
        got = sorted(r.delta for r in pair.restricted.reflections)
        if got != sorted(expected["deltas"]):
            raise DatumError(f"expected deltas {expected['deltas']}, computed {got}")
    if "I_rank" in expected and pair.component.dim_I != expected["I_rank"]:
        raise DatumError(
            f"expected component rank {expected['I_rank']}, computed {pair.component.dim_I}"
        )
    for label, order in expected.get("W0_orders", {}).items():
        chi = tuple(1 if c == "+" else -1 for c in label)
        sel = pair.selection(chi)
        if sel.subsystem.size != order:
            raise DatumError(
                f"expected W0 order {order} for character {label!r}, "
                f"computed {sel.subsystem.size}"
            )
