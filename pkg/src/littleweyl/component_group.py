"""The component 2-group of a pair: A[2] modulo a catalog kernel.

A[2] is the mod-2 reduction of the X_*(A) lattice, so its coordinates
are the same as the little Weyl group's matrix coordinates.  The
catalog supplies the kernel subspace N (as 0/1 vectors in X_*(T)
coordinates) and the character tau on the quotient's basis; everything
else is computed: the Weyl action, the order-2 subgroup attached to
each reflection, characters and their stabilizers, the Coxeter
subgroup a character selects, and the splitting cocycle signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .linalg import (
    f2_add,
    f2_contains,
    f2_reduce,
    f2_rref,
    f2_solve,
    ivec,
    to_int,
)
from .root_datum import REAL, DatumError, RestrictedSystem, classify_root
from .weyl import LittleWeylGroup


@dataclass(frozen=True)
class ComponentGroup:
    W: LittleWeylGroup = field(repr=False)
    dim_ambient: int = 0
    N_basis: list = field(default_factory=list)
    N_pivots: list = field(default_factory=list)
    free_coords: list = field(default_factory=list)   # ambient coords carrying I
    dim_I: int = 0
    I0_basis: list = field(default_factory=list)      # rref, in I coordinates
    I0_pivots: list = field(default_factory=list)
    tau: tuple = ()                                   # +-1 per I basis vector
    real_coroot_classes: dict = field(default_factory=dict)   # root key -> ambient class
    refl_generator_class: dict = field(default_factory=dict)  # refl idx -> ambient class

    # -- arithmetic in I -----------------------------------------------------

    def reduce(self, ambient_class: tuple) -> tuple:
        return f2_reduce(ambient_class, self.N_basis, self.N_pivots)

    def to_I(self, ambient_class: tuple) -> tuple:
        red = self.reduce(ambient_class)
        return tuple(red[j] for j in self.free_coords)

    def I_basis_ambient(self) -> list[tuple]:
        out = []
        for j in self.free_coords:
            v = [0] * self.dim_ambient
            v[j] = 1
            out.append(tuple(v))
        return out

    def act(self, w_idx: int, ambient_class: tuple) -> tuple:
        m = self.W.mats[w_idx]
        vec = m.dot(ivec(ambient_class))
        return self.reduce(tuple(int(x) % 2 for x in vec.tolist()))

    # -- characters ----------------------------------------------------------

    def characters(self) -> list[tuple]:
        return [tuple(c) for c in iproduct((1, -1), repeat=self.dim_I)]

    def chi_eval(self, chi: tuple, ambient_class: tuple) -> int:
        coords = self.to_I(ambient_class)
        val = 1
        for c, bit in zip(chi, coords):
            if bit:
                val *= c
        return val

    def tau_eval(self, ambient_class: tuple) -> int:
        coords = self.to_I(ambient_class)
        val = 1
        for c, bit in zip(self.tau, coords):
            if bit:
                val *= c
        return val

    def chi_after(self, w_idx: int, chi: tuple) -> tuple:
        """The character u -> chi(w^-1 . u)."""
        w_inv = self.W.inverse_table[w_idx]
        return tuple(
            self.chi_eval(chi, self.act(w_inv, g)) for g in self.I_basis_ambient()
        )

    def chi_label(self, chi: tuple) -> str:
        return "".join("+" if c == 1 else "-" for c in chi)

    # -- reflection data -----------------------------------------------------

    def subgroup_I_s(self, refl_idx: int) -> list[tuple]:
        """Generators (possibly none) of the order-2 subgroup at a reflection."""
        cls = self.refl_generator_class.get(refl_idx)
        if cls is None:
            return []
        red = self.reduce(cls)
        return [red] if any(red) else []

    def cocycle_class(self, refl_idx: int) -> tuple:
        """Image of the squared braid generator under a regular splitting."""
        cls = self.refl_generator_class.get(refl_idx)
        if cls is None:
            return tuple([0] * self.dim_ambient)
        return self.reduce(cls)


def build_component_group(
    rs: RestrictedSystem, W: LittleWeylGroup, kernel_vectors: list, tau_values: list
) -> ComponentGroup:
    """Validate catalog component data and assemble the quotient group."""
    k = rs.rank_a
    n = rs.datum.rank_T

    # kernel generators arrive as 0/1 vectors in X_*(T) coordinates
    lattice_cols = [tuple(int(x) % 2 for x in rs.lattice_A[j].tolist()) for j in range(k)]
    kernel_coords = []
    for v in kernel_vectors:
        if len(v) != n or any(x not in (0, 1) for x in v):
            raise DatumError("kernel_N_mod2 vectors must be 0/1 of torus rank length")
        sol = f2_solve(lattice_cols, tuple(v)) if k else None
        if k and sol is None:
            raise DatumError(f"kernel vector {tuple(v)} is not an X_*(A) class")
        if k:
            kernel_coords.append(sol)
        elif any(v):
            raise DatumError("nonzero kernel vector for a rank-zero pair")

    N_basis, N_pivots = f2_rref(kernel_coords)
    free = [j for j in range(k) if j not in N_pivots]
    dim_I = len(free)

    tau = tuple(int(t) for t in tau_values)
    if len(tau) != dim_I or any(t not in (1, -1) for t in tau):
        raise DatumError("tau_on_I_gens must list +-1 per quotient basis vector")

    real_classes = {}
    for rk in rs.restriction_of:
        if classify_root(rs.datum, ivec(rk)) == REAL:
            coroot = rs.datum.coroot(rk)
            coords = to_int(rs.a_coords(coroot))
            real_classes[rk] = tuple(int(x) % 2 for x in coords.tolist())

    refl_gen_class = {}
    for idx in W.reflection_indices:
        rec = W.reflection_record[idx]
        if rec.delta == 1:
            coords = to_int(rs.a_coords(ivec(rec.real_coroot)))
            refl_gen_class[idx] = tuple(int(x) % 2 for x in coords.tolist())

    G = ComponentGroup(
        W=W,
        dim_ambient=k,
        N_basis=N_basis,
        N_pivots=N_pivots,
        free_coords=free,
        dim_I=dim_I,
        tau=tau,
        real_coroot_classes=real_classes,
        refl_generator_class=refl_gen_class,
    )

    # N must be stable under every generator (so the action descends)
    for g in range(W.num_gens):
        w = W.gen_reflection_index[g]
        for b in N_basis:
            image = G.act(w, b)
            if any(image):
                raise DatumError("kernel_N_mod2 is not stable under the Weyl action")

    # the subgroup generated by real coroot classes, in I coordinates
    I0_vectors = [G.to_I(c) for c in real_classes.values()]
    I0_basis, I0_pivots = f2_rref(I0_vectors)
    object.__setattr__(G, "I0_basis", I0_basis)
    object.__setattr__(G, "I0_pivots", I0_pivots)

    _validate_component_group(rs, W, G)
    return G


def _validate_component_group(rs, W, G) -> None:
    # tau kills the identity-component subgroup
    for v in G.I0_basis:
        amb = [0] * G.dim_ambient
        for j, bit in zip(G.free_coords, v):
            amb[j] = bit
        if G.tau_eval(tuple(amb)) != 1:
            raise DatumError("tau does not kill the real-coroot subgroup")
    # tau is invariant under the Weyl action
    for g in range(W.num_gens):
        w = W.gen_reflection_index[g]
        for b in G.I_basis_ambient():
            if G.tau_eval(G.act(w, b)) != G.tau_eval(b):
                raise DatumError("tau is not Weyl-invariant")
    # the Weyl action is trivial on I modulo the real-coroot subgroup
    for g in range(W.num_gens):
        w = W.gen_reflection_index[g]
        for b in G.I_basis_ambient():
            diff = G.to_I(f2_add(G.act(w, b), G.reduce(b)))
            if not f2_contains(diff, G.I0_basis, G.I0_pivots):
                raise DatumError("Weyl action is not trivial on I / I0")
    # reflection formula for real roots: s(x) = x + <alpha, x> * coroot class
    for rk, cls in G.real_coroot_classes.items():
        refl = next(
            i
            for i in W.reflection_indices
            if rs.restriction_of[rk] in _normals_of(W, i, rs)
        )
        f = ivec(rs.restriction_of[rk])
        for j in range(G.dim_ambient):
            unit = tuple(1 if i == j else 0 for i in range(G.dim_ambient))
            expected = unit
            if int(f[j]) % 2:
                expected = f2_add(unit, cls)
            got = tuple(int(x) % 2 for x in W.mats[refl].dot(ivec(unit)).tolist())
            if got != expected:
                raise DatumError(f"real reflection action formula fails at {rk}")
    # reflections with no real root behind them act trivially on I
    for idx in W.reflection_indices:
        rec = W.reflection_record[idx]
        if rec.real_root is None:
            for b in G.I_basis_ambient():
                if G.to_I(G.act(idx, b)) != G.to_I(b):
                    raise DatumError(
                        "reflection without a real root acts nontrivially on I"
                    )
    # order-2 subgroups: inside I0, and delta > 1 forces triviality
    for idx in W.reflection_indices:
        rec = W.reflection_record[idx]
        gens = G.subgroup_I_s(idx)
        for v in gens:
            if not f2_contains(G.to_I(v), G.I0_basis, G.I0_pivots):
                raise DatumError("reflection subgroup I_s escapes I0")
        if rec.delta > 1 and rec.real_coroot is not None:
            if any(G.to_I(G.reduce(G.real_coroot_classes[rec.real_root]))):
                raise DatumError(
                    "real coroot class must vanish in I when delta > 1"
                )
    # the I_s together generate exactly I0
    spans = []
    for idx in W.reflection_indices:
        for v in G.subgroup_I_s(idx):
            spans.append(G.to_I(v))
    sb, sp = f2_rref(spans)
    if (sb, sp) != (G.I0_basis, G.I0_pivots):
        raise DatumError("reflection subgroups do not generate I0")


def _normals_of(W, refl_idx, rs):
    rec = W.reflection_record[refl_idx]
    pos = set()
    for rk in rec.sources:
        pos.add(rs.restriction_of[rk])
    return pos


# ---------------------------------------------------------------------------
# stabilizers and the Coxeter subgroup selected by a character


def stabilizer(W: LittleWeylGroup, G: ComponentGroup, chi: tuple) -> list[int]:
    """All w with chi(w^-1 . u) = chi(u), by brute force."""
    return [w for w in range(W.n) if G.chi_after(w, chi) == chi]


def membership_criterion(G: ComponentGroup, refl_idx: int, chi: tuple) -> bool:
    """Whether chi restricts trivially to the reflection's order-2 subgroup."""
    return all(G.chi_eval(chi, v) == 1 for v in G.subgroup_I_s(refl_idx))


def splitting_cocycle(W: LittleWeylGroup, G: ComponentGroup, gen: int, chi: tuple) -> int:
    """Sign of chi on the squared braid generator's image, +-1."""
    refl = W.gen_reflection_index[gen]
    return G.chi_eval(chi, G.cocycle_class(refl))


@dataclass(frozen=True)
class CoxeterSelection:
    """The reflection subgroup a character selects, with Hecke parameters."""

    chi: tuple
    generating_reflections: tuple
    subsystem: object = field(repr=False)
    simple: tuple = ()            # parent reflection indices, subsystem order
    parameters: tuple = ()        # q = (-1)^delta per simple reflection


def coxeter_sub_W0(W: LittleWeylGroup, G: ComponentGroup, chi: tuple) -> CoxeterSelection:
    gens = [
        idx
        for idx in W.reflection_indices
        if W.reflection_record[idx].delta > 1
        or G.chi_eval(chi, G.cocycle_class(idx)) == 1
    ]
    elements = W.subgroup_elements(gens)
    elt_set = set(elements)
    refls = [i for i in W.reflection_indices if i in elt_set]
    sub = W.subsystem(refls) if refls else W.subsystem([])
    params = tuple((-1) ** W.reflection_record[t].delta for t in sub.simple)
    sel = CoxeterSelection(
        chi=chi,
        generating_reflections=tuple(gens),
        subsystem=sub,
        simple=tuple(sub.simple),
        parameters=params,
    )
    # generators joined by an odd braid edge are conjugate: equal parameters
    for i in range(len(sub.simple)):
        for j in range(i + 1, len(sub.simple)):
            if sub.braid_order(i, j) % 2 and params[i] != params[j]:
                raise DatumError("inconsistent Hecke parameters on an odd braid edge")
    # the subgroup must sit inside the stabilizer of chi
    for w in sub.element_parent_idx:
        if G.chi_after(w, chi) != chi:
            raise DatumError("selected Coxeter subgroup escapes the stabilizer")
    if set(sub.element_parent_idx) != elt_set:
        raise DatumError("reflection closure changed the selected subgroup")
    return sel
