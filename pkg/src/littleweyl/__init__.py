"""Exact combinatorics of symmetric pairs.

From a root datum with involution: the restricted root system with
multiplicities, the little Weyl group with Bruhat order and braid
lifts, the component 2-group with its characters, sign-parameter Hecke
rings, and explicit integer matrices for the braid-group modules the
theory attaches to each character, together with a verification suite
for every structural identity.
"""

__version__ = "0.1.0"

from .catalog import DEFAULT_CATALOG, PairData, build_pair, catalog_entry, catalog_names
from .component_group import (
    ComponentGroup,
    CoxeterSelection,
    build_component_group,
    coxeter_sub_W0,
    membership_criterion,
    splitting_cocycle,
    stabilizer,
)
from .hecke import HeckeRing, free_quotient_oracle
from .monodromy import (
    MonodromyRep,
    build_lambda,
    build_mu_chi1,
    fundamental_class_check,
    induced_module_oracle,
    quadratic_relation_check,
    rep_from_json_dict,
    rep_to_json_dict,
    sl2_fixture_check,
    v0_intertwiner_check,
)
from .root_datum import (
    DatumError,
    RestrictedSystem,
    RootDatum,
    build_restricted,
    classify_root,
    load_datum,
)
from .weyl import (
    BraidWord,
    LittleWeylGroup,
    Subsystem,
    WeylGroup,
    check_bruhat_values,
    project_braid_word,
    subgroup_braid_generator,
)

__all__ = [
    "__version__",
    "DEFAULT_CATALOG",
    "PairData",
    "build_pair",
    "catalog_entry",
    "catalog_names",
    "ComponentGroup",
    "CoxeterSelection",
    "build_component_group",
    "coxeter_sub_W0",
    "membership_criterion",
    "splitting_cocycle",
    "stabilizer",
    "HeckeRing",
    "free_quotient_oracle",
    "MonodromyRep",
    "build_lambda",
    "build_mu_chi1",
    "fundamental_class_check",
    "induced_module_oracle",
    "quadratic_relation_check",
    "rep_from_json_dict",
    "rep_to_json_dict",
    "sl2_fixture_check",
    "v0_intertwiner_check",
    "DatumError",
    "RestrictedSystem",
    "RootDatum",
    "build_restricted",
    "classify_root",
    "load_datum",
    "BraidWord",
    "LittleWeylGroup",
    "Subsystem",
    "WeylGroup",
    "check_bruhat_values",
    "project_braid_word",
    "subgroup_braid_generator",
]
