"""Translation of finite-state ST programs into SMV transition systems."""

from __future__ import annotations

from .emit import emit_smv, emitted_names, property_sidecar
from .model import (Property, PropertyKind, SmvExpr, SmvModel, SmvVar,
                    TranslationError)
from .translate import (CYCLED_VAR, FAULT_VAR, assert_flag_name, latch_name,
                        translate)
from .verifiable import (DEFAULT_RANGE, FOR_UNROLL_BOUND, apply_default_ranges,
                         check_verifiable)

__all__ = [
    "Property", "PropertyKind", "SmvExpr", "SmvModel", "SmvVar",
    "TranslationError", "translate", "check_verifiable",
    "apply_default_ranges", "emit_smv", "emitted_names", "property_sidecar",
    "DEFAULT_RANGE", "FOR_UNROLL_BOUND", "CYCLED_VAR", "FAULT_VAR",
    "latch_name", "assert_flag_name",
]
