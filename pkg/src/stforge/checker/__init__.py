"""Property checking: internal explicit-state engine and nuXmv adapter."""

from __future__ import annotations

import json
from typing import Optional

from ..smv.model import SmvModel
from .internal import CompiledModel, Exploration, check_internal, compile_model, explore
from .nuxmv import NuxmvParseError, check_nuxmv, parse_nuxmv_output
from .replay import ReplayMismatch, replay_counterexample
from .verdict import (CheckerConfig, Engine, StateValuation, Verdict,
                      VerdictStats, VerdictStatus)

__all__ = [
    "CheckerConfig", "Engine", "Verdict", "VerdictStats", "VerdictStatus",
    "StateValuation", "check", "check_internal", "check_nuxmv",
    "compile_model", "CompiledModel", "explore", "Exploration",
    "parse_nuxmv_output", "NuxmvParseError", "replay_counterexample",
    "ReplayMismatch", "verdicts_to_json",
]


def check(model: SmvModel, config: Optional[CheckerConfig] = None) -> list[Verdict]:
    """Dispatch to the configured engine."""
    config = config or CheckerConfig()
    if config.engine is Engine.NUXMV_EXTERNAL:
        return check_nuxmv(model, config)
    return check_internal(model, config)


def verdicts_to_json(verdicts: list[Verdict], include_elapsed: bool = True) -> str:
    return json.dumps([v.to_json(include_elapsed=include_elapsed)
                       for v in verdicts], indent=2, sort_keys=True)
