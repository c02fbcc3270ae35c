"""Adapter shelling out to an external nuXmv binary in batch mode.

The model is written to a temporary ``.smv`` file and checked with
``nuXmv <file>``.  Result lines ``-- invariant ... is true|false`` are
matched positionally against the model's INVARSPEC order (the property
sidecar order); counterexample traces are parsed from the ``-> State:``
blocks, carrying unchanged values forward.  Any failure to run or parse
downgrades every property to Unknown with a diagnostic.
"""

from __future__ import annotations

import re
import subprocess
import tempfile
import time
from pathlib import Path
from typing import Optional, Union

from ..frontend.diagnostics import Diagnostic, Severity, SourceSpan
from ..smv.emit import emit_smv, emitted_names
from ..smv.model import SmvModel
from .verdict import (CheckerConfig, StateValuation, Verdict, VerdictStats,
                      VerdictStatus)

_INVARIANT_RE = re.compile(r"^-- invariant .* is (true|false)\s*$")
_STATE_RE = re.compile(r"^\s*-> State: \S+ <-\s*$")
_INPUT_RE = re.compile(r"^\s*-> Input: \S+ <-\s*$")
_BINDING_RE = re.compile(r"^\s*(\S+)\s*=\s*(\S+)\s*$")


class NuxmvParseError(Exception):
    pass


def _tool_diagnostic(code: str, message: str) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message,
                      SourceSpan("<nuxmv>", 1, 1, 0))


def _all_unknown(model: SmvModel, diagnostic: Diagnostic,
                 elapsed_ms: int) -> list[Verdict]:
    return [Verdict(property_id=prop_id, status=VerdictStatus.UNKNOWN,
                    stats=VerdictStats(elapsed_ms=elapsed_ms),
                    diagnostic=diagnostic)
            for prop_id, _ in model.invarspecs]


def _parse_value(text: str) -> Union[bool, int]:
    if text == "TRUE":
        return True
    if text == "FALSE":
        return False
    return int(text)


def parse_nuxmv_output(output: str, model: SmvModel) -> list[Verdict]:
    """Parse batch-mode output; raises NuxmvParseError on malformed text."""
    reverse = {emitted: name for name, emitted in emitted_names(model).items()}
    state_names = {v.name for v in model.state_vars}
    defaults: StateValuation = {v.name: v.init for v in model.state_vars
                                if v.init is not None}

    results: list[str] = []
    traces: list[Optional[list[StateValuation]]] = []
    lines = output.splitlines()
    pos = 0
    while pos < len(lines):
        match = _INVARIANT_RE.match(lines[pos])
        if not match:
            pos += 1
            continue
        results.append(match.group(1))
        pos += 1
        if match.group(1) == "true":
            traces.append(None)
            continue
        trace: list[StateValuation] = []
        current = dict(defaults)
        in_state = False
        while pos < len(lines) and not _INVARIANT_RE.match(lines[pos]):
            line = lines[pos]
            if _STATE_RE.match(line):
                in_state = True
                current = dict(trace[-1]) if trace else dict(current)
                trace.append(current)
            elif _INPUT_RE.match(line):
                in_state = False
            elif in_state:
                binding = _BINDING_RE.match(line)
                if binding:
                    name = reverse.get(binding.group(1))
                    if name in state_names:
                        try:
                            current[name] = _parse_value(binding.group(2))
                        except ValueError as exc:
                            raise NuxmvParseError(
                                f"bad value in trace: {line!r}") from exc
            pos += 1
        if not trace:
            raise NuxmvParseError("invariant reported false without a trace")
        traces.append(trace)

    if len(results) != len(model.invarspecs):
        raise NuxmvParseError(
            f"expected {len(model.invarspecs)} invariant results, "
            f"found {len(results)}")

    verdicts = []
    for (prop_id, _), result, trace in zip(model.invarspecs, results, traces):
        if result == "true":
            verdicts.append(Verdict(prop_id, VerdictStatus.PROVED))
        else:
            verdicts.append(Verdict(prop_id, VerdictStatus.VIOLATED,
                                    counterexample=trace))
    return verdicts


def check_nuxmv(model: SmvModel,
                config: Optional[CheckerConfig] = None) -> list[Verdict]:
    config = config or CheckerConfig()
    if not config.nuxmv_path:
        return _all_unknown(model, _tool_diagnostic(
            "E-NUXMV-MISSING", "no nuXmv binary configured"), 0)
    started = time.monotonic()
    if not model.invarspecs:
        return []
    with tempfile.TemporaryDirectory(prefix="stforge-nuxmv-") as tmp:
        smv_path = Path(tmp) / f"{model.name}.smv"
        smv_path.write_text(emit_smv(model), encoding="utf-8")
        try:
            proc = subprocess.run(
                [config.nuxmv_path, str(smv_path)],
                capture_output=True, text=True,
                timeout=config.timeout_ms / 1000.0)
        except FileNotFoundError:
            return _all_unknown(model, _tool_diagnostic(
                "E-NUXMV-MISSING",
                f"nuXmv binary not found at {config.nuxmv_path}"),
                _elapsed(started))
        except subprocess.TimeoutExpired:
            return _all_unknown(model, _tool_diagnostic(
                "E-NUXMV-TIMEOUT",
                f"nuXmv timed out after {config.timeout_ms} ms"),
                _elapsed(started))
    if proc.returncode != 0:
        detail = proc.stderr.strip().splitlines()
        return _all_unknown(model, _tool_diagnostic(
            "E-NUXMV-EXIT",
            f"nuXmv exited with {proc.returncode}"
            + (f": {detail[0]}" if detail else "")), _elapsed(started))
    try:
        verdicts = parse_nuxmv_output(proc.stdout, model)
    except NuxmvParseError as exc:
        return _all_unknown(model, _tool_diagnostic(
            "E-NUXMV-PARSE", f"cannot parse nuXmv output: {exc}"),
            _elapsed(started))
    elapsed = _elapsed(started)
    for verdict in verdicts:
        verdict.stats.elapsed_ms = elapsed
    return verdicts


def _elapsed(started: float) -> int:
    return int((time.monotonic() - started) * 1000)
