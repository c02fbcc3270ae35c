"""Command-line entry point: check, verify, pipeline, bench.

Exit codes: 0 success, 1 findings (diagnostics, violated or unproved
properties, failed tasks), 2 usage or configuration errors.  Every command
accepts --json for schema-stable output.  Options may come from a JSON
config file (--config); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from . import __version__
from .agents import (AgentBackends, GenerationParams, HttpBackendConfig,
                     OpenAiHttpBackend, PipelineConfig, PipelineOutcome,
                     RagStore, ReplayBackend, ScriptedBackend, run_pipeline)
from .agents.backends import BackendError, LlmBackend
from .bench import (CorpusError, Task, aggregate, evaluate_task, load_corpus,
                    parse_task, render_report)
from .checker import CheckerConfig, Engine, VerdictStatus, check, verdicts_to_json
from .frontend import (compile_check, diagnostics_to_json_lines, has_errors,
                       render_diagnostics, typecheck_expression)
from .frontend import ast as st_ast
from .frontend.diagnostics import Severity
from .smv import (TranslationError, check_verifiable, emit_smv,
                  property_sidecar, translate)
from .smv.model import Property

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2


class CliError(Exception):
    """Configuration or usage problem; maps to exit code 2."""


@dataclass
class RunConfig:
    backend_spec: Optional[dict] = None
    prompt_profile: str = "full"
    max_plans: int = 3
    max_fix_iters_per_plan: int = 5
    engine: Engine = Engine.INTERNAL
    nuxmv_path: Optional[str] = None
    state_cap: int = 2_000_000
    timeout_ms: int = 60_000
    corpus: Optional[str] = None
    output_dir: str = "stforge-out"
    k: int = 1
    parallelism: int = 1
    retrieval_k: int = 3
    rag_docs: Optional[str] = None
    temperature: float = 0.0
    max_tokens: int = 2048
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise CliError("k must be >= 1")
        if self.parallelism < 1:
            raise CliError("parallelism must be >= 1")

    @classmethod
    def from_sources(cls, config_path: Optional[str],
                     overrides: dict) -> "RunConfig":
        data: dict = {}
        if config_path:
            try:
                data = json.loads(Path(config_path).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise CliError(f"cannot read config {config_path}: {exc}")
        if "engine" in data:
            data["engine"] = _parse_engine(data["engine"])
        budgets = data.pop("budgets", {})
        data.setdefault("max_plans", budgets.get("max_plans", 3))
        data.setdefault("max_fix_iters_per_plan",
                        budgets.get("max_fix_iters_per_plan", 5))
        if "backend" in data:
            data["backend_spec"] = data.pop("backend")
        merged = {**data, **{k: v for k, v in overrides.items() if v is not None}}
        known = {f for f in cls.__dataclass_fields__}  # type: ignore[attr-defined]
        unknown = set(merged) - known
        if unknown:
            raise CliError(f"unknown config fields: {sorted(unknown)}")
        return cls(**merged)

    def checker_config(self) -> CheckerConfig:
        return CheckerConfig(engine=self.engine, state_cap=self.state_cap,
                             nuxmv_path=self.nuxmv_path,
                             timeout_ms=self.timeout_ms)

    def pipeline_config(self) -> PipelineConfig:
        return PipelineConfig(
            prompt_profile=self.prompt_profile,
            max_plans=self.max_plans,
            max_fix_iters_per_plan=self.max_fix_iters_per_plan,
            retrieval_k=self.retrieval_k,
            params=GenerationParams(temperature=self.temperature,
                                    max_tokens=self.max_tokens,
                                    seed=self.seed),
            checker=self.checker_config())


def _parse_engine(name: str) -> Engine:
    try:
        return Engine(name)
    except ValueError:
        raise CliError(f"unknown engine {name!r}; expected "
                       f"{[e.value for e in Engine]}") from None


def backend_factory(spec: Optional[dict]) -> Callable[[], LlmBackend]:
    """Validate a backend spec once, return a per-run constructor."""
    if not spec:
        raise CliError("no backend configured (use --backend or the config file)")
    kind = spec.get("type")
    if kind == "replay":
        transcript_path = spec.get("transcript")
        if not transcript_path:
            raise CliError("replay backend needs a 'transcript' file")
        try:
            template = ReplayBackend.from_file(transcript_path)
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise CliError(f"cannot load transcript {transcript_path}: {exc}")
        return lambda: ReplayBackend(template.transcript)
    if kind == "scripted":
        responses = spec.get("responses")
        if responses is None and spec.get("responses_file"):
            try:
                responses = json.loads(
                    Path(spec["responses_file"]).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise CliError(f"cannot load responses file: {exc}")
        if not isinstance(responses, list):
            raise CliError("scripted backend needs a 'responses' list")
        return lambda: ScriptedBackend(responses)
    if kind == "openai":
        for required in ("base_url", "model"):
            if not spec.get(required):
                raise CliError(f"openai backend needs '{required}'")
        config = HttpBackendConfig(
            base_url=spec["base_url"], model=spec["model"],
            api_key_env=spec.get("api_key_env", "OPENAI_API_KEY"))
        try:
            config.resolve_key()  # fail before any call
        except BackendError as exc:
            raise CliError(str(exc))
        return lambda: OpenAiHttpBackend(config)
    raise CliError(f"unknown backend type {kind!r}; expected replay, "
                   f"scripted or openai")


def _load_rag_store(config: RunConfig) -> Optional[RagStore]:
    if not config.rag_docs:
        return None
    try:
        return RagStore.from_jsonl(config.rag_docs)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise CliError(f"cannot load RAG documents {config.rag_docs}: {exc}")


# -- check -------------------------------------------------------------------


def cmd_check(args: argparse.Namespace) -> int:
    worst = EXIT_OK
    for path in args.files:
        try:
            source = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}")
        report = compile_check(source, filename=path)
        if args.json:
            print(json.dumps({
                "file": path, "ok": report.ok,
                "diagnostics": [d.to_json() for d in report.diagnostics],
            }, sort_keys=True))
        else:
            if report.diagnostics:
                print(render_diagnostics(report.diagnostics))
            print(f"{path}: {'ok' if report.ok else 'failed'}")
        if not report.ok:
            worst = EXIT_FINDINGS
    return worst


# -- verify -------------------------------------------------------------------


def _load_properties(path: str) -> list[Property]:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read properties file {path}: {exc}")
    if not isinstance(raw, list) or not raw:
        raise CliError(f"{path}: expected a non-empty JSON array of properties")
    try:
        return [Property.from_json(item) for item in raw]
    except (ValueError, KeyError) as exc:
        raise CliError(f"{path}: {exc}")


def cmd_verify(args: argparse.Namespace) -> int:
    config = RunConfig.from_sources(args.config, {
        "engine": _parse_engine(args.engine) if args.engine else None,
        "nuxmv_path": args.nuxmv_path,
    })
    try:
        source = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {args.file}: {exc}")
    report = compile_check(source, filename=args.file)
    if not report.ok:
        print(render_diagnostics(report.diagnostics), file=sys.stderr)
        return EXIT_FINDINGS
    program = report.program
    assert program is not None
    verif_diags = check_verifiable(program)
    if has_errors(verif_diags):
        print(render_diagnostics(verif_diags), file=sys.stderr)
        return EXIT_USAGE
    for diag in verif_diags:
        if diag.severity is Severity.WARNING:
            print(diag.render(), file=sys.stderr)

    properties = _load_properties(args.properties)
    decls = [*program.input_decls(), *program.state_decls()]
    for prop in properties:
        ty, _ = typecheck_expression(prop.expr, decls)
        if ty is not st_ast.ElemType.BOOL:
            raise CliError(f"property {prop.id!r} does not type-check as BOOL "
                           f"against {args.file}")
    try:
        model = translate(program, properties)
    except TranslationError as exc:
        print(exc.diagnostic.render(), file=sys.stderr)
        return EXIT_USAGE
    if args.emit_smv:
        Path(args.emit_smv).write_text(emit_smv(model), encoding="utf-8")
        Path(args.emit_smv + ".properties.json").write_text(
            property_sidecar(model), encoding="utf-8")

    checker_config = config.checker_config()
    if checker_config.engine is Engine.NUXMV_EXTERNAL \
            and not checker_config.nuxmv_path:
        print("warning: nuxmv engine selected without --nuxmv-path; "
              "results will be Unknown", file=sys.stderr)
        checker_config = CheckerConfig(engine=Engine.NUXMV_EXTERNAL,
                                       state_cap=checker_config.state_cap,
                                       nuxmv_path="nuXmv",
                                       timeout_ms=checker_config.timeout_ms)
    verdicts = check(model, checker_config)
    if args.json:
        print(verdicts_to_json(verdicts), end="")
    else:
        width = max((len(v.property_id) for v in verdicts), default=8)
        for verdict in verdicts:
            line = f"{verdict.property_id:<{width}}  {verdict.status.value}"
            if verdict.diagnostic is not None:
                line += f"  [{verdict.diagnostic.code}]"
            print(line)
    all_proved = all(v.status is VerdictStatus.PROVED for v in verdicts)
    return EXIT_OK if all_proved else EXIT_FINDINGS


# -- pipeline ------------------------------------------------------------------


def _load_task(path: str) -> Task:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read task file {path}: {exc}")
    try:
        return parse_task(path, raw)
    except CorpusError as exc:
        raise CliError(str(exc))


def _write_outcome(outdir: Path, task: Task, outcome: PipelineOutcome,
                   run_index: Optional[int] = None) -> None:
    suffix = f"-{run_index}" if run_index is not None else ""
    outcomes_dir = outdir / "outcomes"
    code_dir = outdir / "code"
    outcomes_dir.mkdir(parents=True, exist_ok=True)
    code_dir.mkdir(parents=True, exist_ok=True)
    (outcomes_dir / f"{task.id}{suffix}.json").write_text(
        outcome.to_json_text(), encoding="utf-8")
    if outcome.final_code:
        (code_dir / f"{task.id}{suffix}.st").write_text(
            outcome.final_code, encoding="utf-8")


def cmd_pipeline(args: argparse.Namespace) -> int:
    config = RunConfig.from_sources(args.config, {
        "backend_spec": _backend_override(args),
        "prompt_profile": args.profile,
        "max_plans": args.max_plans,
        "max_fix_iters_per_plan": args.max_fix_iters,
        "output_dir": args.out,
        "engine": _parse_engine(args.engine) if args.engine else None,
        "nuxmv_path": args.nuxmv_path,
        "rag_docs": args.rag_docs,
        "seed": args.seed,
    })
    factory = backend_factory(config.backend_spec)
    task = _load_task(args.task)
    store = _load_rag_store(config)
    outcome = run_pipeline(task, AgentBackends.single(factory()),
                           config.pipeline_config(), store)
    outdir = Path(config.output_dir)
    _write_outcome(outdir, task, outcome)
    if args.json:
        print(outcome.to_json_text(), end="")
    else:
        status = "success" if outcome.success else "failure"
        print(f"{task.id}: {status} "
              f"(attempts={len(outcome.attempts)}, "
              f"attempts_to_compile={outcome.attempts_to_compile}, "
              f"backend_calls={outcome.backend_calls})")
        if outcome.error:
            print(f"  error: {outcome.error}")
    return EXIT_OK if outcome.success else EXIT_FINDINGS


def _backend_override(args: argparse.Namespace) -> Optional[dict]:
    if not args.backend:
        return None
    try:
        return json.loads(Path(args.backend).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read backend spec {args.backend}: {exc}")


# -- bench ---------------------------------------------------------------------


def cmd_bench(args: argparse.Namespace) -> int:
    config = RunConfig.from_sources(args.config, {
        "backend_spec": _backend_override(args),
        "corpus": args.corpus,
        "k": args.k,
        "parallelism": args.parallelism,
        "output_dir": args.out,
        "prompt_profile": args.profile,
        "engine": _parse_engine(args.engine) if args.engine else None,
        "nuxmv_path": args.nuxmv_path,
        "rag_docs": args.rag_docs,
    })
    if not config.corpus:
        raise CliError("no corpus directory configured")
    factory = backend_factory(config.backend_spec)
    try:
        tasks = load_corpus(config.corpus)
    except CorpusError as exc:
        raise CliError(str(exc))

    outdir = Path(config.output_dir)
    pipeline_config = config.pipeline_config()

    def one_run(task: Task, run_index: int) -> PipelineOutcome:
        store = _load_rag_store(config)
        outcome = run_pipeline(task, AgentBackends.single(factory()),
                               pipeline_config, store)
        _write_outcome(outdir, task, outcome, run_index)
        return outcome

    results = []
    if tasks:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            futures = {
                task.id: [pool.submit(one_run, task, i) for i in range(config.k)]
                for task in tasks
            }
            for task in tasks:
                outcomes = [f.result() for f in futures[task.id]]
                results.append(evaluate_task(task, outcomes))

    report = aggregate(results)
    fmt = "json" if args.json else args.format
    rendered = render_report(report, fmt)
    reports_dir = outdir / "reports"
    reports_dir.mkdir(parents=True, exist_ok=True)
    extension = {"text": "txt", "json": "json", "markdown-table": "md"}[fmt]
    (reports_dir / f"report.{extension}").write_text(rendered, encoding="utf-8")
    print(rendered, end="")

    if args.fail_under_pass is not None:
        passed = sum(r.passed for r in results)
        total = len(results)
        rate = 100.0 * passed / total if total else 0.0
        if rate < args.fail_under_pass:
            print(f"pass rate {rate:.1f}% below threshold "
                  f"{args.fail_under_pass:.1f}%", file=sys.stderr)
            return EXIT_FINDINGS
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stforge",
        description="Generate and formally verify IEC 61131-3 Structured Text.")
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_check = subparsers.add_parser(
        "check", help="compile-check ST files and print diagnostics")
    p_check.add_argument("files", nargs="+", metavar="FILE.st")
    p_check.add_argument("--json", action="store_true")
    p_check.set_defaults(handler=cmd_check)

    p_verify = subparsers.add_parser(
        "verify", help="translate an ST file and check its properties")
    p_verify.add_argument("file", metavar="FILE.st")
    p_verify.add_argument("--properties", required=True,
                          help="JSON file with the property list")
    p_verify.add_argument("--engine", choices=[e.value for e in Engine])
    p_verify.add_argument("--nuxmv-path")
    p_verify.add_argument("--emit-smv", metavar="OUT.smv",
                          help="also write the SMV model and its sidecar")
    p_verify.add_argument("--config")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(handler=cmd_verify)

    p_pipe = subparsers.add_parser(
        "pipeline", help="run one closed-loop generation on a task file")
    p_pipe.add_argument("task", metavar="TASK.json")
    p_pipe.add_argument("--backend", help="backend spec JSON file")
    p_pipe.add_argument("--profile", choices=["zero_shot", "one_shot",
                                              "one_shot+syntax_hint",
                                              "one_shot+rag", "full"])
    p_pipe.add_argument("--max-plans", type=int)
    p_pipe.add_argument("--max-fix-iters", type=int)
    p_pipe.add_argument("--engine", choices=[e.value for e in Engine])
    p_pipe.add_argument("--nuxmv-path")
    p_pipe.add_argument("--rag-docs", help="JSONL file of reference chunks")
    p_pipe.add_argument("--seed", type=int)
    p_pipe.add_argument("--out")
    p_pipe.add_argument("--config")
    p_pipe.add_argument("--json", action="store_true")
    p_pipe.set_defaults(handler=cmd_pipeline)

    p_bench = subparsers.add_parser(
        "bench", help="run pass@k over a corpus and aggregate metrics")
    p_bench.add_argument("corpus", metavar="CORPUS_DIR", nargs="?")
    p_bench.add_argument("--backend", help="backend spec JSON file")
    p_bench.add_argument("--k", type=int)
    p_bench.add_argument("--parallelism", type=int)
    p_bench.add_argument("--profile", choices=["zero_shot", "one_shot",
                                               "one_shot+syntax_hint",
                                               "one_shot+rag", "full"])
    p_bench.add_argument("--engine", choices=[e.value for e in Engine])
    p_bench.add_argument("--nuxmv-path")
    p_bench.add_argument("--rag-docs")
    p_bench.add_argument("--format", choices=["text", "json", "markdown-table"],
                         default="text")
    p_bench.add_argument("--fail-under-pass", type=float, metavar="PCT")
    p_bench.add_argument("--out")
    p_bench.add_argument("--config")
    p_bench.add_argument("--json", action="store_true")
    p_bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
