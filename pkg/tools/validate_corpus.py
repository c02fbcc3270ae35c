#!/usr/bin/env python3
"""Validate the shipped corpus: every reference program must compile, be
verifiable, and prove all of its properties with the internal checker."""

from __future__ import annotations

import sys

from stforge.bench import default_corpus_path, load_corpus
from stforge.checker import check_internal
from stforge.frontend import compile_check
from stforge.smv import check_verifiable, translate
from stforge.frontend.diagnostics import has_errors


def main() -> int:
    tasks = load_corpus(default_corpus_path())
    print(f"loaded {len(tasks)} tasks")
    failures = 0
    for task in tasks:
        report = compile_check(task.reference_code, filename=task.id)
        assert report.ok, f"{task.id}: reference does not compile"
        program = report.program
        verif = check_verifiable(program)
        if has_errors(verif):
            print(f"{task.id}: NOT VERIFIABLE: {[d.code for d in verif]}")
            failures += 1
            continue
        model = translate(program, task.properties)
        size = model.state_space_size()
        verdicts = check_internal(model)
        bad = [v for v in verdicts if v.status.value != "proved"]
        status = "ok" if not bad else "FAIL"
        print(f"{task.id}: states<= {size}, {len(verdicts)} properties, {status}")
        for v in bad:
            print(f"    {v.property_id}: {v.status.value}"
                  + (f" cex={v.counterexample}" if v.counterexample else ""))
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
