"""stforge: closed-loop generation and formal verification of IEC 61131-3
Structured Text.

The package is organized as a pipeline:

- ``frontend``  lexes, parses and type-checks ST source into a checked AST;
- ``interp``    executes checked programs with PLC scan-cycle semantics;
- ``smv``       translates finite-state programs into SMV transition systems;
- ``checker``   decides invariant properties (built-in explicit-state engine
  or an external nuXmv binary);
- ``agents``    drives an LLM-backed generate / debug / verify loop;
- ``bench``     loads the benchmark corpus and aggregates pass@k metrics;
- ``cli``       binds everything into the ``stforge`` command.
"""

__version__ = "0.1.0"
