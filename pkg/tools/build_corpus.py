#!/usr/bin/env python3
"""Regenerate the shipped benchmark corpus under src/stforge/bench/corpus_data.

Run from the repository root:  python tools/build_corpus.py
Then validate:                 python tools/validate_corpus.py
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src/stforge/bench/corpus_data"


def bools(*names):
    return [{"name": n, "type": "BOOL"} for n in names]


def int_var(name, lo, hi, ty="INT"):
    return {"name": name, "type": ty, "range": [lo, hi]}


def prop(pid, expr, description, kind="invariant", trivial=False):
    return {"id": pid, "kind": kind, "expr": expr,
            "description": description, "trivial": trivial}


TASKS = [
    # ----- Easy: Logical Control -------------------------------------------
    {
        "id": "easy_led_control",
        "difficulty": "easy",
        "category": "logical_control",
        "instruction": (
            "Write a function block named LED_Control with two Boolean inputs "
            "PB1 and PB2 and one Boolean output LED. Each cycle, LED must be "
            "on exactly when PB1 is pressed while PB2 is not: the output is "
            "the logical AND of PB1 with the negation of PB2."),
        "interface": {
            "kind": "function_block", "name": "LED_Control",
            "inputs": bools("PB1", "PB2"), "outputs": bools("LED"),
        },
        "skeleton": (
            "FUNCTION_BLOCK LED_Control\n"
            "VAR_INPUT\n    PB1 : BOOL;\n    PB2 : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    LED : BOOL;\nEND_VAR\n"
            "(* implement the output logic here *)\n"
            "END_FUNCTION_BLOCK\n"),
        "properties": [
            prop("led_logic", "LED = (PB1 AND NOT PB2)",
                 "the LED follows PB1 AND NOT PB2 every cycle"),
            prop("led_blocked_by_pb2", "NOT (PB2 AND LED)",
                 "pressing PB2 forces the LED off"),
            prop("led_needs_pb1", "(NOT LED) OR PB1",
                 "the LED is never on without PB1"),
            prop("led_logic_assert", "LED = (PB1 AND NOT PB2)",
                 "assertion form of the output equation", kind="assertion",
                 trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK LED_Control\n"
            "VAR_INPUT\n    PB1 : BOOL;\n    PB2 : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    LED : BOOL;\nEND_VAR\n"
            "LED := PB1 AND NOT PB2;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_and_gate",
        "difficulty": "easy",
        "category": "logical_control",
        "instruction": (
            "Write a function block And_Gate with Boolean inputs A and B and "
            "a Boolean output Q that is true exactly when both inputs are "
            "true."),
        "interface": {
            "kind": "function_block", "name": "And_Gate",
            "inputs": bools("A", "B"), "outputs": bools("Q"),
        },
        "properties": [
            prop("q_iff_both", "Q = (A AND B)", "Q equals A AND B"),
            prop("q_needs_a", "(NOT Q) OR A", "Q is never on without A"),
            prop("q_needs_b", "(NOT Q) OR B", "Q is never on without B"),
            prop("and_gate_assert", "(NOT Q) OR (A AND B)",
                 "assertion form: Q implies both inputs", kind="assertion",
                 trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK And_Gate\n"
            "VAR_INPUT\n    A : BOOL;\n    B : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Q : BOOL;\nEND_VAR\n"
            "Q := A AND B;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_or_gate",
        "difficulty": "easy",
        "category": "logical_control",
        "instruction": (
            "Write a function block Or_Gate with Boolean inputs A and B and "
            "a Boolean output Q that is true when at least one input is "
            "true."),
        "interface": {
            "kind": "function_block", "name": "Or_Gate",
            "inputs": bools("A", "B"), "outputs": bools("Q"),
        },
        "properties": [
            prop("q_iff_any", "Q = (A OR B)", "Q equals A OR B"),
            prop("a_lights_q", "(NOT A) OR Q", "A alone turns Q on"),
            prop("b_lights_q", "(NOT B) OR Q", "B alone turns Q on"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Or_Gate\n"
            "VAR_INPUT\n    A : BOOL;\n    B : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Q : BOOL;\nEND_VAR\n"
            "Q := A OR B;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_xor_gate",
        "difficulty": "easy",
        "category": "logical_control",
        "instruction": (
            "Write a function block Xor_Gate with Boolean inputs A and B and "
            "a Boolean output Q that is true exactly when the inputs "
            "differ."),
        "interface": {
            "kind": "function_block", "name": "Xor_Gate",
            "inputs": bools("A", "B"), "outputs": bools("Q"),
        },
        "properties": [
            prop("q_iff_differ", "Q = (A XOR B)", "Q equals A XOR B"),
            prop("both_on_off", "NOT ((A AND B) AND Q)",
                 "Q is off when both inputs are on"),
            prop("both_off_off", "NOT ((NOT A AND NOT B) AND Q)",
                 "Q is off when both inputs are off"),
            prop("xor_gate_assert", "NOT (Q AND A AND B)",
                 "assertion form: Q never coexists with both inputs",
                 kind="assertion", trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Xor_Gate\n"
            "VAR_INPUT\n    A : BOOL;\n    B : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Q : BOOL;\nEND_VAR\n"
            "Q := A XOR B;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_sr_latch",
        "difficulty": "easy",
        "category": "logical_control",
        "instruction": (
            "Write a function block SR_Latch with Boolean inputs S (set) and "
            "R (reset) and a Boolean output Q. Reset dominates: when R is "
            "true Q turns off; otherwise S turns Q on; with neither pressed "
            "Q holds its previous value across cycles."),
        "interface": {
            "kind": "function_block", "name": "SR_Latch",
            "inputs": bools("S", "R"), "outputs": bools("Q"),
        },
        "properties": [
            prop("reset_dominates", "NOT (R AND Q)",
                 "Q is off whenever reset is held"),
            prop("set_when_free", "NOT (S AND NOT R) OR Q",
                 "setting without reset turns Q on"),
            prop("both_pressed_off", "NOT (S AND R AND Q)",
                 "simultaneous set and reset leaves Q off"),
            prop("latch_assert", "NOT (R AND Q)",
                 "asserted in the body: reset wins", kind="assertion"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK SR_Latch\n"
            "VAR_INPUT\n    S : BOOL;\n    R : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Q : BOOL;\nEND_VAR\n"
            "IF R THEN\n    Q := FALSE;\nELSIF S THEN\n    Q := TRUE;\nEND_IF;\n"
            "ASSERT(NOT (R AND Q));\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_two_hand_start",
        "difficulty": "easy",
        "category": "logical_control",
        "instruction": (
            "Write a function block Two_Hand_Start for a press safety "
            "circuit: Boolean inputs BtnA and BtnB, Boolean output Run. The "
            "machine may run only while both palm buttons are pressed in the "
            "same cycle."),
        "interface": {
            "kind": "function_block", "name": "Two_Hand_Start",
            "inputs": bools("BtnA", "BtnB"), "outputs": bools("Run"),
        },
        "properties": [
            prop("run_iff_both", "Run = (BtnA AND BtnB)",
                 "running needs both buttons"),
            prop("run_needs_a", "(NOT Run) OR BtnA",
                 "never running without button A"),
            prop("run_needs_b", "(NOT Run) OR BtnB",
                 "never running without button B"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Two_Hand_Start\n"
            "VAR_INPUT\n    BtnA : BOOL;\n    BtnB : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Run : BOOL;\nEND_VAR\n"
            "Run := BtnA AND BtnB;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    # ----- Easy: Process Control -------------------------------------------
    {
        "id": "easy_motor_threshold",
        "difficulty": "easy",
        "category": "process_control",
        "instruction": (
            "Write a function block Motor_Threshold that decides whether a "
            "critical motor runs. Input LowPressure is a DINT restricted to "
            "36456..36472 for verification. Compare it against the fixed "
            "threshold 36464: below the threshold the motor stops "
            "(Motor_Critical false), at or above it the motor runs "
            "(Motor_Critical true)."),
        "interface": {
            "kind": "function_block", "name": "Motor_Threshold",
            "inputs": [int_var("LowPressure", 36456, 36472, ty="DINT")],
            "outputs": bools("Motor_Critical"),
        },
        "skeleton": (
            "FUNCTION_BLOCK Motor_Threshold\n"
            "VAR_INPUT\n    LowPressure : DINT (36456..36472);\nEND_VAR\n"
            "VAR_OUTPUT\n    Motor_Critical : BOOL;\nEND_VAR\n"
            "(* compare against the threshold here *)\n"
            "END_FUNCTION_BLOCK\n"),
        "properties": [
            prop("motor_iff_threshold", "Motor_Critical = (LowPressure >= 36464)",
                 "the motor runs exactly at or above the threshold"),
            prop("stops_below", "(LowPressure >= 36464) OR (NOT Motor_Critical)",
                 "below the threshold the motor stops"),
            prop("runs_at_threshold", "NOT (LowPressure = 36464) OR Motor_Critical",
                 "the boundary value itself starts the motor"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Motor_Threshold\n"
            "VAR_INPUT\n    LowPressure : DINT (36456..36472);\nEND_VAR\n"
            "VAR_OUTPUT\n    Motor_Critical : BOOL;\nEND_VAR\n"
            "IF LowPressure >= 36464 THEN\n"
            "    Motor_Critical := TRUE;\n"
            "ELSE\n"
            "    Motor_Critical := FALSE;\n"
            "END_IF;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_pump_interlock",
        "difficulty": "easy",
        "category": "process_control",
        "instruction": (
            "Write a function block Pump_Interlock. Inputs: StartCmd, "
            "StopCmd and LevelLow (all BOOL); output Pump. A stop command or "
            "a low tank level immediately stops the pump and blocks "
            "starting; otherwise a start command switches the pump on, and "
            "with no command the pump keeps its previous state."),
        "interface": {
            "kind": "function_block", "name": "Pump_Interlock",
            "inputs": bools("StartCmd", "StopCmd", "LevelLow"),
            "outputs": bools("Pump"),
        },
        "properties": [
            prop("stop_dominates", "NOT ((StopCmd OR LevelLow) AND Pump)",
                 "stop or dry-run protection forces the pump off"),
            prop("start_engages",
                 "NOT (StartCmd AND NOT StopCmd AND NOT LevelLow) OR Pump",
                 "an unobstructed start command turns the pump on"),
            prop("dry_run_blocked", "NOT (LevelLow AND Pump)",
                 "the pump never runs on a low level"),
            prop("interlock_assert", "NOT (LevelLow AND Pump)",
                 "asserted in the body: no dry running", kind="assertion"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Pump_Interlock\n"
            "VAR_INPUT\n    StartCmd : BOOL;\n    StopCmd : BOOL;\n"
            "    LevelLow : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Pump : BOOL;\nEND_VAR\n"
            "IF StopCmd OR LevelLow THEN\n"
            "    Pump := FALSE;\n"
            "ELSIF StartCmd THEN\n"
            "    Pump := TRUE;\n"
            "END_IF;\n"
            "ASSERT(NOT (LevelLow AND Pump));\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_mode_select",
        "difficulty": "easy",
        "category": "process_control",
        "instruction": (
            "Write a function block Mode_Select. Input Sel is an INT in "
            "0..3; outputs M0 and M1 are BOOL mode lamps. Selector 0 lights "
            "exactly M0, selector 1 lights exactly M1, any other value "
            "lights neither."),
        "interface": {
            "kind": "function_block", "name": "Mode_Select",
            "inputs": [int_var("Sel", 0, 3)], "outputs": bools("M0", "M1"),
        },
        "properties": [
            prop("modes_exclusive", "NOT (M0 AND M1)",
                 "at most one mode lamp at a time"),
            prop("m0_iff_zero", "M0 = (Sel = 0)", "M0 lights for selector 0"),
            prop("m1_iff_one", "M1 = (Sel = 1)", "M1 lights for selector 1"),
            prop("mode_assert", "NOT (M0 AND M1)",
                 "asserted in the body: lamps are exclusive",
                 kind="assertion"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Mode_Select\n"
            "VAR_INPUT\n    Sel : INT (0..3);\nEND_VAR\n"
            "VAR_OUTPUT\n    M0 : BOOL;\n    M1 : BOOL;\nEND_VAR\n"
            "CASE Sel OF\n"
            "0:\n    M0 := TRUE;\n    M1 := FALSE;\n"
            "1:\n    M0 := FALSE;\n    M1 := TRUE;\n"
            "ELSE\n    M0 := FALSE;\n    M1 := FALSE;\n"
            "END_CASE;\n"
            "ASSERT(NOT (M0 AND M1));\n"
            "END_FUNCTION_BLOCK\n"),
    },
    # ----- Easy: Mathematical Operations -----------------------------------
    {
        "id": "easy_abs_diff",
        "difficulty": "easy",
        "category": "mathematical_operations",
        "instruction": (
            "Write a function block Abs_Diff computing the absolute "
            "difference of two INT inputs A and B, both in 0..7, into the "
            "INT output D (0..7)."),
        "interface": {
            "kind": "function_block", "name": "Abs_Diff",
            "inputs": [int_var("A", 0, 7), int_var("B", 0, 7)],
            "outputs": [int_var("D", 0, 7)],
        },
        "properties": [
            prop("diff_when_ge", "NOT (A >= B) OR (D = A - B)",
                 "when A is the larger side, D is A - B"),
            prop("diff_when_lt", "(A >= B) OR (D = B - A)",
                 "when B is the larger side, D is B - A"),
            prop("diff_nonneg", "D >= 0", "the difference is never negative"),
            prop("abs_assert", "D >= 0",
                 "asserted in the body: non-negative result",
                 kind="assertion"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Abs_Diff\n"
            "VAR_INPUT\n    A : INT (0..7);\n    B : INT (0..7);\nEND_VAR\n"
            "VAR_OUTPUT\n    D : INT (0..7);\nEND_VAR\n"
            "IF A >= B THEN\n    D := A - B;\nELSE\n    D := B - A;\nEND_IF;\n"
            "ASSERT(D >= 0);\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_saturating_add",
        "difficulty": "easy",
        "category": "mathematical_operations",
        "instruction": (
            "Write a function block Saturating_Add that adds INT inputs A "
            "and B (each 0..7) into the INT output S (0..15), saturating the "
            "sum at 10: any result above 10 is replaced by 10."),
        "interface": {
            "kind": "function_block", "name": "Saturating_Add",
            "inputs": [int_var("A", 0, 7), int_var("B", 0, 7)],
            "outputs": [int_var("S", 0, 15)],
        },
        "properties": [
            prop("sum_capped", "S <= 10", "the saturated sum never exceeds 10"),
            prop("sum_nonneg", "S >= 0", "the sum is never negative"),
            prop("sum_exact_below_cap", "(A + B > 10) OR (S = A + B)",
                 "sums within the cap pass through unchanged"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Saturating_Add\n"
            "VAR_INPUT\n    A : INT (0..7);\n    B : INT (0..7);\nEND_VAR\n"
            "VAR_OUTPUT\n    S : INT (0..15);\nEND_VAR\n"
            "S := A + B;\n"
            "IF S > 10 THEN\n    S := 10;\nEND_IF;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_parity",
        "difficulty": "easy",
        "category": "mathematical_operations",
        "instruction": (
            "Write a function block Parity_Check with an INT input N in "
            "0..15 and a Boolean output Even that is true exactly when N is "
            "divisible by two."),
        "interface": {
            "kind": "function_block", "name": "Parity_Check",
            "inputs": [int_var("N", 0, 15)], "outputs": bools("Even"),
        },
        "properties": [
            prop("even_iff_mod", "Even = (N MOD 2 = 0)",
                 "Even mirrors N MOD 2"),
            prop("zero_is_even", "NOT (N = 0) OR Even", "zero counts as even"),
            prop("one_is_odd", "NOT (N = 1) OR NOT Even", "one counts as odd"),
            prop("parity_assert", "(N MOD 2 = 0) OR (N MOD 2 = 1)",
                 "assertion form: a remainder is always 0 or 1",
                 kind="assertion", trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Parity_Check\n"
            "VAR_INPUT\n    N : INT (0..15);\nEND_VAR\n"
            "VAR_OUTPUT\n    Even : BOOL;\nEND_VAR\n"
            "Even := (N MOD 2) = 0;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_clamp",
        "difficulty": "easy",
        "category": "mathematical_operations",
        "instruction": (
            "Write a function block Clamp that copies the INT input X "
            "(0..15) to the INT output Y (2..12) while clamping it into the "
            "band 2..12: values below 2 become 2, values above 12 become "
            "12."),
        "interface": {
            "kind": "function_block", "name": "Clamp",
            "inputs": [int_var("X", 0, 15)], "outputs": [int_var("Y", 2, 12)],
        },
        "properties": [
            prop("clamped_low", "Y >= 2", "the output never drops below 2"),
            prop("clamped_high", "Y <= 12", "the output never exceeds 12"),
            prop("identity_in_band", "(X < 2) OR (X > 12) OR (Y = X)",
                 "in-band values pass through unchanged"),
            prop("clamp_assert", "Y >= 2",
                 "asserted in the body: lower clamp holds", kind="assertion"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Clamp\n"
            "VAR_INPUT\n    X : INT (0..15);\nEND_VAR\n"
            "VAR_OUTPUT\n    Y : INT (2..12);\nEND_VAR\n"
            "IF X < 2 THEN\n    Y := 2;\n"
            "ELSIF X > 12 THEN\n    Y := 12;\n"
            "ELSE\n    Y := X;\nEND_IF;\n"
            "ASSERT(Y >= 2);\n"
            "END_FUNCTION_BLOCK\n"),
    },
    # ----- Easy: Real-time Monitoring ---------------------------------------
    {
        "id": "easy_alarm_high",
        "difficulty": "easy",
        "category": "real_time_monitoring",
        "instruction": (
            "Write a function block Overheat_Alarm with an INT temperature "
            "input Temp in 0..120 and a Boolean output Alarm that is raised "
            "exactly when the temperature is strictly above 100."),
        "interface": {
            "kind": "function_block", "name": "Overheat_Alarm",
            "inputs": [int_var("Temp", 0, 120)], "outputs": bools("Alarm"),
        },
        "properties": [
            prop("alarm_iff_hot", "Alarm = (Temp > 100)",
                 "the alarm tracks the threshold"),
            prop("no_false_alarm", "(Temp > 100) OR NOT Alarm",
                 "no alarm at or below 100"),
            prop("alarm_at_101", "NOT (Temp = 101) OR Alarm",
                 "the first degree above the limit raises the alarm"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Overheat_Alarm\n"
            "VAR_INPUT\n    Temp : INT (0..120);\nEND_VAR\n"
            "VAR_OUTPUT\n    Alarm : BOOL;\nEND_VAR\n"
            "Alarm := Temp > 100;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_alarm_band",
        "difficulty": "easy",
        "category": "real_time_monitoring",
        "instruction": (
            "Write a function block Pressure_Band monitoring an INT pressure "
            "P in 0..15. Outputs: Low is true below 3, High is true above "
            "12, InBand is true when the pressure is neither low nor high."),
        "interface": {
            "kind": "function_block", "name": "Pressure_Band",
            "inputs": [int_var("P", 0, 15)],
            "outputs": bools("Low", "High", "InBand"),
        },
        "properties": [
            prop("band_exclusive", "NOT (Low AND High)",
                 "low and high never hold together"),
            prop("inband_iff", "InBand = ((P >= 3) AND (P <= 12))",
                 "InBand mirrors the 3..12 band"),
            prop("low_iff", "Low = (P < 3)", "Low mirrors the lower bound"),
            prop("band_assert", "NOT (Low AND High)",
                 "assertion form of band exclusivity", kind="assertion",
                 trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Pressure_Band\n"
            "VAR_INPUT\n    P : INT (0..15);\nEND_VAR\n"
            "VAR_OUTPUT\n    Low : BOOL;\n    High : BOOL;\n"
            "    InBand : BOOL;\nEND_VAR\n"
            "Low := P < 3;\n"
            "High := P > 12;\n"
            "InBand := NOT Low AND NOT High;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "easy_heartbeat",
        "difficulty": "easy",
        "category": "real_time_monitoring",
        "instruction": (
            "Write a function block Heartbeat_Counter with a Boolean input "
            "Tick and an INT output Count in 0..7. While Tick is true the "
            "counter advances by one per cycle, holding at 7; a cycle "
            "without a tick resets it to zero."),
        "interface": {
            "kind": "function_block", "name": "Heartbeat_Counter",
            "inputs": bools("Tick"), "outputs": [int_var("Count", 0, 7)],
        },
        "properties": [
            prop("count_in_range", "(Count >= 0) AND (Count <= 7)",
                 "the counter stays within its range"),
            prop("reset_when_idle", "Tick OR (Count = 0)",
                 "a missing tick resets the counter"),
            prop("count_caps", "Count <= 7", "the counter saturates at 7"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Heartbeat_Counter\n"
            "VAR_INPUT\n    Tick : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Count : INT (0..7);\nEND_VAR\n"
            "IF Tick THEN\n"
            "    IF Count < 7 THEN\n        Count := Count + 1;\n    END_IF;\n"
            "ELSE\n    Count := 0;\nEND_IF;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    # ----- Medium -----------------------------------------------------------
    {
        "id": "medium_plant_monitor",
        "difficulty": "medium",
        "category": "real_time_monitoring",
        "instruction": (
            "Write a function block Plant_Monitor supervising pressure and "
            "temperature sensors, both INT in 0..15. Derive an INT error "
            "code in 0..4 with fixed priority: pressure above 12 gives code "
            "1; otherwise temperature above 12 gives code 3; otherwise "
            "temperature below 2 gives code 4; otherwise the code is 0. "
            "ErrorFlag is true for any nonzero code and the alarm lamp "
            "follows the flag."),
        "interface": {
            "kind": "function_block", "name": "Plant_Monitor",
            "inputs": [int_var("Pressure", 0, 15), int_var("Temp", 0, 15)],
            "outputs": [int_var("ErrorCode", 0, 4),
                        {"name": "ErrorFlag", "type": "BOOL"},
                        {"name": "Alarm", "type": "BOOL"}],
        },
        "properties": [
            prop("code_in_range", "(ErrorCode >= 0) AND (ErrorCode <= 4)",
                 "error codes stay in 0..4"),
            prop("pressure_overrides", "NOT (Pressure > 12) OR (ErrorCode = 1)",
                 "pressure faults outrank temperature faults"),
            prop("temp_high_code",
                 "NOT ((Temp > 12) AND (Pressure <= 12)) OR (ErrorCode = 3)",
                 "high temperature alone gives code 3"),
            prop("temp_low_code",
                 "NOT ((Temp < 2) AND (Pressure <= 12)) OR (ErrorCode = 4)",
                 "low temperature alone gives code 4"),
            prop("flag_iff_nonzero", "ErrorFlag = (ErrorCode <> 0)",
                 "the flag mirrors a nonzero code"),
            prop("alarm_follows_flag", "Alarm = ErrorFlag",
                 "the alarm lamp follows the flag"),
            prop("monitor_assert", "ErrorCode <= 4",
                 "asserted in the body: code ceiling", kind="assertion"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Plant_Monitor\n"
            "VAR_INPUT\n    Pressure : INT (0..15);\n    Temp : INT (0..15);\n"
            "END_VAR\n"
            "VAR_OUTPUT\n    ErrorCode : INT (0..4);\n    ErrorFlag : BOOL;\n"
            "    Alarm : BOOL;\nEND_VAR\n"
            "IF Pressure > 12 THEN\n    ErrorCode := 1;\n"
            "ELSIF Temp > 12 THEN\n    ErrorCode := 3;\n"
            "ELSIF Temp < 2 THEN\n    ErrorCode := 4;\n"
            "ELSE\n    ErrorCode := 0;\nEND_IF;\n"
            "ErrorFlag := ErrorCode <> 0;\n"
            "Alarm := ErrorFlag;\n"
            "ASSERT(ErrorCode <= 4);\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "medium_bounded_counter",
        "difficulty": "medium",
        "category": "mathematical_operations",
        "instruction": (
            "Write a function block Bounded_Counter with Boolean inputs Up, "
            "Down and Reset and outputs Count (INT 0..7), AtMax and AtMin "
            "(BOOL). Reset clears the counter; otherwise Up without Down "
            "increments toward 7 and Down without Up decrements toward 0, "
            "never leaving 0..7. AtMax and AtMin report the saturation "
            "states."),
        "interface": {
            "kind": "function_block", "name": "Bounded_Counter",
            "inputs": bools("Up", "Down", "Reset"),
            "outputs": [int_var("Count", 0, 7),
                        {"name": "AtMax", "type": "BOOL"},
                        {"name": "AtMin", "type": "BOOL"}],
        },
        "properties": [
            prop("count_in_range", "(Count >= 0) AND (Count <= 7)",
                 "the counter never leaves 0..7"),
            prop("reset_clears", "NOT Reset OR (Count = 0)",
                 "reset forces the counter to zero"),
            prop("atmax_iff", "AtMax = (Count = 7)",
                 "AtMax mirrors saturation at 7"),
            prop("atmin_iff", "AtMin = (Count = 0)",
                 "AtMin mirrors saturation at 0"),
            prop("counter_assert", "Count >= 0",
                 "asserted in the body: never negative", kind="assertion"),
            prop("counter_cap_note", "Count <= 7",
                 "assertion form of the upper bound", kind="assertion",
                 trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Bounded_Counter\n"
            "VAR_INPUT\n    Up : BOOL;\n    Down : BOOL;\n    Reset : BOOL;\n"
            "END_VAR\n"
            "VAR_OUTPUT\n    Count : INT (0..7);\n    AtMax : BOOL;\n"
            "    AtMin : BOOL;\nEND_VAR\n"
            "IF Reset THEN\n    Count := 0;\n"
            "ELSIF Up AND NOT Down THEN\n"
            "    IF Count < 7 THEN\n        Count := Count + 1;\n    END_IF;\n"
            "ELSIF Down AND NOT Up THEN\n"
            "    IF Count > 0 THEN\n        Count := Count - 1;\n    END_IF;\n"
            "END_IF;\n"
            "AtMax := Count = 7;\n"
            "AtMin := Count = 0;\n"
            "ASSERT(Count >= 0);\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "medium_traffic_light",
        "difficulty": "medium",
        "category": "process_control",
        "instruction": (
            "Write a function block Traffic_Light cycling a three-phase "
            "signal. A Boolean input Advance steps the INT phase 0 -> 1 -> "
            "2 -> 0; without it the phase holds. Outputs Red, Yellow and "
            "Green light for phases 0, 1 and 2 respectively, exactly one at "
            "a time."),
        "interface": {
            "kind": "function_block", "name": "Traffic_Light",
            "inputs": bools("Advance"),
            "outputs": [{"name": "Phase", "type": "INT", "range": [0, 2]},
                        {"name": "Red", "type": "BOOL"},
                        {"name": "Yellow", "type": "BOOL"},
                        {"name": "Green", "type": "BOOL"}],
        },
        "properties": [
            prop("phase_in_range", "(Phase >= 0) AND (Phase <= 2)",
                 "the phase counter stays in 0..2"),
            prop("exactly_one_lamp",
                 "(Red AND NOT Yellow AND NOT Green) OR "
                 "(Yellow AND NOT Red AND NOT Green) OR "
                 "(Green AND NOT Red AND NOT Yellow)",
                 "exactly one lamp is lit"),
            prop("red_iff", "Red = (Phase = 0)", "red lights phase 0"),
            prop("yellow_iff", "Yellow = (Phase = 1)", "yellow lights phase 1"),
            prop("green_iff", "Green = (Phase = 2)", "green lights phase 2"),
            prop("some_lamp_assert", "Red OR Yellow OR Green",
                 "assertion form: some lamp is always lit", kind="assertion",
                 trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Traffic_Light\n"
            "VAR_INPUT\n    Advance : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Phase : INT (0..2);\n    Red : BOOL;\n"
            "    Yellow : BOOL;\n    Green : BOOL;\nEND_VAR\n"
            "IF Advance THEN\n"
            "    IF Phase = 2 THEN\n        Phase := 0;\n"
            "    ELSE\n        Phase := Phase + 1;\n    END_IF;\n"
            "END_IF;\n"
            "Red := Phase = 0;\n"
            "Yellow := Phase = 1;\n"
            "Green := Phase = 2;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "medium_tank_control",
        "difficulty": "medium",
        "category": "process_control",
        "instruction": (
            "Write a function block Tank_Control managing fill and drain "
            "valves for a tank whose INT level reading spans 0..15. A "
            "Boolean ManualStop closes both valves and selects mode 0. "
            "Otherwise a level below 4 opens only the fill valve (mode 1), "
            "a level above 12 opens only the drain valve (mode 2), and "
            "in-band levels close both valves (mode 0). The valves must "
            "never be open together."),
        "interface": {
            "kind": "function_block", "name": "Tank_Control",
            "inputs": [int_var("Level", 0, 15),
                       {"name": "ManualStop", "type": "BOOL"}],
            "outputs": [{"name": "FillValve", "type": "BOOL"},
                        {"name": "DrainValve", "type": "BOOL"},
                        {"name": "Mode", "type": "INT", "range": [0, 2]}],
        },
        "properties": [
            prop("valves_exclusive", "NOT (FillValve AND DrainValve)",
                 "fill and drain never open together"),
            prop("stop_closes_all",
                 "NOT ManualStop OR (NOT FillValve AND NOT DrainValve)",
                 "a manual stop closes both valves"),
            prop("fills_when_low",
                 "NOT ((Level < 4) AND NOT ManualStop) OR FillValve",
                 "a low level opens the fill valve"),
            prop("drains_when_high",
                 "NOT ((Level > 12) AND NOT ManualStop) OR DrainValve",
                 "a high level opens the drain valve"),
            prop("valve_assert", "NOT (FillValve AND DrainValve)",
                 "asserted in the body: valve exclusivity", kind="assertion"),
            prop("mode_note", "Mode <= 2",
                 "assertion form of the mode ceiling", kind="assertion",
                 trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Tank_Control\n"
            "VAR_INPUT\n    Level : INT (0..15);\n    ManualStop : BOOL;\n"
            "END_VAR\n"
            "VAR_OUTPUT\n    FillValve : BOOL;\n    DrainValve : BOOL;\n"
            "    Mode : INT (0..2);\nEND_VAR\n"
            "IF ManualStop THEN\n"
            "    FillValve := FALSE;\n    DrainValve := FALSE;\n"
            "    Mode := 0;\n"
            "ELSIF Level < 4 THEN\n"
            "    FillValve := TRUE;\n    DrainValve := FALSE;\n"
            "    Mode := 1;\n"
            "ELSIF Level > 12 THEN\n"
            "    FillValve := FALSE;\n    DrainValve := TRUE;\n"
            "    Mode := 2;\n"
            "ELSE\n"
            "    FillValve := FALSE;\n    DrainValve := FALSE;\n"
            "    Mode := 0;\n"
            "END_IF;\n"
            "ASSERT(NOT (FillValve AND DrainValve));\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "medium_window_sum",
        "difficulty": "medium",
        "category": "mathematical_operations",
        "instruction": (
            "Write a function block Window_Sum computing N copies of a "
            "sample into a running total with a FOR loop. Inputs: N (INT "
            "0..4) and X (INT 0..3). Output Total (INT 0..12) must equal N "
            "times X each cycle: clear the total, then loop over a fixed "
            "window of four slots adding X for each slot index not "
            "exceeding N. Use an INT loop index I (0..5)."),
        "interface": {
            "kind": "function_block", "name": "Window_Sum",
            "inputs": [int_var("N", 0, 4), int_var("X", 0, 3)],
            "outputs": [int_var("Total", 0, 12)],
            "locals": [int_var("I", 0, 5)],
        },
        "properties": [
            prop("total_is_product", "Total = N * X",
                 "the windowed sum equals N times X"),
            prop("total_bounded", "Total <= 12", "the total respects its cap"),
            prop("zero_factor_zero", "NOT ((N = 0) OR (X = 0)) OR (Total = 0)",
                 "a zero factor yields a zero total"),
            prop("total_nonneg", "Total >= 0", "the total is never negative"),
            prop("sum_assert", "Total <= 12",
                 "asserted in the body: cap respected", kind="assertion"),
            prop("sum_floor_note", "Total >= 0",
                 "assertion form of the lower bound", kind="assertion",
                 trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Window_Sum\n"
            "VAR_INPUT\n    N : INT (0..4);\n    X : INT (0..3);\nEND_VAR\n"
            "VAR_OUTPUT\n    Total : INT (0..12);\nEND_VAR\n"
            "VAR\n    I : INT (0..5);\nEND_VAR\n"
            "Total := 0;\n"
            "FOR I := 1 TO 4 DO\n"
            "    IF I <= N THEN\n        Total := Total + X;\n    END_IF;\n"
            "END_FOR;\n"
            "ASSERT(Total <= 12);\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "medium_debounce",
        "difficulty": "medium",
        "category": "real_time_monitoring",
        "instruction": (
            "Write a function block Debounce filtering a noisy Boolean "
            "input Raw into a stable Boolean output Stable using an INT "
            "counter Cnt (0..3). Consecutive true samples count up to 3; "
            "any false sample clears the counter. Stable turns on when the "
            "counter reaches 3 and turns off when it clears, holding "
            "otherwise."),
        "interface": {
            "kind": "function_block", "name": "Debounce",
            "inputs": bools("Raw"), "outputs": bools("Stable"),
            "locals": [int_var("Cnt", 0, 3)],
        },
        "properties": [
            prop("cnt_in_range", "(Cnt >= 0) AND (Cnt <= 3)",
                 "the counter stays within its range"),
            prop("stable_at_max", "NOT Stable OR (Cnt = 3)",
                 "stability requires a full counter"),
            prop("idle_resets", "Raw OR (Cnt = 0)",
                 "a false sample clears the counter"),
            prop("idle_unstable", "Raw OR NOT Stable",
                 "a false sample drops stability"),
            prop("active_counts", "NOT Raw OR (Cnt > 0)",
                 "a true sample leaves a nonzero counter"),
            prop("debounce_note", "Cnt <= 3",
                 "assertion form of the counter ceiling", kind="assertion",
                 trivial=True),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Debounce\n"
            "VAR_INPUT\n    Raw : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Stable : BOOL;\nEND_VAR\n"
            "VAR\n    Cnt : INT (0..3);\nEND_VAR\n"
            "IF Raw THEN\n"
            "    IF Cnt < 3 THEN\n        Cnt := Cnt + 1;\n    END_IF;\n"
            "ELSE\n    Cnt := 0;\nEND_IF;\n"
            "IF Cnt = 3 THEN\n    Stable := TRUE;\n"
            "ELSIF Cnt = 0 THEN\n    Stable := FALSE;\nEND_IF;\n"
            "END_FUNCTION_BLOCK\n"),
    },
    {
        "id": "medium_conveyor",
        "difficulty": "medium",
        "category": "process_control",
        "instruction": (
            "Write a function block Conveyor_Control. Inputs: Start, Stop, "
            "Jam and PartSensor (all BOOL). Outputs: Motor (BOOL), Items "
            "(INT 0..7) and Fault (BOOL). A jam latches the fault and stops "
            "the motor; a stop command stops it; otherwise a start command "
            "runs the motor unless a fault is latched. While the motor runs, "
            "each part sensed increments the item counter, saturating at "
            "7."),
        "interface": {
            "kind": "function_block", "name": "Conveyor_Control",
            "inputs": bools("Start", "Stop", "Jam", "PartSensor"),
            "outputs": [{"name": "Motor", "type": "BOOL"},
                        int_var("Items", 0, 7),
                        {"name": "Fault", "type": "BOOL"}],
        },
        "properties": [
            prop("no_run_on_fault", "NOT (Fault AND Motor)",
                 "a latched fault never coexists with a running motor"),
            prop("jam_faults", "NOT Jam OR Fault", "a jam latches the fault"),
            prop("jam_stops", "NOT Jam OR NOT Motor", "a jam stops the motor"),
            prop("stop_halts", "NOT (Stop AND NOT Jam) OR NOT Motor",
                 "a stop command halts the motor"),
            prop("items_bounded", "(Items >= 0) AND (Items <= 7)",
                 "the item counter stays in range"),
            prop("conveyor_assert", "NOT (Fault AND Motor)",
                 "asserted in the body: fault interlock", kind="assertion"),
        ],
        "reference_code": (
            "FUNCTION_BLOCK Conveyor_Control\n"
            "VAR_INPUT\n    Start : BOOL;\n    Stop : BOOL;\n    Jam : BOOL;\n"
            "    PartSensor : BOOL;\nEND_VAR\n"
            "VAR_OUTPUT\n    Motor : BOOL;\n    Items : INT (0..7);\n"
            "    Fault : BOOL;\nEND_VAR\n"
            "IF Jam THEN\n    Fault := TRUE;\n    Motor := FALSE;\n"
            "ELSIF Stop THEN\n    Motor := FALSE;\n"
            "ELSIF Start AND NOT Fault THEN\n    Motor := TRUE;\n"
            "END_IF;\n"
            "IF Motor AND PartSensor THEN\n"
            "    IF Items < 7 THEN\n        Items := Items + 1;\n    END_IF;\n"
            "END_IF;\n"
            "ASSERT(NOT (Fault AND Motor));\n"
            "END_FUNCTION_BLOCK\n"),
    },
]


def main() -> None:
    tasks_dir = OUT / "tasks"
    tasks_dir.mkdir(parents=True, exist_ok=True)
    for stale in tasks_dir.glob("*.json"):
        stale.unlink()
    filenames = []
    counts = {"easy": {"tasks": 0, "properties": 0, "nontrivial": 0},
              "medium": {"tasks": 0, "properties": 0, "nontrivial": 0}}
    for task in TASKS:
        name = f"tasks/{task['id']}.json"
        (OUT / name).write_text(json.dumps(task, indent=2) + "\n",
                                encoding="utf-8")
        filenames.append(name)
        bucket = counts[task["difficulty"]]
        bucket["tasks"] += 1
        bucket["properties"] += len(task["properties"])
        bucket["nontrivial"] += sum(1 for p in task["properties"]
                                    if not p["trivial"])
    manifest = {"tasks": filenames, "counts": counts}
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n",
                                       encoding="utf-8")
    print(f"wrote {len(filenames)} tasks; counts: {json.dumps(counts)}")


if __name__ == "__main__":
    main()
