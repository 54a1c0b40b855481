"""This module defines all text strings printed to the user."""

import enum


class Strings(enum.StrEnum):
    """Messages printed on standard output."""

    GENERATED = (
        'Generated scenario {scenario_id}: M={users} K={eaves} N={slots} '
        'seed={seed} -> {path}'
    )
    SOLVED = (
        '{strategy}: objective_p1={p1} objective_p2={p2} '
        'iterations={iterations} converged={converged} -> {path}'
    )
    COMPARED = '{strategy}: objective_p1={p1} iterations={iterations}'
    COMPARE_DONE = 'Compared {count} strategies on {scenario_id} -> {path}'
    SWEEP_DONE = 'Swept {count} scenarios -> {path}'
    ORACLE_REPORT = (
        'oracle objective_p1={oracle} solver objective_p1={solver} '
        'ratio={ratio} floor={floor}'
    )
    ORACLE_PASSED = 'Oracle check passed'
    ORACLE_FAILED = 'Oracle check FAILED'
