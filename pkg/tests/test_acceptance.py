"""Acceptance suite.

One test per release criterion; each prints a single CRITERION line (run
with ``pytest -s`` to see them as they pass). Every tolerance is exact:
equivalence and lemma checks require 100% agreement, and set comparisons
are plain equality.
"""

import time

from qraise import planning
from qraise.cli import main as cli_main
from qraise.harness import (
    PrefixPattern,
    QbfGenSpec,
    SampleSpec,
    check_equivalence,
    check_lemma,
    generate_qbfs,
    exhaustive_qbfs,
    measure_growth,
)
from qraise.parsing import serialize_qbf
from qraise.qbf import qbf_valid, qbf_valid_by_table


def _report(number: int, label: str, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"CRITERION {number:2d} [{status}] {label}: {detail}")
    assert passed, f"criterion {number} failed: {detail}"


def _run_equivalence(number, target, spec, budget_s, tmp_path):
    started = time.time()
    report = check_equivalence(target, spec, fixture_dir=tmp_path / f"fixtures-{target}")
    elapsed = time.time() - started
    detail = (
        f"{report.agreements}/{report.total} agree,"
        f" {len(report.counterexamples)} counterexamples,"
        f" {len(report.resource_errors)} resource errors, {elapsed:.1f}s"
    )
    if report.counterexamples:
        detail += f" (fixtures in {tmp_path / f'fixtures-{target}'})"
    passed = report.ok and report.agreements == report.total and elapsed < budget_s
    _report(number, f"{target} equivalence ({spec.prefix_pattern.value})", passed, detail)


def test_criterion_1_exhaustive_abduction(tmp_path):
    spec = QbfGenSpec(num_vars=3, prefix_pattern=PrefixPattern.EXHAUSTIVE, matrix_depth=3)
    _run_equivalence(1, "abduction", spec, budget_s=300, tmp_path=tmp_path)


def test_criterion_2_exhaustive_default(tmp_path):
    spec = QbfGenSpec(num_vars=3, prefix_pattern=PrefixPattern.EXHAUSTIVE, matrix_depth=3)
    _run_equivalence(2, "default", spec, budget_s=300, tmp_path=tmp_path)


def test_criterion_3_exhaustive_planning(tmp_path):
    spec = QbfGenSpec(num_vars=3, prefix_pattern=PrefixPattern.EXHAUSTIVE, matrix_depth=3)
    _run_equivalence(3, "planning", spec, budget_s=600, tmp_path=tmp_path)


def test_criterion_4_randomized_equivalence(tmp_path):
    runs = (
        ("abduction", QbfGenSpec(seed=401, num_vars=5,
                                 prefix_pattern=PrefixPattern.EXISTS_FORALL, count=500)),
        ("default", QbfGenSpec(seed=402, num_vars=5,
                               prefix_pattern=PrefixPattern.FORALL_EXISTS, count=500)),
        ("planning", QbfGenSpec(seed=403, num_vars=4,
                                prefix_pattern=PrefixPattern.ARBITRARY, count=500)),
    )
    details = []
    passed = True
    for target, spec in runs:
        report = check_equivalence(target, spec, fixture_dir=tmp_path / f"fixtures-{target}")
        passed = passed and report.ok and report.total == spec.count
        details.append(f"{target}={report.agreements}/{report.total}")
    _report(4, "randomized equivalence at module caps", passed, " ".join(details))


def test_criterion_5_existential_raise_lemma():
    report = check_lemma("abduction", SampleSpec(seed=501, count=200))
    _report(
        5,
        "explanation-set equality across the existential raise",
        report.ok and report.total == 200,
        f"{report.agreements}/{report.total} exact matches",
    )


def test_criterion_6_universal_raise_lemma():
    report = check_lemma("default", SampleSpec(seed=601, count=200))
    _report(
        6,
        "extension correspondence across the universal raise",
        report.ok and report.total == 200,
        f"{report.agreements}/{report.total} exact matches",
    )


def test_criterion_7_growth_bounds():
    abd = measure_growth("abduction", 5)
    abd_deltas = {
        (
            abd.rows[i].variables - abd.rows[i - 1].variables,
            abd.rows[i].items - abd.rows[i - 1].items,
            abd.rows[i].total_size - abd.rows[i - 1].total_size,
        )
        for i in range(1, len(abd.rows))
    }
    abd_ok = abd.ok and len(abd_deltas) == 1 and abd_deltas == {(3, 5, 18)}

    dfl = measure_growth("default", 5)
    totals = [row.total_size for row in dfl.rows]
    first = [b - a for a, b in zip(totals, totals[1:])]
    second = {b - a for a, b in zip(first, first[1:])}
    dfl_ok = dfl.ok and len(second) == 1

    pln = measure_growth("planning", 5)
    m = pln.matrix_size
    action_count_ok = all(row.items <= 3 * row.raises + 1 for row in pln.rows)
    # Preconditions gain exactly one guard per raise: matrix + n + c with c = 3.
    # Total action size (the flip action accumulates one reset literal per
    # earlier control fluent) stays within matrix + 2n + c.
    size_ok = pln.ok and all(
        row.max_action_size <= m + 2 * row.raises + 3 for row in pln.rows
    )
    pln_ok = action_count_ok and size_ok

    _report(
        7,
        "growth bounds",
        abd_ok and dfl_ok and pln_ok,
        f"abduction deltas={sorted(abd_deltas)} default second-difference={sorted(second)}"
        f" planning actions<=3n+1={action_count_ok} sizes={size_ok}",
    )


def test_criterion_8_dual_oracle_agreement():
    started = time.time()
    total = 0
    disagreements = 0
    for q in exhaustive_qbfs(4, 3, "any"):
        total += 1
        if qbf_valid(q) != qbf_valid_by_table(q):
            disagreements += 1
    elapsed = time.time() - started
    _report(
        8,
        "recursive and table validity deciders agree (<= 4 variables)",
        disagreements == 0 and total > 90000,
        f"{total - disagreements}/{total} agree, {elapsed:.1f}s",
    )


def test_criterion_9_plan_replay():
    checked = 0
    failures = 0
    for q in exhaustive_qbfs(2, 3, "any"):
        instance = planning.reduce_qbf(q)
        found, plan = planning.plan_exists(instance)
        if found:
            checked += 1
            if not planning.validate_plan(instance, plan):
                failures += 1
    for q in generate_qbfs(QbfGenSpec(seed=901, num_vars=4, count=150)):
        instance = planning.reduce_qbf(q)
        found, plan = planning.plan_exists(instance)
        if found:
            checked += 1
            if not planning.validate_plan(instance, plan):
                failures += 1
    _report(
        9,
        "every returned plan replays to the goal",
        failures == 0 and checked > 500,
        f"{checked} plans replayed, {failures} failures",
    )


def test_criterion_10_cli_round_trip(tmp_path, capsys):
    patterns = {
        "abduction": PrefixPattern.EXISTS_FORALL,
        "default": PrefixPattern.FORALL_EXISTS,
        "planning": PrefixPattern.ARBITRARY,
    }
    mismatches = 0
    total = 0
    for target, pattern in patterns.items():
        spec = QbfGenSpec(seed=1001, num_vars=3, prefix_pattern=pattern, count=50)
        for i, q in enumerate(generate_qbfs(spec)):
            qbf_path = tmp_path / f"{target}-{i}.qbf"
            qbf_path.write_text(serialize_qbf(q) + "\n", encoding="utf-8")
            instance_path = tmp_path / f"{target}-{i}.instance"
            validate_code = cli_main(["validate", str(qbf_path)])
            reduce_code = cli_main(
                ["reduce", "--target", target, str(qbf_path), "-o", str(instance_path)]
            )
            solve_code = cli_main(["solve", "--target", target, str(instance_path)])
            total += 1
            if reduce_code != 0 or solve_code != validate_code:
                mismatches += 1
    capsys.readouterr()  # swallow the per-case CLI output
    _report(
        10,
        "solve(reduce(q)) exit status equals validate(q)",
        mismatches == 0 and total == 150,
        f"{total - mismatches}/{total} CLI round trips agree",
    )
