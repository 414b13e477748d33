"""The twelve acceptance criteria, one test each.

Each test prints a single ``PASS``/``FAIL`` line and asserts the verdict; the
lines are also collected into an "acceptance criteria" section at the end of
the pytest run.
"""

from burnside_kit import suite


def _report(log: list, number: int, title: str, checks: list[dict]) -> None:
    bad = [c["name"] for c in checks if not c["ok"]]
    verdict = "PASS" if checks and not bad else "FAIL"
    line = f"criterion {number:2d} {verdict}: {title} ({len(checks) - len(bad)}/{len(checks)} checks)"
    log.append(line)
    print(line)
    assert checks, "no checks were run"
    assert not bad, f"failing checks: {bad}"


def test_criterion_01_twisted_arrow_comparison(acceptance_log):
    checks = suite.twisted_classical_checks(4)
    assert len(checks) == 27
    _report(acceptance_log, 1, "N(Tw C) = Tw(N C) up to dimension 4 on the corpus", checks)


def test_criterion_02_twisted_projection_is_left_fibration(acceptance_log):
    checks = suite.twisted_fibration_checks(4)
    assert len(checks) == 27
    assert all(c["discrete_opfibration"] for c in checks)
    _report(acceptance_log, 2, "Tw(N C) -> (N C)^op x N C left fibration at bound 4, oracle agrees", checks)


def test_criterion_03_corner_map_certificates(acceptance_log):
    checks = suite.corner_certificate_checks(("i1", 2, 3, "i2"))
    assert [c["name"] for c in checks] == ["pr11/corner/i1", "pr11/corner/s2", "pr11/corner/s3",
                                           "pr11/corner/i2"]
    # model targets: Delta^3 for i1, Delta^5 for s2 and i2, Delta^7 for s3
    assert [c["model"]["target"][0] for c in checks] == [4, 6, 8, 6]
    _report(acceptance_log, 3, "corner maps for s2, s3, i1, i2 match the models and certify", checks)


def test_criterion_04_left_horns_from_spines(acceptance_log):
    checks = [c for c in suite.left_horn_checks(4) if "/left-horn/" in c["name"]]
    assert [c["name"] for c in checks] == ["lm16/left-horn/2", "lm16/left-horn/3", "lm16/left-horn/4"]
    _report(acceptance_log, 4, "Lambda^n_0 -> Delta^n from spines, i1, i2 for n = 2, 3, 4", checks)


def test_criterion_05_effective_burnside_is_quasicategory(acceptance_log):
    checks = suite.pr22_checks(4)
    assert checks and all(c["fibration"]["definitive"] for c in checks)
    _report(acceptance_log, 5, "A^eff(C) inner at bound 4 and h A^eff(C) = spans on adequate triples", checks)


def test_criterion_06_burnside_of_cartesian_fibration(acceptance_log):
    checks = suite.thm24_checks(3)
    _report(acceptance_log, 6, "A^eff(p) cocartesian over base Delta^1 at bound 3", checks)


def test_criterion_07_dual_fibrations(acceptance_log):
    checks = suite.dual_checks(2)
    _report(acceptance_log, 7, "h(p dual) and h(dual p) match the Grothendieck constructions; op identity", checks)


def test_criterion_08_figures(acceptance_log):
    checks = suite.figure_checks()
    assert len(checks) == 3
    _report(acceptance_log, 8, "F(Delta^0), F(Delta^1), F(Delta^2) cell counts and blazed square", checks)


def test_criterion_09_marbled_spines_and_marked_horns(acceptance_log):
    spines = suite.marbled_spine_checks(3)
    assert [c["name"] for c in spines] == ["lm311/certificate/2", "lm311/certificate/3"]
    horns = [c for c in suite.left_horn_checks(4, marked=True) if "/left-horn/" in c["name"]]
    assert len(horns) == 3
    lifts = suite.spine_lift_checks(3)
    assert len(lifts) == 2 * len(suite.diagrams())
    _report(acceptance_log, 9, "marbled spine certificates, marked horns, F(s_n) lift tests", spines + horns + lifts)


def test_criterion_10_fibrewise_burnside(acceptance_log):
    checks = suite.thm310_checks(3)
    families = {c["name"].split("/")[1] for c in checks if not c["name"].startswith("thm310/fiber/")}
    assert len(families) >= 2
    _report(acceptance_log, 10, "verify_thm310 and fiber comparisons over Delta^1 at bound 3", checks)


def test_criterion_11_bounded_freeness(acceptance_log):
    checks = suite.freeness_checks(3, 3)
    _report(acceptance_log, 11, "EndoWords of length <= 3 distinguished at arity 3", checks)


def test_criterion_12_adjunction_counts(acceptance_log):
    checks = suite.adjunction_checks()
    assert len(checks) == 36
    _report(acceptance_log, 12, "adjunction hom-set counts on the six-object corpus", checks)
