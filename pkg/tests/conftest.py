import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _ACCEPTANCE.append((props["criterion"], report.outcome, report.duration,
                            props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, outcome, secs, detail in _ACCEPTANCE:
        mark = "PASS" if outcome == "passed" else "FAIL"
        extra = f"  [{detail}]" if detail else ""
        tr.write_line(f"{mark}  {name}  ({secs:.1f}s){extra}")
    passed = sum(o == "passed" for _, o, _, _ in _ACCEPTANCE)
    tr.write_line(f"{passed}/{len(_ACCEPTANCE)} acceptance criteria passed")
