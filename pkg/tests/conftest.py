import re
from collections import defaultdict

CRITERIA = {
    1: "algebra trichotomy",
    2: "plane point counts",
    3: "span 8 and per-line quadric law",
    4: "construction equivalences",
    5: "pair coverage / intersections / tangents",
    6: "Segre identification",
    7: "Hjelmslev suite",
    8: "sharp quadrangle transitivity",
    9: "uniqueness of quadrics in X",
    10: "neighbor-calculus lemmas",
}

_PAT = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = defaultdict(lambda: [0, 0])  # criterion -> [passed, failed]
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _PAT.search(getattr(rep, "nodeid", ""))
            if m:
                results[int(m.group(1))][0 if status == "passed" else 1] += 1
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        got = results.get(num)
        if got is None:
            verdict = "NOT RUN"
        elif got[1]:
            verdict = "FAIL  (%d of %d cases failed)" % (got[1], got[0] + got[1])
        else:
            verdict = "PASS  (%d cases)" % got[0]
        terminalreporter.write_line(
            "criterion %2d  %-42s %s" % (num, CRITERIA[num], verdict))
