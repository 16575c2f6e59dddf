import os
from pathlib import Path

import numpy as np
import pytest

HERE = Path(__file__).parent


def howell_path():
    """Location of the Howell CSV, or None when it is not available."""
    env = os.environ.get("PCAKIT_HOWELL_CSV")
    candidates = [Path(env)] if env else []
    candidates += [HERE / "data" / "Howell1.csv", HERE / "data" / "howell.csv"]
    for path in candidates:
        if path.is_file():
            return path
    return None


def sniff_delimiter(path):
    with open(path, encoding="utf-8-sig") as fh:
        header = fh.readline()
    return ";" if header.count(";") > header.count(",") else ","


def random_data(seed, n=None, m=None):
    """Correlated full-rank data with columns on different scales."""
    rng = np.random.default_rng(seed)
    n = n if n is not None else int(rng.integers(10, 201))
    m = m if m is not None else int(rng.integers(2, 9))
    n = max(n, m + 2)
    mixing = rng.normal(size=(m, m))
    x = rng.normal(size=(n, m)) @ mixing
    return x * rng.uniform(0.5, 50.0, size=m) + rng.uniform(-100, 100, size=m)


@pytest.fixture
def howell_csv():
    path = howell_path()
    if path is None:
        pytest.skip(
            "Howell dataset not found; set PCAKIT_HOWELL_CSV or place Howell1.csv in tests/data/"
        )
    return path


@pytest.fixture
def synthetic_csv(tmp_path):
    """A Howell-shaped CSV (height, weight, age, male) with synthetic values."""
    rng = np.random.default_rng(7)
    n = 300
    male = rng.integers(0, 2, size=n)
    age = rng.uniform(5, 80, size=n).round(1)
    height = 130 + 10 * male + 0.3 * np.minimum(age, 20) + rng.normal(0, 6, size=n)
    weight = 0.6 * height - 50 + rng.normal(0, 4, size=n) - 0.03 * age
    path = tmp_path / "people.csv"
    lines = ["height,weight,age,male"]
    lines += [f"{float(h)!r},{float(w)!r},{float(a)!r},{int(s)}" for h, w, a, s in zip(height, weight, age, male)]
    path.write_text("\n".join(lines) + "\n")
    return path


# acceptance criteria summary: one PASS/FAIL/SKIP line per criterion

_criteria: dict[int, list[str]] = {}
_skip_reasons: dict[int, str] = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = "skip" if report.skipped else ("pass" if report.passed else "fail")
        if report.skipped and isinstance(report.longrepr, tuple):
            _skip_reasons[marker[0]] = report.longrepr[2].removeprefix("Skipped: ")
        _criteria.setdefault(marker[0], []).append(f"{outcome}:{marker[1]}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = (mark.args[0], item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _criteria[number]
        outcomes = {r.split(":", 1)[0] for r in results}
        if "fail" in outcomes:
            verdict = "FAIL"
        elif outcomes == {"skip"}:
            verdict = "SKIP"
        else:
            verdict = "PASS"
        names = ", ".join(sorted({r.split(":", 1)[1] for r in results}))
        line = f"criterion {number:2d}: {verdict}  ({names})"
        if verdict == "SKIP" and number in _skip_reasons:
            line += f" - {_skip_reasons[number]}"
        terminalreporter.write_line(line)


def data_with_correlation(r, n, seed=0):
    """An n x m data matrix whose sample correlation matrix is exactly ``r`` (to rounding)."""
    rng = np.random.default_rng(seed)
    m = r.shape[0]
    raw = rng.normal(size=(n, m))
    raw -= raw.mean(axis=0)
    # whiten to identity sample covariance, then colour with chol(r)
    w = np.linalg.cholesky(raw.T @ raw / (n - 1))
    white = raw @ np.linalg.inv(w).T
    return white @ np.linalg.cholesky(r).T * np.array([5.0, 5.4, 16.2]) + np.array([149.5, 41.8, 40.7])


@pytest.fixture
def reference_x():
    import published as pv

    return data_with_correlation(pv.R, pv.N)
