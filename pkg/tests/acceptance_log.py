"""Collects one PASS/FAIL line per acceptance criterion."""
import time

LINES: list[str] = []


def check(number: int, title: str, limit, fn) -> None:
    """Run ``fn``, enforce the wall-clock ``limit`` in seconds (if any), record and print the verdict."""
    start = time.perf_counter()
    error = None
    detail = ""
    try:
        detail = fn() or ""
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    if error is None and limit is not None and elapsed >= limit:
        error = AssertionError(f"took {elapsed:.2f} s, limit {limit} s")
    verdict = "PASS" if error is None else "FAIL"
    bound = f" (limit {limit} s)" if limit is not None else ""
    note = detail if error is None else str(error).splitlines()[0]
    line = f"{verdict} criterion {number}: {title} [{elapsed:.2f} s{bound}] {note}".rstrip()
    LINES.append(line)
    print(line, flush=True)
    if error is not None:
        raise error
