"""Pass/fail registry for the acceptance criteria, printed at the end of the run."""

RESULTS = {}


def record(number, title, ok, detail=""):
    RESULTS[number] = (title, bool(ok), detail)
    return ok


def lines():
    out = []
    for number in sorted(RESULTS):
        title, ok, detail = RESULTS[number]
        out.append(f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    return out
