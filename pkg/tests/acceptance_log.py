"""Shared registry for per-criterion acceptance outcomes."""

RESULTS = []


def record(name, ok, note=""):
    RESULTS.append((name, bool(ok), note))
    assert ok, f"{name}: {note}"
