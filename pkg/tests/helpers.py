from dlogdist import build_ctx, build_table

ACCEPTANCE_LINES = []
_FIELDS = {}


def record_criterion(number, name, passed, detail=""):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {name}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def field(p, g=None):
    """Cached (ctx, table) pair."""
    key = (p, g)
    if key not in _FIELDS:
        ctx = build_ctx(p, g)
        _FIELDS[key] = (ctx, build_table(ctx))
    return _FIELDS[key]
