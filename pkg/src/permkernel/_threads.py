"""Worker-count control via the PERMKERNEL_THREADS environment variable."""

import os


def worker_count() -> int:
    """Cap on parallel workers. PERMKERNEL_THREADS=0 or unset means auto."""
    raw = os.environ.get("PERMKERNEL_THREADS", "0")
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        return min(os.cpu_count() or 1, 8)
    return value
