import os

THREADS_ENV = "CHAOGUIDE_THREADS"


def thread_count(requested=None) -> int:
    """Worker count: explicit request, else ``CHAOGUIDE_THREADS``, else the CPU count."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get(THREADS_ENV, "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1
