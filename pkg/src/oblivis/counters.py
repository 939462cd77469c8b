"""Operation counters backing the efficiency checks.

The delegated variants promise a receiver-side request phase with zero
group exponentiations, and the pad-based transfer promises zero public-key
operations end to end; these counters make both claims measurable. Counting
is process-global and not thread-safe; the instrumented assertions run on
the sequential scheduler.
"""


class OpCounters:
    __slots__ = ("group_exp", "group_mul", "ahe_op")

    def __init__(self):
        self.group_exp = 0
        self.group_mul = 0
        self.ahe_op = 0

    def reset(self):
        self.group_exp = 0
        self.group_mul = 0
        self.ahe_op = 0

    @property
    def pubkey_ops(self):
        return self.group_exp + self.ahe_op


COUNTERS = OpCounters()


class track:
    """Context manager exposing counter deltas for the enclosed block."""

    def __enter__(self):
        self._start = (COUNTERS.group_exp, COUNTERS.group_mul, COUNTERS.ahe_op)
        return self

    def __exit__(self, *exc):
        self.group_exp = COUNTERS.group_exp - self._start[0]
        self.group_mul = COUNTERS.group_mul - self._start[1]
        self.ahe_op = COUNTERS.ahe_op - self._start[2]
        self.pubkey_ops = self.group_exp + self.ahe_op
        return False
