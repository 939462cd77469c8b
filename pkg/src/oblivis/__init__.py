"""Oblivis: delegated oblivious-transfer protocols, a pad-and-swap OT, a
constant-size-response compiler, and a multi-party simulation harness."""

from . import ahe, bench, compiler, dq, duq, multireceiver, naor_pinkas, supersonic
from ._mathops import BACKEND
from .counters import COUNTERS, track
from .errors import (
    AbortError,
    CapacityError,
    GroupError,
    KeyMismatchError,
    OblivisError,
    PaddingError,
    ParameterError,
    RetrievalError,
    SessionError,
)
from .harness import (
    Kind,
    PartyEnvelope,
    Role,
    RoutingLog,
    SessionResult,
    assert_sender_push,
    bytes_to_role,
    run_session,
    strawman_fixture,
)
from .primitives import (
    PRODUCTION_PROFILE,
    TEST_PROFILE,
    GroupParams,
    SessionConfig,
    gen_group,
    profile,
    standard_group,
)
from .rng import Rng

__version__ = "0.1.0"
