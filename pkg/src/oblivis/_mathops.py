"""Big-integer kernels: modular exponentiation, inversion, primality.

gmpy2 (GMP) backs these when importable; otherwise a pure-Python path is
used. Setting OBLIVIS_PUREPY=1 forces the pure path even when gmpy2 is
present, so the two backends can be benchmarked against each other on the
same machine (the bench CLI records which backend ran).
"""

import os


def _sieve(limit):
    flags = bytearray([1]) * limit
    flags[0] = flags[1] = 0
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = _sieve(2048)


def _pure_powmod(base, exp, mod):
    return pow(base, exp, mod)


def _pure_invert(a, mod):
    return pow(a, -1, mod)


def _pure_is_prime(n, rounds=40):
    """Miller-Rabin with the first `rounds` primes as witnesses."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES[:rounds]:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_force_pure = os.environ.get("OBLIVIS_PUREPY", "") not in ("", "0")
_gmpy2 = None
if not _force_pure:
    try:
        import gmpy2 as _gmpy2
    except ImportError:
        _gmpy2 = None

if _gmpy2 is not None:
    BACKEND = "gmpy2"

    def powmod(base, exp, mod):
        return int(_gmpy2.powmod(base, exp, mod))

    def invert(a, mod):
        return int(_gmpy2.invert(a, mod))

    def is_prime(n, rounds=40):
        return bool(_gmpy2.is_prime(n, rounds))

else:
    BACKEND = "python"
    powmod = _pure_powmod
    invert = _pure_invert
    is_prime = _pure_is_prime
