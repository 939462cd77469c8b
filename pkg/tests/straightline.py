"""Independent straight-line oracle.

Recomputes protocol transcripts directly from the published formulas with
raw pow() and hashlib — no imports from the package under test — so the
implementation and this oracle can only agree by both being right.
"""

import hashlib


def oracle_H(data, sigma):
    return hashlib.shake_256(b"\x48" + data).digest(sigma // 8)


def oracle_G(data, sigma, lam):
    return hashlib.shake_256(b"\x47" + data).digest((sigma + lam) // 8)


def oracle_pad(message, sigma):
    body = len(message).to_bytes(4, "big") + message
    return body + b"\x00" * (sigma // 8 - len(body))


def oracle_unpad(block):
    length = int.from_bytes(block[:4], "big")
    return block[4 : 4 + length]


def fixed(x, p):
    return x.to_bytes((p.bit_length() + 7) // 8, "big")


def xor(a, b):
    return bytes(x ^ y for x, y in zip(a, b))


def two_message_response(p, g, sigma, beta0, beta1, y0, y1, m0, m1):
    """Sender-side pair: e_i = (g^{y_i}, H(beta_i^{y_i}) xor m_i)."""
    e0 = (pow(g, y0, p), xor(oracle_H(fixed(pow(beta0, y0, p), p), sigma), oracle_pad(m0, sigma)))
    e1 = (pow(g, y1, p), xor(oracle_H(fixed(pow(beta1, y1, p), p), sigma), oracle_pad(m1, sigma)))
    return e0, e1


def tagged_response(p, g, sigma, lam, beta0, beta1, y0, y1, m0, m1, r3, swapped):
    e0 = (
        pow(g, y0, p),
        xor(oracle_G(fixed(pow(beta0, y0, p), p), sigma, lam), oracle_pad(m0, sigma) + r3),
    )
    e1 = (
        pow(g, y1, p),
        xor(oracle_G(fixed(pow(beta1, y1, p), p), sigma, lam), oracle_pad(m1, sigma) + r3),
    )
    return (e1, e0) if swapped else (e0, e1)


# Symbolic exponents of (delta0, delta1, beta0, beta1) per share combination,
# with C = g^a; all arithmetic mod q.
DELEGATED_QUERY_TABLE = {
    (0, 0): lambda a, r1, r2: (r2, a - r2, r2 + r1, a - r2 - r1),
    (0, 1): lambda a, r1, r2: (a - r2, r2, a - r2 + r1, r2 - r1),
    (1, 0): lambda a, r1, r2: (r2, a - r2, a - r2 - r1, r2 + r1),
    (1, 1): lambda a, r1, r2: (a - r2, r2, r2 - r1, a - r2 + r1),
}


def delegated_queries(p, q, g, a, r1, r2, s1, s2):
    """(delta0, delta1, beta0, beta1) evaluated from the symbolic table."""
    exps = DELEGATED_QUERY_TABLE[(s1, s2)](a, r1, r2)
    return tuple(pow(g, e % q, p) for e in exps)


def retrieval_exponent(r1, r2, s2, q):
    return (r2 - r1) % q if s2 else (r2 + r1) % q


# Pad-and-swap correctness table: (s1, s2) -> s = s1 xor s2; the element the
# proxy forwards is always the pad encryption of m_s.
SWAP_PARITY_ROWS = [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


def pad_and_swap_forwarded(m0, m1, k0, k1, sigma, s1, s2):
    c0 = xor(oracle_pad(m0, sigma), k0)
    c1 = xor(oracle_pad(m1, sigma), k1)
    pair = (c1, c0) if s1 else (c0, c1)
    pair = (pair[1], pair[0]) if s2 else pair
    return pair[0]
