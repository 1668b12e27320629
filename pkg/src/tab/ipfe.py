"""Inner-product functional encryption over a Schnorr group.

DDH-style single-input scheme:

    msk = (s_1, ..., s_n),  mpk = (h_i = g^{s_i})
    Enc(x):   ct0 = g^r,  ct_i = h_i^r * g^{x_i}
    KeyDer(y): sk_y = sum(s_i * y_i) mod q
    Dec:      prod(ct_i^{y_i}) / ct0^{sk_y} = g^{<x, y>}

The final discrete log is recovered with baby-step giant-step over the
known result range [-n*B^2, n*B^2], so plaintext and vector entries must
stay within the configured bound B.

Groups are the RFC 3526 MODP safe primes (p = 2q + 1) with generator
g = 4 of the prime-order-q subgroup. Secret scalars and encryption
randomness are drawn as 256-bit values (short-exponent form); all scheme
identities hold for any exponent size, this only bounds the cost of a
modular exponentiation.

Keys and ciphertexts have a documented length-prefixed byte encoding,
because the digest of an encoded key is what the audit layer records as
the proof that this exact key was served.
"""

from __future__ import annotations

from dataclasses import dataclass

from .encoding import enc_bigint, enc_bytes, enc_int_vector, enc_str, enc_u32
from .crypto import hash_data

try:  # pure-Python pow() works everywhere; gmpy2 is ~5x faster when present
    from gmpy2 import powmod as _powmod  # type: ignore

    def _pow(base: int, exp: int, mod: int) -> int:
        return int(_powmod(base, exp, mod))

except ImportError:  # pragma: no cover - exercised only without gmpy2
    _pow = pow


class FeError(Exception):
    pass


class BoundTooLarge(FeError):
    pass


class DimensionMismatch(FeError):
    pass


class EntryOutOfBound(FeError):
    pass


class DlogOutOfRange(FeError):
    pass


_RFC3526_2048 = int(
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF",
    16,
)

_RFC3526_3072 = int(
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AAAC42DAD33170D04507A33"
    "A85521ABDF1CBA64ECFB850458DBEF0A8AEA71575D060C7DB3970F85A6E1E4C7"
    "ABF5AE8CDB0933D71E8C94E04A25619DCEE3D2261AD2EE6BF12FFA06D98A0864"
    "D87602733EC86A64521F2B18177B200CBBE117577A615D6C770988C0BAD946E2"
    "08E24FA074E5AB3143DB5BFCE0FD108E4B82D120A93AD2CAFFFFFFFFFFFFFFFF",
    16,
)


@dataclass(frozen=True)
class SchnorrGroup:
    """Prime-order subgroup of Z_p^* with p = 2q + 1 and generator g."""

    name: str
    p: int
    q: int
    g: int

    @property
    def element_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8


GROUPS = {
    "rfc3526-2048": SchnorrGroup("rfc3526-2048", _RFC3526_2048, (_RFC3526_2048 - 1) // 2, 4),
    "rfc3526-3072": SchnorrGroup("rfc3526-3072", _RFC3526_3072, (_RFC3526_3072 - 1) // 2, 4),
}

DEFAULT_GROUP = "rfc3526-3072"

_EXPONENT_BYTES = 32
_MAX_DLOG_RANGE = 2**32


@dataclass(frozen=True)
class FeMpk:
    """Public half of the master keys: group plus per-slot elements."""

    group: SchnorrGroup
    n: int
    bound: int
    slots: tuple  # h_i = g^{s_i}


@dataclass(frozen=True)
class FeMasterKeys:
    mpk: FeMpk
    msk: tuple  # per-slot secret scalars

    @property
    def n(self) -> int:
        return self.mpk.n

    @property
    def bound(self) -> int:
        return self.mpk.bound


@dataclass(frozen=True)
class FeFunctionalKey:
    y: tuple
    sk_y: int


@dataclass(frozen=True)
class FeCiphertext:
    ct0: int
    slots: tuple


def _scalar_stream(seed: bytes, label: bytes, count: int):
    """Deterministic 256-bit scalars derived from a seed."""
    out = []
    for i in range(count):
        digest = hash_data(seed + label + enc_u32(i))
        out.append(max(1, int.from_bytes(digest, "big")))
    return out


def setup(n: int, bound: int, seed: bytes, group: str = DEFAULT_GROUP) -> FeMasterKeys:
    """Generate master keys for n slots with plaintext/vector bound B."""
    if n < 1:
        raise DimensionMismatch("slot count must be >= 1")
    if bound < 1:
        raise BoundTooLarge("bound must be >= 1")
    if n * bound * bound > _MAX_DLOG_RANGE:
        raise BoundTooLarge(f"n*B^2 = {n * bound * bound} exceeds dlog recovery limit {_MAX_DLOG_RANGE}")
    grp = GROUPS[group]
    msk = tuple(_scalar_stream(seed, b"fe-msk", n))
    slots = tuple(_pow(grp.g, s, grp.p) for s in msk)
    return FeMasterKeys(mpk=FeMpk(group=grp, n=n, bound=bound, slots=slots), msk=msk)


def _check_vector(vec, n: int, bound: int, what: str) -> tuple:
    vec = tuple(int(v) for v in vec)
    if len(vec) != n:
        raise DimensionMismatch(f"{what} has length {len(vec)}, expected {n}")
    for v in vec:
        if abs(v) > bound:
            raise EntryOutOfBound(f"{what} entry {v} outside [-{bound}, {bound}]")
    return vec


def derive_key(keys: FeMasterKeys, y) -> FeFunctionalKey:
    """Functional key for vector y; deterministic in (msk, y)."""
    y = _check_vector(y, keys.n, keys.bound, "functional vector")
    q = keys.mpk.group.q
    sk_y = sum(s * v for s, v in zip(keys.msk, y)) % q
    return FeFunctionalKey(y=y, sk_y=sk_y)


def encrypt(mpk: FeMpk, x, seed: bytes) -> FeCiphertext:
    x = _check_vector(x, mpk.n, mpk.bound, "plaintext vector")
    grp = mpk.group
    r = _scalar_stream(seed, b"fe-enc", 1)[0]
    ct0 = _pow(grp.g, r, grp.p)
    slots = tuple(
        (_pow(h, r, grp.p) * _pow(grp.g, xi % grp.q, grp.p)) % grp.p
        for h, xi in zip(mpk.slots, x)
    )
    return FeCiphertext(ct0=ct0, slots=slots)


def decrypt(key: FeFunctionalKey, ct: FeCiphertext, mpk: FeMpk) -> int:
    """Recover <x, y> exactly; raises DlogOutOfRange if outside +/- n*B^2."""
    if len(key.y) != mpk.n or len(ct.slots) != mpk.n:
        raise DimensionMismatch("key/ciphertext dimension does not match mpk")
    grp = mpk.group
    acc = 1
    for c, yi in zip(ct.slots, key.y):
        acc = (acc * _pow(c, yi % grp.q, grp.p)) % grp.p
    denom = _pow(ct.ct0, key.sk_y, grp.p)
    target = (acc * _pow(denom, grp.p - 2, grp.p)) % grp.p
    limit = mpk.n * mpk.bound * mpk.bound
    return _dlog_in_range(grp, target, -limit, limit)


_baby_tables: dict = {}


def _dlog_in_range(grp: SchnorrGroup, target: int, lo: int, hi: int) -> int:
    """Baby-step giant-step for g^e = target with e in [lo, hi]."""
    span = hi - lo
    # shift so the unknown exponent is in [0, span]
    shifted = (target * _pow(grp.g, (-lo) % grp.q, grp.p)) % grp.p
    m = int(span**0.5) + 1
    cache_key = (grp.p, grp.g, m)
    table = _baby_tables.get(cache_key)
    if table is None:
        table = {}
        cur = 1
        for j in range(m):
            table.setdefault(cur, j)
            cur = (cur * grp.g) % grp.p
        _baby_tables[cache_key] = table
    giant = _pow(grp.g, (-m) % grp.q, grp.p)
    cur = shifted
    for i in range(m + 1):
        j = table.get(cur)
        if j is not None and i * m + j <= span:
            return lo + i * m + j
        cur = (cur * giant) % grp.p
    raise DlogOutOfRange(f"no exponent in [{lo}, {hi}] matches")


# ---------------------------------------------------------------------------
# Canonical byte encodings (what obligation digests are computed over)
# ---------------------------------------------------------------------------

def encode_mpk(mpk: FeMpk) -> bytes:
    parts = [
        enc_str("fe-mpk"),
        enc_str(mpk.group.name),
        enc_u32(mpk.n),
        enc_u32(mpk.bound),
    ]
    width = mpk.group.element_bytes
    for h in mpk.slots:
        parts.append(enc_bytes(enc_bigint(h, width)))
    return b"".join(parts)


def decode_mpk(data: bytes) -> FeMpk:
    view = _Reader(data)
    if view.read_str() != "fe-mpk":
        raise FeError("not an mpk encoding")
    grp = GROUPS[view.read_str()]
    n = view.read_u32()
    bound = view.read_u32()
    slots = tuple(int.from_bytes(view.read_bytes(), "big") for _ in range(n))
    return FeMpk(group=grp, n=n, bound=bound, slots=slots)


def encode_functional_key(key: FeFunctionalKey, mpk: FeMpk) -> bytes:
    return b"".join(
        [
            enc_str("fe-key"),
            enc_str(mpk.group.name),
            enc_u32(mpk.n),
            enc_int_vector(key.y),
            enc_bytes(enc_bigint(key.sk_y, mpk.group.element_bytes)),
        ]
    )


def encode_owner_key(mpk: FeMpk, slot: int) -> bytes:
    """Per-owner encryption material: slot index bound to the master key.

    The owner encrypts into its assigned slot; the digest of these bytes
    is the on-ledger proof that slot material was served.
    """
    if not 0 <= slot < mpk.n:
        raise DimensionMismatch(f"slot {slot} out of range for n={mpk.n}")
    return b"".join(
        [
            enc_str("fe-owner-pk"),
            enc_u32(slot),
            enc_bytes(hash_data(encode_mpk(mpk))),
        ]
    )


def decode_owner_key(data: bytes) -> tuple:
    """Returns (slot, mpk_digest)."""
    view = _Reader(data)
    if view.read_str() != "fe-owner-pk":
        raise FeError("not owner key material")
    slot = view.read_u32()
    digest = view.read_bytes()
    return slot, digest


def decode_functional_key(data: bytes) -> FeFunctionalKey:
    view = _Reader(data)
    if view.read_str() != "fe-key":
        raise FeError("not a functional key encoding")
    view.read_str()  # group name, fixed by the mpk in use
    n = view.read_u32()
    count = view.read_u32()
    if count != n:
        raise FeError("corrupt functional key vector")
    y = tuple(view.read_i64() for _ in range(n))
    sk_y = int.from_bytes(view.read_bytes(), "big")
    return FeFunctionalKey(y=y, sk_y=sk_y)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise FeError("truncated encoding")
        chunk = self.data[self.pos : self.pos + k]
        self.pos += k
        return chunk

    def read_u32(self) -> int:
        return int.from_bytes(self._take(4), "big")

    def read_i64(self) -> int:
        return int.from_bytes(self._take(8), "big", signed=True)

    def read_bytes(self) -> bytes:
        return self._take(self.read_u32())

    def read_str(self) -> str:
        return self.read_bytes().decode("utf-8")
