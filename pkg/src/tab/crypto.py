"""Hashing, signatures, and account addresses.

SHA3-256 is the collision-resistant hash everywhere a digest appears.
Signing uses Ed25519: deterministic signatures, 32-byte public keys,
64-byte signatures, and key pairs derivable from a 32-byte seed so that
whole scenarios replay bit-exactly. The audit layer only relies on the
sign/verify contract, not on a particular curve.

An account address (EntityId) is the first 20 bytes of the hash of the
public key, zero-padded to 32 bytes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric import ed25519
from cryptography.hazmat.primitives.serialization import Encoding, PublicFormat

DIGEST_LEN = 32
ENTITY_ID_LEN = 32
PUBLIC_KEY_LEN = 32
SIGNATURE_LEN = 64
_ADDRESS_HASH_PREFIX = 20

ZERO_DIGEST = b"\x00" * DIGEST_LEN


def hash_data(data: bytes) -> bytes:
    """SHA3-256 digest (32 bytes)."""
    return hashlib.sha3_256(data).digest()


def address_of(public_key: bytes) -> bytes:
    """Account address: first 20 bytes of hash(pk), zero-padded to 32."""
    if len(public_key) != PUBLIC_KEY_LEN:
        raise ValueError(f"public key must be {PUBLIC_KEY_LEN} bytes")
    return hash_data(public_key)[:_ADDRESS_HASH_PREFIX] + b"\x00" * (ENTITY_ID_LEN - _ADDRESS_HASH_PREFIX)


@dataclass(frozen=True)
class KeyPair:
    """Ed25519 signing key pair with its derived account address."""

    public_key: bytes
    entity_id: bytes
    _private: ed25519.Ed25519PrivateKey = field(repr=False, compare=False)

    def sign(self, message: bytes) -> bytes:
        return self._private.sign(message)


def keygen(seed: bytes) -> KeyPair:
    """Deterministic key pair from a 32-byte seed."""
    if len(seed) != 32:
        raise ValueError("seed must be 32 bytes")
    private = ed25519.Ed25519PrivateKey.from_private_bytes(seed)
    public = private.public_key().public_bytes(Encoding.Raw, PublicFormat.Raw)
    return KeyPair(public_key=public, entity_id=address_of(public), _private=private)


def sign(keypair: KeyPair, message: bytes) -> bytes:
    return keypair.sign(message)


def verify(public_key: bytes, message: bytes, signature: bytes) -> bool:
    """True iff signature is valid for message under public_key.

    Malformed keys or signatures return False rather than raising.
    """
    if len(public_key) != PUBLIC_KEY_LEN or len(signature) != SIGNATURE_LEN:
        return False
    try:
        ed25519.Ed25519PublicKey.from_public_bytes(public_key).verify(signature, message)
    except (InvalidSignature, ValueError):
        return False
    return True
