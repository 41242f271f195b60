"""Recursive complete-intersection decision via two-part gluing splits.

A sequence is a complete intersection exactly when it can be written as
k1*B1 disjoint-union k2*B2 with gcd(k1, k2) = 1, k1 in <B2>, k2 in <B1>,
and both parts recursively complete intersections; sequences of length one
or two always qualify.  The decision procedure returns a certificate tree
that an independent verifier can re-check bottom-up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence, Union

from .semigroup import (
    Representation,
    divisors,
    find_representation,
    is_member,
)
from .seqcore import GeneratorSequence, format_sequence, normalize


@dataclass(frozen=True)
class DelormeSplit:
    """A bipartition of a generator sequence with its two scaling factors.

    Entries at left_indices equal k1 * left_reduced entrywise (same for the
    right side).  Validity means gcd(k1, k2) = 1 plus the two cross
    memberships k1 in <right_reduced> and k2 in <left_reduced>.
    """

    left_indices: tuple[int, ...]
    right_indices: tuple[int, ...]
    k1: int
    k2: int
    left_reduced: GeneratorSequence
    right_reduced: GeneratorSequence


@dataclass(frozen=True)
class Leaf:
    """A sequence of length one or two; always a complete intersection."""

    entries: tuple[int, ...]


@dataclass(frozen=True)
class SplitNode:
    split: DelormeSplit
    k1_witness: Representation
    k2_witness: Representation
    left_cert: "CICertificate"
    right_cert: "CICertificate"


CICertificate = Union[Leaf, SplitNode]


def _iter_bipartitions(m: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # left part encoded as a bitmask over indices 0..m-1, ascending
    for mask in range(1, (1 << m) - 1):
        left = tuple(i for i in range(m) if mask >> i & 1)
        right = tuple(i for i in range(m) if not mask >> i & 1)
        yield left, right


def _gcd_of(values: Sequence[int]) -> int:
    d = 0
    for v in values:
        d = gcd(d, v)
    return d


def _iter_splits(entries: tuple[int, ...]) -> Iterator[DelormeSplit]:
    """All valid splits in canonical order: left bitmask asc, k1 desc, k2 desc."""
    for left, right in _iter_bipartitions(len(entries)):
        left_vals = tuple(entries[i] for i in left)
        right_vals = tuple(entries[i] for i in right)
        gl = _gcd_of(left_vals)
        gr = _gcd_of(right_vals)
        for k1 in reversed(divisors(gl)):
            left_red = tuple(v // k1 for v in left_vals)
            for k2 in reversed(divisors(gr)):
                if gcd(k1, k2) != 1:
                    continue
                right_red = tuple(v // k2 for v in right_vals)
                if not is_member(k1, right_red):
                    continue
                if not is_member(k2, left_red):
                    continue
                yield DelormeSplit(
                    left, right, k1, k2,
                    GeneratorSequence(left_red), GeneratorSequence(right_red),
                )


def enumerate_splits(gens: GeneratorSequence) -> list[DelormeSplit]:
    """All valid splits of a sequence with at least three entries."""
    if len(gens) < 3:
        raise ValueError("splits are only enumerated for sequences of length >= 3")
    return list(_iter_splits(gens.gens))


# verdict cache keyed by the normalized entry tuple
_CI_MEMO: dict[tuple[int, ...], CICertificate | None] = {}


def is_complete_intersection(gens: GeneratorSequence) -> CICertificate | None:
    """Certificate if the sequence is a complete intersection, else None.

    The overall gcd is divided out first. Among all valid splits in
    canonical order, the first whose two reduced parts are recursively
    complete intersections becomes the certificate. Verdicts are memoized
    by the normalized sequence.
    """
    _, reduced = normalize(gens)
    return _decide(reduced.gens)


def _decide(entries: tuple[int, ...]) -> CICertificate | None:
    if entries in _CI_MEMO:
        return _CI_MEMO[entries]
    if len(entries) <= 2:
        cert: CICertificate | None = Leaf(entries)
        _CI_MEMO[entries] = cert
        return cert
    cert = None
    for split in _iter_splits(entries):
        _, lred = normalize(split.left_reduced)
        _, rred = normalize(split.right_reduced)
        left_cert = _decide(lred.gens)
        right_cert = _decide(rred.gens)
        if left_cert is None or right_cert is None:
            continue
        k1_witness = find_representation(split.k1, split.right_reduced)
        k2_witness = find_representation(split.k2, split.left_reduced)
        assert k1_witness is not None and k2_witness is not None
        cert = SplitNode(split, k1_witness, k2_witness, left_cert, right_cert)
        break
    _CI_MEMO[entries] = cert
    return cert


def verify_certificate(gens: GeneratorSequence, cert: CICertificate) -> bool:
    """Re-check every split, witness, and leaf bottom-up; False on any defect.

    Malformed trees never raise; they simply fail verification.
    """
    try:
        _, reduced = normalize(gens)
        return _verify(reduced.gens, cert)
    except Exception:
        return False


def _verify(entries: tuple[int, ...], cert: CICertificate) -> bool:
    if isinstance(cert, Leaf):
        return len(entries) <= 2 and cert.entries == entries
    if not isinstance(cert, SplitNode):
        return False
    split = cert.split
    m = len(entries)
    if sorted(split.left_indices + split.right_indices) != list(range(m)):
        return False
    if not split.left_indices or not split.right_indices:
        return False
    if split.k1 < 1 or split.k2 < 1 or gcd(split.k1, split.k2) != 1:
        return False
    left_vals = tuple(entries[i] for i in split.left_indices)
    right_vals = tuple(entries[i] for i in split.right_indices)
    if any(v % split.k1 for v in left_vals) or any(v % split.k2 for v in right_vals):
        return False
    if tuple(v // split.k1 for v in left_vals) != split.left_reduced.gens:
        return False
    if tuple(v // split.k2 for v in right_vals) != split.right_reduced.gens:
        return False
    w1, w2 = cert.k1_witness, cert.k2_witness
    if w1.gens != split.right_reduced.gens or w1.target != split.k1 or not w1.is_valid():
        return False
    if w2.gens != split.left_reduced.gens or w2.target != split.k2 or not w2.is_valid():
        return False
    _, lred = normalize(split.left_reduced)
    _, rred = normalize(split.right_reduced)
    return _verify(lred.gens, cert.left_cert) and _verify(rred.gens, cert.right_cert)


def format_certificate(cert: CICertificate) -> str:
    """Nested human-readable form, e.g. "31·(1) ⊔ 4·(7,9,12)[7·(1) ⊔ 3·(3,4)]"."""
    if isinstance(cert, Leaf):
        return f"({format_sequence(cert.entries)})"

    def side(k: int, reduced: GeneratorSequence, sub: CICertificate) -> str:
        text = f"{k}·({format_sequence(reduced.gens)})"
        if isinstance(sub, SplitNode):
            text += f"[{format_certificate(sub)}]"
        return text

    left = side(cert.split.k1, cert.split.left_reduced, cert.left_cert)
    right = side(cert.split.k2, cert.split.right_reduced, cert.right_cert)
    return f"{left} ⊔ {right}"


def certificate_to_dict(cert: CICertificate) -> dict:
    if isinstance(cert, Leaf):
        return {"type": "leaf", "entries": list(cert.entries)}
    split = cert.split
    return {
        "type": "split",
        "k1": split.k1,
        "k2": split.k2,
        "left_indices": list(split.left_indices),
        "right_indices": list(split.right_indices),
        "left_reduced": list(split.left_reduced.gens),
        "right_reduced": list(split.right_reduced.gens),
        "k1_witness": list(cert.k1_witness.coefficients),
        "k2_witness": list(cert.k2_witness.coefficients),
        "left": certificate_to_dict(cert.left_cert),
        "right": certificate_to_dict(cert.right_cert),
    }


def certificate_from_dict(data: dict) -> CICertificate:
    if data["type"] == "leaf":
        return Leaf(tuple(data["entries"]))
    if data["type"] != "split":
        raise ValueError(f"unknown certificate node type {data['type']!r}")
    left_red = GeneratorSequence(tuple(data["left_reduced"]))
    right_red = GeneratorSequence(tuple(data["right_reduced"]))
    split = DelormeSplit(
        tuple(data["left_indices"]),
        tuple(data["right_indices"]),
        data["k1"],
        data["k2"],
        left_red,
        right_red,
    )
    w1 = Representation(tuple(data["k1_witness"]), data["k1"], right_red.gens)
    w2 = Representation(tuple(data["k2_witness"]), data["k2"], left_red.gens)
    return SplitNode(
        split, w1, w2,
        certificate_from_dict(data["left"]),
        certificate_from_dict(data["right"]),
    )


def certificate_to_json(cert: CICertificate) -> str:
    return json.dumps(certificate_to_dict(cert), sort_keys=True)


def certificate_from_json(text: str) -> CICertificate:
    return certificate_from_dict(json.loads(text))
