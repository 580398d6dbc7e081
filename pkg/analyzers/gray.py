"""Exhaustive codeword enumeration in reflected q-ary Gray-code order.

The generator rows are split into a low part (the first ``b`` rows) and a high
part.  The q^b low codewords are precomputed once, already in Gray order; the
high part walks its own Gray code, so every high step costs one row update and
every low block is one vectorized pass over a precomputed array.  For q = 2
codewords are bit-packed and weights come from XOR plus popcount.

Message digits are field element indices; digit i multiplies generator row i.
Visit order is the reflected Gray code on K digits with row K-1 the most
significant digit.  Ties between minimum-weight codewords go to the one
visited first.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from config import GRAY_BLOCK_MESSAGES
from errors import BudgetExceeded
from geometry.field import FieldSpec, field_new

logger = logging.getLogger("ogc.gray")

# Entries of one precomputed low block (codewords x length) for q > 2.
BLOCK_ENTRY_CAP = 2 ** 22

try:
    _popcount = np.bitwise_count
except AttributeError:  # numpy < 2.0
    _POPCOUNT_LUT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)

    def _popcount(a: np.ndarray) -> np.ndarray:
        return _POPCOUNT_LUT[a]


@dataclass
class EnumerationResult:
    d: Optional[int]
    witness: Optional[List[int]]
    weights: Optional[Dict[int, int]] = None
    messages: int = 0
    complete: bool = True
    shards: int = 1

    def to_dict(self) -> Dict[str, object]:
        return {
            "d": self.d,
            "witness": self.witness,
            "weights": self.weights,
            "messages": self.messages,
            "complete": self.complete,
            "shards": self.shards,
        }


def gray_digits(index: int, length: int, q: int) -> List[int]:
    """Digits (row 0 first) of the index-th word of the reflected q-ary Gray code.

    Reading from the most significant digit down, an odd digit reflects the
    position within the remaining lower digits.
    """
    digits = [0] * length
    pos = index
    for i in range(length - 1, -1, -1):
        size = q ** i
        d = pos // size
        pos = pos % size
        if d % 2 == 1:
            pos = size - 1 - pos
        digits[i] = d
    return digits


def iter_gray(length: int, q: int, start: int = 0, stop: Optional[int] = None) -> Iterator[List[int]]:
    stop = q ** length if stop is None else stop
    for index in range(start, stop):
        yield gray_digits(index, length, q)


def low_block(F: FieldSpec, rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Codewords and messages of all q^b combinations of ``rows`` in Gray order.

    The ordering is built by reflection: appending row j as the new most
    significant digit concatenates, for d = 0..q-1, the block d*row_j + T
    (T reversed for odd d).
    """
    b, N = rows.shape
    words = np.zeros((1, N), dtype=np.int64)
    for j in range(b):
        parts = []
        for d in range(F.q):
            inner = words if d % 2 == 0 else words[::-1]
            parts.append(F.add(inner, F.mul(d, rows[j])[None, :]))
        words = np.concatenate(parts)
    return words, low_messages(F.q, b)


def packed_low_block(rows: np.ndarray) -> np.ndarray:
    """Binary low block, bit-packed row-wise; same order as :func:`low_block`."""
    packed = np.packbits(rows.astype(np.uint8), axis=1)
    words = np.zeros((1, packed.shape[1]), dtype=np.uint8)
    for j in range(rows.shape[0]):
        words = np.concatenate([words, np.bitwise_xor(words[::-1], packed[j])])
    return words


def low_messages(q: int, b: int) -> np.ndarray:
    """Messages of the low block in visit order (digit j in column j)."""
    msgs = np.zeros((1, 0), dtype=np.int64)
    for _ in range(b):
        mparts = []
        for d in range(q):
            inner = msgs if d % 2 == 0 else msgs[::-1]
            mparts.append(np.concatenate([inner, np.full((inner.shape[0], 1), d, dtype=np.int64)], axis=1))
        msgs = np.concatenate(mparts)
    return msgs


def choose_low_rows(q: int, K: int, N: int) -> int:
    b = 0
    while (b < K and q ** (b + 1) <= GRAY_BLOCK_MESSAGES
           and (q == 2 or q ** (b + 1) * N <= BLOCK_ENTRY_CAP)):
        b += 1
    return b


def _weights(F: FieldSpec, block: np.ndarray, high: np.ndarray) -> np.ndarray:
    if F.q == 2:
        return _popcount(np.bitwise_xor(block, high)).sum(axis=1, dtype=np.int64)
    if F.e == 1:
        return ((block + high) % F.p != 0).sum(axis=1, dtype=np.int64)
    return (F.add(block, high) != 0).sum(axis=1, dtype=np.int64)


def _scan_range(p: int, e: int, G: np.ndarray, b: int, g_start: int, g_stop: int,
                want_weights: bool) -> Tuple[int, int, Optional[List[int]], Optional[np.ndarray]]:
    """Scan high indices [g_start, g_stop).  Returns (best weight, global index, message, histogram)."""
    F = field_new(p, e)
    K, N = G.shape
    h = K - b
    high_rows = G[b:]
    if F.q == 2:
        block = packed_low_block(G[:b])
        msgs = low_messages(2, b)
        packed_high_rows = np.packbits(high_rows.astype(np.uint8), axis=1)
    else:
        words, msgs = low_block(F, G[:b])
        block = words.astype(np.int32) if F.e == 1 else words
    block_size = block.shape[0]

    digits = gray_digits(g_start, h, F.q)
    H = np.zeros(N, dtype=np.int64)
    for i, d in enumerate(digits):
        if d:
            H = F.add(H, F.mul(d, high_rows[i]))
    if F.q == 2:
        Hc = np.packbits(H.astype(np.uint8))
    else:
        Hc = H.astype(block.dtype)

    best = N + 1
    best_index = -1
    best_msg = None
    hist = np.zeros(N + 1, dtype=np.int64) if want_weights else None

    for g in range(g_start, g_stop):
        if g > g_start:
            new = gray_digits(g, h, F.q)
            i = next(t for t in range(h) if new[t] != digits[t])
            if F.q == 2:
                Hc = np.bitwise_xor(Hc, packed_high_rows[i])
            else:
                H = F.add(H, F.mul(F.sub(new[i], digits[i]), high_rows[i]))
                Hc = H.astype(block.dtype)
            digits = new
        w = _weights(F, block, Hc[None, :])
        reflected = sum(digits) % 2 == 1
        visit = w[::-1] if reflected else w
        if hist is not None:
            hist += np.bincount(w, minlength=N + 1)
        if g == 0:
            visit = visit.copy()
            visit[0] = N + 1
        pos = int(np.argmin(visit))
        if visit[pos] < best:
            best = int(visit[pos])
            best_index = g * block_size + pos
            low = msgs[block_size - 1 - pos] if reflected else msgs[pos]
            best_msg = [int(x) for x in low] + list(digits)
    return best, best_index, best_msg, hist


def enumerate_codewords(F: FieldSpec, G: np.ndarray, want_weights: bool = False,
                        budget: Optional[int] = None, threads: int = 1,
                        high_limit: Optional[int] = None) -> EnumerationResult:
    """Minimum nonzero weight (and optionally the weight distribution) of the row space of G.

    ``high_limit`` stops after that many high blocks; the result is then a
    prefix scan (``complete`` False) and ``d`` is only an upper bound.
    """
    G = np.asarray(G, dtype=np.int64)
    K, N = G.shape
    total = F.q ** K
    if budget is not None and high_limit is None and total - 1 > budget:
        raise BudgetExceeded("codewords of a [{}, {}]_{} code".format(N, K, F.q), total - 1, budget)
    b = choose_low_rows(F.q, K, N)
    h = K - b
    high_total = F.q ** h
    stop = high_total if high_limit is None else min(high_limit, high_total)

    shards = max(1, min(threads, stop))
    bounds = [stop * s // shards for s in range(shards + 1)]
    logger.debug("gray scan: K=%d N=%d q=%d low rows=%d high blocks=%d shards=%d",
                 K, N, F.q, b, stop, shards)

    if shards == 1:
        parts = [_scan_range(F.p, F.e, G, b, 0, stop, want_weights)]
    else:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            futures = [pool.submit(_scan_range, F.p, F.e, G, b, bounds[s], bounds[s + 1], want_weights)
                       for s in range(shards)]
            parts = [f.result() for f in futures]

    best = min(parts, key=lambda part: (part[0], part[1]))
    d = best[0] if best[1] >= 0 else None
    weights = None
    if want_weights:
        hist = sum(part[3] for part in parts)
        weights = {int(w): int(c) for w, c in enumerate(hist) if c}
    return EnumerationResult(
        d=d, witness=best[2], weights=weights,
        messages=stop * F.q ** b, complete=stop == high_total, shards=shards,
    )


def encode(F: FieldSpec, G: np.ndarray, message) -> np.ndarray:
    return F.matmul(np.asarray(message, dtype=np.int64)[None, :], G)[0]


def gray_walk(F: FieldSpec, G: np.ndarray, limit: Optional[int] = None) -> Iterator[Tuple[List[int], np.ndarray]]:
    """(message, codeword) pairs in visit order, one row update per step.

    Reference walk for instrumentation; the engine above produces the same
    order blockwise.
    """
    K, N = G.shape
    stop = F.q ** K if limit is None else min(limit, F.q ** K)
    word = np.zeros(N, dtype=np.int64)
    prev = [0] * K
    for index in range(stop):
        digits = gray_digits(index, K, F.q)
        if index:
            i = next(t for t in range(K) if digits[t] != prev[t])
            word = F.add(word, F.mul(F.sub(digits[i], prev[i]), G[i]))
        prev = digits
        yield digits, word
