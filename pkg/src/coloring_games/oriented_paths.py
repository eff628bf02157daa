"""Fast Grundy tables for the Blue-Red arc game on directed paths.

An uncolored directed path is class D; painting its ends gives the other
classes (A: first vertex Blue, B: last vertex Red, C: both). Painting v_i
Blue makes v_{i-1} permanently unpaintable and leaves an A-type tail from
v_i on; painting v_i Red kills v_{i+1} the same way. The classes therefore
satisfy Mex recursions over split pairs, with lengths counted in vertices
and any length <= 0 standing for the empty path (value 0). B mirrors A
(reverse the path and swap colors), so only A, C, D are stored.

Observed values split into "rare" ones, members of a small XOR-closed set,
and "common" ones that in practice all fall in a single coset of that set.
The accelerated mode exploits this: option pairs with a rare side are
enumerated exactly (rare indices are few), and common XOR common lands back
in the rare set, so each Mex scan only has to witness a handful of small
rare candidates before terminating. Whenever a computed value ever breaks
the one-coset observation, the fill degrades to the naive scan from that
point, keeping the output bit-identical to naive mode by construction.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from typing import BinaryIO, TextIO

import numpy as np

from .games import MemoryBudgetExceeded, Move, Position, byte_budget
from .graphs import build_family
from .rulesets import BLUE, RED, OrientedBlueRed

CLASS_A = "A"
CLASS_B = "B"
CLASS_C = "C"
CLASS_D = "D"
PATH_CLASSES = (CLASS_A, CLASS_B, CLASS_C, CLASS_D)

MODE_NAIVE = "naive"
MODE_ACCELERATED = "accelerated"

RARE_GENERATORS = (0, 1, 2, 3, 4, 5, 6, 7, 24, 40, 64, 136, 264, 520, 1032)


class TableFormatError(ValueError):
    """Table file is malformed or truncated."""


class TableVersionError(TableFormatError):
    """Table file was written by an unsupported format version."""


class TableChecksumError(TableFormatError):
    """Table file content does not match its checksum."""


def rare_set() -> frozenset[int]:
    """XOR-closure of RARE_GENERATORS (1024 members)."""
    span = {0}
    for gen in RARE_GENERATORS:
        span |= {gen ^ x for x in span}
    return frozenset(span)


_RARE = rare_set()


def is_rare(value: int) -> bool:
    return value in _RARE


# ---- table ------------------------------------------------------------------

@dataclass(frozen=True)
class GrundyTable:
    """Class values for lengths 0..K; index 0 is the empty path.

    gB is not stored (gB[k] == gA[k] by the mirror symmetry); gC[1] is a
    0 sentinel for the unrealizable one-vertex C class and is never read.
    """

    K: int
    gA: np.ndarray
    gC: np.ndarray
    gD: np.ndarray
    mode: str = MODE_NAIVE

    def __post_init__(self) -> None:
        for arr in (self.gA, self.gC, self.gD):
            if arr.dtype != np.uint16 or arr.shape != (self.K + 1,):
                raise ValueError("table arrays must be uint16 of length K+1")

    def value(self, klass: str, length: int) -> int:
        """Grundy value of a class position; lengths <= 0 are the empty path."""
        if klass not in PATH_CLASSES:
            raise ValueError(f"unknown path class {klass!r}")
        if length <= 0:
            return 0
        if length > self.K:
            raise IndexError(f"length {length} beyond computed bound {self.K}")
        if klass == CLASS_C and length == 1:
            raise ValueError("a one-vertex path cannot be class C")
        arr = {CLASS_A: self.gA, CLASS_B: self.gA, CLASS_C: self.gC, CLASS_D: self.gD}
        return int(arr[klass][length])


def build_class_position(klass: str, k: int) -> Position:
    """The colored directed path a class stands for, as an engine position."""
    if klass not in PATH_CLASSES:
        raise ValueError(f"unknown path class {klass!r}")
    if k < 1 or (klass == CLASS_C and k < 2):
        raise ValueError(f"class {klass} needs a longer path than k={k}")
    coloring: list[int | None] = [None] * k
    if klass in (CLASS_A, CLASS_C):
        coloring[0] = BLUE
    if klass in (CLASS_B, CLASS_C):
        coloring[-1] = RED
    graph = build_family("directed_path", k)
    return Position.start(graph, 2, OrientedBlueRed(), coloring=coloring)


def class_move_options(
    klass: str, k: int
) -> list[tuple[Move, tuple[tuple[str, int], ...]]]:
    """Legal moves in a class-k path with the class split each one leaves.

    Derived from the move semantics (Blue kills the in-neighbor, Red the
    out-neighbor), not from the table recursion, so it can cross-check it.
    Vertices in the returned moves are 0-based; parts with length <= 0 are
    omitted.
    """
    if klass not in PATH_CLASSES:
        raise ValueError(f"unknown path class {klass!r}")
    first_blue = klass in (CLASS_A, CLASS_C)
    last_red = klass in (CLASS_B, CLASS_C)
    out: list[tuple[Move, tuple[tuple[str, int], ...]]] = []

    def parts(*ps: tuple[str, int]) -> tuple[tuple[str, int], ...]:
        return tuple(p for p in ps if p[1] > 0)

    for i in range(1, k + 1):  # 1-based vertex positions
        painted = (i == 1 and first_blue) or (i == k and last_red)
        if painted:
            continue
        # Blue on v_i: the in-neighbor must be unpainted, the out-neighbor
        # unpainted or Red
        if i == 1 or not (i - 1 == 1 and first_blue):
            left = ("A" if first_blue else "D", i - 2)
            right = ("C" if last_red else "A", k - i + 1)
            out.append((Move(i - 1, BLUE), parts(left, right)))
        # Red on v_i: the out-neighbor must be unpainted, the in-neighbor
        # unpainted or Blue
        if i == k or not (i + 1 == k and last_red):
            left = ("C" if first_blue else "B", i)
            right = ("B" if last_red else "D", k - i - 1)
            out.append((Move(i - 1, RED), parts(left, right)))
    return out


# ---- fill: naive (vectorized) --------------------------------------------------

def _np_mex(opts: np.ndarray) -> int:
    if opts.size == 0:
        return 0
    bound = int(min(opts.size + 1, 1 << 16))
    seen = np.zeros(bound + 1, dtype=bool)
    seen[np.minimum(opts, bound)] = True
    first = int(np.argmin(seen[:bound]))
    if seen[first]:
        raise OverflowError("Grundy value does not fit in 16 bits")
    return first


def _fill_naive(gA: np.ndarray, gC: np.ndarray, gD: np.ndarray, start: int, K: int) -> None:
    for k in range(start, K + 1):
        # C_k: Blue splits A_{i-2} + C_{k+1-i}; Red splits C_i + A_{k-i-1}
        i1 = np.arange(3, k, dtype=np.intp)
        i2 = np.arange(2, k - 1, dtype=np.intp)
        gC[k] = _np_mex(
            np.concatenate((gA[i1 - 2] ^ gC[k + 1 - i1], gC[i2] ^ gA[k - i2 - 1]))
        )
        # A_k: Blue splits A_{i-2} + A_{k+1-i}; Red splits C_i + D_{k-i-1}
        i1 = np.arange(3, k + 1, dtype=np.intp)
        i2 = np.arange(2, k + 1, dtype=np.intp)
        gA[k] = _np_mex(
            np.concatenate(
                (gA[i1 - 2] ^ gA[k + 1 - i1], gC[i2] ^ gD[np.maximum(k - i2 - 1, 0)])
            )
        )
        # D_k: Blue splits D_{i-2} + A_{k+1-i}; Red splits A_i + D_{k-i-1}
        i1 = np.arange(1, k + 1, dtype=np.intp)
        gD[k] = _np_mex(
            np.concatenate(
                (
                    gD[np.maximum(i1 - 2, 0)] ^ gA[k + 1 - i1],
                    gA[i1] ^ gD[np.maximum(k - i1 - 1, 0)],
                )
            )
        )


# ---- fill: accelerated ------------------------------------------------------------

# An option set is described as (left, right, lo, hi, shape): shape 1 is the
# Blue-move family {L[max(i-2,0)] ^ R[k+1-i]}, shape 2 the Red-move family
# {L[i] ^ R[max(k-i-1,0)]}, both over lo <= i <= hi.

def _class_sets(k: int) -> dict[str, list[tuple[str, str, int, int, int]]]:
    return {
        "C": [("A", "C", 3, k - 1, 1), ("C", "A", 2, k - 2, 2)],
        "A": [("A", "A", 3, k, 1), ("C", "D", 2, k, 2)],
        "D": [("D", "A", 1, k, 1), ("A", "D", 1, k, 2)],
    }


_SMALL = 4096  # mex candidates live far below this (observed max value 1401)


class _AccelFill:
    """Sparse-space Mex evaluation over the rare/common partition.

    Options with a rare side are enumerated exactly by inverting the index
    maps over the (few) rare positions. While every common value seen so far
    lies in a single coset x0 ^ RareSet, a common ^ common option is always
    rare, so the smallest common value outside the sparse set is a sound Mex
    upper bound; the only work left is witnessing smaller rare candidates
    among the dense pairs. If the coset observation ever breaks, the fill
    degrades to full scans, keeping the output bit-identical to naive mode.
    """

    def __init__(self, gA: np.ndarray, gC: np.ndarray, gD: np.ndarray, K: int) -> None:
        self.arr = {"A": gA, "C": gC, "D": gD}
        self.K = K
        self.rare_flag = {n: np.zeros(K + 1, dtype=bool) for n in "ACD"}
        self.rare_idx = {n: np.empty(K + 1, dtype=np.intp) for n in "ACD"}
        self.n_rare = {n: 0 for n in "ACD"}
        self.x0: int | None = None
        self.coset_ok = True
        self.rare_small = np.fromiter(
            (v in _RARE for v in range(_SMALL)), dtype=bool, count=_SMALL
        )

    def note(self, name: str, k: int) -> None:
        """Record arr[name][k] in the rare index and coset bookkeeping."""
        v = int(self.arr[name][k])
        if v in _RARE:
            self.rare_flag[name][k] = True
            self.rare_idx[name][self.n_rare[name]] = k
            self.n_rare[name] += 1
        elif self.coset_ok:
            if self.x0 is None:
                self.x0 = v
            elif (v ^ self.x0) not in _RARE:
                self.coset_ok = False

    def _rare_slice(self, name: str, a: int, b: int) -> np.ndarray:
        ri = self.rare_idx[name][: self.n_rare[name]]
        lo = int(np.searchsorted(ri, a, side="left"))
        hi = int(np.searchsorted(ri, b, side="right"))
        return ri[lo:hi]

    def _sparse_parts(
        self, k: int, sets: list[tuple[str, str, int, int, int]]
    ) -> list[np.ndarray]:
        parts: list[np.ndarray] = []
        for left, right, lo, hi, shape in sets:
            L, R = self.arr[left], self.arr[right]
            if shape == 1:
                if hi - 2 >= max(lo - 2, 1):
                    s = self._rare_slice(left, max(lo - 2, 1), hi - 2)  # i = r + 2
                    if s.size:
                        parts.append(L[s] ^ R[(k - 1) - s])
                for i in (1, 2):  # rare index 0 on the left maps to both
                    if lo <= i <= hi:
                        parts.append(R[k + 1 - i : k + 2 - i])
                if k + 1 - lo >= k + 1 - hi:
                    s = self._rare_slice(right, k + 1 - hi, k + 1 - lo)  # i = k+1-r
                    if s.size:
                        parts.append(L[np.maximum((k - 1) - s, 0)] ^ R[s])
            else:
                s = self._rare_slice(left, lo, hi)  # i = r
                if s.size:
                    parts.append(L[s] ^ R[np.maximum((k - 1) - s, 0)])
                if k - 1 - lo >= max(k - 1 - hi, 1):
                    s = self._rare_slice(right, max(k - 1 - hi, 1), k - 1 - lo)  # i = k-1-r
                    if s.size:
                        parts.append(L[(k - 1) - s] ^ R[s])
                for i in (k - 1, k):  # rare index 0 on the right maps to both
                    if lo <= i <= hi:
                        parts.append(L[i : i + 1])
        return parts

    def _witness(
        self, k: int, sets: list[tuple[str, str, int, int, int]], wanted: np.ndarray
    ) -> set[int]:
        """Drop from wanted every value some common-common pair produces."""
        alive = {int(w) for w in wanted}
        for left, right, lo, hi, shape in sets:
            if not alive or hi < lo:
                continue
            i = np.arange(lo, hi + 1, dtype=np.intp)
            if shape == 1:
                li, ri = np.maximum(i - 2, 0), (k + 1) - i
            else:
                li, ri = i, np.maximum((k - 1) - i, 0)
            dense = ~(self.rare_flag[left][li] | self.rare_flag[right][ri])
            if not dense.any():
                continue
            vals = self.arr[left][li[dense]] ^ self.arr[right][ri[dense]]
            alive -= set(np.unique(vals).tolist())
        return alive

    def entry_dense(self, k: int, sets: list[tuple[str, str, int, int, int]]) -> int:
        """Full scan over the same option descriptors; the degraded path."""
        parts: list[np.ndarray] = []
        for left, right, lo, hi, shape in sets:
            if hi < lo:
                continue
            i = np.arange(lo, hi + 1, dtype=np.intp)
            if shape == 1:
                li, ri = np.maximum(i - 2, 0), (k + 1) - i
            else:
                li, ri = i, np.maximum((k - 1) - i, 0)
            parts.append(self.arr[left][li] ^ self.arr[right][ri])
        return _np_mex(np.concatenate(parts) if parts else np.empty(0, np.uint16))

    def entry(self, k: int, sets: list[tuple[str, str, int, int, int]]) -> int:
        seen = np.zeros(_SMALL, dtype=bool)
        for vals in self._sparse_parts(k, sets):
            seen[vals[vals < _SMALL]] = True
        candidates = ~seen & ~self.rare_small
        m_c = int(candidates.argmax())
        if not candidates[m_c]:  # mex bookkeeping window overflowed
            return self.entry_dense(k, sets)
        wanted = np.flatnonzero(~seen[:m_c] & self.rare_small[:m_c])
        if wanted.size:
            alive = self._witness(k, sets, wanted)
            if alive:
                return min(alive)
        return m_c


def _fill_accelerated(gA: np.ndarray, gC: np.ndarray, gD: np.ndarray, start: int, K: int) -> None:
    state = _AccelFill(gA, gC, gD, K)
    for k in range(start):
        for name in ("C", "A", "D"):
            state.note(name, k)
    for k in range(start, K + 1):
        sets = _class_sets(k)
        for name in ("C", "A", "D"):  # A reads C_k, D reads A_k
            v = state.entry(k, sets[name]) if state.coset_ok else state.entry_dense(k, sets[name])
            state.arr[name][k] = v
            state.note(name, k)


# ---- fill dispatch -------------------------------------------------------------

def _check_budget(K: int) -> None:
    need = 6 * (K + 1)  # three uint16 arrays
    if need > byte_budget():
        raise MemoryBudgetExceeded(
            f"tables to K={K} need about {need} bytes, over the configured budget"
        )


def compute_tables(K: int, mode: str = MODE_NAIVE) -> GrundyTable:
    """Fill gA/gC/gD for all lengths <= K. Modes are bit-identical."""
    if K < 1:
        raise ValueError("K must be >= 1")
    return _compute(None, K, mode)


def extend_table(table: GrundyTable, K: int, mode: str = MODE_NAIVE) -> GrundyTable:
    """Continue a computed table to a larger bound; existing entries are kept."""
    if K <= table.K:
        return table
    return _compute(table, K, mode)


def _compute(base: GrundyTable | None, K: int, mode: str) -> GrundyTable:
    if mode not in (MODE_NAIVE, MODE_ACCELERATED):
        raise ValueError(f"unknown mode {mode!r}")
    _check_budget(K)
    start = (base.K if base else 0) + 1
    gA = np.zeros(K + 1, dtype=np.uint16)
    gC = np.zeros(K + 1, dtype=np.uint16)
    gD = np.zeros(K + 1, dtype=np.uint16)
    if base is not None:
        gA[: base.K + 1] = base.gA
        gC[: base.K + 1] = base.gC
        gD[: base.K + 1] = base.gD
    fill = _fill_naive if mode == MODE_NAIVE else _fill_accelerated
    fill(gA, gC, gD, start, K)
    return GrundyTable(K=K, gA=gA, gC=gC, gD=gD, mode=mode)


# ---- enumeration and classification reports ---------------------------------------

def enumerate_p_positions(table: GrundyTable, klass: str) -> list[int]:
    """All lengths 1 <= k <= K whose class value is 0."""
    if klass not in PATH_CLASSES:
        raise ValueError(f"unknown path class {klass!r}")
    lo = 2 if klass == CLASS_C else 1
    return [k for k in range(lo, table.K + 1) if table.value(klass, k) == 0]


@dataclass(frozen=True)
class RareCommonReport:
    """Which Grundy values occur, how often, and where rare ones last appear."""

    K: int
    value_counts: dict[int, int]
    rare_values: tuple[int, ...]
    common_values: tuple[int, ...]
    largest_rare_index: dict[str, int]  # per class; 0 when no rare value occurs
    max_value: int

    @property
    def max_rare_index(self) -> int:
        return max(self.largest_rare_index.values())


def classify_rare_common(table: GrundyTable) -> RareCommonReport:
    counts: dict[int, int] = {}
    largest: dict[str, int] = {}
    for name, arr, lo in ((CLASS_A, table.gA, 1), (CLASS_C, table.gC, 2), (CLASS_D, table.gD, 1)):
        vals = arr[lo:]
        for v, n in zip(*np.unique(vals, return_counts=True)):
            counts[int(v)] = counts.get(int(v), 0) + int(n)
        rare_mask = np.fromiter((int(v) in _RARE for v in vals), bool, count=vals.size)
        largest[name] = int(np.nonzero(rare_mask)[0].max() + lo) if rare_mask.any() else 0
    rare = tuple(sorted(v for v in counts if v in _RARE))
    common = tuple(sorted(v for v in counts if v not in _RARE))
    return RareCommonReport(
        K=table.K,
        value_counts=dict(sorted(counts.items())),
        rare_values=rare,
        common_values=common,
        largest_rare_index=largest,
        max_value=max(counts),
    )


# ---- prescribed winning moves for A and B ------------------------------------------

def winning_move_AB(k: int, klass: str) -> Move:
    """The prescribed first-player winning move in A_k or B_k, k > 3.

    For A and odd k, Blue on v_{(k+3)/2} splits into two equal A parts. For
    even k the zero option is C_{k/2+1} + D_{k/2-2} (equal by the C/D offset
    identity), reached by painting v_{k/2+1} Red: Red is what ends the left
    part with a Red vertex and kills v_{k/2+2}. B mirrors A with the path
    reversed and colors swapped. Vertices are returned 0-based.
    """
    if klass not in (CLASS_A, CLASS_B):
        raise ValueError("prescribed moves exist for classes A and B only")
    if k <= 3:
        raise ValueError("prescribed winning moves need k > 3")
    if klass == CLASS_A:
        if k % 2:
            return Move((k + 3) // 2 - 1, BLUE)
        return Move(k // 2, RED)  # v_{k/2+1}, 1-based
    if k % 2:
        return Move((k - 1) // 2 - 1, RED)
    return Move(k // 2 - 1, BLUE)  # v_{k/2}, 1-based


# ---- persistence ---------------------------------------------------------------

_MAGIC = b"CGBR"
_VERSION = 1
_HEADER = struct.Struct("<4sHQ")


def save_table(table: GrundyTable, dest: str | BinaryIO) -> None:
    """Binary format: {magic, version, K} header, three little-endian uint16
    arrays of length K+1 (A, C, D), then a 64-bit checksum of the rest."""
    header = _HEADER.pack(_MAGIC, _VERSION, table.K)
    body = b"".join(
        arr.astype("<u2", copy=False).tobytes() for arr in (table.gA, table.gC, table.gD)
    )
    digest = hashlib.blake2b(header + body, digest_size=8).digest()
    if isinstance(dest, str):
        with open(dest, "wb") as fh:
            fh.write(header + body + digest)
    else:
        dest.write(header + body + digest)


def load_table(src: str | BinaryIO) -> GrundyTable:
    if isinstance(src, str):
        with open(src, "rb") as fh:
            raw = fh.read()
    else:
        raw = src.read()
    if len(raw) < _HEADER.size + 8:
        raise TableFormatError("table file is truncated")
    magic, version, K = _HEADER.unpack_from(raw)
    if magic != _MAGIC:
        raise TableFormatError("not a Grundy table file (bad magic)")
    if version != _VERSION:
        raise TableVersionError(f"unsupported table version {version}")
    body, digest = raw[_HEADER.size : -8], raw[-8:]
    if hashlib.blake2b(raw[:-8], digest_size=8).digest() != digest:
        raise TableChecksumError("table file checksum mismatch")
    expect = 3 * 2 * (K + 1)
    if len(body) != expect:
        raise TableFormatError(f"table body has {len(body)} bytes, expected {expect}")
    arrays = np.frombuffer(body, dtype="<u2").astype(np.uint16).reshape(3, K + 1)
    return GrundyTable(K=int(K), gA=arrays[0], gC=arrays[1], gD=arrays[2])


def export_csv(table: GrundyTable, dest: str | TextIO) -> None:
    """One `k,gA,gC,gD` line per length, k = 1..K, no header."""
    lines = (
        f"{k},{int(table.gA[k])},{int(table.gC[k])},{int(table.gD[k])}\n"
        for k in range(1, table.K + 1)
    )
    if isinstance(dest, str):
        with open(dest, "w", encoding="utf-8") as fh:
            fh.writelines(lines)
    else:
        dest.writelines(lines)
