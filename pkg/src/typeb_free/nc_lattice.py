"""Non-crossing partition lattices NC(n) (type A) and NC^B(n) (type B).

Partitions are immutable values.  The canonical text form lists blocks by
their first element, elements comma-separated and blocks separated by
``|``, e.g. ``"1,2|3"``.  Type B partitions live on ``{1..n, -1..-n}`` with
the cyclic order ``1 < ... < n < -1 < ... < -n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, DomainError, SizeLimitError

NC_CAP = 14
NCB_CAP = 7


def _check_blocks(n: int, blocks: Iterable[Iterable[int]], ground: set[int]) -> tuple[tuple[int, ...], ...]:
    seen: set[int] = set()
    out = []
    for block in blocks:
        b = tuple(block)
        if not b:
            raise DomainError("empty block")
        for v in b:
            if isinstance(v, bool) or not isinstance(v, int):
                raise DomainError(f"non-integer element {v!r}")
            if v not in ground:
                raise DomainError(f"element {v} outside the ground set")
            if v in seen:
                raise DomainError(f"element {v} appears twice")
            seen.add(v)
        out.append(b)
    if seen != ground:
        raise DomainError(f"blocks miss elements {sorted(ground - seen)}")
    return tuple(out)


@dataclass(frozen=True)
class SetPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"ground-set size must be a positive integer, got {self.n!r}")
        blocks = _check_blocks(self.n, self.blocks, set(range(1, self.n + 1)))
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def _trusted(cls, n: int, blocks: tuple[tuple[int, ...], ...]) -> "SetPartition":
        # blocks must already be canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "SetPartition":
        """Build from a restricted growth string (0-based block labels)."""
        groups: dict[int, list[int]] = {}
        for i, label in enumerate(rgs, start=1):
            groups.setdefault(label, []).append(i)
        return cls._trusted(len(rgs), tuple(tuple(groups[k]) for k in sorted(groups)))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "SetPartition":
        blocks = _parse_blocks(text)
        if n is None:
            n = max((v for b in blocks for v in b), default=0)
        return cls(n, tuple(blocks))

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        return cls._trusted(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def one_block(cls, n: int) -> "SetPartition":
        return cls._trusted(n, (tuple(range(1, n + 1)),))

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def rgs(self) -> tuple[int, ...]:
        labels = [0] * self.n
        for k, b in enumerate(self.blocks):
            for v in b:
                labels[v - 1] = k
        return tuple(labels)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def restrict(self, subset: Iterable[int]) -> "SetPartition":
        """Restriction to ``subset``, relabelled order-preservingly to 1..k."""
        elems = sorted(subset)
        relabel = {v: i for i, v in enumerate(elems, start=1)}
        blocks = []
        for b in self.blocks:
            kept = tuple(relabel[v] for v in b if v in relabel)
            if kept:
                blocks.append(kept)
        return SetPartition(len(elems), tuple(blocks))


def _parse_blocks(text: str) -> list[tuple[int, ...]]:
    text = text.strip()
    if not text:
        raise DomainError("empty partition string")
    blocks = []
    for chunk in text.split("|"):
        try:
            blocks.append(tuple(int(v) for v in chunk.split(",")))
        except ValueError:
            raise DomainError(f"malformed block {chunk!r} in {text!r}") from None
    return blocks


def _noncrossing_sequence(labels: Sequence[int]) -> bool:
    # A block may only be revisited while it sits on top of the open-block stack.
    last = {}
    for i, lab in enumerate(labels):
        last[lab] = i
    stack: list[int] = []
    started: set[int] = set()
    for i, lab in enumerate(labels):
        if lab in started:
            if not stack or stack[-1] != lab:
                return False
        else:
            started.add(lab)
            stack.append(lab)
        if last[lab] == i:
            stack.pop()
    return True


def is_noncrossing(p: SetPartition) -> bool:
    return _noncrossing_sequence(p.rgs())


def refines(p: SetPartition, q: SetPartition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    if p.n != q.n:
        raise DimensionError(f"ground sets differ: {p.n} vs {q.n}")
    labels = q.rgs()
    return all(labels[v - 1] == labels[b[0] - 1] for b in p.blocks for v in b)


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


def _nc_rgs(n: int) -> Iterator[tuple[int, ...]]:
    rgs = [0] * n

    def rec(i: int, stack: list[int], nblocks: int):
        if i == n:
            yield tuple(rgs)
            return
        for depth, b in enumerate(stack):
            rgs[i] = b
            yield from rec(i + 1, stack[: depth + 1], nblocks)
        rgs[i] = nblocks
        stack.append(nblocks)
        yield from rec(i + 1, stack, nblocks + 1)
        stack.pop()

    yield from rec(0, [], 0)


@lru_cache(maxsize=None)
def _nc_cached(n: int) -> tuple[SetPartition, ...]:
    return tuple(SetPartition.from_rgs(r) for r in _nc_rgs(n))


def enumerate_nc(n: int, cap: int = NC_CAP) -> list[SetPartition]:
    """All of NC(n), ordered lexicographically by restricted growth string."""
    if n < 1:
        raise DomainError("n must be positive")
    if n > cap:
        raise SizeLimitError(f"NC({n}) exceeds the enumeration cap {cap}")
    return list(_nc_cached(n))


def nc_tuple(n: int) -> tuple[SetPartition, ...]:
    """Cached, shared view of NC(n) for internal summations."""
    if n > NC_CAP:
        raise SizeLimitError(f"NC({n}) exceeds the enumeration cap {NC_CAP}")
    return _nc_cached(n)


# --- type B -----------------------------------------------------------------


def _cyclic_position(n: int, v: int) -> int:
    return v if v > 0 else n - v


@dataclass(frozen=True)
class TypeBPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.n
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise DomainError(f"n must be a positive integer, got {n!r}")
        ground = set(range(1, n + 1)) | set(range(-n, 0))
        blocks = _check_blocks(n, self.blocks, ground)
        pos = lambda v: _cyclic_position(n, v)  # noqa: E731
        canon = tuple(
            sorted((tuple(sorted(b, key=pos)) for b in blocks), key=lambda b: pos(b[0]))
        )
        as_sets = {frozenset(b) for b in canon}
        for b in canon:
            if frozenset(-v for v in b) not in as_sets:
                raise DomainError(f"block {b} has no mirror block")
        if not _noncrossing_sequence(self._labels(canon)):
            raise DomainError("partition is crossing in the cyclic order 1..n,-1..-n")
        object.__setattr__(self, "blocks", canon)

    def _labels(self, blocks) -> list[int]:
        labels = [0] * (2 * self.n)
        for k, b in enumerate(blocks):
            for v in b:
                labels[_cyclic_position(self.n, v) - 1] = k
        return labels

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "TypeBPartition":
        blocks = _parse_blocks(text)
        if n is None:
            n = max((abs(v) for b in blocks for v in b), default=0)
        return cls(n, tuple(blocks))

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def rgs(self) -> tuple[int, ...]:
        """Block labels along the cyclic order 1..n, -1..-n."""
        return tuple(self._labels(self.blocks))

    def symmetric_blocks(self) -> list[tuple[int, ...]]:
        return [b for b in self.blocks if set(b) == {-v for v in b}]


def _ncb_labels(n: int) -> Iterator[tuple[int, ...]]:
    """Symmetric non-crossing labelings of the 2n cyclic positions.

    The first n positions range over NC(n) with the open-block stack; every
    later position is forced by the mirror of the block of its opposite.
    The first time a mirror is needed it may be the block itself (a
    symmetric block), another still-open block without a mirror, or a fresh
    block.
    """
    labels = [0] * (2 * n)

    def second(j: int, stack: list[int], nblocks: int, mirror: dict[int, int]):
        if j == n:
            yield tuple(labels)
            return
        b = labels[j]
        if b in mirror:
            options = [mirror[b]]
        else:
            options = [c for c in stack if c not in mirror] + [None]
        for target in options:
            if target is None:
                target = nblocks
                new_mirror = {**mirror, b: target, target: b}
                new_stack = stack + [target]
                nb = nblocks + 1
            else:
                if target not in stack:
                    continue
                new_mirror = mirror if b in mirror else {**mirror, b: target, target: b}
                new_stack = stack[: stack.index(target) + 1]
                nb = nblocks
            labels[n + j] = target
            yield from second(j + 1, new_stack, nb, new_mirror)

    def first(i: int, stack: list[int], nblocks: int):
        if i == n:
            yield from second(0, stack, nblocks, {})
            return
        for depth, b in enumerate(stack):
            labels[i] = b
            yield from first(i + 1, stack[: depth + 1], nblocks)
        labels[i] = nblocks
        yield from first(i + 1, stack + [nblocks], nblocks + 1)

    for lab in first(0, [], 0):
        if _noncrossing_sequence(lab):
            yield lab


@lru_cache(maxsize=None)
def _ncb_cached(n: int) -> tuple[TypeBPartition, ...]:
    found = []
    for lab in _ncb_labels(n):
        groups: dict[int, list[int]] = {}
        for pos, k in enumerate(lab, start=1):
            groups.setdefault(k, []).append(pos if pos <= n else n - pos)
        part = TypeBPartition(n, tuple(tuple(g) for g in groups.values()))
        found.append(part)
    found.sort(key=lambda p: p.rgs())
    return tuple(found)


def enumerate_ncb(n: int, cap: int = NCB_CAP) -> list[TypeBPartition]:
    """All symmetric non-crossing partitions of {±1..±n}, sorted by cyclic RGS."""
    if n < 1:
        raise DomainError("n must be positive")
    if n > cap:
        raise SizeLimitError(f"NC^B({n}) exceeds the enumeration cap {cap}")
    return list(_ncb_cached(n))


# --- Kreweras complement and Moebius function -------------------------------


@lru_cache(maxsize=200_000)
def kreweras(p: SetPartition) -> SetPartition:
    """Kreweras complement, computed as the permutation ``P^{-1} o gamma``.

    ``P`` sends each element to its successor inside its block (cyclically)
    and ``gamma = (1 2 ... n)``; the cycles of the product are the blocks.
    """
    if not is_noncrossing(p):
        raise DomainError(f"{p} is crossing; Kreweras complement undefined")
    n = p.n
    prev = [0] * (n + 1)
    for b in p.blocks:
        for k, v in enumerate(b):
            prev[b[(k + 1) % len(b)]] = v
    seen = [False] * (n + 1)
    blocks = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = prev[i % n + 1]
        blocks.append(tuple(sorted(cycle)))
    blocks.sort(key=lambda b: b[0])
    return SetPartition._trusted(n, tuple(blocks))


@dataclass(frozen=True)
class PartitionInterval:
    lower: SetPartition
    upper: SetPartition

    def __post_init__(self):
        if self.lower.n != self.upper.n:
            raise DimensionError("interval endpoints have different ground sets")
        if not refines(self.lower, self.upper):
            raise DomainError(f"{self.lower} does not refine {self.upper}")

    def elements(self) -> list[SetPartition]:
        return [
            r
            for r in nc_tuple(self.lower.n)
            if refines(self.lower, r) and refines(r, self.upper)
        ]


def interval_type(interval: PartitionInterval) -> tuple[int, ...]:
    """Sizes k_1 <= k_2 <= ... with ``[lower, upper]`` iso to the product of NC(k_i).

    Each block V of ``upper`` contributes ``[lower|V, 1_V]``, and Kreweras
    complementation maps that interval onto ``[0, Kr(lower|V)]``, itself the
    product of NC(|W|) over the blocks W of the complement.
    """
    lower, upper = interval.lower, interval.upper
    if not (is_noncrossing(lower) and is_noncrossing(upper)):
        raise DomainError("Moebius function is taken in NC(n); endpoints must be non-crossing")
    sizes: list[int] = []
    for v in upper.blocks:
        sizes.extend(len(w) for w in kreweras(lower.restrict(v)).blocks)
    return tuple(sorted(sizes))


@lru_cache(maxsize=None)
def _mu_bottom_top(k: int) -> int:
    # mu(0_k, 1_k) from sum_{0 <= s <= 1_k} mu(0_k, s) = 0, with
    # mu(0_k, s) = prod over blocks of mu(0_|B|, 1_|B|) since [0_k, s] ~ prod NC(|B|).
    if k == 1:
        return 1
    total = 0
    top = SetPartition.one_block(k)
    for s in nc_tuple(k):
        if s == top:
            continue
        total += prod(_mu_bottom_top(len(b)) for b in s.blocks)
    return -total


def moebius(interval: PartitionInterval) -> int:
    """Moebius function of NC(n) on ``interval``.

    Evaluated by the defining recursion, memoised on the isomorphism type of
    the interval (a multiset of full lattices NC(k)).
    """
    return prod(_mu_bottom_top(k) for k in interval_type(interval))


def moebius_recursive(interval: PartitionInterval) -> int:
    """Plain recursion ``mu(p,p)=1``, ``sum_{p<=r<=q} mu(p,r)=0`` over the interval."""
    elems = interval.elements()
    elems.sort(key=len, reverse=True)
    labels = {r: r.rgs() for r in elems}

    def below(s: SetPartition, r: SetPartition) -> bool:
        lab = labels[r]
        return all(lab[v - 1] == lab[b[0] - 1] for b in s.blocks for v in b)

    mu: dict[SetPartition, int] = {}
    for r in elems:
        if r == interval.lower:
            mu[r] = 1
            continue
        mu[r] = -sum(m for s, m in mu.items() if len(s) > len(r) and below(s, r))
    return mu[interval.upper]


@lru_cache(maxsize=200_000)
def moebius_to_top(p: SetPartition) -> int:
    """``mu(p, 1_n)``; the weight used in moment-to-cumulant inversion."""
    return moebius(PartitionInterval(p, SetPartition.one_block(p.n)))


# --- sums over NC(n) aggregated by block-size type -----------------------------


def _size_type(p: SetPartition) -> tuple[int, ...]:
    return tuple(sorted(len(b) for b in p.blocks))


@lru_cache(maxsize=None)
def moebius_type_weights(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """``(type, sum of mu(p, 1_n) over p of that block-size type)`` for p in NC(n)."""
    acc: dict[tuple[int, ...], int] = {}
    for p in nc_tuple(n):
        key = _size_type(p)
        acc[key] = acc.get(key, 0) + moebius_to_top(p)
    return tuple(sorted((k, w) for k, w in acc.items() if w))


@lru_cache(maxsize=None)
def kreweras_type_counts(
    n: int, first_singleton: bool = False
) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    """Multiplicities of ``(type(p), type(Kr(p)))`` over p in NC(n).

    With ``first_singleton`` only partitions having ``{1}`` as a block count.
    """
    acc: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    for p in nc_tuple(n):
        if first_singleton and p.blocks[0] != (1,):
            continue
        key = (_size_type(p), _size_type(kreweras(p)))
        acc[key] = acc.get(key, 0) + 1
    return tuple(sorted((a, b, c) for (a, b), c in acc.items()))
