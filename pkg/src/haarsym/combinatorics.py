"""Permutations and pair partitions.

Conventions used throughout the package:

* A permutation of {0..k-1} is a tuple ``p`` of length k in word notation,
  ``p[i]`` being the image of ``i``.  Composition is function composition,
  ``compose(p, q)[i] == p[q[i]]`` (apply ``q`` first).

* A pair partition (perfect matching) of {0..2l-1} is a tuple of ``l``
  blocks, each block a pair ``(a, b)`` with ``a < b``, the blocks sorted by
  first element.  Since the first elements are distinct this ordering is the
  lexicographic one on the sorted block list; it is the canonical order used
  for all table indexing and serialization.

* An index function on {0..k-1} with values in {0..n-1} is a plain tuple of
  ints of length k.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from . import caps
from .errors import SizeCapError

Permutation = tuple[int, ...]
Block = tuple[int, int]
PairPartition = tuple[Block, ...]


# ---------------------------------------------------------------------------
# permutations


def identity_permutation(k: int) -> Permutation:
    return tuple(range(k))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Function composition, q applied first.

    >>> compose((1, 2, 0), (0, 2, 1))
    (1, 0, 2)
    """
    assert len(p) == len(q)
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Cycle decomposition; each cycle starts at its smallest element,
    cycles sorted by that element.

    >>> cycles((1, 0, 2))
    [(0, 1), (2,)]
    """
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_count(p: Permutation) -> int:
    return len(cycles(p))


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths, sorted descending.

    >>> cycle_type((1, 0, 3, 2))
    (2, 2)
    """
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def permutation_from_cycle_type(ctype: Sequence[int]) -> Permutation:
    """A canonical permutation with the given cycle type: consecutive
    blocks {0..c1-1}, {c1..c1+c2-1}, ... each cycled forward.

    >>> permutation_from_cycle_type((2, 1))
    (1, 0, 2)
    """
    word = []
    base = 0
    for c in ctype:
        if c < 1:
            raise ValueError(f"cycle lengths must be positive, got {c}")
        word.extend([base + (i + 1) % c for i in range(c)])
        base += c
    return tuple(word)


def enumerate_permutations(k: int, cap: int | None = None) -> Iterator[Permutation]:
    """All of S_k in lexicographic order.  Guarded by the k-cap."""
    caps.check_k(k, cap)
    return itertools.permutations(range(k))


def cycle_types(k: int) -> list[tuple[int, ...]]:
    """All partitions of k, each sorted descending, the list sorted."""
    if k == 0:
        return [()]
    out: set[tuple[int, ...]] = set()

    def grow(remaining: int, largest: int, acc: tuple[int, ...]) -> None:
        if remaining == 0:
            out.add(acc)
            return
        for part in range(min(remaining, largest), 0, -1):
            grow(remaining - part, part, acc + (part,))

    grow(k, k, ())
    return sorted(out)


# ---------------------------------------------------------------------------
# pair partitions


def double_factorial(m: int) -> int:
    """(m)!! for odd m >= -1; the number of pair partitions of m+1 points.

    >>> [double_factorial(2 * l - 1) for l in range(1, 4)]
    [1, 3, 15]
    """
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def canonical_pair_partition(blocks: Sequence[Sequence[int]]) -> PairPartition:
    """Normalize a collection of disjoint pairs to canonical form.

    Raises ValueError if the blocks are not a perfect matching of
    {0..2l-1}.
    """
    norm = tuple(sorted((min(b), max(b)) for b in blocks))
    flat = sorted(x for b in norm for x in b)
    if flat != list(range(2 * len(norm))):
        raise ValueError(f"blocks {blocks!r} do not pair up {{0..{2*len(norm)-1}}}")
    return norm


def enumerate_pair_partitions(l: int, cap: int | None = None) -> list[PairPartition]:
    """All pair partitions of {0..2l-1}, in canonical (lexicographic) order.

    >>> enumerate_pair_partitions(2)
    [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    """
    caps.check_l(l, cap)

    def rec(free: tuple[int, ...]) -> Iterator[PairPartition]:
        if not free:
            yield ()
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            rest = free[1:idx] + free[idx + 1 :]
            for tail in rec(rest):
                yield ((a, b),) + tail

    return list(rec(tuple(range(2 * l))))


def loops(m: PairPartition, n: PairPartition) -> int:
    """Number of connected components of the multigraph on {0..2l-1} whose
    edges are the blocks of both partitions.  Equals l when m == n and
    decreases as the partitions interleave.

    >>> m = ((0, 1), (2, 3)); n = ((0, 2), (1, 3))
    >>> loops(m, m), loops(m, n)
    (2, 1)
    """
    size = 2 * len(m)
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in itertools.chain(m, n):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return sum(1 for x in range(size) if find(x) == x)


def is_constant_on_blocks(phi: Sequence[int], m: PairPartition) -> bool:
    """Whether the index function phi takes a single value on every block."""
    return all(phi[a] == phi[b] for a, b in m)


def permute_partition(s: Permutation, m: PairPartition) -> PairPartition:
    """The image partition {{s(a), s(b)}}."""
    return canonical_pair_partition([(s[a], s[b]) for a, b in m])


def fixed_pair_partitions(s: Permutation, cap: int | None = None) -> int:
    """Count the pair partitions m of {0..k-1} with s mapping blocks to
    blocks, i.e. permute_partition(s, m) == m.  k must be even.

    >>> fixed_pair_partitions((0, 1))
    1
    >>> fixed_pair_partitions((1, 0, 3, 2))
    3
    """
    k = len(s)
    if k % 2 != 0:
        raise ValueError(f"pair partitions need an even ground set, got k={k}")
    count = 0
    for m in enumerate_pair_partitions(k // 2, cap):
        if permute_partition(s, m) == m:
            count += 1
    return count
