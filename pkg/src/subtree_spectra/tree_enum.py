"""Enumeration of free (unlabeled) trees plus an independent labeled oracle.

The generator delegates to networkx's nonisomorphic_trees, an
implementation of the classical constant-amortized-time successor
algorithm on centroid-rooted canonical level sequences.  Emission order
is the algorithm's deterministic successor order, so (n, emission index)
is a stable tree identifier across runs.

The Pruefer-sequence oracle reconstructs the same counts from the other
direction (all n^(n-2) labeled trees, deduplicated by canonical code) and
shares no code with the generator.
"""

from __future__ import annotations

import heapq
from typing import Iterator

import networkx as nx

from .errors import OrderOutOfRange, OrderTooLargeForOracle
from .tree_model import Tree, canonical_code

MAX_ENUM_ORDER = 20
MAX_ORACLE_ORDER = 10


def enumerate_free_trees(n: int) -> Iterator[Tree]:
    """Yield one representative of every isomorphism class of trees on n vertices."""
    if not (1 <= n <= MAX_ENUM_ORDER):
        raise OrderOutOfRange(f"order {n} outside 1..{MAX_ENUM_ORDER}")
    if n == 1:
        yield Tree(1, [])
        return
    if n == 2:
        yield Tree(2, [(0, 1)])
        return
    for g in nx.nonisomorphic_trees(n):
        yield Tree(n, list(g.edges()))


def count_free_trees(n: int) -> int:
    return sum(1 for _ in enumerate_free_trees(n))


def prufer_decode(seq: tuple[int, ...], n: int) -> Tree:
    """Labeled tree on 0..n-1 from a Pruefer sequence of length n-2.

    Standard reconstruction: repeatedly attach the smallest current leaf
    to the next sequence entry.
    """
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Tree(n, edges)


def prufer_dedup_oracle(n: int) -> int:
    """Count isomorphism classes by canonicalizing all n^(n-2) labeled trees.

    Exhaustive by definition, hence an oracle for count_free_trees; the
    budget grows as n^(n-2), so orders above 10 are refused (and 9..10
    already take minutes).
    """
    if n > MAX_ORACLE_ORDER:
        raise OrderTooLargeForOracle(
            f"{n}^{n - 2} labeled trees exceed the oracle budget"
        )
    if n < 1:
        raise OrderOutOfRange(f"order {n} must be >= 1")
    if n <= 2:
        return 1
    codes = set()
    seq = [0] * (n - 2)
    while True:
        codes.add(canonical_code(prufer_decode(tuple(seq), n)))
        i = n - 3
        while i >= 0 and seq[i] == n - 1:
            seq[i] = 0
            i -= 1
        if i < 0:
            break
        seq[i] += 1
    return len(codes)


def random_tree(n: int, rng) -> Tree:
    """Uniform random labeled tree on n vertices via a random Pruefer sequence."""
    if n < 1:
        raise OrderOutOfRange(f"order {n} must be >= 1")
    if n == 1:
        return Tree(1, [])
    if n == 2:
        return Tree(2, [(0, 1)])
    seq = tuple(rng.randrange(n) for _ in range(n - 2))
    return prufer_decode(seq, n)
