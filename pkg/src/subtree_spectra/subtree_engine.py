"""Subtree-counting polynomials of trees.

The subtree polynomial of a tree T on n vertices is sum_k s_k x^k where
s_k counts the connected induced subgraphs with k vertices.  The local
polynomial at a vertex v counts only subtrees containing v.  Both are
computed exactly by rooted dynamic programming:

    down(w) = x * prod over children c of (1 + down(c))

down(w) generates the subtrees living inside w's branch that contain w.
Summing down(w) over all w (each subtree tallied at its vertex nearest
the root) gives the full polynomial in one pass; a second top-down pass
with sibling prefix/suffix products gives every vertex's local
polynomial without polynomial division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantViolation, OrderTooLargeForOracle
from .poly_core import ONE, ZERO, ExactPolynomial, X
from .tree_model import FamilySpec, Forest, Tree

BRUTE_FORCE_MAX_ORDER = 24


def _dfs_order(t: Tree, root: int) -> tuple[list[int], list[int]]:
    """Preorder vertex list and parent array for t rooted at root."""
    parent = [-2] * t.n
    parent[root] = -1
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for w in t.adjacency[u]:
            if parent[w] == -2:
                parent[w] = u
                order.append(w)
                stack.append(w)
    return order, parent


def _down_polynomials(t: Tree, root: int) -> tuple[list[ExactPolynomial], list[int], list[int]]:
    order, parent = _dfs_order(t, root)
    down: list[ExactPolynomial] = [ONE] * t.n
    acc: list[ExactPolynomial] = [ONE] * t.n  # running product of (1 + down(child))
    for u in reversed(order):
        down[u] = X * acc[u]
        p = parent[u]
        if p >= 0:
            acc[p] = acc[p] * (ONE + down[u])
    return down, order, parent


def local_polynomial(t: Tree, v: int) -> ExactPolynomial:
    """Generating polynomial of the subtrees that contain v."""
    t.check_vertex(v)
    down, _, _ = _down_polynomials(t, v)
    return down[v]


def subtree_polynomial(t: Tree) -> ExactPolynomial:
    """Generating polynomial of all subtrees, computed in one rooted pass."""
    down, _, _ = _down_polynomials(t, 0)
    total = ZERO
    for p in down:
        total = total + p
    return total


def all_local_polynomials(t: Tree) -> list[ExactPolynomial]:
    """Local polynomial at every vertex via two-pass rerooting.

    For each directed edge u->p let g(u->p) be the local polynomial of u
    inside the component of T-p containing u.  Child directions come from
    the rooted pass; parent directions are assembled from prefix/suffix
    products over the other neighbours, never by dividing out a factor.
    """
    down, order, parent = _down_polynomials(t, 0)
    # g[v] = contribution of the parent side, i.e. g(parent(v) -> v)
    up: list[ExactPolynomial] = [ZERO] * t.n
    locals_: list[ExactPolynomial] = [ZERO] * t.n
    for u in order:
        factors = []
        for w in t.adjacency[u]:
            if w == parent[u]:
                factors.append(ONE + up[u])
            else:
                factors.append(ONE + down[w])
        k = len(factors)
        prefix = [ONE] * (k + 1)
        for i in range(k):
            prefix[i + 1] = prefix[i] * factors[i]
        locals_[u] = X * prefix[k]
        suffix = ONE
        for i in range(k - 1, -1, -1):
            w = t.adjacency[u][i]
            if w != parent[u]:
                up[w] = X * (prefix[i] * suffix)
            suffix = factors[i] * suffix
    return locals_


def forest_polynomial(f: Forest) -> ExactPolynomial:
    """Sum of the component polynomials; zero for the empty forest."""
    total = ZERO
    for t in f.components:
        total = total + subtree_polynomial(t)
    return total


def brute_force_polynomial(t: Tree) -> ExactPolynomial:
    """Definitional oracle: test every vertex subset for connectedness.

    Kept deliberately independent of the rooted recursion above.
    """
    if t.n > BRUTE_FORCE_MAX_ORDER:
        raise OrderTooLargeForOracle(
            f"2**{t.n} subsets exceed the oracle budget (max {BRUTE_FORCE_MAX_ORDER})"
        )
    adj_mask = [0] * t.n
    for u in range(t.n):
        for w in t.adjacency[u]:
            adj_mask[u] |= 1 << w
    counts = [0] * (t.n + 1)
    for subset in range(1, 1 << t.n):
        low = subset & -subset
        reached = low
        frontier = low
        while frontier:
            grow = 0
            m = frontier
            while m:
                b = m & -m
                grow |= adj_mask[b.bit_length() - 1]
                m ^= b
            frontier = grow & subset & ~reached
            reached |= frontier
        if reached == subset:
            counts[subset.bit_count()] += 1
    return ExactPolynomial(counts)


def max_independent_set(t: Tree) -> int:
    """Largest set of pairwise non-adjacent vertices, by rooted DP."""
    order, parent = _dfs_order(t, 0)
    incl = [1] * t.n
    excl = [0] * t.n
    for u in reversed(order):
        p = parent[u]
        if p >= 0:
            incl[p] += excl[u]
            excl[p] += max(incl[u], excl[u])
    return max(incl[0], excl[0])


@dataclass(frozen=True)
class SubtreeProfile:
    """Everything the subtree polynomial encodes about one tree."""

    polynomial: ExactPolynomial
    local_polynomials: tuple[ExactPolynomial, ...]
    subtree_count: int
    mean_subtree_order: Fraction
    independence_number: int


def profile(t: Tree) -> SubtreeProfile:
    """Polynomial, per-vertex locals, count, mean order, independence number.

    The independence number is read off as -P(-1) and always cross-checked
    against the direct dynamic program; disagreement means a bug somewhere
    in the pipeline and raises immediately.
    """
    poly = subtree_polynomial(t)
    locals_ = tuple(all_local_polynomials(t))
    count = poly.eval_exact(1)
    mean = Fraction(poly.derivative().eval_exact(1), count)
    alpha_poly = -poly.eval_exact(-1)
    alpha_dp = max_independent_set(t)
    if alpha_poly != alpha_dp:
        raise InternalInvariantViolation(
            f"independence number mismatch: -P(-1)={alpha_poly} vs DP={alpha_dp}"
        )
    return SubtreeProfile(poly, locals_, count, mean, alpha_poly)


def closed_form(spec: FamilySpec) -> ExactPolynomial:
    """Closed-form subtree polynomial of a named family.

      path n:   sum_k (n-k+1) x^k
      star n:   x(1+x)^(n-1) + (n-1)x
      spider:   x[(1+x)^a (1+x+x^2)^b + a + b(x+2)]
    """
    if spec.kind == "path":
        n = spec.params[0]
        return ExactPolynomial([0] + [n - k + 1 for k in range(1, n + 1)])
    if spec.kind == "star":
        n = spec.params[0]
        return X * (ONE + X) ** (n - 1) + ExactPolynomial([0, n - 1])
    a, b = spec.params
    inner = (ONE + X) ** a * ExactPolynomial([1, 1, 1]) ** b \
        + ExactPolynomial([a]) + b * ExactPolynomial([2, 1])
    return X * inner
