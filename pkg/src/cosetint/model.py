"""Instance data model and the brute-force search oracle.

The decision problem: given a coset xstar + H of a subgroup H <= G^t,
does it meet S^t?  The homogeneous variant fixes xstar = 0.  The oracle
here is deliberately naive (pruned exhaustive search) -- it is the
ground truth that every polynomial solver and every reduction is tested
against, so it must be simple enough to trust by inspection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .groups import FiniteAbelianGroup, GroupElement

DEFAULT_BUDGET = 10 ** 8

Certificate = Tuple[int, ...]


@dataclass(frozen=True)
class SubsetS:
    """A finite subset of the base group with O(1) membership."""

    group: FiniteAbelianGroup
    elements: frozenset

    def __post_init__(self):
        elems = frozenset(tuple(e) for e in self.elements)
        for e in elems:
            if not self.group.contains(e):
                raise ValueError(f"subset element {e} not in group {self.group}")
        object.__setattr__(self, "elements", elems)

    @staticmethod
    def of(group: FiniteAbelianGroup, elements) -> "SubsetS":
        return SubsetS(group, frozenset(tuple(e) for e in elements))

    def __contains__(self, element) -> bool:
        return tuple(element) in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements())

    def sorted_elements(self) -> Tuple[GroupElement, ...]:
        return tuple(sorted(self.elements))

    def translate(self, g: GroupElement) -> "SubsetS":
        G = self.group
        return SubsetS(G, frozenset(G.add(e, g) for e in self.elements))

    def dilate(self, a: int) -> "SubsetS":
        G = self.group
        return SubsetS(G, frozenset(G.scale(a, e) for e in self.elements))


@dataclass(frozen=True)
class ProblemInstance:
    """(t, xstar, hgens) over a base group; hgens generate H <= G^t."""

    group: FiniteAbelianGroup
    t: int
    xstar: Tuple[GroupElement, ...]
    hgens: Tuple[Tuple[GroupElement, ...], ...]

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("t must be nonnegative")
        xstar = tuple(tuple(e) for e in self.xstar)
        hgens = tuple(tuple(tuple(e) for e in gen) for gen in self.hgens)
        if len(xstar) != self.t:
            raise ValueError(f"xstar has length {len(xstar)}, expected t={self.t}")
        for e in xstar:
            if not self.group.contains(e):
                raise ValueError(f"xstar entry {e} not in group {self.group}")
        for gen in hgens:
            if len(gen) != self.t:
                raise ValueError(f"generator has length {len(gen)}, expected t={self.t}")
            for e in gen:
                if not self.group.contains(e):
                    raise ValueError(f"generator entry {e} not in group {self.group}")
        object.__setattr__(self, "xstar", xstar)
        object.__setattr__(self, "hgens", hgens)

    @property
    def power_group(self) -> FiniteAbelianGroup:
        return self.group.power(self.t)

    def is_homogeneous(self) -> bool:
        zero = self.group.zero()
        return all(e == zero for e in self.xstar)


@dataclass(frozen=True)
class SolveResult:
    kind: str  # "yes" | "no" | "budget_exceeded"
    certificate: Optional[Certificate] = None

    def __post_init__(self):
        if self.kind not in ("yes", "no", "budget_exceeded"):
            raise ValueError(f"bad result kind {self.kind!r}")
        if (self.kind == "yes") != (self.certificate is not None):
            raise ValueError("certificate present iff kind is yes")


def witness_point(inst: ProblemInstance, cert: Sequence[int]) -> Tuple[GroupElement, ...]:
    """xstar + sum(cert[i] * hgens[i]), computed coordinate-wise."""
    if len(cert) != len(inst.hgens):
        raise ValueError(f"certificate length {len(cert)} != generator count {len(inst.hgens)}")
    G = inst.group
    point = list(inst.xstar)
    for coeff, gen in zip(cert, inst.hgens):
        if coeff % G.exponent == 0:
            continue
        for i in range(inst.t):
            point[i] = G.add(point[i], G.scale(coeff, gen[i]))
    return tuple(point)


def verify_certificate(inst: ProblemInstance, S: SubsetS, cert: Sequence[int]) -> bool:
    """True iff the certified point lies in S^t (vacuously true for t=0)."""
    if S.group != inst.group:
        raise ValueError("subset and instance are over different groups")
    point = witness_point(inst, cert)
    return all(p in S for p in point)


class _BudgetExceeded(Exception):
    pass


def oracle_solve(inst: ProblemInstance, S: SubsetS, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Exhaustive pruned DFS over coefficient digits in [0, exponent).

    A coordinate of the running point is tested against S as soon as no
    remaining generator can change it, so identity-like leading blocks
    prune the search hard.  Digits are tried in ascending order with
    generators in given order, which makes the first certificate found
    the lexicographically smallest one.
    """
    if S.group != inst.group:
        raise ValueError("subset and instance are over different groups")
    if budget < 1:
        raise ValueError("budget must be positive")
    G = inst.group
    t, ngens = inst.t, len(inst.hgens)
    exp = G.exponent
    zero = G.zero()

    in_s = bytearray(G.order)
    for e in S.elements:
        in_s[G.index_of(e)] = 1

    # last_touch[i]: index of the last generator with a nonzero entry at i
    last_touch = [-1] * t
    for k, gen in enumerate(inst.hgens):
        for i in range(t):
            if gen[i] != zero:
                last_touch[i] = k
    final_at = [[] for _ in range(ngens + 1)]
    for i in range(t):
        final_at[last_touch[i] + 1].append(i)

    point = [list(e) for e in inst.xstar]
    index_of = G.index_of
    add_into = G.moduli
    dim = G.dim
    nodes = 0

    def coords_ok(which) -> bool:
        return all(in_s[index_of(tuple(point[i]))] for i in which)

    def dfs(k: int, stack) -> Optional[Tuple[int, ...]]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if not coords_ok(final_at[k]):
            return None
        if k == ngens:
            return tuple(stack)
        gen = inst.hgens[k]
        touched = [i for i in range(t) if gen[i] != zero]
        for digit in range(exp):
            if digit:
                for i in touched:
                    p, g = point[i], gen[i]
                    for j in range(dim):
                        p[j] = (p[j] + g[j]) % add_into[j]
            stack.append(digit)
            found = dfs(k + 1, stack)
            if found is not None:
                return found
            stack.pop()
        # exponent many additions wrap every coordinate back to its start
        for i in touched:
            p, g = point[i], gen[i]
            for j in range(dim):
                p[j] = (p[j] + g[j]) % add_into[j]
        return None

    try:
        cert = dfs(0, [])
    except _BudgetExceeded:
        return SolveResult("budget_exceeded")
    if cert is None:
        return SolveResult("no")
    return SolveResult("yes", cert)
