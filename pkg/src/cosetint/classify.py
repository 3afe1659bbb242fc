"""Dichotomy classifiers for the affine and homogeneous problems.

Affine problem: in P iff S is empty or a coset, NP-complete otherwise.
Homogeneous problem: in P iff the dilation core of S is empty or a
coset, NP-complete otherwise.  The dilation core is the intersection of
all integer dilates aS with aS contained in S; it absorbs the parts of
S that a subgroup can never be forced to avoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .groups import FiniteAbelianGroup, GroupElement, SubgroupGens
from .model import SubsetS

IN_P = "in-P"
NP_COMPLETE = "NP-complete"


@dataclass(frozen=True)
class Classification:
    verdict: str
    reason: str  # empty-set | coset | two-element | non-coset | core-coset | core-non-coset
    base: Optional[GroupElement] = None
    subgroup: Optional[SubgroupGens] = None
    core: Optional[SubsetS] = None
    witness: Optional[Tuple[GroupElement, GroupElement, GroupElement]] = None
    difference: Optional[GroupElement] = None

    def describe(self) -> str:
        fmt = _element_formatter(self)
        if self.reason == "empty-set":
            return f"{self.verdict} (S is empty)"
        if self.reason == "coset":
            gens = ",".join(fmt(g) for g in self.subgroup.gens) or "0"
            return f"{self.verdict} (S is a coset: base {fmt(self.base)}, subgroup <{gens}>)"
        if self.reason == "two-element":
            return f"{self.verdict} (S not a coset; |S|=2, d={fmt(self.difference)})"
        if self.reason == "non-coset":
            s, a, b = self.witness
            return f"{self.verdict} (S not a coset; witness s={fmt(s)}, a={fmt(a)}, b={fmt(b)})"
        core = "{" + ",".join(fmt(e) for e in self.core.sorted_elements()) + "}"
        if self.reason == "core-coset":
            return f"{self.verdict} (dilation core {core} is a coset)"
        return f"{self.verdict} (dilation core {core} is not a coset)"


def _element_formatter(cls):
    def fmt(e):
        if len(e) == 1:
            return str(e[0])
        return "(" + ",".join(str(c) for c in e) + ")"
    return fmt


def is_coset(S: SubsetS):
    """(base, subgroup gens) if S - min(S) is subtraction-closed, else None."""
    if not S.elements:
        return None
    G = S.group
    base = min(S.elements)
    diffs = frozenset(G.sub(e, base) for e in S.elements)
    for x in diffs:
        for y in diffs:
            if G.sub(x, y) not in diffs:
                return None
    return base, SubgroupGens(G, tuple(sorted(diffs)))


def dilation_core(S: SubsetS) -> SubsetS:
    """Intersection of the dilates aS over all a with aS inside S."""
    G = S.group
    if not S.elements:
        return S
    core = None
    for a in range(G.exponent):
        dilated = frozenset(G.scale(a, e) for e in S.elements)
        if dilated <= S.elements:
            core = dilated if core is None else core & dilated
    assert core is not None  # a = 1 always qualifies
    return SubsetS(G, core)


def find_noncoset_witness(S: SubsetS):
    """Lexicographically smallest (s, a, b) with s, s+a, s+b in S,
    a != b, and s+a+b outside S; None means S is a coset."""
    if len(S) < 3:
        raise ValueError("witness search needs |S| >= 3")
    G = S.group
    everything = tuple(G.elements())
    for s in S.sorted_elements():
        for a in everything:
            if G.add(s, a) not in S:
                continue
            for b in everything:
                if b == a or G.add(s, b) not in S:
                    continue
                if G.add(G.add(s, a), b) not in S:
                    return s, a, b
    return None


def classify_affine(G: FiniteAbelianGroup, S: SubsetS) -> Classification:
    if S.group != G:
        raise ValueError("subset is over a different group")
    if not S.elements:
        return Classification(IN_P, "empty-set")
    hit = is_coset(S)
    if hit is not None:
        base, sub = hit
        return Classification(IN_P, "coset", base=base, subgroup=sub)
    if len(S) == 2:
        lo, hi = S.sorted_elements()
        return Classification(NP_COMPLETE, "two-element", difference=G.sub(hi, lo))
    witness = find_noncoset_witness(S)
    assert witness is not None  # closure of the witness predicate forces a coset
    return Classification(NP_COMPLETE, "non-coset", witness=witness)


def classify_homogeneous(G: FiniteAbelianGroup, S: SubsetS) -> Classification:
    if S.group != G:
        raise ValueError("subset is over a different group")
    if not S.elements:
        return Classification(IN_P, "empty-set")
    core = dilation_core(S)
    hit = is_coset(core)
    if hit is not None:
        base, sub = hit
        return Classification(IN_P, "core-coset", base=base, subgroup=sub, core=core)
    return Classification(NP_COMPLETE, "core-non-coset", core=core)
