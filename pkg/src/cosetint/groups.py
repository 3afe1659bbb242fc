"""Finite abelian groups as tuples of cyclic moduli, plus exact integer linear algebra.

A group is a product Z/d_1 x ... x Z/d_k; an element is a tuple of ints with
coordinate i reduced mod d_i.  Every structural computation here (membership,
kernels, quotients, intersections, abstract presentations) routes through one
Smith normal form routine so determinism lives in a single place.

Moduli equal to 1 are tolerated internally (they describe trivial coordinates);
the serialization layer is stricter and only accepts factors >= 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as _iproduct
from typing import Iterator, List, Optional, Sequence, Tuple

GroupElement = Tuple[int, ...]
Matrix = List[List[int]]

# intermediate matrix entries must stay within signed 64-bit range so results
# stay portable to fixed-width implementations
INT_BOUND = 2**63 - 1


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d_1 x ... x Z/d_k with elements as reduced coordinate tuples."""

    moduli: Tuple[int, ...]

    def __post_init__(self):
        mods = tuple(int(d) for d in self.moduli)
        if any(d < 1 for d in mods):
            raise ValueError("moduli must be positive integers")
        object.__setattr__(self, "moduli", mods)

    @cached_property
    def dim(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return math.prod(self.moduli)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.moduli)

    def zero(self) -> GroupElement:
        return (0,) * self.dim

    def reduce(self, x: Sequence[int]) -> GroupElement:
        if len(x) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(x)}")
        return tuple(int(v) % d for v, d in zip(x, self.moduli))

    def contains(self, x) -> bool:
        return len(x) == self.dim and all(
            isinstance(v, int) and 0 <= v < d for v, d in zip(x, self.moduli)
        )

    def add(self, x, y) -> GroupElement:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.moduli))

    def sub(self, x, y) -> GroupElement:
        return tuple((a - b) % d for a, b, d in zip(x, y, self.moduli))

    def neg(self, x) -> GroupElement:
        return tuple((-a) % d for a, d in zip(x, self.moduli))

    def scale(self, c: int, x) -> GroupElement:
        return tuple((c * a) % d for a, d in zip(x, self.moduli))

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic order.  Only sane for small groups."""
        return _iproduct(*(range(d) for d in self.moduli))

    def element_order(self, x) -> int:
        return math.lcm(*(d // math.gcd(d, a) for a, d in zip(x, self.moduli)))

    def index_of(self, x) -> int:
        """Mixed-radix rank of an element, first coordinate most significant."""
        idx = 0
        for a, d in zip(x, self.moduli):
            idx = idx * d + a
        return idx

    def element_at(self, idx: int) -> GroupElement:
        coords = []
        for d in reversed(self.moduli):
            coords.append(idx % d)
            idx //= d
        return tuple(reversed(coords))

    def power(self, t: int) -> "FiniteAbelianGroup":
        if t < 0:
            raise ValueError("power must be nonnegative")
        return FiniteAbelianGroup(self.moduli * t)


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(mat: Sequence[Sequence[int]]):
    """Return (U, D, V) with U*mat*V == D diagonal and d_i | d_{i+1}.

    U and V are unimodular.  Deterministic: the pivot is the entry of smallest
    nonzero absolute value in the remaining submatrix, ties broken by lowest
    row-major position.  Raises OverflowError if an intermediate entry leaves
    the signed 64-bit range.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    A = [[int(v) for v in row] for row in mat]
    for row in A:
        if len(row) != n:
            raise ValueError("ragged matrix")
    U = _identity(m)
    V = _identity(n)

    def guard(*rows):
        for row in rows:
            for v in row:
                if v > INT_BOUND or v < -INT_BOUND:
                    raise OverflowError("matrix entry left the signed 64-bit range")

    def row_add(dst, src, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        guard(A[dst], U[dst])

    def col_add(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]
        guard([row[dst] for row in A], [row[dst] for row in V])

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            row_swap(k, pi)
        if pj != k:
            col_swap(k, pj)
        if A[k][k] < 0:
            row_neg(k)
        while True:
            # Euclid in place; swaps keep the pivot positive and shrinking
            for i in range(k + 1, m):
                while A[i][k]:
                    row_add(i, k, -(A[i][k] // A[k][k]))
                    if A[i][k]:
                        row_swap(i, k)
            for j in range(k + 1, n):
                while A[k][j]:
                    col_add(j, k, -(A[k][j] // A[k][k]))
                    if A[k][j]:
                        col_swap(k, j)
            if any(A[i][k] for i in range(k + 1, m)):
                continue  # a column swap disturbed the cleared column
            d = A[k][k]
            bad = next(
                (
                    i
                    for i in range(k + 1, m)
                    for j in range(k + 1, n)
                    if A[i][j] % d
                ),
                None,
            )
            if bad is None:
                break
            row_add(k, bad, 1)  # pull a non-divisible entry into the pivot row
    return U, A, V


def _balanced(v: int, M: int) -> int:
    r = v % M
    return r - M if r > M // 2 else r


def _diagonalize_mod(mat: Sequence[Sequence[int]], M: int):
    """Diagonalize working mod M: returns (U, D, V) with U*mat*V == D (mod M).

    Valid for systems whose column lattice contains M * Z^rows (true for every
    moduli-augmented matrix, since M is a multiple of each modulus).  All
    entries stay balanced-reduced mod M, so intermediate values never grow;
    this is what keeps high-dimensional membership computations inside 64-bit
    range.  No divisibility chain is enforced; callers use the diagonal only.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    half = M // 2
    A = [[v - M if (v := int(x) % M) > half else v for x in row] for row in mat]
    U = _identity(m)
    VT = _identity(n)  # V stored as columns; balanced reductions are inlined for speed

    def row_add(dst, src, c):
        A[dst] = [v - M if (v := (a + c * b) % M) > half else v for a, b in zip(A[dst], A[src])]
        U[dst] = [v - M if (v := (a + c * b) % M) > half else v for a, b in zip(U[dst], U[src])]

    def col_add(dst, src, c):
        for row in A:
            v = (row[dst] + c * row[src]) % M
            row[dst] = v - M if v > half else v
        VT[dst] = [v - M if (v := (a + c * b) % M) > half else v
                   for a, b in zip(VT[dst], VT[src])]

    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            A[k], A[pi] = A[pi], A[k]
            U[k], U[pi] = U[pi], U[k]
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
            VT[k], VT[pj] = VT[pj], VT[k]
        if A[k][k] < 0:
            A[k] = [-a for a in A[k]]
            U[k] = [-a for a in U[k]]
        while True:
            for i in range(k + 1, m):
                while A[i][k]:
                    row_add(i, k, -(A[i][k] // A[k][k]))
                    if A[i][k]:
                        A[i], A[k] = A[k], A[i]
                        U[i], U[k] = U[k], U[i]
            for j in range(k + 1, n):
                while A[k][j]:
                    col_add(j, k, -(A[k][j] // A[k][k]))
                    if A[k][j]:
                        for row in A:
                            row[k], row[j] = row[j], row[k]
                        VT[k], VT[j] = VT[j], VT[k]
            if not any(A[i][k] for i in range(k + 1, m)):
                break
    V = [[VT[j][i] for j in range(n)] for i in range(n)]
    return U, A, V


def solve_linear_congruence(
    mat: Sequence[Sequence[int]],
    rhs: Sequence[int],
    moduli: Sequence[int],
) -> Optional[List[int]]:
    """Solve mat @ x == rhs where row i is a congruence mod moduli[i].

    Returns one integer solution with entries reduced mod lcm(moduli), or None
    when the system is infeasible.  An empty matrix means no constraints and
    yields the empty solution.  Implemented by augmenting the matrix with the
    diagonal of the moduli and diagonalizing; arithmetic is carried out mod
    lcm(moduli), which is exact for such moduli-periodic systems.
    """
    m = len(moduli)
    if len(mat) != m or len(rhs) != m:
        raise ValueError("row count mismatch")
    if any(d < 1 for d in moduli):
        raise ValueError("moduli must be positive")
    n = len(mat[0]) if mat else 0
    M = math.lcm(*moduli)
    aug = [
        list(mat[i]) + [moduli[i] if j == i else 0 for j in range(m)]
        for i in range(m)
    ]
    U, D, V = _diagonalize_mod(aug, M)
    b = [v % M for v in rhs]
    c = [sum(U[i][j] * b[j] for j in range(m)) % M for i in range(m)]
    w = [0] * (n + m)
    for i in range(m):
        d = D[i][i] % M
        g = math.gcd(d, M)
        if c[i] % g:
            return None
        if M // g > 1:
            s = pow((d // g) % (M // g), -1, M // g)
            w[i] = (c[i] // g) * s % (M // g)
    return [sum(V[i][j] * w[j] for j in range(n + m)) % M for i in range(n)]


@dataclass(frozen=True)
class SubgroupGens:
    """A subgroup of `group` presented by a tuple of generators."""

    group: FiniteAbelianGroup
    gens: Tuple[GroupElement, ...]

    def __post_init__(self):
        gens = tuple(self.group.reduce(g) for g in self.gens)
        object.__setattr__(self, "gens", gens)


@dataclass(frozen=True)
class Homomorphism:
    """Group hom source -> target given by an integer matrix on coordinates.

    matrix has target.dim rows and source.dim columns; column j is the image
    of the j-th standard generator of the source.  Well-definedness (every
    source relation maps to zero) is checked at construction.
    """

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.matrix)
        if len(rows) != self.target.dim or any(
            len(r) != self.source.dim for r in rows
        ):
            raise ValueError("matrix shape does not match source/target dims")
        object.__setattr__(self, "matrix", rows)
        for j, d in enumerate(self.source.moduli):
            for i, e in enumerate(self.target.moduli):
                if (d * rows[i][j]) % e:
                    raise ValueError("matrix does not define a homomorphism")

    def apply(self, x: Sequence[int]) -> GroupElement:
        if len(x) != self.source.dim:
            raise ValueError("element length does not match source dim")
        return tuple(
            sum(row[j] * x[j] for j in range(self.source.dim)) % e
            for row, e in zip(self.matrix, self.target.moduli)
        )

    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        return all(
            (v - (1 if i == j else 0)) % self.target.moduli[i] == 0
            for i, row in enumerate(self.matrix)
            for j, v in enumerate(row)
        )


def standard_gens(G: FiniteAbelianGroup) -> Tuple[GroupElement, ...]:
    """One generator per nontrivial coordinate."""
    return tuple(
        tuple(1 if i == j else 0 for j in range(G.dim))
        for i in range(G.dim)
        if G.moduli[i] > 1
    )


def scaling_hom(G: FiniteAbelianGroup, c: int) -> Homomorphism:
    """Multiplication by c as a homomorphism G -> G."""
    mat = tuple(
        tuple(c if i == j else 0 for j in range(G.dim)) for i in range(G.dim)
    )
    return Homomorphism(G, G, mat)


def subgroup_membership(sub: SubgroupGens, x: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Coefficients lam with sum(lam_j * gens_j) == x, or None if x is outside."""
    G = sub.group
    x = G.reduce(x)
    if G.dim == 0:
        return (0,) * len(sub.gens)
    mat = [[g[i] for g in sub.gens] for i in range(G.dim)]
    sol = solve_linear_congruence(mat, list(x), list(G.moduli))
    return None if sol is None else tuple(sol)


def kernel_of_hom(hom: Homomorphism) -> SubgroupGens:
    """Generators of the kernel of hom inside its source group."""
    G, T = hom.source, hom.target
    n, mt = G.dim, T.dim
    M = T.exponent
    if mt == 0 or M == 1:
        return SubgroupGens(G, standard_gens(G))
    aug = [
        list(hom.matrix[i]) + [T.moduli[i] if j == i else 0 for j in range(mt)]
        for i in range(mt)
    ]
    U, D, V = _diagonalize_mod(aug, M)
    gens = []
    for j in range(n + mt):
        # column j of V spans kernel directions once scaled by the annihilator
        # of the corresponding diagonal entry (columns past the diagonal are
        # free and enter unscaled)
        mult = M // math.gcd(D[j][j] % M, M) if j < mt else 1
        g = G.reduce([V[i][j] * mult for i in range(n)])
        if any(g):
            gens.append(g)
    return SubgroupGens(G, tuple(dict.fromkeys(gens)))


def subgroup_intersect(h1: SubgroupGens, h2: SubgroupGens) -> SubgroupGens:
    """Generators of the intersection of two subgroups of the same group."""
    if h1.group != h2.group:
        raise ValueError("subgroups live in different groups")
    G = h1.group
    n1 = len(h1.gens)
    L = G.exponent
    src = FiniteAbelianGroup((L,) * (n1 + len(h2.gens)))
    cols = list(h1.gens) + [G.neg(g) for g in h2.gens]
    mat = tuple(tuple(c[i] for c in cols) for i in range(G.dim))
    ker = kernel_of_hom(Homomorphism(src, G, mat))
    gens = []
    for lam in ker.gens:
        g = G.zero()
        for c, h in zip(lam[:n1], h1.gens):
            g = G.add(g, G.scale(c, h))
        if any(g):
            gens.append(g)
    return SubgroupGens(G, tuple(dict.fromkeys(gens)))


def subgroup_enumerate(sub: SubgroupGens, cap: Optional[int] = 100000):
    """All elements of the generated subgroup, sorted; None if more than cap."""
    G = sub.group
    seen = {G.zero()}
    frontier = [G.zero()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in sub.gens:
                y = G.add(x, g)
                if y not in seen:
                    seen.add(y)
                    if cap is not None and len(seen) > cap:
                        return None
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def subgroup_reduce_gens(sub: SubgroupGens) -> SubgroupGens:
    """Drop generators already in the span of the kept ones (greedy, in order)."""
    kept: List[GroupElement] = []
    for g in sub.gens:
        if subgroup_membership(SubgroupGens(sub.group, tuple(kept)), g) is None:
            kept.append(g)
    return SubgroupGens(sub.group, tuple(kept))


@dataclass(frozen=True)
class QuotientMap:
    """Quotient G/K with its projection hom and a deterministic lift.

    `group` is the quotient in canonical form (moduli form a divisibility
    chain, factors >= 2).  `lift` picks the lexicographically smallest
    preimage, so lifting is reproducible.
    """

    group: FiniteAbelianGroup
    proj: Homomorphism
    kernel_elements: Tuple[GroupElement, ...]

    def lift(self, q: Sequence[int]) -> GroupElement:
        G = self.proj.source
        q = self.group.reduce(q)
        if G.dim == 0 or self.group.dim == 0:
            base = G.zero()
        else:
            x0 = solve_linear_congruence(
                [list(r) for r in self.proj.matrix], list(q), list(self.group.moduli)
            )
            if x0 is None:  # proj is surjective, so this cannot happen
                raise ValueError("element is not in the quotient's image")
            base = G.reduce(x0)
        return min(G.add(base, k) for k in self.kernel_elements)


def quotient_group(G: FiniteAbelianGroup, kernel: SubgroupGens) -> QuotientMap:
    """Canonical quotient of G by the subgroup generated by `kernel`."""
    if kernel.group != G:
        raise ValueError("kernel lives in a different group")
    k = G.dim
    if k == 0:
        Q = FiniteAbelianGroup(())
        return QuotientMap(Q, Homomorphism(G, Q, ()), ((),))
    cols = list(kernel.gens)
    aug = [
        [c[i] for c in cols] + [G.moduli[i] if j == i else 0 for j in range(k)]
        for i in range(k)
    ]
    U, D, V = smith_normal_form(aug)
    assert all(D[i][i] >= 1 for i in range(k)), "relation lattice must be full rank"
    kept = [i for i in range(k) if D[i][i] >= 2]
    qmod = tuple(D[i][i] for i in kept)
    Q = FiniteAbelianGroup(qmod)
    pmat = tuple(
        tuple(U[i][j] % qmod[r] for j in range(k)) for r, i in enumerate(kept)
    )
    proj = Homomorphism(G, Q, pmat)
    elems = subgroup_enumerate(kernel, cap=None)
    return QuotientMap(Q, proj, tuple(elems))


def _unimodular_inverse(M: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(M)
    aug = [
        [Fraction(v) for v in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(M)
    ]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = []
    for row in aug:
        assert all(v.denominator == 1 for v in row[n:]), "matrix is not unimodular"
        inv.append([int(v) for v in row[n:]])
    return inv


def subgroup_abstract(sub: SubgroupGens):
    """Present the generated subgroup abstractly.

    Returns (A, emb) where A is a finite abelian group with canonical moduli
    and emb: A -> ambient is an injective hom whose image is the subgroup.
    """
    G = sub.group
    # redundant generators only inflate the relation matrix; drop them first
    gens = subgroup_reduce_gens(sub).gens
    n = len(gens)
    if n == 0:
        A = FiniteAbelianGroup(())
        return A, Homomorphism(A, G, tuple(() for _ in range(G.dim)))
    L = G.exponent
    src = FiniteAbelianGroup((L,) * n)
    mat = tuple(tuple(g[i] for g in gens) for i in range(G.dim))
    rel = list(kernel_of_hom(Homomorphism(src, G, mat)).gens)
    # the full relation lattice includes the ambient exponent on every slot
    cols = [list(r) for r in rel] + [
        [L if i == j else 0 for i in range(n)] for j in range(n)
    ]
    relmat = [[col[i] for col in cols] for i in range(n)]
    U, D, V = smith_normal_form(relmat)
    assert all(D[i][i] >= 1 for i in range(n)), "relation lattice must be full rank"
    kept = [i for i in range(n) if D[i][i] >= 2]
    Uinv = _unimodular_inverse(U)
    emb_cols = []
    for i in kept:
        img = G.zero()
        for r in range(n):
            img = G.add(img, G.scale(Uinv[r][i], gens[r]))
        emb_cols.append(img)
    A = FiniteAbelianGroup(tuple(D[i][i] for i in kept))
    emb = Homomorphism(
        A, G, tuple(tuple(col[r] for col in emb_cols) for r in range(G.dim))
    )
    return A, emb


def hom_preimage(hom: Homomorphism, y: Sequence[int]) -> Optional[GroupElement]:
    """Some source element mapping to y under hom, or None."""
    T = hom.target
    y = T.reduce(y)
    if T.dim == 0:
        return hom.source.zero()
    sol = solve_linear_congruence(
        [list(r) for r in hom.matrix], list(y), list(T.moduli)
    )
    return None if sol is None else hom.source.reduce(sol)
