"""Finite Abelian groups, their characters, automorphisms, and 2-cocycle data.

A group is fixed as an ordered list of cyclic factor orders ``[n_0, n_1, ...]``.
Elements and characters are exponent vectors reduced mod the factor orders.
Automorphisms are integer matrices acting on exponent vectors; cocycle classes
are the type-II pairings t_{jk} between distinct cyclic factors, which present
H^2(G, U(1)) completely once the factor decomposition is fixed.

Everything here is an immutable value; all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class GroupError(ValueError):
    pass


class FiniteAbelianGroup:
    """Direct product of cyclic groups Z_{n_0} x Z_{n_1} x ... (each n_j >= 2)."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        factors = tuple(int(n) for n in factors)
        if not factors:
            raise GroupError("group needs at least one cyclic factor")
        if any(n < 2 for n in factors):
            raise GroupError(f"cyclic factor orders must be >= 2, got {factors}")
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, *a):
        raise AttributeError("FiniteAbelianGroup is immutable")

    @property
    def order(self) -> int:
        p = 1
        for n in self.factors:
            p *= n
        return p

    @property
    def num_factors(self) -> int:
        return len(self.factors)

    def identity(self) -> "GroupElement":
        return GroupElement(self, [0] * len(self.factors))

    def generator(self, j: int) -> "GroupElement":
        exps = [0] * len(self.factors)
        exps[j] = 1
        return GroupElement(self, exps)

    def dual_generator(self, j: int) -> "Character":
        exps = [0] * len(self.factors)
        exps[j] = 1
        return Character(self, exps)

    def elements(self):
        """Iterate over all |G| elements (only sensible for small groups)."""
        idx = [0] * len(self.factors)
        while True:
            yield GroupElement(self, idx)
            for j in range(len(idx)):
                idx[j] += 1
                if idx[j] < self.factors[j]:
                    break
                idx[j] = 0
            else:
                return

    def characters(self):
        for g in self.elements():
            yield Character(self, g.exps)

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.factors)})"

    def __str__(self):
        return " x ".join(f"Z{n}" for n in self.factors)


class _ExpVector:
    """Shared behaviour of exponent-vector values (group elements, characters)."""

    __slots__ = ("group", "exps")

    def __init__(self, group: FiniteAbelianGroup, exps):
        exps = tuple(int(e) % n for e, n in zip(exps, group.factors, strict=True))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "exps", exps)

    def __setattr__(self, *a):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _check_same(self, other):
        if type(other) is not type(self):
            raise GroupError(f"expected {type(self).__name__}, got {type(other).__name__}")
        if other.group != self.group:
            raise GroupError(f"mismatched groups {self.group} vs {other.group}")

    def __add__(self, other):
        self._check_same(other)
        return type(self)(self.group, [a + b for a, b in zip(self.exps, other.exps)])

    def __neg__(self):
        return type(self)(self.group, [-a for a in self.exps])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return type(self)(self.group, [k * a for a in self.exps])

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return all(a == 0 for a in self.exps)

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.group == self.group
            and other.exps == self.exps
        )

    def __hash__(self):
        return hash((type(self).__name__, self.group, self.exps))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.group.factors)}, {list(self.exps)})"


class GroupElement(_ExpVector):
    """g in G as an exponent vector over the cyclic factors."""

    def order(self) -> int:
        o = 1
        for e, n in zip(self.exps, self.group.factors):
            o = o * (n // gcd(n, e if e else n)) // gcd(o, n // gcd(n, e if e else n))
        return o


class Character(_ExpVector):
    """Element of the dual group: value on the factor-j generator is e^{2 pi i exps[j]/n_j}."""


def compose_elements(g: GroupElement, h: GroupElement) -> GroupElement:
    """Componentwise sum mod the factor orders."""
    return g + h


def evaluate_character(x: Character, g: GroupElement) -> Fraction:
    """Phase exponent of x(g): returns sum_j x_j g_j / n_j reduced mod 1."""
    if not isinstance(g, GroupElement):
        raise GroupError(f"expected GroupElement, got {type(g).__name__}")
    if x.group != g.group:
        raise GroupError(f"mismatched groups {x.group} vs {g.group}")
    total = Fraction(0)
    for xj, gj, nj in zip(x.exps, g.exps, x.group.factors):
        total += Fraction(xj * gj, nj)
    return total % 1


class GroupAutomorphism:
    """Automorphism of G given by an integer matrix on exponent vectors.

    Entry M[j][k] is the factor-j exponent of the image of the factor-k
    generator.  Validity requires the congruences M[j][k] * n_k = 0 mod n_j
    (so the matrix defines a homomorphism) plus the existence of an integer
    inverse matrix under the same congruence structure; the inverse is found
    constructively in :func:`invert_automorphism`.
    """

    __slots__ = ("group", "matrix")

    def __init__(self, group: FiniteAbelianGroup, matrix):
        m = len(group.factors)
        rows = tuple(tuple(int(v) for v in row) for row in matrix)
        if len(rows) != m or any(len(r) != m for r in rows):
            raise GroupError(f"automorphism matrix must be {m}x{m}")
        rows = tuple(
            tuple(v % group.factors[j] for v in row) for j, row in enumerate(rows)
        )
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "matrix", rows)
        if not _is_homomorphism_matrix(group, rows):
            raise GroupError(f"matrix {matrix} violates homomorphism congruences for {group}")

    def __setattr__(self, *a):
        raise AttributeError("GroupAutomorphism is immutable")

    def __call__(self, g: GroupElement) -> GroupElement:
        if g.group != self.group:
            raise GroupError("element from a different group")
        n = self.group.num_factors
        return GroupElement(
            self.group,
            [sum(self.matrix[j][k] * g.exps[k] for k in range(n)) for j in range(n)],
        )

    def dual(self) -> "list[list[int]]":
        """Matrix of the dual map on characters: (phi^* x)(g) = x(phi(g)).

        Entry [k][j] is n_k * M[j][k] / n_j, integral by the homomorphism
        congruences.
        """
        ns = self.group.factors
        m = self.group.num_factors
        return [
            [(ns[k] * self.matrix[j][k]) // ns[j] % ns[k] for j in range(m)]
            for k in range(m)
        ]

    def __eq__(self, other):
        return (
            isinstance(other, GroupAutomorphism)
            and other.group == self.group
            and other.matrix == self.matrix
        )

    def __hash__(self):
        return hash((self.group, self.matrix))

    def __repr__(self):
        return f"GroupAutomorphism({self.group!r}, {[list(r) for r in self.matrix]})"


def _is_homomorphism_matrix(group, matrix) -> bool:
    ns = group.factors
    m = len(ns)
    return all(
        (matrix[j][k] * ns[k]) % ns[j] == 0 for j in range(m) for k in range(m)
    )


def _matmul_mod(group, a, b):
    m = group.num_factors
    ns = group.factors
    return tuple(
        tuple(sum(a[j][i] * b[i][k] for i in range(m)) % ns[j] for k in range(m))
        for j in range(m)
    )


def is_valid_automorphism(group: FiniteAbelianGroup, matrix) -> bool:
    """True iff the matrix defines an invertible homomorphism of the group."""
    try:
        phi = GroupAutomorphism(group, matrix)
    except GroupError:
        return False
    return invert_automorphism(phi) is not None


def invert_automorphism(phi: GroupAutomorphism):
    """Constructively invert, returning None when no two-sided inverse exists.

    Solves M * M' = I columnwise as a modular linear system; rejects
    candidate inverses that fail the homomorphism congruences or the
    two-sided identity check.
    """
    from . import modlin

    group = phi.group
    ns = group.factors
    m = group.num_factors
    ident = tuple(tuple(1 if j == k else 0 for k in range(m)) for j in range(m))
    cols = []
    for k in range(m):
        # unknown column x with M x = e_k (mod n_j rowwise), x_j in Z_{n_j}
        a = [list(row) for row in phi.matrix]
        rhs = [1 if j == k else 0 for j in range(m)]
        sol = modlin.solve(
            modlin.ModularSystem(a, rhs, row_moduli=list(ns), col_moduli=list(ns))
        )
        if sol is None:
            return None
        cols.append(sol)
    inv = tuple(tuple(cols[k][j] for k in range(m)) for j in range(m))
    if not _is_homomorphism_matrix(group, inv):
        return None
    if _matmul_mod(group, phi.matrix, inv) != ident:
        return None
    if _matmul_mod(group, inv, phi.matrix) != ident:
        return None
    return GroupAutomorphism(group, inv)


class CocycleClass:
    """Type-II 2-cocycle data: pairing t_{jk} mod gcd(n_j, n_k) for j < k."""

    __slots__ = ("group", "pairing")

    def __init__(self, group: FiniteAbelianGroup, pairing=None):
        """``pairing`` maps (j, k) with j < k to an integer; missing pairs are 0."""
        ns = group.factors
        m = len(ns)
        data = {}
        for (j, k), t in (pairing or {}).items():
            if not (0 <= j < k < m):
                raise GroupError(f"cocycle pair ({j},{k}) out of range for {m} factors")
            t = int(t) % gcd(ns[j], ns[k])
            if t:
                data[(j, k)] = t
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "pairing", tuple(sorted(data.items())))

    def __setattr__(self, *a):
        raise AttributeError("CocycleClass is immutable")

    def get(self, j: int, k: int) -> int:
        for (a, b), t in self.pairing:
            if (a, b) == (j, k):
                return t
        return 0

    def is_trivial(self) -> bool:
        return not self.pairing

    def __eq__(self, other):
        return (
            isinstance(other, CocycleClass)
            and other.group == self.group
            and other.pairing == self.pairing
        )

    def __hash__(self):
        return hash((self.group, self.pairing))

    def __repr__(self):
        return f"CocycleClass({self.group!r}, {dict(self.pairing)})"


def slant_product(omega: CocycleClass, j: int) -> Character:
    """Character picked up by the domain-wall dressing of the factor-j shift.

    For the type-II pairing t_{jk} the slant with the factor-j generator has
    exponent t_{jk} * n_k / gcd(n_j, n_k) on each factor k > j paired with j,
    exponent -t_{kj} * n_k / gcd on each factor k < j, and zero on factor j.
    """
    group = omega.group
    ns = group.factors
    if not (0 <= j < len(ns)):
        raise GroupError(f"factor index {j} out of range")
    exps = [0] * len(ns)
    for k in range(len(ns)):
        if k == j:
            continue
        d = gcd(ns[j], ns[k])
        if k > j:
            exps[k] = omega.get(j, k) * (ns[k] // d)
        else:
            exps[k] = -omega.get(k, j) * (ns[k] // d)
    return Character(group, exps)


def prime_split(group: FiniteAbelianGroup) -> dict:
    """Prime factorization of each cyclic factor: prime -> per-factor multiplicities.

    The concatenated multiset over all factors is the prime factorization
    of |G|.
    """
    out: dict[int, list[int]] = {}
    for j, n in enumerate(group.factors):
        rest = n
        p = 2
        while p * p <= rest:
            while rest % p == 0:
                out.setdefault(p, [0] * group.num_factors)[j] += 1
                rest //= p
            p += 1
        if rest > 1:
            out.setdefault(rest, [0] * group.num_factors)[j] += 1
    return {p: mults for p, mults in sorted(out.items())}
