"""Exact linear algebra over mixed moduli Z_{n_1} x ... x Z_{n_m}.

A :class:`ModularSystem` is a list of congruences

    sum_j A[i][j] * x_j  =  c[i]   (mod r_i),      x_j in Z_{m_j},

with independent row moduli r_i and column moduli m_j.  Well-formedness
requires A[i][j] * m_j = 0 mod r_i so that the left-hand side is a genuine
group homomorphism prod_j Z_{m_j} -> prod_i Z_{r_i}; every system arising
from exponent arithmetic of order-preserving maps satisfies this.

Solution counting goes through CRT reduction to prime components and Smith
normal form over the integers (plain GF(p) elimination on the common
all-prime fast path).  All arithmetic is exact; no randomization.
"""

from __future__ import annotations

from math import gcd


class ModlinError(ValueError):
    pass


class ModularSystem:
    __slots__ = ("a", "c", "row_moduli", "col_moduli")

    def __init__(self, a, c, row_moduli, col_moduli):
        a = [[int(v) for v in row] for row in a]
        c = [int(v) for v in c]
        row_moduli = [int(r) for r in row_moduli]
        col_moduli = [int(m) for m in col_moduli]
        if len(a) != len(c) or len(a) != len(row_moduli):
            raise ModlinError("row count mismatch between A, c, row_moduli")
        if any(len(row) != len(col_moduli) for row in a):
            raise ModlinError("column count mismatch between A and col_moduli")
        if any(r < 2 for r in row_moduli) or any(m < 2 for m in col_moduli):
            raise ModlinError("moduli must be >= 2")
        for i, row in enumerate(a):
            r = row_moduli[i]
            for j, v in enumerate(row):
                if (v * col_moduli[j]) % r != 0:
                    raise ModlinError(
                        f"entry A[{i}][{j}]={v} with x_{j} in Z_{col_moduli[j]} is "
                        f"not well-defined mod {r}"
                    )
            a[i] = [v % r for v in row]
            c[i] %= r
        self.a = a
        self.c = c
        self.row_moduli = row_moduli
        self.col_moduli = col_moduli

    @property
    def num_rows(self):
        return len(self.a)

    @property
    def num_cols(self):
        return len(self.col_moduli)

    def is_homogeneous(self):
        return all(v == 0 for v in self.c)

    def check(self, x) -> bool:
        """Exact verification of a candidate solution vector."""
        if len(x) != self.num_cols:
            return False
        if any(not (0 <= v < m) for v, m in zip(x, self.col_moduli)):
            return False
        for row, ci, ri in zip(self.a, self.c, self.row_moduli):
            if (sum(v * xi for v, xi in zip(row, x)) - ci) % ri != 0:
                return False
        return True


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(mat):
    """Return (d, u, v) with u @ mat @ v = diag(d), u and v unimodular.

    Standard pivot reduction: pick the smallest nonzero entry, reduce its
    row and column by division with remainder, repeat; then fix up the
    divisibility chain d_0 | d_1 | ...  Exact integer arithmetic throughout.
    """
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, k, q):  # row_i -= q * row_k
        m[i] = [a - q * b for a, b in zip(m[i], m[k])]
        u[i] = [a - q * b for a, b in zip(u[i], u[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for row in m:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        m[i], m[k] = m[k], m[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in m:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(rows, cols):
        # locate smallest nonzero entry in the trailing block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t]:  # remainder became the new, smaller pivot
                        swap_rows(t, i)
                    dirty = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j]:
                        swap_cols(t, j)
                    dirty = True
            if not dirty:
                break
        if m[t][t] < 0:
            m[t] = [-a for a in m[t]]
            u[t] = [-a for a in u[t]]
        t += 1

    # enforce the divisibility chain
    k = 0
    while k < min(rows, cols) and m[k][k]:
        k += 1
    for i in range(k - 1):
        for j in range(i + 1, k):
            if m[j][j] % m[i][i]:
                # fold d_j into the i-th pivot via one more reduction round
                col_op(i, j, -1)
                while True:
                    q = m[j][i] // m[i][i]
                    row_op(j, i, q)
                    if m[j][i] == 0:
                        break
                    swap_rows(i, j)
                q = m[i][j] // m[i][i]
                col_op(j, i, q)
                if m[i][j]:
                    swap_cols(i, j)
                    # re-clear the column below
                    while m[j][i]:
                        q = m[j][i] // m[i][i]
                        row_op(j, i, q)
                        if m[j][i]:
                            swap_rows(i, j)
                    q = m[i][j] // m[i][i]
                    col_op(j, i, q)
                if m[i][i] < 0:
                    m[i] = [-a for a in m[i]]
                    u[i] = [-a for a in u[i]]
                if m[j][j] < 0:
                    m[j] = [-a for a in m[j]]
                    u[j] = [-a for a in u[j]]
    d = [m[i][i] for i in range(min(rows, cols))]
    return d, u, v


# ---------------------------------------------------------------------------
# counting


def _prime_power_split(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _crt_components(system: ModularSystem):
    """Split into independent systems, one per prime dividing any modulus.

    Over the prime p, x_j contributes a Z_{p^aj} component (a_j = v_p(m_j));
    rows reduce mod p^{v_p(r_i)}.  Variables or rows with trivial p-part drop
    out.  Solution counts multiply across components.
    """
    primes = set()
    for n in system.row_moduli + system.col_moduli:
        primes.update(_prime_power_split(n))
    comps = []
    for p in sorted(primes):
        col_idx, col_mod = [], []
        for j, mj in enumerate(system.col_moduli):
            e = _prime_power_split(mj).get(p, 0)
            if e:
                col_idx.append(j)
                col_mod.append(p**e)
        row_idx, row_mod = [], []
        for i, ri in enumerate(system.row_moduli):
            e = _prime_power_split(ri).get(p, 0)
            if e:
                row_idx.append(i)
                row_mod.append(p**e)
        if not row_idx:
            comps.append((p, None, col_mod))  # free p-component
            continue
        a = [[system.a[i][j] % row_mod[ii] for j in col_idx] for ii, i in enumerate(row_idx)]
        c = [system.c[i] % row_mod[ii] for ii, i in enumerate(row_idx)]
        # entries on columns whose p-part is trivial act through a unit times
        # m_j; well-formedness makes them vanish mod the p-power row modulus
        # only when combined with the dropped Z_{m_j/p^a} range.  Re-derive:
        # x_j = CRT(y_p, y_rest) = y_p * t + ..., so the coefficient seen by
        # the p-component is A_ij * t with t = (m_j / p^a) * inv(...).
        for jj, j in enumerate(col_idx):
            mj = system.col_moduli[j]
            cofactor = mj // col_mod[jj]
            # multiplier taking the Z_{p^a} CRT coordinate back into Z_{m_j}
            t = cofactor * pow(cofactor, -1, col_mod[jj])
            for ii in range(len(row_idx)):
                a[ii][jj] = a[ii][jj] * t % row_mod[ii]
        dropped = [
            j
            for j in range(system.num_cols)
            if j not in col_idx or system.col_moduli[j] != col_mod[col_idx.index(j)]
        ]
        # columns with a nontrivial coprime part feed other primes only; their
        # contribution here is through t above, already folded in.
        _ = dropped
        comps.append((p, ModularSystem(a, c, row_mod, col_mod) if col_idx else
                      ModularSystem([[0] for _ in row_idx] if False else [[] for _ in row_idx], c, row_mod, []) if False else (a, c, row_mod, col_mod)))
    return comps


def _lattice_count(a, c, row_moduli, col_moduli):
    """Count solutions via SNF of [A | diag(r)] over the integers.

    The column span H of [A | diag(r)] inside Z^I has finite index
    prod(elementary divisors); the number of solutions in prod Z_{m_j} is
    prod(m_j) * [Z^I : H] / prod(r_i) when c lies in H mod diag(r), else 0.
    """
    nrows = len(a)
    ncols = len(col_moduli)
    if nrows == 0:
        prod = 1
        for m in col_moduli:
            prod *= m
        return prod
    mat = [list(row) + [row_moduli[i] if k == i else 0 for k in range(nrows)]
           for i, row in enumerate(a)]
    d, u, _v = smith_normal_form(mat)
    index = 1
    for val in d:
        index *= val
    if index == 0:
        raise ModlinError("diag(r) block should force full row rank")
    # feasibility: solve S w = u c
    uc = [sum(u[i][k] * c[k] for k in range(nrows)) for i in range(nrows)]
    for i in range(nrows):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if uc[i] != 0:
                return 0
        elif uc[i] % di != 0:
            return 0
    prod = 1
    for m in col_moduli:
        prod *= m
    total = prod * index
    for r in row_moduli:
        assert total % r == 0
        total //= r
    return total


def _gf_p_count(a, c, p, ncols):
    """Solution count over GF(p): p^(ncols - rank) if consistent, else 0."""
    rows = [[v % p for v in row] + [ci % p] for row, ci in zip(a, c)]
    rank = 0
    ncols_aug = ncols + 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    for i in range(rank, len(rows)):
        if rows[i][ncols_aug - 1]:
            return 0
    if any(any(rows[i][:ncols]) == 0 and rows[i][ncols] for i in range(rank)):
        return 0
    return p ** (ncols - rank)


def count_solutions(system: ModularSystem) -> int:
    """Exact number of solution vectors of the system.

    Multiplicative across CRT-independent prime components; each component
    is counted by GF(p) elimination when all its moduli are the bare prime,
    and by integer Smith normal form otherwise.
    """
    total = 1
    for comp in _crt_components(system):
        p = comp[0]
        if comp[1] is None:  # free component: no constraints at this prime
            for m in comp[2]:
                total *= m
            continue
        a, c, row_mod, col_mod = comp[1]
        if not col_mod:
            if any(ci % ri for ci, ri in zip(c, row_mod)):
                return 0
            continue
        if all(r == p for r in row_mod) and all(m == p for m in col_mod):
            total *= _gf_p_count(a, c, p, len(col_mod))
        else:
            total *= _lattice_count(a, c, row_mod, col_mod)
        if total == 0:
            return 0
    return total


# ---------------------------------------------------------------------------
# solving and kernels


def _snf_solve(a, c, row_moduli, col_moduli):
    """One solution of the lifted integer system, or None."""
    nrows = len(a)
    ncols = len(col_moduli)
    mat = [list(row) + [row_moduli[i] if k == i else 0 for k in range(nrows)]
           for i, row in enumerate(a)]
    d, u, v = smith_normal_form(mat)
    uc = [sum(u[i][k] * c[k] for k in range(nrows)) for i in range(nrows)]
    w = [0] * (ncols + nrows)
    for i in range(nrows):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if uc[i]:
                return None
        else:
            if uc[i] % di:
                return None
            w[i] = uc[i] // di
    full = [sum(v[j][k] * w[k] for k in range(ncols + nrows)) for j in range(ncols + nrows)]
    return [full[j] % col_moduli[j] for j in range(ncols)]


def solve(system: ModularSystem):
    """Any particular solution (list of ints, reduced), or None if infeasible."""
    if system.num_rows == 0:
        return [0] * system.num_cols
    x = _snf_solve(system.a, system.c, system.row_moduli, system.col_moduli)
    if x is None:
        return None
    assert system.check(x)
    return x


def kernel_basis(system: ModularSystem):
    """Generators of the solution group of the homogeneous system.

    The generated subgroup of prod Z_{m_j} has order equal to
    count_solutions of the homogeneous system.
    """
    if not system.is_homogeneous():
        raise ModlinError("kernel_basis needs a homogeneous system (c = 0)")
    nrows, ncols = system.num_rows, system.num_cols
    if nrows == 0:
        return [
            [1 if j == k else 0 for j in range(ncols)] for k in range(ncols)
        ]
    mat = [list(row) + [system.row_moduli[i] if k == i else 0 for k in range(nrows)]
           for i, row in enumerate(system.a)]
    d, _u, v = smith_normal_form(mat)
    rank = sum(1 for val in d if val)
    gens = []
    seen = set()
    total_cols = ncols + nrows
    for k in range(rank, total_cols):
        g = tuple(v[j][k] % system.col_moduli[j] for j in range(ncols))
        if any(g) and g not in seen:
            seen.add(g)
            gens.append(list(g))
    # the box relations m_j e_j are kernel elements too, but reduce to zero
    # mod the column moduli, so nothing to add
    return gens


def subgroup_order(generators, moduli) -> int:
    """Order of the subgroup of prod Z_{m_j} generated by the given vectors.

    Computed as T^k / #{t : sum t_i g_i = 0}, with each coefficient t_i
    ranging over Z_T, T = lcm of the moduli (a common annihilator).
    """
    gens = [list(g) for g in generators if any(v % m for v, m in zip(g, moduli))]
    if not gens:
        return 1
    t_mod = 1
    for m in moduli:
        t_mod = t_mod * m // gcd(t_mod, m)
    a = [[g[j] for g in gens] for j in range(len(moduli))]
    sys0 = ModularSystem(
        a, [0] * len(moduli), row_moduli=list(moduli), col_moduli=[t_mod] * len(gens)
    )
    ker = count_solutions(sys0)
    order = t_mod ** len(gens) // ker
    return order
