"""
Independent reference computations used by the tests. Nothing here imports the
engine's algebra; each oracle works from first principles on plain data.
"""

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple


def axioms_hold(carrier: Sequence[str], zero: str, table: Dict[Tuple[str, str], str]) -> bool:
    """Brute-force unit, commutativity and associativity scan over a full directed table."""
    for m in carrier:
        if table.get((zero, m)) != m or table.get((m, zero)) != m:
            return False
    for a, b in itertools.product(carrier, repeat=2):
        if table.get((a, b)) != table.get((b, a)):
            return False
    for a, b, c in itertools.product(carrier, repeat=3):
        bc = table.get((b, c))
        if bc is None or (a, bc) not in table:
            continue
        ab = table.get((a, b))
        if ab is None or table.get((ab, c)) != table[(a, bc)]:
            return False
    return True


def reduction_results(table: Dict[Tuple[str, str], str], items: Tuple[str, ...]) -> FrozenSet[Optional[str]]:
    """Values reached by every order of pairwise sums; None marks an order that gets stuck."""

    @lru_cache(maxsize=None)
    def explore(multiset: Tuple[str, ...]) -> FrozenSet[Optional[str]]:
        if len(multiset) == 1:
            return frozenset(multiset)
        found = set()
        for i, j in itertools.combinations(range(len(multiset)), 2):
            s = table.get((multiset[i], multiset[j]))
            if s is None:
                found.add(None)
                continue
            rest = tuple(sorted(multiset[:i] + multiset[i + 1:j] + multiset[j + 1:] + (s,)))
            found |= explore(rest)
        return frozenset(found)

    return explore(tuple(sorted(items)))


def sphere_level_size(n: int, k: int) -> int:
    """Basepoint plus the monotone surjections [k] -> [n]."""
    return 1 + comb(k, n)


def multiset_count(cells: int, bound: int) -> int:
    """Multisets of size <= bound drawn from `cells` points (orbits of SP^bound on one level)."""
    return sum(comb(cells + s - 1, s) for s in range(bound + 1))


def cyclic_group_homology(q: int, through: int) -> List[str]:
    """
    H_*(Z/q) from the periodic resolution: tensored with Z the differentials are
    multiplication by 0 (odd degrees) and q (even degrees >= 2).
    """
    def differential(k: int) -> int:
        if k == 0:
            return 0
        return 0 if k % 2 else q

    groups = []
    for k in range(through + 1):
        kernel = 1 if differential(k) == 0 else 0
        image = differential(k + 1)
        if not kernel:
            groups.append("0")
        elif image == 0:
            groups.append("Z")
        elif abs(image) == 1:
            groups.append("0")
        else:
            groups.append(f"Z/{abs(image)}")
    return groups


def complex_projective_plane_betti(through: int) -> List[int]:
    """One cell in each of the degrees 0, 2 and 4, all boundaries zero."""
    cells = {0: 1, 2: 1, 4: 1}
    return [cells.get(k, 0) for k in range(through + 1)]


def entry_gcd(rows: Sequence[Sequence[int]]) -> int:
    g = 0
    for row in rows:
        for v in row:
            g = gcd(g, v)
    return g


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Gaussian elimination over the rationals."""
    n = len(rows)
    m = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return int(det)


def rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(v) for v in row] for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col] / m[r][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
    return r
