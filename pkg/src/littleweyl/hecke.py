"""Integer Hecke rings with parameters +-1.

Elements are sparse integer combinations of the basis {T_w}, indexed by
the canonical order of the underlying reflection (sub)group.  Products
are computed by the length recursion with a memo table for generator
times basis products; the memo is fill-once with identical values, so
concurrent fills are idempotent.

`free_quotient_oracle` independently rebuilds the ring as a quotient of
the free algebra on the generators by the braid and quadratic
relations, using plain linear algebra on words, and compares dimensions
and structure constants.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import gcd

import numpy as np

from .linalg import rat_inv
from .weyl import BraidWord, Subsystem


class HeckeError(RuntimeError):
    """A structural identity of the ring failed."""


class HeckeRing:
    def __init__(self, sub: Subsystem, params):
        self.sub = sub
        self.params = tuple(int(q) for q in params)
        if len(self.params) != len(sub.simple):
            raise ValueError("one parameter per simple reflection required")
        if any(q not in (1, -1) for q in self.params):
            raise ValueError("parameters must be +-1")
        for i in range(len(sub.simple)):
            for j in range(i + 1, len(sub.simple)):
                if sub.braid_order(i, j) % 2 and self.params[i] != self.params[j]:
                    raise HeckeError("unequal parameters across an odd braid edge")
        self.rank = sub.size
        self._gen_memo: dict = {}

    # -- elements ------------------------------------------------------------

    def unit(self) -> dict:
        return {0: 1}

    def basis(self, local_idx: int) -> dict:
        return {local_idx: 1}

    def gen(self, i: int) -> dict:
        return {self.sub.local_index[self.sub.simple[i]]: 1}

    def gen_inverse(self, i: int) -> dict:
        q = self.params[i]
        # T_i^-1 = q (T_i - (1 - q)): {T_i: q, 1: 1 - q}
        out = {self.sub.local_index[self.sub.simple[i]]: q}
        if q == -1:
            out[0] = 2
        return out

    @staticmethod
    def add(a: dict, b: dict, scale: int = 1) -> dict:
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) + scale * v
            if out[k] == 0:
                del out[k]
        return out

    def _left_gen_basis(self, i: int, w: int) -> dict:
        """T_i times T_w."""
        key = (i, w)
        cached = self._gen_memo.get(key)
        if cached is not None:
            return cached
        iw = self.sub.left_table[w][i]
        if self.sub.length(iw) > self.sub.length(w):
            out = {iw: 1}
        else:
            q = self.params[i]
            out = {iw: q}
            if q == -1:
                out[w] = 2
            # (1 - q) T_w + q T_iw; for q = +1 the T_w term vanishes
        self._gen_memo[key] = out
        return out

    def left_gen(self, i: int, elem: dict) -> dict:
        out: dict = {}
        for w, c in elem.items():
            out = self.add(out, self._left_gen_basis(i, w), c)
        return out

    def right_gen(self, elem: dict, i: int) -> dict:
        out: dict = {}
        for w, c in elem.items():
            wi = self.sub.right_table[w][i]
            if self.sub.length(wi) > self.sub.length(w):
                out = self.add(out, {wi: 1}, c)
            else:
                q = self.params[i]
                term = {wi: q}
                if q == -1:
                    term[w] = 2
                out = self.add(out, term, c)
        return out

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for x, cx in a.items():
            acc = {w: c * cx for w, c in b.items()}
            for s in reversed(self.sub.word(x)):
                acc = self.left_gen(s, acc)
            out = self.add(out, acc)
        return out

    # -- structure maps --------------------------------------------------------

    def omega_signs(self, deltas) -> tuple:
        """Generator signs of the parameter-negating involution.

        The involution rescales each generator by (-1)^(delta+1) = -q;
        this is the unique sign choice compatible with the quadratic
        relations for parameters -1.
        """
        deltas = tuple(int(d) for d in deltas)
        if len(deltas) != len(self.params):
            raise ValueError("one delta per generator required")
        for d, q in zip(deltas, self.params):
            if (-1) ** d != q:
                raise HeckeError("ring was not built with q = (-1)^delta")
        return tuple((-1) ** (d + 1) for d in deltas)

    def omega(self, deltas, elem: dict) -> dict:
        signs = self.omega_signs(deltas)
        out = {}
        for w, c in elem.items():
            sign = 1
            for s in self.sub.word(w):
                sign *= signs[s]
            out[w] = c * sign
        return out

    def check_omega_is_ring_map(self, deltas) -> None:
        signs = self.omega_signs(deltas)
        gens = [self.gen(i) for i in range(len(self.params))]

        def om(e):
            return self.omega(deltas, e)

        for i in range(len(gens)):
            for j in range(len(gens)):
                lhs = om(self.multiply(gens[i], gens[j]))
                rhs = self.multiply(om(gens[i]), om(gens[j]))
                if lhs != rhs:
                    raise HeckeError("omega is not a ring map on generator pairs")
        del signs

    def eta(self, word: BraidWord) -> dict:
        """Image of a braid word of the subsystem in the ring."""
        acc = self.unit()
        for i, e in word.letters:
            factor = self.gen(i) if e == 1 else self.gen_inverse(i)
            acc = self.multiply(acc, factor)
        return acc

    def eta_letters(self, letters) -> dict:
        return self.eta(BraidWord.from_letters(letters))

    # -- matrices ---------------------------------------------------------------

    def _matrix(self, action) -> np.ndarray:
        m = np.zeros((self.rank, self.rank), dtype=object)
        for w in range(self.rank):
            col = action(w)
            for y, c in col.items():
                m[y, w] = m[y, w] + c
        return m

    def left_matrix(self, i: int) -> np.ndarray:
        return self._matrix(lambda w: self._left_gen_basis(i, w))

    def right_matrix(self, i: int) -> np.ndarray:
        return self._matrix(lambda w: self.right_gen(self.basis(w), i))

    def regular_reps(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        L = [self.left_matrix(i) for i in range(len(self.params))]
        R = [self.right_matrix(i) for i in range(len(self.params))]
        return L, R

    def element_matrix_left(self, elem: dict) -> np.ndarray:
        m = np.zeros((self.rank, self.rank), dtype=object)
        for w in range(self.rank):
            col = self.multiply(elem, self.basis(w))
            for y, c in col.items():
                m[y, w] = m[y, w] + c
        return m

    def element_matrix_right(self, elem: dict) -> np.ndarray:
        m = np.zeros((self.rank, self.rank), dtype=object)
        for w in range(self.rank):
            col = self.multiply(self.basis(w), elem)
            for y, c in col.items():
                m[y, w] = m[y, w] + c
        return m


# ---------------------------------------------------------------------------
# the free-algebra quotient oracle


def _alternating(i: int, j: int, m: int) -> tuple:
    out = []
    for t in range(m):
        out.append(i if t % 2 == 0 else j)
    return tuple(out)


def _relation_rows(n_gens: int, params, braid_orders) -> list[dict]:
    rels = []
    for i in range(n_gens):
        q = params[i]
        # T_i^2 - (1 - q) T_i - q
        rels.append({(i, i): 1, (i,): -(1 - q), (): -q})
    for i in range(n_gens):
        for j in range(i + 1, n_gens):
            m = braid_orders[(i, j)]
            rels.append({_alternating(i, j, m): 1, _alternating(j, i, m): -1})
    return [{k: v for k, v in r.items() if v} for r in rels]


def _normalize(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return dict(row)


def _pivot(row: dict) -> tuple:
    return max(row, key=lambda w: (len(w), w))


def _eliminate(row: dict, echelon: dict) -> dict:
    row = dict(row)
    while row:
        p = _pivot(row)
        other = echelon.get(p)
        if other is None:
            return _normalize(row)
        a, b = row[p], other[p]
        g = gcd(abs(a), abs(b))
        ra, rb = b // g, a // g
        new = {}
        for k, v in row.items():
            new[k] = v * ra
        for k, v in other.items():
            new[k] = new.get(k, 0) - v * rb
        row = {k: v for k, v in new.items() if v}
    return {}


def free_quotient_oracle(H: HeckeRing, sample_pairs: int = 40, seed: int = 0) -> dict:
    """Rebuild the ring from generators and relations by linear algebra.

    Words of bounded length in the free algebra are reduced modulo the
    two-sided span of the braid and quadratic relations.  The reduction
    must leave exactly rank-many classes, the canonical basis monomials
    must stay independent, and right multiplication by each generator
    must reproduce the ring's structure constants exactly.
    """
    sub = H.sub
    n = len(H.params)
    size = H.rank
    if n == 0:
        return {"dimension": 1, "degree_bound": 0, "checked_pairs": 0}
    braid_orders = {
        (i, j): sub.braid_order(i, j) for i in range(n) for j in range(i + 1, n)
    }
    rels = _relation_rows(n, H.params, braid_orders)
    longest = sub.longest_length()

    dim = -1
    for extra in (1, 2):
        bound = longest + extra
        words = [()]
        for length in range(1, bound + 1):
            words.extend(iproduct(range(n), repeat=length))
        words = sorted(words, key=lambda w: (len(w), w))
        total = len(words)

        echelon: dict = {}
        rows = []
        for rel in rels:
            deg = max(len(k) for k in rel)
            for u in words:
                for v in words:
                    if len(u) + deg + len(v) <= bound:
                        rows.append({u + k + v: c for k, c in rel.items()})
        rows.sort(key=lambda r: (len(_pivot(r)), _pivot(r)))
        for row in rows:
            red = _eliminate(row, echelon)
            if red:
                echelon[_pivot(red)] = red

        dim = total - len(echelon)
        if dim == size:
            break
    if dim != size:
        raise HeckeError(
            f"free-algebra quotient has dimension {dim}, expected {size}"
        )

    non_pivot = sorted(
        (w for w in words if w not in echelon), key=lambda w: (len(w), w)
    )
    if any(len(w) > longest for w in non_pivot):
        raise HeckeError("a residue monomial exceeds the longest element")
    col_of = {w: i for i, w in enumerate(non_pivot)}

    # bottom-up residue expansion: every key in a pivot row is strictly
    # smaller in (length, word) order, so one ascending pass suffices
    reduce_memo: dict = {}
    for w in words:
        if w not in echelon:
            reduce_memo[w] = {w: Fraction(1)}
            continue
        row = echelon[w]
        lead = row[w]
        out: dict = {}
        for k, c in row.items():
            if k == w:
                continue
            for kk, cc in reduce_memo[k].items():
                out[kk] = out.get(kk, Fraction(0)) - Fraction(c, lead) * cc
        reduce_memo[w] = {k: v for k, v in out.items() if v}

    def reduce_word(w: tuple) -> dict:
        return reduce_memo[w]

    canon = [tuple(sub.word(w)) for w in range(size)]
    basis_mat = np.zeros((size, size), dtype=object)
    for w, mono in enumerate(canon):
        red = reduce_word(mono)
        for k, c in red.items():
            basis_mat[col_of[k], w] = basis_mat[col_of[k], w] + Fraction(c)
    try:
        basis_inv = rat_inv(basis_mat)
    except ValueError as exc:
        raise HeckeError("canonical monomials are dependent in the quotient") from exc

    def coords_of(red: dict) -> np.ndarray:
        v = np.array([Fraction(0)] * size, dtype=object)
        for k, c in red.items():
            v[col_of[k]] = v[col_of[k]] + Fraction(c)
        return basis_inv.dot(v)

    rho = []
    for i in range(n):
        m = np.zeros((size, size), dtype=object)
        for w, mono in enumerate(canon):
            red = reduce_word(mono + (i,))
            m[:, w] = coords_of(red)
        rho.append(m)
        ring_m = H.right_matrix(i)
        for a in range(size):
            for b in range(size):
                if Fraction(m[a, b]) != Fraction(int(ring_m[a, b])):
                    raise HeckeError(
                        f"structure constants disagree at generator {i}, entry {(a, b)}"
                    )

    import random as _random

    rng = _random.Random(seed)
    if size * size <= 160:
        pairs = [(a, b) for a in range(size) for b in range(size)]
    else:
        pairs = [
            (rng.randrange(size), rng.randrange(size)) for _ in range(sample_pairs)
        ]
    checked = 0
    for a, b in pairs:
        vec = np.array([Fraction(0)] * size, dtype=object)
        vec[a] = Fraction(1)
        for letter in canon[b]:
            vec = rho[letter].dot(vec)
        ring_prod = H.multiply(H.basis(a), H.basis(b))
        for w in range(size):
            expect = Fraction(int(ring_prod.get(w, 0)))
            if Fraction(vec[w]) != expect:
                raise HeckeError(f"product T_{a} T_{b} disagrees with the oracle")
        checked += 1
    return {"dimension": dim, "degree_bound": bound, "checked_pairs": checked}
