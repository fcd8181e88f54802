"""The little Weyl group as an exact matrix reflection group.

Elements are integer matrices on the X_*(A) coordinates, enumerated
breadth-first so every element carries its lexicographically least
reduced word.  On top of the enumeration: Bruhat order by the subword
criterion, positive braid lifts, chamber geometry (interior points,
simple systems of reflection subgroups), braid generators attached to
subgroup reflections, and the projection of braid words onto the braid
group of a reflection subgroup by tracking which walls a gallery
crosses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import (
    clear_denominators,
    eye,
    fvec,
    imat,
    int_inv,
    ivec,
    mat_key,
    rat_inv,
    rat_rank,
    rat_solve,
    vec_key,
    degree_factorization,
)
from .root_datum import DatumError, RestrictedSystem

ENUMERATION_CAP = 10**6


class EnumerationCapError(RuntimeError):
    """Group enumeration exceeded the configured cap."""


@dataclass(frozen=True)
class BraidWord:
    """Freely reduced word in the braid generators, letters (index, +-1)."""

    letters: tuple

    @staticmethod
    def from_letters(letters) -> "BraidWord":
        out = []
        for idx, exp in letters:
            if exp not in (1, -1):
                raise ValueError("braid letter exponent must be +-1")
            if out and out[-1][0] == idx and out[-1][1] == -exp:
                out.pop()
            else:
                out.append((int(idx), int(exp)))
        return BraidWord(tuple(out))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord.from_letters(self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)


class WeylGroup:
    """Finite reflection group on a_Q with canonical words and tables."""

    def __init__(self, rank: int, gen_matrices: list[np.ndarray], cap: int = ENUMERATION_CAP):
        self.rank = rank
        self.gen_matrices = gen_matrices
        self.num_gens = len(gen_matrices)
        self._enumerate(cap)
        self._gram = None
        self._bruhat_memo: dict = {}

    # -- enumeration -------------------------------------------------------

    def _enumerate(self, cap: int) -> None:
        ident = eye(self.rank)
        self.mats = [ident]
        self.words = [()]
        self.index = {mat_key(ident): 0}
        level = [0]
        while level:
            nxt = []
            for idx in level:
                for g in range(self.num_gens):
                    m = self.mats[idx].dot(self.gen_matrices[g])
                    key = mat_key(m)
                    if key not in self.index:
                        if len(self.mats) >= cap:
                            raise EnumerationCapError("enumeration cap exceeded")
                        self.index[key] = len(self.mats)
                        self.mats.append(m)
                        self.words.append(self.words[idx] + (g,))
                        nxt.append(self.index[key])
            level = nxt
        self.n = len(self.mats)
        self.right_table = [
            [self.index[mat_key(self.mats[i].dot(g))] for g in self.gen_matrices]
            for i in range(self.n)
        ]
        self.left_table = [
            [self.index[mat_key(g.dot(self.mats[i]))] for g in self.gen_matrices]
            for i in range(self.n)
        ]
        self.inverse_table = [self.index[mat_key(int_inv(m))] for m in self.mats]

    def length(self, idx: int) -> int:
        return len(self.words[idx])

    def product(self, i: int, j: int) -> int:
        return self.index[mat_key(self.mats[i].dot(self.mats[j]))]

    def conjugate(self, w: int, t: int) -> int:
        """Index of w t w^-1."""
        return self.product(self.product(w, t), self.inverse_table[w])

    def longest_index(self) -> int:
        return max(range(self.n), key=self.length)

    # -- gram and orthogonality --------------------------------------------

    @property
    def gram(self) -> np.ndarray:
        """Invariant positive-definite integer form: sum of M^T M over W."""
        if self._gram is None:
            g = np.zeros((self.rank, self.rank), dtype=object)
            for m in self.mats:
                g = g + m.T.dot(m)
            self._gram = g
        return self._gram

    def pairing(self, x: np.ndarray, y: np.ndarray):
        return x.dot(self.gram.dot(y))

    # -- Bruhat order --------------------------------------------------------

    def bruhat_leq(self, w1: int, w2: int) -> bool:
        """Subword criterion on the canonical reduced word of w2."""
        if w1 == w2:
            return True
        if self.length(w1) >= self.length(w2):
            return False
        word2 = self.words[w2]
        memo = self._bruhat_memo

        def sub(pos: int, target: int) -> bool:
            if target == 0:
                return True
            if len(word2) - pos < self.length(target):
                return False
            key = (w2, pos, target)
            if key in memo:
                return memo[key]
            s = word2[pos]
            shorter = self.left_table[target][s]
            if self.length(shorter) < self.length(target):
                res = sub(pos + 1, shorter) or sub(pos + 1, target)
            else:
                res = sub(pos + 1, target)
            memo[key] = res
            return res

        return sub(0, w1)

    # -- braid lifts ---------------------------------------------------------

    def braid_lift(self, idx: int) -> BraidWord:
        """Positive lift along the canonical reduced word."""
        return BraidWord(tuple((g, 1) for g in self.words[idx]))

    def alternative_reduced_word(self, idx: int) -> tuple:
        """A reduced word built greedily from maximal left descents."""
        word = []
        cur = idx
        while cur != 0:
            s = max(
                g
                for g in range(self.num_gens)
                if self.length(self.left_table[cur][g]) < self.length(cur)
            )
            word.append(s)
            cur = self.left_table[cur][s]
        return tuple(word)

    def poincare_degrees(self) -> list[int] | None:
        coeffs = [0] * (max(map(self.length, range(self.n))) + 1)
        for i in range(self.n):
            coeffs[self.length(i)] += 1
        return degree_factorization(coeffs)


# ---------------------------------------------------------------------------
# construction from a restricted system


class LittleWeylGroup(WeylGroup):
    """Reflection group of a restricted system, with chamber geometry."""

    def __init__(self, rs: RestrictedSystem, cap: int = ENUMERATION_CAP):
        self.rs = rs
        simple = sorted(rs.simple_roots)
        by_normal = {r.normal: r for r in rs.reflections}
        gen_records = []
        for f in simple:
            rec = by_normal.get(f)
            if rec is None:
                candidates = [r for r in rs.reflections if _proportional(f, r.normal)]
                if len(candidates) != 1:
                    raise DatumError("no reflection attached to a simple restricted root")
                rec = candidates[0]
            gen_records.append(rec)
        super().__init__(rs.rank_a, [r.matrix for r in gen_records], cap)
        self.simple_records = gen_records
        self.simple_normals = [ivec(r.normal) for r in gen_records]
        self._classify_reflections()
        self._chamber_basis()

    def _classify_reflections(self) -> None:
        by_key = {r.key: r for r in self.rs.reflections}
        self.reflection_indices = []
        self.reflection_record = {}
        for i, m in enumerate(self.mats):
            if i == 0:
                continue
            rec = by_key.get(mat_key(m))
            if rec is not None:
                self.reflection_indices.append(i)
                self.reflection_record[i] = rec
        if len(self.reflection_indices) != len(self.rs.reflections):
            raise DatumError("group reflections do not match the restricted roots")
        # every order-2 element with a codimension-1 fixed space must be listed
        for i, m in enumerate(self.mats):
            if i and self.product(i, i) == 0:
                fixed_rank = rat_rank(m - eye(self.rank))
                if fixed_rank == 1 and i not in self.reflection_record:
                    raise DatumError("reflection of W outside the restricted system")
        self.gen_reflection_index = [self.index[mat_key(g)] for g in self.gen_matrices]

    def _chamber_basis(self) -> None:
        """Vectors F_i with <simple_j, F_i> = delta_ij, plus the Sigma-null basis."""
        k, m = self.rank, self.num_gens
        if m == 0:
            self.chamber_duals = []
            return
        rows = np.array([f.tolist() for f in self.simple_normals], dtype=object)
        duals = []
        for i in range(m):
            rhs = fvec([1 if j == i else 0 for j in range(m)])
            sol = rat_solve(rows, rhs)
            if sol is None:
                raise DatumError("chamber construction failed")
            duals.append(sol)
        self.chamber_duals = duals

    def delta(self, refl_idx: int) -> int:
        return self.reflection_record[refl_idx].delta

    def chamber_point(self, rng: random.Random | None = None) -> np.ndarray:
        """A rational point strictly inside the fixed chamber."""
        if self.num_gens == 0:
            return fvec([0] * self.rank)
        point = fvec([0] * self.rank)
        for f in self.chamber_duals:
            c = Fraction(1) if rng is None else Fraction(rng.randint(1, 999), rng.randint(1, 999))
            point = point + c * f
        return point

    def normal_functional(self, refl_idx: int) -> np.ndarray:
        return ivec(self.reflection_record[refl_idx].normal)

    def inversion_count(self, idx: int) -> int:
        minv_t = int_inv(self.mats[idx]).T
        count = 0
        for r in self.reflection_indices:
            f = self.normal_functional(r)
            image = minv_t.dot(f)
            if not _is_positive_functional(self, image):
                count += 1
        return count

    # -- reflection subgroups ------------------------------------------------

    def simple_system_of_subgroup(self, refl_subset: list[int]) -> list[int]:
        """Simple reflections of <refl_subset> whose chamber contains ours.

        The subset must be closed under conjugation by the subgroup it
        generates.  Normals are taken positive on the fixed chamber;
        simple means not a positive rational combination of two others.
        """
        subset = sorted(set(refl_subset))
        for t in subset:
            for g in subset:
                if self.conjugate(g, t) not in set(subset):
                    raise DatumError("reflection set not closed under conjugation")
        normals = {t: self.normal_functional(t) for t in subset}
        simple = []
        for t in subset:
            decomposable = False
            for u in subset:
                for v in subset:
                    if u == t or v == t or u > v:
                        continue
                    cols = np.array(
                        [[normals[u][i], normals[v][i]] for i in range(self.rank)],
                        dtype=object,
                    )
                    sol = rat_solve(cols, fvec(normals[t].tolist()))
                    if sol is not None and sol[0] > 0 and sol[1] > 0:
                        decomposable = True
                        break
                if decomposable:
                    break
            if not decomposable:
                simple.append(t)
        return sorted(simple, key=lambda t: vec_key(normals[t]))

    def _generate_subgroup(self, mats: list[np.ndarray]) -> list[int]:
        seen = {0}
        frontier = [0]
        gen_idx = [self.index[mat_key(m)] for m in mats]
        while frontier:
            nxt = []
            for i in frontier:
                for g in gen_idx:
                    j = self.product(i, g)
                    if j not in seen:
                        if len(seen) >= ENUMERATION_CAP:
                            raise EnumerationCapError("enumeration cap exceeded")
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        return sorted(seen)

    def subgroup_elements(self, refl_subset: list[int]) -> list[int]:
        return self._generate_subgroup([self.mats[i] for i in refl_subset])

    def subsystem(self, refl_subset: list[int]) -> "Subsystem":
        return Subsystem(self, refl_subset)


def _proportional(f, g) -> bool:
    f, g = ivec(f), ivec(g)
    nz = [(a, b) for a, b in zip(f.tolist(), g.tolist()) if a or b]
    if any((a == 0) != (b == 0) for a, b in nz):
        return False
    return len({Fraction(a, b) for a, b in nz if b}) <= 1


def _is_positive_functional(W: LittleWeylGroup, f: np.ndarray) -> bool:
    t = 1_000_003
    val = sum(int(f[j]) * t**j for j in range(W.rank))
    if val == 0:
        raise DatumError("functional vanishes on the positivity probe")
    return val > 0


# ---------------------------------------------------------------------------
# reflection subgroup with its own Coxeter structure


class Subsystem:
    """A reflection subgroup with canonical words in its own simple system."""

    def __init__(self, parent: LittleWeylGroup, refl_subset: list[int]):
        self.parent = parent
        self.reflections = sorted(set(refl_subset))
        self.simple = parent.simple_system_of_subgroup(self.reflections)
        self.element_parent_idx = parent.subgroup_elements(self.reflections)
        self.parent_set = set(self.element_parent_idx)
        for t in self.reflections:
            if t not in self.parent_set:
                raise DatumError("reflection missing from its own subgroup")
        # BFS with the subgroup's own generators for canonical words
        self.words = {0: ()}
        order = [0]
        level = [0]
        while level:
            nxt = []
            for i in level:
                for g_pos, t in enumerate(self.simple):
                    j = parent.product(i, t)
                    if j not in self.words:
                        self.words[j] = self.words[i] + (g_pos,)
                        order.append(j)
                        nxt.append(j)
            level = nxt
        if set(order) != self.parent_set:
            raise DatumError("subgroup enumeration mismatch")
        order.sort(key=lambda i: (len(self.words[i]), self.words[i]))
        self.elements = order                      # parent indices, canonical order
        self.local_index = {p: i for i, p in enumerate(order)}
        self.size = len(order)
        self.left_table = [
            [self.local_index[parent.product(self.simple[g], p)] for g in range(len(self.simple))]
            for p in order
        ]
        self.right_table = [
            [self.local_index[parent.product(p, self.simple[g])] for g in range(len(self.simple))]
            for p in order
        ]

    def length(self, local: int) -> int:
        return len(self.words[self.elements[local]])

    def word(self, local: int) -> tuple:
        return self.words[self.elements[local]]

    def contains_parent(self, parent_idx: int) -> bool:
        return parent_idx in self.parent_set

    def braid_order(self, i: int, j: int) -> int:
        """Order of the product of simple reflections i and j."""
        p = self.parent.product(self.simple[i], self.simple[j])
        m, cur = 1, p
        while cur != 0:
            cur = self.parent.product(cur, p)
            m += 1
        return m

    def longest_length(self) -> int:
        return max(self.length(i) for i in range(self.size))


# ---------------------------------------------------------------------------
# braid generators of a subsystem, and projection of braid words


def subgroup_braid_generator(W: LittleWeylGroup, sub: Subsystem, t: int) -> BraidWord:
    """Braid word b_x sigma_a b_x^-1 in the ambient generators realizing
    the positive braid generator of the subsystem at the wall of t.

    The chamber x(C) is the one adjacent to the wall of t along the
    subsystem chamber, found from the orthogonal projection of a generic
    interior point onto the wall.
    """
    if t not in sub.simple:
        raise ValueError("not a simple reflection of the subsystem")
    f_t = W.normal_functional(t)
    g_inv = rat_inv(np.array([[Fraction(x) for x in row] for row in W.gram.tolist()], dtype=object))
    n_t = g_inv.dot(fvec(f_t.tolist()))

    rng = random.Random(0x5EED)
    for _attempt in range(64):
        l0 = W.chamber_point(rng if _attempt else None)
        x = l0 - (f_t.dot(l0) / f_t.dot(n_t)) * n_t
        if all(
            W.normal_functional(u).dot(x) != 0
            for u in W.reflection_indices
            if u != t
        ):
            break
    else:
        raise DatumError("failed to find a generic wall point")

    def limit_sign(func: np.ndarray) -> int:
        v = func.dot(x)
        if v != 0:
            return 1 if v > 0 else -1
        v = func.dot(n_t)
        if v == 0:
            raise DatumError("degenerate sign computation at the wall")
        return 1 if v > 0 else -1

    chamber_elt = None
    for w in range(W.n):
        minv_t = int_inv(W.mats[w]).T
        if all(
            limit_sign(minv_t.dot(W.simple_normals[i])) > 0
            for i in range(W.num_gens)
        ):
            chamber_elt = w
            break
    if chamber_elt is None:
        raise DatumError("no chamber contains the wall approach point")

    h = W.mats[chamber_elt].T.dot(f_t)
    wall_type = None
    for i in range(W.num_gens):
        if _proportional(h, W.simple_normals[i]):
            wall_type = i
            break
    if wall_type is None:
        raise DatumError("wall type not found")
    if W.conjugate(chamber_elt, W.gen_reflection_index[wall_type]) != t:
        raise DatumError("braid generator recipe produced the wrong reflection")

    lift = W.braid_lift(chamber_elt)
    return lift * BraidWord(((wall_type, 1),)) * lift.inverse()


def project_braid_word(W: LittleWeylGroup, sub: Subsystem, word: BraidWord) -> list[tuple]:
    """Shadow of an ambient braid word in the subsystem's braid group.

    Walks the gallery described by the word and keeps exactly the
    crossings of subsystem walls, each recorded as (subsystem generator,
    exponent).  The underlying Weyl element of the word must lie in the
    subgroup.
    """
    out = []
    u = 0            # ambient chamber: u(C)
    y = 0            # subsystem chamber: y(C_sub), as a parent index
    for a, e in word.letters:
        t = W.conjugate(u, W.gen_reflection_index[a])
        if sub.contains_parent(t):
            c = W.product(W.product(W.inverse_table[y], t), y)
            pos = next((i for i, s in enumerate(sub.simple) if s == c), None)
            if pos is None:
                raise DatumError("gallery crossed a non-simple subsystem wall")
            out.append((pos, e))
            y = W.product(y, c)
        u = W.right_table[u][a]
    if u != y or not sub.contains_parent(u):
        raise DatumError("braid word does not lie over the subgroup")
    return out


# ---------------------------------------------------------------------------
# numeric Bruhat-monotonicity of chamber pairings


def check_bruhat_values(W: LittleWeylGroup, trials: int, seed: int) -> dict:
    """Sample chamber points and compare pairings along the Bruhat order.

    For each trial a pair of interior points (a0, l) is drawn and the
    values <w a0, l> are required to be strictly decreasing along the
    Bruhat order.  Returns pass/fail counts with witnesses.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    comparable = [
        (i, j)
        for i in range(W.n)
        for j in range(W.n)
        if i != j and W.bruhat_leq(i, j)
    ]
    report = {"trials": trials, "comparisons": 0, "passes": 0, "failures": []}
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        a0 = W.chamber_point(rng)
        l = W.chamber_point(rng)
        values = [W.pairing(W.mats[w].dot(a0), l) for w in range(W.n)]
        for i, j in comparable:
            report["comparisons"] += 1
            if values[i] > values[j]:
                report["passes"] += 1
            else:
                report["failures"].append(
                    {"trial": trial, "lower": W.words[i], "higher": W.words[j]}
                )
    return report
