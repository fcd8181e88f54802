"""Integer matrix models of the braid-group modules attached to a pair.

For each character of the component group the braid generators act on a
basis indexed by the little Weyl group through closed-form columns; the
component group acts diagonally.  For the trivial character a second,
commuting braid action is built out of the Hecke ring (right regular
representation twisted by the parameter-negating involution) and is
also produced in closed form, so the two constructions can be compared
entry by entry.

`induced_module_oracle` rebuilds the whole module abstractly, by
inducing the rank-one character data tensored with the Hecke ring of
the selected Coxeter subgroup from coset representatives, computing the
braid-word shadows geometrically.  It must agree with the closed-form
matrices under the coset-times-subgroup basis bijection.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .component_group import ComponentGroup, CoxeterSelection, coxeter_sub_W0
from .hecke import HeckeRing
from .linalg import eye, int_inv, ivec, mat_key, rat_nullspace, clear_denominators
from .root_datum import RestrictedSystem
from .weyl import BraidWord, LittleWeylGroup, project_braid_word, subgroup_braid_generator


class MonodromyError(RuntimeError):
    """A structural theorem failed on explicit matrices."""


@dataclass(frozen=True)
class MonodromyRep:
    pair: str
    chi: tuple
    W: LittleWeylGroup = field(repr=False)
    G: ComponentGroup = field(repr=False)
    selection: CoxeterSelection = field(repr=False)
    braid_action: dict = field(repr=False)       # generator -> |W| x |W| matrix
    component_action: dict = field(repr=False)   # I-basis position -> diagonal (list)
    family_action: dict | None = field(repr=False)  # trivial character only
    coset_blocks: tuple = ()                     # tuple of tuples of element indices

    @property
    def rank(self) -> int:
        return self.W.n

    def braid_matrix(self, word: BraidWord) -> np.ndarray:
        """Matrix of the braid action along a word (left action)."""
        out = eye(self.rank)
        inverses = {}
        for i, e in word.letters:
            m = self.braid_action[i]
            if e == -1:
                if i not in inverses:
                    inverses[i] = int_inv(m)
                m = inverses[i]
            out = out.dot(m)
        return out

    def family_vector(self, word: BraidWord, vec: np.ndarray) -> np.ndarray:
        """Apply the family action along a word, letter by letter."""
        inverses = {}
        for i, e in word.letters:
            m = self.family_action[i]
            if e == -1:
                if i not in inverses:
                    inverses[i] = int_inv(m)
                m = inverses[i]
            vec = m.dot(vec)
        return vec

    def identity_block(self) -> tuple:
        return next(b for b in self.coset_blocks if 0 in b)


def _coset_blocks(W: LittleWeylGroup, sel: CoxeterSelection) -> tuple:
    seen = set()
    blocks = []
    sub_set = sel.subsystem.parent_set
    for w in range(W.n):
        if w in seen:
            continue
        block = sorted(W.product(w, x) for x in sub_set)
        seen.update(block)
        blocks.append(tuple(block))
    return tuple(blocks)


def build_lambda(
    pair: str,
    rs: RestrictedSystem,
    W: LittleWeylGroup,
    G: ComponentGroup,
    chi: tuple,
    selection: CoxeterSelection | None = None,
) -> MonodromyRep:
    """Closed-form braid and component actions for one character."""
    sel = selection if selection is not None else coxeter_sub_W0(W, G, chi)
    n = W.n
    braid = {}
    for g in range(W.num_gens):
        refl = W.gen_reflection_index[g]
        odd = W.delta(refl) % 2 == 1
        m = np.zeros((n, n), dtype=object)
        for w in range(n):
            sw = W.left_table[w][g]
            shorter = W.length(sw) < W.length(w)
            conj_in = sel.subsystem.contains_parent(W.conjugate(W.inverse_table[w], refl))
            if shorter and conj_in and odd:
                m[sw, w] = -1
                m[w, w] = m[w, w] + 2
            else:
                m[sw, w] = m[sw, w] + 1
        braid[g] = m

    component = {}
    for pos, gen_class in enumerate(G.I_basis_ambient()):
        tau_sign = G.tau_eval(gen_class)
        diag = []
        for w in range(n):
            moved = G.act(W.inverse_table[w], gen_class)
            diag.append(G.chi_eval(chi, moved) * tau_sign)
        component[pos] = diag

    family = None
    if all(c == 1 for c in chi):
        family = {g: _family_closed_form(W, g) for g in range(W.num_gens)}

    return MonodromyRep(
        pair=pair,
        chi=chi,
        W=W,
        G=G,
        selection=sel,
        braid_action=braid,
        component_action=component,
        family_action=family,
        coset_blocks=_coset_blocks(W, sel),
    )


def _family_closed_form(W: LittleWeylGroup, g: int) -> np.ndarray:
    """Closed-form column action of the commuting family monodromy."""
    n = W.n
    refl = W.gen_reflection_index[g]
    odd = W.delta(refl) % 2 == 1
    m = np.zeros((n, n), dtype=object)
    for w in range(n):
        ws = W.right_table[w][g]
        if W.length(ws) > W.length(w):
            m[ws, w] = 1 if odd else -1
        else:
            m[ws, w] = -1
            if odd:
                m[w, w] = m[w, w] + 2
    return m


def build_mu_chi1(W: LittleWeylGroup, hecke: HeckeRing) -> dict:
    """Family action from the Hecke ring: right regular rep after the
    parameter-negating involution, in the basis identification sending
    the unit to the basepoint class."""
    sub = hecke.sub
    if sub.size != W.n:
        raise MonodromyError("family action needs the full-group Hecke ring")
    for w_local in range(sub.size):
        if sub.word(w_local) != W.words[sub.elements[w_local]]:
            raise MonodromyError("basis orders of the ring and the group differ")
    deltas = [W.delta(t) for t in sub.simple]
    signs = hecke.omega_signs(deltas)
    out = {}
    for i in range(len(sub.simple)):
        out[i] = signs[i] * hecke.right_matrix(i)
    return out


# ---------------------------------------------------------------------------
# structural checks


def quadratic_relation_check(rep: MonodromyRep) -> dict:
    """Per-block minimal polynomials of the braid generators, and the
    global ones for the family action when present."""
    W = rep.W
    n = rep.rank
    checked = 0
    for g in range(W.num_gens):
        refl = W.gen_reflection_index[g]
        odd = W.delta(refl) % 2 == 1
        m = rep.braid_action[g]
        msq = m.dot(m)
        for block in rep.coset_blocks:
            rows = list(block)
            rep_elt = block[0]
            conj_in = rep.selection.subsystem.contains_parent(
                W.conjugate(W.inverse_table[rep_elt], refl)
            )
            if conj_in and odd:
                d = m[np.ix_(rows, rows)] - eye(len(rows))
                if not np.array_equal(d.dot(d), np.zeros((len(rows),) * 2, dtype=object)):
                    raise MonodromyError(
                        f"unipotent relation fails on a block at generator {g}"
                    )
            else:
                if not np.array_equal(msq[np.ix_(rows, rows)], eye(len(rows))):
                    raise MonodromyError(
                        f"squared generator is not 1 on a block at generator {g}"
                    )
            checked += 1
    if rep.family_action is not None:
        for g in range(W.num_gens):
            refl = W.gen_reflection_index[g]
            m = rep.family_action[g]
            if W.delta(refl) % 2 == 1:
                d = m - eye(n)
                ok = np.array_equal(d.dot(d), np.zeros((n, n), dtype=object))
            else:
                ok = np.array_equal(m.dot(m), eye(n))
            if not ok:
                raise MonodromyError(f"family quadratic relation fails at generator {g}")
            checked += 1
    return {"relations_checked": checked}


def braid_relation_check(matrices: dict, sub_orders) -> None:
    """Alternating products of equal length must agree for every pair."""
    gens = sorted(matrices)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            m = sub_orders(gens[a], gens[b])
            lhs = eye(matrices[gens[a]].shape[0])
            rhs = lhs
            for t in range(m):
                lhs = lhs.dot(matrices[gens[a]] if t % 2 == 0 else matrices[gens[b]])
                rhs = rhs.dot(matrices[gens[b]] if t % 2 == 0 else matrices[gens[a]])
            if not np.array_equal(lhs, rhs):
                raise MonodromyError(f"braid relation fails for generators {a},{b}")


def block_permutation_check(rep: MonodromyRep) -> None:
    """Each braid generator must permute blocks by left multiplication."""
    W = rep.W
    block_of = {}
    for bi, block in enumerate(rep.coset_blocks):
        for w in block:
            block_of[w] = bi
    for g in range(W.num_gens):
        m = rep.braid_action[g]
        for bi, block in enumerate(rep.coset_blocks):
            target = block_of[W.left_table[block[0]][g]]
            for w in block:
                col = [r for r in range(rep.rank) if m[r, w] != 0]
                if any(block_of[r] != target for r in col):
                    raise MonodromyError("braid generator does not respect blocks")
                if block_of[W.left_table[w][g]] != target:
                    raise MonodromyError("block permutation is not left multiplication")


def matsumoto_check(rep: MonodromyRep) -> None:
    """Products along two different reduced words must agree."""
    W = rep.W
    for w in range(rep.rank):
        alt = W.alternative_reduced_word(w)
        if alt == W.words[w]:
            continue
        m1 = rep.braid_matrix(BraidWord(tuple((g, 1) for g in W.words[w])))
        m2 = rep.braid_matrix(BraidWord(tuple((g, 1) for g in alt)))
        if not np.array_equal(m1, m2):
            raise MonodromyError(f"Matsumoto stability fails at element {w}")


def semidirect_relation_check(rep: MonodromyRep) -> None:
    """Conjugating the component action by a braid generator must act by
    the underlying reflection on the component group."""
    W, G = rep.W, rep.G
    for g in range(W.num_gens):
        refl = W.gen_reflection_index[g]
        bm = rep.braid_action[g]
        for pos, gen_class in enumerate(G.I_basis_ambient()):
            lhs = bm.dot(_diag(rep.component_action[pos]))
            moved = G.act(refl, gen_class)
            moved_diag = []
            tau_sign = G.tau_eval(gen_class)
            for w in range(rep.rank):
                back = G.act(W.inverse_table[w], moved)
                moved_diag.append(G.chi_eval(rep.chi, back) * tau_sign)
            rhs = _diag(moved_diag).dot(bm)
            if not np.array_equal(lhs, rhs):
                raise MonodromyError("semidirect relation fails")


def _diag(entries) -> np.ndarray:
    n = len(entries)
    m = np.zeros((n, n), dtype=object)
    for i, x in enumerate(entries):
        m[i, i] = x
    return m


def family_commutation_check(rep: MonodromyRep) -> None:
    if rep.family_action is None:
        raise MonodromyError("family action only exists for the trivial character")
    for g in range(rep.W.num_gens):
        for h in range(rep.W.num_gens):
            a = rep.braid_action[g]
            b = rep.family_action[h]
            if not np.array_equal(a.dot(b), b.dot(a)):
                raise MonodromyError("braid and family actions do not commute")


def family_cyclic_check(rep: MonodromyRep) -> None:
    """The basepoint class generates under the family action."""
    W = rep.W
    n = rep.rank
    mat = np.zeros((n, n), dtype=object)
    for w in range(n):
        vec = np.array([0] * n, dtype=object)
        vec[0] = 1
        vec = rep.family_vector(BraidWord(tuple((g, 1) for g in W.words[w])), vec)
        mat[:, w] = vec
    if len(rat_nullspace(mat)) != 0:
        raise MonodromyError("basepoint class is not cyclic for the family action")


def fundamental_class_check(rep: MonodromyRep) -> dict:
    """Common fixed line of the braid action for the trivial character.

    The fixed space must be one-dimensional, meet the basepoint
    coefficient nontrivially, and be scaled by each family generator by
    the sign determined by the parity of its delta.
    """
    if rep.family_action is None:
        raise MonodromyError("fundamental class check needs the trivial character")
    W = rep.W
    n = rep.rank
    if W.num_gens == 0:
        return {"dimension": n, "scalars": {}}
    stacked = np.zeros((n * W.num_gens, n), dtype=object)
    for g in range(W.num_gens):
        stacked[g * n : (g + 1) * n, :] = rep.braid_action[g] - eye(n)
    kernel = rat_nullspace(stacked)
    if len(kernel) != 1:
        raise MonodromyError(
            f"fixed space has dimension {len(kernel)}, expected 1"
        )
    gen = clear_denominators(kernel[0])
    if gen[0] == 0:
        raise MonodromyError("fundamental class has zero basepoint coefficient")
    scalars = {}
    for g in range(W.num_gens):
        refl = W.gen_reflection_index[g]
        expect = (-1) ** (W.delta(refl) + 1)
        image = rep.family_action[g].dot(gen)
        if not np.array_equal(image, expect * gen):
            raise MonodromyError(
                f"family generator {g} does not scale the fundamental class by {expect}"
            )
        scalars[g] = expect
    return {"dimension": 1, "scalars": scalars, "class": gen.tolist()}


# ---------------------------------------------------------------------------
# the Hecke module structure on the identity block


def v0_intertwiner_check(rep: MonodromyRep, hecke: HeckeRing) -> dict:
    """The identity block must be the Hecke ring as a module.

    Subsystem braid generators are realized as conjugated ambient braid
    words; sending each ring basis element T_x to the braid image of the
    basepoint class must intertwine left multiplication with the braid
    action restricted to the block.
    """
    W = rep.W
    sub = rep.selection.subsystem
    if hecke.sub is not sub:
        raise MonodromyError("ring and representation disagree on the subgroup")
    block = rep.identity_block()
    rows = list(block)
    size = sub.size
    if len(rows) != size:
        raise MonodromyError("identity block size differs from the subgroup order")

    beta = {
        i: subgroup_braid_generator(W, sub, sub.simple[i]) for i in range(len(sub.simple))
    }
    theta_cols = np.zeros((size, size), dtype=object)
    row_pos = {w: i for i, w in enumerate(rows)}
    for x in range(size):
        word = BraidWord(())
        for letter in sub.word(x):
            word = word * beta[letter]
        vec = np.array([0] * rep.rank, dtype=object)
        vec[0] = 1
        vec = rep.braid_matrix(word).dot(vec)
        if any(vec[r] != 0 for r in range(rep.rank) if r not in row_pos):
            raise MonodromyError("block image escapes the identity block")
        for w, i in row_pos.items():
            theta_cols[i, x] = vec[w]

    identity_expected = np.array_equal(theta_cols, eye(size))

    for i in range(len(sub.simple)):
        lam = rep.braid_matrix(beta[i])
        restricted = lam[np.ix_(rows, rows)]
        for w in range(rep.rank):
            if w in row_pos:
                continue
            for r in rows:
                if lam[r, w] != 0 or lam[w, r] != 0:
                    raise MonodromyError("conjugated generator does not preserve the block")
        lhs = restricted.dot(theta_cols)
        rhs = theta_cols.dot(hecke.left_matrix(i))
        if not np.array_equal(lhs, rhs):
            raise MonodromyError(f"intertwiner fails at subsystem generator {i}")
    from .linalg import rat_rank

    if rat_rank(theta_cols) != size:
        raise MonodromyError("intertwiner is not invertible")
    return {"block_size": size, "basis_matches": bool(identity_expected)}


def factorization_check(rep: MonodromyRep) -> dict:
    """Squares of conjugated generators act as identity on the identity
    block whenever the conjugated reflection leaves the subgroup."""
    W = rep.W
    sub = rep.selection.subsystem
    rows = list(rep.identity_block())
    checked = 0
    for g in range(W.num_gens):
        refl = W.gen_reflection_index[g]
        for w in range(W.n):
            if sub.contains_parent(W.conjugate(w, refl)):
                continue
            lift = W.braid_lift(w)
            word = lift * BraidWord(((g, 1), (g, 1))) * lift.inverse()
            m = rep.braid_matrix(word)
            blockm = m[np.ix_(rows, rows)]
            if not np.array_equal(blockm, eye(len(rows))):
                raise MonodromyError(
                    f"square of conjugated generator (g={g}, w={W.words[w]}) "
                    "is not 1 on the identity block"
                )
            checked += 1
    return {"squares_checked": checked}


# ---------------------------------------------------------------------------
# the induced-module oracle


def induced_module_oracle(rep: MonodromyRep, hecke: HeckeRing) -> dict:
    """Abstract induction from coset representatives, compared entrywise.

    Basis: (coset representative, subgroup element).  A braid generator
    sends the representative's lift to the target coset's lift times a
    leftover braid word lying over the subgroup; the leftover acts on the
    ring through its geometric shadow in the subsystem's braid group.
    The component group acts through the representative's twist of the
    character, times the invariant sign character.
    """
    W, G = rep.W, rep.G
    sub = rep.selection.subsystem
    blocks = rep.coset_blocks
    reps = [min(b, key=lambda w: (W.length(w), W.words[w])) for b in blocks]
    block_of = {}
    for bi, b in enumerate(blocks):
        for w in b:
            block_of[w] = bi

    pairs = []
    for bi, r in enumerate(reps):
        for x in range(sub.size):
            pairs.append((bi, x))
    pos_of = {p: i for i, p in enumerate(pairs)}
    dim = len(pairs)
    if dim != rep.rank:
        raise MonodromyError("induced basis size mismatch")

    # bijection to the closed-form basis
    to_element = {}
    for bi, x in pairs:
        w = W.product(reps[bi], sub.elements[x])
        to_element[(bi, x)] = w
    if len(set(to_element.values())) != dim:
        raise MonodromyError("coset decomposition is not a bijection")

    lifts = [W.braid_lift(r) for r in reps]

    for g in range(W.num_gens):
        matrix = np.zeros((dim, dim), dtype=object)
        for bi in range(len(reps)):
            target = block_of[W.left_table[reps[bi]][g]]
            leftover = lifts[target].inverse() * BraidWord(((g, 1),)) * lifts[bi]
            shadow = project_braid_word(W, sub, leftover)
            helt = hecke.eta_letters(shadow)
            for x in range(sub.size):
                out = hecke.multiply(helt, hecke.basis(x))
                for y, c in out.items():
                    matrix[pos_of[(target, y)], pos_of[(bi, x)]] = c
        closed = rep.braid_action[g]
        for (bi, x), col in pos_of.items():
            for (bj, y), row in pos_of.items():
                if matrix[row, col] != closed[to_element[(bj, y)], to_element[(bi, x)]]:
                    raise MonodromyError(
                        f"induced module disagrees with closed form at generator {g}"
                    )

    for pos, gen_class in enumerate(G.I_basis_ambient()):
        tau_sign = G.tau_eval(gen_class)
        for bi, x in pairs:
            moved = G.act(W.inverse_table[reps[bi]], gen_class)
            expect = G.chi_eval(rep.chi, moved) * tau_sign
            got = rep.component_action[pos][to_element[(bi, x)]]
            if expect != got:
                raise MonodromyError("induced component action disagrees")

    return {"dimension": dim, "cosets": len(reps)}


# ---------------------------------------------------------------------------
# the rank-one fixture


def sl2_fixture_check(build_pair) -> dict:
    """Exact matrices for the split rank-one pair.

    For the nontrivial character the two sign conventions of the family
    action (one per regular splitting) must diagonalize to diag(1,-1)
    and diag(-1,1) in the common eigenbasis; the trivial character's
    family generator must satisfy the unipotent relation.
    """
    pair = build_pair("sl2_split")
    W = pair.weyl
    if W.n != 2 or W.num_gens != 1:
        raise MonodromyError("rank-one fixture expects a two-element group")

    rep1 = pair.rep((-1,))
    swap = np.array([[0, 1], [1, 0]], dtype=object)
    if not np.array_equal(rep1.braid_action[0], swap):
        raise MonodromyError("nontrivial-character braid generator is not the swap")

    results = []
    basis_change = np.array([[1, 1], [1, -1]], dtype=object)  # v1 +- vs
    from .linalg import rat_inv, to_int

    inv = rat_inv(basis_change)
    for c in (1, -1):
        mu = c * swap
        if not np.array_equal(mu.dot(mu), eye(2)):
            raise MonodromyError("squared family action is not 1")
        if not np.array_equal(mu.dot(rep1.braid_action[0]), rep1.braid_action[0].dot(mu)):
            raise MonodromyError("family action does not commute with the braid action")
        diag = to_int(inv.dot(np.array(mu, dtype=object)).dot(basis_change))
        results.append(mat_key(diag))
    expected = {((1, 0), (0, -1)), ((-1, 0), (0, 1))}
    if set(results) != expected:
        raise MonodromyError("splitting sign conventions do not give diag(1,-1), diag(-1,1)")

    rep0 = pair.rep((1,))
    mu0 = rep0.family_action[0]
    if not np.array_equal(mu0, np.array([[0, -1], [1, 2]], dtype=object)):
        raise MonodromyError("trivial-character family generator has wrong matrix")
    d = mu0 - eye(2)
    if not np.array_equal(d.dot(d), np.zeros((2, 2), dtype=object)):
        raise MonodromyError("(mu - 1)^2 != 0 for the trivial character")
    lam0 = rep0.braid_action[0]
    if not np.array_equal(lam0, np.array([[0, -1], [1, 2]], dtype=object)):
        raise MonodromyError("trivial-character braid generator has wrong matrix")
    return {"nontrivial_matrices": sorted(results), "trivial_ok": True}


# ---------------------------------------------------------------------------
# JSON emission


def rep_to_json_dict(rep: MonodromyRep) -> dict:
    W = rep.W
    sub = rep.selection.subsystem
    return {
        "pair": rep.pair,
        "chi": list(rep.chi),
        "basis_order": [list(w) for w in W.words],
        "lambda": {
            str(g): [[int(x) for x in row] for row in rep.braid_action[g].tolist()]
            for g in range(W.num_gens)
        },
        "I_action": {
            str(pos): [int(x) for x in diag]
            for pos, diag in rep.component_action.items()
        },
        "mu": None
        if rep.family_action is None
        else {
            str(g): [[int(x) for x in row] for row in rep.family_action[g].tolist()]
            for g in range(W.num_gens)
        },
        "W0": {
            "order": sub.size,
            "simple_system": [list(W.words[t]) for t in sub.simple],
            "parameters": [int(q) for q in rep.selection.parameters],
        },
    }


def rep_from_json_dict(doc: dict) -> dict:
    """Parse matrices back out of the emission format (exact integers)."""
    out = {
        "pair": doc["pair"],
        "chi": tuple(int(c) for c in doc["chi"]),
        "basis_order": [tuple(w) for w in doc["basis_order"]],
        "lambda": {
            int(k): np.array(v, dtype=object) for k, v in doc["lambda"].items()
        },
        "I_action": {int(k): [int(x) for x in v] for k, v in doc["I_action"].items()},
        "mu": None
        if doc["mu"] is None
        else {int(k): np.array(v, dtype=object) for k, v in doc["mu"].items()},
        "W0": doc["W0"],
    }
    return out
