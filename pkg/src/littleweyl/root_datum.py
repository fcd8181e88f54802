"""Root data with involution, root classification, and restricted roots.

A datum is realized from a Cartan matrix: cocharacters live in Z^n with
the simple coroots as standard basis vectors, characters live in the
dual copy of Z^n, and ``cartan[i][j]`` is the pairing of the j-th
simple root against the i-th simple coroot (so the j-th simple root is
the j-th column of the Cartan matrix).  The involution is given by its
integer matrix on the cocharacter lattice.

Vectors are 1-D numpy object arrays; matrices act on column vectors.
Catalog input matrices are row-major (row i = image of basis vector i),
hence transposed on load.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import (
    eye,
    fvec,
    imat,
    int_col_kernel,
    ivec,
    is_integral,
    mat_key,
    rat_rank,
    rat_solve,
    to_int,
    vec_key,
)

ROOT_COUNT_CAP = 300


class DatumError(ValueError):
    """Invalid catalog data (schema violation or broken axiom)."""


REAL, IMAGINARY, COMPLEX = "Real", "Imaginary", "Complex"


@dataclass(frozen=True)
class RootDatum:
    rank_T: int
    cartan: tuple
    simple_roots: tuple              # character coordinates, one per column of cartan
    roots: tuple                     # all roots, as vec_keys, sorted
    coroot_of: dict                  # root key -> coroot key
    theta: np.ndarray = field(repr=False)        # on cocharacters, column action
    theta_star: np.ndarray = field(repr=False)   # on characters, column action
    positive_functional: np.ndarray = field(repr=False)  # xi with <alpha_i, xi> = 1

    def is_root(self, alpha) -> bool:
        return vec_key(np.asarray(alpha)) in self.coroot_of

    def coroot(self, alpha) -> np.ndarray:
        return ivec(self.coroot_of[vec_key(np.asarray(alpha))])

    def theta_on_root(self, alpha) -> np.ndarray:
        return self.theta_star.dot(np.asarray(alpha))

    def is_positive(self, alpha) -> bool:
        return np.asarray(alpha).dot(self.positive_functional) > 0


def classify_root(datum: RootDatum, alpha) -> str:
    """Real / Imaginary / Complex classification of a root."""
    alpha = ivec(alpha)
    if not datum.is_root(alpha):
        raise DatumError(f"not a root: {vec_key(alpha)}")
    image = datum.theta_on_root(alpha)
    if np.array_equal(image, -alpha):
        return REAL
    if np.array_equal(image, alpha):
        return IMAGINARY
    return COMPLEX


def _close_roots(simple_pairs):
    """Orbit of the simple (root, coroot) pairs under the simple reflections."""
    pairs = {vec_key(r): vec_key(c) for r, c in simple_pairs}
    changed = True
    while changed:
        changed = False
        items = [(ivec(k), ivec(v)) for k, v in pairs.items()]
        for r, c in items:
            for s_root, s_ck in simple_pairs:
                new_r = r - int(r.dot(s_ck)) * s_root
                new_c = c - int(s_root.dot(c)) * s_ck
                k = vec_key(new_r)
                if k not in pairs:
                    if len(pairs) >= ROOT_COUNT_CAP:
                        raise DatumError("root closure exceeds size cap")
                    pairs[k] = vec_key(new_c)
                    changed = True
                elif pairs[k] != vec_key(new_c):
                    raise DatumError(f"inconsistent coroot for root {k}")
    return pairs


def load_datum(entry: dict) -> RootDatum:
    """Validate a catalog entry and build the full root datum."""
    cartan = entry.get("cartan_matrix")
    theta_rows = entry.get("theta_on_costar_T")
    if not isinstance(cartan, list) or not cartan:
        raise DatumError("cartan_matrix missing or empty")
    n = len(cartan)
    if any(len(r) != n for r in cartan):
        raise DatumError("cartan_matrix is not square")
    if any(cartan[i][i] != 2 for i in range(n)):
        raise DatumError("cartan_matrix diagonal must be 2")
    cart = imat(cartan)
    if rat_rank(cart) != n:
        raise DatumError("cartan_matrix is singular")

    if not isinstance(theta_rows, list) or len(theta_rows) != n or any(
        len(r) != n for r in theta_rows
    ):
        raise DatumError("theta_on_costar_T must be an n x n integer matrix")
    theta = imat(theta_rows).T          # row-major input -> column action
    if not np.array_equal(theta.dot(theta), eye(n)):
        raise DatumError("theta is not an involution")
    theta_star = theta.T

    simple_roots = [cart[:, j].copy() for j in range(n)]
    simple_coroots = [eye(n)[:, i].copy() for i in range(n)]
    for j, alpha in enumerate(simple_roots):
        if int(alpha.dot(simple_coroots[j])) != 2:
            raise DatumError(f"<alpha, alpha_check> != 2 for simple root {j}")

    pairs = _close_roots(list(zip(simple_roots, simple_coroots)))

    # theta must permute the roots, matching coroots through theta
    for rk, ck in pairs.items():
        img = theta_star.dot(ivec(rk))
        ik = vec_key(img)
        if ik not in pairs:
            raise DatumError(f"theta does not permute roots: image of {rk} is {ik}")
        if pairs[ik] != vec_key(theta.dot(ivec(ck))):
            raise DatumError(f"theta breaks the root/coroot correspondence at {rk}")
    for rk, ck in pairs.items():
        if int(ivec(rk).dot(ivec(ck))) != 2:
            raise DatumError(f"<alpha, alpha_check> != 2 at {rk}")

    # a fixed positivity functional: <alpha_i, xi> = 1 for every simple root
    rows = np.array([r.tolist() for r in simple_roots], dtype=object)
    xi = rat_solve(rows, fvec([1] * n))
    if xi is None:
        raise DatumError("cannot construct a positivity functional")

    return RootDatum(
        rank_T=n,
        cartan=tuple(tuple(r) for r in cartan),
        simple_roots=tuple(vec_key(r) for r in simple_roots),
        roots=tuple(sorted(pairs)),
        coroot_of=dict(pairs),
        theta=theta,
        theta_star=theta_star,
        positive_functional=xi,
    )


# ---------------------------------------------------------------------------
# restricted roots


@dataclass(frozen=True)
class Reflection:
    """One reflection of the little Weyl group, with its root data."""

    matrix: np.ndarray = field(repr=False)   # integer, on X_*(A) coordinates
    normal: tuple                            # primitive positive restricted root
    delta: int                               # half the number of roots behind it
    real_root: tuple | None                  # positive real root when delta == 1
    real_coroot: tuple | None
    sources: tuple                           # all roots alpha with s_abar = this

    @property
    def key(self):
        return mat_key(self.matrix)


@dataclass(frozen=True)
class RestrictedSystem:
    datum: RootDatum
    lattice_A: np.ndarray = field(repr=False)   # rows: basis of X_*(A) in X_*(T) coords
    rank_a: int = 0
    restricted_roots: tuple = ()                # functionals on X_*(A) coords
    positive_roots: tuple = ()
    simple_roots: tuple = ()                    # simple system of the positives
    multiplicity: dict = field(default_factory=dict)
    restriction_of: dict = field(default_factory=dict)   # root key -> functional
    reflections: tuple = ()                     # Reflection records
    counts: dict = field(default_factory=dict)  # real / imaginary / complex

    @property
    def rank_zero(self) -> bool:
        return self.rank_a == 0

    def a_coords(self, ambient) -> np.ndarray:
        """Exact coordinates of an X_*(A) vector in the chosen basis."""
        sol = rat_solve(self.lattice_A.T, fvec(np.asarray(ambient).tolist()))
        if sol is None:
            raise DatumError(f"vector {vec_key(ivec(ambient))} is not in X_*(A)")
        return sol

    def delta_of(self, matrix_key) -> int:
        for r in self.reflections:
            if r.key == matrix_key:
                return r.delta
        raise KeyError("not a restricted reflection")


def build_restricted(datum: RootDatum) -> RestrictedSystem:
    """Restricted root system, multiplicities, and reflection invariants."""
    n = datum.rank_T
    lattice = int_col_kernel(datum.theta + eye(n))
    k = lattice.shape[0]
    counts = {REAL: 0, IMAGINARY: 0, COMPLEX: 0}
    for rk in datum.roots:
        counts[classify_root(datum, ivec(rk))] += 1

    if k == 0:
        if counts[REAL] or counts[COMPLEX]:
            raise DatumError("rank-zero pair with non-imaginary roots")
        return RestrictedSystem(datum=datum, lattice_A=lattice, rank_a=0, counts=counts)

    # restriction: alpha |-> its functional on the X_*(A) basis (integral)
    restriction: dict[tuple, tuple] = {}
    for rk in datum.roots:
        alpha = ivec(rk)
        f = tuple(int(alpha.dot(lattice[j])) for j in range(k))
        if any(f):
            restriction[rk] = f
        elif classify_root(datum, alpha) != IMAGINARY:
            raise DatumError(f"non-imaginary root {rk} restricts to zero")

    sigma = sorted(set(restriction.values()))
    multiplicity = {}
    for f in sigma:
        multiplicity[f] = sum(1 for v in restriction.values() if v == f)

    # same restricted root from alpha and -theta(alpha)
    for rk, f in restriction.items():
        neg_theta = -datum.theta_on_root(ivec(rk))
        if restriction.get(vec_key(neg_theta)) != f:
            raise DatumError(f"restrictions of {rk} and -theta({rk}) disagree")

    if sum(multiplicity.values()) != counts[REAL] + counts[COMPLEX]:
        raise DatumError("multiplicity total does not match real+complex count")

    # reflections: uniform construction from restricted coroot directions
    by_key: dict[tuple, dict] = {}
    for rk in restriction:
        alpha, alpha_ck = ivec(rk), datum.coroot(rk)
        d = alpha_ck - datum.theta.dot(alpha_ck)
        d_coords = to_int(rat_solve(lattice.T, fvec(d.tolist())))
        f = ivec(restriction[rk])
        denom = int(f.dot(d_coords))
        if denom <= 0:
            raise DatumError(f"degenerate reflection data at root {rk}")
        mat = np.empty((k, k), dtype=object)
        for i in range(k):
            for j in range(k):
                mat[i, j] = Fraction((1 if i == j else 0)) - Fraction(2 * int(d_coords[i]) * int(f[j]), denom)
        if not is_integral(mat):
            raise DatumError(f"reflection at {rk} does not preserve X_*(A)")
        mat = to_int(mat)
        key = mat_key(mat)
        rec = by_key.setdefault(key, {"matrix": mat, "sources": [], "reals": []})
        rec["sources"].append(rk)
        if classify_root(datum, alpha) == REAL:
            rec["reals"].append((rk, vec_key(alpha_ck)))

    # positivity on a: base-t functional separates all restricted roots
    t = 1_000_003
    xi_a = ivec([t**j for j in range(k)])
    positive = tuple(f for f in sigma if ivec(f).dot(xi_a) > 0)
    pos_set = set(positive)
    if len(positive) * 2 != len(sigma):
        raise DatumError("restricted roots are not symmetric")

    simple = []
    for f in positive:
        decomposable = any(
            tuple(a + b for a, b in zip(g, h)) == f
            for g in positive
            for h in positive
        )
        if not decomposable:
            simple.append(f)
    simple = tuple(sorted(simple))

    reflections = []
    for key in sorted(by_key):
        rec = by_key[key]
        sources = tuple(sorted(rec["sources"]))
        if len(sources) % 2:
            raise DatumError("odd root count behind a reflection")
        delta = len(sources) // 2
        pos_here = sorted(
            {restriction[rk] for rk in sources if restriction[rk] in pos_set}
        )
        primitive = [f for f in pos_here if tuple(x / 2 for x in map(Fraction, f)) not in pos_set]
        if len(primitive) != 1:
            raise DatumError("no primitive positive normal for a reflection")
        real_root = real_coroot = None
        if delta == 1:
            reals = rec["reals"]
            if not reals:
                raise DatumError(
                    "unsupported datum: reflection with delta=1 has no real root"
                )
            pos_reals = [p for p in reals if datum.is_positive(ivec(p[0]))]
            if len(pos_reals) != 1:
                raise DatumError("positive real root for delta=1 reflection not unique")
            real_root, real_coroot = pos_reals[0]
        elif rec["reals"]:
            pos_reals = [p for p in rec["reals"] if datum.is_positive(ivec(p[0]))]
            if pos_reals:
                real_root, real_coroot = pos_reals[0]
        reflections.append(
            Reflection(
                matrix=rec["matrix"],
                normal=primitive[0],
                delta=delta,
                real_root=real_root,
                real_coroot=real_coroot,
                sources=sources,
            )
        )

    # multiplicity >= 2 whenever a complex root lies behind the restriction
    for rk, f in restriction.items():
        if classify_root(datum, ivec(rk)) == COMPLEX and multiplicity[f] < 2:
            raise DatumError(f"complex root {rk} with multiplicity < 2")

    rs = RestrictedSystem(
        datum=datum,
        lattice_A=lattice,
        rank_a=k,
        restricted_roots=tuple(sigma),
        positive_roots=positive,
        simple_roots=simple,
        multiplicity=multiplicity,
        restriction_of=restriction,
        reflections=tuple(reflections),
        counts=counts,
    )
    _check_sigma_closed(rs)
    return rs


def _check_sigma_closed(rs: RestrictedSystem) -> None:
    sigma = set(rs.restricted_roots)
    for refl in rs.reflections:
        m_t = refl.matrix.T
        for f in rs.restricted_roots:
            image = vec_key(m_t.dot(ivec(f)))
            if image not in sigma:
                raise DatumError(
                    f"restricted system not closed: {f} under {refl.normal}"
                )
