"""Row-vector linear algebra over GF(q): matrices, echelon forms, formed
spaces and canonical subspace enumeration.

Vectors are tuples of field elements; matrices are tuples of row tuples.
Points act on the right (x -> x.M), so matrix products compose the same
way as permutation products.  Subspaces are canonicalized as reduced
row-echelon matrices, which gives unique hashable labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .gf import GF

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def zero_vector(d: int) -> Vector:
    return (0,) * d


def unit_vector(d: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(d))


def identity_matrix(d: int) -> Matrix:
    return tuple(unit_vector(d, i) for i in range(d))


def vec_add(F: GF, u: Vector, v: Vector) -> Vector:
    add = F.add
    return tuple(add[a][b] for a, b in zip(u, v))


def vec_scale(F: GF, c: int, v: Vector) -> Vector:
    row = F.mul[c]
    return tuple(row[a] for a in v)


def vec_mat(F: GF, v: Vector, M: Matrix) -> Vector:
    add, mul = F.add, F.mul
    out = [0] * len(M[0])
    for a, row in zip(v, M):
        if a:
            mrow = mul[a]
            for j, b in enumerate(row):
                if b:
                    out[j] = add[out[j]][mrow[b]]
    return tuple(out)


def mat_mul(F: GF, A: Matrix, B: Matrix) -> Matrix:
    return tuple(vec_mat(F, row, B) for row in A)


def mat_transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M))


def mat_apply_entrywise(F: GF, M: Matrix, f) -> Matrix:
    return tuple(tuple(f(a) for a in row) for row in M)


def dot(F: GF, u: Vector, v: Vector) -> int:
    add, mul = F.add, F.mul
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = add[s][mul[a][b]]
    return s


def rref(F: GF, rows: Sequence[Vector]) -> Matrix:
    """Reduced row-echelon form with zero rows dropped."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivot_row = 0
    for col in range(ncols):
        pivot = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        inv = F.inv[mat[pivot_row][col]]
        mat[pivot_row] = [F.mul[inv][a] for a in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                c = mat[r][col]
                mat[r] = [
                    F.sub(a, F.mul[c][b]) for a, b in zip(mat[r], mat[pivot_row])
                ]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row] if any(r))


def rank(F: GF, rows: Sequence[Vector]) -> int:
    return len(rref(F, rows))


def det(F: GF, M: Matrix) -> int:
    mat = [list(r) for r in M]
    n = len(mat)
    d = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            d = F.neg[d]
        d = F.mul[d][mat[col][col]]
        inv = F.inv[mat[col][col]]
        for r in range(col + 1, n):
            if mat[r][col]:
                c = F.mul[mat[r][col]][inv]
                mat[r] = [F.sub(a, F.mul[c][b]) for a, b in zip(mat[r], mat[col])]
    return d


def mat_inverse(F: GF, M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(M[i]) + list(unit_vector(n, i)) for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col]:
                pivot = r
                break
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = F.inv[aug[col][col]]
        aug[col] = [F.mul[inv][a] for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [F.sub(a, F.mul[c][b]) for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def all_vectors(F: GF, d: int) -> Iterator[Vector]:
    yield from itertools.product(range(F.q), repeat=d)


def vector_index(F: GF, v: Vector) -> int:
    """Mixed-radix encoding, first coordinate least significant."""
    a = 0
    for c in reversed(v):
        a = a * F.q + c
    return a


def index_vector(F: GF, d: int, a: int) -> Vector:
    out = []
    for _ in range(d):
        out.append(a % F.q)
        a //= F.q
    return tuple(out)


def enumerate_subspaces(F: GF, d: int, k: int) -> list[Matrix]:
    """All k-subspaces of F^d as reduced row-echelon matrices.

    Deterministic order: pivot columns lexicographic, free entries in
    mixed-radix order.
    """
    out: list[Matrix] = []
    if k == 0:
        return [()]
    for pivots in itertools.combinations(range(d), k):
        free_pos = []
        for r in range(k):
            for c in range(d):
                if c > pivots[r] and c not in pivots:
                    free_pos.append((r, c))
        for values in itertools.product(range(F.q), repeat=len(free_pos)):
            rows = [[0] * d for _ in range(k)]
            for r in range(k):
                rows[r][pivots[r]] = 1
            for (r, c), val in zip(free_pos, values):
                rows[r][c] = val
            out.append(tuple(tuple(r) for r in rows))
    return out


def subspace_contains(F: GF, space: Matrix, v: Vector) -> bool:
    if not any(v):
        return True
    return rank(F, list(space) + [v]) == len(space)


def subspace_leq(F: GF, small: Matrix, big: Matrix) -> bool:
    return all(subspace_contains(F, big, row) for row in small)


def subspace_sum(F: GF, a: Matrix, b: Matrix) -> Matrix:
    return rref(F, list(a) + list(b))


def subspace_intersection_dim(F: GF, a: Matrix, b: Matrix) -> int:
    return len(a) + len(b) - len(subspace_sum(F, a, b))


def subspace_vectors(F: GF, space: Matrix) -> Iterator[Vector]:
    """All vectors of the row space (including zero)."""
    k = len(space)
    d = len(space[0]) if k else 0
    for coeffs in itertools.product(range(F.q), repeat=k):
        v = zero_vector(d)
        for c, row in zip(coeffs, space):
            if c:
                v = vec_add(F, v, vec_scale(F, c, row))
        yield v


# -- formed spaces -----------------------------------------------------


@dataclass(frozen=True)
class FormedSpace:
    """A nondegenerate form on F_q^d.

    kind "alternating": gram holds the skew form B.
    kind "hermitian":   gram holds B; pairing is B-linear in the first
                        argument and conjugate-linear in the second.
    kind "quadratic":   gram holds an upper-triangular matrix U with
                        Q(x) = x U x^T; the polar form is B = U + U^T.
                        Covers symmetric forms in every characteristic.
    """

    kind: str
    q: int
    dimension: int
    gram: Matrix
    label: str = ""

    @property
    def field(self) -> GF:
        from .gf import gf

        return gf(self.q)

    def bilinear(self, u: Vector, v: Vector) -> int:
        F = self.field
        if self.kind == "hermitian":
            w = tuple(F.conj(a) for a in v)
            return dot(F, vec_mat(F, u, self.gram), w)
        if self.kind == "quadratic":
            B = _polar_matrix(F, self.gram)
            return dot(F, vec_mat(F, u, B), v)
        return dot(F, vec_mat(F, u, self.gram), v)

    def quadratic(self, v: Vector) -> int:
        if self.kind != "quadratic":
            raise ValueError("quadratic values only exist for quadratic forms")
        F = self.field
        return dot(F, vec_mat(F, v, self.gram), v)

    def preserves(self, M: Matrix) -> bool:
        """True when the row action x -> xM is an isometry of the form."""
        F = self.field
        d = self.dimension
        basis = [unit_vector(d, i) for i in range(d)]
        imgs = [vec_mat(F, e, M) for e in basis]
        for i in range(d):
            for j in range(d):
                if self.bilinear(imgs[i], imgs[j]) != self.bilinear(basis[i], basis[j]):
                    return False
        if self.kind == "quadratic":
            for e, im in zip(basis, imgs):
                if self.quadratic(im) != self.quadratic(e):
                    return False
            # Q(x+y) is determined by Q on a basis plus the polar form,
            # so basis checks suffice.
        return True

    def radical_dim(self, space: Matrix) -> int:
        """Dimension of {x in space : B(x, space) = 0}."""
        F = self.field
        rows = []
        for u in space:
            rows.append(tuple(self.bilinear(u, v) for v in space))
        return len(space) - rank(F, rows) if space else 0

    def is_totally_isotropic(self, space: Matrix) -> bool:
        """B vanishes on the subspace (and Q too, for quadratic forms)."""
        for i, u in enumerate(space):
            for v in space[i:]:
                if self.bilinear(u, v) != 0:
                    return False
        if self.kind == "quadratic":
            for u in space:
                if self.quadratic(u) != 0:
                    return False
        return True

    def is_nondegenerate_on(self, space: Matrix) -> bool:
        if not space:
            return True
        return self.radical_dim(space) == 0

    def restricted_type(self, space: Matrix) -> Optional[str]:
        """Witt type of a nondegenerate restriction of a quadratic form.

        Returns "hyperbolic"/"elliptic" for even dimension, "parabolic"
        for odd dimension, None when the restriction is degenerate.
        Odd q uses the discriminant-square test; even q counts singular
        vectors.
        """
        if self.kind != "quadratic":
            raise ValueError("Witt types apply to quadratic forms")
        if not self.is_nondegenerate_on(space):
            return None
        k = len(space)
        if k % 2 == 1:
            return "parabolic"
        F = self.field
        m = k // 2
        if F.p == 2:
            singular = sum(
                1 for v in subspace_vectors(F, space)
                if any(v) and self.quadratic(v) == 0
            )
            hyperbolic_count = (F.q ** (m - 1) + 1) * (F.q ** m - 1)
            return "hyperbolic" if singular == hyperbolic_count else "elliptic"
        gram_rows = tuple(
            tuple(self.bilinear(u, v) for v in space) for u in space
        )
        disc = det(F, gram_rows)
        sign = F.pow(F.neg[1], m)
        val = F.mul[disc][sign]
        return "hyperbolic" if _is_square(F, val) else "elliptic"

    def perp_basis(self, space: Matrix) -> Matrix:
        """A basis of the B-orthogonal complement of the subspace."""
        F = self.field
        d = self.dimension
        # solve B(x, u) = 0 for all rows u: kernel of the map
        # x -> (B(x, u_i))_i, computed by row reduction of the transpose
        rows = []
        for u in space:
            rows.append(tuple(
                self.bilinear(unit_vector(d, j), u) for j in range(d)
            ))
        return _kernel_basis(F, rows, d)


_POLAR_CACHE: dict[tuple[int, Matrix], Matrix] = {}


def _polar_matrix(F: GF, upper: Matrix) -> Matrix:
    key = (F.q, upper)
    cached = _POLAR_CACHE.get(key)
    if cached is None:
        t = mat_transpose(upper)
        cached = tuple(
            tuple(F.add[a][b] for a, b in zip(r1, r2))
            for r1, r2 in zip(upper, t)
        )
        _POLAR_CACHE[key] = cached
    return cached


def _is_square(F: GF, a: int) -> bool:
    if a == 0:
        return True
    return F.log[a] % 2 == 0 if F.p != 2 else True


def _kernel_basis(F: GF, rows: Sequence[Vector], d: int) -> Matrix:
    """Basis of {x in F^d : sum_j x_j rows[i][j] = 0 for all i}."""
    if not rows:
        return identity_matrix(d)
    reduced = rref(F, rows)
    pivots = []
    for r in reduced:
        for j, a in enumerate(r):
            if a:
                pivots.append(j)
                break
    free = [j for j in range(d) if j not in pivots]
    basis = []
    for j in free:
        v = [0] * d
        v[j] = 1
        for r, pc in zip(reduced, pivots):
            v[pc] = F.neg[r[j]]
        basis.append(tuple(v))
    return rref(F, basis) if basis else ()


# -- standard forms -----------------------------------------------------


def standard_alternating(F: GF, d: int) -> FormedSpace:
    """Block form <e_i, f_i> = 1 on basis e_1..e_m, f_1..f_m."""
    if d % 2:
        raise ValueError("alternating forms need even dimension")
    m = d // 2
    gram = [[0] * d for _ in range(d)]
    for i in range(m):
        gram[i][m + i] = 1
        gram[m + i][i] = F.neg[1]
    return FormedSpace("alternating", F.q, d,
                       tuple(tuple(r) for r in gram), label=f"sp({d},{F_base(F)})")


def standard_hermitian(F: GF, d: int) -> FormedSpace:
    """Identity Gram matrix over GF(q^2); F must have square order."""
    if F.e % 2:
        raise ValueError("hermitian forms live over fields of square order")
    return FormedSpace("hermitian", F.q, d, identity_matrix(d),
                       label=f"gu({d},{F_base(F) })")


def standard_quadratic(F: GF, d: int, epsilon: str) -> FormedSpace:
    """Standard quadratic form of the requested type.

    epsilon "+": hyperbolic, pairs x_{2i} x_{2i+1}.
    epsilon "-": hyperbolic pairs plus one anisotropic binary block.
    epsilon "o": odd dimension, hyperbolic pairs plus a square term.
    """
    upper = [[0] * d for _ in range(d)]
    if epsilon == "+":
        if d % 2:
            raise ValueError("type + needs even dimension")
        for i in range(0, d, 2):
            upper[i][i + 1] = 1
    elif epsilon == "-":
        if d % 2:
            raise ValueError("type - needs even dimension")
        for i in range(0, d - 2, 2):
            upper[i][i + 1] = 1
        c = _anisotropic_coefficient(F)
        upper[d - 2][d - 2] = 1
        upper[d - 2][d - 1] = 1
        upper[d - 1][d - 1] = c
    elif epsilon == "o":
        if d % 2 == 0:
            raise ValueError("type o needs odd dimension")
        if F.p == 2:
            raise ValueError("odd-dimensional orthogonal spaces need odd q")
        for i in range(0, d - 1, 2):
            upper[i][i + 1] = 1
        upper[d - 1][d - 1] = 1
    else:
        raise ValueError(f"unknown orthogonal type {epsilon!r}")
    return FormedSpace("quadratic", F.q, d, tuple(tuple(r) for r in upper),
                       label=f"go{epsilon}({d},{F.q})")


def _anisotropic_coefficient(F: GF) -> int:
    """c such that x^2 + xy + c y^2 has no nonzero root over GF(q)."""
    for c in range(1, F.q):
        ok = True
        for x in range(F.q):
            for y in range(F.q):
                if x == 0 and y == 0:
                    continue
                val = F.add[F.add[F.mul[x][x]][F.mul[x][y]]][
                    F.mul[c][F.mul[y][y]]]
                if val == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return c
    raise AssertionError(f"no anisotropic binary form over GF({F.q})")


def F_base(F: GF) -> int:
    """Base parameter q for groups defined over GF(q^2) tables."""
    return F.p ** (F.e // 2) if F.e % 2 == 0 else F.q
