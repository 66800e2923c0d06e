"""Coset representatives of positive similitude, and Hecke operators.

Delta_M holds the canonical block-upper-triangular representatives
(a b; 0 d) of similitude M: t(a)d = M*I, d upper triangular with
0 <= d[i][j] < d[j][j] for i < j and 0 <= b[i][j] < d[j][j].  The list
order is lexicographic in (diag of d, offdiagonal of d, b entries) and is
part of the stable public contract; golden tests depend on it.

The induced representation on V(rho) (x) C[Delta_M] uses the grouping
rho([I_m(g^-1)]^-1) with coset index reduce(m g^-1); the construction
asserts the modular-group relations on the result, which pins the
convention (an invalid result raises, it must not occur).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .ahol import AholForm
from .exactnum import CycNum
from .linalg import Matrix
from .qexp import slash_expand
from .reps import Rep, S_MAT, T_MAT


class DeltaCoset:
    """One canonical representative; mat is a 2g x 2g integer matrix."""

    __slots__ = ("genus", "mat", "similitude")

    def __init__(self, genus: int, mat, similitude: int):
        mat = tuple(tuple(int(x) for x in row) for row in mat)
        if len(mat) != 2 * genus or any(len(r) != 2 * genus for r in mat):
            raise ValueError(f"expected a {2 * genus}x{2 * genus} matrix")
        if similitude < 1:
            raise ValueError(f"similitude must be positive, got {similitude}")
        if not _is_similitude(mat, genus, similitude):
            raise ValueError(f"{mat} does not have similitude {similitude}")
        g = genus
        if any(mat[g + i][j] != 0 for i in range(g) for j in range(g)):
            raise ValueError("lower-left block must vanish")
        d = [[mat[g + i][g + j] for j in range(g)] for i in range(g)]
        b = [[mat[i][g + j] for j in range(g)] for i in range(g)]
        for i in range(g):
            for j in range(g):
                if i > j and d[i][j] != 0:
                    raise ValueError("d must be upper triangular")
                if i < j and not 0 <= d[i][j] < d[j][j]:
                    raise ValueError("d offdiagonal out of residue range")
                if not 0 <= b[i][j] < d[j][j]:
                    raise ValueError("b entry out of residue range")
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "similitude", similitude)

    def __setattr__(self, name, value):
        raise AttributeError("DeltaCoset is immutable")

    # genus-1 accessors
    @property
    def a(self) -> int:
        return self.mat[0][0]

    @property
    def b(self) -> int:
        return self.mat[0][1]

    @property
    def d(self) -> int:
        return self.mat[1][1]

    def __eq__(self, other):
        return isinstance(other, DeltaCoset) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"DeltaCoset{self.mat}"


def _is_similitude(mat, genus: int, M: int) -> bool:
    """t(mat) J mat == M J for the standard symplectic form."""
    g = genus
    n = 2 * g
    jm = [[0] * n for _ in range(n)]
    for i in range(g):
        jm[i][g + i] = -1
        jm[g + i][i] = 1
    left = [
        [sum(mat[k][i] * jm[k][l] for k in range(n)) for l in range(n)] for i in range(n)
    ]
    prod = [
        [sum(left[i][k] * mat[k][j] for k in range(n)) for j in range(n)] for i in range(n)
    ]
    return all(prod[i][j] == M * jm[i][j] for i in range(n) for j in range(n))


def delta_cosets(genus: int, M: int) -> list:
    """All canonical representatives of similitude M, in contract order."""
    if M < 1:
        raise ValueError(f"similitude index must be positive, got {M}")
    if genus < 1:
        raise ValueError(f"genus must be positive, got {genus}")
    if genus == 1:
        out = []
        for d in sorted(k for k in range(1, M + 1) if M % k == 0):
            a = M // d
            for b in range(d):
                out.append(DeltaCoset(1, ((a, b), (0, d)), M))
        return out
    return _delta_cosets_general(genus, M)


def _delta_cosets_general(genus: int, M: int) -> list:
    """Exhaustive enumeration over the admissible residue ranges.

    a is forced by t(a) d = M I, so candidates run over upper-triangular d
    (diagonal over divisors of M) and the b residue box; the assembled
    matrix is filtered by the exact similitude identity.
    """
    g = genus
    divisors = [k for k in range(1, M + 1) if M % k == 0]
    out = []
    for diag in _product([divisors] * g):
        off_ranges = []
        for i in range(g):
            for j in range(i + 1, g):
                off_ranges.append(list(range(diag[j])))
        for offs in _product(off_ranges):
            d = [[0] * g for _ in range(g)]
            for i in range(g):
                d[i][i] = diag[i]
            it = iter(offs)
            for i in range(g):
                for j in range(i + 1, g):
                    d[i][j] = next(it)
            a = _scaled_inverse_transpose(d, M)
            if a is None:
                continue
            b_ranges = [list(range(diag[j])) for _ in range(g) for j in range(g)]
            for bent in _product(b_ranges):
                b = [list(bent[i * g : (i + 1) * g]) for i in range(g)]
                mat = _assemble(a, b, d, g)
                if _is_similitude(mat, g, M):
                    out.append(DeltaCoset(g, mat, M))
    return out


def _product(ranges):
    if not ranges:
        yield ()
        return
    head, *tail = ranges
    for x in head:
        for rest in _product(tail):
            yield (x, *rest)


def _scaled_inverse_transpose(d, M: int):
    """Integer matrix a with t(a) d = M I, or None."""
    g = len(d)
    inv = _rational_inverse(d)
    a = [[Fraction(M) * inv[j][i] for j in range(g)] for i in range(g)]
    if any(x.denominator != 1 for row in a for x in row):
        return None
    return [[int(x) for x in row] for row in a]


def _rational_inverse(m):
    g = len(m)
    aug = [[Fraction(m[i][j]) for j in range(g)] + [Fraction(i == j) for j in range(g)] for i in range(g)]
    for c in range(g):
        pr = next(i for i in range(c, g) if aug[i][c] != 0)
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(g):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[g:] for row in aug]


def _assemble(a, b, d, g):
    mat = []
    for i in range(g):
        mat.append(tuple(a[i]) + tuple(b[i]))
    for i in range(g):
        mat.append((0,) * g + tuple(d[i]))
    return tuple(mat)


def reduce_to_coset(m):
    """Canonical representative and correction for an integral 2x2 matrix.

    Returns (rep, gamma) with gamma in the modular group and
    gamma * rep.mat = m.  Hermite-style reduction: clear the lower-left
    entry by an extended-gcd row operation, fix signs, reduce b mod d.
    """
    (a, b), (c, d) = m
    det = a * d - b * c
    if det < 1:
        raise ValueError(f"matrix must have positive determinant, got {det}")
    g = math.gcd(a, c)
    x, y = _ext_gcd(a, c, g)
    # U = (x y; -c/g a/g) has det 1 and U m upper triangular
    u = ((x, y), (-c // g, a // g))
    ra, rb = g, x * b + y * d
    rd = det // g
    t = -(rb // rd)  # shift so 0 <= rb + t*rd < rd
    v = ((1, t), (0, 1))
    rep = DeltaCoset(1, ((ra, rb + t * rd), (0, rd)), det)
    vu = _mul2(v, u)
    gamma = _inv2(vu)
    return rep, gamma


def _ext_gcd(a: int, c: int, g: int):
    """x, y with x*a + y*c = g = gcd(a, c) > 0."""
    old_r, r = a, c
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return old_x, old_y


def _mul2(p, q):
    return (
        (p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]),
        (p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]),
    )


def _inv2(p):
    # determinant 1
    return ((p[1][1], -p[0][1]), (-p[1][0], p[0][0]))


def cocycle(m: DeltaCoset, gamma):
    """(I, target) with I * target.mat = m.mat * gamma.

    Satisfies the chain rule I_m(g1 g2) = I_m(g1) I_{m g1}(g2).
    """
    if m.genus != 1:
        raise ValueError("cocycle is only defined at genus 1")
    (a, b), (c, d) = gamma
    if a * d - b * c != 1:
        raise ValueError(f"{gamma} is not in the modular group")
    prod = _mul2(m.mat, gamma)
    rep, corr = reduce_to_coset(prod)
    return corr, rep


class HeckeRep:
    """The induced type on V(rho) (x) C[Delta_M], with its coset order."""

    __slots__ = ("base", "index", "cosets", "rep")

    def __init__(self, base: Rep, index: int, cosets, rep: Rep):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "cosets", tuple(cosets))
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name, value):
        raise AttributeError("HeckeRep is immutable")

    def __repr__(self):
        return f"HeckeRep(T_{self.index} {self.base.label}, dim {self.rep.dim})"


_HECKE_CACHE: dict = {}


def hecke_rep(M: int, r: Rep) -> HeckeRep:
    """Representation on V(rho) (x) C[Delta_M]; validated on construction.

    Basis order is coset-major: block m holds the dim(rho) components of
    e_m, cosets in delta_cosets order.  Block (target, source) of the image
    of gamma is rho([I_m(gamma^-1)]^-1) for m the source coset.
    """
    key = (M, id(r))
    hit = _HECKE_CACHE.get(key)
    if hit is not None:
        return hit
    cosets = delta_cosets(1, M)
    index_of = {c: i for i, c in enumerate(cosets)}
    blocks = {}
    for name, gam in (("S", S_MAT), ("T", T_MAT)):
        gam_inv = _inv2(gam)
        nblk = len(cosets)
        cells = [[None] * nblk for _ in range(nblk)]
        for src, m in enumerate(cosets):
            corr, target = cocycle(m, gam_inv)
            block = r.evaluate(_inv2(corr))
            cells[index_of[target]][src] = block
        blocks[name] = _block_matrix(cells, r.dim)
    level = _matrix_order(blocks["T"], cap=max(1000, 4 * M * r.level))
    rep = Rep(f"T{M}({r.label})", level, blocks["S"], blocks["T"])
    report = rep.validate()
    if not report.ok:
        raise AssertionError(f"constructed Hecke type fails relations: {report}")
    out = HeckeRep(r, M, cosets, rep)
    _HECKE_CACHE[key] = out
    return out


def _block_matrix(cells, blk: int) -> Matrix:
    nblk = len(cells)
    dim = nblk * blk
    zero = CycNum.zero()
    ent = [zero] * (dim * dim)
    for bi, row in enumerate(cells):
        for bj, cell in enumerate(row):
            if cell is None:
                continue
            for i in range(blk):
                base = (bi * blk + i) * dim + bj * blk
                for j in range(blk):
                    ent[base + j] = cell[i, j]
    return Matrix(dim, dim, ent)


def _matrix_order(m: Matrix, cap: int) -> int:
    acc = m
    for k in range(1, cap + 1):
        if acc.is_identity():
            return k
        acc = acc * m
    raise ArithmeticError(f"matrix order exceeds cap {cap}")


def unit_embedding(M: int) -> Matrix:
    """All-ones coordinate row of V(T_M 1); its transpose embeds 1."""
    size = len(delta_cosets(1, M))
    return Matrix(1, size, [1] * size)


def pi_M(r: Rep, r2: Rep, M: int) -> Matrix:
    """Surjection (T_M rho) (x) (T_M rho') -> T_M (rho (x) rho').

    Sends (v (x) e_m) (x) (w (x) e_m') to (v (x) w) (x) e_m when m = m'
    and to zero otherwise.
    """
    ncos = len(delta_cosets(1, M))
    d1, d2 = r.dim, r2.dim
    rows = ncos * d1 * d2
    cols = (ncos * d1) * (ncos * d2)
    ent = [CycNum.zero()] * (rows * cols)
    one = CycNum.one()
    for m in range(ncos):
        for i in range(d1):
            for j in range(d2):
                row = m * d1 * d2 + i * d2 + j
                col = (m * d1 + i) * (ncos * d2) + (m * d2 + j)
                ent[row * cols + col] = one
    return Matrix(rows, cols, ent)


def hecke_form(M: int, f: AholForm) -> AholForm:
    """Sum of slashed images tagged by cosets; type becomes T_M rho.

    Components are coset-major blocks in delta_cosets order; each graded
    piece Y^r picks up the extra factor (d^2/M)^r on coset (a, b; 0, d)
    because y rescales by a/d under the coset action.
    """
    if f.weight % 2 != 0:
        raise ValueError(f"weight must be even, got {f.weight}")
    hr = hecke_rep(M, f.rep)
    graded = []
    for rdeg, layer in enumerate(f.graded):
        comps = []
        for c in hr.cosets:
            scale = Fraction(c.d * c.d, M) ** rdeg
            triple = (c.a, c.b, c.d)
            for q in layer:
                img = slash_expand(q, f.weight, triple)
                if rdeg:
                    img = img.scaled(scale)
                comps.append(img)
        graded.append(tuple(comps))
    name = f"T{M}({f.name})" if f.name else f"T{M}(form)"
    return AholForm(f.weight, hr.rep, graded, name=name)


def pairing_tm(inner: Matrix, M: int) -> Matrix:
    """Gram matrix of the block-diagonal pairing on V(T_M rho)."""
    ncos = len(delta_cosets(1, M))
    return Matrix.identity(ncos).kron(inner)


def pairing_apply(gram: Matrix, x, y) -> CycNum:
    """Sesquilinear pairing sum_ij x_i G_ij conj(y_j)."""
    acc = CycNum.zero()
    for i in range(gram.rows):
        for j in range(gram.cols):
            gij = gram[i, j]
            if not gij.is_zero():
                acc = acc + x[i] * gij * y[j].conjugate()
    return acc
