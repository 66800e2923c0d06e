"""Finite-dimensional representations of the modular group given by (S, T).

A type is a representation whose kernel is a congruence subgroup containing
-I, so the generator images must satisfy S^4 = I, (ST)^3 = S^2, S^2 = I and
T^level = I.  The declared level is trusted beyond the T-order check.

Hom spaces are computed as fixed vectors of dual(r) tensor r2.  The
flattening between fixed vectors v and intertwiner matrices Phi is private:
index pairs (i, j) with i < dim_r, j < dim_r2 flatten to i*dim_r2 + j and
Phi[j, i] = v[i*dim_r2 + j].  Public contracts only use the intertwining
property Phi r(g) = r2(g) Phi, which does not depend on the convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exactnum import CycNum
from .linalg import Matrix, Subspace

S_MAT = ((0, -1), (1, 0))
T_MAT = ((1, 1), (0, 1))


class Rep:
    """Congruence type with generator images for S and T."""

    __slots__ = ("label", "dim", "level", "S", "T", "_word_cache")

    def __init__(self, label: str, level: int, S: Matrix, T: Matrix):
        if S.rows != S.cols or T.rows != T.cols or S.rows != T.rows:
            raise ValueError("generator matrices must be square of equal size")
        if level < 1:
            raise ValueError(f"level must be positive, got {level}")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "dim", S.rows)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "_word_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Rep is immutable")

    @property
    def conductor(self) -> int:
        return self.S.n * self.T.n // math.gcd(self.S.n, self.T.n)

    def validate(self) -> "RepValidation":
        S, T = self.S, self.T
        s2 = S * S
        st = S * T
        st3 = st * st * st
        checks = [
            ("S^4 = I", (s2 * s2).is_identity()),
            ("(ST)^3 = S^2", st3 == s2),
            ("S^2 = I", s2.is_identity()),
            (f"T^{self.level} = I", _mat_pow(T, self.level).is_identity()),
        ]
        return RepValidation(self.label, checks)

    def is_valid(self) -> bool:
        return self.validate().ok

    def dual(self) -> "Rep":
        return Rep(
            f"{self.label}^",
            self.level,
            self.S.transpose().inverse(),
            self.T.transpose().inverse(),
        )

    def tensor(self, other: "Rep") -> "Rep":
        lev = self.level * other.level // math.gcd(self.level, other.level)
        return Rep(
            f"{self.label}*{other.label}",
            lev,
            self.S.kron(other.S),
            self.T.kron(other.T),
        )

    def evaluate(self, g) -> Matrix:
        """Image of an arbitrary element of the modular group.

        g is ((a, b), (c, d)) with determinant 1; decomposed into an S, T
        word by the Euclidean algorithm on the left column.
        """
        key = (g[0][0], g[0][1], g[1][0], g[1][1])
        cached = self._word_cache.get(key)
        if cached is not None:
            return cached
        if key[0] * key[3] - key[1] * key[2] != 1:
            raise ValueError(f"{g} is not in the modular group")
        out = Matrix.identity(self.dim)
        for kind, e in sl2_word(*key):
            if kind == "S":
                for _ in range(e % 4):
                    out = out * self.S
            else:
                out = out * self._t_power(e % self.level)
        self._word_cache[key] = out
        return out

    def _t_power(self, e: int) -> Matrix:
        out = Matrix.identity(self.dim)
        base = self.T
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __repr__(self):
        return f"Rep({self.label}, dim {self.dim}, level {self.level})"

    def to_json(self):
        return {
            "label": self.label,
            "dim": self.dim,
            "level": self.level,
            "conductor": self.conductor,
            "S": self.S.to_json(),
            "T": self.T.to_json(),
        }

    @staticmethod
    def from_json(obj) -> "Rep":
        return Rep(
            obj["label"],
            int(obj["level"]),
            Matrix.from_json(obj["S"]),
            Matrix.from_json(obj["T"]),
        )


@dataclass
class RepValidation:
    label: str
    checks: list

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def __str__(self):
        lines = [f"{'pass' if p else 'FAIL'}  {name}" for name, p in self.checks]
        return f"[{self.label}] " + "; ".join(lines)


def sl2_word(a: int, b: int, c: int, d: int) -> list:
    """Tokens ('S', e) / ('T', e) whose ordered product is (a b; c d)."""
    out = []
    while c != 0:
        q = a // c
        out.append(("T", q))
        out.append(("S", 1))
        # peel off T^q S on the left
        a, b = a - q * c, b - q * d
        a, b, c, d = c, d, -a, -b
    if a == 1:
        out.append(("T", b))
    else:
        out.append(("S", 2))
        out.append(("T", -b))
    return out


def _mat_pow(m: Matrix, e: int) -> Matrix:
    out = Matrix.identity(m.rows)
    base = m
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


def hom_fixed_subspace(r: Rep, r2: Rep) -> Subspace:
    """Fixed vectors of dual(r) tensor r2, the unshaped hom space."""
    amb = r.dim * r2.dim
    ds = r.S.transpose().inverse().kron(r2.S) - Matrix.identity(amb)
    dt = r.T.transpose().inverse().kron(r2.T) - Matrix.identity(amb)
    return ds.kernel().intersect(dt.kernel())


def fixed_vector_to_matrix(v, dim_r: int, dim_r2: int) -> Matrix:
    """Reshape a fixed vector to an intertwiner (dim_r2 x dim_r)."""
    rows = [[v[i * dim_r2 + j] for i in range(dim_r)] for j in range(dim_r2)]
    return Matrix.from_rows(rows)


def matrix_to_fixed_vector(phi: Matrix) -> list:
    dim_r2, dim_r = phi.rows, phi.cols
    return [phi[j, i] for i in range(dim_r) for j in range(dim_r2)]


def hom_space(r: Rep, r2: Rep) -> list:
    """Basis of intertwiners Phi with Phi r(g) = r2(g) Phi."""
    sub = hom_fixed_subspace(r, r2)
    return [fixed_vector_to_matrix(v, r.dim, r2.dim) for v in sub.basis]


def is_intertwiner(phi: Matrix, r: Rep, r2: Rep) -> bool:
    if phi.rows != r2.dim or phi.cols != r.dim:
        return False
    return phi * r.S == r2.S * phi and phi * r.T == r2.T * phi


def rep_isomorphic(r: Rep, r2: Rep) -> bool:
    """Schur test; both inputs must be certified irreducible."""
    for x in (r, r2):
        if len(hom_space(x, x)) != 1:
            raise ValueError(f"{x.label} is not certified irreducible")
    return len(hom_space(r, r2)) >= 1


@dataclass
class Decomposition:
    multiplicities: dict
    residual: "Rep | None"
    residual_split: list = field(default_factory=list)
    residual_flagged: bool = False

    def accounted_dim(self, registry: "RepRegistry") -> int:
        total = sum(
            mult * registry.get(lbl).dim for lbl, mult in self.multiplicities.items()
        )
        if self.residual is not None:
            total += self.residual.dim
        return total


def decompose(r: Rep, registry: "RepRegistry") -> Decomposition:
    """Isotypic multiplicities against a registry, plus the residual.

    multiplicity(rho) = dim hom(r, rho).  The residual is r restricted to
    the joint kernel of all found intertwiners.  When S acts as a scalar
    there, the residual splits into T-eigenspaces, each reported as a new
    one-dimensional candidate; otherwise it is returned unsplit and
    flagged (systematic splitting is out of scope).
    """
    mults = {}
    intertwiners = []
    for entry in registry.entries:
        basis = hom_space(r, entry)
        if basis:
            mults[entry.label] = len(basis)
            intertwiners.extend(basis)
    joint = Subspace.full(r.dim)
    for phi in intertwiners:
        joint = joint.intersect(phi.kernel())
    if joint.dim == 0:
        return Decomposition(mults, None)
    basis_t = Matrix.from_rows(joint.basis).transpose()  # columns span the kernel
    s_res = basis_t.solve_right(r.S * basis_t)
    t_res = basis_t.solve_right(r.T * basis_t)
    residual = Rep(f"{r.label}|res", r.level, s_res, t_res)
    scalar = s_res[0, 0]
    if all(
        s_res[i, j] == (scalar if i == j else CycNum.zero())
        for i in range(joint.dim)
        for j in range(joint.dim)
    ):
        split = []
        for j in range(r.level):
            eig = CycNum.zeta(r.level, j)
            ker = (t_res - Matrix.identity(joint.dim).scaled(eig)).kernel()
            for _ in range(ker.dim):
                split.append(
                    Rep(
                        f"{r.label}|res(T={eig})",
                        r.level,
                        Matrix(1, 1, [scalar]),
                        Matrix(1, 1, [eig]),
                    )
                )
        if sum(s.dim for s in split) == joint.dim:
            return Decomposition(mults, residual, residual_split=split)
    return Decomposition(mults, residual, residual_flagged=True)


class RepRegistry:
    """Registry of certified-irreducible, pairwise non-isomorphic types."""

    def __init__(self, entries):
        entries = list(entries)
        for e in entries:
            rep = e.validate()
            if not rep.ok:
                raise ValueError(f"registry entry fails validation: {rep}")
            if len(hom_space(e, e)) != 1:
                raise ValueError(f"registry entry {e.label} is not irreducible")
        for i, a in enumerate(entries):
            for b in entries[i + 1 :]:
                if len(hom_space(a, b)) != 0:
                    raise ValueError(f"registry entries {a.label}, {b.label} are isomorphic")
        self.entries = entries
        self._by_label = {e.label: e for e in entries}
        if len(self._by_label) != len(entries):
            raise ValueError("duplicate labels in registry")

    def get(self, label: str) -> Rep:
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"no registry entry labelled {label!r}") from None

    def __contains__(self, label: str) -> bool:
        return label in self._by_label

    def labels(self) -> list:
        return [e.label for e in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def to_json(self):
        return {"entries": [e.to_json() for e in self.entries]}

    @staticmethod
    def from_json(obj) -> "RepRegistry":
        return RepRegistry([Rep.from_json(e) for e in obj["entries"]])


def trivial_rep() -> Rep:
    one = Matrix.identity(1)
    return Rep("triv", 1, one, one)


def rho3() -> Rep:
    S = Matrix.from_rows([[0, 1, 0], [1, 0, 0], [-1, -1, -1]])
    T = Matrix.from_rows([[1, 0, 0], [0, 0, 1], [-1, -1, -1]])
    return Rep("rho3", 3, S, T)


def rho_zeta() -> Rep:
    return Rep("rho_zeta", 3, Matrix.identity(1), Matrix(1, 1, [CycNum.zeta(3)]))


def rho_zeta2() -> Rep:
    return Rep("rho_zeta2", 3, Matrix.identity(1), Matrix(1, 1, [CycNum.zeta(3, 2)]))


def builtin_registry() -> RepRegistry:
    return RepRegistry([trivial_rep(), rho3(), rho_zeta(), rho_zeta2()])
