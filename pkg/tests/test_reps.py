import random
from fractions import Fraction

import pytest

from vvmf.exactnum import CycNum
from vvmf.linalg import Matrix
from vvmf.reps import (
    Rep,
    RepRegistry,
    builtin_registry,
    decompose,
    hom_fixed_subspace,
    hom_space,
    is_intertwiner,
    rep_isomorphic,
    rho3,
    rho_zeta,
    rho_zeta2,
    sl2_word,
    trivial_rep,
)


@pytest.fixture(scope="module")
def reg():
    return builtin_registry()


def test_threefold_type_passes_validation():
    report = rho3().validate()
    assert report.ok, str(report)


def test_trivial_type_passes_validation():
    assert trivial_rep().is_valid()


def test_braid_relation_failure_detected():
    swap = Matrix.from_rows([[0, 1], [1, 0]])
    bad = Rep("bad", 1, swap, Matrix.identity(2))
    report = bad.validate()
    # direct multiplication oracle: (ST)^3 = S here, and S != S^2 = I
    st = swap * Matrix.identity(2)
    assert st * st * st == swap
    assert not report.ok
    failed = {name for name, ok in report.checks if not ok}
    assert "(ST)^3 = S^2" in failed


def test_dual_examples(reg):
    triv = reg.get("triv")
    assert triv.dual().S == triv.S and triv.dual().T == triv.T
    r3 = reg.get("rho3")
    dd = r3.dual().dual()
    assert dd.S == r3.S and dd.T == r3.T
    dz = reg.get("rho_zeta").dual()
    assert dz.T[0, 0] == CycNum.zeta(3, 2)


def test_tensor_examples(reg):
    r3 = reg.get("rho3")
    t = r3.tensor(reg.get("triv"))
    assert t.S == r3.S and t.T == r3.T
    zz = reg.get("rho_zeta").tensor(reg.get("rho_zeta"))
    assert zz.T[0, 0] == CycNum.zeta(3, 2)
    assert r3.tensor(r3).dim == 9


def test_hom_dimensions_of_tensor_square(reg):
    rr = reg.get("rho3").tensor(reg.get("rho3"))
    dims = {lbl: len(hom_space(rr, reg.get(lbl))) for lbl in reg.labels()}
    assert dims == {"triv": 1, "rho3": 2, "rho_zeta": 1, "rho_zeta2": 1}


def test_reference_rows_lie_in_hom_spaces(reg):
    rr = reg.get("rho3").tensor(reg.get("rho3"))
    half = Fraction(1, 2)
    row_triv = [1, half, half, half, 1, half, half, half, 1]
    sub = hom_fixed_subspace(rr, reg.get("triv"))
    assert sub.dim == 1 and sub.member(row_triv)
    z = CycNum.zeta(3)
    row_zeta = [1, z + 1, -z, z + 1, z, -1, -z, -1, -z - 1]
    subz = hom_fixed_subspace(rr, reg.get("rho_zeta"))
    assert subz.dim == 1 and subz.member(row_zeta)


def test_intertwining_property_on_words(reg):
    rng = random.Random(2024)
    rr = reg.get("rho3").tensor(reg.get("rho3"))
    for lbl in reg.labels():
        target = reg.get(lbl)
        for phi in hom_space(rr, target):
            assert is_intertwiner(phi, rr, target)
            for _ in range(4):
                word = [rng.choice("ST") for _ in range(rng.randint(1, 6))]
                lhs, rhs = Matrix.identity(rr.dim), Matrix.identity(target.dim)
                for w in word:
                    lhs = lhs * (rr.S if w == "S" else rr.T)
                    rhs = rhs * (target.S if w == "S" else target.T)
                assert phi * lhs == rhs * phi


def test_decompose_tensor_square_fully(reg):
    rr = reg.get("rho3").tensor(reg.get("rho3"))
    result = decompose(rr, reg)
    assert result.multiplicities == {"triv": 1, "rho3": 2, "rho_zeta": 1, "rho_zeta2": 1}
    assert result.residual is None
    assert result.accounted_dim(reg) == 9


def test_decompose_trivial_against_itself():
    reg1 = RepRegistry([trivial_rep()])
    result = decompose(trivial_rep(), reg1)
    assert result.multiplicities == {"triv": 1}
    assert result.residual is None


def test_decompose_with_irreducible_residual():
    partial = RepRegistry([trivial_rep(), rho_zeta(), rho_zeta2()])
    result = decompose(rho3(), partial)
    assert result.multiplicities == {}
    assert result.residual is not None and result.residual.dim == 3
    assert result.residual_flagged
    assert len(hom_space(result.residual, result.residual)) == 1


def test_residual_splitting_scalar_case(reg):
    # remove the one-dimensional entries; the leftover of the tensor square
    # is two T-eigenlines on which S acts trivially
    partial = RepRegistry([trivial_rep(), rho3()])
    rr = reg.get("rho3").tensor(reg.get("rho3"))
    result = decompose(rr, partial)
    assert result.multiplicities == {"triv": 1, "rho3": 2}
    assert result.residual is not None and result.residual.dim == 2
    assert not result.residual_flagged
    eigs = sorted(str(r.T[0, 0]) for r in result.residual_split)
    assert eigs == sorted([str(CycNum.zeta(3)), str(CycNum.zeta(3, 2))])


def test_isomorphism_tests(reg):
    assert not rep_isomorphic(reg.get("rho_zeta"), reg.get("rho_zeta2"))
    assert rep_isomorphic(reg.get("rho3"), reg.get("rho3"))
    assert not rep_isomorphic(reg.get("rho3"), reg.get("triv"))
    reducible = reg.get("rho3").tensor(reg.get("rho3"))
    with pytest.raises(ValueError):
        rep_isomorphic(reducible, reg.get("rho3"))


def test_dual_tensor_preserve_validity(reg):
    rng = random.Random(31)
    entries = reg.entries
    for _ in range(6):
        a, b = rng.choice(entries), rng.choice(entries)
        assert a.dual().is_valid()
        assert a.tensor(b).is_valid()


def test_multiplicity_accounting(reg):
    rng = random.Random(77)
    for _ in range(4):
        a, b = rng.choice(reg.entries), rng.choice(reg.entries)
        r = a.tensor(b)
        result = decompose(r, reg)
        assert result.accounted_dim(reg) == r.dim


def test_frobenius_reciprocity(reg):
    for a in reg.entries:
        for b in reg.entries:
            for c in reg.entries:
                lhs = len(hom_space(a.tensor(b), c))
                rhs = len(hom_space(a, b.dual().tensor(c)))
                assert lhs == rhs, (a.label, b.label, c.label)


def test_registry_rejects_reducible_or_duplicate_entries(reg):
    with pytest.raises(ValueError):
        RepRegistry([trivial_rep(), rho3().tensor(rho3())])
    with pytest.raises(ValueError):
        RepRegistry([rho_zeta(), rho_zeta()])


def test_sl2_word_reconstructs_matrices():
    rng = random.Random(8)
    S = ((0, -1), (1, 0))
    T = ((1, 1), (0, 1))

    def mul(p, q):
        return (
            (p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]),
            (p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]),
        )

    def matpow(m, e):
        out = ((1, 0), (0, 1))
        if e < 0:
            m = ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))
            e = -e
        for _ in range(e):
            out = mul(out, m)
        return out

    for _ in range(25):
        g = ((1, 0), (0, 1))
        for _ in range(rng.randint(1, 8)):
            if rng.random() < 0.5:
                g = mul(g, S)
            else:
                g = mul(g, matpow(T, rng.randint(-3, 3)))
        acc = ((1, 0), (0, 1))
        for kind, e in sl2_word(g[0][0], g[0][1], g[1][0], g[1][1]):
            acc = mul(acc, matpow(S if kind == "S" else T, e))
        assert acc == g


def test_evaluate_agrees_with_generator_products(reg):
    rng = random.Random(12)
    r3 = reg.get("rho3")
    S = ((0, -1), (1, 0))
    T = ((1, 1), (0, 1))

    def mul(p, q):
        return (
            (p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]),
            (p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]),
        )

    for _ in range(10):
        g = ((1, 0), (0, 1))
        img = Matrix.identity(3)
        for _ in range(rng.randint(1, 6)):
            if rng.random() < 0.5:
                g = mul(g, S)
                img = img * r3.S
            else:
                g = mul(g, T)
                img = img * r3.T
        assert r3.evaluate(g) == img


def test_json_round_trip(reg):
    import json

    for entry in reg.entries:
        back = Rep.from_json(json.loads(json.dumps(entry.to_json())))
        assert back.S == entry.S and back.T == entry.T and back.level == entry.level
