import numpy as np
import pytest

from chamberq import rootsys
from chamberq.rootsys import (
    RootSystem,
    build_root_system,
    dimension,
    dominant_weights,
    fundamental_spherical_weights,
    indivisible_positive,
    is_reduced,
    rescale,
    rho,
    rho_pairing_identity,
    spherical_weight,
)


def norms_sq(rs):
    return sorted(round(float(a @ a), 9) for a in rs.roots)


# -- construction ------------------------------------------------------------


def test_a1_single_root():
    rs = build_root_system("A", 1, {"all": 2})
    assert rs.n_roots == 1
    assert float(rs.roots[0] @ rs.roots[0]) == pytest.approx(2.0, abs=1e-12)
    assert rs.mults[0] == 2.0
    assert dimension(rs) == pytest.approx(3.0)


def test_bc1_projective_plane_data():
    rs = build_root_system("BC", 1, {"short": 2, "long": 1})
    assert rs.n_roots == 2
    assert norms_sq(rs) == pytest.approx([0.5, 2.0])
    short = rs.roots[np.argmin([a @ a for a in rs.roots])]
    assert rs.index_of(2.0 * short) >= 0
    assert not is_reduced(rs)
    assert dimension(rs) == pytest.approx(4.0)


def test_a2_group_data():
    rs = build_root_system("A", 2, {"all": 2})
    assert rs.n_roots == 3
    assert norms_sq(rs) == pytest.approx([2.0, 2.0, 2.0])
    assert dimension(rs) == pytest.approx(8.0)  # dim SU(3)


@pytest.mark.parametrize(
    "label,rank,mults,n_pos",
    [
        ("B", 2, {"short": 1, "long": 1}, 4),
        ("C", 3, {"short": 1, "long": 1}, 9),
        ("D", 3, {"all": 1}, 6),
        ("BC", 2, {"short": 2, "long": 2, "double": 1}, 6),
        ("G2", 2, {"short": 1, "long": 1}, 6),
        ("F4", 4, {"short": 1, "long": 1}, 24),
    ],
)
def test_families_counts_and_normalization(label, rank, mults, n_pos):
    rs = build_root_system(label, rank, mults)
    assert rs.n_roots == n_pos
    assert max(norms_sq(rs)) == pytest.approx(2.0, abs=1e-12)


def test_build_errors():
    with pytest.raises(ValueError):
        build_root_system("E8", 8, {"all": 2})
    with pytest.raises(ValueError):
        build_root_system("G2", 3, {"short": 1, "long": 1})
    with pytest.raises(ValueError):
        build_root_system("B", 2, {"short": 1})  # missing long
    with pytest.raises(ValueError):
        build_root_system("A", 1, {"all": -1.0})
    with pytest.raises(ValueError):
        build_root_system("A", 1, {"all": 2, "bogus": 1})
    with pytest.raises(ValueError):
        build_root_system("B", 1, {"short": 1, "long": 1})


def test_geometric_constraint_odd_with_double():
    # odd multiplicity on the halved root whose double is present
    with pytest.raises(ValueError):
        build_root_system("BC", 1, {"short": 3, "long": 1})
    # allowed when the integer constraints are switched off
    rs = build_root_system("BC", 1, {"short": 3, "long": 1}, geometric=False)
    assert not rs.geometric


def test_direct_constructor_validation():
    with pytest.raises(ValueError):
        RootSystem(rank=1, roots=np.array([[0.0]]), mults=np.array([1.0]))
    with pytest.raises(ValueError):
        RootSystem(rank=1, roots=np.array([[1.0], [1.0]]), mults=np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        RootSystem(rank=1, roots=np.array([[1.0]]), mults=np.array([-2.0]))
    with pytest.raises(ValueError):
        # both the half and the double of the middle root are present
        RootSystem(
            rank=1,
            roots=np.array([[0.5], [1.0], [2.0]]),
            mults=np.array([1.0, 2.0, 1.0]),
        )
    # abstract data with real multiplicities is fine
    rs = RootSystem(rank=1, roots=np.array([[1.0]]), mults=np.array([0.7]))
    assert dimension(rs) == pytest.approx(1.7)


# -- rho and the pairing identity ---------------------------------------------


def test_rho_a1():
    rs = build_root_system("A", 1, {"all": 2})
    np.testing.assert_allclose(rho(rs), rs.roots[0], atol=1e-12)


def test_rho_bc1():
    rs = build_root_system("BC", 1, {"short": 2, "long": 1})
    beta = rs.roots[np.argmax([a @ a for a in rs.roots])]
    np.testing.assert_allclose(rho(rs), beta, atol=1e-12)


def test_rho_pairing_examples():
    a1 = build_root_system("A", 1, {"all": 2})
    lhs, rhs = rho_pairing_identity(a1, 0)
    assert lhs == pytest.approx(2.0, abs=1e-12)
    assert rhs == pytest.approx(2.0, abs=1e-12)

    bc1 = build_root_system("BC", 1, {"short": 2, "long": 1})
    lhs, rhs = rho_pairing_identity(bc1, 0)
    assert lhs == pytest.approx(1.0, abs=1e-12)
    assert rhs == pytest.approx(1.0, abs=1e-12)

    a2 = build_root_system("A", 2, {"all": 2})
    for j in range(2):
        lhs, rhs = rho_pairing_identity(a2, j)
        assert lhs == pytest.approx(2.0, abs=1e-12)
        assert rhs == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(IndexError):
        rho_pairing_identity(a2, 5)


# -- fundamental weights and the dominant lattice ------------------------------


def test_fundamental_weights_a1():
    rs = build_root_system("A", 1, {"all": 2})
    (mu,) = fundamental_spherical_weights(rs)
    np.testing.assert_allclose(mu, rs.roots[0], atol=1e-12)


def test_fundamental_weights_bc1():
    rs = build_root_system("BC", 1, {"short": 2, "long": 1})
    beta = rs.roots[np.argmax([a @ a for a in rs.roots])]
    (mu,) = fundamental_spherical_weights(rs)
    np.testing.assert_allclose(mu, beta, atol=1e-12)


def test_fundamental_weights_a2_are_doubled_classical():
    rs = build_root_system("A", 2, {"all": 2})
    a1, a2 = rs.simple_roots()
    mus = fundamental_spherical_weights(rs)
    # classical fundamental weights of the rank-2 simply laced system
    omegas = [(2.0 * a1 + a2) / 3.0, (a1 + 2.0 * a2) / 3.0]
    for mu, omega in zip(mus, omegas):
        np.testing.assert_allclose(mu, 2.0 * omega, atol=1e-10)
    # defining duality
    for j, mu in enumerate(mus):
        for k, a in enumerate(rs.simple_roots()):
            want = 1.0 if j == k else 0.0
            assert float(mu @ a) / float(a @ a) == pytest.approx(want, abs=1e-12)


def test_spherical_weight_examples():
    a1 = build_root_system("A", 1, {"all": 2})
    w0 = spherical_weight(a1, [0])
    np.testing.assert_allclose(w0.vector, np.zeros(1), atol=1e-15)
    w3 = spherical_weight(a1, [3])
    np.testing.assert_allclose(w3.vector, 3.0 * a1.roots[0], atol=1e-12)

    a2 = build_root_system("A", 2, {"all": 2})
    w11 = spherical_weight(a2, [1, 1])
    assert np.all(a2.roots @ w11.vector >= -1e-12)

    with pytest.raises(ValueError):
        spherical_weight(a1, [-1])
    with pytest.raises(ValueError):
        spherical_weight(a1, [1.5])
    with pytest.raises(ValueError):
        spherical_weight(a1, [1, 2])


def test_weight_lattice_coordinates_recover(catalog):
    # <vector, beta_k / |beta_k|^2> reproduces the integer coordinates
    for entry in catalog.entries:
        rs = entry.to_root_system()
        simple = rs.simple_roots()
        betas = []
        for a in simple:
            betas.append(2.0 * a if rs.index_of(2.0 * a) >= 0 else a)
        for w in dominant_weights(rs, 2):
            for k, b in enumerate(betas):
                got = float(w.vector @ b) / float(b @ b)
                assert got == pytest.approx(w.coeffs[k], abs=1e-12)


# -- structural invariants over the catalog ------------------------------------


def test_weyl_invariant_multiplicities(catalog):
    for entry in catalog.entries:
        rs = entry.to_root_system()
        for s in rs.simple_roots():
            ss = float(s @ s)
            for i, a in enumerate(rs.roots):
                refl = a - (2.0 * float(a @ s) / ss) * s
                k = rs.index_of(refl)
                if k < 0:
                    k = rs.index_of(-refl)
                assert k >= 0, "system not closed under simple reflection"
                assert rs.mults[k] == pytest.approx(rs.mults[i], rel=1e-12)


def test_rho_strictly_dominant(catalog):
    for entry in catalog.entries:
        rs = entry.to_root_system()
        rv = rho(rs)
        for a in rs.roots:
            assert float(rv @ a) > 1e-12


def test_weight_dominance(catalog):
    for entry in catalog.entries:
        rs = entry.to_root_system()
        for w in dominant_weights(rs, 3):
            assert np.all(rs.roots @ w.vector >= -1e-12)


def test_strict_ratio_gap(catalog):
    # for each simple root j, the pairing ratio of rho to mu_j is minimized
    # at the simple root itself, strictly, among indivisible roots that pair
    # positively with mu_j
    for entry in catalog.entries:
        rs = entry.to_root_system()
        rv = rho(rs)
        mus = fundamental_spherical_weights(rs)
        simple = rs.simple_roots()
        for j in range(rs.rank):
            aj = simple[j]
            base = (float(rv @ aj) / float(aj @ aj)) / (
                float(mus[j] @ aj) / float(aj @ aj)
            )
            for a, _, _ in indivisible_positive(rs):
                if np.allclose(a, aj, atol=1e-9):
                    continue
                pairing = float(mus[j] @ a) / float(a @ a)
                if pairing <= 1e-12:
                    continue
                ratio = (float(rv @ a) / float(a @ a)) / pairing
                assert base < ratio - 1e-12


def test_rho_pairing_identity_all_catalog(catalog):
    for entry in catalog.entries:
        rs = entry.to_root_system()
        for j in range(len(rs.simple_roots())):
            lhs, rhs = rho_pairing_identity(rs, j)
            assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_scale_invariance_of_normalized_pairings():
    rs = build_root_system("BC", 1, {"short": 2, "long": 1})
    w = spherical_weight(rs, [2])
    rv = rho(rs)
    base = [
        float((w.vector + rv) @ a) / float(a @ a) for a, _, _ in indivisible_positive(rs)
    ]
    for c in (0.5, 2.0):
        rs2 = rescale(rs, c)
        w2 = spherical_weight(rs2, [2])
        rv2 = rho(rs2)
        got = [
            float((w2.vector + rv2) @ a) / float(a @ a)
            for a, _, _ in indivisible_positive(rs2)
        ]
        np.testing.assert_allclose(got, base, rtol=1e-12)


def test_metric_scale_multiplies_pairings():
    rs1 = build_root_system("A", 1, {"all": 2})
    rs2 = build_root_system("A", 1, {"all": 2}, metric_scale=2.0)
    assert float(rs2.roots[0] @ rs2.roots[0]) == pytest.approx(
        2.0 * float(rs1.roots[0] @ rs1.roots[0]), rel=1e-12
    )


# -- indivisible roots ---------------------------------------------------------


def test_indivisible_positive_examples():
    a1 = build_root_system("A", 1, {"all": 2})
    [(a, m, m2)] = indivisible_positive(a1)
    assert (m, m2) == (2.0, 0.0)

    bc1 = build_root_system("BC", 1, {"short": 2, "long": 1})
    [(a, m, m2)] = indivisible_positive(bc1)
    assert (m, m2) == (2.0, 1.0)
    assert float(a @ a) == pytest.approx(0.5, abs=1e-12)

    a2 = build_root_system("A", 2, {"all": 2})
    entries = indivisible_positive(a2)
    assert len(entries) == 3
    assert all((m, m2) == (2.0, 0.0) for _, m, m2 in entries)


def test_dimension_examples():
    assert dimension(build_root_system("A", 1, {"all": 2})) == pytest.approx(3)
    assert dimension(build_root_system("A", 1, {"all": 1})) == pytest.approx(2)
    assert dimension(build_root_system("A", 2, {"all": 2})) == pytest.approx(8)


def test_fundamental_weights_degenerate_basis():
    # two collinear roots in a rank-2 space: only one simple root, so the
    # unmultipliable basis cannot span the ambient space
    rs = RootSystem(
        rank=2,
        roots=np.array([[1.0, 0.0], [2.0, 0.0]]),
        mults=np.array([1.5, 0.5]),
    )
    with pytest.raises(ValueError):
        fundamental_spherical_weights(rs)
