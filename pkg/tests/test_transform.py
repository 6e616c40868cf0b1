import numpy as np
import pytest

import oracle
from hexcc.lattice import COLORS, dual_triangular, link_lattice
from hexcc.models import (
    color_code_h,
    edge_ising,
    perturbed_h,
    tfim_h,
    toric_code_h,
    toric_code_with_holes_h,
    x_stabilizer,
    z_stabilizer,
)
from hexcc.pauli import OperatorSum, PauliString, gf2_span_equal
from hexcc.spectra import full_spectrum
import hexcc.transform as transform
from hexcc.transform import (
    UnsupportedTermError,
    compare_eigenvalues,
    generic_symmetry_masks,
    green_frame,
    identity_frame,
    ising_decoupling_matches,
    ising_frame,
    ising_sector_equivalence,
    parity_matched_eigenvalues,
    red_frame,
    rewrite,
    rewrite_sum,
    transform_h_ising,
    verify_group_image,
    verify_spectral_equivalence,
)


def test_identity_frame_passthrough(lat33):
    frame = identity_frame(lat33)
    g = x_stabilizer(lat33, 2)
    result = rewrite(g, frame)
    assert result.constant == 0.0
    assert result.image.terms == ((1.0, g),)
    with pytest.raises(UnsupportedTermError):
        rewrite(PauliString(n=18, x=1), frame)


def test_frames_reject_phase_and_foreign_register(lat33):
    frame = ising_frame(lat33)
    shifted = PauliString(n=18, x=x_stabilizer(lat33, 0).x, phase=2)
    with pytest.raises(UnsupportedTermError):
        rewrite(shifted, frame)
    with pytest.raises(UnsupportedTermError):
        frame.recognize(PauliString(n=4, x=1))


def test_ising_rewrite_images(lat33):
    frame = ising_frame(lat33)
    assert frame.target_n == 9

    bx = rewrite(x_stabilizer(lat33, 3), frame)
    assert bx.constant == 1.0 and bx.is_trivial

    bz = rewrite(z_stabilizer(lat33, 3), frame)
    assert bz.constant == 0.0
    ((_, image),) = bz.image.terms
    assert image.x == 0 and image.z == 1 << 3

    edge = lat33.edges[0]
    result = rewrite(edge_ising(lat33, edge.id), frame)
    ((_, image),) = result.image.terms
    want = (1 << edge.plaquettes[0]) | (1 << edge.plaquettes[1])
    assert image.z == 0 and image.x == want


def test_red_rewrite_images(lat33):
    frame = red_frame(lat33)
    assert frame.target_n == 9

    red_edge = lat33.edges_of_color("r")[0]
    assert rewrite(edge_ising(lat33, red_edge.id), frame).constant == 1.0

    green_plaq = lat33.plaquettes_of_color("g")[0]
    assert rewrite(x_stabilizer(lat33, green_plaq.id), frame).constant == 1.0
    result = rewrite(z_stabilizer(lat33, green_plaq.id), frame)
    ((_, image),) = result.image.terms
    assert image.x == 0 and image.weight == 3

    red_plaq = lat33.plaquettes_of_color("r")[0]
    result = rewrite(x_stabilizer(lat33, red_plaq.id), frame)
    ((_, image),) = result.image.terms
    assert image.z == 0 and image.weight == 6

    with pytest.raises(UnsupportedTermError):
        rewrite(z_stabilizer(lat33, red_plaq.id), frame)
    other_edge = lat33.edges_of_color("g")[0]
    with pytest.raises(UnsupportedTermError):
        rewrite(edge_ising(lat33, other_edge.id), frame)


def test_green_rewrite_images(lat33):
    frame = green_frame(lat33)
    assert frame.target_n == 9

    green_edge = lat33.edges_of_color("g")[0]
    assert rewrite(edge_ising(lat33, green_edge.id), frame).constant == 1.0

    blue_edge = lat33.edges_of_color("b")[0]
    result = rewrite(edge_ising(lat33, blue_edge.id), frame)
    ((_, image),) = result.image.terms
    assert image.z == 0 and image.weight == 2

    red_edge = lat33.edges_of_color("r")[0]
    with pytest.raises(UnsupportedTermError):
        rewrite(edge_ising(lat33, red_edge.id), frame)

    green_plaq = lat33.plaquettes_of_color("g")[0]
    result = rewrite(x_stabilizer(lat33, green_plaq.id), frame)
    ((_, image),) = result.image.terms
    assert image.z == 0 and image.weight == 6

    red_plaq = lat33.plaquettes_of_color("r")[0]
    result = rewrite(z_stabilizer(lat33, red_plaq.id), frame)
    ((_, image),) = result.image.terms
    assert image.x == 0 and image.weight == 3

    blue_plaq = lat33.plaquettes_of_color("b")[0]
    assert rewrite(x_stabilizer(lat33, blue_plaq.id), frame).constant == 1.0
    with pytest.raises(UnsupportedTermError):
        rewrite(z_stabilizer(lat33, blue_plaq.id), frame)


def test_rewrite_sum_linearity(lat33):
    frame = ising_frame(lat33)
    h = OperatorSum(
        n=18,
        terms=(
            (-2.0, x_stabilizer(lat33, 0)),
            (0.5, z_stabilizer(lat33, 1)),
        ),
    )
    constant, image = rewrite_sum(h, frame)
    assert constant == -2.0
    assert image.terms == ((0.5, PauliString(n=9, z=1 << 1)),)


def test_transform_h_ising_structure(lat33):
    m = perturbed_h(lat33, (0.2, 0.6, 0.9))
    deco = transform_h_ising(m)
    assert deco.constant == -9.0
    for color, j in zip(COLORS, (0.2, 0.6, 0.9)):
        tfim = deco.tfims[color]
        assert tfim.n == 3
        # 3 single-site Z fields plus 9 bonds.
        assert tfim.n_terms == 12
        fields = [c for c, p in tfim.terms if p.x == 0]
        bonds = [c for c, p in tfim.terms if p.z == 0]
        assert all(c == pytest.approx(-(1 - j)) for c in fields)
        assert all(c == pytest.approx(-j) for c in bonds)


def test_ising_decoupling_random_couplings(lat33):
    rng = np.random.default_rng(31)
    points = [tuple(rng.uniform(0, 1, 3)) for _ in range(10)]
    points += [(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1)]
    for point in points:
        assert ising_decoupling_matches(perturbed_h(lat33, point))


def test_ising_decoupling_requires_couplings(lat33):
    with pytest.raises(ValueError):
        ising_decoupling_matches(color_code_h(lat33))


def test_red_frame_group_image(lat33):
    m = perturbed_h(lat33, (1, 0, 0))
    source = (
        m.group("x_stabilizers")
        + m.group("z_stabilizers_g")
        + m.group("z_stabilizers_b")
        + m.group("ising_r")
    )
    target_model = toric_code_h(link_lattice(lat33, "r"))
    target = target_model.group("vertex_x") + target_model.group("plaquette_z")
    assert verify_group_image(source, red_frame(lat33), target)


def test_green_frame_group_image(lat33):
    m = perturbed_h(lat33, (0, 1, 1))
    source = (
        m.group("x_stabilizers")
        + m.group("z_stabilizers_r")
        + m.group("ising_g")
        + m.group("ising_b")
    )
    target_model = toric_code_with_holes_h(lat33)
    target = (
        target_model.group("vertex_x")
        + target_model.group("plaquette_z")
        + target_model.group("ising_pairs")
    )
    assert verify_group_image(source, green_frame(lat33), target)


def test_group_image_detects_mismatch(lat33):
    m = perturbed_h(lat33, (1, 0, 0))
    source = m.group("x_stabilizers") + m.group("ising_r")
    target_model = toric_code_h(link_lattice(lat33, "r"))
    # Adding an independent single-site generator enlarges the target span.
    target = target_model.group("vertex_x") + (PauliString(n=9, z=1),)
    assert not verify_group_image(source, red_frame(lat33), target)


def test_compare_eigenvalues_identical():
    report = compare_eigenvalues([0.0, 1.0, 1.0], [0.0, 1.0, 1.0])
    assert report.passed
    assert report.multiplicity_ratio == 1
    assert report.max_deviation == 0.0


def test_compare_eigenvalues_doubled_and_shifted():
    a = [2.0, 2.0, 3.0, 3.0, 5.0, 5.0]
    b = [1.0, 2.0, 4.0]
    report = compare_eigenvalues(a, b, shift=1.0)
    assert report.passed
    assert report.multiplicity_ratio == 2
    assert report.ratio_power_of_two


def test_compare_eigenvalues_rejects_mismatch():
    report = compare_eigenvalues([0.0, 1.0], [0.0, 2.0])
    assert not report.passed
    assert not report.distinct_match


def test_compare_eigenvalues_ratio_three_not_power():
    report = compare_eigenvalues([0.0] * 3 + [1.0] * 3, [0.0, 1.0])
    assert report.distinct_match
    assert report.ratio_uniform
    assert not report.ratio_power_of_two
    assert not report.passed


def test_compare_eigenvalues_nonuniform_ratio():
    report = compare_eigenvalues([0.0, 0.0, 1.0], [0.0, 1.0])
    assert report.distinct_match
    assert not report.ratio_uniform
    assert not report.passed


def test_compare_eigenvalues_partial():
    report = compare_eigenvalues(
        [0.0, 1.0, 2.0], [0.0, 1.0, 9.9], partial=True, tol=1e-9
    )
    assert not report.distinct_match
    ok = compare_eigenvalues([0.0, 1.0], [0.0, 1.0], partial=True)
    assert ok.passed and ok.partial


def test_equivalence_report_to_dict():
    report = compare_eigenvalues([0.0], [0.0])
    data = report.to_dict()
    for key in (
        "method",
        "partial",
        "passed",
        "distinct_match",
        "max_deviation",
        "multiplicity_ratio",
        "n_distinct",
        "shift",
        "tol",
        "lowest",
    ):
        assert key in data


def test_spectral_equivalence_self(lat33):
    h = tfim_h(dual_triangular(lat33, "r"), 0.4).hamiltonian
    report = verify_spectral_equivalence(h, h)
    assert report.passed
    assert report.method == "dense"
    assert report.multiplicity_ratio == 1


def test_spectral_equivalence_identity_shift(lat33):
    h = tfim_h(dual_triangular(lat33, "g"), 0.3).hamiltonian
    lifted = h + OperatorSum(n=h.n, terms=((1.0, PauliString.identity(h.n)),))
    report = verify_spectral_equivalence(lifted, h, shift=1.0)
    assert report.passed
    assert report.multiplicity_ratio == 1


def test_spectral_equivalence_sector_route(lat36):
    # Pad with one untouched qubit: the detector finds its X symmetry, the
    # sector route splits the doubled spectrum back into two exact copies.
    h = tfim_h(dual_triangular(lat36, "r"), 0.45).hamiltonian
    padded = OperatorSum(
        n=h.n + 1,
        terms=tuple((c, PauliString(n=h.n + 1, x=p.x, z=p.z)) for c, p in h.terms),
    )
    report = verify_spectral_equivalence(padded, h, dense_limit=1 << h.n)
    assert report.passed
    assert report.method == "sector"
    assert report.multiplicity_ratio == 2


def test_spectral_equivalence_partial_route(lat36, monkeypatch):
    # Suppressing symmetry detection forces the matrix-free partial path.
    h = tfim_h(dual_triangular(lat36, "r"), 0.45).hamiltonian
    padded = OperatorSum(
        n=h.n + 1,
        terms=tuple((c, PauliString(n=h.n + 1, x=p.x, z=p.z)) for c, p in h.terms),
    )
    monkeypatch.setattr(transform, "xtype_symmetry_masks", lambda _: [])
    # Every level is doubled by the padding; a wide Krylov subspace keeps the
    # iteration from dropping copies.
    report = verify_spectral_equivalence(
        padded, h, dense_limit=1 << h.n, k=10, ncv=60
    )
    assert report.method == "lanczos-partial"
    assert report.partial
    assert report.passed


def test_spectral_equivalence_reference_too_large(lat33):
    h = tfim_h(dual_triangular(lat33, "r"), 0.5).hamiltonian
    with pytest.raises(ValueError, match="dense limit"):
        verify_spectral_equivalence(h, h, dense_limit=4)


def test_generic_symmetry_masks_stable_across_corners(lat33):
    from hexcc.spectra import xtype_symmetry_masks

    generic = generic_symmetry_masks(lat33)
    assert len(generic) == 11
    # The corner model loses its red Z terms, so its own symmetry group is
    # larger; the generic masks must still commute with the corner model.
    corner = perturbed_h(lat33, (1, 0, 0)).hamiltonian
    assert len(xtype_symmetry_masks(corner)) > 11
    for mask in generic:
        sym = PauliString(n=18, x=mask)
        for _, p in corner.terms:
            assert sym.commutes_with(p)


def test_parity_matched_block_dimension(lat33):
    deco = transform_h_ising(perturbed_h(lat33, (0.3, 0.3, 0.3)))
    evals = parity_matched_eigenvalues(deco)
    # Three 3-bit registers, parities locked together: 2 * 4^3 states.
    assert len(evals) == 128


@pytest.mark.parametrize(
    "point",
    [(0.25, 0.5, 0.75), (0.5, 0.5, 0.5), (1, 0, 0), (0, 1, 1)],
)
def test_ising_sector_equivalence(lat33, point):
    report = ising_sector_equivalence(perturbed_h(lat33, point))
    assert report.passed
    assert report.method == "invariant-sector"
    assert report.multiplicity_ratio == 1
    assert report.max_deviation <= 1e-9


def test_ising_sector_equivalence_respects_limit(lat33):
    with pytest.raises(ValueError, match="invariant sector"):
        ising_sector_equivalence(perturbed_h(lat33, (0.5, 0.5, 0.5)), dense_limit=64)
