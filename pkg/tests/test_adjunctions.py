import numpy as np
import pytest

from tenselat.adjunctions import (
    check_naturality,
    check_triangles,
    eta,
    instance_reports,
    mu,
    nu,
    phi,
    tensor_power,
)
from tenselat.constructions import frame_operator, hom_frame, tensor
from tenselat.frames import Frame, FrameHom, is_frame_hom
from tenselat.morphisms import (
    FSupLattice,
    identity,
    is_f_homomorphism,
    is_in_E_leq,
    is_join_hom,
    is_lax_morphism,
    is_order_embedding,
)
from tenselat.order import chain
from tenselat.random_instances import random_instances


@pytest.mark.parametrize("which", ["I", "II", "III"])
def test_triangles_on_worked_instance(which, H5, J3, L2):
    rep = check_triangles(which, J3, H5, L2, rng=np.random.default_rng(0))
    assert rep.passed, rep.render()
    assert rep.verdicts


def test_eta_properties_on_worked_instance(H5, J3):
    e = eta(J3, H5)
    target = tensor_power(J3, H5)
    G = H5.lattice
    assert is_join_hom(e, G, target.lattice)
    assert is_f_homomorphism(e, H5, target)
    assert is_order_embedding(e)
    assert is_in_E_leq(e, H5, target)


def test_nu_on_swap_frame(J3, L2):
    n = nu(J3, L2)
    assert is_frame_hom(n, J3, n.target)
    # nu reflects the relation on this frame
    for i in J3.nodes:
        for k in J3.nodes:
            assert n.target.related(n(i), n(k)) == J3.related(i, k)


def test_mu_on_worked_instance(H5, L2):
    m = mu(H5, L2)
    JHL = hom_frame(H5, L2)
    target = frame_operator(L2, JHL, check=False)
    assert is_f_homomorphism(m, H5, target)
    assert is_in_E_leq(m, H5, target)


def test_phi_is_frame_map(H5, J3):
    p = phi(J3, H5)
    assert is_frame_hom(p, J3, p.target)


def test_singletons():
    one = chain(1)
    H = FSupLattice(one, {0: 0})
    J = Frame(["t"], [])
    for which in ("I", "II", "III"):
        assert check_triangles(which, J, H, one).passed


def test_naturality_identities(H5, J3, L2):
    i = identity(H5.lattice)
    assert is_lax_morphism(i, H5, H5)
    assert check_naturality("eta", J3, i, H5, H5).passed
    assert check_naturality("mu", i, H5, H5, L2).passed
    idJ = FrameHom(J3, J3, {t: t for t in J3.nodes})
    assert check_naturality("phi", idJ, H5).passed
    assert check_naturality("nu", idJ, L2).passed
    assert check_naturality("epsilon", J3, identity(L2)).passed
    assert check_naturality("psi", H5, identity(L2)).passed


def test_collapse_to_loop_naturality(H5, J3, L2, loop_frame):
    t = FrameHom(J3, loop_frame, lambda _: "t")
    assert check_naturality("phi", t, H5).passed
    assert check_naturality("nu", t, L2).passed
    # tensor over the loop collapses the swap
    assert tensor(loop_frame, H5).size <= tensor(J3, H5).size


def test_random_instances_pass_all_laws():
    insts, _ = random_instances(11, 6)
    for inst in insts:
        rng = np.random.default_rng([11, inst.index])
        for rep in instance_reports(inst, rng=rng):
            assert rep.passed, rep.render()
