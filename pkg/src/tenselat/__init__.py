"""Tense operators on finite sup-semilattices and the adjunctions between them.

The package builds, from finite inputs, the three constructions that move a
join-preserving operator ``F`` between a lattice and a relational frame:

* ``L^J`` with the induced operator ``F^J`` (:func:`frame_operator`);
* the tensor ``J⊗H``, a quotient of ``G^T`` by the nucleus generated by
  the pair set ``[J,H]`` (:func:`tensor`);
* the hom frame ``J[H,L]`` of join-homomorphisms ``G -> L`` (:func:`hom_frame`);

together with the units and counits of the three adjunctions they form and
executable checks of their triangle identities and naturality squares.
"""
from .errors import *  # noqa: F401,F403
from .order import (
    FiniteLattice,
    PowerLattice,
    SupLattice,
    as_finite,
    chain,
    max_carrier,
    power_lattice,
    validate_lattice,
)
from .morphisms import (
    FSupLattice,
    JoinHom,
    compose,
    enumerate_join_homs,
    enumerate_join_homs_bruteforce,
    identity,
    is_f_homomorphism,
    is_in_E_leq,
    is_join_hom,
    is_lax_morphism,
    is_order_embedding,
    make_fss,
)
from .nuclei import (
    Congruence,
    Nucleus,
    Prenucleus,
    Quotient,
    congruence_to_nucleus,
    factor_through,
    identity_nucleus,
    nucleus_closure,
    nucleus_to_congruence,
    prenucleus_from_pairs,
    quotient,
)
from .frames import Frame, FrameHom, frame_identity, is_frame_hom, make_frame
from .constructions import (
    HomFrame,
    LazyHomFrame,
    TensorLattice,
    backward_powerset,
    forward_powerset,
    frame_operator,
    hom_frame,
    hom_frame_map_cod,
    hom_frame_map_dom,
    hom_power_map,
    indicator,
    indicator_eq,
    tensor,
    tensor_map_frame,
    tensor_map_fss,
    tensor_pairs,
)
from .adjunctions import (
    AdjunctionReport,
    LawVerdict,
    check_naturality,
    check_triangles,
    epsilon,
    eta,
    mu,
    nu,
    phi,
    psi,
)

__version__ = "0.1.0"
