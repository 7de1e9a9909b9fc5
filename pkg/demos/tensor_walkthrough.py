"""A walk through the tensor construction on the diamond with the b/c swap.

The diamond G = {0 < a, b, c < 1} carries F swapping b and c; the frame J has
nodes f2, f3, f4 with f2 S f3, f3 S f2 and f4 S f4. The script builds G^J, the
pair set that encodes F, the closure, and the resulting 15-element lattice,
then checks that the unit G -> (J⊗G)^J is an F-homomorphism.
"""
from tenselat import (
    eta,
    frame_operator,
    is_f_homomorphism,
    is_in_E_leq,
    tensor,
    tensor_pairs,
)
from tenselat.adjunctions import tensor_power
from tenselat.worked_examples import diamond_fss, swap_frame


def show(G, vec):
    return "(" + ",".join(G.label(v) for v in vec) + ")"


def main():
    H, J = diamond_fss(), swap_frame()
    G = H.lattice
    GJ = frame_operator(G, J)
    print(f"G has {G.size} elements; G^J has {GJ.lattice.size}")

    X = tensor_pairs(J, H)
    print(f"\n{len(X)} distinct pairs to identify:")
    for c, d in X:
        print(f"  {show(G, c)} ~ {show(G, d)}")

    T = tensor(J, H)
    print(f"\nJ⊗H has {T.size} elements (fixpoints of the closure):")
    print("  " + "  ".join(T.label(v) for v in T.elements))

    a = tuple(G.element(s) for s in "b00")
    print(f"\nclosure of {show(G, a)} is {T.label(T.nucleus(a))}")

    e = eta(J, H)
    TJ = tensor_power(J, H)
    print("\nunit on each element:")
    for x in G.elements:
        print(f"  eta({G.label(x)}) = " + ", ".join(T.label(v) for v in e(x)))
    print(f"\neta is an F-homomorphism: {is_f_homomorphism(e, H, TJ)}")
    print(f"eta is a good embedding (E_leq): {is_in_E_leq(e, H, TJ)}")


if __name__ == "__main__":
    main()
