"""Mix twisted basic modules, split them into the eight pieces and untwist each."""

from qaffine.classify import eight_pieces, is_basic, twist
from qaffine.construction import construct_module, direct_sum
from qaffine.relations import check_hat_relations
from qaffine.sl2 import decompose_irreducibles, render_tags, restrict_to_sl2
from qaffine.system import gen_evaluation


def basic(d, a, q=2):
    return construct_module(gen_evaluation(d, a, q))[0]


def main():
    M = direct_sum(basic(2, 1), twist(basic(2, 5), -1, 1), twist(basic(3, 1), 1, -1))
    print(f"module of dimension {M.dim}; basic: {is_basic(M)}")
    pieces = eight_pieces(M)
    for key, dim in sorted(pieces.dims().items(), key=lambda kv: kv[0].label):
        line = f"{key.label:<18} dim={dim}"
        if dim:
            piece = pieces.piece_module(key)
            untwisted = twist(piece, key.epsilon0, key.epsilon1)
            line += (f"  relations={'ok' if check_hat_relations(piece).passed else 'FAIL'}"
                     f"  untwisted diameter={is_basic(untwisted)}")
        print(line)
    print("restriction to the i=0 subalgebra:")
    print(render_tags(decompose_irreducibles(restrict_to_sl2(M, 0))))


if __name__ == "__main__":
    main()
