"""Print every intermediate of the construction for a small evaluation system."""

import argparse

from qaffine.construction import construct_module
from qaffine.linalg import parse_scalar
from qaffine.system import gen_evaluation


def show(name, value):
    if isinstance(value, tuple):
        for i, s in enumerate(value):
            print(f"{name}_{i} = span{[tuple(str(x) for x in v) for v in s.vectors()]}")
    else:
        print(f"{name} =")
        for row in value.entries:
            print("   ", " ".join(f"{str(x):>7}" for x in row))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--a", default="1")
    p.add_argument("--q", default="2")
    args = p.parse_args()
    sys_ = gen_evaluation(args.d, parse_scalar(args.a), parse_scalar(args.q))
    module, trace = construct_module(sys_)
    for name in ("K", "A", "V", "W", "Astar", "Vstar", "Wstar", "H", "B", "Bstar", "r", "l"):
        show(name, getattr(trace, name))
    for name, M in module.generators().items():
        show(name, M)


if __name__ == "__main__":
    main()
