"""Construct every system of the acceptance corpus and tabulate the checks."""

import argparse
import time

from qaffine.acceptance import corpus
from qaffine.construction import construct_module
from qaffine.relations import check_hat_relations, check_intermediate, check_structure_lemmas


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lemmas", action="store_true", help="also run the structure lemmas and identities")
    args = p.parse_args()
    print(f"{'d':>2} {'q':>4} {'dim':>4} {'rho':<16} {'relations':<9} {'lemmas':<6} {'seconds':>7}")
    failures = 0
    for s in corpus():
        t0 = time.perf_counter()
        m, t = construct_module(s, check=False)
        relations = check_hat_relations(m).passed
        ok = relations
        lemmas = "-"
        if args.lemmas:
            good = check_structure_lemmas(t, s).passed and check_intermediate(t, s).passed
            lemmas = "ok" if good else "FAIL"
            ok = ok and good
        failures += not ok
        dt = time.perf_counter() - t0
        print(f"{s.d:>2} {str(s.q):>4} {s.dim:>4} {str(list(t.rho)):<16} "
              f"{'ok' if relations else 'FAIL':<9} {lemmas:<6} {dt:>7.3f}")
    print(f"{failures} failure(s)")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
