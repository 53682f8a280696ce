"""Sharpness table for the example31 family.

For each (n, r, k): Gamma at the vertex-0 cone, the certificate slack and
oracle verdict for (k + n - 3) D, and the same for (k + n - 2) D.

    python3 scripts/sharpness.py --n 3 --r 2 3 5 10 --k 1 2
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from toricjets import jets
from toricjets.examples import example_3_1
from toricjets.semigroup import dual_data


@dataclass
class SharpnessConfig:
    n: int = 3
    rs: list[int] = field(default_factory=lambda: [2, 3, 5, 10])
    ks: list[int] = field(default_factory=lambda: [1, 2])


def row(n: int, r: int, k: int) -> dict:
    ex = example_3_1(n, r, k)
    i0 = ex.D.local.index((0,) * n)
    out = {"n": n, "r": r, "k": k, "gamma": dual_data(ex.D.fan, i0).gamma}
    t0 = time.perf_counter()
    for tag, mult in (("low", k + n - 3), ("high", k + n - 2)):
        if mult == 0:
            out[tag] = None
            continue
        D = mult * ex.D
        c = jets.certify(D, k)
        v = jets.oracle_jet_ample(D, k, k + 1)
        hit = None
        if v.failure is not None and v.failure.witness.get("kind") == "unreachable":
            hit = ex.witness() in v.failure.witness["all_exponents"]
        out[tag] = (mult, c.rows[i0].slack, c.certified, v.jet_ample, hit)
    out["seconds"] = time.perf_counter() - t0
    return out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=SharpnessConfig.n)
    ap.add_argument("--r", type=int, nargs="+", default=None)
    ap.add_argument("--k", type=int, nargs="+", default=None)
    a = ap.parse_args(argv)
    cfg = SharpnessConfig(a.n, a.r or SharpnessConfig().rs, a.k or SharpnessConfig().ks)

    print(f"{'n':>2} {'r':>3} {'k':>2} {'Gamma':>6} | {'mD':>3} {'slack':>6} cert oracle witness | "
          f"{'mD':>3} {'slack':>6} cert oracle | sec")
    for r in cfg.rs:
        for k in cfg.ks:
            try:
                res = row(cfg.n, r, k)
            except ValueError as exc:
                print(f"{cfg.n:>2} {r:>3} {k:>2}  skipped: {exc}")
                continue
            lo, hi = res["low"], res["high"]
            lo_s = "   -      -     -      -      -" if lo is None else \
                f"{lo[0]:>3} {str(lo[1]):>6} {str(lo[2])[0]:>4} {str(lo[3])[0]:>6} {str(lo[4]):>7}"
            print(f"{cfg.n:>2} {r:>3} {k:>2} {str(res['gamma']):>6} | {lo_s} | "
                  f"{hi[0]:>3} {str(hi[1]):>6} {str(hi[2])[0]:>4} {str(hi[3])[0]:>6} | {res['seconds']:.2f}")


if __name__ == "__main__":
    main()
