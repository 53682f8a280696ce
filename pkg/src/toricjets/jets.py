"""k-jet ampleness: the per-cone certificate, the evaluation-map oracle at
fixed-point configurations, and the Fujita-type hypothesis checker.

The oracle uses monomial bases throughout.  For a configuration
``(sigma_1, k_1), ..., (sigma_r, k_r)`` the target of the evaluation map is
the sum of ``R_i / m_i^{k_i}`` with ``R_i = k[sigma_i^vee cap M]``; a section
``chi^u`` (u in P_D) maps, in the chart at ``x_{sigma_i}``, to
``chi^{u - u_i}``.  So the matrix row for the target coordinate ``(i, e)`` is
the unit vector of the section ``u_i + e`` (or zero if that point is not in
P_D), and surjectivity means all rows are nonzero and pairwise distinct.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import lattice as lat
from .divisor import (
    TCartierDivisor,
    TQDivisor,
    L_sigma,
    intersection_number,
    is_cartier,
    q_cartier_local_data,
)
from .polyhedral import Fan
from .semigroup import DualConeData, dual_data, quotient_basis_exponents, w_max, w_min


class JetError(ValueError):
    pass


def _cache(D: TCartierDivisor) -> dict:
    c = D.__dict__.get("_jet_cache")
    if c is None:
        c = D.__dict__["_jet_cache"] = {"dual": {}, "gamma": {}, "targets": {}, "ku": {}}
    return c


def _dual(D: TCartierDivisor, i: int) -> DualConeData:
    c = _cache(D)["dual"]
    if i not in c:
        c[i] = dual_data(D.fan, i)
    return c[i]


def _gamma(D: TCartierDivisor, i: int) -> Fraction:
    c = _cache(D)["gamma"]
    if i not in c:
        c[i] = _dual(D, i).gamma
    return c[i]


# --------------------------------------------------------------------------
# certificate


@dataclass(frozen=True)
class CertRow:
    cone: int
    vertex: tuple
    L: Fraction
    gamma: Fraction
    slack: Fraction


@dataclass
class JetCertificate:
    k: int
    rows: list[CertRow]

    @property
    def certified(self) -> bool:
        return all(r.slack >= 0 for r in self.rows)

    @property
    def min_slack(self) -> Fraction:
        return min(r.slack for r in self.rows)

    def worst_row(self) -> CertRow:
        return min(self.rows, key=lambda r: (r.slack, r.cone))


def certify(D: TCartierDivisor, k: int) -> JetCertificate:
    """Check L_sigma >= k + Gamma for every maximal cone.

    A certified result proves k-jet ampleness; a failed one proves nothing.
    """
    if k < 0:
        raise JetError("k must be nonnegative")
    D.require_ample()
    rows = []
    for i in range(len(D.fan.cones)):
        L = L_sigma(D, i)
        g = _gamma(D, i)
        rows.append(CertRow(i, D.local[i], L, g, L - k - g))
    return JetCertificate(k, rows)


@dataclass(frozen=True)
class MaxK:
    k: int
    per_cone: dict
    global_k: int
    gamma_x: Fraction
    min_edge: Fraction


def _floor_clamped(x: Fraction) -> int:
    return max(0, math.floor(x))


def max_certified_k(D: TCartierDivisor) -> MaxK:
    """Largest k certified cone by cone, and the coarser global bound
    floor(min edge length - Gamma_X)."""
    D.require_ample()
    per = {}
    for i in range(len(D.fan.cones)):
        per[i] = _floor_clamped(L_sigma(D, i) - _gamma(D, i))
    gx = max(_gamma(D, i) for i in range(len(D.fan.cones)))
    edge = min(x for _, x in D.wall_intersections)
    return MaxK(min(per.values()), per, _floor_clamped(edge - gx), gx, edge)


# --------------------------------------------------------------------------
# oracle


@dataclass(frozen=True)
class Configuration:
    """Distinct maximal cones with multiplicities k_i >= 1."""

    parts: tuple

    def __post_init__(self):
        parts = tuple((int(i), int(m)) for i, m in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise JetError("empty configuration")
        cones = [i for i, _ in parts]
        if len(set(cones)) != len(cones):
            raise JetError("configuration repeats a cone")
        if any(m < 1 for _, m in parts):
            raise JetError("multiplicities must be positive")

    @property
    def k(self) -> int:
        return sum(m for _, m in self.parts) - 1


@dataclass(frozen=True)
class OracleReport:
    configuration: Configuration
    surjective: bool
    witness: dict | None = None


def _targets(D: TCartierDivisor, i: int, m: int) -> tuple[list, dict, list]:
    """(basis exponents, target point -> exponent, unreachable exponents)."""
    c = _cache(D)["targets"]
    key = (i, m)
    if key not in c:
        Q = _dual(D, i)
        memo = _cache(D)["ku"].setdefault(i, {})
        B = quotient_basis_exponents(Q, m, memo)
        u = D.local[i]
        pts = {}
        bad = []
        for e in B:
            t = lat.add(u, e)
            if not D.section_exists(t):
                bad.append(e)
            pts[t] = e
        c[key] = (B, pts, bad)
    return c[key]


def oracle_configuration(D: TCartierDivisor, cfg: Configuration) -> OracleReport:
    """Exact surjectivity of the evaluation map at a fixed-point configuration.

    Valid for any Cartier D on a complete fan; sections are the lattice
    points of P_D.
    """
    _require_complete(D)
    ncones = len(D.fan.cones)
    if any(not 0 <= i < ncones for i, _ in cfg.parts):
        raise JetError("configuration names an unknown cone")
    data = []
    for i, m in cfg.parts:
        B, pts, bad = _targets(D, i, m)
        if bad:
            return OracleReport(cfg, False, {
                "kind": "unreachable", "cone": i, "exponent": bad[0],
                "target": lat.add(D.local[i], bad[0]), "all_exponents": tuple(bad),
            })
        data.append((i, m, pts))
    for (i, mi, pi), (j, mj, pj) in itertools.combinations(data, 2):
        small, big = (pi, pj) if len(pi) <= len(pj) else (pj, pi)
        hit = next((t for t in small if t in big), None)
        if hit is not None:
            return OracleReport(cfg, False, {
                "kind": "collision", "point": hit,
                "first": (i, pi[hit]), "second": (j, pj[hit]),
            })
    return OracleReport(cfg, True)


def _require_complete(D: TCartierDivisor) -> None:
    if not D.fan.is_complete():
        raise JetError("fan is not complete")
    if any(not isinstance(x, int) for u in D.local for x in u):
        raise JetError("divisor is not Cartier")


def _compositions(total: int, r: int) -> Iterator[tuple[int, ...]]:
    # lexicographic order
    if r == 1:
        yield (total,)
        return
    for first in range(1, total - r + 2):
        for rest in _compositions(total - first, r - 1):
            yield (first,) + rest


def configurations(ncones: int, k: int, max_r: int) -> Iterator[Configuration]:
    """Configurations with r <= max_r cones and sum of k_i = k + 1, in
    lexicographic order of (r, cones, composition)."""
    for r in range(1, min(max_r, k + 1, ncones) + 1):
        for cones in itertools.combinations(range(ncones), r):
            for comp in _compositions(k + 1, r):
                yield Configuration(tuple(zip(cones, comp)))


@dataclass
class OracleVerdict:
    jet_ample: bool
    failure: OracleReport | None
    checked: int

    def __bool__(self) -> bool:
        return self.jet_ample


def oracle_jet_ample(D: TCartierDivisor, k: int, max_r: int | None = None) -> OracleVerdict:
    """Run the oracle over every configuration; exact when max_r = k + 1."""
    _require_complete(D)
    if k < 0:
        raise JetError("k must be nonnegative")
    if max_r is None:
        max_r = k + 1
    if not 1 <= max_r <= k + 1:
        raise JetError("need 1 <= max_r <= k + 1")
    n = 0
    for cfg in configurations(len(D.fan.cones), k, max_r):
        n += 1
        rep = oracle_configuration(D, cfg)
        if not rep.surjective:
            return OracleVerdict(False, rep, n)
    return OracleVerdict(True, None, n)


# --------------------------------------------------------------------------
# Fujita-type statement


def is_projective_space(fan: Fan) -> bool:
    """Complete fan with n + 1 rays and only smooth maximal cones."""
    n = fan.dim
    if len(fan.rays) != n + 1 or not fan.is_complete():
        return False
    return all(fan.cone_obj(i).is_smooth for i in range(len(fan.cones)))


def _local_divisor(fan: Fan, D: TQDivisor) -> TCartierDivisor | None:
    local = q_cartier_local_data(D)
    if local is None:
        return None
    return TCartierDivisor(fan, [local[i] for i in range(len(fan.cones))], check=False)


def _as_q(fan: Fan, D) -> TQDivisor:
    if isinstance(D, TCartierDivisor):
        if D.fan is not fan:
            raise JetError("divisor lives on a different fan")
        return D.coefficients()
    return D


@dataclass
class Hypothesis:
    name: str
    passed: bool
    detail: str


@dataclass
class FujitaVerdict:
    k: int
    hypotheses: list[Hypothesis]
    certificate: JetCertificate | None = None
    oracle: OracleVerdict | None = None
    note: str = ""

    @property
    def hypotheses_hold(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    @property
    def confirmed(self) -> bool:
        """Hypotheses hold and every cross-check that ran agrees."""
        if not self.hypotheses_hold:
            return False
        if self.certificate is None and self.oracle is None:
            return False
        if self.certificate is not None and not self.certificate.certified:
            return False
        return self.oracle is None or self.oracle.jet_ample


def fujita_check(fan: Fan, D, Dprime: TQDivisor, k: int, run_oracle: bool = True) -> FujitaVerdict:
    """Check the hypotheses for D + D' to be k-jet ample and cross-check the
    conclusion with the certificate and the oracle."""
    n = fan.dim
    Dq = _as_q(fan, D)
    hyps = []
    is_pn = is_projective_space(fan)
    hyps.append(Hypothesis("H1", not is_pn, "fan is projective space" if is_pn else "not projective space"))

    bad = [j for j, a in enumerate(Dprime.coefficients) if not -1 <= a <= 0]
    hyps.append(Hypothesis("H2", not bad, f"coefficients out of [-1, 0] at rays {bad}" if bad else "K_X <= D' <= 0"))

    Dl = _local_divisor(fan, Dq)
    Dpl = _local_divisor(fan, Dprime)
    S = Dq + Dprime
    Sl = q_cartier_local_data(S)
    h3 = Dl is not None and Dpl is not None and is_cartier(Sl)
    if Dl is None:
        detail = "D is not Q-Cartier"
    elif Dpl is None:
        detail = "D' is not Q-Cartier"
    elif not is_cartier(Sl):
        detail = "D + D' is not Cartier"
    else:
        detail = "D, D' Q-Cartier and D + D' Cartier"
    hyps.append(Hypothesis("H3", h3, detail))

    if Dl is not None and fan.is_complete():
        small = [(w.sigma1, w.sigma2, x) for w in fan.walls if (x := intersection_number(Dl, w)) < n + k]
        hyps.append(Hypothesis("H4", not small, f"walls with D.C < {n + k}: {small}" if small else f"D.C >= {n + k} on every wall"))
    else:
        hyps.append(Hypothesis("H4", False, "intersection numbers undefined"))

    out = FujitaVerdict(k, hyps)
    if not out.hypotheses_hold:
        return out
    Dsum = TCartierDivisor(fan, [Sl[i] for i in range(len(fan.cones))])
    if Dsum.is_ample:
        out.certificate = certify(Dsum, k)
    else:
        out.note = "D + D' is not ample; the certificate does not apply"
    if run_oracle:
        out.oracle = oracle_jet_ample(Dsum, k, k + 1)
    return out


# --------------------------------------------------------------------------
# ingredients of the Fujita argument


def _min_wall_at(D: TCartierDivisor, i: int) -> Fraction:
    return min(intersection_number(D, w) for w in D.fan.walls_of(i))


@dataclass(frozen=True)
class PayneData:
    t: Fraction
    m: Fraction
    w_min: Fraction
    holds: bool


def payne_data(fan: Fan, D, Dprime: TQDivisor, i: int) -> PayneData:
    Dq = _as_q(fan, D)
    if any(not -1 <= a <= 0 for a in Dprime.coefficients):
        raise JetError("precondition: need K_X <= D' <= 0")
    Dl = _local_divisor(fan, Dq)
    if Dl is None:
        raise JetError("precondition: D is not Q-Cartier")
    if not Dl.is_nef:
        raise JetError("precondition: D is not nef")
    Dpl = _local_divisor(fan, Dprime)
    if Dpl is None:
        raise JetError("precondition: D' is not Q-Cartier")
    Sl = _local_divisor(fan, Dq + Dprime)
    t = _min_wall_at(Dl, i)
    m = _min_wall_at(Sl, i)
    wm = w_min(dual_data(fan, i), Dpl.local[i])
    if t < wm:
        raise JetError(f"precondition: t_sigma = {t} < W_min(u'_sigma) = {wm}")
    return PayneData(t, m, wm, m >= t - wm - 1)


def payne_bound_check(fan: Fan, D, Dprime: TQDivisor, i: int) -> bool:
    """m_sigma >= t_sigma - W_min(u'_sigma) - 1 at the maximal cone i."""
    return payne_data(fan, D, Dprime, i).holds


def interior_weight_check(Q: DualConeData, uprime: Sequence, samples: Sequence[Sequence[int]]) -> bool:
    """W_max(u') <= W_max(u) for every sampled interior lattice point u."""
    base = w_max(Q, uprime)
    ok = True
    for u in samples:
        if not all(lat.dot(f, u) > 0 for f in Q.facets):
            raise JetError(f"sample {tuple(u)} is not interior")
        ok = ok and base <= w_max(Q, u)
    return ok
