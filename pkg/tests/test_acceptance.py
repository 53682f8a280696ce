"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (with timing) that conftest prints in the
terminal summary.
"""
import functools
import random
import time
from fractions import Fraction

from toricjets import divisor as dv
from toricjets import jets
from toricjets import lattice as lat
from toricjets.examples import cube, example_3_1, hirzebruch, simplex, weighted_projective
from toricjets.polyhedral import Cone, Polytope, cone_at_vertex, dual_cone, lattice_points
from toricjets.semigroup import DualConeData, dual_data, gamma_q, gamma_x, w_min

from corpus import ample_corpus, random_pointed_cone, random_polytope

RESULTS = {}


def criterion(number, title, limit=None):
    """Record PASS/FAIL for a criterion; enforce the runtime limit in seconds."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs) or ""
                took = time.perf_counter() - t0
                if limit is not None:
                    assert took < limit, f"took {took:.1f}s, limit {limit}s"
            except BaseException as exc:
                took = time.perf_counter() - t0
                RESULTS[number] = (False, title, f"{type(exc).__name__}: {exc}".splitlines()[0][:160], took)
                raise
            RESULTS[number] = (True, title, detail, took)

        return run

    return wrap


# -- 1 -----------------------------------------------------------------------

GRID_1 = [(2, 1), (3, 2), (3, 5), (4, 3), (4, 6)]


@criterion(1, "Gamma regression on the vertex-0 cone of example31")
def test_criterion_01_gamma_regression():
    shown = []
    for n, r in GRID_1:
        ex = example_3_1(n, r, 1)
        i0 = ex.D.local.index((0,) * n)
        t0 = time.perf_counter()
        Q = dual_data(ex.D.fan, i0)
        got = gamma_q(Q)
        took = time.perf_counter() - t0
        assert Q.cone.same_as(cone_at_vertex(ex.P, (0,) * n))
        assert got == n - 2 - Fraction(n - 2, r), (n, r, got)
        assert took < 1.0, (n, r, took)
        shown.append(f"({n},{r})->{got}")
    assert gamma_q(dual_data(example_3_1(3, 2, 1).D.fan, 0)) == Fraction(1, 2)
    assert gamma_q(DualConeData([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 3)])) == Fraction(4, 3)
    return " ".join(shown)


# -- 2 -----------------------------------------------------------------------


@criterion(2, "Gamma_X = 0 on smooth fans")
def test_criterion_02_smooth_baseline():
    fans = {
        "P2": dv.from_polytope(simplex(2)).fan,
        "P1xP1": dv.from_polytope(cube(2)).fan,
        "P3": dv.from_polytope(simplex(3)).fan,
        "F1": dv.from_polytope(hirzebruch(1, 1, 1)).fan,
    }
    for name, fan in fans.items():
        assert all(fan.cone_obj(i).is_smooth for i in range(len(fan.cones))), name
        assert gamma_x(fan) == 0, name
    return ", ".join(fans)


# -- 3 -----------------------------------------------------------------------


@criterion(3, "0 <= Gamma_Q <= n - 2 on random pointed cones")
def test_criterion_03_gamma_bounds():
    rng = random.Random(20240602)
    count, shapes = 0, {}
    for i in range(201):
        dim = 2 + i % 3
        C = random_pointed_cone(rng, dim, bound=8, max_rays=dim + 1)
        assert max(abs(x) for r in C.rays for x in r) <= 8
        g = gamma_q(DualConeData(C))
        assert 0 <= g <= dim - 2, (C.rays, g)
        if dim == 2:
            assert g == 0, C.rays
        key = (dim, len(C.rays))
        shapes[key] = shapes.get(key, 0) + 1
        count += 1
    assert count >= 200
    assert any(r > d for d, r in shapes), "no non-simplicial cones sampled"
    return f"{count} cones, (dim, rays) counts {dict(sorted(shapes.items()))}"


# -- 4 -----------------------------------------------------------------------


@criterion(4, "walls = edges = concavity = Seshadri on the ample corpus", limit=60)
def test_criterion_04_quadruple_equivalence():
    corpus = ample_corpus()
    assert len(corpus) >= 100
    for D in corpus:
        assert D.is_ample
        assert len(lattice_points(D.polytope)) <= 60
        walls = min(x for _, x in D.wall_intersections)
        edges = dv.edge_lengths(D).min_length
        conc = dv.max_concavity(D)
        sesh = dv.seshadri_global(D)
        assert walls == edges == conc == sesh, (D.polytope.vertices, walls, edges, conc, sesh)
    dims = sorted({D.fan.dim for D in corpus})
    return f"{len(corpus)} polytopes, dims {dims}"


# -- 5 -----------------------------------------------------------------------


@criterion(5, "certified => oracle k-jet ample on the corpus, k = 0..3", limit=600)
def test_criterion_05_soundness():
    certified = 0
    for D in ample_corpus():
        for k in range(4):
            if jets.certify(D, k).certified:
                certified += 1
                v = jets.oracle_jet_ample(D, k, k + 1)
                assert v.jet_ample, (D.polytope.vertices, k, v.failure)
    assert certified > 0
    return f"{certified} certified (D, k) pairs, 0 counterexamples"


# -- 6 -----------------------------------------------------------------------


@criterion(6, "sharpness of example31 at (n, r) = (3, 10)", limit=60)
def test_criterion_06_sharpness():
    n, r = 3, 10
    for k in (1, 2):
        ex = example_3_1(n, r, k)
        G = ex.G
        i0 = G.fan.cones.index(ex.D.fan.cones[ex.D.local.index((0,) * n)])
        v = jets.oracle_jet_ample(G, k, k + 1)
        assert not v.jet_ample
        rep = jets.oracle_configuration(G, jets.Configuration(((i0, k + 1),)))
        assert not rep.surjective and rep.witness["kind"] == "unreachable"
        assert rep.witness["cone"] == i0
        assert ex.witness() == lat.add(lat.scale(k - 1, (1, 0, 0)), (1, 1, 1))
        assert ex.witness() in rep.witness["all_exponents"]
        assert not G.section_exists(lat.add(G.local[i0], ex.witness()))
        better = (k + n - 2) * ex.D
        assert jets.certify(better, k).certified
        assert jets.oracle_jet_ample(better, k, k + 1).jet_ample
    return "k=1,2: (k)D fails at u=(k-1)e1+a1, (k+1)D certified and confirmed"


# -- 7 -----------------------------------------------------------------------


def _edge_multiset(P):
    return sorted(lat.lattice_length(P.vertices[i], P.vertices[j]) for i, j in P.edges)


@criterion(7, "weighted projective spaces (2,3,5) and (1,1,2)")
def test_criterion_07_weighted_projective():
    P = weighted_projective((2, 3, 5))
    assert _edge_multiset(P) == [2, 3, 5]
    D = dv.from_polytope(P)
    assert sorted(r.length for r in dv.edge_lengths(D).rows) == [2, 3, 5]
    assert jets.max_certified_k(D).k == 2
    P = weighted_projective((1, 1, 2))
    edges = _edge_multiset(P)
    # the stated {2,2,1} agrees as a set; as a multiset l/lcm gives 2, 1, 1
    assert set(edges) == {2, 2, 1}
    assert edges == [1, 1, 2]
    D = dv.from_polytope(P)
    assert jets.max_certified_k(D).k == 1
    return "(2,3,5): edges [2,3,5], k=2; (1,1,2): edges [1,1,2] (set {1,2}), k=1"


# -- 8 -----------------------------------------------------------------------


def _blowup(a, b):
    return dv.from_polytope(Polytope([(b, 0), (a, 0), (0, a), (0, b)]))


def _p112(m):
    return dv.from_polytope(Polytope([(0, 0), (2 * m, 0), (0, m)]))


def _fujita_instances():
    out = []
    for k in (0, 1, 2):
        n = 2
        for b, gap in ((n + k + 1, n + k + 1), (n + k + 2, n + k + 3)):
            out.append((f"blowup({b + gap},{b})", k, _blowup(b + gap, b)))
        out.append((f"P(1,1,2) m={n + k + 1}", k, _p112(n + k + 1)))
        n = 3
        for r in (2, 3):
            out.append((f"ex31 r={r} x{n + k + 1}", k, (n + k + 1) * example_3_1(3, r, 1).D))
    return out


@criterion(8, "Fujita pipeline on non-P^n instances", limit=300)
def test_criterion_08_fujita():
    confirmed, skipped = 0, []
    for name, k, D in _fujita_instances():
        fan = D.fan
        zero = dv.TQDivisor(fan, [0] * len(fan.rays))
        K = dv.canonical_divisor(fan)
        candidates = [("0", zero)]
        Kloc = dv.q_cartier_local_data(K)
        if Kloc is not None and dv.is_cartier(dv.q_cartier_local_data(D.coefficients() + K)):
            candidates.append(("K", K))
        else:
            skipped.append(name)
        for label, Dp in candidates:
            v = jets.fujita_check(fan, D, Dp, k)
            assert v.hypotheses_hold, (name, label, k, v.hypotheses)
            assert v.certificate is not None and v.certificate.certified, (name, label, k, v.note)
            assert v.oracle is not None and v.oracle.jet_ample, (name, label, k, v.oracle.failure)
            assert v.confirmed
            confirmed += 1
    assert confirmed >= 20
    return f"{confirmed} instances confirmed; K_X not usable on {len(skipped)} fans"


# -- 9 -----------------------------------------------------------------------


def _random_dprime(rng, fan):
    return dv.TQDivisor(fan, [rng.choice([Fraction(-1), Fraction(-1, 2), Fraction(-1, 3), Fraction(0)])
                              for _ in fan.rays])


def _payne_instances(rng):
    """(fan, D, D', i) with the preconditions met: simplicial fans, D scaled
    until t_sigma >= W_min(u'_sigma)."""
    pool = [_blowup(5, 2), _p112(2), example_3_1(3, 4, 1).D, dv.from_polytope(weighted_projective((2, 3, 5)))]
    while len(pool) < 14:
        P = random_polytope(rng, rng.choice([2, 3]))
        if P is not None:
            D = dv.from_polytope(P)
            if all(len(c) == D.fan.dim for c in D.fan.cones):
                pool.append(D)
    for D in pool:
        fan = D.fan
        for Dp in (dv.canonical_divisor(fan), _random_dprime(rng, fan)):
            loc = dv.q_cartier_local_data(Dp)
            need = max(w_min(dual_data(fan, i), loc[i]) for i in range(len(fan.cones)))
            t0 = min(x for _, x in D.wall_intersections)
            Dm = max(1, -(-need // t0)) * D
            for i in range(len(fan.cones)):
                yield fan, Dm, Dp, i


def _interior(rng, Q):
    u = tuple(sum(w[j] for w in Q.rays) for j in range(Q.dim))
    for w in Q.rays:
        u = lat.add(u, lat.scale(rng.randint(0, 3), w))
    return u


@criterion(9, "Payne bound and interior weight checks")
def test_criterion_09_payne_and_interior_weights():
    rng = random.Random(20240603)
    payne = 0
    interior = 0
    for fan, D, Dp, i in _payne_instances(rng):
        assert jets.payne_bound_check(fan, D, Dp, i), (fan.rays, D.local, Dp.coefficients, i)
        payne += 1
        Q = dual_data(fan, i)
        up = dv.q_cartier_local_data(Dp)[i]
        samples = [_interior(rng, Q) for _ in range(5)]
        assert jets.interior_weight_check(Q, up, samples)
        interior += 1
    # the singular point of P(1,1,2) with K_X
    D = _p112(2)
    loc = dv.q_cartier_local_data(dv.canonical_divisor(D.fan))
    for i in range(len(D.fan.cones)):
        Q = dual_data(D.fan, i)
        assert jets.interior_weight_check(Q, loc[i], [_interior(rng, Q) for _ in range(20)])
        interior += 1
    assert payne >= 50 and interior >= 50
    return f"{payne} Payne instances, {interior} interior-weight instances, 0 violations"


# -- 10 ----------------------------------------------------------------------


@criterion(10, "projection monotonicity on random 3-polytopes")
def test_criterion_10_projection_monotonicity():
    rng = random.Random(20240604)
    polys, pairs = 0, 0
    while polys < 50:
        P = random_polytope(rng, 3)
        if P is None:
            continue
        polys += 1
        for a, b in P.edges:
            for x in (a, b):
                assert dv.projection_monotonicity_check(P, [x], [a, b]), (P.vertices, x, (a, b))
                pairs += 1
        for F in P.faces[2]:
            for a, b in P.edges:
                if a in F and b in F:
                    assert dv.projection_monotonicity_check(P, [a, b], F), (P.vertices, (a, b), F)
                    pairs += 1
    return f"{polys} polytopes, {pairs} incident pairs"


# -- 11 ----------------------------------------------------------------------


@criterion(11, "<v_i, w_i> = mult(v)/mult(v without v_i) on simplicial cones")
def test_criterion_11_duality_multiplicity():
    rng = random.Random(20240605)
    done = 0
    while done < 100:
        dim = rng.choice([2, 3, 4])
        gens = [tuple(rng.randint(-8, 8) for _ in range(dim)) for _ in range(dim)]
        if any(not any(g) for g in gens) or lat.rank(gens) < dim:
            continue
        v = [lat.primitive(g) for g in gens]
        ws = dual_cone(Cone(v)).rays
        assert len(ws) == dim
        for i in range(dim):
            (w,) = [w for w in ws if all(lat.dot(w, v[j]) == 0 for j in range(dim) if j != i)]
            rest = [v[j] for j in range(dim) if j != i]
            assert lat.dot(v[i], w) == Fraction(lat.multiplicity(v), lat.multiplicity(rest))
        done += 1
    return f"{done} cones"
