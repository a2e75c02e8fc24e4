"""Verification suites run by ``bicyclic verify``.

Each suite replays one family of identities or continuity claims over a finite
window and returns a :class:`RunReport`.  Randomised parts draw from a seeded
generator; the seed is part of the report.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

import numpy as np

from .interassociate import (
    InterassociateParams,
    find_idempotents,
    idempotent_formula,
    iota,
    star,
    star_arrays,
    star_closed,
    star_zero_mult,
)
from .monoid import (
    ONE,
    ZERO,
    Element,
    format_element,
    multiply,
    multiply_arrays,
    parse_element,
    reduce_word,
    window,
)
from .quotient import IdealAxiomViolation, IdealModel, rees_quotient
from .solver import (
    identity_fiber_family,
    product_fiber,
    simplicity_witness,
    solution_bound,
    solve_left,
    solve_right,
)
from .topology import (
    VERIFIED,
    VIOLATION,
    Ray,
    TopologyModel,
    check_cofinite_base,
    check_separate_continuity,
    check_translation,
    check_zero_joint_continuity,
)

DEFAULT_SEED = 20160707
ALGEBRA_WINDOW = 10
TOPOLOGY_WINDOW = 25


@dataclass
class RunReport:
    suite: str
    seed: int
    cases: int = 0
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    first_failure: str | None = None
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok, case=None, inconclusive=False, count=1):
        self.cases += count
        if inconclusive:
            self.inconclusive += count
        elif ok:
            self.passed += count
        else:
            self.failed += count
            if self.first_failure is None:
                self.first_failure = case() if callable(case) else str(case)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "first_failure": self.first_failure,
            "seconds": round(self.seconds, 3),
            "notes": self.notes,
        }

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = (f"{status} {self.suite}: {self.cases} cases, {self.passed} passed, "
                f"{self.failed} failed, {self.inconclusive} inconclusive "
                f"[{self.seconds:.2f}s, seed {self.seed}]")
        if self.first_failure:
            text += f"\n    first failure: {self.first_failure}"
        return text


def _grid(w):
    a = np.arange(w + 1)
    i, j = np.meshgrid(a, a, indexing="ij")
    return i.ravel(), j.ravel()


def _mismatch(mask, *arrays):
    idx = tuple(int(v[mask][0]) for v in arrays)
    return str(idx)


def _param_grid(top):
    return [InterassociateParams(m, n) for m in range(top + 1) for n in range(top + 1)]


# suites ---------------------------------------------------------------------


def suite_monoid(report, w, rng, words=10_000, confluence=1_000):
    i, j = _grid(w)
    a_i, a_j, b_i, b_j, c_i, c_j = (x.reshape(s) for x, s in zip(
        (i, j, i, j, i, j), [(-1, 1, 1)] * 2 + [(1, -1, 1)] * 2 + [(1, 1, -1)] * 2))
    lhs = multiply_arrays(*multiply_arrays(a_i, a_j, b_i, b_j), c_i, c_j)
    rhs = multiply_arrays(a_i, a_j, *multiply_arrays(b_i, b_j, c_i, c_j))
    bad = (lhs[0] != rhs[0]) | (lhs[1] != rhs[1])
    report.record(not bad.any(), "associativity", count=bad.size)

    for x in window(w):
        report.record(multiply(ONE, x) == x == multiply(x, ONE), f"identity at {x}")

    for _ in range(words):
        u = "".join(rng.choice("pq") for _ in range(rng.randint(0, 30)))
        v = "".join(rng.choice("pq") for _ in range(rng.randint(0, 30)))
        report.record(reduce_word(u + v) == multiply(reduce_word(u), reduce_word(v)),
                      lambda: f"homomorphism fails on {u!r} {v!r}")

    for _ in range(confluence):
        u = "".join(rng.choice("pq") for _ in range(rng.randint(0, 16)))
        ends = rewrite_normal_forms(u)
        report.record(len(ends) == 1 and reduce_word(u) == reduce_word(next(iter(ends))),
                      lambda: f"confluence fails on {u!r}: {sorted(ends)}")

    for x in window(w):
        report.record(parse_element(format_element(x)) == x, f"round trip {x}")


def rewrite_normal_forms(word: str) -> set[str]:
    """Every irreducible word reachable by deleting ``pq`` factors, in any order."""
    seen, stack, ends = {word}, [word], set()
    while stack:
        u = stack.pop()
        redexes = [k for k in range(len(u) - 1) if u[k:k + 2] == "pq"]
        if not redexes:
            ends.add(u)
        for k in redexes:
            v = u[:k] + u[k + 2:]
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return ends


def suite_interassociate(report, w, rng, top=3):
    i, j = _grid(w)
    A = (i.reshape(-1, 1, 1), j.reshape(-1, 1, 1))
    B = (i.reshape(1, -1, 1), j.reshape(1, -1, 1))
    C = (i.reshape(1, 1, -1), j.reshape(1, 1, -1))
    for params in _param_grid(top):
        bc = star_arrays(params, *B, *C)
        law1 = multiply_arrays(*A, *bc), star_arrays(params, *multiply_arrays(*A, *B), *C)
        bc = multiply_arrays(*B, *C)
        law2 = star_arrays(params, *A, *bc), multiply_arrays(*star_arrays(params, *A, *B), *C)
        ab = star_arrays(params, *A, *B)
        assoc = star_arrays(params, *ab, *C), star_arrays(params, *A, *star_arrays(params, *B, *C))
        for name, (lhs, rhs) in (("a(b*c)=(ab)*c", law1), ("a*(bc)=(a*b)c", law2),
                                 ("associativity of *", assoc)):
            bad = (lhs[0] != rhs[0]) | (lhs[1] != rhs[1])
            report.record(not bad.any(), f"{name} fails for {params}", count=bad.size)

        for a, b in itertools.product(window(w), repeat=2):
            if star(params, a, b) != star_closed(params, a, b):
                report.record(False, f"closed form differs at {params} {a} {b}")
                break
        else:
            report.record(True, count=(w + 1) ** 4)

        for ww in (w, 12):
            report.record(find_idempotents(params, ww) == idempotent_formula(params, ww),
                          f"idempotents at {params} W={ww}")

        e = params.identity
        core = [iota(params, x) for x in window(w)]
        report.record(all(star(params, e, x) == x == star(params, x, e) for x in core),
                      f"iota(1) not an identity of C* at {params}")

    for a, b in itertools.product(window(w), repeat=2):
        report.record(star_zero_mult(a, b) is ZERO, f"zero multiplication at {a} {b}")
    for a in [ZERO] + window(3):
        for b in [ZERO] + window(3):
            report.record(star_zero_mult(star_zero_mult(a, b), a) is ZERO
                          is star_zero_mult(a, star_zero_mult(b, a)), "zero-mult associativity")


def suite_iota(report, w=15, top=3):
    i, j = _grid(w)
    X = (i.reshape(-1, 1), j.reshape(-1, 1))
    Y = (i.reshape(1, -1), j.reshape(1, -1))
    for params in _param_grid(top):
        m, n = params.m, params.n
        lhs = star_arrays(params, X[0] + n, X[1] + m, Y[0] + n, Y[1] + m)
        pi, pj = multiply_arrays(*X, *Y)
        bad = (lhs[0] != pi + n) | (lhs[1] != pj + m)
        report.record(not bad.any(), f"iota not a homomorphism at {params}", count=bad.size)
        # the displayed case split: q^{n+i-j+k} p^{m+l} if j < k else q^{n+i} p^{m+j-k+l}
        xi, xj, yk, yl = X[0], X[1], Y[0], Y[1]
        case_i = np.where(xj < yk, n + xi - xj + yk, n + xi)
        case_j = np.where(xj < yk, m + yl, m + xj - yk + yl)
        bad = (lhs[0] != case_i) | (lhs[1] != case_j)
        report.record(not bad.any(), f"case split differs at {params}", count=bad.size)
        # middle step: q^{n+i} p^{m+j} q^m p^n q^{n+k} p^{m+l} = q^{n+i} p^j . q^k p^{m+l}
        mid = multiply_arrays(xi + n, xj, yk, yl + m)
        bad = (lhs[0] != mid[0]) | (lhs[1] != mid[1])
        report.record(not bad.any(), f"middle step differs at {params}", count=bad.size)
        images = {iota(params, x) for x in window(w)}
        target = {Element(n + a, m + b) for a in range(w + 1) for b in range(w + 1)}
        report.record(images == target and len(images) == (w + 1) ** 2,
                      f"iota not a bijection onto the C* window at {params}")


def solver_oracle(params, a, side, grid_top):
    """Map every product value to the grid points producing it (brute force)."""
    i, j = _grid(grid_top)
    if side == "left":
        ri, rj = star_arrays(params, a.i, a.j, i, j)
    else:
        ri, rj = star_arrays(params, i, j, a.i, a.j)
    table = {}
    for x_i, x_j, y_i, y_j in zip(i.tolist(), j.tolist(), ri.tolist(), rj.tolist()):
        table.setdefault((y_i, y_j), []).append(Element(x_i, x_j))
    return table


def suite_solver(report, w=8, top=2, rng=None):
    for params in _param_grid(top):
        biggest = 4 * w + params.m + params.n + 1
        for a in window(w):
            for side, solve in (("left", solve_left), ("right", solve_right)):
                table = solver_oracle(params, a, side, 2 * biggest)
                for b in window(w):
                    bound = solution_bound(params, a, b)
                    want = {x for x in table.get(tuple(b), ()) if max(x) <= 2 * bound}
                    got = solve(params, a, b).as_set()
                    report.record(got == want and all(max(x) <= bound for x in got),
                                  lambda: f"{side} {params} a={a} b={b}: {sorted(got)} vs {sorted(want)}")
        for a, b in itertools.product(window(3), repeat=2):
            wt = simplicity_witness(params, a, b)
            report.record(star(params, wt.x, star(params, a, wt.y)) == b,
                          f"witness {params} a={a} b={b}")


def suite_escape(report, s_max=12, params_list=((1, 0), (0, 1), (2, 3), (1, 2), (2, 1), (3, 3))):
    """Ray candidates at q^n p^m are refuted by the translate closed forms."""
    for m, n in params_list:
        params = InterassociateParams(m, n)
        x0 = params.identity
        rays = [Ray("q", i0) for i0 in range(n)] + [Ray("p", j0) for j0 in range(m)]
        for ray in rays:
            model = TopologyModel.custom_ray(params, [ray])
            side = "left" if ray.axis == "q" else "right"
            checks = check_translation(model, x0, side, s_max, s_max + 2 * (m + n) + 4)
            ok = all(c.verdict == VIOLATION for c in checks) and checks
            for c in checks:
                ok = ok and len(c.escapes) == s_max + 1
                for sp, wv, y in c.escapes:
                    l = wv.j if ray.axis == "q" else wv.i
                    closed = (Element(n, n - ray.fixed + l) if ray.axis == "q"
                              else Element(m - ray.fixed + l, m))
                    ok = ok and wv == ray.point(l) and l > sp and y == closed
            report.record(bool(ok), f"ray {ray} at {format_element(x0)} for {params}")
            whole = check_separate_continuity(model, 2, 3)
            report.record(whole.verdict == VIOLATION, f"model {model.describe()} not refuted")


def suite_alexandroff(report, w=TOPOLOGY_WINDOW, s_max=TOPOLOGY_WINDOW, rng=None,
                      samples_per_params=1_200, top=2):
    for params in _param_grid(top):
        model = TopologyModel.alexandroff(params)
        rep = check_separate_continuity(model, w, s_max)
        report.record(rep.count(VERIFIED) == len(rep.checks),
                      lambda: f"tau_Ac at {params}: {rep.first(VIOLATION) or rep.first('inconclusive')}",
                      count=len(rep.checks))
        pts = model.carrier_points(w)
        reach = 2 * w + params.m + params.n + 1
        for _ in range(samples_per_params):
            a = rng.choice(pts)
            side = rng.choice(("left", "right"))
            forbidden = frozenset(Element(rng.randint(0, w), rng.randint(0, w))
                                  for _ in range(rng.randint(1, 4)))
            checks = check_translation(model, a, side, s_max, reach,
                                       targets=[("F", model.cofinite(forbidden))])
            report.record(all(c.verdict == VERIFIED for c in checks),
                          f"tau_Ac {params} a={a} {side} F={sorted(forbidden)}")
        report.record(bool(check_cofinite_base(model)), f"tau_Ac base not cofinite at {params}")


def suite_fiber(report, w=20, top=2):
    for params in _param_grid(top):
        fiber = product_fiber(params, params.identity, w)
        family = identity_fiber_family(params, w)
        report.record(set(family) <= fiber and len(family) == w - max(params.m, params.n) + 1,
                      f"identity fiber family at {params}")
        report.record(all(star(params, x, y) == params.identity for x, y in fiber),
                      f"fiber pair off target at {params}")


def suite_translates(report, w=20, top=3):
    for params in _param_grid(top):
        m, n = params.m, params.n
        pm, qn = Element(0, m), Element(n, 0)
        for i in range(n, w + 1):
            for j in range(m, w + 1):
                x = Element(i, j)
                report.record(star(params, pm, x) == Element(i - n, j)
                              and star(params, x, qn) == Element(i, j - m),
                              f"translate identity at {params} {x}")


def suite_tube(report, w=10, s_max=10, top=3):
    for params in _param_grid(top):
        model = TopologyModel.tube(params)
        for s in range(s_max + 1):
            cur, nxt = model.basic(s), model.basic(s + 1)
            report.record(all(x in cur for x in window(w + s_max) if x in nxt),
                          f"tube base not monotone at {params} s={s}")
        rep = check_separate_continuity(model, w, s_max)
        report.record(rep.verdict == VERIFIED and rep.count(VERIFIED) == len(rep.checks),
                      lambda: f"tube {params}: {rep.first(VIOLATION)}", count=len(rep.checks))
        joint = check_zero_joint_continuity(model, s_max)
        report.record(all(c.verdict == VERIFIED and c.witness == c.target for c in joint),
                      f"tube joint continuity at {params}", count=len(joint))
        report.record(not check_cofinite_base(model), f"tube base reported cofinite at {params}")


def suite_quotient(report, w=8, top=2):
    two = IdealModel(("t1", "t2"),
                     {("t1", "t1"): "t1", ("t1", "t2"): "t1", ("t2", "t1"): "t2", ("t2", "t2"): "t2"},
                     lambda x, t: "t1", lambda t, x: "t1")
    for params in _param_grid(top):
        for ideal in (IdealModel.null(("z",)), IdealModel.null(("z1", "z2")), two):
            rep = rees_quotient(params, ideal, w)
            report.record(rep.ok and rep.fiber_sizes[ZERO] == len(ideal.labels)
                          and all(v == 1 for k, v in rep.fiber_sizes.items() if k is not ZERO),
                          f"quotient at {params} by {ideal.labels}")
    bad = IdealModel(("t",), {("t", "t"): "t"},
                     lambda x, t: "t",
                     lambda t, x: Element(1, 1) if x == Element(2, 3) else "t")
    try:
        rees_quotient(InterassociateParams(1, 1), bad, w)
        report.record(False, "malformed ideal accepted")
    except IdealAxiomViolation as exc:
        report.record(exc.triple == ("t", Element(2, 3), Element(1, 1)), f"wrong triple {exc.triple}")


SUITES = {
    "monoid": lambda r, a: suite_monoid(r, a["window"], a["rng"]),
    "interassociate": lambda r, a: suite_interassociate(r, a["window"], a["rng"]),
    "iota": lambda r, a: suite_iota(r),
    "solver": lambda r, a: suite_solver(r),
    "escape": lambda r, a: suite_escape(r),
    "alexandroff": lambda r, a: suite_alexandroff(r, a["topology_window"], a["s_max"], a["rng"]),
    "fiber": lambda r, a: suite_fiber(r),
    "translates": lambda r, a: suite_translates(r),
    "tube": lambda r, a: suite_tube(r),
    "quotient": lambda r, a: suite_quotient(r),
}


def run_suite(name: str, seed: int = DEFAULT_SEED, window: int = ALGEBRA_WINDOW,
              topology_window: int = TOPOLOGY_WINDOW, s_max: int | None = None) -> RunReport:
    if name not in SUITES:
        raise KeyError(name)
    report = RunReport(name, seed)
    args = {
        "window": window,
        "topology_window": topology_window,
        "s_max": topology_window if s_max is None else s_max,
        "rng": random.Random(seed),
    }
    start = time.perf_counter()
    SUITES[name](report, args)
    report.seconds = time.perf_counter() - start
    return report


def run_suites(names, **kwargs) -> list[RunReport]:
    if "all" in names:
        names = list(SUITES)
    return [run_suite(name, **kwargs) for name in names]
