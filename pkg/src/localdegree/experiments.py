"""Randomized surveys, structural audits and the worked-example suite."""

from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field as dc_field

from .ekl import EKLResult, ekl_class
from .errors import NotIsolatedError, SamplingExhaustedError
from .field import QQ, Field, GF
from .gw import (
    QuadraticForm,
    classify_string,
    diagonal_form,
    direct_sum,
    equivalent,
    hyperbolic,
    invariants,
    product,
    witt_decompose,
)
from .localalg import DEFAULT_K_CAP, local_algebra, staircase_type
from .poly import PolyMap, PolyRing, all_monomials
from .transforms import (
    apply_linear,
    compose,
    determinant,
    linear_part,
    pad_identity,
    recover_unit,
    reduce_dimension,
    row_operation,
    truncate_map,
)

RETRY_CAP = 100


# auditing every computed instance


@dataclass
class Audit:
    """Collects the structural bounds every EKL class must satisfy."""

    checked: int = 0
    violations: list = dc_field(default_factory=list)
    by_rule: Counter = dc_field(default_factory=Counter)

    def __call__(self, f: PolyMap, result: EKLResult):
        self.record(f, result)

    def record(self, f: PolyMap, result: EKLResult):
        self.checked += 1
        N = result.rank
        n = f.n
        wd = witt_decompose(result.form)
        aniso = wd.anisotropic.rank
        K = f.field

        def fail(rule, msg):
            self.by_rule[rule] += 1
            self.violations.append(f"{rule}: {f} over {K}: {msg}")

        if N >= 2:
            self.by_rule["h_summand_checked"] += 1
            if result.socle.vector[0]:
                fail("h_summand", "socle element has a nonzero constant term")
            if wd.witt_index < 1:
                fail("h_summand", f"form {result.form} is anisotropic")
        self.by_rule["elt_checked"] += 1
        if aniso**n > N ** (n - 1):
            fail("elt", f"anisotropic rank {aniso} exceeds rank^(1-1/n) for rank {N}")
        if 2 * aniso > N:
            if N == 1:
                # <a> is anisotropic; the half-rank bound only makes sense from rank 2
                self.by_rule["elt_half_rank1_exempt"] += 1
            else:
                fail("elt", f"anisotropic rank {aniso} exceeds half of rank {N}")
        if not K.is_rational and aniso > 2:
            fail("finite_field", f"anisotropic rank {aniso} over {K}")
        if f.in_square_of_maximal_ideal() and N < 2**n:
            fail("fulton", f"rank {N} below 2^{n} with all components in m^2")

    @property
    def ok(self) -> bool:
        return not self.violations


# sampling


@dataclass(frozen=True)
class SurveyConfig:
    field: Field
    n: int = 2
    max_degree: int = 3
    samples: int = 100
    seed: int = 0
    target_rank: int | None = None
    min_degree: int = 1
    k_cap: int = DEFAULT_K_CAP
    retries: int = RETRY_CAP

    def __post_init__(self):
        if self.field.is_rational:
            raise ValueError("surveys run over F_p only")
        if self.samples < 1 or self.n < 1:
            raise ValueError("samples and n must be positive")
        if not 1 <= self.min_degree <= self.max_degree:
            raise ValueError("need 1 <= min_degree <= max_degree")

    @property
    def effective_k_cap(self) -> int:
        # d_K grows strictly until it stabilizes, so a rank-r algebra is
        # detected by K = r + 1
        if self.target_rank is None:
            return self.k_cap
        return min(self.k_cap, self.target_rank + 1)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["field"] = str(self.field)
        return d


@dataclass
class Sample:
    index: int
    attempts: int
    map: PolyMap
    rejected: Counter


def draw_map(cfg: SurveyConfig, index: int, attempt: int = 0) -> PolyMap:
    """The deterministic candidate map for ``(seed, index, attempt)``."""
    rng = random.Random(f"{cfg.seed}-{index}-{attempt}")
    K = cfg.field
    ring = PolyRing(K, cfg.n)
    monos = list(all_monomials(cfg.n, cfg.max_degree, cfg.min_degree))
    comps = []
    for _ in range(cfg.n):
        comps.append(ring.from_dict({m: rng.randrange(K.characteristic) for m in monos}))
    return PolyMap(comps)


def random_map(cfg: SurveyConfig, index: int = 0) -> Sample:
    """First candidate for ``index`` with an isolated zero (and target rank)."""
    rejected = Counter()
    for attempt in range(cfg.retries):
        f = draw_map(cfg, index, attempt)
        if any(c.is_zero() for c in f):
            rejected["not_isolated"] += 1
            continue
        try:
            A = local_algebra(f, cfg.effective_k_cap)
        except NotIsolatedError:
            rejected["not_isolated" if cfg.target_rank is None else "rank_filtered"] += 1
            continue
        if cfg.target_rank is not None and A.dimension != cfg.target_rank:
            rejected["rank_filtered"] += 1
            continue
        return Sample(index, attempt + 1, f, rejected)
    raise SamplingExhaustedError(f"no acceptable map for index {index} after {cfg.retries} draws")


def census_staircase(f: PolyMap):
    """Staircase of a two-variable map, in coordinates where y^2 is not in
    the ideal (swap x and y otherwise)."""
    A = local_algebra(f)
    ring = f.ring
    if ring.nvars == 2:
        y2 = ring.monomial((0, 2))
        if not any(A.reduce(y2)):
            x, y = ring.gens()
            f = PolyMap([c.substitute([y, x]) for c in f])
            A = local_algebra(f)
    return staircase_type(A)


@dataclass
class SurveyReport:
    config: SurveyConfig
    accepted: int = 0
    rejections: Counter = dc_field(default_factory=Counter)
    histogram: dict = dc_field(default_factory=lambda: defaultdict(Counter))
    classes: dict = dc_field(default_factory=lambda: defaultdict(Counter))
    min_witt_index: dict = dc_field(default_factory=dict)
    staircases: Counter = dc_field(default_factory=Counter)
    audit: Audit = dc_field(default_factory=Audit)

    def add(self, f: PolyMap, result: EKLResult):
        self.accepted += 1
        N = result.rank
        wd = witt_decompose(result.form)
        K = result.form.field
        disc = str(K.symmetric(wd.anisotropic.disc)) if wd.anisotropic.rank else "1"
        self.histogram[N][(wd.witt_index, wd.anisotropic.rank, disc)] += 1
        self.classes[N][classify_string(result.form)] += 1
        prev = self.min_witt_index.get(N)
        self.min_witt_index[N] = wd.witt_index if prev is None else min(prev, wd.witt_index)
        self.audit.record(f, result)
        if f.n == 2 and N == 5 and f.in_square_of_maximal_ideal():
            label = census_staircase(f).label
            self.staircases[str(label) if label is not None else "other"] += 1

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "accepted": self.accepted,
            "rejections": dict(sorted(self.rejections.items())),
            "ranks": {
                str(N): {
                    "count": sum(self.classes[N].values()),
                    "min_witt_index": self.min_witt_index[N],
                    "classes": dict(sorted(self.classes[N].items())),
                    "histogram": [
                        {"witt_index": k, "anisotropic_rank": r, "anisotropic_disc": d, "count": c}
                        for (k, r, d), c in sorted(self.histogram[N].items())
                    ],
                }
                for N in sorted(self.classes)
            },
            "staircases": dict(sorted(self.staircases.items())),
            "audit": {"checked": self.audit.checked, "violations": list(self.audit.violations)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def survey(cfg: SurveyConfig) -> SurveyReport:
    report = SurveyReport(cfg)
    for index in range(cfg.samples):
        try:
            s = random_map(cfg, index)
        except SamplingExhaustedError:
            report.rejections["exhausted"] += 1
            continue
        report.rejections.update(s.rejected)
        report.add(s.map, ekl_class(s.map, cfg.k_cap))
    return report


# deterministic families


def map_2dim_1(K: Field, a, b) -> PolyMap:
    x, y = PolyRing(K, 2).gens()
    return PolyMap([x * y, (x**2).scale(K.neg(K(a))) + (y**2).scale(K(b))])


def map_1dim(K: Field, a, n: int) -> PolyMap:
    (x,) = PolyRing(K, 1).gens()
    return PolyMap([(x**n).scale(K(a))])


def map_2dim_2(K: Field, a, b, n: int) -> PolyMap:
    x, y = PolyRing(K, 2).gens()
    return PolyMap([x * y, (y**n).scale(K(a)) - (x**2).scale(K(b))])


def map_powers(K: Field, a, b, n: int, m: int) -> PolyMap:
    x, y = PolyRing(K, 2).gens()
    return PolyMap([x * y, (y**m).scale(K(a)) - (x**n).scale(K(b))])


def map_rank9(K: Field = QQ) -> PolyMap:
    x, y = PolyRing(K, 2).gens()
    f = -x**3 - x**2 * y + (x * y**2).scale(K(4)) + (y**3).scale(K(2))
    g = (x**3).scale(K(2)) - x**2 * y - (x * y**2).scale(K(5)) - y**3
    return PolyMap([f, g])


def iterate_map(f: PolyMap, times: int) -> PolyMap:
    out = f
    for _ in range(times - 1):
        out = compose(out, f)
    return out


def form(K: Field, *entries) -> QuadraticForm:
    return diagonal_form(K, *entries)


def realizing_map(K: Field, rank: int, disc) -> PolyMap | None:
    """A map whose EKL class over F_p has the given rank and discriminant,
    built from the one-variable power maps and the (xy, a y^m - b x^n)
    family.  Returns ``None`` for rank 2 with disc different from -1.
    """
    disc = K(disc)
    minus_one = K(-1)
    if rank % 2:
        k = (rank - 1) // 2
        a = K.mul(disc, minus_one) if k % 2 else disc
        return map_1dim(K, a, rank)
    k = rank // 2
    hyper = minus_one if k % 2 else K.one
    if K.square_class(disc) == K.square_class(hyper):
        return map_1dim(K, 1, rank)
    if rank == 2:
        return None
    # (k-1)H + <1, b> has discriminant (-1)^(k-1) b
    b = K.mul(disc, minus_one) if (k - 1) % 2 else disc
    n = 2
    m = rank - n
    return map_powers(K, 1, b, n, m)


# checks shared by the command line and the acceptance suite


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _gram_shape_ok(res: EKLResult, a, b) -> bool:
    """Gram matrix on (1, y, x, y^2): phi(y^2) = 1/b on the anti-diagonal
    of the (1, y, y^2) block and 1/a in the x corner."""
    K = res.form.field
    if res.algebra.basis != ((0, 0), (0, 1), (1, 0), (0, 2)):
        return False
    ib, ia = K.invert(K(b)), K.invert(K(a))
    want = [
        [0, 0, 0, ib],
        [0, ib, 0, 0],
        [0, 0, ia, 0],
        [ib, 0, 0, 0],
    ]
    return all(res.gram.entries[i][j] == K(want[i][j]) for i in range(4) for j in range(4))


def check_2dim_1() -> CheckResult:
    bad = []
    cases = [(QQ, a, b) for a in range(1, 6) for b in range(1, 6)]
    for p in (3, 5, 7):
        K = GF(p)
        cases += [(K, a, b) for a in K.units() for b in K.units()]
    for K, a, b in cases:
        res = ekl_class(map_2dim_1(K, a, b))
        if not equivalent(res.form, form(K, 1, -1, a, b)) or not _gram_shape_ok(res, a, b):
            bad.append(f"{K} a={a} b={b}")
    return CheckResult("two-variable quadric family (xy, -ax^2+by^2)", not bad,
                       f"{len(cases)} cases" + (f"; failures {bad}" if bad else ""))


def check_1dim() -> CheckResult:
    bad = []
    count = 0
    for a in (1, 2, 3):
        for n in range(2, 11):
            count += 1
            res = ekl_class(map_1dim(QQ, a, n))
            want = hyperbolic(QQ, n // 2) if n % 2 == 0 else direct_sum(hyperbolic(QQ, (n - 1) // 2), form(QQ, a))
            if not equivalent(res.form, want):
                bad.append(f"a={a} n={n}")
    return CheckResult("one-variable powers a*x^n", not bad, f"{count} cases" + (f"; failures {bad}" if bad else ""))


def check_powers() -> CheckResult:
    bad = []
    count = 0
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            for n in (2, 4, 6, 8):
                count += 1
                res = ekl_class(map_2dim_2(QQ, a, b, n))
                if not equivalent(res.form, direct_sum(hyperbolic(QQ, n // 2), form(QQ, a, b))):
                    bad.append(f"(xy, {a}y^{n} - {b}x^2)")
                for m in (2, 4, 6, 8):
                    count += 1
                    res = ekl_class(map_powers(QQ, a, b, n, m))
                    want = direct_sum(hyperbolic(QQ, (m + n - 2) // 2), form(QQ, a, b))
                    if not equivalent(res.form, want):
                        bad.append(f"(xy, {a}y^{m} - {b}x^{n})")
    return CheckResult("two-variable power families", not bad, f"{count} cases" + (f"; failures {bad}" if bad else ""))


def check_rank9() -> CheckResult:
    res = ekl_class(map_rank9())
    inv = invariants(res.form)
    want = direct_sum(hyperbolic(QQ, 3), form(QQ, 3, 3, 3))
    ok = (res.rank == 9 and inv.signature == 3 and inv.disc == -3 and equivalent(res.form, want)
          and equivalent(form(QQ, 6, 6, 3, -6, -6, 6, 3, -6, 3), want))
    return CheckResult("rank-9 cubic pair over Q", ok,
                       f"rank {res.rank}, signature {inv.signature}, disc {inv.disc}, {classify_string(res.form)}")


def check_iterates(include_rank64: bool = False) -> CheckResult:
    x, y = PolyRing(QQ, 2).gens()
    f = PolyMap([x * y, y**2 - x**2])
    details, ok = [], True
    levels = [1, 2] + ([3] if include_rank64 else [])
    for k in levels:
        res = ekl_class(iterate_map(f, k))
        rank = 4**k
        hyper = 2 ** (k - 1) * (2**k - 1)
        want = direct_sum(hyperbolic(QQ, hyper), form(QQ, *([1] * 2**k)))
        good = res.rank == rank and equivalent(res.form, want)
        ok &= good
        details.append(f"{k}-fold: rank {res.rank}, {classify_string(res.form)}")
    return CheckResult("iterates of (xy, y^2 - x^2)", ok, "; ".join(details))


def _random_small_map(rng: random.Random, K: Field, n: int, max_degree: int, max_rank: int, k_cap: int = 12):
    ring = PolyRing(K, n)
    for _ in range(RETRY_CAP):
        lo = rng.choice((1, 1, 2)) if n > 1 else rng.randint(1, max_degree)
        monos = list(all_monomials(n, max_degree, lo))
        f = PolyMap([ring.from_dict({m: rng.randrange(K.characteristic) for m in monos}) for _ in range(n)])
        if any(c.is_zero() for c in f):
            continue
        try:
            A = local_algebra(f, min(k_cap, max_rank + 1))
        except NotIsolatedError:
            continue
        if A.dimension <= max_rank:
            return f
    raise SamplingExhaustedError("could not draw a small isolated map")


def check_chain_rule(pairs: int = 200, seed: int = 2024) -> CheckResult:
    bad = []
    ranks = Counter()
    for i in range(pairs):
        rng = random.Random(f"chain-{seed}-{i}")
        K = GF(rng.choice((3, 5)))
        n = rng.choice((1, 2))
        f = _random_small_map(rng, K, n, 3, 4)
        g = _random_small_map(rng, K, n, 3, 4)
        left = ekl_class(compose(f, g)).form
        right = product(ekl_class(f).form, ekl_class(g).form)
        ranks[left.rank] += 1
        if not equivalent(left, right):
            bad.append(f"f={f} g={g} over {K}")
    return CheckResult("chain rule on random pairs", not bad,
                       f"{pairs} pairs, composite ranks {dict(sorted(ranks.items()))}"
                       + (f"; failures {bad[:3]}" if bad else ""))


def _random_invertible(rng, K, n):
    while True:
        A = [[rng.randrange(K.characteristic) for _ in range(n)] for _ in range(n)]
        if determinant(K, A):
            return A


def check_structural_laws(instances: int = 100, seed: int = 7) -> CheckResult:
    bad = Counter()
    done = Counter()
    for i in range(instances):
        rng = random.Random(f"laws-{seed}-{i}")
        K = GF(rng.choice((3, 5, 7)))
        n = rng.choice((1, 2))
        f = _random_small_map(rng, K, n, 3, 8)
        res = ekl_class(f)
        w = res.form
        ring = f.ring
        # row operation
        if n == 2:
            hx = ring.from_dict({m: rng.randrange(K.characteristic) for m in all_monomials(2, 1)})
            i0, j0 = rng.sample(range(2), 2)
            done["row"] += 1
            if not equivalent(ekl_class(row_operation(f, i0, j0, hx)).form, w):
                bad["row"] += 1
        # truncation
        done["truncate"] += 1
        if not equivalent(ekl_class(truncate_map(f, res.algebra)).form, w):
            bad["truncate"] += 1
        # padding
        done["pad"] += 1
        if not equivalent(ekl_class(pad_identity(f, 1)).form, w):
            bad["pad"] += 1
        # linear scaling
        A = _random_invertible(rng, K, n)
        done["linear"] += 1
        scaled = product(form(K, determinant(K, A)), w)
        if not equivalent(ekl_class(apply_linear(A, f)).form, scaled):
            bad["linear"] += 1
        # dimension reduction
        if n == 2 and any(any(linear_part(c)) for c in f):
            done["reduce"] += 1
            g = reduce_dimension(f, res.algebra)
            rg = ekl_class(g)
            if rg.rank != res.rank or not recover_unit(w, rg.form):
                bad["reduce"] += 1
    ok = not bad
    return CheckResult("row-op, truncation, padding, linear and reduction laws", ok,
                       f"checked {dict(sorted(done.items()))}" + (f"; failures {dict(bad)}" if bad else ""))


def rank5_survey(total: int = 500, seed: int = 5) -> dict:
    """Collect ``total`` rank-5 samples split between F_3 and F_5."""
    reports = []
    per = total // 2
    for p in (3, 5):
        for min_degree, share in ((2, per - per // 2), (1, per // 2)):
            cfg = SurveyConfig(GF(p), n=2, max_degree=3, samples=share, seed=seed,
                               target_rank=5, min_degree=min_degree, retries=5000)
            reports.append(survey(cfg))
    return {"reports": reports}


def check_rank5(total: int = 500, seed: int = 5) -> CheckResult:
    out = rank5_survey(total, seed)
    classes, stairs, accepted, bad = Counter(), Counter(), 0, []
    for rep in out["reports"]:
        accepted += rep.accepted
        for N, cnt in rep.classes.items():
            for cls, c in cnt.items():
                classes[(str(rep.config.field), cls)] += c
        stairs.update(rep.staircases)
        for (k, r, d), c in rep.histogram.get(5, {}).items():
            if (k, r) != (2, 1):
                bad.append((str(rep.config.field), k, r, d))
    ok = accepted == total and not bad and set(stairs) <= {"2", "3", "4"}
    return CheckResult("rank-5 classes and staircases", ok,
                       f"{accepted} samples, classes {dict(sorted(classes.items()))}, staircases {dict(sorted(stairs.items()))}")


def check_fq_realization(samples: int = 1000, seed: int = 11) -> CheckResult:
    bad, built = [], 0
    rank2 = {}
    for p in (3, 5, 7):
        K = GF(p)
        for rank in range(1, 7):
            for disc in (1, K.nonresidue):
                f = realizing_map(K, rank, disc)
                if f is None:
                    if not (rank == 2 and K.square_class(disc) != K.square_class(K(-1))):
                        bad.append(f"{K} rank {rank} disc {disc}: no construction")
                    continue
                built += 1
                inv = invariants(ekl_class(f).form)
                if inv.rank != rank or inv.disc != K.square_class(K(disc)):
                    bad.append(f"{K} rank {rank} disc {disc}: got {inv.rank}, {inv.disc}")
        cfg = SurveyConfig(K, n=2, max_degree=3, samples=samples, seed=seed, target_rank=2, retries=400)
        rep = survey(cfg)
        discs = Counter()
        for (k, r, d), c in rep.histogram.get(2, {}).items():
            discs[d if r else "hyperbolic"] += c
        rank2[str(K)] = (rep.accepted, dict(discs))
        if rep.accepted != samples or set(discs) != {"hyperbolic"}:
            bad.append(f"{K} rank-2 survey: {rank2[str(K)]}")
    return CheckResult("finite-field realization table", not bad,
                       f"{built} constructions, rank-2 samples {rank2}" + (f"; failures {bad}" if bad else ""))


def worked_suite(include_random: bool = True, include_rank64: bool = False) -> list[CheckResult]:
    """Run the worked examples (and, optionally, the randomized laws)."""
    results = [check_2dim_1(), check_1dim(), check_powers(), check_rank9(), check_iterates(include_rank64)]
    if include_random:
        results += [check_chain_rule(), check_structural_laws(), check_rank5(), check_fq_realization()]
    return results


def suite_to_json(results: list[CheckResult]) -> str:
    return json.dumps([{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results], indent=2)
