"""Multiplicative-weights boosting of the optimal-coloring distribution.

Once the fractional clique number separates from 2^m0 at some m0, the
normalized optimal coloring mu~ of G_{m0} gives every realizable m0-dataset
consistency probability >= 1/omega*_{m0} = 2^{-m0} + epsilon.  Against any
realizable label distribution D this yields gamma-good hypotheses (loss at
most 1/2 - gamma) with probability at least epsilon - 2*gamma, and running
the inverted expert game over a dataset's examples for

    T = ceil(2 ln m / gamma^2)   (bumped to odd)

rounds with Hedge weights w_{t+1}(z) ~ w_t(z) exp(-eta * l(z, h_t)),
eta = sqrt(2 ln m / T), expert loss l(z, h) = [h agrees with z], keeps the
learner's regret at most sqrt(2 T ln m).  Consequences verified here:

  * all-rounds-gamma-good forces the majority vote to be consistent
    (gamma*T strictly beats the regret bound);
  * the majority of T i.i.d. mu~ draws is consistent with any fixed
    realizable m-dataset with probability >= (epsilon-2gamma)^T
    >= m^(-alpha), alpha = (2/gamma^2) ln(1/(epsilon-2gamma)).

Natural logarithms throughout.  Weight arithmetic is floating point with
per-round renormalization; a rational shadow mode replays the game with the
exact rational value of the float update factor and certifies the regret
comparison with conservative rational bounds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

import numpy as np
from scipy.stats import beta as beta_dist

from .concepts import ConceptClass, Dataset, HypothesisPattern, mask_to_pattern
from .errors import (
    EvenLengthError,
    InvalidParamsError,
    LengthMismatchError,
    NoSeparationError,
    NotRealizableDistributionError,
)
from .fractional import coloring_to_distribution, omega_star
from .graph import Caps, DEFAULT_CAPS, build_graph

LN2_LO = Fraction(693147, 10**6)
LN2_HI = Fraction(693148, 10**6)
LN4_HI = 2 * LN2_HI  # 1.386296 > ln 4


# ─── the boosted sampling distribution ───────────────────────────────────


@dataclass(frozen=True)
class MuTilde:
    """Normalized optimal coloring of G_{m0}: a pattern distribution giving
    every realizable m0-dataset consistency probability >= 1/omega*_{m0}."""

    m0: int
    omega_star: Fraction
    epsilon: Fraction  # 1/omega* - 2^-m0, positive by construction
    patterns: tuple
    probs: tuple  # Fractions, parallel to patterns, summing to 1


def mu_tilde(cls: ConceptClass, m0: int, caps: Caps = DEFAULT_CAPS) -> MuTilde:
    cert = omega_star(build_graph(cls, m0, caps), caps)
    if cert.value == 1 << m0:
        raise NoSeparationError(
            f"omega*_{m0} = 2^{m0}: no separation, boosting has no margin"
        )
    dist = coloring_to_distribution(cert.coloring)
    patterns = tuple(sorted(dist))
    eps = Fraction(1) / cert.value - Fraction(1, 1 << m0)
    assert eps > 0
    return MuTilde(
        m0=m0,
        omega_star=cert.value,
        epsilon=eps,
        patterns=patterns,
        probs=tuple(dist[h] for h in patterns),
    )


def smallest_separating_m0(cls: ConceptClass, caps: Caps = DEFAULT_CAPS) -> int:
    """Least m0 with omega*_{m0} < 2^{m0}.  Always exists: a clique takes at
    most one vertex per maximal consistency set and the packing constraints
    sum to at most 2^|X|, so every m0 > |X| separates."""
    m0 = 1
    while True:
        cert = omega_star(build_graph(cls, m0, caps), caps)
        if cert.value < 1 << m0:
            return m0
        m0 += 1
        assert m0 <= cls.universe_size + 1, "separation must occur by |X|+1"


@dataclass(frozen=True)
class BoostConfig:
    mu: MuTilde
    m: int  # target dataset size
    gamma: Fraction
    T: int  # odd round count
    eta: float

    @property
    def epsilon(self) -> Fraction:
        return self.mu.epsilon

    @property
    def alpha(self) -> float:
        """Exponent of the m^-alpha consistency bound."""
        return (2 / float(self.gamma) ** 2) * math.log(
            1 / float(self.epsilon - 2 * self.gamma)
        )


def boost_config(
    cls: ConceptClass,
    m0: int,
    m: int,
    gamma: Optional[Fraction] = None,
    caps: Caps = DEFAULT_CAPS,
) -> BoostConfig:
    if m < 1:
        raise InvalidParamsError("m must be >= 1")
    mu = mu_tilde(cls, m0, caps)
    if gamma is None:
        gamma = mu.epsilon / 4
    gamma = Fraction(gamma)
    if not 0 < gamma < mu.epsilon / 2:
        raise InvalidParamsError(
            f"gamma must lie in (0, epsilon/2) = (0, {mu.epsilon / 2}); got {gamma}"
        )
    if m == 1:
        t = 1
    else:
        t = math.ceil(2 * math.log(m) / float(gamma) ** 2)
        if t % 2 == 0:
            t += 1
    eta = math.sqrt(2 * math.log(m) / t)
    return BoostConfig(mu=mu, m=m, gamma=gamma, T=t, eta=eta)


def draw_patterns(mu: MuTilde, count: int, rng: random.Random) -> list:
    """`count` i.i.d. draws from mu~ by inverting the cumulative weights."""
    cum = []
    acc = Fraction(0)
    for p in mu.probs:
        acc += p
        cum.append(acc)
    draws = []
    for _ in range(count):
        u = rng.random()
        k = 0
        while k < len(cum) - 1 and u >= cum[k]:
            k += 1
        draws.append(mu.patterns[k])
    return draws


def sample_boosted(config: BoostConfig, seed: int) -> HypothesisPattern:
    """Majority of T i.i.d. draws from mu~, deterministic given the seed."""
    return majority_vote(draw_patterns(config.mu, config.T, random.Random(seed)))


def majority_vote(patterns: Sequence[HypothesisPattern]) -> HypothesisPattern:
    """Pointwise strict majority; requires an odd number of equal-length
    votes so no tie is possible."""
    if not patterns:
        raise EvenLengthError("majority of zero votes")
    if len(patterns) % 2 == 0:
        raise EvenLengthError(f"majority needs an odd count, got {len(patterns)}")
    n = len(patterns[0])
    if any(len(h) != n for h in patterns):
        raise LengthMismatchError("patterns of unequal length")
    half = len(patterns) / 2
    return tuple(1 if sum(h[p] for h in patterns) > half else 0 for p in range(n))


# ─── the inverted expert game ────────────────────────────────────────────


@dataclass
class ExpertGameTranscript:
    """Full record of a Hedge run over a dataset's examples.

    Experts are the dataset's m examples (repeats stay separate experts).
    `losses[t, j]` is 1 when instance t agrees with expert j's example;
    `weights[t]` is the distribution entering round t (row T is the final,
    unused update).  The learner's expected loss per round equals the
    probability mass of experts the instance agrees with, so the realizable
    loss of instance t against the induced label distribution D_t is
    1 - learner[t].
    """

    dataset: Dataset
    instances: tuple
    eta: float
    weights: np.ndarray  # (T+1, m)
    losses: np.ndarray  # (T, m)
    learner: np.ndarray  # (T,)
    regret: float
    regret_bound: float  # sqrt(2 T ln m)
    shadow_regret: Optional[Fraction] = None
    shadow_certified: Optional[bool] = None

    @property
    def cumulative(self) -> np.ndarray:
        return self.losses.sum(axis=0)

    def label_distribution(self, t: int) -> dict:
        """D_t over distinct labeled examples: total weight per value."""
        out: dict = {}
        for j, ex in enumerate(self.dataset):
            key = (ex.point, ex.label)
            out[key] = out.get(key, 0.0) + float(self.weights[t, j])
        return out

    def distribution_loss(self, t: int) -> float:
        """L_{D_t}(h_t) = 1 - (weight mass the instance agrees with)."""
        return 1.0 - float(self.learner[t])

    def gamma_good(self, t: int, gamma: float) -> bool:
        return self.distribution_loss(t) <= 0.5 - float(gamma) + 1e-12

    def all_gamma_good(self, gamma: float) -> bool:
        return all(self.gamma_good(t, gamma) for t in range(len(self.instances)))

    def majority(self) -> HypothesisPattern:
        return majority_vote(list(self.instances))


def _example_losses(dataset: Dataset, instances: Sequence[HypothesisPattern]) -> np.ndarray:
    m = len(dataset)
    if m < 1:
        raise InvalidParamsError("expert game needs a nonempty dataset")
    top = max(ex.point for ex in dataset)
    arr = np.zeros((len(instances), m), dtype=np.float64)
    for t, h in enumerate(instances):
        if len(h) <= top:
            raise LengthMismatchError(
                f"instance {t} has length {len(h)}, dataset uses point {top}"
            )
        for j, ex in enumerate(dataset):
            arr[t, j] = 1.0 if h[ex.point] == ex.label else 0.0
    return arr


def run_expert_game(
    dataset: Dataset,
    instances: Sequence[HypothesisPattern],
    eta: Optional[float] = None,
    shadow: bool = False,
) -> ExpertGameTranscript:
    """Hedge over the dataset's examples against the given instance sequence.

    Weights have the closed form w_t ~ exp(-eta * cumulative loss before t),
    computed as a renormalized softmax per round.  `shadow` replays the run
    in exact rationals (update factor = the exact value of float exp(-eta))
    and certifies regret <= sqrt(2 T ln m) with conservative rational
    bounds; certification can only strengthen a float PASS, never fake one.
    """
    instances = tuple(tuple(h) for h in instances)
    t_rounds = len(instances)
    if t_rounds < 1:
        raise InvalidParamsError("expert game needs at least one round")
    m = len(dataset)
    if eta is None:
        eta = math.sqrt(2 * math.log(max(m, 1)) / t_rounds) if m > 1 else 0.0
    losses = _example_losses(dataset, instances)
    cum = np.zeros((t_rounds + 1, m))
    np.cumsum(losses, axis=0, out=cum[1:])
    z = -eta * cum
    z -= z.max(axis=1, keepdims=True)
    weights = np.exp(z)
    weights /= weights.sum(axis=1, keepdims=True)
    learner = (weights[:-1] * losses).sum(axis=1)
    total = losses.sum(axis=0)
    regret = float(learner.sum() - total.min())
    bound = math.sqrt(2 * t_rounds * math.log(m)) if m > 1 else 0.0

    shadow_regret = None
    shadow_certified = None
    if shadow:
        shadow_regret = _shadow_regret(losses, eta)
        shadow_certified = shadow_regret <= _sqrt_lower_bound(
            2 * t_rounds, m
        )
    return ExpertGameTranscript(
        dataset=dataset,
        instances=instances,
        eta=eta,
        weights=weights,
        losses=losses,
        learner=learner,
        regret=regret,
        regret_bound=bound,
        shadow_regret=shadow_regret,
        shadow_certified=shadow_certified,
    )


def _shadow_regret(losses: np.ndarray, eta: float) -> Fraction:
    """Replay the game with exact rational weights; the update factor is the
    exact rational value of the float exp(-eta)."""
    u = Fraction(math.exp(-eta))
    t_rounds, m = losses.shape
    w = [Fraction(1, m)] * m
    learner_total = Fraction(0)
    for t in range(t_rounds):
        row = losses[t]
        learner_total += sum(w[j] for j in range(m) if row[j])
        w = [w[j] * (u if row[j] else 1) for j in range(m)]
        s = sum(w)
        w = [x / s for x in w]
    totals = [Fraction(int(losses[:, j].sum())) for j in range(m)]
    return learner_total - min(totals)


def _sqrt_lower_bound(factor: int, m: int) -> Fraction:
    """A rational s with s <= sqrt(factor * ln m), via a safe rational lower
    bound on ln m and integer square root at 10^12 scaling."""
    if m <= 1:
        return Fraction(0)
    ln_lo = Fraction(math.nextafter(math.nextafter(math.log(m), 0.0), 0.0))
    target = factor * ln_lo  # <= factor * ln m
    scaled = (target.numerator * 10**24) // target.denominator
    return Fraction(isqrt(scaled), 10**12)


# ─── gamma-goodness checks ───────────────────────────────────────────────


def forced_gamma_good_check(
    dataset: Dataset,
    universe: int,
    config: BoostConfig,
    transcripts: int,
    seed: int,
) -> tuple:
    """Run `transcripts` expert games whose every instance is chosen
    gamma-good against the current induced distribution (uniform seeded
    choice among all gamma-good full labelings; the set is never empty since
    any labeling realizing the dataset has loss 0).  Returns
    (violations, transcripts): a violation is a run whose majority vote is
    inconsistent with the dataset even though every round was gamma-good —
    the implication the theory says cannot fail.
    """
    m = len(dataset)
    rng = np.random.default_rng(seed)
    pats = [mask_to_pattern(hm, universe) for hm in range(1 << universe)]
    agree = _example_losses(dataset, pats)  # (2^n, m): 1 where pattern agrees
    t_rounds = config.T
    eta = config.eta
    gamma_f = float(config.gamma)
    w = np.full((transcripts, m), 1.0 / m)
    correct = np.zeros((transcripts, m))
    for _ in range(t_rounds):
        # mass the pattern agrees with, per transcript x pattern
        mass = w @ agree.T  # (B, P)
        good = mass >= 0.5 + gamma_f - 1e-12  # loss 1-mass <= 1/2-gamma
        assert good.any(axis=1).all(), "no gamma-good labeling available"
        r = rng.random(transcripts)
        # uniform choice among good patterns per row
        counts = good.sum(axis=1)
        ranks = np.floor(r * counts).astype(np.int64)
        order = np.cumsum(good, axis=1) - 1  # rank of each good entry
        pick = (order == ranks[:, None]) & good
        chosen = pick.argmax(axis=1)
        loss = agree[chosen]  # (B, m)
        correct += loss
        w = w * np.exp(-eta * loss)
        w /= w.sum(axis=1, keepdims=True)
    violations = int((correct <= t_rounds / 2).any(axis=1).sum())
    return violations, transcripts


# ─── the Monte Carlo consistency verifier ────────────────────────────────


def clopper_pearson(k: int, n: int, confidence: float = 0.99) -> tuple:
    """Two-sided Clopper-Pearson interval at the given confidence (equal
    tails).  The acceptance test is one-sided: only the upper limit decides."""
    tail = (1 - confidence) / 2
    lo = 0.0 if k == 0 else float(beta_dist.ppf(tail, k, n - k + 1))
    hi = 1.0 if k == n else float(beta_dist.ppf(1 - tail, k + 1, n - k))
    return lo, hi


@dataclass(frozen=True)
class BoostVerifyRow:
    dataset: Dataset
    successes: int
    trials: int
    ci_lo: float
    ci_hi: float
    log_bound: float  # natural log of m^-alpha
    status: str  # PASS | FAIL | SKIP


@dataclass(frozen=True)
class BoostVerifyReport:
    config: BoostConfig
    master_seed: int
    trials: int
    sampled: bool  # True when datasets were subsampled
    rows: tuple

    @property
    def all_pass(self) -> bool:
        return all(r.status != "FAIL" for r in self.rows)


def _bound_str(log_bound: float) -> str:
    if log_bound < -700:  # below float underflow: render from logs
        log10 = log_bound / math.log(10)
        e = math.floor(log10)
        mant = 10 ** (log10 - e)
        return f"{mant:.3f}e{e}"
    return f"{math.exp(log_bound):.6g}"


def verify_sspfcd_bound(
    cls: ConceptClass,
    config: BoostConfig,
    trials: int = 10**5,
    master_seed: int = 0,
    caps: Caps = DEFAULT_CAPS,
    enumerate_cap: int = 10**4,
    sample_size: int = 100,
) -> BoostVerifyReport:
    """Check Pr[boosted majority consistent with S] >= m^-alpha for every
    realizable m-dataset S (all of them when at most `enumerate_cap`,
    otherwise a seeded sample).  Per-trial RNG is seeded master XOR trial
    index, so trials are independent and order-free.  A row FAILs only when
    its one-sided 99% upper confidence limit sits below the bound.
    """
    g = build_graph(cls, config.m, caps)
    if g.num_vertices <= enumerate_cap:
        chosen = list(range(g.num_vertices))
        sampled = False
    else:
        rng = random.Random(master_seed)
        chosen = sorted(rng.sample(range(g.num_vertices), sample_size))
        sampled = True

    probs = np.array([float(p) for p in config.mu.probs])
    probs /= probs.sum()
    pat_matrix = np.array(config.mu.patterns, dtype=np.int64)  # (P, n)
    n = cls.universe_size
    t_rounds = config.T

    # majority labeling per trial
    majs = np.zeros((trials, n), dtype=np.int8)
    for i in range(trials):
        gen = np.random.default_rng(master_seed ^ i)
        counts = gen.multinomial(t_rounds, probs)
        ones = counts @ pat_matrix  # per-point count of label-1 votes
        majs[i] = (2 * ones > t_rounds).astype(np.int8)

    log_bound = -config.alpha * math.log(config.m) if config.m > 1 else 0.0
    rows = []
    for v in chosen:
        ds = g.vertices[v]
        pts = np.array([ex.point for ex in ds])
        labs = np.array([ex.label for ex in ds], dtype=np.int8)
        ok = (majs[:, pts] == labs).all(axis=1)
        k = int(ok.sum())
        lo, hi = clopper_pearson(k, trials)
        if trials == 0:
            status = "SKIP"
        elif math.log(hi) < log_bound:
            status = "FAIL"
        else:
            status = "PASS"
        rows.append(
            BoostVerifyRow(
                dataset=ds, successes=k, trials=trials,
                ci_lo=lo, ci_hi=hi, log_bound=log_bound, status=status,
            )
        )
    return BoostVerifyReport(
        config=config, master_seed=master_seed, trials=trials,
        sampled=sampled, rows=tuple(rows),
    )


def format_boost_report(report: BoostVerifyReport) -> str:
    cfg = report.config
    lines = [
        f"# seed={report.master_seed} trials={report.trials} "
        f"m0={cfg.mu.m0} m={cfg.m} T={cfg.T} "
        f"epsilon={cfg.epsilon} gamma={cfg.gamma} alpha={cfg.alpha:.6g}"
        + (" sampled" if report.sampled else "")
    ]
    for r in report.rows:
        est = r.successes / r.trials if r.trials else float("nan")
        lines.append(
            f"S={r.dataset.render()} est={est:.6f} "
            f"ci=[{r.ci_lo:.6f},{r.ci_hi:.6f}] bound={_bound_str(r.log_bound)} "
            f"{r.status}"
        )
    return "\n".join(lines) + "\n"


# ─── realizable-distribution quantile check ──────────────────────────────


def small_pop_err_check(
    cls: ConceptClass,
    m: int,
    dist: dict,
    thetas: Sequence[Fraction] = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)),
    caps: Caps = DEFAULT_CAPS,
    cert=None,
) -> list:
    """For a realizable label distribution D and the normalized optimal
    coloring mu* of G_m, check exactly that

        Pr_{h~mu*}[loss_D(h) <= theta] >= 1/omega*_m - (1-theta)^m

    for each theta.  Returns [(theta, probability, bound, passed)].
    `cert` may carry a precomputed G_m duality certificate to avoid
    re-solving the LP in sweeps over many distributions.
    """
    total = sum(dist.values(), Fraction(0))
    if total != 1:
        raise InvalidParamsError(f"distribution weights sum to {total}, not 1")
    for (p, l), w in dist.items():
        if w < 0 or l not in (0, 1) or not 0 <= p < cls.universe_size:
            raise InvalidParamsError(f"bad distribution entry {(p, l)}: {w}")
    support = [(p, l) for (p, l), w in dist.items() if w > 0]
    realizable = any(
        all(row[p] == l for p, l in support) for row in cls.hypotheses
    )
    if not realizable:
        raise NotRealizableDistributionError(
            "no hypothesis has zero loss on the distribution"
        )
    if cert is None:
        cert = omega_star(build_graph(cls, m, caps), caps)
    mu = coloring_to_distribution(cert.coloring)
    losses = {}
    for h, w in mu.items():
        loss = sum(
            dw for (p, l), dw in dist.items() if h[p] != l
        )
        losses[h] = Fraction(loss)
    out = []
    for theta in thetas:
        theta = Fraction(theta)
        prob = sum((w for h, w in mu.items() if losses[h] <= theta), Fraction(0))
        bound = Fraction(1) / cert.value - (1 - theta) ** m
        out.append((theta, prob, bound, prob >= bound))
    return out


# ─── exact numeric lemma grids ───────────────────────────────────────────


def _floor_bracketed(alpha: int, scale: int) -> int:
    """floor(scale * alpha * ln(alpha)) via rational bracketing of ln with
    big-integer powers; escalates precision until the bracket pins one
    integer."""
    for prec_bits in (12, 16, 20, 24):
        p = 1 << prec_bits
        x = alpha**p
        k_hi = (x - 1).bit_length()  # smallest k with 2^k >= alpha^p
        k_lo = x.bit_length() - 1  # largest k with 2^k <= alpha^p
        v_lo = scale * alpha * Fraction(k_lo, p) * LN2_LO
        v_hi = scale * alpha * Fraction(k_hi, p) * LN2_HI
        f_lo = v_lo.numerator // v_lo.denominator
        f_hi = v_hi.numerator // v_hi.denominator
        if f_lo == f_hi:
            return f_lo
    raise AssertionError(f"could not pin floor({scale}*{alpha}*ln {alpha})")


def numeric_lemma_checks() -> list:
    """Big-integer verification of the two numeric lemma grids.

    (a) alpha in 2..12, m = floor(20 alpha ln alpha), k = 4 m^alpha,
        q = m^-alpha - (3/4)^m: verify q > 0 and k*q >= ln 4 (so
        (1-q)^k <= exp(-k q) <= 1/4).  ln 4 is replaced by the rational
        upper bound 1386296/10^6, which only strengthens the claim.

    (b) d in 30..40, m0 = 2 d log2 d: verify (i) m0 >= d/ln 2, equivalent to
        2 ln d >= 1 and implied by d^2 >= 3 > e; and (ii) 2^m0 >= (2m0+1)^d,
        via 2^m0 = d^(2d) exactly and the dyadic upper bound
        m0 <= 2dK/1024, K = min{k : 2^k >= d^1024}, which reduces (ii) to
        the integer inequality 1024 d^2 >= 4 d K + 1024.

    Returns [(name, passed, detail)].
    """
    out = []
    for alpha in range(2, 13):
        m = _floor_bracketed(alpha, 20)
        k = 4 * m**alpha
        q = Fraction(1, m**alpha) - Fraction(3, 4) ** m
        ok = q > 0 and k * q >= LN4_HI
        out.append(
            (
                f"pop-survival alpha={alpha}",
                ok,
                f"m={m} k={k} k*q={float(k * q):.6f} >= ln4",
            )
        )
    for d in range(30, 41):
        x = d**1024
        big_k = (x - 1).bit_length()
        cond_i = d * d >= 3
        cond_ii = 1024 * d * d >= 4 * d * big_k + 1024
        m0 = 2 * d * math.log2(d)
        out.append(
            (
                f"growth-threshold d={d}",
                cond_i and cond_ii,
                f"m0={m0:.1f} d/ln2={d / math.log(2):.1f} "
                f"2^m0=d^{2 * d} vs (2m0+1)^{d}",
            )
        )
    return out
