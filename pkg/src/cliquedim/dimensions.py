"""Learnability dimensions of finite concept classes and their inequalities.

Four quantities per class:

  vc   largest shattered point subset;
  ld   optimal mistake-tree depth: ld(H) = max over points x splitting H
       into two nonempty restrictions of 1 + min(ld(H0), ld(H1));
  cd   sup of m with clique number omega_m = 2^m;
  cd*  sup of m with fractional clique number omega*_m = 2^m.

cd / cd* report the largest passing m up to m_max together with an exactness
flag.  Exactness uses three analytic facts so the infinite sup can be pinned
by finitely many searches:

  (1) pattern cap: a clique takes at most one vertex per consistency set and
      the <= 2^|X| maximal sets cover everything, so omega_m <= 2^|X| (and,
      summing the packing constraints, omega*_m <= 2^|X|); hence every
      m > |X| separates automatically;
  (2) growth cutoff for cd: once m_c satisfies (2m_c+1)^ld < 2^(m_c) and
      m_c >= ld/ln2 (checked with the rational bound 693147/10^6 < ln 2),
      every m >= m_c has (2m+1)^ld < 2^m, and omega_m <= (2m+1)^ld always;
  (3) absorbing optimum for cd*: if omega*_{m1} = 1 then some single
      labeling is consistent with every realizable m1-dataset, hence with
      every larger realizable dataset too, so omega*_m = 1 for all m >= m1.

Whatever remains in (value, cutoff] beyond m_max is searched directly when
the graphs fit under the caps; otherwise the flag honestly degrades to
lower-bound-at-m-max.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional

from .cliques import has_clique_of_size, max_clique
from .concepts import ConceptClass
from .errors import EmptyClassError, ResourceLimitError
from .fractional import omega_star
from .graph import Caps, DEFAULT_CAPS, build_graph, independent_sets
from .trees import MistakeLeaf, MistakeNode, MistakeTree

EXACT = "exact"
LOWER_BOUND = "lower-bound-at-m-max"

# rational brackets of ln 2, used whenever an exactness argument needs it
LN2_LO = Fraction(693147, 10**6)
LN2_HI = Fraction(693148, 10**6)


@lru_cache(maxsize=256)
def _graph(cls: ConceptClass, m: int, caps: Caps):
    return build_graph(cls, m, caps)


@lru_cache(maxsize=256)
def _omega_star_cert(cls: ConceptClass, m: int, caps: Caps):
    return omega_star(_graph(cls, m, caps), caps)


def vc_dimension(cls: ConceptClass) -> int:
    """Largest d such that some d point subset is shattered (all 2^d label
    patterns realized).  d <= log2 |H| bounds the subset size searched."""
    cls.require_nonempty()
    n = cls.universe_size
    hi = min(n, len(cls.hypotheses).bit_length() - 1)
    for d in range(hi, 0, -1):
        for points in itertools.combinations(range(n), d):
            seen = {tuple(row[p] for p in points) for row in cls.hypotheses}
            if len(seen) == 1 << d:
                return d
    return 0


def littlestone_dimension(cls: ConceptClass) -> int:
    cls.require_nonempty()
    n = cls.universe_size

    @lru_cache(maxsize=None)
    def ld(rows: tuple) -> int:
        if len(rows) <= 1:
            return 0
        best = 0
        for x in range(n):
            zeros = tuple(r for r in rows if r[x] == 0)
            ones = tuple(r for r in rows if r[x] == 1)
            if zeros and ones:
                best = max(best, 1 + min(ld(zeros), ld(ones)))
        return best

    return ld(cls.hypotheses)


def littlestone_witness(cls: ConceptClass, depth: Optional[int] = None) -> MistakeTree:
    """A complete shattered mistake tree of the requested depth (default: the
    full dimension).  At every internal node both restrictions are nonempty
    and can still support depth-1 below, so each branch stays realizable."""
    cls.require_nonempty()
    n = cls.universe_size
    full = littlestone_dimension(cls)
    if depth is None:
        depth = full
    if depth > full:
        raise ValueError(f"requested depth {depth} exceeds the dimension {full}")

    @lru_cache(maxsize=None)
    def ld(rows: tuple) -> int:
        if len(rows) <= 1:
            return 0
        best = 0
        for x in range(n):
            zeros = tuple(r for r in rows if r[x] == 0)
            ones = tuple(r for r in rows if r[x] == 1)
            if zeros and ones:
                best = max(best, 1 + min(ld(zeros), ld(ones)))
        return best

    def build(rows: tuple, d: int) -> MistakeTree:
        if d == 0:
            return MistakeLeaf()
        for x in range(n):
            zeros = tuple(r for r in rows if r[x] == 0)
            ones = tuple(r for r in rows if r[x] == 1)
            if zeros and ones and min(ld(zeros), ld(ones)) >= d - 1:
                return MistakeNode(x, build(zeros, d - 1), build(ones, d - 1))
        raise AssertionError("no splitting point although depth budget remains")

    return build(cls.hypotheses, depth)


def tech_cd_cutoff(d: int) -> int:
    """Smallest m_c certified (big-integer arithmetic) to satisfy
    (2m+1)^d < 2^m for every m >= m_c."""
    m = 1
    while True:
        if (2 * m + 1) ** d < 2**m and m * 693147 >= d * 10**6:
            return m
        m += 1


def fcd_alpha_cutoff(epsilon: Fraction) -> Optional[int]:
    """Smallest m_c certified to satisfy m^alpha < 2^m for all m >= m_c,
    where alpha upper-bounds the boosting exponent (32/eps^2) ln(2/eps).

    Uses ln(2q/p) <= bitlength(2q) * ln2_hi and requires m_c >= A/ln2 so the
    step ratio (1+1/m)^A stays <= 2.  Returns None when A is too large to be
    worth searching (the caller then treats the cutoff as unreachable).
    """
    if epsilon <= 0:
        return None
    p, q = epsilon.numerator, epsilon.denominator
    ln_ub = (2 * q).bit_length() * LN2_HI
    alpha_ub = Fraction(32) * q * q / (p * p) * ln_ub
    a = -(-alpha_ub.numerator // alpha_ub.denominator)  # ceil
    if a > 10**5:
        return None
    m = max(3, -(-(a * 10**6) // 693147))
    # monotone region: binary search after one doubling pass
    lo, hi = m, m
    while hi**a >= 2**hi:
        lo = hi + 1
        hi *= 2
        if hi > 10**7:
            return None
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**a < 2**mid:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class DimensionValue:
    value: int
    exactness: str  # EXACT | LOWER_BOUND

    def __str__(self) -> str:
        rel = "=" if self.exactness == EXACT else ">="
        return f"{rel}{self.value} {self.exactness}"


def _pattern_count(cls: ConceptClass, m: int, caps: Caps) -> int:
    return len(independent_sets(_graph(cls, m, caps), maximal_only=True, caps=caps))


def clique_dimension(
    cls: ConceptClass,
    m_max: int,
    caps: Caps = DEFAULT_CAPS,
    known: Optional[dict] = None,
) -> DimensionValue:
    """Largest m <= m_max with omega_m = 2^m, plus exactness.

    `known` optionally injects already-computed decisions {m: bool}.
    Decisions use, in order: the mistake-tree fast path (ld >= m certifies a
    2^m-clique), vertex/pattern counting, then targeted branch-and-bound.
    """
    cls.require_nonempty()
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    ld = littlestone_dimension(cls)
    decisions: dict = dict(known or {})

    def decide(m: int) -> bool:
        if m in decisions:
            return decisions[m]
        if ld >= m:
            decisions[m] = True
            return True
        g = _graph(cls, m, caps)
        target = 1 << m
        if target > g.num_vertices or target > _pattern_count(cls, m, caps):
            decisions[m] = False
            return False
        decisions[m] = has_clique_of_size(g, target, caps)
        return decisions[m]

    value = 0
    try:
        for m in range(1, m_max + 1):
            if decide(m):
                value = m
    except ResourceLimitError:
        return DimensionValue(value, LOWER_BOUND)

    # exactness: everything beyond min(|X|, cutoff-1) separates analytically
    upper = min(cls.universe_size, tech_cd_cutoff(ld) - 1)
    try:
        for m in range(value + 1, upper + 1):
            if decide(m):
                # a pass beyond m_max: the true dimension exceeds the
                # reported (m_max-capped) value, so only a lower bound
                return DimensionValue(value, LOWER_BOUND)
    except ResourceLimitError:
        return DimensionValue(value, LOWER_BOUND)
    return DimensionValue(value, EXACT)


def fractional_clique_dimension(
    cls: ConceptClass,
    m_max: int,
    caps: Caps = DEFAULT_CAPS,
    known: Optional[dict] = None,
    extension_vertex_cap: int = 500,
) -> DimensionValue:
    """Largest m <= m_max with omega*_m = 2^m (exact LPs), plus exactness.

    `known` optionally injects computed omega* values {m: Fraction}.
    Extension LPs past m_max run only while the graphs stay under
    `extension_vertex_cap` vertices; otherwise the flag degrades.
    """
    cls.require_nonempty()
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    values: dict = dict(known or {})

    def val(m: int, cap_override: Optional[int] = None) -> Fraction:
        if m not in values:
            use = caps if cap_override is None else Caps(
                max_vertices=min(caps.max_vertices, cap_override),
                max_pattern_universe=caps.max_pattern_universe,
                node_budget=caps.node_budget,
            )
            values[m] = _omega_star_cert(cls, m, use).value
        return values[m]

    value = 0
    one_at = None
    try:
        for m in range(1, m_max + 1):
            v = val(m)
            if v == 1 << m:
                value = m
            if v == 1 and one_at is None:
                one_at = m
    except ResourceLimitError:
        return DimensionValue(value, LOWER_BOUND)

    upper = cls.universe_size
    if one_at is not None:
        upper = min(upper, one_at - 1)
    first_sep = next(
        (m for m in sorted(values) if values[m] < 1 << m), None
    )
    if first_sep is not None:
        eps = Fraction(1) / values[first_sep] - Fraction(1, 1 << first_sep)
        cut = fcd_alpha_cutoff(eps)
        if cut is not None:
            upper = min(upper, cut - 1)

    try:
        for m in range(value + 1, upper + 1):
            v = val(m, cap_override=extension_vertex_cap)
            if v == 1 << m:
                return DimensionValue(value, LOWER_BOUND)
            if v == 1:
                break  # absorbing: everything above separates too
    except ResourceLimitError:
        return DimensionValue(value, LOWER_BOUND)
    return DimensionValue(value, EXACT)


@dataclass(frozen=True)
class PerMRow:
    m: int
    num_vertices: int
    omega: Optional[int]
    omega_exact: Optional[bool]
    omega_star: Optional[Fraction]

    @property
    def two_pow_m(self) -> int:
        return 1 << self.m


@dataclass(frozen=True)
class DimensionReport:
    cls: ConceptClass
    vc: int
    ld: int
    cd: DimensionValue
    cd_star: DimensionValue
    rows: tuple  # tuple[PerMRow, ...]


def dimension_report(
    cls: ConceptClass,
    m_max_clique: int = 4,
    m_max_lp: int = 3,
    caps: Caps = DEFAULT_CAPS,
) -> DimensionReport:
    """Per-m table plus the four dimensions.  omega is exact unless the
    node budget ran out (then the best clique found is reported, flagged)."""
    cls.require_nonempty()
    vc = vc_dimension(cls)
    ld = littlestone_dimension(cls)
    rows = []
    omega_known: dict = {}
    star_known: dict = {}
    for m in range(1, max(m_max_clique, m_max_lp) + 1):
        g = _graph(cls, m, caps)
        omega = None
        omega_exact = None
        if m <= m_max_clique:
            try:
                omega = max_clique(g, caps).size
                omega_exact = True
                omega_known[m] = omega == 1 << m
            except ResourceLimitError as exc:
                omega = len(exc.best) if exc.best else 0
                omega_exact = False
        star = None
        if m <= m_max_lp:
            star = _omega_star_cert(cls, m, caps).value
            star_known[m] = star
        rows.append(
            PerMRow(m=m, num_vertices=g.num_vertices, omega=omega,
                    omega_exact=omega_exact, omega_star=star)
        )
    cd = clique_dimension(cls, m_max_clique, caps, known=omega_known)
    cd_star = fractional_clique_dimension(cls, m_max_lp, caps, known=star_known)
    return DimensionReport(cls=cls, vc=vc, ld=ld, cd=cd, cd_star=cd_star, rows=tuple(rows))


def check_inequalities(report: DimensionReport) -> list:
    """Exact evaluation of every inequality the theory promises for the
    computed values.  Returns [(name, passed, detail)]; comparisons on
    lower-bound dimensions are skipped rather than half-checked."""
    out = []
    vc, ld = report.vc, report.ld
    out.append(("vc<=ld", vc <= ld, f"vc={vc} ld={ld}"))
    if report.cd.exactness == EXACT:
        out.append(
            ("ld<=cd", ld <= report.cd.value, f"ld={ld} cd={report.cd.value}")
        )
        if ld >= 2:
            # log2(ld) is rational only for powers of two; compare via
            # 2^(cd) vs ld^(2*ld) to keep it exact: cd <= 2*ld*log2(ld)
            # iff 2^cd <= ld^(2*ld).  The 300 floor is checked directly.
            cap_ok = report.cd.value <= 300 or 2 ** report.cd.value <= ld ** (2 * ld)
            out.append(
                (
                    "cd<=max(2*ld*log2(ld),300)",
                    cap_ok,
                    f"cd={report.cd.value} ld={ld}",
                )
            )
    for row in report.rows:
        if row.omega is not None and row.omega_exact:
            if row.omega_star is not None:
                out.append(
                    (
                        f"omega<=omega_star<=2^m@m={row.m}",
                        row.omega <= row.omega_star <= row.two_pow_m,
                        f"omega={row.omega} omega*={row.omega_star} 2^m={row.two_pow_m}",
                    )
                )
            bound = (2 * row.m + 1) ** ld
            out.append(
                (
                    f"omega<=(2m+1)^ld@m={row.m}",
                    row.omega <= bound,
                    f"omega={row.omega} (2m+1)^ld={bound}",
                )
            )
    return out


def clear_caches() -> None:
    _graph.cache_clear()
    _omega_star_cert.cache_clear()
