"""Fractional clique number, fractional colorings, and duality certificates.

The fractional clique number of a contradiction graph is the optimum of the
packing LP over the deduplicated inclusion-maximal consistency sets V_h:

    max sum delta(v)   s.t.  sum_{v in V_h} delta(v) <= 1  per maximal V_h,
                             delta >= 0.

Restricting to consistency sets is sound because every independent set of a
contradiction graph extends to some V_h (merge the members' constraints and
complete arbitrarily), and restricting to maximal ones drops only dominated
constraints.  The dual optimum is a fractional coloring by the same sets;
finite LP strong duality makes the two optima coincide exactly, so every
solve can hand back a matched clique/coloring certificate pair.

All arithmetic is Fractions; certificates are revalidated against the full
maximal family before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .concepts import HypothesisPattern, mask_to_pattern, pattern_to_mask
from .errors import ZeroCliqueError, ZeroColoringError
from .graph import Caps, ContradictionGraph, DEFAULT_CAPS, independent_sets


def frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def parse_frac(text: str) -> Fraction:
    num, den = text.split("/")
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class FractionalClique:
    """Vertex weights delta >= 0 feasible for every maximal V_h constraint."""

    weights: dict  # vertex index -> Fraction, nonzero entries only
    size: Fraction


@dataclass(frozen=True)
class FractionalColoring:
    """Pattern weights w >= 0 covering every vertex with total at least 1."""

    weights: dict  # HypothesisPattern -> Fraction, nonzero entries only
    colors: Fraction


@dataclass(frozen=True)
class DualityCertificate:
    value: Fraction
    clique: FractionalClique
    coloring: FractionalColoring


def validate_packing(g: ContradictionGraph, fc: FractionalClique, caps: Caps = DEFAULT_CAPS) -> None:
    """Exact feasibility against the full maximal-V_h family (not only the
    constraints the solver happened to touch)."""
    for v, w in fc.weights.items():
        if not 0 <= v < g.num_vertices:
            raise ValueError(f"weight on unknown vertex {v}")
        if w < 0:
            raise ValueError(f"negative weight on vertex {v}")
    if sum(fc.weights.values(), Fraction(0)) != fc.size:
        raise ValueError("declared size differs from the weight total")
    fam = independent_sets(g, maximal_only=True, caps=caps)
    for pattern, mask in zip(fam.patterns, fam.masks):
        total = sum(w for v, w in fc.weights.items() if (mask >> v) & 1)
        if total > 1:
            raise ValueError(
                f"packing constraint violated on V_h for h={pattern}: {total} > 1"
            )


def validate_cover(g: ContradictionGraph, col: FractionalColoring) -> None:
    """Every vertex must be covered with total weight >= 1 by the consistent
    patterns; exact arithmetic."""
    masks = []
    for pattern, w in col.weights.items():
        if w < 0:
            raise ValueError(f"negative weight on pattern {pattern}")
        if len(pattern) != g.cls.universe_size:
            raise ValueError(f"pattern {pattern} has wrong length")
        masks.append((pattern_to_mask(pattern), w))
    if sum(col.weights.values(), Fraction(0)) != col.colors:
        raise ValueError("declared color total differs from the weight total")
    for v in range(g.num_vertices):
        total = sum(
            w for hm, w in masks if (g.ones[v] & ~hm) == 0 and (g.zeros[v] & hm) == 0
        )
        if total < 1:
            raise ValueError(
                f"cover constraint violated at vertex {v} "
                f"({g.vertices[v].render()}): {total} < 1"
            )


def omega_star(g: ContradictionGraph, caps: Caps = DEFAULT_CAPS) -> DualityCertificate:
    """Exact fractional clique number with matching primal/dual certificates.

    The primal optimum is a fractional clique, the dual a fractional coloring
    of equal total weight; both are revalidated before returning.
    """
    from .simplex import solve_packing_lp

    fam = independent_sets(g, maximal_only=True, caps=caps)
    value, primal, dual = solve_packing_lp(g.num_vertices, fam.masks)
    fc = FractionalClique(
        weights={v: w for v, w in enumerate(primal) if w}, size=value
    )
    col = FractionalColoring(
        weights={fam.patterns[i]: w for i, w in enumerate(dual) if w},
        colors=sum(dual, Fraction(0)),
    )
    assert col.colors == value, "strong duality mismatch"
    validate_packing(g, fc, caps)
    validate_cover(g, col)
    return DualityCertificate(value=value, clique=fc, coloring=col)


def uniform_coloring_witness(g: ContradictionGraph, caps: Caps = DEFAULT_CAPS) -> FractionalColoring:
    """Weight 2^(m-|X|) on every full labeling: a dataset with k distinct
    points is consistent with 2^(|X|-k) labelings, so its cover totals
    2^(m-k) >= 1.  Total weight 2^m, certifying chi* <= 2^m for every m."""
    n = g.cls.universe_size
    caps.check_universe(n)
    w = Fraction(2) ** (g.m - n)
    col = FractionalColoring(
        weights={mask_to_pattern(hm, n): w for hm in range(1 << n)},
        colors=Fraction(2) ** g.m,
    )
    validate_cover(g, col)
    return col


def coloring_to_distribution(col: FractionalColoring) -> dict:
    """Normalize a fractional coloring into a distribution over patterns.
    Every vertex then has consistency probability >= 1/colors."""
    if col.colors == 0:
        raise ZeroColoringError("cannot normalize a zero-weight coloring")
    return {h: w / col.colors for h, w in col.weights.items() if w}


def clique_to_distribution(fc: FractionalClique) -> dict:
    """Normalize a fractional clique into a distribution over vertices.
    Every pattern is then consistent with probability <= 1/size."""
    if fc.size == 0:
        raise ZeroCliqueError("cannot normalize a zero-weight clique")
    return {v: w / fc.size for v, w in fc.weights.items() if w}


def consistency_probability(g: ContradictionGraph, dist: dict, pattern: HypothesisPattern) -> Fraction:
    """Pr_{S ~ dist}[pattern consistent with S] for a vertex distribution."""
    hm = pattern_to_mask(pattern)
    total = Fraction(0)
    for v, p in dist.items():
        if (g.ones[v] & ~hm) == 0 and (g.zeros[v] & hm) == 0:
            total += p
    return total


# ─── certificate text format ─────────────────────────────────────────────


def format_certificate(cert: DualityCertificate) -> str:
    """Deterministic text form:

        value <num>/<den>
        primal
        <vertex-index> <num>/<den>
        dual
        <pattern-bits> <num>/<den>

    Nonzero entries only, sorted by vertex index / pattern bits.
    """
    lines = [f"value {frac_str(cert.value)}", "primal"]
    for v in sorted(cert.clique.weights):
        lines.append(f"{v} {frac_str(cert.clique.weights[v])}")
    lines.append("dual")
    for h in sorted(cert.coloring.weights):
        bits = "".join(str(b) for b in h)
        lines.append(f"{bits} {frac_str(cert.coloring.weights[h])}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> DualityCertificate:
    value = None
    primal: dict = {}
    dual: dict = {}
    section = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("value "):
            value = parse_frac(line.split()[1])
        elif line == "primal":
            section = "primal"
        elif line == "dual":
            section = "dual"
        elif section == "primal":
            vs, ws = line.split()
            primal[int(vs)] = parse_frac(ws)
        elif section == "dual":
            hs, ws = line.split()
            dual[tuple(int(c) for c in hs)] = parse_frac(ws)
        else:
            raise ValueError(f"unexpected certificate line: {line!r}")
    if value is None:
        raise ValueError("certificate missing value line")
    return DualityCertificate(
        value=value,
        clique=FractionalClique(weights=primal, size=sum(primal.values(), Fraction(0))),
        coloring=FractionalColoring(weights=dual, colors=sum(dual.values(), Fraction(0))),
    )
