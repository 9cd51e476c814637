"""Line bundles on cycles of rational curves.

A cycle C = C_1 + ... + C_m of smooth rational curves (components meeting
consecutively, cyclically; m = 2 means two components meeting twice) carries
line bundles determined up to moduli by their component degrees
l_i = L.C_i.  Two routes to h^0(C, L) live here:

* ``h0_formula`` — the combinatorial count sum_{l_i > 0} l_i - gamma, where
  gamma is the number of connected components of the complement of the
  negative-degree part.  Valid under explicit hypotheses (m >= 3, at least
  two negative components, every arc between them contains a positive one).

* ``h0_oracle`` — brute force.  Sections on each component are homogeneous
  polynomials of degree l_i in two variables; the sections glue at the m
  nodes up to nonzero scalars g_i (the moduli of the bundle).  h^0 is the
  exact rational kernel dimension of the resulting linear system.  Under the
  formula's hypotheses the answer is independent of the g_i, which the
  oracle checks empirically by drawing several gluings.

The normal bundle datum tau (the order of the restricted anticanonical
bundle in Pic(C)) is genuinely extra moduli: it is carried as input
(``TorsionSpec``), never derived.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import HypothesisError

#: Default seed for the oracle's gluing draws.  The library itself never
#: consults the environment; the CLI layers --seed / TWISTOR_SEED on top.
DEFAULT_ORACLE_SEED = 20260816


@dataclass(frozen=True)
class CycleLineBundle:
    """Degrees (l_1..l_m) around the cycle, plus optional explicit gluings."""

    degrees: tuple[int, ...]
    gluing: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        if len(degrees) < 2:
            raise ValueError("a cycle has at least two components")
        object.__setattr__(self, "degrees", degrees)
        if self.gluing is not None:
            gl = tuple(Fraction(g) for g in self.gluing)
            if len(gl) != len(degrees):
                raise ValueError("need one gluing scalar per node")
            if any(g == 0 for g in gl):
                raise ValueError("gluing scalars must be nonzero")
            object.__setattr__(self, "gluing", gl)

    @property
    def m(self):
        return len(self.degrees)


@dataclass(frozen=True)
class TorsionSpec:
    """Order of the restricted anticanonical bundle in Pic(C)."""

    kind: str  # "finite" | "non_torsion"
    order: int | None = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.order is None or self.order < 1:
                raise ValueError("finite torsion needs an order k >= 1")
        elif self.kind == "non_torsion":
            if self.order is not None:
                raise ValueError("non-torsion spec carries no order")
        else:
            raise ValueError(f"unknown torsion kind {self.kind!r}")

    @classmethod
    def finite(cls, k):
        return cls("finite", int(k))

    @classmethod
    def non_torsion(cls):
        return cls("non_torsion")

    @property
    def tau(self):
        return self.order if self.kind == "finite" else math.inf


def torsion_tau(spec: TorsionSpec):
    """finite(k) -> k, non_torsion -> math.inf."""
    return spec.tau


def euler_char_cycle(bundle: CycleLineBundle) -> int:
    """chi(C, L) = sum(l_i): the m section-spaces (l_i + 1 each) lose one
    condition per node, and chi(O_C) = 0."""
    return sum(bundle.degrees)


def cyclic_arcs(m, removed):
    """Maximal runs of indices 0..m-1 (cyclic) avoiding ``removed``.

    Returns a list of lists; empty if everything is removed, a single
    full-circle arc if nothing is.
    """
    removed = set(removed)
    kept = [i for i in range(m) if i not in removed]
    if not kept:
        return []
    if not removed:
        return [list(range(m))]
    arcs = []
    # start each arc just after a removed index
    for i in range(m):
        if i in removed:
            continue
        if (i - 1) % m in removed:
            arc = []
            j = i
            while j not in removed:
                arc.append(j)
                j = (j + 1) % m
            arcs.append(arc)
    return arcs


def h0_formula(bundle: CycleLineBundle) -> int:
    """Section count sum_{i in I+} l_i - gamma under the arc hypotheses.

    gamma is the number of connected components of C minus its
    negative-degree components.  Raises HypothesisError (with a distinct tag)
    when m < 3, when fewer than two components are negative, or when some
    arc of the complement has no positive component.
    """
    degrees = bundle.degrees
    m = len(degrees)
    if m < 3:
        raise HypothesisError(
            "too-few-components",
            f"the closed formula needs m >= 3 components, got m={m}; "
            "use the oracle for m=2",
        )
    negative = [i for i, d in enumerate(degrees) if d < 0]
    if len(negative) < 2:
        raise HypothesisError(
            "too-few-negatives",
            f"the closed formula needs at least two negative components, "
            f"got {len(negative)}",
        )
    arcs = cyclic_arcs(m, negative)
    for arc in arcs:
        if not any(degrees[i] > 0 for i in arc):
            raise HypothesisError(
                "arc-without-positive",
                f"components {arc} form an arc of C \\ C_- without a "
                "positive-degree member",
            )
    gamma = len(arcs)
    return sum(d for d in degrees if d > 0) - gamma


# -- the oracle ------------------------------------------------------------

def _default_placements(m):
    """Node i sits at (1:0) on component i and at (0:1) on component i+1."""
    return [((1, 0), (0, 1)) for _ in range(m)]


def _evaluate_section_row(l, point):
    """Row of the evaluation functional at (alpha:beta) on H^0(P^1, O(l)).

    Basis: u^l, u^(l-1) v, ..., v^l.
    """
    alpha, beta = point
    return [Fraction(alpha) ** (l - j) * Fraction(beta) ** j for j in range(l + 1)]


def _kernel_dim(degrees, gluing, placements):
    """Exact dim ker(rho) for given degrees, gluings and node placements.

    rho sends (s_1..s_m) to the m-tuple of mismatches
    s_i(P_i on C_i) - g_i * s_{i+1}(P_i on C_{i+1}); the scalar g_i weights
    the side of node i belonging to component i+1.
    """
    m = len(degrees)
    offsets = []
    total = 0
    for l in degrees:
        offsets.append(total)
        total += max(0, l + 1)
    rows = []
    for i in range(m):
        nxt = (i + 1) % m
        row = [Fraction(0)] * total
        out_point, in_point = placements[i]
        if degrees[i] >= 0:
            ev = _evaluate_section_row(degrees[i], out_point)
            for j, v in enumerate(ev):
                row[offsets[i] + j] += v
        if degrees[nxt] >= 0:
            ev = _evaluate_section_row(degrees[nxt], in_point)
            for j, v in enumerate(ev):
                row[offsets[nxt] + j] -= gluing[i] * v
        rows.append(row)
    return total - linalg.rank(rows)


def _draw_gluing(rng, m):
    out = []
    for _ in range(m):
        num = rng.randint(1, 10**6)
        den = rng.randint(1, 10**6)
        out.append(Fraction(num, den))
    return tuple(out)


def h0_oracle(bundle: CycleLineBundle, seed: int | None = None, *, draws: int = 3,
              _placements=None) -> int:
    """Brute-force h^0 via exact kernel computation.

    With explicit ``bundle.gluing`` the computation is done once.  Otherwise
    ``draws`` independent gluings come from a seeded generator and the
    minimum (= generic) value is returned; disagreement between draws is
    surfaced as a warning since under the formula's hypotheses it must not
    happen.

    The two node preimages on each component sit at (1:0) and (0:1); any
    other placement gives the same dimension (Moebius invariance), which the
    test-suite exercises through the private ``_placements`` hook.
    """
    degrees = bundle.degrees
    m = len(degrees)
    placements = _placements if _placements is not None else _default_placements(m)
    if bundle.gluing is not None:
        return _kernel_dim(degrees, bundle.gluing, placements)
    rng = random.Random(DEFAULT_ORACLE_SEED if seed is None else seed)
    dims = [_kernel_dim(degrees, _draw_gluing(rng, m), placements)
            for _ in range(draws)]
    if len(set(dims)) > 1:
        warnings.warn(
            f"h0_oracle draws disagree for degrees {degrees}: {dims}; "
            "returning the generic minimum",
            stacklevel=2,
        )
    return min(dims)
