"""Intersection theory on real blow-ups of P^1 x P^1 and anticanonical cycles.

The surface S is P^1 x P^1 blown up in n conjugate pairs of (possibly
infinitely near) points.  Pic(S) gets the total-transform basis

    l  = class of O(1,0) ("lines")
    f  = class of O(0,1) ("fibres")
    E_1, ..., E_2n  = exceptional classes,  E_i^2 = -1, mutually orthogonal

so the Gram matrix is constant (unimodular, determinant -1) and all
infinitely-near structure lives in the blow-up schedule, not in the form.
The anti-holomorphic involution fixes l and f and swaps E_{2k-1} <-> E_{2k}
(the pair blown up at step k).

A ``BlowupSchedule`` records, per step, where ONE point of the conjugate
pair sits (the other location is implied by equivariance):

  * ``smooth``  — a smooth point of a named cycle component;
  * ``node``    — a node of the cycle, named by its two components (for a
    two-component cycle this blows both of the conjugate nodes at once);
  * ``infinitely_near`` — a point on the exceptional curve of an earlier
    step; ``on_strict_transform`` names the component whose strict transform
    passes through it (a tangency direction), or is None for a generic
    point of the exceptional curve.

``realize_cycle`` turns a schedule into the anticanonical cycle it produces,
maintaining component classes, cyclic order and the conjugation, and
checking the cycle axioms at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .cycles import TorsionSpec
from .errors import RealizabilityError, ScheduleError

__all__ = [
    "SurfaceLattice",
    "DivisorClass",
    "intersect",
    "anticanonical_class",
    "adjunction_genus",
    "strict_transform",
    "real_involution",
    "BlowupStep",
    "BlowupSchedule",
    "AnticanonicalCycle",
    "smooth_anticanonical_cycle",
    "realize_cycle",
    "elementary_transform",
]


@dataclass(frozen=True)
class SurfaceLattice:
    """Pic of a blow-up of P^1 x P^1 at ``pairs`` conjugate point pairs.

    ``pairs`` = 0 is the un-blown ruled surface itself (rank 2); the n = 4
    requirement belongs to the classifier, not to the lattice.
    """

    pairs: int

    def __post_init__(self):
        if self.pairs < 0:
            raise ValueError("pairs must be non-negative")

    @property
    def rank(self):
        return 2 * self.pairs + 2

    def divisor(self, a, b, multiplicities=()):
        """The class a*l + b*f + sum(m_i E_i); multiplicities as stored."""
        ms = tuple(int(m) for m in multiplicities)
        if len(ms) > 2 * self.pairs:
            raise ValueError("more multiplicities than exceptional classes")
        ms = ms + (0,) * (2 * self.pairs - len(ms))
        return DivisorClass(self, (int(a), int(b)) + ms)

    def zero(self):
        return self.divisor(0, 0)

    def line(self):
        return self.divisor(1, 0)

    def fibre(self):
        return self.divisor(0, 1)

    def exceptional(self, i):
        """E_i, 1-based, i in 1..2*pairs."""
        if not 1 <= i <= 2 * self.pairs:
            raise ValueError(f"E{i} does not exist (pairs={self.pairs})")
        coeffs = [0] * self.rank
        coeffs[1 + i] = 1
        return DivisorClass(self, tuple(coeffs))

    def anticanonical(self):
        return self.divisor(2, 2, (-1,) * (2 * self.pairs))

    def conjugate_index(self, i):
        """The exceptional index paired with i under the real involution."""
        return i + 1 if i % 2 == 1 else i - 1

    def gram_matrix(self):
        rows = []
        for i in range(self.rank):
            row = [0] * self.rank
            if i == 0:
                row[1] = 1
            elif i == 1:
                row[0] = 1
            else:
                row[i] = -1
            rows.append(tuple(row))
        return tuple(rows)


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector (a, b, m_1..m_2n) = a*l + b*f + sum(m_i E_i)."""

    lattice: SurfaceLattice
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.lattice.rank:
            raise ValueError(
                f"class needs {self.lattice.rank} coefficients, "
                f"got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def a(self):
        return self.coeffs[0]

    @property
    def b(self):
        return self.coeffs[1]

    @property
    def multiplicities(self):
        return self.coeffs[2:]

    def dot(self, other: "DivisorClass") -> int:
        if self.lattice != other.lattice:
            raise ValueError("classes live in different lattices")
        s, o = self.coeffs, other.coeffs
        return s[0] * o[1] + s[1] * o[0] - sum(x * y for x, y in zip(s[2:], o[2:]))

    @property
    def self_intersection(self):
        return self.dot(self)

    def __add__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if self.lattice != other.lattice:
            raise ValueError("classes live in different lattices")
        return DivisorClass(
            self.lattice, tuple(x + y for x, y in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.lattice, tuple(k * c for c in self.coeffs))

    def __mul__(self, k):
        return self.__rmul__(k)

    def conjugate(self):
        return real_involution(self)

    def __str__(self):
        parts = []
        for c, name in zip(self.coeffs, self._names()):
            if c == 0:
                continue
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def _names(self):
        return ("l", "f") + tuple(f"E{i}" for i in range(1, 2 * self.lattice.pairs + 1))


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    """The intersection pairing (bilinear, from the fixed Gram data)."""
    return d1.dot(d2)


def anticanonical_class(lattice: SurfaceLattice) -> DivisorClass:
    """-K = 2l + 2f - sum(E_i); self-intersection 8 - 2n."""
    k = lattice.anticanonical()
    assert k.self_intersection == 8 - 2 * lattice.pairs
    return k


def adjunction_genus(d: DivisorClass) -> int:
    """Arithmetic genus (d^2 - d.(-K))/2 + 1 of a curve of class d."""
    minus_k = d.lattice.anticanonical()
    num = d.self_intersection - d.dot(minus_k)
    if num % 2 != 0:
        # cannot happen on this even-pairing lattice; kept as a tripwire
        raise ValueError(f"adjunction is not integral for {d}")
    return num // 2 + 1


def real_involution(d: DivisorClass, lattice: SurfaceLattice | None = None) -> DivisorClass:
    """Swap each E_{2k-1} with E_{2k}; fixes l and f.  An isometry."""
    if lattice is not None and lattice != d.lattice:
        raise ValueError("class does not belong to that lattice")
    coeffs = list(d.coeffs)
    for k in range(d.lattice.pairs):
        i, j = 2 + 2 * k, 3 + 2 * k
        coeffs[i], coeffs[j] = coeffs[j], coeffs[i]
    return DivisorClass(d.lattice, tuple(coeffs))


def strict_transform(lattice, a, b, multiplicities, infinitely_near=()):
    """Strict transform of an O(a,b)-curve through the blown-up points.

    ``multiplicities`` (length 2n, non-negative) are the multiplicities of
    the curve at the points; ``infinitely_near`` is a set of 1-based pairs
    (point, over) meaning that point lies on the exceptional curve of
    ``over``.  A curve through an infinitely near point necessarily passes
    through every point below it in the chain, so multiplicities are closed
    upward: eff(j) = max(given j, sum of eff over the points directly over
    j).  The class returned is a*l + b*f - sum(eff_i E_i) in the
    total-transform basis.
    """
    ms = [int(m) for m in multiplicities]
    if len(ms) != 2 * lattice.pairs:
        raise ScheduleError(
            f"need {2 * lattice.pairs} multiplicities, got {len(ms)}"
        )
    if any(m < 0 for m in ms):
        raise ScheduleError("multiplicities are non-negative")
    over_of = {}
    for entry in infinitely_near:
        try:
            point, over = entry
        except (TypeError, ValueError):
            raise ScheduleError(
                "infinitely_near entries are (point, over) index pairs"
            ) from None
        point, over = int(point), int(over)
        if not (1 <= over < point <= 2 * lattice.pairs):
            raise ScheduleError(
                f"inconsistent infinitely-near reference ({point} over {over})"
            )
        if point in over_of:
            raise ScheduleError(
                f"point {point} is infinitely near over two points"
            )
        over_of[point] = over
    eff = list(ms)
    for point in sorted(over_of, reverse=True):
        over = over_of[point]
        eff[over - 1] = max(eff[over - 1], eff[point - 1])
    # a chain contributes its full stack: close upward by direct sums
    direct = {}
    for point, over in over_of.items():
        direct.setdefault(over, []).append(point)
    for j in sorted(direct, reverse=True):
        total = sum(eff[p - 1] for p in direct[j])
        eff[j - 1] = max(eff[j - 1], total)
    return lattice.divisor(a, b, tuple(-m for m in eff))


# -- blow-up schedules ------------------------------------------------------

_INITIAL_TYPES = ("I", "II", "III")


@dataclass(frozen=True)
class BlowupStep:
    """Location of one point of a conjugate pair (the other is implied)."""

    kind: str
    component: str | None = None
    components: tuple[str, str] | None = None
    over_pair: int | None = None
    on_strict_transform: str | None = None

    def __post_init__(self):
        if self.kind == "smooth":
            if not isinstance(self.component, str):
                raise ScheduleError("smooth step needs a component id")
            if (self.components, self.over_pair, self.on_strict_transform) != (
                None, None, None,
            ):
                raise ScheduleError("smooth step carries only a component id")
        elif self.kind == "node":
            comps = self.components
            if (
                comps is None
                or len(comps) != 2
                or not all(isinstance(c, str) for c in comps)
                or comps[0] == comps[1]
            ):
                raise ScheduleError("node step needs two distinct component ids")
            object.__setattr__(self, "components", (comps[0], comps[1]))
            if (self.component, self.over_pair, self.on_strict_transform) != (
                None, None, None,
            ):
                raise ScheduleError("node step carries only its two component ids")
        elif self.kind == "infinitely_near":
            if (
                not isinstance(self.over_pair, int)
                or isinstance(self.over_pair, bool)
                or self.over_pair < 1
            ):
                raise ScheduleError(
                    "infinitely_near step needs a positive over_pair index"
                )
            if self.on_strict_transform is not None and not isinstance(
                self.on_strict_transform, str
            ):
                raise ScheduleError("on_strict_transform is a component id or None")
            if (self.component, self.components) != (None, None):
                raise ScheduleError(
                    "infinitely_near step carries over_pair and on_strict_transform"
                )
        else:
            raise ScheduleError(f"unknown step kind {self.kind!r}")

    @classmethod
    def smooth(cls, component):
        return cls("smooth", component=component)

    @classmethod
    def node(cls, components):
        return cls("node", components=tuple(components))

    @classmethod
    def infinitely_near(cls, over_pair, on_strict_transform=None):
        return cls(
            "infinitely_near",
            over_pair=over_pair,
            on_strict_transform=on_strict_transform,
        )


@dataclass(frozen=True)
class BlowupSchedule:
    """Initial cycle type plus one location per conjugate pair."""

    initial_type: str
    steps: tuple[BlowupStep, ...]

    def __post_init__(self):
        if self.initial_type not in _INITIAL_TYPES:
            raise ScheduleError(
                f"initial_type must be one of {_INITIAL_TYPES}, "
                f"got {self.initial_type!r}"
            )
        steps = tuple(self.steps)
        for idx, step in enumerate(steps, start=1):
            if not isinstance(step, BlowupStep):
                raise ScheduleError("steps must be BlowupStep values")
            if step.kind == "infinitely_near" and step.over_pair >= idx:
                raise ScheduleError(
                    f"step {idx} is infinitely near over pair {step.over_pair}, "
                    "which is not strictly earlier"
                )
        object.__setattr__(self, "steps", steps)

    @property
    def pairs(self):
        return len(self.steps)


def _initial_cycle(initial_type, lattice):
    l, f = lattice.line(), lattice.fibre()
    if initial_type == "I":
        order = ("F", "G", "Fbar", "Gbar")
        classes = {"F": f, "G": l, "Fbar": f, "Gbar": l}
        conj = {"F": "Fbar", "Fbar": "F", "G": "Gbar", "Gbar": "G"}
    elif initial_type == "II":
        order = ("F", "C0")
        classes = {"F": f, "C0": 2 * l + f}
        conj = {"F": "F", "C0": "C0"}
    else:  # III
        order = ("A", "Abar")
        classes = {"A": l + f, "Abar": l + f}
        conj = {"A": "Abar", "Abar": "A"}
    return list(order), dict(classes), dict(conj)


@dataclass
class AnticanonicalCycle:
    """The realized cycle C = sum C_i in |-K_S| (or its smooth variant).

    ``order`` is the cyclic component order; ``conjugate_names`` the real
    involution on component ids.  The constructor performs no validation so
    tests can build synthetic cycles; ``validate()`` is the invariant oracle
    that ``realize_cycle`` and the document builders always run.
    """

    lattice: SurfaceLattice
    order: tuple[str, ...]
    classes: dict[str, DivisorClass]
    conjugate_names: dict[str, str]
    torsion: TorsionSpec | None = None
    smooth_variant: bool = False

    @property
    def m(self):
        return len(self.order)

    def component_class(self, name):
        return self.classes[name]

    def is_real(self, name):
        return self.conjugate_names[name] == name

    def self_intersections(self):
        return tuple(self.classes[name].self_intersection for name in self.order)

    def degrees(self):
        minus_k = self.lattice.anticanonical()
        return tuple(self.classes[name].dot(minus_k) for name in self.order)

    def edges(self):
        """Cyclic adjacencies as ordered pairs; an m=2 cycle has two nodes."""
        m = self.m
        if m < 2:
            return ()
        return tuple(
            (self.order[i], self.order[(i + 1) % m]) for i in range(m)
        )

    def with_torsion(self, torsion):
        return replace(self, torsion=torsion)

    def validate(self):
        assert len(set(self.order)) == self.m, "component names must be unique"
        assert set(self.classes) == set(self.order), "classes must match order"
        minus_k = self.lattice.anticanonical()
        total = self.lattice.zero()
        for name in self.order:
            total = total + self.classes[name]
        assert total.coeffs == minus_k.coeffs, (
            f"cycle classes sum to {total}, expected {minus_k}"
        )
        conj = self.conjugate_names
        assert set(conj) == set(self.order), "conjugation must cover all components"
        for name, other in conj.items():
            assert conj[other] == name, "conjugation must be an involution"
            assert (
                real_involution(self.classes[name]).coeffs
                == self.classes[other].coeffs
            ), f"class of {other} must be the conjugate of {name}"
        if self.smooth_variant:
            assert self.m == 1, "smooth variant is a single component"
            assert self.classes[self.order[0]].coeffs == minus_k.coeffs
            assert adjunction_genus(self.classes[self.order[0]]) == 1
            return self
        assert self.m >= 2, "a cycle has at least two components"
        for name in self.order:
            c = self.classes[name]
            assert c.dot(minus_k) == c.self_intersection + 2, (
                f"component {name} must have arithmetic genus 0"
            )
        edge_set = {frozenset(e) for e in self.edges()}
        for i, ni in enumerate(self.order):
            for j in range(i + 1, self.m):
                nj = self.order[j]
                product = self.classes[ni].dot(self.classes[nj])
                if self.m == 2:
                    expected = 2
                else:
                    expected = 1 if frozenset((ni, nj)) in edge_set else 0
                assert product == expected, (
                    f"{ni}.{nj} = {product}, expected {expected}"
                )
        for c, d in self.edges():
            assert frozenset((conj[c], conj[d])) in edge_set, (
                "conjugation must preserve the cycle's adjacency"
            )
        return self


def smooth_anticanonical_cycle(pairs, torsion=None):
    """The smooth-elliptic anticanonical member (nef by construction)."""
    lattice = SurfaceLattice(pairs)
    cycle = AnticanonicalCycle(
        lattice=lattice,
        order=("C",),
        classes={"C": lattice.anticanonical()},
        conjugate_names={"C": "C"},
        torsion=torsion,
        smooth_variant=True,
    )
    return cycle.validate()


class _RealizeState:
    """Evolving cycle state while a schedule is applied step by step."""

    def __init__(self, schedule: BlowupSchedule):
        self.schedule = schedule
        self.lattice = SurfaceLattice(schedule.pairs)
        order, classes, conj = _initial_cycle(schedule.initial_type, self.lattice)
        self.order = order
        self.classes = classes
        self.conj = conj
        self.hosts: dict[int, str | None] = {}
        self.consumed: set[int] = set()
        self.node_steps: set[int] = set()

    # -- helpers ---------------------------------------------------------
    def _subtract(self, name, e_index):
        self.classes[name] = self.classes[name] - self.lattice.exceptional(e_index)

    def _require_component(self, name):
        if name not in self.classes:
            raise ScheduleError(
                f"component {name!r} does not exist; cycle is {tuple(self.order)}"
            )

    def _edge_index(self, c, d):
        m = len(self.order)
        for i in range(m):
            if {self.order[i], self.order[(i + 1) % m]} == {c, d}:
                return i
        return None

    # -- one step ---------------------------------------------------------
    def apply(self, pair_index, step: BlowupStep):
        k = pair_index
        e_primary, e_conj = 2 * k - 1, 2 * k
        if step.kind == "smooth":
            self._apply_smooth(k, step.component, e_primary, e_conj)
        elif step.kind == "node":
            self._apply_node(k, step.components, e_primary, e_conj)
        else:
            self._apply_infinitely_near(k, step, e_primary, e_conj)

    def _apply_smooth(self, k, name, e_primary, e_conj):
        self._require_component(name)
        if self.schedule.initial_type == "II" and name == "F":
            raise RealizabilityError(
                "real-fibre-location",
                "no blown-up point may lie on a smooth point of the real "
                "fibre F; only its nodes with C0 can be blown",
            )
        self._subtract(name, e_primary)
        self._subtract(self.conj[name], e_conj)
        self.hosts[k] = name

    def _apply_node(self, k, comps, e_primary, e_conj):
        c, d = comps
        self._require_component(c)
        self._require_component(d)
        primary_name, conj_name = f"E{e_primary}", f"E{e_conj}"
        if len(self.order) == 2:
            if {c, d} != set(self.order):
                raise ScheduleError(
                    f"node ({c},{d}) does not exist; cycle is {tuple(self.order)}"
                )
            # the two nodes are a conjugate pair: one step blows both
            for name in (c, d):
                self._subtract(name, e_primary)
                self._subtract(name, e_conj)
            first, second = self.order
            self.order = [first, primary_name, second, conj_name]
        else:
            i = self._edge_index(c, d)
            if i is None:
                raise ScheduleError(
                    f"components {c} and {d} are not adjacent; "
                    f"cycle is {tuple(self.order)}"
                )
            cc, cd = self.conj[c], self.conj[d]
            if {cc, cd} == {c, d}:
                raise ScheduleError(
                    f"node ({c},{d}) is its own conjugate and cannot host "
                    "a conjugate pair of points"
                )
            self._subtract(c, e_primary)
            self._subtract(d, e_primary)
            self.order.insert(i + 1, primary_name)
            j = self._edge_index(cc, cd)
            assert j is not None, "conjugate edge must exist in a valid cycle"
            self._subtract(cc, e_conj)
            self._subtract(cd, e_conj)
            self.order.insert(j + 1, conj_name)
        self.classes[primary_name] = self.lattice.exceptional(e_primary)
        self.classes[conj_name] = self.lattice.exceptional(e_conj)
        self.conj[primary_name] = conj_name
        self.conj[conj_name] = primary_name
        self.hosts[k] = None
        self.node_steps.add(k)

    def _apply_infinitely_near(self, k, step, e_primary, e_conj):
        j = step.over_pair
        target = step.on_strict_transform
        if j in self.node_steps:
            if target is not None:
                raise ScheduleError(
                    f"the exceptional curve of pair {j} is a cycle component "
                    f"and meets {target!r} in a node; encode that point as a "
                    "node location"
                )
            # generic point of the exceptional component
            name = f"E{2 * j - 1}"
            self._subtract(name, e_primary)
            self._subtract(self.conj[name], e_conj)
            self.hosts[k] = name
            return
        host = self.hosts[j]
        if target is None:
            raise RealizabilityError(
                "point-off-anticanonical-cycle",
                f"a generic point of the exceptional curve of pair {j} lies "
                "off the anticanonical cycle; blowing it up leaves no "
                "anticanonical cycle on the new surface",
            )
        if target not in (host, self.conj[host]):
            raise ScheduleError(
                f"the exceptional curve of pair {j} meets only "
                f"{host!r}/{self.conj[host]!r}, not {target!r}"
            )
        if j in self.consumed:
            raise ScheduleError(
                f"inconsistent infinitely-near references: the intersection "
                f"of pair {j}'s exceptional curve with {host!r} was already "
                "blown up"
            )
        self.consumed.add(j)
        self._subtract(target, e_primary)
        self._subtract(self.conj[target], e_conj)
        self.hosts[k] = target

    def cycle(self) -> AnticanonicalCycle:
        result = AnticanonicalCycle(
            lattice=self.lattice,
            order=tuple(self.order),
            classes=dict(self.classes),
            conjugate_names=dict(self.conj),
        )
        return result.validate()


def realize_cycle(schedule: BlowupSchedule) -> AnticanonicalCycle:
    """Apply every step of the schedule and return the validated cycle.

    The component count grows by 2 per node step; smooth and
    infinitely-near steps keep it fixed.
    """
    state = _RealizeState(schedule)
    for k, step in enumerate(schedule.steps, start=1):
        state.apply(k, step)
    return state.cycle()


def _realize_prefix(initial_type, steps: Iterable[BlowupStep]) -> _RealizeState:
    """State after a (possibly partial) schedule; used by the enumerator."""
    steps = tuple(steps)
    state = _RealizeState(BlowupSchedule(initial_type, steps))
    for k, step in enumerate(steps, start=1):
        state.apply(k, step)
    return state


_ELEMENTARY_MAP = {"A": "G", "Abar": "Gbar", "E1": "F", "E2": "Fbar"}


def elementary_transform(schedule: BlowupSchedule) -> BlowupSchedule:
    """Convert a nodes-blown-first cycle of two (1,1)-curves to the
    four-component form: blow up the conjugate node pair, contract the
    strict transforms of the fibres through it.

    On components this reads A -> G, Abar -> Gbar, and the two node
    exceptionals become the fibres F, Fbar; the new first step blows a
    smooth conjugate pair on F/Fbar (the images of the contracted fibres).
    Realizing input and output gives isomorphic weighted cycles.
    """
    if schedule.initial_type != "III":
        raise ScheduleError(
            "elementary transform applies to the two-conjugate-(1,1)-curves "
            "initial cycle only"
        )
    if not schedule.steps or schedule.steps[0].kind != "node":
        raise ScheduleError(
            "elementary transform needs the conjugate node pair blown first; "
            "schedules that never blow the nodes realize directly (and are "
            "nef when all points are smooth on the two components)"
        )
    first = schedule.steps[0]
    if set(first.components) != {"A", "Abar"}:
        raise ScheduleError(
            f"the first node step must blow the nodes A∩Abar, "
            f"got {first.components}"
        )
    mapped = [BlowupStep.smooth("F")]
    for step in schedule.steps[1:]:
        mapped.append(_map_step(step))
    return BlowupSchedule("I", tuple(mapped))


def _map_step(step: BlowupStep) -> BlowupStep:
    rename = _ELEMENTARY_MAP
    if step.kind == "smooth":
        return BlowupStep.smooth(rename.get(step.component, step.component))
    if step.kind == "node":
        c, d = step.components
        return BlowupStep.node((rename.get(c, c), rename.get(d, d)))
    if step.over_pair == 1:
        if step.on_strict_transform is not None:
            raise ScheduleError(
                "a point on the exceptional of the node pair that also lies "
                "on a strict transform is a node; encode it as a node location"
            )
        # generic point of the old node exceptional = smooth point of the
        # new fibre component
        return BlowupStep.smooth("F")
    target = step.on_strict_transform
    return BlowupStep.infinitely_near(
        step.over_pair, None if target is None else rename.get(target, target)
    )
