"""Error taxonomy.

Two families matter to callers (and to the CLI's exit codes):

* malformed input — bad schedules, bad references, bad documents.  These are
  ``ScheduleError`` (a ``ValueError``).
* mathematically meaningful rejections — the configuration violates a
  constraint that actual twistor spaces obey, or a formula's hypotheses fail.
  These are ``RealizabilityError`` / ``HypothesisError`` / the nef branch's
  ``TorsionRequiredError``, and each carries a short machine ``tag`` plus a
  readable message.
"""


class TwistorError(Exception):
    """Base class for everything raised deliberately by this package."""


class ScheduleError(TwistorError, ValueError):
    """Malformed schedule, document, or reference (CLI exit code 1)."""


class DegreeError(TwistorError, ValueError):
    """A cohomology class of the wrong degree (or mismatched n) was supplied."""


class RealizabilityError(TwistorError):
    """The combinatorial configuration cannot come from a twistor space.

    ``tag`` is a stable machine-readable slug; known values:
    ``real-fibre-location``, ``point-off-anticanonical-cycle``,
    ``degree-below-minus-2``, ``negative-pattern``, ``pair-not-disjoint``,
    ``case-c-structure``.
    """

    def __init__(self, tag, message):
        super().__init__(message)
        self.tag = tag


class HypothesisError(TwistorError):
    """Hypotheses of the cycle section-count formula fail.

    ``tag`` is one of ``too-few-components`` (m < 3), ``too-few-negatives``
    (|I-| < 2), ``arc-without-positive``.
    """

    def __init__(self, tag, message):
        super().__init__(message)
        self.tag = tag


class TorsionRequiredError(TwistorError):
    """The nef branch needs torsion data that the input did not provide."""

    tag = "torsion-required"
