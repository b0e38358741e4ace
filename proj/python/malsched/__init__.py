"""Exact event-driven simulation of phase-structured malleable job sets.

The compiled core exchanges canonical JSON strings; this package accepts and
returns plain dicts instead, and every exact quantity stays a rational string
such as ``"17/4"`` (use :func:`fraction` to lift one into
:class:`fractions.Fraction`).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Tuple, Union

from . import _malsched as _core
from ._malsched import seq_multiplier

__all__ = [
    "adaptive_run",
    "alpha_for",
    "chain_check",
    "collapse_sets_to_jobs",
    "example_instance",
    "fraction",
    "frontload",
    "makespan_lower_bound",
    "metrics",
    "par_first",
    "par_first_setaware",
    "permuted_instance",
    "proof_bound_check",
    "random_mixed_instance",
    "random_parseq_star_instance",
    "ratio_report",
    "reduce_to_parseq",
    "seq_multiplier",
    "serial_reference",
    "setflowtime_lower_bound",
    "simulate",
    "substitute",
    "validate_instance",
]

Document = Union[str, Dict[str, Any]]


def fraction(text: str) -> Fraction:
    """Parse an exact rational string like ``"17/4"`` into a Fraction."""
    return Fraction(text)


def _text(document: Document) -> str:
    return document if isinstance(document, str) else json.dumps(document)


def validate_instance(instance: Document) -> None:
    """Raise ValueError if the instance is structurally invalid."""
    _core.validate_instance(_text(instance))


def simulate(instance: Document, scheduler: str = "equi", speed: str = "1") -> dict:
    """Run ``equi``, ``equi-equi`` or ``equi-serial`` and return the trace."""
    return json.loads(_core.simulate(_text(instance), scheduler, str(speed)))


def metrics(trace: Document) -> dict:
    """Recompute flowtime/makespan/setflowtime for a trace."""
    return json.loads(_core.metrics(_text(trace)))


def example_instance(ell: int) -> dict:
    """Layered lower-bound instance with ``ell**ell`` jobs in one set."""
    return json.loads(_core.example_instance(ell))


def adaptive_run(scheduler: str, ell: int, speed: int = 1) -> Tuple[dict, dict]:
    """Adversary run against a named policy: ``(instance, trace)``."""
    inst, trace = _core.adaptive_run(scheduler, ell, speed)
    return json.loads(inst), json.loads(trace)


def permuted_instance(ell: int, seed: int = 0) -> dict:
    """Seeded shuffle of ``ell**ell`` scaled copies of the layered instance."""
    return json.loads(_core.permuted_instance(ell, seed))


def reduce_to_parseq(
    instance: Document, trace_a: Document, trace_o: Document
) -> Tuple[dict, dict]:
    """Rewrite every job into par/seq phases: ``(reduced, report)``."""
    reduced, report = _core.reduce_to_parseq(
        _text(instance), _text(trace_a), _text(trace_o)
    )
    return json.loads(reduced), json.loads(report)


def frontload(instance: Document) -> dict:
    """Merge each par/seq job into one par phase then one seq phase."""
    return json.loads(_core.frontload(_text(instance)))


def collapse_sets_to_jobs(instance: Document, trace: Document, alpha: str) -> dict:
    """Collapse each set of an equi-equi trace into a single job."""
    return json.loads(_core.collapse_sets_to_jobs(_text(instance), _text(trace), alpha))


def substitute(old_instance: Document, trace: Document, new_instance: Document) -> dict:
    """Replay recorded allocations against structurally substituted jobs."""
    return json.loads(
        _core.substitute(_text(old_instance), _text(trace), _text(new_instance))
    )


def par_first(instance: Document, speed: str = "1") -> dict:
    """Clairvoyant par-first reference trace for a par/seq instance."""
    return json.loads(_core.par_first(_text(instance), str(speed)))


def par_first_setaware(instance: Document, speed: str = "1") -> dict:
    """Set-aware clairvoyant reference trace (ascending set par order)."""
    return json.loads(_core.par_first_setaware(_text(instance), str(speed)))


def serial_reference(instance: Document, speed: str = "1") -> dict:
    """Clairvoyant serial reference trace for arbitrary speed-up shapes."""
    return json.loads(_core.serial_reference(_text(instance), str(speed)))


def makespan_lower_bound(instance: Document) -> str:
    """Exact clairvoyant makespan lower bound (rational string)."""
    return _core.makespan_lower_bound(_text(instance))


def setflowtime_lower_bound(instance: Document) -> str:
    """Exact clairvoyant set-flowtime lower bound (rational string)."""
    return _core.setflowtime_lower_bound(_text(instance))


def ratio_report(
    instance: Document,
    scheduler: str = "equi",
    objective: str = "makespan",
    speed: str = "1",
) -> dict:
    """Bracket the competitive ratio of a scheduler on an instance."""
    return json.loads(
        _core.ratio_report(_text(instance), scheduler, objective, str(speed))
    )


def chain_check(instance: Document, alpha: str = "1/2") -> dict:
    """Evaluate the four-link flowtime comparison chain."""
    return json.loads(_core.chain_check(_text(instance), alpha))


def proof_bound_check(instance: Document, trace: Document, alpha: str) -> dict:
    """Split an equi trace into majority-seq/majority-par time and check bounds."""
    return json.loads(_core.proof_bound_check(_text(instance), _text(trace), alpha))


def alpha_for(n: int) -> str:
    """Rational alpha in (0, 1) tuned to ``n`` jobs (rational string)."""
    return _core.alpha_for(n)


def random_mixed_instance(seed: int) -> dict:
    """Seeded instance mixing seq, par and piecewise-linear phases."""
    return json.loads(_core.random_mixed_instance(seed))


def random_parseq_star_instance(
    seed: int, max_sets: int = 3, max_jobs: int = 4, max_phases: int = 4
) -> dict:
    """Seeded single-processor par/seq instance."""
    return json.loads(
        _core.random_parseq_star_instance(seed, max_sets, max_jobs, max_phases)
    )
