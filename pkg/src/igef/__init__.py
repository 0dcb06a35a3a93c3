"""Timing-driven adder synthesis with earliest-first carry scheduling (GEF and IGEF)."""

from .model import DelayProfile, Netlist, ScheduleTrace, Term, TermKind, TimingReport, replay_trace, validate_profile
from .netlist import Exhaustive, Random, build_netlist, evaluate, timing_analyze, verify
from .schedulers import SchedulerConfig, gef_schedule, igef_schedule

__all__ = [
    "DelayProfile", "Netlist", "ScheduleTrace", "Term", "TermKind", "TimingReport",
    "replay_trace", "validate_profile",
    "Exhaustive", "Random", "build_netlist", "evaluate", "timing_analyze", "verify",
    "SchedulerConfig", "gef_schedule", "igef_schedule",
]
