"""Reversible CCS with keys and replication: proved transitions, causality,
diamonds and causal equivalence of traces."""

from .causality import (
    causes_in_trace,
    coinitial_concurrent,
    concurrent_in_trace,
    depends,
    project,
)
from .diamonds import close_square, commute_forward, commute_sideways
from .equivalence import (
    canonical_form,
    causally_equivalent,
    check_causal_consistency,
    parabolic_normal_form,
)
from .labels import Label, collapse, label_action, label_key, parse_label
from .lts import (
    BACKWARD,
    FORWARD,
    Trace,
    Transition,
    backward_steps,
    focus,
    forward_steps,
    origin,
    reverse,
)
from .syntax import (
    is_standard,
    keys,
    mark_all,
    parse,
    pretty,
    remove_key_pair,
    remove_keyed,
    unmark_all,
)

__all__ = [
    "BACKWARD",
    "FORWARD",
    "Label",
    "Trace",
    "Transition",
    "backward_steps",
    "canonical_form",
    "causally_equivalent",
    "causes_in_trace",
    "check_causal_consistency",
    "close_square",
    "coinitial_concurrent",
    "collapse",
    "commute_forward",
    "commute_sideways",
    "concurrent_in_trace",
    "depends",
    "focus",
    "forward_steps",
    "is_standard",
    "keys",
    "label_action",
    "label_key",
    "mark_all",
    "origin",
    "parabolic_normal_form",
    "parse",
    "parse_label",
    "pretty",
    "project",
    "remove_key_pair",
    "remove_keyed",
    "reverse",
    "unmark_all",
]
