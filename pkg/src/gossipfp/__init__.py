"""Deterministic traitor tracing with Gossip codes built from t-designs."""

from .designs import (FANO, Design, cyclic_design, inversive_plane, lambda_bar_s, lambda_s,
                      load_design, projective_plane, save_design, steiner_triple, verify_design)
from .errors import GossipError
from .gossip import (GossipCode, code_params, embed_sts, from_design, from_matrix, full_gossip,
                     is_embedded, load_code, save_code, square_gossip)
from .tracing import (ERASURE, Kind, Strategy, brute_force_trace, make_pirate_word,
                      trace_nonzero, trace_only_erasures, undetectable_count)

__all__ = [
    "Design", "FANO", "projective_plane", "steiner_triple", "inversive_plane", "cyclic_design",
    "verify_design", "lambda_s", "lambda_bar_s", "load_design", "save_design",
    "GossipCode", "from_design", "from_matrix", "full_gossip", "square_gossip", "code_params",
    "embed_sts", "is_embedded", "load_code", "save_code",
    "ERASURE", "Kind", "Strategy", "make_pirate_word", "trace_nonzero", "trace_only_erasures",
    "brute_force_trace", "undetectable_count", "GossipError",
]
