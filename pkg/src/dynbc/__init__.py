"""Fully-dynamic approximation of betweenness centrality on undirected graphs."""

from .bcsampler import BCParams, BCState, SampledPath, compute_sample_count, init_bc, sample_path, scores, update_bc
from .dynsssp import SSSPState, UpdateReport, init_sssp, predecessors, update_sssp, update_unweighted, update_weighted, vd_estimate
from .errors import ConsistencyError, DomainError, DynBCError, ParseError
from .graph import (DynamicGraph, EdgeEvent, UpdateBatch, apply_batch, connected_components, load_edge_list,
                    normalize_batch)
from .oracle import brandes, exact_vd, static_rk
from .vdtracker import VDTracker, init_tracker, update_tracker

__version__ = "0.1.0"
