"""Barrier construction for three-dimensional multi-pursuer reach-avoid games."""
from .coalition import (BAND, EVADER_WIN, ON_BARRIER, PURSUER_WIN, BarrierModel, CoalitionSet,
                        GameConfig, Verdict, active_pursuers, active_triples, build_model,
                        classify_initial_state, multi_barrier)
from .configio import load_config, parse_config
from .estimators import BarrierClassifier, CanonicalFrameTransformer, EscapeMarginOracle
from .evasion import MarginReport, escape_margin, escape_margin_supremum
from .exceptions import *  # noqa: F401,F403
from .geometry import TargetPlaneSpec, canonical_frame, from_canonical, to_canonical
from .mesh import BarrierMesh, export_mesh
from .pair import classify_pair, equal_time_point, pair_barrier, pair_pursuer_region_contains
from .pieces import ArcPiece, CapPiece, EmptyPiece, PointPiece
from .simulator import SimState, run_straight_line_escape, step, validate_verdict
from .sweep import sweep
from .triple import (classify_triple, equidistant_point, single_barrier,
                     triple_barrier_collinear, triple_barrier_noncollinear,
                     triple_pursuer_region_contains)

__version__ = "0.1.0"
