"""Kernel backend selection.

The compiled Cython kernel (``_native``) is used when it is importable; the
pure-Python twin is the fallback.  Setting ``MATCHBOUND_PURE=1`` forces the
pure backend (used by the benchmark and the test matrix).
"""

import os

from . import pure

if os.environ.get("MATCHBOUND_PURE"):
    _backend = pure
else:
    try:
        from . import _native as _backend
    except ImportError:
        _backend = pure

BACKEND = _backend.NAME

METHOD_CLIP = pure.METHOD_CLIP
METHOD_SCAN = pure.METHOD_SCAN

orientation_sign = _backend.orientation_sign
segments_properly_cross = _backend.segments_properly_cross
edge_is_compatible = _backend.edge_is_compatible
first_edge_above = _backend.first_edge_above
first_edge_below = _backend.first_edge_below
visible_from_edge = _backend.visible_from_edge
rank_of_point = _backend.rank_of_point
all_ranks = _backend.all_ranks
insertion_vectors = _backend.insertion_vectors
