"""Backend selection for the hot graph kernels.

Imports the compiled extension when available, otherwise falls back to the
pure-Python implementation.  Set ``EXMATCH_FORCE_PURE=1`` to force the
fallback (used by the differential tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("EXMATCH_FORCE_PURE"):
    from exmatch import _purecore as _impl
else:
    try:
        from exmatch import _fastcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from exmatch import _purecore as _impl

BACKEND = _impl.BACKEND
accept_orders = _impl.accept_orders
canon_search = _impl.canon_search
count_matchings = _impl.count_matchings
deletion_one_extendable = _impl.deletion_one_extendable
rule2_scan = _impl.rule2_scan
max_fill_cover = _impl.max_fill_cover
conflict_matrix = _impl.conflict_matrix
pair_orbit_reps = _impl.pair_orbit_reps
ear_walk = _impl.ear_walk
extendable_rows = _impl.extendable_rows
one_extendable = _impl.one_extendable
component_masks = _impl.component_masks
odd_component_count = _impl.odd_component_count
is_connected = _impl.is_connected
