#pragma once

namespace knotsurf::convention {

// Octahedron equator vertex sitting in each quadrant (N, E, S, W), per
// crossing sign. Pinned by the triangulation audits (orientability, cusp
// links, edge-class closure) on the calibration fixtures.
inline int quad_neg[4] = {4, 3, 2, 1};
inline int quad_pos[4] = {4, 1, 2, 3};

// Over-strand diagonal: true = the NW-SE diagonal carries the over strand.
inline bool over_nwse_neg = true;
inline bool over_nwse_pos = false;

// Wrap placement: true = the top wrap glues the top walls of the two
// under-strand doors (and the bottom wrap the bottom walls of the over
// doors); false = the transposed configuration.
inline bool wrap_top_at_under_neg = true;
inline bool wrap_top_at_under_pos = true;

// Correspondence swaps: exchange the two non-apex corners of the target
// wall in the respective gluing family.
inline bool wrap_top_swap = false;
inline bool wrap_bot_swap = false;
inline bool merge_swap_gap = false;   // within-region door pairs
inline bool merge_swap_arc = false;   // vertex-disk arcs

}  // namespace knotsurf::convention
