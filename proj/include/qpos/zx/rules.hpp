#pragma once

#include <optional>
#include <vector>

#include "qpos/zx/diagram.hpp"

namespace qpos::zx {

// Rewrite rules. Each checks its precondition and returns false (leaving
// the diagram untouched) when it does not apply. All rules preserve the
// diagram tensor exactly, including the bookkeeping scalar.

// Merge two same-color spiders joined by a plain edge; phases add, leftover
// parallel edges and self-loops are normalized.
bool rule_fuse(ZxDiagram& diagram, VertexId u, VertexId v);

// Delete a phase-0 arity-2 spider, joining its neighbors; Hadamard parity
// of the two edges is preserved.
bool rule_identity_remove(ZxDiagram& diagram, VertexId v);

// Toggle spider color and the Hadamard parity of every incident edge.
bool rule_color_change(ZxDiagram& diagram, VertexId v);

// Local complementation at an interior +-pi/2 spider in graph-like
// surroundings: complement the neighborhood, subtract the phase from each
// neighbor, delete the spider.
bool rule_local_complement(ZxDiagram& diagram, VertexId v);

// Pivot along a Hadamard edge between two interior Pauli spiders:
// complement between the three neighborhood regions, push phases, delete
// both spiders.
bool rule_pivot(ZxDiagram& diagram, VertexId u, VertexId v);

// Pivot variant for an edge between an interior Pauli spider u and an
// interior non-Pauli spider w (degree >= 2): w's phase is first unfused
// onto a fresh phase gadget (axis + leaf), then the plain pivot fires.
bool rule_pivot_gadget(ZxDiagram& diagram, VertexId u, VertexId w);

// Fuses two phase gadgets with identical support: the leaf phases add,
// one axis/leaf pair disappears.
bool rule_gadget_fuse(ZxDiagram& diagram, VertexId axis1, VertexId axis2);

// Gadget recognition helper: a phase-0 interior spider whose neighborhood
// contains exactly one degree-1 spider (the phase leaf).
struct GadgetShape {
    VertexId axis;
    VertexId leaf;
    std::vector<VertexId> support;  // ascending
};
std::optional<GadgetShape> match_gadget(const ZxDiagram& diagram, VertexId axis);

}  // namespace qpos::zx
