#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qpos/zx/diagram.hpp"

namespace qpos::zx {

struct RewriteStep {
    std::string rule;             // fuse | identity | color | lcomp | pivot
    std::vector<VertexId> ids;    // matched vertex ids
    std::size_t vertices_before = 0;
    std::size_t vertices_after = 0;
    std::size_t edges_before = 0;
    std::size_t edges_after = 0;
};

// Replaying the steps (after the same initial normalization) from the
// initial diagram reproduces the final diagram exactly.
struct RewriteTrace {
    std::vector<RewriteStep> steps;
};

struct SimplifyResult {
    ZxDiagram diagram;
    RewriteTrace trace;
};

// Same-color parallel-edge and self-loop cleanup over every spider pair.
// Idempotent; both full_simplify and replay start with it.
void global_normalize(ZxDiagram& diagram);

// Color-changes every X spider and fuses across plain spider-spider edges
// until the diagram is graph-like.
SimplifyResult to_graph_like(ZxDiagram diagram);

// Graph-like conversion followed by fuse / identity / local-complement /
// pivot applied to a fixpoint, lowest vertex id first. The step cap guards
// against a runaway strategy (each rule strictly shrinks the diagram, so it
// should never trigger).
SimplifyResult full_simplify(ZxDiagram diagram, std::size_t max_steps = 0);

ZxDiagram replay_trace(ZxDiagram initial, const RewriteTrace& trace);

}  // namespace qpos::zx
