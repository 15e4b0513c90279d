#include "qpos/zx/simplify.hpp"

#include <stdexcept>

#include "qpos/zx/rules.hpp"

namespace qpos::zx {

namespace {

std::size_t edge_instance_count(const ZxDiagram& d) {
    std::size_t total = 0;
    for (const auto& [u, v, bundle] : d.edge_list()) total += bundle.total();
    return total;
}

class TraceRecorder {
  public:
    TraceRecorder(ZxDiagram& diagram, RewriteTrace& trace) : diagram_(diagram), trace_(trace) {}

    bool apply(const std::string& rule, std::vector<VertexId> ids) {
        RewriteStep step;
        step.rule = rule;
        step.ids = ids;
        step.vertices_before = diagram_.num_vertices();
        step.edges_before = edge_instance_count(diagram_);
        bool applied = false;
        if (rule == "fuse") applied = rule_fuse(diagram_, ids[0], ids[1]);
        else if (rule == "identity") applied = rule_identity_remove(diagram_, ids[0]);
        else if (rule == "color") applied = rule_color_change(diagram_, ids[0]);
        else if (rule == "lcomp") applied = rule_local_complement(diagram_, ids[0]);
        else if (rule == "pivot") applied = rule_pivot(diagram_, ids[0], ids[1]);
        else if (rule == "pivot_gadget") applied = rule_pivot_gadget(diagram_, ids[0], ids[1]);
        else if (rule == "gadget_fuse") applied = rule_gadget_fuse(diagram_, ids[0], ids[1]);
        else throw std::invalid_argument("unknown rewrite rule: " + rule);
        if (!applied) return false;
        step.vertices_after = diagram_.num_vertices();
        step.edges_after = edge_instance_count(diagram_);
        trace_.steps.push_back(std::move(step));
        return true;
    }

  private:
    ZxDiagram& diagram_;
    RewriteTrace& trace_;
};

// Lowest-id-first match scans. Each returns true after applying one rule.

bool fuse_once(const ZxDiagram& d, TraceRecorder& rec) {
    for (const auto& [u, v, bundle] : d.edge_list()) {
        if (bundle.plain == 0) continue;
        if (!d.is_spider(u) || !d.is_spider(v)) continue;
        if (d.vertex(u).kind != d.vertex(v).kind) continue;
        return rec.apply("fuse", {u, v});
    }
    return false;
}

bool identity_once(const ZxDiagram& d, TraceRecorder& rec) {
    for (const auto& [id, vert] : d.vertices()) {
        if (vert.kind == VertexKind::Boundary || !vert.phase.is_zero()) continue;
        if (d.degree(id) != 2) continue;
        if (rec.apply("identity", {id})) return true;
    }
    return false;
}

bool lcomp_once(const ZxDiagram& d, TraceRecorder& rec) {
    for (const auto& [id, vert] : d.vertices()) {
        if (vert.kind != VertexKind::ZSpider || !vert.phase.is_proper_clifford()) continue;
        if (!d.is_interior(id)) continue;
        if (rec.apply("lcomp", {id})) return true;
    }
    return false;
}

bool pivot_once(const ZxDiagram& d, TraceRecorder& rec) {
    for (const auto& [u, v, bundle] : d.edge_list()) {
        if (bundle.hadamard != 1 || bundle.plain != 0) continue;
        if (!d.is_spider(u) || !d.is_spider(v)) continue;
        if (!d.vertex(u).phase.is_pauli() || !d.vertex(v).phase.is_pauli()) continue;
        if (!d.is_interior(u) || !d.is_interior(v)) continue;
        if (rec.apply("pivot", {u, v})) return true;
    }
    return false;
}

bool pivot_gadget_once(const ZxDiagram& d, TraceRecorder& rec) {
    for (const auto& [u, v, bundle] : d.edge_list()) {
        if (bundle.hadamard != 1 || bundle.plain != 0) continue;
        if (!d.is_spider(u) || !d.is_spider(v)) continue;
        const bool u_pauli = d.vertex(u).phase.is_pauli();
        const bool v_pauli = d.vertex(v).phase.is_pauli();
        if (u_pauli == v_pauli) continue;  // plain pivot or no match
        const VertexId pauli = u_pauli ? u : v;
        const VertexId other = u_pauli ? v : u;
        if (rec.apply("pivot_gadget", {pauli, other})) return true;
    }
    return false;
}

bool gadget_fuse_once(const ZxDiagram& d, TraceRecorder& rec) {
    // index gadgets by support
    std::map<std::vector<VertexId>, VertexId> seen;
    for (const auto& [id, vert] : d.vertices()) {
        const auto gadget = match_gadget(d, id);
        if (!gadget) continue;
        const auto it = seen.find(gadget->support);
        if (it != seen.end()) {
            if (rec.apply("gadget_fuse", {it->second, id})) return true;
        } else {
            seen.emplace(gadget->support, id);
        }
    }
    return false;
}

void convert_to_graph_like(ZxDiagram& diagram, RewriteTrace& trace, std::size_t& steps,
                           std::size_t max_steps) {
    TraceRecorder rec(diagram, trace);
    // color-change every X spider, ascending
    std::vector<VertexId> xs;
    for (const auto& [id, vert] : diagram.vertices()) {
        if (vert.kind == VertexKind::XSpider) xs.push_back(id);
    }
    for (VertexId id : xs) {
        rec.apply("color", {id});
        if (++steps > max_steps) throw std::runtime_error("simplify: step cap exceeded");
    }
    while (fuse_once(diagram, rec)) {
        if (++steps > max_steps) throw std::runtime_error("simplify: step cap exceeded");
    }
}

}  // namespace

void global_normalize(ZxDiagram& diagram) {
    for (const auto& [u, v, bundle] : diagram.edge_list()) {
        diagram.normalize_parallel(u, v);
    }
}

SimplifyResult to_graph_like(ZxDiagram diagram) {
    SimplifyResult result{std::move(diagram), {}};
    global_normalize(result.diagram);
    std::size_t steps = 0;
    const std::size_t cap = 10 * result.diagram.num_vertices() + 1000;
    convert_to_graph_like(result.diagram, result.trace, steps, cap);
    return result;
}

SimplifyResult full_simplify(ZxDiagram diagram, std::size_t max_steps) {
    SimplifyResult result{std::move(diagram), {}};
    ZxDiagram& d = result.diagram;
    if (max_steps == 0) max_steps = 10 * d.num_vertices() + 1000;

    global_normalize(d);
    std::size_t steps = 0;
    convert_to_graph_like(d, result.trace, steps, max_steps);

    TraceRecorder rec(d, result.trace);
    bool progress = true;
    while (progress) {
        if (++steps > max_steps) throw std::runtime_error("simplify: step cap exceeded");
        progress = fuse_once(d, rec) || identity_once(d, rec) || lcomp_once(d, rec) ||
                   pivot_once(d, rec) || pivot_gadget_once(d, rec) ||
                   gadget_fuse_once(d, rec);
    }
    return result;
}

ZxDiagram replay_trace(ZxDiagram initial, const RewriteTrace& trace) {
    global_normalize(initial);
    RewriteTrace scratch;
    TraceRecorder replayer(initial, scratch);
    for (const auto& step : trace.steps) {
        if (!replayer.apply(step.rule, step.ids)) {
            throw std::runtime_error("trace replay: step no longer applies (" + step.rule + ")");
        }
    }
    return initial;
}

}  // namespace qpos::zx
