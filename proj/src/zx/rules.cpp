#include "qpos/zx/rules.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace qpos::zx {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// v's incident edges are all single Hadamard edges to Z spiders, and the
// mutual edges among its neighbors are Hadamard-only. The local slice of
// the graph-like requirement that local complementation and pivoting need.
bool neighborhood_graph_like(const ZxDiagram& d, VertexId v) {
    const auto nbrs = d.neighbors(v);
    for (VertexId n : nbrs) {
        const auto bundle = d.edges_between(v, n);
        if (bundle.plain != 0 || bundle.hadamard != 1) return false;
        if (d.vertex(n).kind != VertexKind::ZSpider) return false;
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            const auto bundle = d.edges_between(nbrs[i], nbrs[j]);
            if (bundle.plain != 0 || bundle.hadamard > 1) return false;
        }
    }
    return true;
}

// Complementation toggles by adding an H edge; an existing edge then forms
// a Hadamard pair that annihilates with the 1/2 scalar.
void toggle_hadamard_edge(ZxDiagram& d, VertexId a, VertexId b) {
    d.add_edge_smart(a, b, EdgeKind::Hadamard);
}

// A vertex touching a degree-1 spider anchors a phase gadget. Pivoting it
// would pull the phase leaf into the complemented regions and the gadget
// would churn forever; such vertices belong to gadget_fuse only.
bool anchors_gadget(const ZxDiagram& d, VertexId v) {
    for (VertexId n : d.neighbors(v)) {
        if (d.is_spider(n) && d.degree(n) == 1) return true;
    }
    return false;
}

}  // namespace

bool rule_fuse(ZxDiagram& diagram, VertexId u, VertexId v) {
    if (u == v || !diagram.has_vertex(u) || !diagram.has_vertex(v)) return false;
    if (!diagram.is_spider(u) || !diagram.is_spider(v)) return false;
    if (diagram.vertex(u).kind != diagram.vertex(v).kind) return false;
    if (diagram.edges_between(u, v).plain == 0) return false;

    diagram.remove_edge(u, v, EdgeKind::Plain);
    diagram.add_phase(u, diagram.vertex(v).phase);

    // Move v's remaining edges onto u. Edges back to u become self-loops,
    // which add_edge normalizes.
    std::vector<std::tuple<VertexId, std::size_t, std::size_t>> moved;
    for (VertexId n : diagram.neighbors(v)) {
        const auto bundle = diagram.edges_between(v, n);
        moved.emplace_back(n, bundle.plain, bundle.hadamard);
    }
    diagram.remove_vertex(v);
    for (const auto& [n, plain, hadamard] : moved) {
        diagram.add_edge(u, n, EdgeKind::Plain, plain);
        diagram.add_edge(u, n, EdgeKind::Hadamard, hadamard);
        if (n != u) diagram.normalize_parallel(u, n);
    }
    return true;
}

bool rule_identity_remove(ZxDiagram& diagram, VertexId v) {
    if (!diagram.has_vertex(v) || !diagram.is_spider(v)) return false;
    if (!diagram.vertex(v).phase.is_zero()) return false;
    if (diagram.degree(v) != 2) return false;

    std::vector<std::pair<VertexId, EdgeKind>> legs;
    for (VertexId n : diagram.neighbors(v)) {
        const auto bundle = diagram.edges_between(v, n);
        for (std::size_t i = 0; i < bundle.plain; ++i) legs.emplace_back(n, EdgeKind::Plain);
        for (std::size_t i = 0; i < bundle.hadamard; ++i) {
            legs.emplace_back(n, EdgeKind::Hadamard);
        }
    }
    const auto [n1, k1] = legs[0];
    const auto [n2, k2] = legs[1];
    const bool hadamard = (k1 == EdgeKind::Hadamard) != (k2 == EdgeKind::Hadamard);

    diagram.remove_vertex(v);
    diagram.add_edge_smart(n1, n2, hadamard ? EdgeKind::Hadamard : EdgeKind::Plain);
    return true;
}

bool rule_color_change(ZxDiagram& diagram, VertexId v) {
    if (!diagram.has_vertex(v) || !diagram.is_spider(v)) return false;

    const auto nbrs = diagram.neighbors(v);
    for (VertexId n : nbrs) {
        const auto bundle = diagram.edges_between(v, n);
        diagram.remove_edge(v, n, EdgeKind::Plain, bundle.plain);
        diagram.remove_edge(v, n, EdgeKind::Hadamard, bundle.hadamard);
        diagram.add_edge(v, n, EdgeKind::Plain, bundle.hadamard);
        diagram.add_edge(v, n, EdgeKind::Hadamard, bundle.plain);
    }
    diagram.set_kind(v, diagram.vertex(v).kind == VertexKind::ZSpider ? VertexKind::XSpider
                                                                      : VertexKind::ZSpider);
    for (VertexId n : nbrs) diagram.normalize_parallel(v, n);
    return true;
}

bool rule_local_complement(ZxDiagram& diagram, VertexId v) {
    if (!diagram.has_vertex(v) || !diagram.is_spider(v)) return false;
    const Vertex& vert = diagram.vertex(v);
    if (vert.kind != VertexKind::ZSpider || !vert.phase.is_proper_clifford()) return false;
    if (!diagram.is_interior(v)) return false;
    if (!neighborhood_graph_like(diagram, v)) return false;

    const auto nbrs = diagram.neighbors(v);
    const Phase alpha = vert.phase;
    const bool positive = alpha == Phase::half_pi();

    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            toggle_hadamard_edge(diagram, nbrs[i], nbrs[j]);
        }
    }
    for (VertexId n : nbrs) diagram.add_phase(n, -alpha);
    diagram.remove_vertex(v);

    const std::size_t d = nbrs.size();
    const double power = d >= 2 ? static_cast<double>((d - 1) * (d - 2) / 2) : 0.0;
    const std::complex<double> unit =
        std::polar(1.0, (positive ? 1.0 : -1.0) * std::numbers::pi / 4.0);
    diagram.multiply_scalar(unit * std::pow(kSqrt2, power));
    return true;
}

bool rule_pivot(ZxDiagram& diagram, VertexId u, VertexId w) {
    if (u == w || !diagram.has_vertex(u) || !diagram.has_vertex(w)) return false;
    if (!diagram.is_spider(u) || !diagram.is_spider(w)) return false;
    const Vertex& vu = diagram.vertex(u);
    const Vertex& vw = diagram.vertex(w);
    if (vu.kind != VertexKind::ZSpider || vw.kind != VertexKind::ZSpider) return false;
    if (!vu.phase.is_pauli() || !vw.phase.is_pauli()) return false;
    if (diagram.edges_between(u, w).hadamard != 1 || diagram.edges_between(u, w).plain != 0) {
        return false;
    }
    if (!diagram.is_interior(u) || !diagram.is_interior(w)) return false;
    if (anchors_gadget(diagram, u) || anchors_gadget(diagram, w)) return false;
    if (!neighborhood_graph_like(diagram, u) || !neighborhood_graph_like(diagram, w)) {
        return false;
    }

    const auto nu = diagram.neighbors(u);
    const auto nw = diagram.neighbors(w);
    std::vector<VertexId> only_u, only_w, common;
    for (VertexId n : nu) {
        if (n == w) continue;
        if (std::find(nw.begin(), nw.end(), n) != nw.end()) common.push_back(n);
        else only_u.push_back(n);
    }
    for (VertexId n : nw) {
        if (n == u) continue;
        if (std::find(nu.begin(), nu.end(), n) == nu.end()) only_w.push_back(n);
    }

    const Phase pu = vu.phase;
    const Phase pw = vw.phase;

    for (VertexId a : only_u) {
        for (VertexId b : only_w) toggle_hadamard_edge(diagram, a, b);
        for (VertexId c : common) toggle_hadamard_edge(diagram, a, c);
    }
    for (VertexId b : only_w) {
        for (VertexId c : common) toggle_hadamard_edge(diagram, b, c);
    }
    for (VertexId a : only_u) diagram.add_phase(a, pw);
    for (VertexId b : only_w) diagram.add_phase(b, pu);
    for (VertexId c : common) diagram.add_phase(c, pu + pw + Phase::pi());

    diagram.remove_vertex(u);
    diagram.remove_vertex(w);

    const double na = static_cast<double>(only_u.size());
    const double nb = static_cast<double>(only_w.size());
    const double nc = static_cast<double>(common.size());
    const double power = (na - 1.0) * (nb - 1.0) + (na - 1.0) * nc + (nb - 1.0) * nc;
    std::complex<double> factor = std::pow(kSqrt2, power);
    if (!pu.is_zero() && !pw.is_zero()) factor = -factor;
    diagram.multiply_scalar(factor);
    return true;
}

bool rule_pivot_gadget(ZxDiagram& diagram, VertexId u, VertexId w) {
    if (u == w || !diagram.has_vertex(u) || !diagram.has_vertex(w)) return false;
    if (!diagram.is_spider(u) || !diagram.is_spider(w)) return false;
    const Vertex& vu = diagram.vertex(u);
    const Vertex& vw = diagram.vertex(w);
    if (vu.kind != VertexKind::ZSpider || vw.kind != VertexKind::ZSpider) return false;
    if (!vu.phase.is_pauli() || vw.phase.is_pauli()) return false;
    if (diagram.degree(w) < 2) return false;  // a phase leaf would regress forever
    if (diagram.edges_between(u, w).hadamard != 1 || diagram.edges_between(u, w).plain != 0) {
        return false;
    }
    if (!diagram.is_interior(u) || !diagram.is_interior(w)) return false;
    if (anchors_gadget(diagram, u) || anchors_gadget(diagram, w)) return false;
    if (!neighborhood_graph_like(diagram, u) || !neighborhood_graph_like(diagram, w)) {
        return false;
    }

    // unfuse w's phase onto a fresh gadget: w(a) = w(0) -H- axis(0) -H- leaf(a)
    const Phase alpha = vw.phase;
    diagram.set_phase(w, Phase::zero());
    const VertexId axis = diagram.add_vertex(VertexKind::ZSpider, Phase::zero());
    const VertexId leaf = diagram.add_vertex(VertexKind::ZSpider, alpha);
    diagram.add_edge(w, axis, EdgeKind::Hadamard);
    diagram.add_edge(axis, leaf, EdgeKind::Hadamard);

    if (!rule_pivot(diagram, u, w)) {
        throw std::logic_error("pivot_gadget: pivot failed after unfusing");
    }
    return true;
}

std::optional<GadgetShape> match_gadget(const ZxDiagram& diagram, VertexId axis) {
    if (!diagram.has_vertex(axis) || !diagram.is_spider(axis)) return std::nullopt;
    const Vertex& vert = diagram.vertex(axis);
    if (vert.kind != VertexKind::ZSpider || !vert.phase.is_zero()) return std::nullopt;
    if (!diagram.is_interior(axis)) return std::nullopt;

    GadgetShape shape;
    shape.axis = axis;
    bool leaf_found = false;
    for (VertexId n : diagram.neighbors(axis)) {
        const auto bundle = diagram.edges_between(axis, n);
        if (bundle.plain != 0 || bundle.hadamard != 1) return std::nullopt;
        if (diagram.vertex(n).kind != VertexKind::ZSpider) return std::nullopt;
        if (diagram.degree(n) == 1) {
            if (leaf_found) return std::nullopt;  // two leaves is not a gadget
            leaf_found = true;
            shape.leaf = n;
        } else {
            shape.support.push_back(n);
        }
    }
    if (!leaf_found || shape.support.empty()) return std::nullopt;
    return shape;
}

bool rule_gadget_fuse(ZxDiagram& diagram, VertexId axis1, VertexId axis2) {
    if (axis1 == axis2) return false;
    const auto g1 = match_gadget(diagram, axis1);
    const auto g2 = match_gadget(diagram, axis2);
    if (!g1 || !g2) return false;
    if (g1->support != g2->support) return false;

    diagram.add_phase(g1->leaf, diagram.vertex(g2->leaf).phase);
    diagram.remove_vertex(g2->leaf);
    diagram.remove_vertex(g2->axis);
    // one gadget of support k replaces two: the bare tensors differ by
    // sqrt(2)^(k-1)
    const double k = static_cast<double>(g1->support.size());
    diagram.multiply_scalar(std::pow(kSqrt2, 1.0 - k));
    return true;
}

}  // namespace qpos::zx
