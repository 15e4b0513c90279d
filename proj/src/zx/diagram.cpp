#include "qpos/zx/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qpos::zx {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

VertexId ZxDiagram::add_vertex(VertexKind kind, Phase phase) {
    if (kind == VertexKind::Boundary && !phase.is_zero()) {
        throw std::invalid_argument("boundary vertices carry phase 0");
    }
    const VertexId id = next_id_++;
    vertices_[id] = Vertex{kind, phase};
    adjacency_[id];
    return id;
}

void ZxDiagram::add_vertex_with_id(VertexId id, VertexKind kind, Phase phase) {
    if (has_vertex(id)) throw std::invalid_argument("add_vertex_with_id: id already in use");
    if (kind == VertexKind::Boundary && !phase.is_zero()) {
        throw std::invalid_argument("boundary vertices carry phase 0");
    }
    vertices_[id] = Vertex{kind, phase};
    adjacency_[id];
    next_id_ = std::max(next_id_, id + 1);
}

VertexId ZxDiagram::add_boundary() { return add_vertex(VertexKind::Boundary); }

void ZxDiagram::remove_vertex(VertexId v) {
    const auto it = adjacency_.find(v);
    if (it == adjacency_.end()) throw std::invalid_argument("remove_vertex: unknown vertex");
    for (const auto& [nbr, bundle] : it->second) {
        if (nbr != v) adjacency_[nbr].erase(v);
    }
    adjacency_.erase(it);
    vertices_.erase(v);
    std::erase(inputs_, v);
    std::erase(outputs_, v);
}

void ZxDiagram::add_edge(VertexId u, VertexId v, EdgeKind kind, std::size_t count) {
    if (count == 0) return;
    if (!has_vertex(u) || !has_vertex(v)) throw std::invalid_argument("add_edge: unknown vertex");
    if (u == v) {
        if (!is_spider(u)) throw std::invalid_argument("add_edge: self-loop on boundary");
        if (kind == EdgeKind::Hadamard) {
            for (std::size_t i = 0; i < count; ++i) {
                add_phase(u, Phase::pi());
                scalar_ *= kInvSqrt2;
            }
        }
        return;  // plain self-loops drop freely
    }
    auto& bundle = adjacency_[u][v];
    auto& mirror = adjacency_[v][u];
    if (kind == EdgeKind::Plain) {
        bundle.plain += count;
        mirror.plain = bundle.plain;
    } else {
        bundle.hadamard += count;
        mirror.hadamard = bundle.hadamard;
    }
}

void ZxDiagram::remove_edge(VertexId u, VertexId v, EdgeKind kind, std::size_t count) {
    if (count == 0) return;
    auto it = adjacency_.find(u);
    if (it == adjacency_.end()) throw std::invalid_argument("remove_edge: unknown vertex");
    auto jt = it->second.find(v);
    if (jt == it->second.end()) throw std::invalid_argument("remove_edge: no such edge");
    auto& bundle = jt->second;
    std::size_t& slot = kind == EdgeKind::Plain ? bundle.plain : bundle.hadamard;
    if (slot < count) throw std::invalid_argument("remove_edge: multiplicity underflow");
    slot -= count;
    auto& mirror = adjacency_[v][u];
    (kind == EdgeKind::Plain ? mirror.plain : mirror.hadamard) = slot;
    if (bundle.total() == 0) {
        it->second.erase(jt);
        adjacency_[v].erase(u);
    }
}

void ZxDiagram::normalize_parallel(VertexId u, VertexId v) {
    if (u == v) return;
    if (!is_spider(u) || !is_spider(v)) return;
    if (vertex(u).kind != vertex(v).kind) return;  // only same-color reductions are local
    auto it = adjacency_.find(u);
    if (it == adjacency_.end()) return;
    auto jt = it->second.find(v);
    if (jt == it->second.end()) return;
    EdgeBundle& bundle = jt->second;

    // Hadamard pairs annihilate with a factor 1/2 each.
    while (bundle.hadamard >= 2) {
        bundle.hadamard -= 2;
        scalar_ *= 0.5;
    }
    // Parallel plain edges between same-color spiders collapse to one.
    if (bundle.plain > 1) bundle.plain = 1;

    auto& mirror = adjacency_[v][u];
    mirror = bundle;
    if (bundle.total() == 0) {
        it->second.erase(jt);
        adjacency_[v].erase(u);
    }
}

void ZxDiagram::add_edge_smart(VertexId u, VertexId v, EdgeKind kind, std::size_t count) {
    add_edge(u, v, kind, count);
    normalize_parallel(u, v);
}

const Vertex& ZxDiagram::vertex(VertexId v) const {
    const auto it = vertices_.find(v);
    if (it == vertices_.end()) throw std::invalid_argument("vertex: unknown id");
    return it->second;
}

void ZxDiagram::set_phase(VertexId v, Phase phase) {
    const auto it = vertices_.find(v);
    if (it == vertices_.end()) throw std::invalid_argument("set_phase: unknown id");
    if (it->second.kind == VertexKind::Boundary && !phase.is_zero()) {
        throw std::invalid_argument("set_phase: boundary phase must stay 0");
    }
    it->second.phase = phase;
}

void ZxDiagram::add_phase(VertexId v, Phase delta) { set_phase(v, vertex(v).phase + delta); }

void ZxDiagram::set_kind(VertexId v, VertexKind kind) {
    const auto it = vertices_.find(v);
    if (it == vertices_.end()) throw std::invalid_argument("set_kind: unknown id");
    it->second.kind = kind;
}

EdgeBundle ZxDiagram::edges_between(VertexId u, VertexId v) const {
    const auto it = adjacency_.find(u);
    if (it == adjacency_.end()) return {};
    const auto jt = it->second.find(v);
    return jt == it->second.end() ? EdgeBundle{} : jt->second;
}

std::size_t ZxDiagram::degree(VertexId v) const {
    const auto it = adjacency_.find(v);
    if (it == adjacency_.end()) return 0;
    std::size_t total = 0;
    for (const auto& [nbr, bundle] : it->second) total += bundle.total();
    return total;
}

std::vector<VertexId> ZxDiagram::neighbors(VertexId v) const {
    std::vector<VertexId> out;
    const auto it = adjacency_.find(v);
    if (it == adjacency_.end()) return out;
    out.reserve(it->second.size());
    for (const auto& [nbr, bundle] : it->second) {
        if (bundle.total() > 0) out.push_back(nbr);
    }
    return out;
}

std::vector<std::tuple<VertexId, VertexId, EdgeBundle>> ZxDiagram::edge_list() const {
    std::vector<std::tuple<VertexId, VertexId, EdgeBundle>> out;
    for (const auto& [u, nbrs] : adjacency_) {
        for (const auto& [v, bundle] : nbrs) {
            if (u < v && bundle.total() > 0) out.emplace_back(u, v, bundle);
        }
    }
    return out;
}

std::vector<VertexId> ZxDiagram::boundary() const {
    std::vector<VertexId> out;
    for (const auto& [id, vert] : vertices_) {
        if (vert.kind == VertexKind::Boundary) out.push_back(id);
    }
    return out;
}

std::size_t ZxDiagram::num_spiders() const {
    std::size_t count = 0;
    for (const auto& [id, vert] : vertices_) {
        if (vert.kind != VertexKind::Boundary) ++count;
    }
    return count;
}

bool ZxDiagram::is_spider(VertexId v) const { return vertex(v).kind != VertexKind::Boundary; }

bool ZxDiagram::is_interior(VertexId v) const {
    if (!is_spider(v)) return false;
    for (VertexId nbr : neighbors(v)) {
        if (vertex(nbr).kind == VertexKind::Boundary) return false;
    }
    return true;
}

std::size_t ZxDiagram::t_count() const {
    std::size_t count = 0;
    for (const auto& [id, vert] : vertices_) {
        if (vert.kind != VertexKind::Boundary && !vert.phase.is_clifford()) ++count;
    }
    return count;
}

bool ZxDiagram::is_graph_like() const {
    for (const auto& [id, vert] : vertices_) {
        if (vert.kind == VertexKind::XSpider) return false;
    }
    for (const auto& [u, v, bundle] : edge_list()) {
        const bool spider_edge = is_spider(u) && is_spider(v);
        if (spider_edge) {
            if (bundle.plain != 0 || bundle.hadamard != 1) return false;
        } else {
            if (bundle.total() != 1) return false;
        }
    }
    return true;
}

void ZxDiagram::validate() const {
    for (const auto& [id, vert] : vertices_) {
        if (vert.kind == VertexKind::Boundary) {
            if (degree(id) != 1) {
                throw std::invalid_argument("diagram: boundary vertex " + std::to_string(id) +
                                            " must have degree 1");
            }
            if (!vert.phase.is_zero()) {
                throw std::invalid_argument("diagram: boundary vertex with nonzero phase");
            }
        }
    }
    for (VertexId v : inputs_) {
        if (!has_vertex(v) || vertex(v).kind != VertexKind::Boundary) {
            throw std::invalid_argument("diagram: input list names a non-boundary vertex");
        }
        if (std::find(outputs_.begin(), outputs_.end(), v) != outputs_.end()) {
            throw std::invalid_argument("diagram: vertex is both input and output");
        }
    }
    for (VertexId v : outputs_) {
        if (!has_vertex(v) || vertex(v).kind != VertexKind::Boundary) {
            throw std::invalid_argument("diagram: output list names a non-boundary vertex");
        }
    }
    std::size_t boundary_count = 0;
    for (const auto& [id, vert] : vertices_) {
        if (vert.kind == VertexKind::Boundary) ++boundary_count;
    }
    if (boundary_count != inputs_.size() + outputs_.size()) {
        throw std::invalid_argument("diagram: stray boundary vertex not in input/output lists");
    }
}

bool ZxDiagram::structurally_equal(const ZxDiagram& other, double scalar_tol) const {
    if (vertices_.size() != other.vertices_.size()) return false;
    for (const auto& [id, vert] : vertices_) {
        if (!other.has_vertex(id)) return false;
        const Vertex& o = other.vertex(id);
        if (o.kind != vert.kind || !(o.phase == vert.phase)) return false;
    }
    const auto mine = edge_list();
    const auto theirs = other.edge_list();
    if (mine.size() != theirs.size()) return false;
    for (std::size_t i = 0; i < mine.size(); ++i) {
        const auto& [u1, v1, b1] = mine[i];
        const auto& [u2, v2, b2] = theirs[i];
        if (u1 != u2 || v1 != v2 || b1.plain != b2.plain || b1.hadamard != b2.hadamard) {
            return false;
        }
    }
    if (inputs_ != other.inputs_ || outputs_ != other.outputs_) return false;
    return std::abs(scalar_ - other.scalar_) <= scalar_tol;
}

std::size_t diagram_t_count(const ZxDiagram& diagram) { return diagram.t_count(); }

void write_diagram(const ZxDiagram& diagram, std::ostream& out) {
    out << "# zx-diagram\n";
    out.precision(17);
    out << "scalar " << diagram.scalar().real() << " " << diagram.scalar().imag() << "\n";
    for (const auto& [id, vert] : diagram.vertices()) {
        out << "vertex " << id << ' ';
        switch (vert.kind) {
            case VertexKind::Boundary: out << 'B'; break;
            case VertexKind::ZSpider: out << 'Z'; break;
            case VertexKind::XSpider: out << 'X'; break;
        }
        out << ' ' << vert.phase.str() << '\n';
    }
    out << "inputs";
    for (VertexId v : diagram.inputs()) out << ' ' << v;
    out << "\noutputs";
    for (VertexId v : diagram.outputs()) out << ' ' << v;
    out << '\n';
    for (const auto& [u, v, bundle] : diagram.edge_list()) {
        if (bundle.plain > 0) out << "edge " << u << ' ' << v << " P " << bundle.plain << '\n';
        if (bundle.hadamard > 0) {
            out << "edge " << u << ' ' << v << " H " << bundle.hadamard << '\n';
        }
    }
}

ZxDiagram read_diagram(std::istream& in) {
    ZxDiagram diagram;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&line_no](const std::string& message) {
        throw std::invalid_argument("diagram line " + std::to_string(line_no) + ": " + message);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "scalar") {
            double re = 0.0, im = 0.0;
            if (!(ls >> re >> im)) fail("malformed scalar");
            diagram.set_scalar(Scalar{re, im});
        } else if (word == "vertex") {
            VertexId id = 0;
            std::string kind, phase;
            if (!(ls >> id >> kind >> phase)) fail("malformed vertex");
            const auto slash = phase.find('/');
            if (slash == std::string::npos) fail("phase must be num/den");
            const std::int64_t num = std::stoll(phase.substr(0, slash));
            const std::int64_t den = std::stoll(phase.substr(slash + 1));
            VertexKind vk;
            if (kind == "B") vk = VertexKind::Boundary;
            else if (kind == "Z") vk = VertexKind::ZSpider;
            else if (kind == "X") vk = VertexKind::XSpider;
            else { fail("unknown vertex kind"); return diagram; }
            diagram.add_vertex_with_id(id, vk, Phase(num, den));
        } else if (word == "inputs") {
            VertexId v = 0;
            while (ls >> v) diagram.inputs().push_back(v);
        } else if (word == "outputs") {
            VertexId v = 0;
            while (ls >> v) diagram.outputs().push_back(v);
        } else if (word == "edge") {
            VertexId u = 0, v = 0;
            std::string kind;
            std::size_t count = 1;
            if (!(ls >> u >> v >> kind)) fail("malformed edge");
            ls >> count;
            diagram.add_edge(u, v, kind == "H" ? EdgeKind::Hadamard : EdgeKind::Plain, count);
        } else {
            fail("unknown directive \"" + word + "\"");
        }
    }
    diagram.validate();
    return diagram;
}

void write_dot(const ZxDiagram& diagram, std::ostream& out) {
    out << "graph zx {\n  node [style=filled];\n";
    for (const auto& [id, vert] : diagram.vertices()) {
        out << "  v" << id << " [";
        switch (vert.kind) {
            case VertexKind::Boundary:
                out << "shape=point, fillcolor=black, label=\"\"";
                break;
            case VertexKind::ZSpider:
                out << "shape=circle, fillcolor=green, label=\"" << vert.phase.str() << "\"";
                break;
            case VertexKind::XSpider:
                out << "shape=circle, fillcolor=red, label=\"" << vert.phase.str() << "\"";
                break;
        }
        out << "];\n";
    }
    for (const auto& [u, v, bundle] : diagram.edge_list()) {
        for (std::size_t i = 0; i < bundle.plain; ++i) {
            out << "  v" << u << " -- v" << v << ";\n";
        }
        for (std::size_t i = 0; i < bundle.hadamard; ++i) {
            // gold stands in for the arity-2 yellow Hadamard box
            out << "  v" << u << " -- v" << v << " [color=gold, style=dashed];\n";
        }
    }
    out << "}\n";
}

}  // namespace qpos::zx
