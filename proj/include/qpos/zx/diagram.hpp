#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qpos/zx/phase.hpp"

namespace qpos::zx {

using VertexId = std::size_t;
using Scalar = std::complex<double>;

enum class VertexKind { Boundary, ZSpider, XSpider };
enum class EdgeKind { Plain, Hadamard };

struct Vertex {
    VertexKind kind = VertexKind::ZSpider;
    Phase phase;
};

// Parallel-edge multiplicities for one vertex pair.
struct EdgeBundle {
    std::size_t plain = 0;
    std::size_t hadamard = 0;

    std::size_t total() const { return plain + hadamard; }
};

// Open graph of Z/X spiders with rational phases, plain/Hadamard edges and
// an explicit complex bookkeeping scalar. The Hadamard edge kind plays the
// role of the arity-2 Hadamard box. Self-loops are normalized away on
// insertion: a plain loop drops freely, a Hadamard loop adds pi to the
// spider phase and a 1/sqrt(2) factor to the scalar.
class ZxDiagram {
  public:
    VertexId add_vertex(VertexKind kind, Phase phase = Phase());
    // Insert under a caller-chosen id (deserialization); id must be fresh.
    void add_vertex_with_id(VertexId id, VertexKind kind, Phase phase = Phase());
    VertexId add_boundary();
    void remove_vertex(VertexId v);  // drops incident edges

    // Raw edge insert (normalizes self-loops only).
    void add_edge(VertexId u, VertexId v, EdgeKind kind, std::size_t count = 1);
    void remove_edge(VertexId u, VertexId v, EdgeKind kind, std::size_t count = 1);
    // Insert then reduce redundant parallel edges between two spiders of
    // the same color: Hadamard pairs annihilate (x 1/2 each pair), plain
    // edges deduplicate.
    void add_edge_smart(VertexId u, VertexId v, EdgeKind kind, std::size_t count = 1);
    void normalize_parallel(VertexId u, VertexId v);

    bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
    const Vertex& vertex(VertexId v) const;
    void set_phase(VertexId v, Phase phase);
    void add_phase(VertexId v, Phase delta);
    void set_kind(VertexId v, VertexKind kind);

    EdgeBundle edges_between(VertexId u, VertexId v) const;
    std::size_t degree(VertexId v) const;  // counts multiplicities
    std::vector<VertexId> neighbors(VertexId v) const;  // ascending ids

    const std::map<VertexId, Vertex>& vertices() const { return vertices_; }
    // Edge list as (u, v, bundle) with u < v, ascending.
    std::vector<std::tuple<VertexId, VertexId, EdgeBundle>> edge_list() const;

    std::vector<VertexId>& inputs() { return inputs_; }
    const std::vector<VertexId>& inputs() const { return inputs_; }
    std::vector<VertexId>& outputs() { return outputs_; }
    const std::vector<VertexId>& outputs() const { return outputs_; }
    std::vector<VertexId> boundary() const;

    Scalar scalar() const { return scalar_; }
    void set_scalar(Scalar s) { scalar_ = s; }
    void multiply_scalar(Scalar s) { scalar_ *= s; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_spiders() const;
    bool is_spider(VertexId v) const;
    // spider with no boundary neighbor
    bool is_interior(VertexId v) const;

    // Spiders whose phase is not a multiple of pi/2.
    std::size_t t_count() const;

    // Every Z spider, every spider-spider edge a single Hadamard edge,
    // no spider self-loops or parallel spider edges.
    bool is_graph_like() const;

    // Structural checks (boundary degree 1, phase 0, list consistency).
    void validate() const;

    bool structurally_equal(const ZxDiagram& other, double scalar_tol = 1e-12) const;

  private:
    std::map<VertexId, Vertex> vertices_;
    std::map<VertexId, std::map<VertexId, EdgeBundle>> adjacency_;
    std::vector<VertexId> inputs_;
    std::vector<VertexId> outputs_;
    Scalar scalar_{1.0, 0.0};
    VertexId next_id_ = 0;
};

std::size_t diagram_t_count(const ZxDiagram& diagram);

// Text serialization; round-trips exactly (phases as rationals, scalar at
// 17 significant digits).
void write_diagram(const ZxDiagram& diagram, std::ostream& out);
ZxDiagram read_diagram(std::istream& in);

// DOT export, green/red spiders and gold dashed Hadamard edges.
void write_dot(const ZxDiagram& diagram, std::ostream& out);

}  // namespace qpos::zx
