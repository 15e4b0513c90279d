#include "qpos/zx/tensor.hpp"

#include "qpos/zx/circuit_map.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace qpos::zx {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

using Complex = std::complex<double>;

// Working tensor keyed by half-leg ids; axis k holds leg legs[k].
struct WorkTensor {
    std::vector<std::size_t> legs;
    std::vector<Complex> data;

    std::size_t rank() const { return legs.size(); }
};

struct HalfLeg {
    VertexId vertex;
    std::size_t peer;  // matching half-leg id on the other side
    bool hadamard;     // edge carries an H box
    bool fold_here;    // this side's tensor absorbs the box
};

// Materializes the spider tensor; Hadamard boxes of incident edges are
// folded into the axis of the edge's lower-id half-leg so later pairings
// are plain deltas.
WorkTensor spider_tensor(const Vertex& vert, const std::vector<std::size_t>& legs,
                         const std::vector<HalfLeg>& half_legs) {
    WorkTensor t;
    t.legs = legs;
    const std::size_t d = legs.size();
    t.data.assign(std::size_t{1} << d, Complex{0.0, 0.0});
    const Complex phase = std::polar(1.0, vert.phase.radians());
    if (vert.kind == VertexKind::ZSpider) {
        if (d == 0) {
            t.data[0] = Complex{1.0, 0.0} + phase;
        } else {
            t.data[0] = Complex{1.0, 0.0};
            t.data[t.data.size() - 1] = phase;
        }
    } else {
        const double norm = std::pow(kInvSqrt2, static_cast<double>(d));
        for (std::size_t bits = 0; bits < t.data.size(); ++bits) {
            const double sign = (std::popcount(bits) % 2 == 0) ? 1.0 : -1.0;
            t.data[bits] = norm * (Complex{1.0, 0.0} + phase * sign);
        }
    }
    // fold H boxes owned by these axes
    for (std::size_t axis = 0; axis < d; ++axis) {
        const HalfLeg& hl = half_legs[legs[axis]];
        if (!hl.hadamard || !hl.fold_here) continue;
        std::vector<Complex> next(t.data.size());
        const std::size_t mask = std::size_t{1} << axis;
        for (std::size_t bits = 0; bits < t.data.size(); ++bits) {
            const Complex lo = t.data[bits & ~mask];
            const Complex hi = t.data[bits | mask];
            next[bits] = (bits & mask) ? kInvSqrt2 * (lo - hi) : kInvSqrt2 * (lo + hi);
        }
        t.data = std::move(next);
    }
    return t;
}

// Plain tensordot over every (leg, peer-leg) pairing shared by a and b;
// outer product when nothing is shared.
WorkTensor contract_tensors(const WorkTensor& a, const WorkTensor& b,
                            const std::vector<HalfLeg>& half_legs) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (axis in a, axis in b)
    for (std::size_t i = 0; i < a.legs.size(); ++i) {
        const std::size_t peer = half_legs[a.legs[i]].peer;
        const auto it = std::find(b.legs.begin(), b.legs.end(), peer);
        if (it != b.legs.end()) {
            pairs.emplace_back(i, static_cast<std::size_t>(it - b.legs.begin()));
        }
    }

    WorkTensor out;
    std::vector<std::size_t> free_a, free_b;
    for (std::size_t i = 0; i < a.legs.size(); ++i) {
        if (std::none_of(pairs.begin(), pairs.end(),
                         [i](const auto& p) { return p.first == i; })) {
            free_a.push_back(i);
            out.legs.push_back(a.legs[i]);
        }
    }
    for (std::size_t j = 0; j < b.legs.size(); ++j) {
        if (std::none_of(pairs.begin(), pairs.end(),
                         [j](const auto& p) { return p.second == j; })) {
            free_b.push_back(j);
            out.legs.push_back(b.legs[j]);
        }
    }
    out.data.assign(std::size_t{1} << out.legs.size(), Complex{0.0, 0.0});

    const std::size_t fa = free_a.size();
    const std::size_t fb = free_b.size();
    const std::size_t s = pairs.size();
    for (std::size_t ia = 0; ia < (std::size_t{1} << fa); ++ia) {
        for (std::size_t shared = 0; shared < (std::size_t{1} << s); ++shared) {
            std::size_t bits_a = 0;
            for (std::size_t k = 0; k < fa; ++k) bits_a |= ((ia >> k) & 1) << free_a[k];
            for (std::size_t k = 0; k < s; ++k) bits_a |= ((shared >> k) & 1) << pairs[k].first;
            const Complex va = a.data[bits_a];
            if (va == Complex{0.0, 0.0}) continue;
            std::size_t base_b = 0;
            for (std::size_t k = 0; k < s; ++k) base_b |= ((shared >> k) & 1) << pairs[k].second;
            for (std::size_t ib = 0; ib < (std::size_t{1} << fb); ++ib) {
                std::size_t bits_b = base_b;
                for (std::size_t k = 0; k < fb; ++k) bits_b |= ((ib >> k) & 1) << free_b[k];
                const Complex vb = b.data[bits_b];
                if (vb == Complex{0.0, 0.0}) continue;
                out.data[ia | (ib << fa)] += va * vb;
            }
        }
    }
    return out;
}

// Splits every spider of degree > 3 into a chain of arity-3 spiders
// (inverse fusion; plain links, phase kept on the original node) so vertex
// tensors stay tiny.
ZxDiagram split_high_degree(ZxDiagram working) {
    std::vector<VertexId> todo;
    for (const auto& [id, vert] : working.vertices()) {
        if (vert.kind != VertexKind::Boundary) todo.push_back(id);
    }
    for (VertexId v : todo) {
        while (working.degree(v) > 3) {
            std::vector<std::pair<VertexId, EdgeKind>> legs;
            for (VertexId n : working.neighbors(v)) {
                const auto bundle = working.edges_between(v, n);
                for (std::size_t i = 0; i < bundle.plain && legs.size() < 2; ++i) {
                    legs.emplace_back(n, EdgeKind::Plain);
                }
                for (std::size_t i = 0; i < bundle.hadamard && legs.size() < 2; ++i) {
                    legs.emplace_back(n, EdgeKind::Hadamard);
                }
                if (legs.size() == 2) break;
            }
            const VertexId w = working.add_vertex(working.vertex(v).kind, Phase());
            for (const auto& [n, kind] : legs) {
                working.remove_edge(v, n, kind);
                working.add_edge(w, n, kind);
            }
            working.add_edge(v, w, EdgeKind::Plain);
        }
    }
    return working;
}

}  // namespace

BoundaryTensor diagram_to_tensor(const ZxDiagram& input, const TensorLimits& limits) {
    input.validate();
    const std::size_t wires = input.inputs().size() + input.outputs().size();
    if (wires > limits.max_boundary_wires) {
        throw std::invalid_argument("diagram_to_tensor: too many boundary wires (" +
                                    std::to_string(wires) + ")");
    }
    if (input.num_vertices() > limits.max_vertices) {
        throw std::invalid_argument("diagram_to_tensor: vertex count exceeds cap");
    }
    const ZxDiagram diagram = split_high_degree(input);

    // Half-leg ids per edge instance, lower vertex side first.
    std::map<VertexId, std::vector<std::size_t>> vertex_legs;
    std::vector<HalfLeg> half_legs;
    std::map<VertexId, std::size_t> boundary_leg;
    for (const auto& [u, v, bundle] : diagram.edge_list()) {
        for (std::size_t kind_pass = 0; kind_pass < 2; ++kind_pass) {
            const bool hadamard = kind_pass == 1;
            const std::size_t count = hadamard ? bundle.hadamard : bundle.plain;
            for (std::size_t i = 0; i < count; ++i) {
                const std::size_t a = half_legs.size();
                const std::size_t b = a + 1;
                const bool u_boundary = diagram.vertex(u).kind == VertexKind::Boundary;
                const bool v_boundary = diagram.vertex(v).kind == VertexKind::Boundary;
                // the spider side absorbs the H box; the boundary-boundary
                // case keeps it on the explicit wire tensor
                const bool fold_u = hadamard && !u_boundary;
                half_legs.push_back(HalfLeg{u, b, hadamard, fold_u});
                half_legs.push_back(HalfLeg{v, a, hadamard, hadamard && !fold_u && !v_boundary});
                vertex_legs[u].push_back(a);
                vertex_legs[v].push_back(b);
            }
        }
    }
    for (VertexId v : diagram.boundary()) {
        const auto it = vertex_legs.find(v);
        if (it == vertex_legs.end() || it->second.size() != 1) {
            throw std::invalid_argument("diagram_to_tensor: boundary without unique leg");
        }
        boundary_leg[v] = it->second[0];
    }

    // One tensor per spider; boundary-boundary edges become bare wires.
    std::vector<WorkTensor> parts;
    {
        WorkTensor scalar;
        scalar.data = {diagram.scalar()};
        parts.push_back(std::move(scalar));
    }
    for (const auto& [id, vert] : diagram.vertices()) {
        if (vert.kind == VertexKind::Boundary) continue;
        const auto legs_it = vertex_legs.find(id);
        const std::vector<std::size_t> legs =
            legs_it == vertex_legs.end() ? std::vector<std::size_t>{} : legs_it->second;
        parts.push_back(spider_tensor(vert, legs, half_legs));
    }
    for (const auto& [u, v, bundle] : diagram.edge_list()) {
        if (diagram.vertex(u).kind != VertexKind::Boundary ||
            diagram.vertex(v).kind != VertexKind::Boundary) {
            continue;
        }
        WorkTensor wire;
        wire.legs = {boundary_leg.at(u), boundary_leg.at(v)};
        wire.data = bundle.hadamard > 0
                        ? std::vector<Complex>{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}
                        : std::vector<Complex>{1.0, 0.0, 0.0, 1.0};
        parts.push_back(std::move(wire));
    }

    // Boundary half-legs pair with the spider-side peer; rename the peer
    // axis so the open axes end up carrying the boundary's own leg id.
    for (auto& part : parts) {
        for (auto& leg : part.legs) {
            const HalfLeg& hl = half_legs[leg];
            if (diagram.vertex(half_legs[hl.peer].vertex).kind == VertexKind::Boundary &&
                diagram.vertex(hl.vertex).kind != VertexKind::Boundary) {
                leg = hl.peer;
            }
        }
    }

    // Greedy pairwise contraction: smallest resulting rank first.
    auto shared_count = [&](const WorkTensor& a, const WorkTensor& b) {
        std::size_t count = 0;
        for (std::size_t leg : a.legs) {
            const std::size_t peer = half_legs[leg].peer;
            if (std::find(b.legs.begin(), b.legs.end(), peer) != b.legs.end()) ++count;
        }
        return count;
    };
    while (parts.size() > 1) {
        std::size_t best_i = 0, best_j = 1;
        std::ptrdiff_t best_rank = std::numeric_limits<std::ptrdiff_t>::max();
        bool best_connected = false;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t j = i + 1; j < parts.size(); ++j) {
                const std::size_t shared = shared_count(parts[i], parts[j]);
                const std::ptrdiff_t rank =
                    static_cast<std::ptrdiff_t>(parts[i].rank() + parts[j].rank()) -
                    2 * static_cast<std::ptrdiff_t>(shared);
                const bool connected = shared > 0;
                if ((connected && !best_connected) ||
                    (connected == best_connected && rank < best_rank)) {
                    best_rank = rank;
                    best_i = i;
                    best_j = j;
                    best_connected = connected;
                }
            }
        }
        if (static_cast<std::size_t>(best_rank) > limits.max_open_axes) {
            throw std::invalid_argument("diagram_to_tensor: contraction width exceeds cap");
        }
        WorkTensor merged = contract_tensors(parts[best_i], parts[best_j], half_legs);
        parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(best_j));
        parts[best_i] = std::move(merged);
    }

    WorkTensor& acc = parts[0];
    std::vector<std::size_t> wanted;
    for (VertexId v : diagram.inputs()) wanted.push_back(boundary_leg.at(v));
    for (VertexId v : diagram.outputs()) wanted.push_back(boundary_leg.at(v));
    if (wanted.size() != acc.rank()) {
        throw std::logic_error("diagram_to_tensor: dangling internal legs after contraction");
    }

    BoundaryTensor out;
    out.num_inputs = diagram.inputs().size();
    out.num_outputs = diagram.outputs().size();
    out.data.assign(std::size_t{1} << wanted.size(), Complex{0.0, 0.0});
    std::vector<std::size_t> axis_for_bit(wanted.size());
    for (std::size_t k = 0; k < wanted.size(); ++k) {
        const auto it = std::find(acc.legs.begin(), acc.legs.end(), wanted[k]);
        if (it == acc.legs.end()) {
            throw std::logic_error("diagram_to_tensor: missing boundary axis");
        }
        axis_for_bit[k] = static_cast<std::size_t>(it - acc.legs.begin());
    }
    for (std::size_t bits = 0; bits < acc.data.size(); ++bits) {
        std::size_t packed = 0;
        for (std::size_t k = 0; k < wanted.size(); ++k) {
            packed |= ((bits >> axis_for_bit[k]) & 1) << k;
        }
        out.data[packed] = acc.data[bits];
    }
    return out;
}

BoundaryTensor diagram_to_tensor_by_columns(const ZxDiagram& diagram,
                                            const TensorLimits& limits) {
    const std::size_t n_in = diagram.inputs().size();
    if (n_in == 0) return diagram_to_tensor(diagram, limits);
    const std::size_t n_out = diagram.outputs().size();
    if (n_in + n_out > limits.max_boundary_wires) {
        throw std::invalid_argument("diagram_to_tensor_by_columns: too many boundary wires");
    }

    BoundaryTensor out;
    out.num_inputs = n_in;
    out.num_outputs = n_out;
    out.data.assign(std::size_t{1} << (n_in + n_out), Complex{0.0, 0.0});
    for (std::size_t column = 0; column < (std::size_t{1} << n_in); ++column) {
        ZxDiagram plugged = diagram;
        plug_inputs_basis(plugged, column);
        const BoundaryTensor state = diagram_to_tensor(plugged, limits);
        for (std::size_t row = 0; row < state.data.size(); ++row) {
            out.data[column | (row << n_in)] = state.data[row];
        }
    }
    return out;
}

double scalar_aligned_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("aligned distance: size mismatch");
    // least-squares scalar s minimizing sum |a - s b|^2: s = <b,a>/<b,b>
    Complex num{0.0, 0.0};
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::conj(b[i]) * a[i];
        den += std::norm(b[i]);
    }
    if (den == 0.0) {
        double max_abs = 0.0;
        for (const auto& x : a) max_abs = std::max(max_abs, std::abs(x));
        return max_abs;
    }
    const Complex s = num / den;
    double max_dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        max_dev = std::max(max_dev, std::abs(a[i] - s * b[i]));
    }
    return max_dev;
}

bool tensors_equal_up_to_scalar(const BoundaryTensor& a, const BoundaryTensor& b,
                                double tolerance) {
    if (a.num_inputs != b.num_inputs || a.num_outputs != b.num_outputs) return false;
    return scalar_aligned_distance(a.data, b.data) <= tolerance;
}

}  // namespace qpos::zx
