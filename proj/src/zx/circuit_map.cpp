#include "qpos/zx/circuit_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpos::zx {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kInvSqrt2 = 0.70710678118654752440;

Phase rationalize_angle(double theta) {
    const double turns = theta / std::numbers::pi;
    for (std::int64_t den = 1; den <= 96; ++den) {
        const double scaled = turns * static_cast<double>(den);
        const double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) < 1e-9) {
            return Phase(static_cast<std::int64_t>(rounded), den);
        }
    }
    throw std::invalid_argument("unsupported gate: RZ angle is not a rational multiple of pi");
}

struct WireState {
    VertexId current;
    bool pending_hadamard = false;
};

}  // namespace

ZxDiagram circuit_to_diagram(const Circuit& circuit) {
    if (circuit.n_qubits == 0) throw std::invalid_argument("circuit_to_diagram: no qubits");

    ZxDiagram diagram;
    std::vector<WireState> wires;
    wires.reserve(circuit.n_qubits);
    for (std::size_t q = 0; q < circuit.n_qubits; ++q) {
        const VertexId in = diagram.add_boundary();
        diagram.inputs().push_back(in);
        wires.push_back(WireState{in});
    }

    auto attach = [&](std::size_t q, VertexId v) {
        diagram.add_edge(wires[q].current, v,
                         wires[q].pending_hadamard ? EdgeKind::Hadamard : EdgeKind::Plain);
        wires[q].current = v;
        wires[q].pending_hadamard = false;
    };
    auto z_spider = [&](std::size_t q, Phase phase) {
        attach(q, diagram.add_vertex(VertexKind::ZSpider, phase));
    };

    // CCZ gates are pre-decomposed so the translated diagram stays in the
    // Clifford+T phase family.
    Circuit flat;
    flat.n_qubits = circuit.n_qubits;
    for (const auto& gate : circuit.gates) {
        if (gate.kind == GateKind::CCZ) {
            append_ccz_clifford_t(flat, gate.qubits[0], gate.qubits[1], gate.qubits[2]);
        } else {
            flat.append(gate);
        }
    }

    for (const auto& gate : flat.gates) {
        switch (gate.kind) {
            case GateKind::H:
                wires[gate.qubits[0]].pending_hadamard = !wires[gate.qubits[0]].pending_hadamard;
                break;
            case GateKind::X:
                attach(gate.qubits[0], diagram.add_vertex(VertexKind::XSpider, Phase::pi()));
                break;
            case GateKind::Z: z_spider(gate.qubits[0], Phase::pi()); break;
            case GateKind::S: z_spider(gate.qubits[0], Phase::half_pi()); break;
            case GateKind::Sdg: z_spider(gate.qubits[0], Phase(3, 2)); break;
            case GateKind::T: z_spider(gate.qubits[0], Phase::quarter_pi()); break;
            case GateKind::Tdg: z_spider(gate.qubits[0], Phase(7, 4)); break;
            case GateKind::Rz: z_spider(gate.qubits[0], rationalize_angle(gate.theta)); break;
            case GateKind::CNOT: {
                const VertexId control = diagram.add_vertex(VertexKind::ZSpider);
                const VertexId target = diagram.add_vertex(VertexKind::XSpider);
                attach(gate.qubits[0], control);
                attach(gate.qubits[1], target);
                diagram.add_edge(control, target, EdgeKind::Plain);
                diagram.multiply_scalar(kSqrt2);
                break;
            }
            case GateKind::CZ: {
                const VertexId a = diagram.add_vertex(VertexKind::ZSpider);
                const VertexId b = diagram.add_vertex(VertexKind::ZSpider);
                attach(gate.qubits[0], a);
                attach(gate.qubits[1], b);
                diagram.add_edge(a, b, EdgeKind::Hadamard);
                diagram.multiply_scalar(kSqrt2);
                break;
            }
            case GateKind::CCZ:
                throw std::logic_error("circuit_to_diagram: CCZ should be pre-decomposed");
        }
    }

    for (std::size_t q = 0; q < circuit.n_qubits; ++q) {
        const VertexId out = diagram.add_boundary();
        diagram.outputs().push_back(out);
        diagram.add_edge(wires[q].current, out,
                         wires[q].pending_hadamard ? EdgeKind::Hadamard : EdgeKind::Plain);
    }
    diagram.validate();
    return diagram;
}

void plug_inputs_zero(ZxDiagram& diagram) { plug_inputs_basis(diagram, 0); }

void plug_inputs_basis(ZxDiagram& diagram, std::size_t bits) {
    std::size_t index = 0;
    for (VertexId in : std::vector<VertexId>(diagram.inputs())) {
        diagram.set_kind(in, VertexKind::XSpider);
        if ((bits >> index) & 1) diagram.set_phase(in, Phase::pi());
        diagram.multiply_scalar(kInvSqrt2);
        ++index;
    }
    diagram.inputs().clear();
    diagram.validate();
}

}  // namespace qpos::zx
