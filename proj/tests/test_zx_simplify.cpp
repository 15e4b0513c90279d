#include "qpos/zx/simplify.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qpos/zx/circuit_map.hpp"
#include "qpos/zx/tensor.hpp"
#include "test_util.hpp"

using namespace qpos;
using namespace qpos::zx;

TEST(ToGraphLike, ProducesGraphLikeFormPreservingTensor) {
    Rng rng(3);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 1 + uniform_index(rng, 3);
        const Circuit circuit = testutil::random_clifford_t_circuit(n, 12, rng);
        const ZxDiagram original = circuit_to_diagram(circuit);
        const auto converted = to_graph_like(original);
        EXPECT_TRUE(converted.diagram.is_graph_like()) << "round " << round;
        const auto tb = diagram_to_tensor(original);
        const auto ta = diagram_to_tensor(converted.diagram);
        EXPECT_LT(testutil::max_abs_difference(tb.data, ta.data), 1e-9) << "round " << round;
    }
}

TEST(FullSimplify, SoundOnRandomCircuitsExactScalar) {
    Rng rng(1234);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 1 + uniform_index(rng, 4);
        const std::size_t gates = 1 + uniform_index(rng, 20);
        const Circuit circuit = testutil::random_clifford_t_circuit(n, gates, rng);
        const ZxDiagram original = circuit_to_diagram(circuit);
        const auto simplified = full_simplify(original);
        const auto tb = diagram_to_tensor(original);
        const auto ta = diagram_to_tensor(simplified.diagram);
        // scalars are tracked, so equality is exact, not just up-to-scalar
        EXPECT_LT(testutil::max_abs_difference(tb.data, ta.data), 1e-9)
            << "round " << round << " n=" << n << " gates=" << gates;
    }
}

TEST(FullSimplify, MatchesCircuitUnitaryEndToEnd) {
    Rng rng(99);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + uniform_index(rng, 3);
        const Circuit circuit = testutil::random_clifford_t_circuit(n, 15, rng);
        const auto simplified = full_simplify(circuit_to_diagram(circuit));
        const auto t = diagram_to_tensor(simplified.diagram);
        const auto u = testutil::circuit_unitary(circuit);
        EXPECT_LT(testutil::max_abs_difference(t.data, u), 1e-9) << "round " << round;
    }
}

TEST(FullSimplify, AlreadyMinimalDiagramUnchanged) {
    ZxDiagram d;
    const VertexId in = d.add_boundary();
    const VertexId out = d.add_boundary();
    d.inputs().push_back(in);
    d.outputs().push_back(out);
    d.add_edge(in, out, EdgeKind::Plain);
    const auto result = full_simplify(d);
    EXPECT_TRUE(result.trace.steps.empty());
    EXPECT_TRUE(result.diagram.structurally_equal(d));
}

TEST(FullSimplify, GhzCircuitReachesSmallNormalForm) {
    Circuit c;
    c.n_qubits = 3;
    c.append(Gate::single(GateKind::H, 0));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::cnot(1, 2));
    ZxDiagram d = circuit_to_diagram(c);
    plug_inputs_zero(d);

    const auto result = full_simplify(d);
    EXPECT_LE(result.diagram.num_spiders(), 3u);
    EXPECT_EQ(diagram_t_count(result.diagram), 0u);

    const auto t = diagram_to_tensor(result.diagram);
    ASSERT_EQ(t.data.size(), 8u);
    // proportional to |000> + |111>
    const Scalar ref = t.data[0];
    ASSERT_GT(std::abs(ref), 1e-12);
    EXPECT_NEAR(std::abs(t.data[7] - ref), 0.0, 1e-9);
    for (std::size_t j = 1; j < 7; ++j) EXPECT_NEAR(std::abs(t.data[j]), 0.0, 1e-9);
}

TEST(FullSimplify, TCountNeverIncreasesThroughThePipeline) {
    Rng rng(31);
    for (int round = 0; round < 30; ++round) {
        const Circuit circuit = testutil::random_clifford_t_circuit(4, 16, rng);
        const ZxDiagram original = circuit_to_diagram(circuit);
        const std::size_t before = diagram_t_count(original);
        const auto simplified = full_simplify(original);
        EXPECT_LE(diagram_t_count(simplified.diagram), before);
    }
}

TEST(FullSimplify, AdjacentTPairsCancelToClifford) {
    // T then T on the same wire: the diagram after simplification is
    // all-Clifford even though the circuit has two T gates
    Circuit c;
    c.n_qubits = 1;
    c.append(Gate::single(GateKind::T, 0));
    c.append(Gate::single(GateKind::T, 0));
    const auto result = full_simplify(circuit_to_diagram(c));
    EXPECT_EQ(diagram_t_count(result.diagram), 0u);
}

TEST(Trace, ReplayReproducesTheFinalDiagramExactly) {
    Rng rng(77);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + uniform_index(rng, 3);
        const Circuit circuit = testutil::random_clifford_t_circuit(n, 12, rng);
        const ZxDiagram original = circuit_to_diagram(circuit);
        const auto simplified = full_simplify(original);
        const ZxDiagram replayed = replay_trace(original, simplified.trace);
        EXPECT_TRUE(replayed.structurally_equal(simplified.diagram, 1e-9))
            << "round " << round;
    }
}

TEST(Trace, StepsRecordShrinkingDiagram) {
    Rng rng(55);
    const Circuit circuit = testutil::random_clifford_t_circuit(3, 12, rng);
    const auto simplified = full_simplify(circuit_to_diagram(circuit));
    for (const auto& step : simplified.trace.steps) {
        if (step.rule == "color") continue;
        if (step.rule == "pivot_gadget") {
            // unfuse adds two vertices, the pivot removes two
            EXPECT_EQ(step.vertices_after, step.vertices_before);
            continue;
        }
        EXPECT_LT(step.vertices_after, step.vertices_before) << step.rule;
    }
}

TEST(FullSimplify, TerminatesOnLargerCircuits) {
    Rng rng(303);
    const Circuit circuit = testutil::random_clifford_t_circuit(6, 60, rng);
    const ZxDiagram original = circuit_to_diagram(circuit);
    const auto simplified = full_simplify(original);
    EXPECT_LT(simplified.diagram.num_vertices(), original.num_vertices());
}

TEST(FullSimplify, PhasesStayExactRationals) {
    Rng rng(404);
    const Circuit circuit = testutil::random_clifford_t_circuit(4, 20, rng);
    const auto simplified = full_simplify(circuit_to_diagram(circuit));
    for (const auto& [id, vert] : simplified.diagram.vertices()) {
        if (vert.kind == VertexKind::Boundary) continue;
        // every phase in the Clifford+T family has denominator 1, 2 or 4
        EXPECT_TRUE(vert.phase.den() == 1 || vert.phase.den() == 2 || vert.phase.den() == 4)
            << vert.phase.str();
    }
}
