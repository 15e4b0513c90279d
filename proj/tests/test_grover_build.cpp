#include "qpos/grover_build.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace qpos;

namespace {

// Matrix-free reference: iterated grover_iteration on the uniform state.
std::vector<Amplitude> reference_state(std::size_t n, const MarkPredicate& mark,
                                       std::size_t iterations) {
    StateVector state = StateVector::uniform(n);
    for (std::size_t i = 0; i < iterations; ++i) {
        state = grover_iteration(std::move(state), mark);
    }
    return state.amplitudes();
}

}  // namespace

TEST(GroverBuild, TwoQubitsSingleIterationCertain) {
    const auto mark = [](std::size_t j) { return j == 3; };
    const GroverBuild build = build_grover_circuit(2, mark, 1);
    EXPECT_EQ(build.ancilla_qubits, 0u);
    const auto data = simulate_data_register(build);
    EXPECT_NEAR(std::norm(data[3]), 1.0, 1e-9);
}

TEST(GroverBuild, ZeroIterationsGivesUniformPreparation) {
    const auto mark = [](std::size_t j) { return j == 1; };
    const GroverBuild build = build_grover_circuit(3, mark, 0);
    const auto data = simulate_data_register(build);
    for (const auto& amp : data) {
        EXPECT_NEAR(std::abs(amp - Amplitude{1.0 / std::sqrt(8.0), 0.0}), 0.0, 1e-12);
    }
}

TEST(GroverBuild, MatchesMatrixFreeIterationForAllSmallSizes) {
    Rng rng(5);
    for (std::size_t n = 1; n <= 5; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        const std::size_t target = uniform_index(rng, dim);
        const auto mark = [target](std::size_t j) { return j == target; };
        const std::size_t iterations = optimal_grover_iterations(n, 1);
        const GroverBuild build = build_grover_circuit(n, mark, iterations);
        const auto data = simulate_data_register(build);
        const auto expected = reference_state(n, mark, iterations);
        EXPECT_LT(testutil::max_abs_difference(data, expected), 1e-9) << "n=" << n;
    }
}

TEST(GroverBuild, MultipleMarkedElementsSimulateCorrectly) {
    const auto mark = [](std::size_t j) { return j == 2 || j == 5; };
    const std::size_t iterations = optimal_grover_iterations(4, 2);
    const GroverBuild build = build_grover_circuit(4, mark, iterations);
    const auto data = simulate_data_register(build);
    const auto expected = reference_state(4, mark, iterations);
    EXPECT_LT(testutil::max_abs_difference(data, expected), 1e-9);
}

TEST(GroverBuild, FiveQubitReferenceBuildHas336TGates) {
    // 4 iterations, 2 ladder-built controlled-Z per iteration, 6 Toffolis
    // each: 48 Toffolis at 7 T-gates = 336
    const auto mark = [](std::size_t j) { return j == 31; };
    EXPECT_EQ(optimal_grover_iterations(5, 1), 4u);
    const GroverBuild build = build_grover_circuit(5, mark, 4);
    EXPECT_EQ(build.data_qubits, 5u);
    EXPECT_EQ(build.ancilla_qubits, 3u);
    EXPECT_EQ(t_count(build.circuit), 336u);

    const auto hist = gate_histogram(build.circuit);
    EXPECT_EQ(hist.at("T") + hist.at("TDG"), 336u);

    // success amplitude after 4 iterations: sin^2(9 theta), theta = asin(1/sqrt 32)
    const auto data = simulate_data_register(build);
    const double theta = std::asin(1.0 / std::sqrt(32.0));
    EXPECT_NEAR(std::norm(data[31]), std::pow(std::sin(9.0 * theta), 2.0), 1e-9);
    EXPECT_GT(std::norm(data[31]), 0.99);
}

TEST(GroverBuild, QubitCapEnforced) {
    const auto mark = [](std::size_t j) { return j == 0; };
    EXPECT_THROW(build_grover_circuit(9, mark, 1), std::invalid_argument);
    EXPECT_THROW(build_grover_circuit(0, mark, 1), std::invalid_argument);
}

TEST(OptimalIterations, StandardValues) {
    EXPECT_EQ(optimal_grover_iterations(2, 1), 1u);
    EXPECT_EQ(optimal_grover_iterations(5, 1), 4u);
    EXPECT_EQ(optimal_grover_iterations(3, 8), 0u);  // everything marked
    EXPECT_EQ(optimal_grover_iterations(3, 0), 0u);  // nothing marked
}
