#pragma once

#include <cstddef>
#include <vector>

#include "qpos/qsim.hpp"

namespace qpos {

// Explicit Clifford+T Grover circuit. The multi-controlled phase at the
// heart of the oracle and the diffusion is realized as a Toffoli AND-ladder
// over clean ancillas (compute, CZ, uncompute), with every Toffoli expanded
// through the standard 7-T CCZ construction. For n <= 3 no ancillas are
// needed. Ancillas occupy the high qubit indices and return to |0> exactly.
struct GroverBuild {
    Circuit circuit;
    std::size_t data_qubits = 0;
    std::size_t ancilla_qubits = 0;
    std::size_t iterations = 0;
    std::vector<std::size_t> marked;
};

inline constexpr std::size_t kGroverBuildQubitCap = 8;

GroverBuild build_grover_circuit(std::size_t n_qubits, const MarkPredicate& mark,
                                 std::size_t iterations);

// floor(pi / (4 asin(sqrt(M/N)))), the standard near-optimal iteration count.
std::size_t optimal_grover_iterations(std::size_t n_qubits, std::size_t marked_count);

// Runs the build on |0...0> and returns the data-register amplitudes.
// Throws if any ancilla fails to return to |0> (they cannot, by
// construction, but the check keeps the comparison honest).
std::vector<Amplitude> simulate_data_register(const GroverBuild& build);

}  // namespace qpos
