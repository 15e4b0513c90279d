#include "qpos/grover_build.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpos {

namespace {

void emit_ccx(Circuit& c, std::size_t a, std::size_t b, std::size_t t) {
    c.append(Gate::single(GateKind::H, t));
    append_ccz_clifford_t(c, a, b, t);
    c.append(Gate::single(GateKind::H, t));
}

// Phase flip of |1...1> over `qubits`, using the AND-ladder ancillas
// starting at `ancilla_base` for four or more qubits.
void emit_controlled_z(Circuit& c, const std::vector<std::size_t>& qubits,
                       std::size_t ancilla_base) {
    const std::size_t m = qubits.size();
    if (m == 1) {
        c.append(Gate::single(GateKind::Z, qubits[0]));
        return;
    }
    if (m == 2) {
        c.append(Gate::cz(qubits[0], qubits[1]));
        return;
    }
    if (m == 3) {
        append_ccz_clifford_t(c, qubits[0], qubits[1], qubits[2]);
        return;
    }
    // a0 = q0 AND q1, a_i = a_{i-1} AND q_{i+1}, then CZ against the last
    // data qubit, then uncompute the ladder.
    const std::size_t ladder = m - 2;
    emit_ccx(c, qubits[0], qubits[1], ancilla_base);
    for (std::size_t i = 1; i < ladder; ++i) {
        emit_ccx(c, qubits[i + 1], ancilla_base + i - 1, ancilla_base + i);
    }
    c.append(Gate::cz(ancilla_base + ladder - 1, qubits[m - 1]));
    for (std::size_t i = ladder; i-- > 1;) {
        emit_ccx(c, qubits[i + 1], ancilla_base + i - 1, ancilla_base + i);
    }
    emit_ccx(c, qubits[0], qubits[1], ancilla_base);
}

// -I on the whole register: ZXZX on one qubit.
void emit_global_minus(Circuit& c) {
    c.append(Gate::single(GateKind::Z, 0));
    c.append(Gate::single(GateKind::X, 0));
    c.append(Gate::single(GateKind::Z, 0));
    c.append(Gate::single(GateKind::X, 0));
}

}  // namespace

std::size_t optimal_grover_iterations(std::size_t n_qubits, std::size_t marked_count) {
    const double total = static_cast<double>(std::size_t{1} << n_qubits);
    if (marked_count == 0 || static_cast<double>(marked_count) >= total) return 0;
    const double theta = std::asin(std::sqrt(static_cast<double>(marked_count) / total));
    return static_cast<std::size_t>(std::floor(std::numbers::pi / (4.0 * theta)));
}

GroverBuild build_grover_circuit(std::size_t n_qubits, const MarkPredicate& mark,
                                 std::size_t iterations) {
    if (n_qubits < 1 || n_qubits > kGroverBuildQubitCap) {
        throw std::invalid_argument("grover build: qubit count must be in [1, " +
                                    std::to_string(kGroverBuildQubitCap) + "]");
    }

    GroverBuild build;
    build.data_qubits = n_qubits;
    build.iterations = iterations;
    build.ancilla_qubits = n_qubits >= 4 ? n_qubits - 2 : 0;
    build.circuit.n_qubits = n_qubits + build.ancilla_qubits;

    const std::size_t dim = std::size_t{1} << n_qubits;
    for (std::size_t j = 0; j < dim; ++j) {
        if (mark(j)) build.marked.push_back(j);
    }

    Circuit& c = build.circuit;
    std::vector<std::size_t> all_data(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) all_data[q] = q;

    for (std::size_t q = 0; q < n_qubits; ++q) c.append(Gate::single(GateKind::H, q));

    for (std::size_t it = 0; it < iterations; ++it) {
        // oracle: one X-conjugated controlled-Z per marked basis state
        for (std::size_t j : build.marked) {
            for (std::size_t q = 0; q < n_qubits; ++q) {
                if (!((j >> q) & 1)) c.append(Gate::single(GateKind::X, q));
            }
            emit_controlled_z(c, all_data, n_qubits);
            for (std::size_t q = 0; q < n_qubits; ++q) {
                if (!((j >> q) & 1)) c.append(Gate::single(GateKind::X, q));
            }
        }
        // diffusion: the X-conjugated controlled-Z flips |0...0>, which is
        // minus the inversion about the mean; ZXZX restores the sign
        for (std::size_t q = 0; q < n_qubits; ++q) c.append(Gate::single(GateKind::H, q));
        for (std::size_t q = 0; q < n_qubits; ++q) c.append(Gate::single(GateKind::X, q));
        emit_controlled_z(c, all_data, n_qubits);
        for (std::size_t q = 0; q < n_qubits; ++q) c.append(Gate::single(GateKind::X, q));
        for (std::size_t q = 0; q < n_qubits; ++q) c.append(Gate::single(GateKind::H, q));
        emit_global_minus(c);
    }
    return build;
}

std::vector<Amplitude> simulate_data_register(const GroverBuild& build) {
    StateVector state(build.circuit.n_qubits);
    state = apply_circuit(std::move(state), build.circuit);

    const std::size_t data_dim = std::size_t{1} << build.data_qubits;
    std::vector<Amplitude> data(data_dim);
    double leaked = 0.0;
    for (std::size_t j = 0; j < state.dimension(); ++j) {
        if (j < data_dim) {
            data[j] = state.amplitude(j);
        } else {
            leaked += std::norm(state.amplitude(j));
        }
    }
    if (leaked > 1e-18) {
        throw std::logic_error("grover build: ancilla qubits did not return to |0>");
    }
    return data;
}

}  // namespace qpos
