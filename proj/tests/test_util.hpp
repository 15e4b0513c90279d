#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qpos/hmm.hpp"
#include "qpos/qsim.hpp"
#include "qpos/rng.hpp"
#include "qpos/zx/tensor.hpp"

namespace qpos::testutil {

inline std::vector<double> random_distribution(std::size_t n, Rng& rng) {
    std::vector<double> row(n);
    double total = 0.0;
    for (double& x : row) {
        x = 0.05 + canonical_unit(rng);
        total += x;
    }
    for (double& x : row) x /= total;
    return row;
}

inline HmmModel random_model(std::size_t k, std::size_t n, Rng& rng) {
    HmmModel model;
    for (std::size_t i = 0; i < k; ++i) model.tagset.tags.push_back("t" + std::to_string(i));
    for (std::size_t w = 0; w < n; ++w) model.vocab.push_back("w" + std::to_string(w));
    model.pi = random_distribution(k, rng);
    for (std::size_t i = 0; i < k; ++i) {
        model.trans.push_back(random_distribution(k, rng));
        model.emit.push_back(random_distribution(n, rng));
    }
    model.validate();
    return model;
}

inline Observation random_observation(std::size_t vocab_size, std::size_t w, Rng& rng) {
    Observation obs;
    for (std::size_t i = 0; i < w; ++i) {
        obs.words.push_back(static_cast<std::size_t>(uniform_index(rng, vocab_size)));
    }
    return obs;
}

// Full unitary of a circuit by columns, laid out in the boundary-tensor
// convention: data[in | (out << n)] = <out|U|in>.
inline std::vector<std::complex<double>> circuit_unitary(const Circuit& circuit) {
    const std::size_t dim = std::size_t{1} << circuit.n_qubits;
    std::vector<std::complex<double>> data(dim * dim);
    for (std::size_t in = 0; in < dim; ++in) {
        StateVector state(circuit.n_qubits);
        auto& amps = state.amplitudes();
        amps[0] = 0.0;
        amps[in] = 1.0;
        state = apply_circuit(std::move(state), circuit);
        for (std::size_t out = 0; out < dim; ++out) {
            data[in | (out << circuit.n_qubits)] = state.amplitude(out);
        }
    }
    return data;
}

// Random circuit over the Clifford+T kinds (H, X, Z, S, Sdg, T, Tdg, CNOT,
// CZ, CCZ when room permits).
inline Circuit random_clifford_t_circuit(std::size_t n_qubits, std::size_t n_gates, Rng& rng) {
    Circuit circuit;
    circuit.n_qubits = n_qubits;
    for (std::size_t g = 0; g < n_gates; ++g) {
        const std::size_t kinds = n_qubits >= 3 ? 10 : (n_qubits >= 2 ? 9 : 7);
        const std::size_t pick = static_cast<std::size_t>(uniform_index(rng, kinds));
        const std::size_t q0 = static_cast<std::size_t>(uniform_index(rng, n_qubits));
        std::size_t q1 = q0, q2 = q0;
        if (n_qubits >= 2) {
            while (q1 == q0) q1 = static_cast<std::size_t>(uniform_index(rng, n_qubits));
        }
        if (n_qubits >= 3) {
            while (q2 == q0 || q2 == q1) {
                q2 = static_cast<std::size_t>(uniform_index(rng, n_qubits));
            }
        }
        switch (pick) {
            case 0: circuit.append(Gate::single(GateKind::H, q0)); break;
            case 1: circuit.append(Gate::single(GateKind::X, q0)); break;
            case 2: circuit.append(Gate::single(GateKind::Z, q0)); break;
            case 3: circuit.append(Gate::single(GateKind::S, q0)); break;
            case 4: circuit.append(Gate::single(GateKind::Sdg, q0)); break;
            case 5: circuit.append(Gate::single(GateKind::T, q0)); break;
            case 6: circuit.append(Gate::single(GateKind::Tdg, q0)); break;
            case 7: circuit.append(Gate::cnot(q0, q1)); break;
            case 8: circuit.append(Gate::cz(q0, q1)); break;
            case 9: circuit.append(Gate::ccz(q0, q1, q2)); break;
        }
    }
    return circuit;
}

inline double max_abs_difference(const std::vector<std::complex<double>>& a,
                                 const std::vector<std::complex<double>>& b) {
    double max_dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        max_dev = std::max(max_dev, std::abs(a[i] - b[i]));
    }
    return max_dev;
}

}  // namespace qpos::testutil
