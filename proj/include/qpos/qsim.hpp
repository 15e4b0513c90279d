#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qpos/rng.hpp"

namespace qpos {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kDefaultQubitCap = 20;

// Dense statevector over 2^n basis states, qubit 0 = least significant bit
// of the basis index.
class StateVector {
  public:
    explicit StateVector(std::size_t n_qubits, std::size_t qubit_cap = kDefaultQubitCap);
    static StateVector uniform(std::size_t n_qubits, std::size_t qubit_cap = kDefaultQubitCap);

    std::size_t num_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    std::vector<Amplitude>& amplitudes() { return amps_; }
    Amplitude amplitude(std::size_t basis) const { return amps_[basis]; }

    double norm_squared() const;

    // In-place primitives; the value-typed free functions below are the
    // public face.
    void apply_single(std::size_t target, Amplitude u00, Amplitude u01, Amplitude u10,
                      Amplitude u11);
    void phase_single(std::size_t target, Amplitude phase0, Amplitude phase1);
    void apply_cnot(std::size_t control, std::size_t target);
    void apply_cz(std::size_t a, std::size_t b);
    void apply_ccz(std::size_t a, std::size_t b, std::size_t c);

  private:
    std::size_t n_qubits_;
    std::vector<Amplitude> amps_;
};

enum class GateKind { H, X, Z, S, Sdg, T, Tdg, Rz, CNOT, CZ, CCZ };

struct Gate {
    GateKind kind;
    std::vector<std::size_t> qubits;  // target last for controlled gates
    double theta = 0.0;               // Rz only

    static Gate single(GateKind kind, std::size_t q);
    static Gate rz(std::size_t q, double theta);
    static Gate cnot(std::size_t control, std::size_t target);
    static Gate cz(std::size_t a, std::size_t b);
    static Gate ccz(std::size_t a, std::size_t b, std::size_t c);
};

std::string gate_name(GateKind kind);

struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;

    void append(Gate gate);  // validates qubit indices
};

// Applies one gate; norm is preserved to 1e-12. Pass by value so callers
// can move a state in and reuse its storage.
StateVector apply_gate(StateVector state, const Gate& gate);
StateVector apply_circuit(StateVector state, const Circuit& circuit);

// Boolean predicate over basis indices [0, 2^n).
using MarkPredicate = std::function<bool(std::size_t)>;

// Mark set {j : values[j] > values[threshold_index]}; indices past
// values.size() (power-of-two padding) are never marked.
MarkPredicate threshold_mark(const std::vector<double>& values, std::size_t threshold_index);

// One Grover step: phase-flip the marked basis states, then invert every
// amplitude about the mean.
StateVector grover_iteration(StateVector state, const MarkPredicate& mark);

// Samples a basis index with probability |amp|^2, consuming one canonical
// draw from the generator.
std::size_t measure(const StateVector& state, Rng& rng);

// Exact per-kind gate counts. t_count adds Rz gates whose angle is an odd
// multiple of pi/4.
std::map<std::string, std::size_t> gate_histogram(const Circuit& circuit);
std::size_t t_count(const Circuit& circuit);

// Appends the standard 7-T realization of CCZ (13 gates, exact including
// global phase).
void append_ccz_clifford_t(Circuit& circuit, std::size_t a, std::size_t b, std::size_t c);

// Circuit text format: one gate per line, "GATE q0 [q1 [q2]] [theta]",
// '#' starts a comment. Round-trips through write/read.
void write_circuit(const Circuit& circuit, std::ostream& out);
Circuit read_circuit(std::istream& in);
Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& circuit, const std::string& path);

}  // namespace qpos
