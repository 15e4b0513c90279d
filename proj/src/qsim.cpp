#include "qpos/qsim.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qpos {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require(bool cond, const std::string& message) {
    if (!cond) throw std::invalid_argument(message);
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits, std::size_t qubit_cap) : n_qubits_(n_qubits) {
    require(n_qubits >= 1, "statevector: need at least one qubit");
    require(n_qubits <= qubit_cap,
            "statevector: " + std::to_string(n_qubits) + " qubits exceeds cap of " +
                std::to_string(qubit_cap));
    amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amps_[0] = Amplitude{1.0, 0.0};
}

StateVector StateVector::uniform(std::size_t n_qubits, std::size_t qubit_cap) {
    StateVector state(n_qubits, qubit_cap);
    const double a = 1.0 / std::sqrt(static_cast<double>(state.dimension()));
    for (auto& amp : state.amps_) amp = Amplitude{a, 0.0};
    return state;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& amp : amps_) total += std::norm(amp);
    return total;
}

void StateVector::apply_single(std::size_t target, Amplitude u00, Amplitude u01, Amplitude u10,
                               Amplitude u11) {
    require(target < n_qubits_, "gate: qubit index out of range");
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const Amplitude a0 = amps_[i0];
            const Amplitude a1 = amps_[i1];
            amps_[i0] = u00 * a0 + u01 * a1;
            amps_[i1] = u10 * a0 + u11 * a1;
        }
    }
}

void StateVector::phase_single(std::size_t target, Amplitude phase0, Amplitude phase1) {
    require(target < n_qubits_, "gate: qubit index out of range");
    const std::size_t mask = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] *= (i & mask) ? phase1 : phase0;
    }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    require(control < n_qubits_ && target < n_qubits_, "gate: qubit index out of range");
    require(control != target, "gate: duplicate qubit index");
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
    require(a < n_qubits_ && b < n_qubits_, "gate: qubit index out of range");
    require(a != b, "gate: duplicate qubit index");
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
    }
}

void StateVector::apply_ccz(std::size_t a, std::size_t b, std::size_t c) {
    require(a < n_qubits_ && b < n_qubits_ && c < n_qubits_, "gate: qubit index out of range");
    require(a != b && a != c && b != c, "gate: duplicate qubit index");
    const std::size_t mask =
        (std::size_t{1} << a) | (std::size_t{1} << b) | (std::size_t{1} << c);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
    }
}

Gate Gate::single(GateKind kind, std::size_t q) { return Gate{kind, {q}, 0.0}; }
Gate Gate::rz(std::size_t q, double theta) { return Gate{GateKind::Rz, {q}, theta}; }
Gate Gate::cnot(std::size_t control, std::size_t target) {
    return Gate{GateKind::CNOT, {control, target}, 0.0};
}
Gate Gate::cz(std::size_t a, std::size_t b) { return Gate{GateKind::CZ, {a, b}, 0.0}; }
Gate Gate::ccz(std::size_t a, std::size_t b, std::size_t c) {
    return Gate{GateKind::CCZ, {a, b, c}, 0.0};
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "TDG";
        case GateKind::Rz: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::CCZ: return "CCZ";
    }
    throw std::logic_error("unreachable gate kind");
}

namespace {

std::size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ: return 2;
        case GateKind::CCZ: return 3;
        default: return 1;
    }
}

void validate_gate(const Gate& gate, std::size_t n_qubits) {
    require(gate.qubits.size() == gate_arity(gate.kind),
            "gate " + gate_name(gate.kind) + ": wrong number of qubits");
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
        require(gate.qubits[i] < n_qubits, "gate " + gate_name(gate.kind) + ": qubit " +
                                               std::to_string(gate.qubits[i]) + " out of range");
        for (std::size_t j = i + 1; j < gate.qubits.size(); ++j) {
            require(gate.qubits[i] != gate.qubits[j],
                    "gate " + gate_name(gate.kind) + ": duplicate qubit index");
        }
    }
}

}  // namespace

void Circuit::append(Gate gate) {
    validate_gate(gate, n_qubits);
    gates.push_back(std::move(gate));
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    validate_gate(gate, state.num_qubits());
    using std::polar;
    switch (gate.kind) {
        case GateKind::H:
            state.apply_single(gate.qubits[0], kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
            break;
        case GateKind::X:
            state.apply_single(gate.qubits[0], 0.0, 1.0, 1.0, 0.0);
            break;
        case GateKind::Z:
            state.phase_single(gate.qubits[0], 1.0, -1.0);
            break;
        case GateKind::S:
            state.phase_single(gate.qubits[0], 1.0, Amplitude{0.0, 1.0});
            break;
        case GateKind::Sdg:
            state.phase_single(gate.qubits[0], 1.0, Amplitude{0.0, -1.0});
            break;
        case GateKind::T:
            state.phase_single(gate.qubits[0], 1.0, polar(1.0, std::numbers::pi / 4));
            break;
        case GateKind::Tdg:
            state.phase_single(gate.qubits[0], 1.0, polar(1.0, -std::numbers::pi / 4));
            break;
        case GateKind::Rz:
            // convention: diag(1, e^{i theta}) so T == Rz(pi/4) exactly
            state.phase_single(gate.qubits[0], 1.0, polar(1.0, gate.theta));
            break;
        case GateKind::CNOT:
            state.apply_cnot(gate.qubits[0], gate.qubits[1]);
            break;
        case GateKind::CZ:
            state.apply_cz(gate.qubits[0], gate.qubits[1]);
            break;
        case GateKind::CCZ:
            state.apply_ccz(gate.qubits[0], gate.qubits[1], gate.qubits[2]);
            break;
    }
    return state;
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
    require(state.num_qubits() == circuit.n_qubits, "circuit/state qubit count mismatch");
    for (const auto& gate : circuit.gates) {
        state = apply_gate(std::move(state), gate);
    }
    return state;
}

MarkPredicate threshold_mark(const std::vector<double>& values, std::size_t threshold_index) {
    if (threshold_index >= values.size()) {
        throw std::invalid_argument("threshold_mark: index out of range");
    }
    const double threshold = values[threshold_index];
    return [values, threshold](std::size_t j) {
        return j < values.size() && values[j] > threshold;
    };
}

StateVector grover_iteration(StateVector state, const MarkPredicate& mark) {
    auto& amps = state.amplitudes();
    const std::size_t dim = amps.size();

    Amplitude mean{0.0, 0.0};
    for (std::size_t j = 0; j < dim; ++j) {
        if (mark(j)) amps[j] = -amps[j];
        mean += amps[j];
    }
    mean /= static_cast<double>(dim);
    for (auto& amp : amps) amp = 2.0 * mean - amp;
    return state;
}

std::size_t measure(const StateVector& state, Rng& rng) {
    const double u = canonical_unit(rng) * state.norm_squared();
    double cumulative = 0.0;
    const auto& amps = state.amplitudes();
    for (std::size_t j = 0; j + 1 < amps.size(); ++j) {
        cumulative += std::norm(amps[j]);
        if (u < cumulative) return j;
    }
    return amps.size() - 1;
}

void append_ccz_clifford_t(Circuit& circuit, std::size_t a, std::size_t b, std::size_t c) {
    circuit.append(Gate::cnot(b, c));
    circuit.append(Gate::single(GateKind::Tdg, c));
    circuit.append(Gate::cnot(a, c));
    circuit.append(Gate::single(GateKind::T, c));
    circuit.append(Gate::cnot(b, c));
    circuit.append(Gate::single(GateKind::Tdg, c));
    circuit.append(Gate::cnot(a, c));
    circuit.append(Gate::single(GateKind::T, b));
    circuit.append(Gate::single(GateKind::T, c));
    circuit.append(Gate::cnot(a, b));
    circuit.append(Gate::single(GateKind::T, a));
    circuit.append(Gate::single(GateKind::Tdg, b));
    circuit.append(Gate::cnot(a, b));
}

std::map<std::string, std::size_t> gate_histogram(const Circuit& circuit) {
    std::map<std::string, std::size_t> counts;
    for (const auto& gate : circuit.gates) ++counts[gate_name(gate.kind)];
    return counts;
}

namespace {

bool is_odd_multiple_of_quarter_pi(double theta) {
    const double q = theta / (std::numbers::pi / 4);
    const double rounded = std::round(q);
    if (std::abs(q - rounded) > 1e-9) return false;
    const long long m = static_cast<long long>(rounded);
    return m % 2 != 0;
}

}  // namespace

std::size_t t_count(const Circuit& circuit) {
    std::size_t count = 0;
    for (const auto& gate : circuit.gates) {
        if (gate.kind == GateKind::T || gate.kind == GateKind::Tdg) {
            ++count;
        } else if (gate.kind == GateKind::Rz && is_odd_multiple_of_quarter_pi(gate.theta)) {
            ++count;
        }
    }
    return count;
}

void write_circuit(const Circuit& circuit, std::ostream& out) {
    out << "# qubits " << circuit.n_qubits << "\n";
    out.precision(17);
    for (const auto& gate : circuit.gates) {
        out << gate_name(gate.kind);
        for (std::size_t q : gate.qubits) out << ' ' << q;
        if (gate.kind == GateKind::Rz) out << ' ' << gate.theta;
        out << '\n';
    }
}

Circuit read_circuit(std::istream& in) {
    Circuit circuit;
    bool have_qubits = false;
    std::string line;
    std::size_t line_no = 0;
    std::size_t max_qubit = 0;
    std::vector<Gate> gates;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        std::string comment = hash == std::string::npos ? "" : line.substr(hash + 1);
        {
            // header comment "# qubits N" pins the register width
            std::istringstream cs(comment);
            std::string word;
            std::size_t n = 0;
            if (cs >> word >> n && word == "qubits") {
                circuit.n_qubits = n;
                have_qubits = true;
            }
        }
        std::istringstream ls(body);
        std::string name;
        if (!(ls >> name)) continue;
        Gate gate;
        if (name == "H") gate.kind = GateKind::H;
        else if (name == "X") gate.kind = GateKind::X;
        else if (name == "Z") gate.kind = GateKind::Z;
        else if (name == "S") gate.kind = GateKind::S;
        else if (name == "SDG") gate.kind = GateKind::Sdg;
        else if (name == "T") gate.kind = GateKind::T;
        else if (name == "TDG") gate.kind = GateKind::Tdg;
        else if (name == "RZ") gate.kind = GateKind::Rz;
        else if (name == "CNOT") gate.kind = GateKind::CNOT;
        else if (name == "CZ") gate.kind = GateKind::CZ;
        else if (name == "CCZ") gate.kind = GateKind::CCZ;
        else {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) +
                                        ": unknown gate \"" + name + "\"");
        }
        for (std::size_t i = 0; i < gate_arity(gate.kind); ++i) {
            std::size_t q = 0;
            if (!(ls >> q)) {
                throw std::invalid_argument("circuit line " + std::to_string(line_no) +
                                            ": missing qubit operand");
            }
            gate.qubits.push_back(q);
            max_qubit = std::max(max_qubit, q);
        }
        if (gate.kind == GateKind::Rz) {
            if (!(ls >> gate.theta)) {
                throw std::invalid_argument("circuit line " + std::to_string(line_no) +
                                            ": RZ needs an angle");
            }
        }
        std::string extra;
        if (ls >> extra) {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) +
                                        ": trailing token \"" + extra + "\"");
        }
        gates.push_back(std::move(gate));
    }
    if (!have_qubits) circuit.n_qubits = gates.empty() ? 0 : max_qubit + 1;
    for (auto& gate : gates) circuit.append(std::move(gate));
    return circuit;
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open circuit file: " + path);
    return read_circuit(in);
}

void save_circuit(const Circuit& circuit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open circuit file for writing: " + path);
    write_circuit(circuit, out);
}

}  // namespace qpos
