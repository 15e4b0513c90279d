#include "qpos/qmax.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpos {

ValueList::ValueList(std::vector<double> v) : values(std::move(v)) {
    if (values.empty()) throw std::invalid_argument("value list: need at least one value");
    for (double x : values) {
        if (!std::isfinite(x)) throw std::invalid_argument("value list: values must be finite");
    }
    std::size_t padded_size = 1;
    padded_qubits_ = 0;
    while (padded_size < values.size()) {
        padded_size <<= 1;
        ++padded_qubits_;
    }
    if (padded_qubits_ == 0) padded_qubits_ = 1;  // 1-qubit floor for the simulator
    padded_size = std::size_t{1} << padded_qubits_;
    padded_ = values;
    padded_.resize(padded_size, -std::numeric_limits<double>::infinity());
}

SearchBudget SearchBudget::for_size(std::size_t l) {
    const double dl = static_cast<double>(l);
    const double lg = std::log2(dl);
    const double raw = 22.5 * std::sqrt(dl) + 1.4 * lg * lg;
    SearchBudget budget;
    budget.max_queries = static_cast<std::size_t>(std::max(1.0, std::ceil(raw)));
    return budget;
}

void QueryLedger::merge(const QueryLedger& other) {
    oracle_queries += other.oracle_queries;
    threshold_updates += other.threshold_updates;
    iterations_log.insert(iterations_log.end(), other.iterations_log.begin(),
                          other.iterations_log.end());
}

std::size_t quantum_search(const ValueList& v, std::size_t r, std::size_t iterations, Rng& rng,
                           QueryLedger& ledger) {
    if (r >= v.size()) throw std::invalid_argument("quantum_search: threshold out of range");

    StateVector state = StateVector::uniform(v.padded_qubits());
    const MarkPredicate mark = threshold_mark(v.padded(), r);
    for (std::size_t i = 0; i < iterations; ++i) {
        state = grover_iteration(std::move(state), mark);
        ++ledger.oracle_queries;
    }
    ++ledger.oracle_queries;  // testing the measured candidate is a query too
    ledger.iterations_log.push_back(iterations);
    return measure(state, rng);
}

MaxResult quantum_prob_max(const ValueList& v, Rng& rng) {
    MaxResult result;
    const std::size_t l = v.size();

    std::size_t r = static_cast<std::size_t>(uniform_index(rng, l));
    double true_max = v.values[0];
    for (double x : v.values) true_max = std::max(true_max, x);
    if (v.values[r] == true_max) result.ledger.queries_at_first_success = 0;

    if (l > 1) {
        const SearchBudget budget = SearchBudget::for_size(l);
        const double sqrt_padded = std::sqrt(static_cast<double>(v.padded_size()));
        constexpr double lambda = 6.0 / 5.0;
        double m = 1.0;
        while (result.ledger.oracle_queries < budget.max_queries) {
            const std::size_t j =
                static_cast<std::size_t>(uniform_index(rng, static_cast<std::uint64_t>(std::ceil(m))));
            const std::size_t r1 = quantum_search(v, r, j, rng, result.ledger);
            if (r1 < l && v.values[r1] > v.values[r]) {
                r = r1;
                ++result.ledger.threshold_updates;
                if (v.values[r] == true_max && !result.ledger.queries_at_first_success) {
                    result.ledger.queries_at_first_success = result.ledger.oracle_queries;
                }
            }
            m = std::min(lambda * m, sqrt_padded);
        }
    }

    result.value = v.values[r];
    result.index = r;
    return result;
}

ClassicalMaxResult classical_max(const ValueList& v) {
    ClassicalMaxResult result;
    result.value = v.values[0];
    result.index = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        ++result.comparisons;
        if (v.values[i] > result.value) {
            result.value = v.values[i];
            result.index = i;
        }
    }
    return result;
}

}  // namespace qpos
