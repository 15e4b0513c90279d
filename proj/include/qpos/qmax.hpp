#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpos/qsim.hpp"
#include "qpos/rng.hpp"

namespace qpos {

// Candidate scores to maximize over. Internally padded to the next power
// of two with -inf sentinels so the uniform superposition is well-formed;
// sentinels can never satisfy the strict mark condition.
struct ValueList {
    std::vector<double> values;

    explicit ValueList(std::vector<double> v);
    std::size_t size() const { return values.size(); }
    std::size_t padded_size() const { return padded_.size(); }
    std::size_t padded_qubits() const { return padded_qubits_; }
    const std::vector<double>& padded() const { return padded_; }

  private:
    std::vector<double> padded_;
    std::size_t padded_qubits_ = 0;
};

// ceil(22.5 sqrt(l) + 1.4 log2(l)^2) oracle queries.
struct SearchBudget {
    std::size_t max_queries = 1;

    static SearchBudget for_size(std::size_t l);
};

struct QueryLedger {
    // one per Grover iteration, plus one verification query per search
    // round (the measured candidate is tested against the threshold)
    std::size_t oracle_queries = 0;
    std::size_t threshold_updates = 0;  // accepted improvements
    std::vector<std::size_t> iterations_log;  // Grover iterations per round
    // oracle_queries at the moment the true maximum was first held, when known
    std::optional<std::size_t> queries_at_first_success;

    void merge(const QueryLedger& other);
};

// One Grover round above threshold values[r]: uniform superposition,
// `iterations` marked-set amplifications, then a measurement. May return an
// unmarked index; the caller filters. Adds `iterations` + 1 oracle queries
// to the ledger.
std::size_t quantum_search(const ValueList& v, std::size_t r, std::size_t iterations, Rng& rng,
                           QueryLedger& ledger);

struct MaxResult {
    double value = 0.0;
    std::size_t index = 0;
    QueryLedger ledger;
};

// Threshold-raising maximum finding: random start, repeated quantum_search
// rounds with the BBHT schedule (m grows by 6/5 per failed round, capped at
// sqrt(l'), Grover iteration count drawn uniformly from [0, ceil(m))),
// until the query budget is spent. Succeeds (returns the true maximum) with
// probability >= 1/2.
MaxResult quantum_prob_max(const ValueList& v, Rng& rng);

struct ClassicalMaxResult {
    double value = 0.0;
    std::size_t index = 0;
    std::size_t comparisons = 0;  // exactly l - 1
};

// Linear scan baseline; smallest index wins ties.
ClassicalMaxResult classical_max(const ValueList& v);

}  // namespace qpos
