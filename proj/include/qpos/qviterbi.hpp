#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "qpos/hmm.hpp"
#include "qpos/qmax.hpp"
#include "qpos/viterbi.hpp"

namespace qpos {

struct QuantumViterbiResult {
    TagPath path;
    Trellis trellis;
    QueryLedger ledger;
    std::size_t max_calls = 0;  // quantum_prob_max invocations (retries included)
};

// Viterbi decoding with every per-cell max/argmax delegated to
// quantum_prob_max. Each cell's search runs `retries` times and keeps the
// best result (largest value, then smallest index); the final-column argmax
// goes through the same machinery. K = 1 cells still make the call so the
// ledger stays honest.
QuantumViterbiResult quantum_viterbi(const HmmModel& model, const Observation& obs, Rng& rng,
                                     std::size_t retries = 3);

struct StepCountReport {
    std::size_t tags = 0;
    std::size_t words = 0;
    std::size_t cells = 0;                  // T * (W - 1)
    std::size_t classical_evaluations = 0;  // T^2 * (W - 1)
    std::size_t quantum_oracle_queries = 0;
    std::size_t per_cell_budget = 0;        // ceil(22.5 sqrt(T) + 1.4 log2(T)^2)
    std::size_t analytic_query_bound = 0;   // cells * per_cell_budget

    // reference per-call T-gate figures and the derived totals
    std::size_t reference_unoptimized_per_call = 336;
    std::size_t reference_optimized_per_call = 166;
    std::size_t reference_unoptimized_total = 0;   // 336 * cells
    std::size_t reference_optimized_total = 0;     // 166 * cells
    std::size_t reference_printed_total = 6320;    // as printed in the source figures
    std::size_t reference_printed_per_call = 316;  // ditto
};

StepCountReport step_count_report(std::size_t tags, std::size_t words,
                                  const QueryLedger& ledger);

// Structured text rendering, including the flag on the inconsistent
// printed reference arithmetic.
void write_step_count_report(const StepCountReport& report, std::ostream& out);

}  // namespace qpos
