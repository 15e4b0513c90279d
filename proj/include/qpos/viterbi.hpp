#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qpos/hmm.hpp"

namespace qpos {

enum class ScoreSpace { linear, log };

// Dynamic-programming grid: phi1 holds best-path scores, phi2 the argmax
// backpointers. Column 0 of phi2 is the sentinel 0.
struct Trellis {
    std::vector<std::vector<double>> phi1;       // K x W
    std::vector<std::vector<std::size_t>> phi2;  // K x W
    ScoreSpace space = ScoreSpace::linear;

    std::size_t num_tags() const { return phi1.size(); }
    std::size_t num_words() const { return phi1.empty() ? 0 : phi1[0].size(); }
};

struct TagPath {
    std::vector<std::size_t> states;
    double score = 0.0;  // in the trellis score space
};

struct ViterbiResult {
    TagPath path;
    Trellis trellis;
    // number of phi1[k,j-1]*A[k][i]*B[i][y_j] candidate products formed;
    // exactly K^2 * (W-1)
    std::size_t candidate_evaluations = 0;
};

// Classical Viterbi decoder. Ties in any max/argmax go to the smallest tag
// index so results are comparable across decoders.
ViterbiResult classical_viterbi(const HmmModel& model, const Observation& obs,
                                ScoreSpace space = ScoreSpace::linear);

// Follows phi2 pointers from the final state z_W back to column 1.
std::vector<std::size_t> backtrace(const Trellis& trellis, std::size_t z_last);

// Debug/golden dump: TSV rows (j, i, phi1, phi2).
void dump_trellis(const Trellis& trellis, std::ostream& out);

}  // namespace qpos
