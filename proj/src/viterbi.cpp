#include "qpos/viterbi.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qpos {

namespace {

double initial_score(const HmmModel& model, std::size_t tag, std::size_t word,
                     ScoreSpace space) {
    const double p = model.pi[tag] * emission_factor(model, tag, word);
    return space == ScoreSpace::linear ? p : std::log(p);
}

// Association matches the quantum decoder's candidate construction so the
// two trellises can be compared bitwise on cells where the search succeeds.
double extend_score(const HmmModel& model, double prev, std::size_t from, std::size_t to,
                    std::size_t word, ScoreSpace space) {
    if (space == ScoreSpace::linear) {
        return prev * model.trans[from][to] * emission_factor(model, to, word);
    }
    return prev + std::log(model.trans[from][to] * emission_factor(model, to, word));
}

}  // namespace

ViterbiResult classical_viterbi(const HmmModel& model, const Observation& obs,
                                ScoreSpace space) {
    const std::size_t k = model.num_tags();
    const std::size_t w = obs.length();
    if (w == 0) throw std::invalid_argument("viterbi: empty observation");

    ViterbiResult result;
    result.trellis.space = space;
    result.trellis.phi1.assign(k, std::vector<double>(w, 0.0));
    result.trellis.phi2.assign(k, std::vector<std::size_t>(w, 0));

    auto& phi1 = result.trellis.phi1;
    auto& phi2 = result.trellis.phi2;

    for (std::size_t i = 0; i < k; ++i) {
        phi1[i][0] = initial_score(model, i, obs.words[0], space);
        phi2[i][0] = 0;  // sentinel; column 0 has no predecessor
    }

    for (std::size_t j = 1; j < w; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            double best = -std::numeric_limits<double>::infinity();
            std::size_t best_k = 0;
            for (std::size_t from = 0; from < k; ++from) {
                const double cand =
                    extend_score(model, phi1[from][j - 1], from, i, obs.words[j], space);
                ++result.candidate_evaluations;
                if (cand > best) {
                    best = cand;
                    best_k = from;
                }
            }
            phi1[i][j] = best;
            phi2[i][j] = best_k;
        }
    }

    std::size_t z_last = 0;
    double best_final = phi1[0][w - 1];
    for (std::size_t i = 1; i < k; ++i) {
        if (phi1[i][w - 1] > best_final) {
            best_final = phi1[i][w - 1];
            z_last = i;
        }
    }

    result.path.states = backtrace(result.trellis, z_last);
    result.path.score = best_final;
    return result;
}

std::vector<std::size_t> backtrace(const Trellis& trellis, std::size_t z_last) {
    const std::size_t k = trellis.num_tags();
    const std::size_t w = trellis.num_words();
    if (z_last >= k) throw std::invalid_argument("backtrace: final state out of range");

    std::vector<std::size_t> states(w, 0);
    states[w - 1] = z_last;
    for (std::size_t j = w - 1; j > 0; --j) {
        states[j - 1] = trellis.phi2[states[j]][j];
    }
    return states;
}

void dump_trellis(const Trellis& trellis, std::ostream& out) {
    out << "j\ti\tphi1\tphi2\n";
    const std::size_t k = trellis.num_tags();
    const std::size_t w = trellis.num_words();
    out.precision(17);
    for (std::size_t j = 0; j < w; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            out << j << '\t' << i << '\t' << trellis.phi1[i][j] << '\t' << trellis.phi2[i][j]
                << '\n';
        }
    }
}

}  // namespace qpos
