#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qpos {

// Ordered tag inventory plus the word -> permitted-tags lexicon.
struct TagSet {
    std::vector<std::string> tags;
    std::map<std::string, std::set<std::string>> lexicon;

    std::size_t size() const { return tags.size(); }
    // Index of a tag label; throws std::invalid_argument if unknown.
    std::size_t index_of(const std::string& tag) const;
};

struct LexiconLookup {
    std::set<std::string> tags;
    bool open_class_fallback = false;  // true when the word was not in the lexicon
};

// Permitted tags for a word. Unknown words fall back to the full tag set
// with the fallback flag raised.
LexiconLookup lexicon_tags(const TagSet& tagset, const std::string& word);

// First-order HMM: initial distribution pi (K), transition table trans
// (K x K, row = from-tag), emission table emit (K x N, row = tag).
struct HmmModel {
    TagSet tagset;
    std::vector<std::string> vocab;
    std::vector<double> pi;
    std::vector<std::vector<double>> trans;
    std::vector<std::vector<double>> emit;

    std::size_t num_tags() const { return tagset.size(); }
    std::size_t vocab_size() const { return vocab.size(); }
    std::size_t word_index(const std::string& word) const;  // npos if unknown

    // Checks shape, [0,1] bounds and row-stochasticity (1e-9). Throws
    // std::invalid_argument on violation.
    void validate() const;

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

struct TaggedCorpus {
    // sentences of (word, tag) pairs; no sentence may be empty
    std::vector<std::vector<std::pair<std::string, std::string>>> sentences;
};

// Parses the corpus text format: one "word<TAB>tag" per line, blank line
// between sentences. Reports the offending line number on failure.
TaggedCorpus parse_corpus(std::istream& in);
TaggedCorpus load_corpus(const std::string& path);

// Word-index sequence to decode. `unknown_word` marks an out-of-vocabulary
// token; its emission factor is the uniform 1/N stand-in.
struct Observation {
    std::vector<std::size_t> words;

    static constexpr std::size_t unknown_word = std::numeric_limits<std::size_t>::max();
    std::size_t length() const { return words.size(); }
};

// Maximum-likelihood training with add-alpha smoothing. With alpha = 0 a
// tag that never starts a transition (or never emits) would produce a zero
// row, which is rejected.
HmmModel train_mle(const TaggedCorpus& corpus, double alpha);

double emission_factor(const HmmModel& model, std::size_t tag, std::size_t word);

// Joint probability pi[t1]*B[t1][y1] * prod_i A[t_{i-1}][t_i]*B[t_i][y_i].
double sequence_probability(const HmmModel& model, const Observation& obs,
                            const std::vector<std::size_t>& tags);
// Same quantity in log space (returns -inf for zero-probability paths).
double sequence_log_probability(const HmmModel& model, const Observation& obs,
                                const std::vector<std::size_t>& tags);

struct BruteForceResult {
    std::vector<std::size_t> tags;
    double probability = 0.0;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1000000;

// Exhaustive argmax over all K^W tag sequences; ties go to the
// lexicographically smallest index sequence. Throws std::invalid_argument
// when K^W exceeds the cap.
BruteForceResult brute_force_best_sequence(const HmmModel& model, const Observation& obs,
                                           std::size_t enumeration_cap = kDefaultEnumerationCap);

// Model file round-trip (JSON, 17 significant digits).
void save_model(const HmmModel& model, const std::string& path);
HmmModel load_model(const std::string& path);
void write_model(const HmmModel& model, std::ostream& out);
HmmModel read_model(std::istream& in);

}  // namespace qpos
