#include "qpos/hmm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qpos {

namespace {

constexpr double kRowSumTolerance = 1e-9;

void check_probability_row(const std::vector<double>& row, const std::string& what) {
    double sum = 0.0;
    for (double p : row) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(what + ": entry " + std::to_string(p) +
                                        " outside [0,1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw std::invalid_argument(what + ": row sums to " + std::to_string(sum));
    }
}

}  // namespace

std::size_t TagSet::index_of(const std::string& tag) const {
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (tags[i] == tag) return i;
    }
    throw std::invalid_argument("unknown tag: " + tag);
}

LexiconLookup lexicon_tags(const TagSet& tagset, const std::string& word) {
    LexiconLookup out;
    auto it = tagset.lexicon.find(word);
    if (it != tagset.lexicon.end()) {
        out.tags = it->second;
        return out;
    }
    // open-class fallback: every tag is permitted
    out.open_class_fallback = true;
    out.tags.insert(tagset.tags.begin(), tagset.tags.end());
    return out;
}

std::size_t HmmModel::word_index(const std::string& word) const {
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (vocab[i] == word) return i;
    }
    return npos;
}

void HmmModel::validate() const {
    const std::size_t k = num_tags();
    const std::size_t n = vocab_size();
    if (k == 0) throw std::invalid_argument("model: empty tag set");
    {
        std::set<std::string> unique(tagset.tags.begin(), tagset.tags.end());
        if (unique.size() != k) throw std::invalid_argument("model: duplicate tag labels");
    }
    for (const auto& [word, allowed] : tagset.lexicon) {
        for (const auto& tag : allowed) {
            if (std::find(tagset.tags.begin(), tagset.tags.end(), tag) == tagset.tags.end()) {
                throw std::invalid_argument("lexicon tag not in tag set: " + tag + " (" + word + ")");
            }
        }
    }
    if (pi.size() != k) throw std::invalid_argument("model: pi size != K");
    check_probability_row(pi, "pi");
    if (trans.size() != k) throw std::invalid_argument("model: trans rows != K");
    for (std::size_t i = 0; i < k; ++i) {
        if (trans[i].size() != k) throw std::invalid_argument("model: trans row size != K");
        check_probability_row(trans[i], "trans[" + tagset.tags[i] + "]");
    }
    if (emit.size() != k) throw std::invalid_argument("model: emit rows != K");
    for (std::size_t i = 0; i < k; ++i) {
        if (emit[i].size() != n) throw std::invalid_argument("model: emit row size != N");
        check_probability_row(emit[i], "emit[" + tagset.tags[i] + "]");
    }
}

TaggedCorpus parse_corpus(std::istream& in) {
    TaggedCorpus corpus;
    std::vector<std::pair<std::string, std::string>> sentence;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (!sentence.empty()) {
                corpus.sentences.push_back(std::move(sentence));
                sentence.clear();
            }
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw std::invalid_argument("corpus line " + std::to_string(line_no) +
                                        ": expected \"word<TAB>tag\", got \"" + line + "\"");
        }
        sentence.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
    return corpus;
}

TaggedCorpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    return parse_corpus(in);
}

HmmModel train_mle(const TaggedCorpus& corpus, double alpha) {
    if (corpus.sentences.empty()) throw std::invalid_argument("train: empty corpus");
    if (alpha < 0.0) throw std::invalid_argument("train: alpha must be >= 0");

    // Collect tag and word inventories in first-seen order.
    std::vector<std::string> tags;
    std::vector<std::string> vocab;
    std::map<std::string, std::size_t> tag_idx;
    std::map<std::string, std::size_t> word_idx;
    for (const auto& sentence : corpus.sentences) {
        if (sentence.empty()) throw std::invalid_argument("train: empty sentence in corpus");
        for (const auto& [word, tag] : sentence) {
            if (tag_idx.emplace(tag, tags.size()).second) tags.push_back(tag);
            if (word_idx.emplace(word, vocab.size()).second) vocab.push_back(word);
        }
    }
    const std::size_t k = tags.size();
    const std::size_t n = vocab.size();

    std::vector<double> pi_count(k, 0.0);
    std::vector<std::vector<double>> trans_count(k, std::vector<double>(k, 0.0));
    std::vector<std::vector<double>> emit_count(k, std::vector<double>(n, 0.0));
    HmmModel model;
    model.tagset.tags = tags;
    for (const auto& sentence : corpus.sentences) {
        std::size_t prev = HmmModel::npos;
        for (const auto& [word, tag] : sentence) {
            const std::size_t t = tag_idx.at(tag);
            const std::size_t w = word_idx.at(word);
            model.tagset.lexicon[word].insert(tag);
            emit_count[t][w] += 1.0;
            if (prev == HmmModel::npos) {
                pi_count[t] += 1.0;
            } else {
                trans_count[prev][t] += 1.0;
            }
            prev = t;
        }
    }

    auto normalize = [&](std::vector<double>& row, const std::string& what) {
        double total = 0.0;
        for (double& c : row) {
            c += alpha;
            total += c;
        }
        if (total <= 0.0) {
            throw std::invalid_argument("train: " + what +
                                        " has no observations and alpha = 0 (zero row)");
        }
        for (double& c : row) c /= total;
    };

    normalize(pi_count, "initial-tag distribution");
    for (std::size_t i = 0; i < k; ++i) {
        normalize(trans_count[i], "transition row for tag " + tags[i]);
        normalize(emit_count[i], "emission row for tag " + tags[i]);
    }

    model.vocab = std::move(vocab);
    model.pi = std::move(pi_count);
    model.trans = std::move(trans_count);
    model.emit = std::move(emit_count);
    model.validate();
    return model;
}

double emission_factor(const HmmModel& model, std::size_t tag, std::size_t word) {
    if (word == Observation::unknown_word) {
        return 1.0 / static_cast<double>(model.vocab_size());
    }
    return model.emit[tag][word];
}

namespace {

void check_observation(const HmmModel& model, const Observation& obs) {
    if (obs.words.empty()) throw std::invalid_argument("observation: empty word sequence");
    for (std::size_t w : obs.words) {
        if (w != Observation::unknown_word && w >= model.vocab_size()) {
            throw std::invalid_argument("observation: word index out of range");
        }
    }
}

}  // namespace

double sequence_probability(const HmmModel& model, const Observation& obs,
                            const std::vector<std::size_t>& tags) {
    check_observation(model, obs);
    if (tags.size() != obs.words.size()) {
        throw std::invalid_argument("sequence_probability: |tags| != |words|");
    }
    double p = model.pi[tags[0]] * emission_factor(model, tags[0], obs.words[0]);
    for (std::size_t i = 1; i < tags.size(); ++i) {
        p *= model.trans[tags[i - 1]][tags[i]] * emission_factor(model, tags[i], obs.words[i]);
    }
    return p;
}

double sequence_log_probability(const HmmModel& model, const Observation& obs,
                                const std::vector<std::size_t>& tags) {
    check_observation(model, obs);
    if (tags.size() != obs.words.size()) {
        throw std::invalid_argument("sequence_log_probability: |tags| != |words|");
    }
    double lp = std::log(model.pi[tags[0]]) +
                std::log(emission_factor(model, tags[0], obs.words[0]));
    for (std::size_t i = 1; i < tags.size(); ++i) {
        lp += std::log(model.trans[tags[i - 1]][tags[i]]) +
              std::log(emission_factor(model, tags[i], obs.words[i]));
    }
    return lp;
}

BruteForceResult brute_force_best_sequence(const HmmModel& model, const Observation& obs,
                                           std::size_t enumeration_cap) {
    check_observation(model, obs);
    const std::size_t k = model.num_tags();
    const std::size_t w = obs.words.size();

    double total = 1.0;
    for (std::size_t i = 0; i < w; ++i) {
        total *= static_cast<double>(k);
        if (total > static_cast<double>(enumeration_cap)) {
            throw std::invalid_argument("brute force: K^W exceeds enumeration cap of " +
                                        std::to_string(enumeration_cap));
        }
    }

    // Lexicographic enumeration; strict > keeps the smallest sequence on ties.
    std::vector<std::size_t> current(w, 0);
    BruteForceResult best;
    best.tags = current;
    best.probability = sequence_probability(model, obs, current);
    while (true) {
        std::size_t pos = w;
        while (pos > 0) {
            --pos;
            if (++current[pos] < k) break;
            current[pos] = 0;
            if (pos == 0) return best;
        }
        const double p = sequence_probability(model, obs, current);
        if (p > best.probability) {
            best.probability = p;
            best.tags = current;
        }
    }
}

void write_model(const HmmModel& model, std::ostream& out) {
    nlohmann::json j;
    j["tags"] = model.tagset.tags;
    j["lexicon"] = nlohmann::json::object();
    for (const auto& [word, allowed] : model.tagset.lexicon) {
        j["lexicon"][word] = allowed;
    }
    j["vocab"] = model.vocab;
    j["pi"] = model.pi;
    j["trans"] = model.trans;
    j["emit"] = model.emit;
    out << j.dump(2) << "\n";
}

HmmModel read_model(std::istream& in) {
    nlohmann::json j;
    in >> j;
    HmmModel model;
    model.tagset.tags = j.at("tags").get<std::vector<std::string>>();
    if (j.contains("lexicon")) {
        for (const auto& [word, allowed] : j.at("lexicon").items()) {
            model.tagset.lexicon[word] = allowed.get<std::set<std::string>>();
        }
    }
    model.vocab = j.at("vocab").get<std::vector<std::string>>();
    model.pi = j.at("pi").get<std::vector<double>>();
    model.trans = j.at("trans").get<std::vector<std::vector<double>>>();
    model.emit = j.at("emit").get<std::vector<std::vector<double>>>();
    model.validate();
    return model;
}

void save_model(const HmmModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open model file for writing: " + path);
    write_model(model, out);
}

HmmModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    return read_model(in);
}

}  // namespace qpos
