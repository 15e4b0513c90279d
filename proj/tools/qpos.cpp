#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpos/grover_build.hpp"
#include "qpos/hmm.hpp"
#include "qpos/qmax.hpp"
#include "qpos/qsim.hpp"
#include "qpos/qviterbi.hpp"
#include "qpos/rng.hpp"
#include "qpos/viterbi.hpp"
#include "qpos/zx/circuit_map.hpp"
#include "qpos/zx/simplify.hpp"
#include "qpos/zx/tensor.hpp"

namespace {

std::size_t enumeration_cap_from_env() {
    if (const char* env = std::getenv("QPOS_ENUM_CAP")) {
        return static_cast<std::size_t>(std::stoull(env));
    }
    return qpos::kDefaultEnumerationCap;
}

void print_model_summary(const qpos::HmmModel& model, std::size_t sentences,
                         std::ostream& out) {
    out << "tags K        : " << model.num_tags() << "\n";
    out << "vocabulary N  : " << model.vocab_size() << "\n";
    out << "sentences     : " << sentences << "\n";
}

int cmd_train(const std::string& corpus_path, double alpha, const std::string& model_out) {
    const qpos::TaggedCorpus corpus = qpos::load_corpus(corpus_path);
    const qpos::HmmModel model = qpos::train_mle(corpus, alpha);
    qpos::save_model(model, model_out);
    print_model_summary(model, corpus.sentences.size(), std::cout);
    std::cout << "model written : " << model_out << "\n";
    return 0;
}

qpos::Observation resolve_words(const qpos::HmmModel& model,
                                const std::vector<std::string>& words,
                                std::vector<bool>& fallback) {
    qpos::Observation obs;
    for (const auto& word : words) {
        const std::size_t idx = model.word_index(word);
        fallback.push_back(idx == qpos::HmmModel::npos);
        obs.words.push_back(idx == qpos::HmmModel::npos ? qpos::Observation::unknown_word
                                                        : idx);
    }
    return obs;
}

void print_tagging(const qpos::HmmModel& model, const std::vector<std::string>& words,
                   const std::vector<std::size_t>& states, const std::vector<bool>& fallback) {
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::cout << words[i] << '\t' << model.tagset.tags[states[i]];
        if (fallback[i]) std::cout << "\t(open-class fallback)";
        std::cout << "\n";
    }
}

int cmd_tag(const std::string& model_path, const std::vector<std::string>& words,
            const std::string& backend, std::uint64_t seed, std::size_t retries,
            bool seed_given) {
    if (words.empty()) {
        std::cerr << "tag: empty sentence\n";
        return 2;
    }
    const qpos::HmmModel model = qpos::load_model(model_path);
    std::vector<bool> fallback;
    const qpos::Observation obs = resolve_words(model, words, fallback);

    std::cout.precision(17);
    if (backend == "classical") {
        const bool log_space = obs.length() > 20;
        const auto result = qpos::classical_viterbi(
            model, obs, log_space ? qpos::ScoreSpace::log : qpos::ScoreSpace::linear);
        print_tagging(model, words, result.path.states, fallback);
        std::cout << (log_space ? "log-score : " : "score     : ") << result.path.score << "\n";
        std::cout << "candidate evaluations: " << result.candidate_evaluations << "\n";
    } else if (backend == "brute") {
        const auto result = qpos::brute_force_best_sequence(model, obs, enumeration_cap_from_env());
        print_tagging(model, words, result.tags, fallback);
        std::cout << "score     : " << result.probability << "\n";
    } else if (backend == "quantum") {
        if (!seed_given) {
            std::cerr << "tag: --seed is required for the quantum backend\n";
            return 2;
        }
        qpos::Rng rng(seed);
        const auto result = qpos::quantum_viterbi(model, obs, rng, retries);
        const auto classical = qpos::classical_viterbi(model, obs);
        print_tagging(model, words, result.path.states, fallback);
        std::cout << "score     : " << result.path.score << "\n";
        std::cout << "agrees with classical: "
                  << (result.path.states == classical.path.states ? "yes" : "no") << "\n";
        std::cout << "quantum max calls    : " << result.max_calls << "\n";
        std::cout << "oracle queries       : " << result.ledger.oracle_queries << "\n";
        std::cout << "threshold updates    : " << result.ledger.threshold_updates << "\n";
        if (obs.length() >= 2) {
            const auto report =
                qpos::step_count_report(model.num_tags(), obs.length(), result.ledger);
            qpos::write_step_count_report(report, std::cout);
        }
    } else {
        std::cerr << "tag: unknown backend \"" << backend << "\"\n";
        return 2;
    }
    return 0;
}

struct BenchRow {
    std::size_t l;
    std::uint64_t seed;
    std::size_t queries;
    bool success;
    std::size_t found_index;
    std::optional<std::size_t> queries_to_success;
};

int cmd_qmax_bench(const std::vector<std::size_t>& sizes, std::size_t trials,
                   std::uint64_t seed, const std::string& csv_out) {
    if (sizes.empty()) {
        std::cerr << "qmax-bench: need at least one size\n";
        return 2;
    }
    std::ostringstream csv;
    csv << "l,seed,queries,success,found_index\n";

    std::vector<double> log_l, log_q;
    std::cout << "quantum max benchmark (" << trials << " trials per size)\n";
    for (std::size_t l : sizes) {
        std::size_t successes = 0;
        double sum_queries_to_success = 0.0;
        std::size_t counted = 0;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            qpos::Rng value_rng = qpos::split_rng(seed, l * 1000003ULL + trial * 2ULL);
            std::vector<double> values(l);
            for (double& v : values) v = qpos::canonical_unit(value_rng);
            const qpos::ValueList list(values);
            const auto truth = qpos::classical_max(list);

            qpos::Rng run_rng = qpos::split_rng(seed, l * 1000003ULL + trial * 2ULL + 1ULL);
            const auto result = qpos::quantum_prob_max(list, run_rng);
            const bool success = result.value == truth.value;
            if (success) ++successes;
            if (result.ledger.queries_at_first_success) {
                sum_queries_to_success +=
                    static_cast<double>(*result.ledger.queries_at_first_success);
                ++counted;
            }
            csv << l << ',' << trial << ',' << result.ledger.oracle_queries << ','
                << (success ? 1 : 0) << ',' << result.index << "\n";
        }
        const double rate = static_cast<double>(successes) / static_cast<double>(trials);
        const double mean_q =
            counted > 0 ? sum_queries_to_success / static_cast<double>(counted) : 0.0;
        std::cout << "  l = " << l << ": success rate " << rate
                  << ", budget " << qpos::SearchBudget::for_size(l).max_queries
                  << ", mean queries to first success " << mean_q << "\n";
        if (counted > 0 && mean_q > 0.0) {
            log_l.push_back(std::log(static_cast<double>(l)));
            log_q.push_back(std::log(mean_q));
        }
    }

    if (log_l.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < log_l.size(); ++i) {
            mx += log_l[i];
            my += log_q[i];
        }
        mx /= static_cast<double>(log_l.size());
        my /= static_cast<double>(log_l.size());
        double num = 0, den = 0;
        for (std::size_t i = 0; i < log_l.size(); ++i) {
            num += (log_l[i] - mx) * (log_q[i] - my);
            den += (log_l[i] - mx) * (log_l[i] - mx);
        }
        std::cout << "log-log slope of mean queries-to-success vs l: " << num / den << "\n";
    }

    if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        if (!out) {
            std::cerr << "qmax-bench: cannot write " << csv_out << "\n";
            return 1;
        }
        out << csv.str();
        std::cout << "csv written : " << csv_out << "\n";
    } else {
        std::cout << csv.str();
    }
    return 0;
}

int cmd_zx_opt(const std::string& circuit_path, bool verify, const std::string& report_out,
               const std::string& dot_out) {
    const qpos::Circuit circuit = qpos::load_circuit(circuit_path);

    std::ostringstream report;
    report.precision(17);
    report << "circuit: " << circuit_path << " (" << circuit.n_qubits << " qubits, "
           << circuit.gates.size() << " gates)\n";
    report << "gate histogram:\n";
    for (const auto& [name, count] : qpos::gate_histogram(circuit)) {
        report << "  " << name << " : " << count << "\n";
    }
    report << "circuit T-count: " << qpos::t_count(circuit) << "\n";

    qpos::zx::ZxDiagram diagram = qpos::zx::circuit_to_diagram(circuit);
    const std::size_t before = qpos::zx::diagram_t_count(diagram);
    auto simplified = qpos::zx::full_simplify(diagram);
    const std::size_t after = qpos::zx::diagram_t_count(simplified.diagram);
    const double reduction =
        before == 0 ? 0.0
                    : 100.0 * static_cast<double>(before - after) / static_cast<double>(before);

    report << "diagram T-count before: " << before << "\n";
    report << "diagram T-count after : " << after << "\n";
    report << "reduction             : " << reduction << "%\n";
    report << "rewrite steps         : " << simplified.trace.steps.size() << "\n";
    report << "reference pair        : 336 -> 166 (~47.47% reduction)\n";

    if (verify) {
        if (circuit.n_qubits > 8) {
            std::cerr << "zx-opt: --verify supports at most 8 qubits\n";
            return 2;
        }
        const auto t_before = qpos::zx::diagram_to_tensor_by_columns(diagram);
        const auto t_after = qpos::zx::diagram_to_tensor_by_columns(simplified.diagram);
        const double deviation =
            qpos::zx::scalar_aligned_distance(t_after.data, t_before.data);
        report << "verification          : "
               << (deviation <= 1e-9 ? "equal up to scalar" : "MISMATCH")
               << " (max deviation " << deviation << ")\n";
        if (deviation > 1e-9) {
            std::cout << report.str();
            return 1;
        }
    }

    if (!dot_out.empty()) {
        std::ofstream out(dot_out);
        if (!out) {
            std::cerr << "zx-opt: cannot write " << dot_out << "\n";
            return 1;
        }
        qpos::zx::write_dot(simplified.diagram, out);
        report << "dot export            : " << dot_out << "\n";
    }
    if (!report_out.empty()) {
        std::ofstream out(report_out);
        if (!out) {
            std::cerr << "zx-opt: cannot write " << report_out << "\n";
            return 1;
        }
        out << report.str();
    }
    std::cout << report.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HMM part-of-speech tagging with classical, brute-force and "
                 "simulated-quantum Viterbi decoding, plus ZX-calculus circuit optimization"};
    app.require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "Train an HMM from a word<TAB>tag corpus");
    std::string corpus_path, model_out;
    double alpha = 1.0;
    train->add_option("--corpus", corpus_path, "corpus file")->required();
    train->add_option("--alpha", alpha, "add-alpha smoothing count (default 1)");
    train->add_option("--out", model_out, "model output path")->required();

    // tag
    auto* tag = app.add_subcommand("tag", "Tag a sentence with a trained model");
    std::string model_path, backend = "classical";
    std::vector<std::string> words;
    std::uint64_t seed = 0;
    std::size_t retries = 3;
    tag->add_option("--model", model_path, "model file")->required();
    tag->add_option("--backend", backend, "classical | quantum | brute");
    auto* tag_seed = tag->add_option("--seed", seed, "rng seed (required for quantum)");
    tag->add_option("--retries", retries, "per-cell quantum retries (default 3)");
    tag->add_option("words", words, "sentence words");

    // qmax-bench
    auto* bench = app.add_subcommand("qmax-bench", "Benchmark quantum maximum finding");
    std::vector<std::size_t> sizes;
    std::size_t trials = 100;
    std::uint64_t bench_seed = 0;
    std::string csv_out;
    bench->add_option("--sizes", sizes, "list sizes l")->required();
    bench->add_option("--trials", trials, "trials per size");
    bench->add_option("--seed", bench_seed, "master seed")->required();
    bench->add_option("--csv", csv_out, "csv output path");

    // zx-opt
    auto* zx = app.add_subcommand("zx-opt", "Optimize a Clifford+T circuit with ZX rewriting");
    std::string circuit_path, report_out, dot_out;
    bool verify = false;
    zx->add_option("--circuit", circuit_path, "circuit file")->required();
    zx->add_flag("--verify", verify, "tensor-verify the rewrite (<= 8 qubits)");
    zx->add_option("--out", report_out, "report output path");
    zx->add_option("--dot", dot_out, "write the simplified diagram as DOT");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(corpus_path, alpha, model_out);
        if (tag->parsed()) {
            return cmd_tag(model_path, words, backend, seed, retries, tag_seed->count() > 0);
        }
        if (bench->parsed()) return cmd_qmax_bench(sizes, trials, bench_seed, csv_out);
        if (zx->parsed()) return cmd_zx_opt(circuit_path, verify, report_out, dot_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
