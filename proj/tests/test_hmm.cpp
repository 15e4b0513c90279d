#include "qpos/hmm.hpp"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace qpos;

namespace {

TaggedCorpus corpus_from(std::initializer_list<std::vector<std::pair<std::string, std::string>>>
                             sentences) {
    TaggedCorpus corpus;
    for (const auto& s : sentences) corpus.sentences.push_back(s);
    return corpus;
}

}  // namespace

TEST(TrainMle, HandCountedTransitionsAndPi) {
    // every sentence starts with DT and NN->DT appears, so no zero rows
    const auto corpus = corpus_from({
        {{"the", "DT"}, {"dog", "NN"}},
        {{"the", "DT"}, {"cat", "NN"}, {"the", "DT"}},
    });
    const HmmModel model = train_mle(corpus, 0.0);
    const std::size_t dt = model.tagset.index_of("DT");
    const std::size_t nn = model.tagset.index_of("NN");
    EXPECT_DOUBLE_EQ(model.trans[dt][nn], 1.0);
    EXPECT_DOUBLE_EQ(model.pi[dt], 1.0);
}

TEST(TrainMle, ZeroAlphaWithDeadEndTagRejected) {
    // NN never starts a transition; with alpha = 0 its row cannot be normalized
    const auto corpus = corpus_from({{{"the", "DT"}, {"dog", "NN"}}});
    EXPECT_THROW(train_mle(corpus, 0.0), std::invalid_argument);
}

TEST(TrainMle, UniformSmoothingFillsEmptyRow) {
    // NN has no outgoing transitions; alpha = 1 smooths its row to uniform
    const auto corpus = corpus_from({{{"the", "DT"}, {"dog", "NN"}}});
    const HmmModel model = train_mle(corpus, 1.0);
    const std::size_t nn = model.tagset.index_of("NN");
    ASSERT_EQ(model.num_tags(), 2u);
    EXPECT_DOUBLE_EQ(model.trans[nn][0], 0.5);
    EXPECT_DOUBLE_EQ(model.trans[nn][1], 0.5);
}

TEST(TrainMle, HandCountedTwoToOneSplit) {
    // DT->NN twice, DT->VB once
    const auto corpus = corpus_from({
        {{"the", "DT"}, {"dog", "NN"}, {"runs", "VB"}, {"the", "DT"}, {"cat", "NN"}},
        {{"the", "DT"}, {"go", "VB"}, {"the", "DT"}},
    });
    const HmmModel model = train_mle(corpus, 0.0);
    const std::size_t dt = model.tagset.index_of("DT");
    const std::size_t nn = model.tagset.index_of("NN");
    EXPECT_NEAR(model.trans[dt][nn], 2.0 / 3.0, 1e-15);
}

TEST(TrainMle, RowStochasticityHoldsOnRandomCorpora) {
    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        TaggedCorpus corpus;
        const std::size_t n_sentences = 1 + uniform_index(rng, 5);
        for (std::size_t s = 0; s < n_sentences; ++s) {
            std::vector<std::pair<std::string, std::string>> sentence;
            const std::size_t len = 1 + uniform_index(rng, 6);
            for (std::size_t i = 0; i < len; ++i) {
                sentence.emplace_back("w" + std::to_string(uniform_index(rng, 5)),
                                      "t" + std::to_string(uniform_index(rng, 3)));
            }
            corpus.sentences.push_back(std::move(sentence));
        }
        const HmmModel model = train_mle(corpus, 0.5 + canonical_unit(rng));
        EXPECT_NO_THROW(model.validate());
    }
}

TEST(TrainMle, EmptyCorpusRejected) {
    EXPECT_THROW(train_mle(TaggedCorpus{}, 1.0), std::invalid_argument);
}

TEST(Lexicon, PermittedTagsFromTraining) {
    const auto corpus = corpus_from({
        {{"Chair", "NN"}, {"Chair", "VB"}, {"Paper", "NN"}},
        {{"Paper", "NN"}, {"Chair", "NN"}},
    });
    const HmmModel model = train_mle(corpus, 1.0);
    const auto chair = lexicon_tags(model.tagset, "Chair");
    EXPECT_FALSE(chair.open_class_fallback);
    EXPECT_EQ(chair.tags, (std::set<std::string>{"NN", "VB"}));
    const auto noun_only = lexicon_tags(model.tagset, "Paper");
    EXPECT_EQ(noun_only.tags, (std::set<std::string>{"NN"}));
}

TEST(Lexicon, UnknownWordFallsBackToAllTags) {
    const auto corpus = corpus_from({{{"Paper", "NN"}, {"Go", "VB"}}});
    const HmmModel model = train_mle(corpus, 1.0);
    const auto lookup = lexicon_tags(model.tagset, "zzglorp");
    EXPECT_TRUE(lookup.open_class_fallback);
    EXPECT_EQ(lookup.tags.size(), model.num_tags());
}

TEST(SequenceProbability, DeterministicChainIsOne) {
    HmmModel model;
    model.tagset.tags = {"A", "B"};
    model.vocab = {"x"};
    model.pi = {1.0, 0.0};
    model.trans = {{0.5, 0.5}, {0.5, 0.5}};
    model.emit = {{1.0}, {1.0}};
    model.validate();
    const Observation obs{{0}};
    EXPECT_DOUBLE_EQ(sequence_probability(model, obs, {0}), 1.0);
}

TEST(SequenceProbability, HandMultipliedTwoStep) {
    HmmModel model;
    model.tagset.tags = {"A", "B"};
    model.vocab = {"u", "v"};
    model.pi = {0.6, 0.4};
    model.trans = {{0.7, 0.3}, {0.4, 0.6}};
    model.emit = {{0.5, 0.5}, {0.5, 0.5}};
    model.validate();
    const Observation obs{{0, 1}};
    EXPECT_NEAR(sequence_probability(model, obs, {0, 1}), 0.6 * 0.5 * 0.3 * 0.5, 1e-15);
}

TEST(SequenceProbability, ZeroInitialProbabilityGivesZero) {
    HmmModel model;
    model.tagset.tags = {"A", "B"};
    model.vocab = {"x"};
    model.pi = {1.0, 0.0};
    model.trans = {{0.5, 0.5}, {0.5, 0.5}};
    model.emit = {{1.0}, {1.0}};
    const Observation obs{{0}};
    EXPECT_DOUBLE_EQ(sequence_probability(model, obs, {1}), 0.0);
}

TEST(SequenceProbability, LengthMismatchRejected) {
    Rng rng(3);
    const HmmModel model = testutil::random_model(2, 3, rng);
    const Observation obs{{0, 1}};
    EXPECT_THROW(sequence_probability(model, obs, {0}), std::invalid_argument);
}

TEST(SequenceProbability, LogSpaceAgreesWithLinear) {
    Rng rng(11);
    const HmmModel model = testutil::random_model(3, 4, rng);
    const Observation obs = testutil::random_observation(4, 5, rng);
    const std::vector<std::size_t> tags = {0, 2, 1, 1, 0};
    EXPECT_NEAR(std::exp(sequence_log_probability(model, obs, tags)),
                sequence_probability(model, obs, tags), 1e-12);
}

TEST(BruteForce, SingleTagReturnsAllZeros) {
    Rng rng(5);
    const HmmModel model = testutil::random_model(1, 3, rng);
    const Observation obs = testutil::random_observation(3, 4, rng);
    const auto result = brute_force_best_sequence(model, obs);
    EXPECT_EQ(result.tags, (std::vector<std::size_t>{0, 0, 0, 0}));
    EXPECT_NEAR(result.probability, sequence_probability(model, obs, result.tags), 1e-15);
}

TEST(BruteForce, HandEnumeratedTwoByTwo) {
    HmmModel model;
    model.tagset.tags = {"A", "B"};
    model.vocab = {"u", "v"};
    model.pi = {0.6, 0.4};
    model.trans = {{0.7, 0.3}, {0.4, 0.6}};
    model.emit = {{0.8, 0.2}, {0.3, 0.7}};
    model.validate();
    const Observation obs{{0, 1}};
    // all four products by hand
    const double p00 = 0.6 * 0.8 * 0.7 * 0.2;  // 0.0672
    const double p01 = 0.6 * 0.8 * 0.3 * 0.7;  // 0.1008
    const double p10 = 0.4 * 0.3 * 0.4 * 0.2;  // 0.0096
    const double p11 = 0.4 * 0.3 * 0.6 * 0.7;  // 0.0504
    ASSERT_GT(p01, std::max({p00, p10, p11}));
    const auto result = brute_force_best_sequence(model, obs);
    EXPECT_EQ(result.tags, (std::vector<std::size_t>{0, 1}));
    EXPECT_NEAR(result.probability, p01, 1e-15);
}

TEST(BruteForce, UniformModelTieGoesToLexicographicallySmallest) {
    HmmModel model;
    model.tagset.tags = {"A", "B"};
    model.vocab = {"u"};
    model.pi = {0.5, 0.5};
    model.trans = {{0.5, 0.5}, {0.5, 0.5}};
    model.emit = {{1.0}, {1.0}};
    const Observation obs{{0, 0, 0}};
    const auto result = brute_force_best_sequence(model, obs);
    EXPECT_EQ(result.tags, (std::vector<std::size_t>{0, 0, 0}));
}

TEST(BruteForce, SelfConsistentAndDominatesRandomSequences) {
    Rng rng(17);
    for (int round = 0; round < 10; ++round) {
        const HmmModel model = testutil::random_model(3, 4, rng);
        const Observation obs = testutil::random_observation(4, 4, rng);
        const auto best = brute_force_best_sequence(model, obs);
        EXPECT_NEAR(best.probability, sequence_probability(model, obs, best.tags), 1e-15);
        for (int probe = 0; probe < 100; ++probe) {
            std::vector<std::size_t> tags(obs.length());
            for (auto& t : tags) t = uniform_index(rng, 3);
            EXPECT_GE(best.probability, sequence_probability(model, obs, tags));
        }
    }
}

TEST(BruteForce, EnumerationCapEnforced) {
    Rng rng(19);
    const HmmModel model = testutil::random_model(4, 2, rng);
    const Observation obs = testutil::random_observation(2, 12, rng);
    EXPECT_THROW(brute_force_best_sequence(model, obs, 1000), std::invalid_argument);
}

TEST(CorpusFormat, ParsesSentencesAndBlankSeparators) {
    std::istringstream in("the\tDT\ndog\tNN\n\ngo\tVB\n");
    const TaggedCorpus corpus = parse_corpus(in);
    ASSERT_EQ(corpus.sentences.size(), 2u);
    EXPECT_EQ(corpus.sentences[0].size(), 2u);
    EXPECT_EQ(corpus.sentences[1][0].first, "go");
}

TEST(CorpusFormat, MalformedLineReportsLineNumber) {
    std::istringstream in("the\tDT\nbroken line\n");
    try {
        parse_corpus(in);
        FAIL() << "expected parse failure";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(ModelFile, RoundTripsBitExactly) {
    Rng rng(23);
    const HmmModel model = testutil::random_model(3, 5, rng);
    std::stringstream buffer;
    write_model(model, buffer);
    const HmmModel loaded = read_model(buffer);
    ASSERT_EQ(loaded.num_tags(), model.num_tags());
    for (std::size_t i = 0; i < model.num_tags(); ++i) {
        EXPECT_EQ(loaded.pi[i], model.pi[i]);  // bit-exact
        for (std::size_t j = 0; j < model.num_tags(); ++j) {
            EXPECT_EQ(loaded.trans[i][j], model.trans[i][j]);
        }
        for (std::size_t w = 0; w < model.vocab_size(); ++w) {
            EXPECT_EQ(loaded.emit[i][w], model.emit[i][w]);
        }
    }
    // a second write produces identical bytes
    std::stringstream again;
    write_model(loaded, again);
    std::stringstream first;
    write_model(model, first);
    EXPECT_EQ(again.str(), first.str());
}

TEST(ModelValidation, RejectsNonStochasticRows) {
    HmmModel model;
    model.tagset.tags = {"A"};
    model.vocab = {"x"};
    model.pi = {1.0};
    model.trans = {{0.9}};
    model.emit = {{1.0}};
    EXPECT_THROW(model.validate(), std::invalid_argument);
}
