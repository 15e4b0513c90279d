#include "qpos/viterbi.hpp"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace qpos;

TEST(ClassicalViterbi, SingleStateChainProduct) {
    Rng rng(2);
    const HmmModel model = testutil::random_model(1, 3, rng);
    const Observation obs = testutil::random_observation(3, 4, rng);
    const auto result = classical_viterbi(model, obs);
    EXPECT_EQ(result.path.states, (std::vector<std::size_t>{0, 0, 0, 0}));
    EXPECT_NEAR(result.path.score, sequence_probability(model, obs, result.path.states), 1e-15);
}

TEST(ClassicalViterbi, MatchesBruteForceOnSeededModel) {
    Rng rng(42);
    const HmmModel model = testutil::random_model(2, 3, rng);
    const Observation obs = testutil::random_observation(3, 3, rng);
    const auto oracle = brute_force_best_sequence(model, obs);
    const auto result = classical_viterbi(model, obs);
    EXPECT_EQ(result.path.states, oracle.tags);
    EXPECT_NEAR(result.path.score, oracle.probability, 1e-12);
}

TEST(ClassicalViterbi, OracleEquivalenceOverManySeeds) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng = split_rng(1234, seed);
        const std::size_t k = 2 + uniform_index(rng, 3);  // 2..4
        const std::size_t w = 2 + uniform_index(rng, 5);  // 2..6
        const HmmModel model = testutil::random_model(k, 4, rng);
        const Observation obs = testutil::random_observation(4, w, rng);
        const auto oracle = brute_force_best_sequence(model, obs);
        const auto result = classical_viterbi(model, obs);
        ASSERT_EQ(result.path.states, oracle.tags) << "seed " << seed;
        ASSERT_NEAR(result.path.score, oracle.probability, 1e-12) << "seed " << seed;
    }
}

TEST(ClassicalViterbi, TieBrokenTowardSmallerPath) {
    // two symmetric tags: every path has equal probability
    HmmModel model;
    model.tagset.tags = {"A", "B"};
    model.vocab = {"u"};
    model.pi = {0.5, 0.5};
    model.trans = {{0.5, 0.5}, {0.5, 0.5}};
    model.emit = {{1.0}, {1.0}};
    const Observation obs{{0, 0, 0}};
    const auto oracle = brute_force_best_sequence(model, obs);
    const auto result = classical_viterbi(model, obs);
    EXPECT_EQ(result.path.states, (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_EQ(result.path.states, oracle.tags);
}

TEST(ClassicalViterbi, ScoreEqualsTrellisEntryAndSequenceProbability) {
    Rng rng(77);
    for (int round = 0; round < 20; ++round) {
        const HmmModel model = testutil::random_model(3, 4, rng);
        const Observation obs = testutil::random_observation(4, 5, rng);
        const auto result = classical_viterbi(model, obs);
        const std::size_t last = result.path.states.back();
        EXPECT_DOUBLE_EQ(result.path.score, result.trellis.phi1[last][obs.length() - 1]);
        const double direct = sequence_probability(model, obs, result.path.states);
        EXPECT_NEAR(result.path.score, direct, 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST(ClassicalViterbi, CandidateEvaluationCountIsExact) {
    Rng rng(88);
    const std::size_t k = 4, w = 6;
    const HmmModel model = testutil::random_model(k, 3, rng);
    const Observation obs = testutil::random_observation(3, w, rng);
    const auto result = classical_viterbi(model, obs);
    EXPECT_EQ(result.candidate_evaluations, k * k * (w - 1));
}

TEST(ClassicalViterbi, LogSpaceFindsTheSamePath) {
    Rng rng(99);
    for (int round = 0; round < 10; ++round) {
        const HmmModel model = testutil::random_model(3, 4, rng);
        const Observation obs = testutil::random_observation(4, 6, rng);
        const auto linear = classical_viterbi(model, obs, ScoreSpace::linear);
        const auto logspace = classical_viterbi(model, obs, ScoreSpace::log);
        EXPECT_EQ(linear.path.states, logspace.path.states);
        EXPECT_NEAR(std::exp(logspace.path.score), linear.path.score, 1e-12);
    }
}

TEST(ClassicalViterbi, FirstPhi2ColumnIsSentinelZero) {
    Rng rng(31);
    const HmmModel model = testutil::random_model(3, 3, rng);
    const Observation obs = testutil::random_observation(3, 4, rng);
    const auto result = classical_viterbi(model, obs);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(result.trellis.phi2[i][0], 0u);
}

TEST(Backtrace, SingleColumnReturnsFinalState) {
    Trellis trellis;
    trellis.phi1 = {{0.3}, {0.7}};
    trellis.phi2 = {{0}, {0}};
    EXPECT_EQ(backtrace(trellis, 1), (std::vector<std::size_t>{1}));
}

TEST(Backtrace, ConstantPointersForceConstantPrefix) {
    Trellis trellis;
    const std::size_t k = 3, w = 4, c = 2;
    trellis.phi1.assign(k, std::vector<double>(w, 0.0));
    trellis.phi2.assign(k, std::vector<std::size_t>(w, c));
    EXPECT_EQ(backtrace(trellis, 1), (std::vector<std::size_t>{c, c, c, 1}));
}

TEST(Backtrace, ReproducesOraclePathFromTrellis) {
    Rng rng(42);
    const HmmModel model = testutil::random_model(2, 3, rng);
    const Observation obs = testutil::random_observation(3, 3, rng);
    const auto result = classical_viterbi(model, obs);
    EXPECT_EQ(backtrace(result.trellis, result.path.states.back()), result.path.states);
}

TEST(Backtrace, FinalStateOutOfRangeRejected) {
    Trellis trellis;
    trellis.phi1 = {{0.5}};
    trellis.phi2 = {{0}};
    EXPECT_THROW(backtrace(trellis, 3), std::invalid_argument);
}

TEST(TrellisDump, EmitsOneRowPerCell) {
    Rng rng(5);
    const HmmModel model = testutil::random_model(2, 3, rng);
    const Observation obs = testutil::random_observation(3, 3, rng);
    const auto result = classical_viterbi(model, obs);
    std::ostringstream out;
    dump_trellis(result.trellis, out);
    std::size_t lines = 0;
    for (char ch : out.str()) {
        if (ch == '\n') ++lines;
    }
    EXPECT_EQ(lines, 1u + 2u * 3u);  // header + K*W
}
