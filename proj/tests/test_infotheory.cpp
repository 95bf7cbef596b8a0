#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kmernet/error.hpp"
#include "kmernet/infotheory.hpp"
#include "kmernet/random.hpp"
#include "oracles.hpp"

using namespace kmernet;

namespace {

SequenceRecord rec(std::string s) {
    return SequenceRecord{"r", std::move(s), std::nullopt};
}

std::string repeat(std::string_view unit, std::size_t times) {
    std::string s;
    for (std::size_t i = 0; i < times; ++i) s += unit;
    return s;
}

std::string random_dna(std::mt19937_64& rng, std::size_t n, const char* alphabet = "ACGT") {
    const std::size_t m = std::char_traits<char>::length(alphabet);
    std::string s(n, 'A');
    for (auto& c : s) c = alphabet[rng() % m];
    return s;
}

}  // namespace

TEST(Histogram, FigureOneMononucleotides) {
    auto h = histogram(rec("ATGGAGTCCGAA"), 1);
    EXPECT_EQ(h.count("A"), 4u);
    EXPECT_EQ(h.count("T"), 2u);
    EXPECT_EQ(h.count("G"), 4u);
    EXPECT_EQ(h.count("C"), 2u);
    EXPECT_EQ(h.total(), 12u);
}

TEST(Histogram, SlidingAndSkipping) {
    auto aa = histogram(rec("AAAA"), 2);
    EXPECT_EQ(aa.count("AA"), 3u);
    EXPECT_EQ(aa.total(), 3u);
    auto ana = histogram(rec("ANA"), 2);
    EXPECT_EQ(ana.total(), 0u);
    auto gap = histogram(rec("ACGNACG"), 3);
    EXPECT_EQ(gap.count("ACG"), 2u);
    EXPECT_EQ(gap.total(), 2u);
}

TEST(Histogram, WordOrderIsLexicographic) {
    auto words = KmerHistogram::words(2);
    ASSERT_EQ(words.size(), 16u);
    EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
    EXPECT_EQ(words.front(), "AA");
    EXPECT_EQ(words.back(), "TT");
    EXPECT_EQ(KmerHistogram::words(3).size(), 64u);
}

TEST(Histogram, Errors) {
    EXPECT_THROW(histogram(rec("AC"), 3), Error);
    EXPECT_THROW(histogram(rec("ACGTACGT"), 0), Error);
    EXPECT_THROW(histogram(rec("ACGTACGT"), 4), Error);
}

TEST(Histogram, CountsMatchDirectScan) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        std::string s = random_dna(rng, 3 + rng() % 120, "ACGTACGTN");
        for (std::size_t k = 1; k <= 3; ++k) {
            auto h = histogram(rec(s), k);
            std::uint64_t total = 0;
            for (const auto& w : KmerHistogram::words(k)) {
                std::uint64_t n = 0;
                for (std::size_t i = 0; i + k <= s.size(); ++i) n += (s.compare(i, k, w) == 0);
                EXPECT_EQ(h.count(w), n);
                total += n;
            }
            EXPECT_EQ(h.total(), total);
            EXPECT_LE(h.total(), s.size() - k + 1);
        }
    }
}

TEST(ShannonEntropy, Examples) {
    EXPECT_DOUBLE_EQ(shannon_entropy(histogram(rec("ACGT"), 1)), 2.0);
    EXPECT_DOUBLE_EQ(shannon_entropy(histogram(rec("AAAA"), 1)), 0.0);
    const double expected = oracle::entropy_bits({1.0 / 3, 1.0 / 6, 1.0 / 3, 1.0 / 6});
    EXPECT_NEAR(expected, 1.9183, 1e-4);
    EXPECT_NEAR(shannon_entropy(histogram(rec("ATGGAGTCCGAA"), 1)), expected, 1e-12);
    EXPECT_THROW(shannon_entropy(histogram(rec("NNN"), 1)), Error);
}

TEST(ShannonEntropy, MatchesBruteForce) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t k = 1 + rng() % 3;
        auto h = histogram(rec(random_dna(rng, k + rng() % 300)), k);
        auto p = h.frequencies();
        EXPECT_NEAR(shannon_entropy(h), oracle::entropy_bits(p), 1e-12);
        double sum = 0;
        for (double x : p) sum += x;
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(ShannonEntropy, MaximalExactlyOnUniformHistograms) {
    for (std::size_t k = 1; k <= 3; ++k) {
        std::vector<std::uint64_t> uniform(std::size_t{1} << (2 * k), 5);
        EXPECT_DOUBLE_EQ(shannon_entropy(KmerHistogram(k, uniform)), 2.0 * k);
        auto skewed = uniform;
        skewed[0] += 1;
        EXPECT_LT(shannon_entropy(KmerHistogram(k, skewed)), 2.0 * k);
        auto missing = uniform;
        missing.back() = 0;
        EXPECT_LT(shannon_entropy(KmerHistogram(k, missing)), 2.0 * k);
    }
}

TEST(ShannonEntropy, DeBruijnRepeatsReachTwoK) {
    for (std::size_t k = 1; k <= 3; ++k) {
        auto cycle = oracle::de_bruijn(k);
        ASSERT_EQ(cycle.size(), std::size_t{1} << (2 * k));
        // Cyclic repeats plus a k-1 wrap make every word equally frequent.
        std::string s = repeat(cycle, 5) + cycle.substr(0, k - 1);
        EXPECT_EQ(shannon_entropy(histogram(rec(s), k)), 2.0 * k);
    }
}

TEST(ShannonEntropy, AcgtRepeatHasFourWordsAtEveryK) {
    for (std::size_t k = 1; k <= 3; ++k) {
        // With the k-1 wrap every one of the four words appears 50 times.
        std::string s = repeat("ACGT", 50) + std::string("ACGT").substr(0, k - 1);
        EXPECT_EQ(shannon_entropy(histogram(rec(s), k)), 2.0);
        // Without it the last k-1 words are each one short.
        const double n = static_cast<double>(200 - k + 1);
        std::vector<double> p;
        for (std::size_t w = 0; w < 4; ++w) p.push_back((w + k - 1 >= 4 ? 49.0 : 50.0) / n);
        EXPECT_NEAR(shannon_entropy(histogram(rec(repeat("ACGT", 50)), k)), oracle::entropy_bits(p),
                    1e-12);
    }
}

TEST(WindowEntropies, Examples) {
    EXPECT_EQ(window_entropies(rec(std::string(200, 'A')), 1, 100), (std::vector<double>{0.0, 0.0}));
    EXPECT_EQ(window_entropies(rec(repeat("ACGT", 50)), 1, 100), (std::vector<double>{2.0, 2.0}));
    EXPECT_EQ(window_entropies(rec(std::string(100, 'A') + repeat("ACGT", 25)), 1, 100),
              (std::vector<double>{0.0, 2.0}));
    // Final partial window dropped.
    EXPECT_EQ(window_entropies(rec(repeat("ACGT", 60)), 1, 100).size(), 2u);
    EXPECT_EQ(window_entropies(rec(std::string(100, 'N') + "ACGT"), 1, 100), (std::vector<double>{0.0}));
    EXPECT_THROW(window_entropies(rec("ACGT"), 1, 100), Error);
}

TEST(EntropyFeatures, Examples) {
    auto f = entropy_features(rec(repeat("ACGT", 50)), 1, 100);
    EXPECT_DOUBLE_EQ(f.total_entropy, 2.0);
    EXPECT_DOUBLE_EQ(f.sum_entropy, 4.0);
    EXPECT_DOUBLE_EQ(f.max_entropy, 2.0);
    EXPECT_DOUBLE_EQ(f.normalized_entropy, 1.0);

    auto z = entropy_features(rec(std::string(200, 'A')), 1, 100);
    EXPECT_EQ(z.values(), (std::vector<double>{0, 0, 0, 0}));
}

TEST(EntropyFeatures, ShortRecordIsOneWindow) {
    auto f = entropy_features(rec("ATGGAGTCCGAA"), 1, 100);
    EXPECT_DOUBLE_EQ(f.sum_entropy, f.total_entropy);
    EXPECT_DOUBLE_EQ(f.max_entropy, f.total_entropy);
    auto n = entropy_features(rec("NNNNNN"), 2, 100);
    EXPECT_EQ(n.values(), (std::vector<double>{0, 0, 0, 0}));
}

TEST(EntropyFeatures, BoundsOnRandomInputs) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t k = 1 + rng() % 3;
        std::size_t window = 20 + rng() % 150;
        auto f = entropy_features(rec(random_dna(rng, 10 + rng() % 600, "AACGTTN")), k, window);
        EXPECT_GE(f.total_entropy, 0.0);
        EXPECT_LE(f.total_entropy, 2.0 * k);
        EXPECT_GE(f.normalized_entropy, 0.0);
        EXPECT_LE(f.normalized_entropy, 1.0);
        EXPECT_LE(f.max_entropy, 2.0 * k);
        EXPECT_GE(f.sum_entropy, f.max_entropy);
    }
}

TEST(EntropyFeatures, InvariantUnderBaseRelabeling) {
    std::mt19937_64 rng(23);
    std::string perm = "ACGT";
    for (int trial = 0; trial < 40; ++trial) {
        std::string s = random_dna(rng, 50 + rng() % 400, "AACGTTTN");
        std::shuffle(perm.begin(), perm.end(), rng);
        std::string t = s;
        for (auto& c : t) {
            if (c != 'N') c = perm[std::string_view("ACGT").find(c)];
        }
        for (std::size_t k = 1; k <= 3; ++k) {
            auto a = entropy_features(rec(s), k, 64).values();
            auto b = entropy_features(rec(t), k, 64).values();
            for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
        }
    }
}

TEST(EntropyFeatures, UniformIidLongSequenceNearTwoBits) {
    Rng rng(2024);
    std::string s(20000, 'A');
    for (auto& c : s) c = "ACGT"[uniform_index(rng, 4)];
    EXPECT_NEAR(entropy_features(rec(s), 1).total_entropy, 2.0, 0.01);
}
