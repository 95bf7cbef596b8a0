#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kmernet/seqio.hpp"

namespace kmernet {

constexpr std::size_t kMaxHistogramWordSize = 3;

/// k-mer occurrence counts from a step-1 sliding window. Words containing 'N'
/// are skipped. Counts are indexed by the base-4 code of the word with
/// A < C < G < T, which is also lexicographic order.
class KmerHistogram {
public:
    KmerHistogram(std::size_t word_size, std::vector<std::uint64_t> counts);

    std::size_t word_size() const { return word_size_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }

    std::uint64_t count(std::string_view word) const;
    /// count / total, or all zeros when total is 0.
    std::vector<double> frequencies() const;

    /// All 4^k words in index order.
    static std::vector<std::string> words(std::size_t word_size);

private:
    std::size_t word_size_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

KmerHistogram histogram(std::string_view residues, std::size_t k);
KmerHistogram histogram(const SequenceRecord& record, std::size_t k);

/// Base-2 Shannon entropy of the histogram. Throws on an empty histogram.
double shannon_entropy(const KmerHistogram& hist);

struct EntropyFeatures {
    std::size_t word_size = 0;
    double total_entropy = 0;
    double sum_entropy = 0;
    double max_entropy = 0;
    double normalized_entropy = 0;

    static const std::vector<std::string_view>& field_names();
    std::vector<double> values() const;
};

constexpr std::size_t kDefaultWindowLength = 100;

/// Entropy of each full non-overlapping window, in order. A window with no
/// valid k-mer (all 'N') contributes 0.
std::vector<double> window_entropies(const SequenceRecord& record, std::size_t k,
                                     std::size_t window_length);

/// Whole-sequence, window-sum and window-max entropies for one word size.
/// Records shorter than one window are treated as a single window, and a
/// record without any valid k-mer yields all zeros.
EntropyFeatures entropy_features(const SequenceRecord& record, std::size_t k,
                                 std::size_t window_length = kDefaultWindowLength);

}  // namespace kmernet
