#include "kmernet/infotheory.hpp"

#include <algorithm>
#include <cmath>

#include "kmernet/error.hpp"

namespace kmernet {

namespace {

int base_code(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: return -1;
    }
}

void check_word_size(std::size_t k) {
    if (k < 1 || k > kMaxHistogramWordSize) {
        throw Error("histogram word size must be in [1, " + std::to_string(kMaxHistogramWordSize) +
                    "], got " + std::to_string(k));
    }
}

std::size_t word_space(std::size_t k) {
    return std::size_t{1} << (2 * k);
}

double entropy_or_zero(const KmerHistogram& hist) {
    return hist.total() == 0 ? 0.0 : shannon_entropy(hist);
}

}  // namespace

KmerHistogram::KmerHistogram(std::size_t word_size, std::vector<std::uint64_t> counts)
    : word_size_(word_size), counts_(std::move(counts)) {
    check_word_size(word_size_);
    if (counts_.size() != word_space(word_size_)) throw Error("histogram size mismatch");
    for (auto c : counts_) total_ += c;
}

std::uint64_t KmerHistogram::count(std::string_view word) const {
    if (word.size() != word_size_) return 0;
    std::size_t code = 0;
    for (char c : word) {
        int b = base_code(c);
        if (b < 0) return 0;
        code = code * 4 + static_cast<std::size_t>(b);
    }
    return counts_[code];
}

std::vector<double> KmerHistogram::frequencies() const {
    std::vector<double> out(counts_.size(), 0.0);
    if (total_ == 0) return out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        out[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
    }
    return out;
}

std::vector<std::string> KmerHistogram::words(std::size_t word_size) {
    check_word_size(word_size);
    static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
    std::vector<std::string> out;
    for (std::size_t code = 0; code < word_space(word_size); ++code) {
        std::string w(word_size, 'A');
        std::size_t rest = code;
        for (std::size_t i = word_size; i-- > 0;) {
            w[i] = kBases[rest % 4];
            rest /= 4;
        }
        out.push_back(std::move(w));
    }
    return out;
}

KmerHistogram histogram(std::string_view residues, std::size_t k) {
    check_word_size(k);
    if (residues.size() < k) {
        throw Error("sequence shorter than k (length " + std::to_string(residues.size()) +
                    ", k=" + std::to_string(k) + ")");
    }
    std::vector<std::uint64_t> counts(word_space(k), 0);
    const std::size_t mask = word_space(k) - 1;
    std::size_t code = 0;
    std::size_t valid_run = 0;  // consecutive valid bases ending here
    for (char c : residues) {
        int b = base_code(c);
        if (b < 0) {
            valid_run = 0;
            code = 0;
            continue;
        }
        code = ((code << 2) | static_cast<std::size_t>(b)) & mask;
        if (++valid_run >= k) ++counts[code];
    }
    return KmerHistogram(k, std::move(counts));
}

KmerHistogram histogram(const SequenceRecord& record, std::size_t k) {
    return histogram(record.residues, k);
}

double shannon_entropy(const KmerHistogram& hist) {
    if (hist.total() == 0) throw Error("no observations");
    const double total = static_cast<double>(hist.total());
    double h = 0.0;
    for (auto c : hist.counts()) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    // Rounding can leave -0.0 or a hair below zero for a single symbol.
    return std::max(h, 0.0);
}

const std::vector<std::string_view>& EntropyFeatures::field_names() {
    static const std::vector<std::string_view> names = {
        "total_entropy", "sum_entropy", "max_entropy", "normalized_entropy"};
    return names;
}

std::vector<double> EntropyFeatures::values() const {
    return {total_entropy, sum_entropy, max_entropy, normalized_entropy};
}

std::vector<double> window_entropies(const SequenceRecord& record, std::size_t k,
                                     std::size_t window_length) {
    check_word_size(k);
    if (window_length < k) throw Error("window length must be at least k");
    if (record.size() < window_length) {
        throw Error("record " + record.id + " is shorter than one window (" +
                    std::to_string(record.size()) + " < " + std::to_string(window_length) + ")");
    }
    std::vector<double> out;
    std::string_view seq = record.residues;
    for (std::size_t start = 0; start + window_length <= seq.size(); start += window_length) {
        out.push_back(entropy_or_zero(histogram(seq.substr(start, window_length), k)));
    }
    return out;
}

EntropyFeatures entropy_features(const SequenceRecord& record, std::size_t k,
                                 std::size_t window_length) {
    EntropyFeatures f;
    f.word_size = k;
    f.total_entropy = entropy_or_zero(histogram(record, k));
    if (record.size() < window_length) {
        f.sum_entropy = f.total_entropy;
        f.max_entropy = f.total_entropy;
    } else {
        const auto windows = window_entropies(record, k, window_length);
        for (double h : windows) f.sum_entropy += h;
        f.max_entropy = *std::max_element(windows.begin(), windows.end());
    }
    f.normalized_entropy = f.total_entropy / (2.0 * static_cast<double>(k));
    return f;
}

}  // namespace kmernet
