#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kmernet/infotheory.hpp"
#include "kmernet/seqio.hpp"

namespace kmernet {

struct FeatureOptions {
    bool include_histograms = true;
    std::size_t window_length = kDefaultWindowLength;
};

struct FeatureEntry {
    std::string name;
    /// Which network config, entropy word size or histogram the value comes from.
    std::string source;
};

/// Fixed feature order: 6 standard networks x 16 measures, then k = 1..3 x 4
/// entropy features, then (optionally) k = 1..3 relative k-mer frequencies in
/// lexicographic word order. 108 values without histograms, 192 with.
class FeatureSchema {
public:
    static FeatureSchema standard(bool include_histograms = true);

    const std::vector<FeatureEntry>& entries() const { return entries_; }
    std::vector<std::string> names() const;
    std::size_t size() const { return entries_.size(); }
    /// Changes whenever the order or length changes.
    const std::string& version() const { return version_; }
    bool include_histograms() const { return include_histograms_; }

private:
    std::vector<FeatureEntry> entries_;
    std::string version_;
    bool include_histograms_ = true;
};

constexpr std::size_t kNetworkFeatureCount = 96;
constexpr std::size_t kEntropyFeatureCount = 12;
constexpr std::size_t kHistogramFeatureCount = 84;
constexpr std::size_t kMinFeatureSequenceLength = 6;

struct FeatureVector {
    std::string id;
    std::optional<std::string> label;
    std::vector<double> values;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// True when the record is long enough for every standard network.
bool supports_standard_features(const SequenceRecord& record);

FeatureVector extract_features(const SequenceRecord& record, const FeatureOptions& options = {});

/// Extracts every record, optionally on several threads. Output order always
/// follows record order.
std::vector<FeatureVector> extract_all(const std::vector<SequenceRecord>& records,
                                       const FeatureOptions& options = {},
                                       unsigned threads = 1);

/// Shortest decimal text with 17 significant digits.
std::string format_value(double value);

/// Columns: id, features..., class. Unlabeled rows leave class empty.
std::string export_csv(const std::vector<FeatureVector>& vectors, const FeatureSchema& schema);

/// Numeric attribute per feature plus a nominal class. Class values follow
/// `classes` when given, otherwise first appearance.
std::string export_arff(const std::vector<FeatureVector>& vectors, const FeatureSchema& schema,
                        std::string_view relation_name,
                        const std::vector<std::string>& classes = {});

/// A feature file read back from disk.
struct FeatureTable {
    std::vector<std::string> feature_names;
    std::vector<FeatureVector> rows;
};

FeatureTable parse_csv(std::istream& in);
FeatureTable parse_csv(std::string_view text);
FeatureTable parse_arff(std::istream& in);
FeatureTable parse_arff(std::string_view text);

/// Dispatches on the extension: ".csv" or ".arff".
FeatureTable read_feature_file(const std::filesystem::path& path);

}  // namespace kmernet
