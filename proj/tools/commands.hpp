#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kmernet::cli {

struct LabeledPath {
    std::string label;
    std::filesystem::path path;
};

/// Parses "<label>=<path>".
LabeledPath parse_labeled_path(const std::string& text);

struct SynthOptions {
    std::filesystem::path output_dir;
    /// "<label>=<model>" entries; empty means the three-class benchmark.
    std::vector<std::string> classes;
    std::size_t count = 150;
    std::size_t length = 500;
    std::uint64_t seed = 42;
};

struct ExtractOptions {
    std::vector<std::string> inputs;
    std::filesystem::path output;
    std::size_t window_length = 100;
    bool histograms = true;
    unsigned threads = 1;
    std::string relation = "kmernet_features";
    std::uint64_t seed = 42;
};

struct ClassifyOptions {
    std::filesystem::path input;
    std::optional<std::filesystem::path> output;
    std::optional<std::filesystem::path> roc;
    std::string classifier = "knn";
    std::size_t k = 1;
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    bool permute_labels = false;
};

struct GraphOptions {
    std::filesystem::path input;
    std::optional<std::filesystem::path> output;
    std::size_t word_size = 2;
    std::size_t step = 1;
    std::uint64_t seed = 42;
};

// Each command writes progress to `out`, warnings to `err`, and throws
// kmernet::Error on failure.
void run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);
void run_extract(const ExtractOptions& opts, std::ostream& out, std::ostream& err);
void run_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err);
void run_graph(const GraphOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace kmernet::cli
