#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kmernet {

/// One FASTA entry. Residues are uppercase over {A,C,G,T,N}.
struct SequenceRecord {
    std::string id;
    std::string residues;
    std::optional<std::string> label;

    std::size_t size() const { return residues.size(); }

    friend bool operator==(const SequenceRecord&, const SequenceRecord&) = default;
};

/// Ordered records plus the distinct labels in order of first appearance.
class Dataset {
public:
    Dataset() = default;

    /// Validates residues, id uniqueness and label bookkeeping.
    explicit Dataset(std::vector<SequenceRecord> records);

    const std::vector<SequenceRecord>& records() const { return records_; }
    const std::vector<std::string>& classes() const { return classes_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    /// Concatenates datasets in argument order. Ids must stay unique.
    static Dataset concat(const std::vector<Dataset>& parts);

private:
    std::vector<SequenceRecord> records_;
    std::vector<std::string> classes_;
};

/// Reads FASTA text. Lowercase residues are folded to uppercase, wrapped
/// sequence lines are joined, and every record gets `label` when given.
Dataset parse_fasta(std::istream& in, const std::optional<std::string>& label = std::nullopt);
Dataset parse_fasta(std::string_view text, const std::optional<std::string>& label = std::nullopt);

constexpr std::size_t kFastaLineWidth = 70;

void write_fasta(std::ostream& out, const Dataset& dataset);
std::string write_fasta(const Dataset& dataset);

enum class GeneratorModel {
    UniformIid,
    RepeatRich,
    MotifPlantedMarkov,
};

/// Accepts "uniform-iid", "repeat-rich" and "motif-planted-markov".
GeneratorModel parse_generator_model(std::string_view name);
std::string_view to_string(GeneratorModel model);

struct ClassSpec {
    std::string label;
    std::size_t count = 0;
    GeneratorModel model = GeneratorModel::UniformIid;
    std::size_t length = 0;
};

/// The motif planted by the promoter-like generator, and where it is placed.
constexpr std::string_view kPlantedMotif = "TATAAA";
constexpr std::size_t kMotifOffset = 30;
constexpr std::size_t kMotifJitter = 5;

/// Seeded labeled dataset. Records are named "<label>_<n>" (1-based) and are
/// exactly `length` residues long.
Dataset generate_synthetic(const std::vector<ClassSpec>& classes, std::uint64_t seed);

}  // namespace kmernet
