#include "kmernet/seqio.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "kmernet/error.hpp"
#include "kmernet/random.hpp"

namespace kmernet {

namespace {

bool is_residue(char c) {
    return c == 'A' || c == 'C' || c == 'G' || c == 'T' || c == 'N';
}

char fold_case(char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\v\f";
    auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

}  // namespace

Dataset::Dataset(std::vector<SequenceRecord> records) : records_(std::move(records)) {
    std::unordered_set<std::string> ids;
    std::unordered_set<std::string> seen_labels;
    bool any_labeled = false;
    bool any_unlabeled = false;
    for (const auto& rec : records_) {
        if (rec.id.empty()) throw Error("record with empty id");
        if (!ids.insert(rec.id).second) throw Error("duplicate record id '" + rec.id + "'");
        if (rec.residues.empty()) throw Error("empty sequence for record " + rec.id);
        for (std::size_t i = 0; i < rec.residues.size(); ++i) {
            if (!is_residue(rec.residues[i])) {
                throw Error("invalid residue at record " + rec.id + ", position " +
                            std::to_string(i + 1));
            }
        }
        if (rec.label) {
            any_labeled = true;
            if (seen_labels.insert(*rec.label).second) classes_.push_back(*rec.label);
        } else {
            any_unlabeled = true;
        }
    }
    if (any_labeled && any_unlabeled) throw Error("dataset mixes labeled and unlabeled records");
}

Dataset Dataset::concat(const std::vector<Dataset>& parts) {
    std::vector<SequenceRecord> all;
    for (const auto& part : parts) {
        all.insert(all.end(), part.records().begin(), part.records().end());
    }
    return Dataset(std::move(all));
}

Dataset parse_fasta(std::istream& in, const std::optional<std::string>& label) {
    std::vector<SequenceRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        auto view = trim(line);
        if (view.empty()) continue;
        if (view.front() == '>') {
            auto header = trim(view.substr(1));
            auto id = header.substr(0, header.find_first_of(" \t"));
            if (id.empty()) throw Error("malformed FASTA: header without identifier");
            records.push_back(SequenceRecord{std::string(id), {}, label});
            continue;
        }
        if (view.front() == ';') continue;  // legacy comment line
        if (records.empty()) throw Error("malformed FASTA: sequence line before any header");
        auto& rec = records.back();
        for (char c : view) {
            char u = fold_case(c);
            if (!is_residue(u)) {
                throw Error("invalid residue at record " + rec.id + ", position " +
                            std::to_string(rec.residues.size() + 1));
            }
            rec.residues.push_back(u);
        }
    }
    if (records.empty()) throw Error("no records");
    return Dataset(std::move(records));
}

Dataset parse_fasta(std::string_view text, const std::optional<std::string>& label) {
    std::istringstream in{std::string(text)};
    return parse_fasta(in, label);
}

void write_fasta(std::ostream& out, const Dataset& dataset) {
    for (const auto& rec : dataset.records()) {
        out << '>' << rec.id << '\n';
        for (std::size_t pos = 0; pos < rec.residues.size(); pos += kFastaLineWidth) {
            out << std::string_view(rec.residues).substr(pos, kFastaLineWidth) << '\n';
        }
    }
}

std::string write_fasta(const Dataset& dataset) {
    std::ostringstream out;
    write_fasta(out, dataset);
    return out.str();
}

GeneratorModel parse_generator_model(std::string_view name) {
    if (name == "uniform-iid") return GeneratorModel::UniformIid;
    if (name == "repeat-rich") return GeneratorModel::RepeatRich;
    if (name == "motif-planted-markov") return GeneratorModel::MotifPlantedMarkov;
    throw Error("unknown generator model '" + std::string(name) + "'");
}

std::string_view to_string(GeneratorModel model) {
    switch (model) {
        case GeneratorModel::UniformIid: return "uniform-iid";
        case GeneratorModel::RepeatRich: return "repeat-rich";
        case GeneratorModel::MotifPlantedMarkov: return "motif-planted-markov";
    }
    return "unknown";
}

namespace {

constexpr std::array<char, 4> kBases = {'A', 'C', 'G', 'T'};

char random_base(Rng& rng) {
    return kBases[uniform_index(rng, 4)];
}

std::string uniform_iid(std::size_t length, Rng& rng) {
    std::string s(length, 'A');
    for (auto& c : s) c = random_base(rng);
    return s;
}

// Tandem repeats of 1-6 bp units, 3-12 copies per block, 4% point mutations.
std::string repeat_rich(std::size_t length, Rng& rng) {
    constexpr double kMutationRate = 0.04;
    std::string s;
    s.reserve(length + 72);
    while (s.size() < length) {
        std::size_t unit_len = 1 + uniform_index(rng, 6);
        std::string unit(unit_len, 'A');
        for (auto& c : unit) c = random_base(rng);
        std::size_t copies = 3 + uniform_index(rng, 10);
        for (std::size_t i = 0; i < copies; ++i) s += unit;
    }
    s.resize(length);
    for (auto& c : s) {
        if (uniform_unit(rng) < kMutationRate) c = random_base(rng);
    }
    return s;
}

// Rows: current base (A,C,G,T); columns: next base. AT-rich with CpG depletion.
constexpr std::array<std::array<double, 4>, 4> kTransitions = {{
    {0.36, 0.14, 0.18, 0.32},
    {0.38, 0.22, 0.04, 0.36},
    {0.30, 0.20, 0.22, 0.28},
    {0.26, 0.16, 0.22, 0.36},
}};

std::size_t base_index(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        default: return 3;
    }
}

std::string motif_planted_markov(std::size_t length, Rng& rng) {
    std::string s(length, 'A');
    s[0] = random_base(rng);
    for (std::size_t i = 1; i < length; ++i) {
        const auto& row = kTransitions[base_index(s[i - 1])];
        double u = uniform_unit(rng);
        std::size_t next = 0;
        double acc = row[0];
        while (next < 3 && u >= acc) {
            ++next;
            acc += row[next];
        }
        s[i] = kBases[next];
    }
    std::size_t offset = kMotifOffset + uniform_index(rng, kMotifJitter + 1);
    s.replace(offset, kPlantedMotif.size(), kPlantedMotif);
    return s;
}

}  // namespace

Dataset generate_synthetic(const std::vector<ClassSpec>& classes, std::uint64_t seed) {
    if (classes.empty()) throw Error("no classes requested");
    Rng rng(seed);
    std::vector<SequenceRecord> records;
    for (const auto& spec : classes) {
        if (spec.label.empty()) throw Error("class label must be non-empty");
        if (spec.count == 0) throw Error("zero count for class '" + spec.label + "'");
        if (spec.length < 50) {
            throw Error("length for class '" + spec.label + "' must be at least 50");
        }
        for (std::size_t i = 0; i < spec.count; ++i) {
            std::string residues;
            switch (spec.model) {
                case GeneratorModel::UniformIid: residues = uniform_iid(spec.length, rng); break;
                case GeneratorModel::RepeatRich: residues = repeat_rich(spec.length, rng); break;
                case GeneratorModel::MotifPlantedMarkov:
                    residues = motif_planted_markov(spec.length, rng);
                    break;
            }
            records.push_back(SequenceRecord{spec.label + "_" + std::to_string(i + 1),
                                             std::move(residues), spec.label});
        }
    }
    return Dataset(std::move(records));
}

}  // namespace kmernet
