#include "commands.hpp"

#include <fstream>
#include <iostream>

#include "kmernet/classify.hpp"
#include "kmernet/error.hpp"
#include "kmernet/features.hpp"
#include "kmernet/kmergraph.hpp"
#include "kmernet/seqio.hpp"

namespace kmernet::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("failed writing " + path.string());
}

Dataset read_fasta_file(const std::filesystem::path& path, const std::optional<std::string>& label) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    try {
        return parse_fasta(in, label);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

void print_run_header(std::ostream& out, std::uint64_t seed, const std::string& schema_version) {
    out << "seed: " << seed << '\n' << "schema: " << schema_version << '\n';
}

}  // namespace

LabeledPath parse_labeled_path(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
        throw Error("expected <label>=<path>, got '" + text + "'");
    }
    return {text.substr(0, eq), text.substr(eq + 1)};
}

void run_synth(const SynthOptions& opts, std::ostream& out, std::ostream&) {
    std::vector<std::pair<std::string, std::string>> classes;
    if (opts.classes.empty()) {
        classes = {{"cds", "uniform-iid"},
                   {"intergenic", "repeat-rich"},
                   {"hspromoter", "motif-planted-markov"}};
    } else {
        for (const auto& c : opts.classes) {
            auto lp = parse_labeled_path(c);
            classes.emplace_back(lp.label, lp.path.string());
        }
    }
    std::vector<ClassSpec> specs;
    for (const auto& [label, model] : classes) {
        specs.push_back(ClassSpec{label, opts.count, parse_generator_model(model), opts.length});
    }
    const Dataset dataset = generate_synthetic(specs, opts.seed);

    std::filesystem::create_directories(opts.output_dir);
    print_run_header(out, opts.seed, FeatureSchema::standard(true).version());
    for (const auto& spec : specs) {
        std::vector<SequenceRecord> records;
        for (const auto& r : dataset.records()) {
            if (r.label == spec.label) records.push_back(r);
        }
        const auto path = opts.output_dir / (spec.label + ".fa");
        write_file(path, write_fasta(Dataset(std::move(records))));
        out << "wrote " << spec.count << " " << to_string(spec.model) << " sequences of length "
            << spec.length << " to " << path.string() << '\n';
    }
}

void run_extract(const ExtractOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.inputs.empty()) throw Error("at least one --input <label>=<path> is required");
    const auto ext = opts.output.extension().string();
    if (ext != ".csv" && ext != ".arff") {
        throw Error("output must end in .csv or .arff, got '" + opts.output.string() + "'");
    }
    if (opts.window_length < 1) throw Error("window length must be positive");
    if (opts.window_length < 64) {
        err << "warning: window length " << opts.window_length
            << " is below 4^3 = 64; trinucleotide window entropies will be undersampled\n";
    }

    std::vector<Dataset> parts;
    for (const auto& input : opts.inputs) {
        auto lp = parse_labeled_path(input);
        parts.push_back(read_fasta_file(lp.path, lp.label));
    }
    const Dataset dataset = Dataset::concat(parts);

    std::vector<SequenceRecord> usable;
    std::vector<std::string> skipped;
    for (const auto& r : dataset.records()) {
        if (supports_standard_features(r)) {
            usable.push_back(r);
        } else {
            skipped.push_back(r.id);
        }
    }
    if (!skipped.empty()) {
        err << "warning: skipped " << skipped.size() << " sequence(s) shorter than "
            << kMinFeatureSequenceLength << " residues:";
        for (const auto& id : skipped) err << ' ' << id;
        err << '\n';
    }
    if (usable.empty()) throw Error("no sequences long enough for feature extraction");

    const FeatureOptions options{opts.histograms, opts.window_length};
    const auto schema = FeatureSchema::standard(opts.histograms);
    const auto vectors = extract_all(usable, options, opts.threads);

    print_run_header(out, opts.seed, schema.version());
    if (ext == ".csv") {
        write_file(opts.output, export_csv(vectors, schema));
    } else {
        write_file(opts.output, export_arff(vectors, schema, opts.relation, dataset.classes()));
    }
    out << "extracted " << vectors.size() << " feature vectors (" << schema.size()
        << " features, " << dataset.classes().size() << " classes, " << skipped.size()
        << " skipped) to " << opts.output.string() << '\n';
}

void run_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream&) {
    const auto table = read_feature_file(opts.input);
    if (table.rows.empty()) throw Error("feature file has no rows");
    for (const auto& row : table.rows) {
        if (!row.label) throw Error("missing label for row " + row.id);
    }
    ClassifierSpec spec{parse_classifier_kind(opts.classifier), opts.k};
    auto rows = table.rows;
    if (opts.permute_labels) rows = permute_labels(std::move(rows), opts.seed);
    const auto report = cross_validate(rows, spec, opts.folds, opts.seed);

    const auto schema_version = "kmernet-features/1+" + std::to_string(table.feature_names.size());
    print_run_header(out, opts.seed, schema_version);
    if (opts.permute_labels) out << "labels: permuted (control run)\n";
    const auto text = report_text(report);
    out << text;

    std::optional<std::filesystem::path> roc_path = opts.roc;
    if (opts.output) {
        write_file(*opts.output, text);
        if (!roc_path) {
            roc_path = opts.output->parent_path() / (opts.output->stem().string() + ".roc.csv");
        }
    }
    if (roc_path) {
        write_file(*roc_path, roc_csv(report));
        out << "wrote ROC points to " << roc_path->string() << '\n';
    }
}

void run_graph(const GraphOptions& opts, std::ostream& out, std::ostream&) {
    const NetworkConfig config{opts.word_size, opts.step};
    config.validate();
    const Dataset dataset = read_fasta_file(opts.input, std::nullopt);
    const auto& record = dataset.records().front();
    const auto dot = export_dot(build_network(record, config));
    if (opts.output) {
        print_run_header(out, opts.seed, "n/a");
        write_file(*opts.output, dot);
        out << "wrote network of " << record.id << " (WS=" << config.word_size
            << ", P=" << config.step << ") to " << opts.output->string() << '\n';
    } else {
        out << dot;
    }
}

}  // namespace kmernet::cli
