#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "kmernet/error.hpp"

int main(int argc, char** argv) {
    using namespace kmernet::cli;

    CLI::App app{"k-mer adjacency network and entropy features for DNA sequence classification"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a seeded synthetic dataset, one FASTA per class");
    synth_cmd->add_option("--output", synth.output_dir, "Output directory")->required();
    synth_cmd->add_option("--class", synth.classes,
                          "Class as <label>=<model>; models: uniform-iid, repeat-rich, "
                          "motif-planted-markov (default: the three-class benchmark)");
    synth_cmd->add_option("--count", synth.count, "Sequences per class")->capture_default_str();
    synth_cmd->add_option("--length", synth.length, "Sequence length")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();

    ExtractOptions extract;
    auto* extract_cmd = app.add_subcommand("extract", "Extract feature vectors from labeled FASTA files");
    extract_cmd->add_option("--input", extract.inputs, "Labeled FASTA as <label>=<path> (repeatable)")
        ->required();
    extract_cmd->add_option("--output", extract.output, "Feature file (.csv or .arff)")->required();
    extract_cmd->add_option("--window-length", extract.window_length, "Entropy window length")
        ->capture_default_str();
    extract_cmd->add_flag("--histograms,!--no-histograms", extract.histograms,
                          "Include k-mer relative frequencies (default on)");
    extract_cmd->add_option("--threads", extract.threads, "Worker threads")->capture_default_str();
    extract_cmd->add_option("--relation", extract.relation, "ARFF relation name")->capture_default_str();
    extract_cmd->add_option("--seed", extract.seed, "Seed echoed in the run header")->capture_default_str();

    ClassifyOptions classify;
    auto* classify_cmd = app.add_subcommand("classify", "Stratified cross-validation on a feature file");
    classify_cmd->add_option("--input", classify.input, "Feature file (.csv or .arff)")->required();
    classify_cmd->add_option("--output", classify.output, "Report text file");
    classify_cmd->add_option("--roc", classify.roc, "ROC point CSV (default: <output stem>.roc.csv)");
    classify_cmd->add_option("--classifier", classify.classifier, "knn or gnb")
        ->check(CLI::IsMember({"knn", "gnb"}))
        ->capture_default_str();
    classify_cmd->add_option("--k", classify.k, "Neighbours for knn")->capture_default_str();
    classify_cmd->add_option("--folds", classify.folds, "Cross-validation folds")->capture_default_str();
    classify_cmd->add_option("--seed", classify.seed, "Fold assignment seed")->capture_default_str();
    classify_cmd->add_flag("--permute-labels", classify.permute_labels,
                           "Shuffle labels first (chance-level control)");

    GraphOptions graph;
    auto* graph_cmd = app.add_subcommand("graph", "Export the network of the first sequence as DOT");
    graph_cmd->add_option("--input", graph.input, "FASTA file")->required();
    graph_cmd->add_option("--output", graph.output, "DOT file (default: stdout)");
    graph_cmd->add_option("--ws", graph.word_size, "Word size")->capture_default_str();
    graph_cmd->add_option("--step", graph.step, "Step")->capture_default_str();
    graph_cmd->add_option("--seed", graph.seed, "Seed echoed in the run header")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth_cmd) run_synth(synth, std::cout, std::cerr);
        if (*extract_cmd) run_extract(extract, std::cout, std::cerr);
        if (*classify_cmd) run_classify(classify, std::cout, std::cerr);
        if (*graph_cmd) run_graph(graph, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
