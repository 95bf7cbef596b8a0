#include "kmernet/kmergraph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "kmernet/error.hpp"

namespace kmernet {

void NetworkConfig::validate() const {
    if (word_size < 1) throw Error("word size must be at least 1");
    if (step < 1) throw Error("step must be at least 1");
    if (step > word_size) {
        throw Error("invalid network config: step " + std::to_string(step) +
                    " exceeds word size " + std::to_string(word_size) + " (P <= WS required)");
    }
}

std::optional<std::size_t> KmerGraph::index_of(std::string_view label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::uint64_t KmerGraph::weight(std::size_t u, std::size_t v) const {
    if (u == v) return self_loops_.at(u);
    const auto& nbrs = adjacency_.at(u);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v) return 0;
    return adjacency_weights_[u][static_cast<std::size_t>(it - nbrs.begin())];
}

std::uint64_t KmerGraph::strength(std::size_t node) const {
    std::uint64_t s = 0;
    for (auto w : adjacency_weights_.at(node)) s += w;
    return s;
}

bool KmerGraph::adjacent(std::size_t u, std::size_t v) const {
    if (u == v) return false;
    const auto& nbrs = adjacency_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::uint64_t KmerGraph::total_weight() const {
    std::uint64_t total = 0;
    for (const auto& e : edges_) total += e.weight;
    return total;
}

void KmerGraphBuilder::add_node(std::string_view label) {
    labels_.emplace(label);
}

void KmerGraphBuilder::add_edge(std::string_view a, std::string_view b, std::uint64_t weight) {
    if (weight == 0) throw Error("edge weight must be positive");
    labels_.emplace(a);
    labels_.emplace(b);
    auto key = a <= b ? std::pair{std::string(a), std::string(b)}
                      : std::pair{std::string(b), std::string(a)};
    weights_[key] += weight;
}

KmerGraph KmerGraphBuilder::build() const {
    KmerGraph g;
    g.labels_.assign(labels_.begin(), labels_.end());
    const std::size_t n = g.labels_.size();
    g.adjacency_.assign(n, {});
    g.adjacency_weights_.assign(n, {});
    g.self_loops_.assign(n, 0);

    // weights_ is ordered by label pair, which matches index order.
    for (const auto& [key, w] : weights_) {
        std::size_t u = *g.index_of(key.first);
        std::size_t v = *g.index_of(key.second);
        g.edges_.push_back(WeightedEdge{u, v, w});
        if (u == v) {
            g.self_loops_[u] = w;
        } else {
            ++g.non_loop_edges_;
        }
    }
    for (const auto& e : g.edges_) {
        if (e.is_self_loop()) continue;
        g.adjacency_[e.u].push_back(e.v);
        g.adjacency_weights_[e.u].push_back(e.weight);
        g.adjacency_[e.v].push_back(e.u);
        g.adjacency_weights_[e.v].push_back(e.weight);
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& nbrs = g.adjacency_[i];
        auto& ws = g.adjacency_weights_[i];
        std::vector<std::size_t> order(nbrs.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return nbrs[a] < nbrs[b]; });
        std::vector<std::size_t> sorted_nbrs;
        std::vector<std::uint64_t> sorted_ws;
        for (auto k : order) {
            sorted_nbrs.push_back(nbrs[k]);
            sorted_ws.push_back(ws[k]);
        }
        nbrs = std::move(sorted_nbrs);
        ws = std::move(sorted_ws);
    }
    return g;
}

KmerGraph build_network(const SequenceRecord& record, const NetworkConfig& config) {
    config.validate();
    const auto& seq = record.residues;
    if (seq.size() < config.word_size + config.step) {
        throw Error("sequence shorter than WS+P (record " + record.id + ", length " +
                    std::to_string(seq.size()) + ", WS=" + std::to_string(config.word_size) +
                    ", P=" + std::to_string(config.step) + ")");
    }

    KmerGraphBuilder builder;
    std::optional<std::string_view> previous;
    for (std::size_t offset = 0; offset + config.word_size <= seq.size(); offset += config.step) {
        auto word = std::string_view(seq).substr(offset, config.word_size);
        if (word.find('N') != std::string_view::npos) {
            previous.reset();
            continue;
        }
        if (previous) {
            builder.add_edge(*previous, word);
        } else {
            builder.add_node(word);
        }
        previous = word;
    }
    return builder.build();
}

const std::vector<NetworkConfig>& standard_configs() {
    static const std::vector<NetworkConfig> configs = {
        {1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3},
    };
    return configs;
}

std::vector<std::pair<NetworkConfig, KmerGraph>> standard_network_set(const SequenceRecord& record) {
    std::vector<std::pair<NetworkConfig, KmerGraph>> out;
    out.reserve(standard_configs().size());
    for (const auto& config : standard_configs()) {
        out.emplace_back(config, build_network(record, config));
    }
    return out;
}

namespace {

// Bare identifiers stay unquoted; anything else becomes a quoted string.
std::string dot_id(const std::string& label) {
    bool bare = !label.empty() && !std::isdigit(static_cast<unsigned char>(label[0]));
    for (char c : label) {
        bare = bare && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    }
    if (bare) return label;
    std::string out = "\"";
    for (char c : label) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string export_dot(const KmerGraph& graph) {
    std::ostringstream out;
    out << "graph {\n";
    for (const auto& label : graph.labels()) {
        out << "  " << dot_id(label) << ";\n";
    }
    for (const auto& e : graph.edges()) {
        out << "  " << dot_id(graph.label(e.u)) << " -- " << dot_id(graph.label(e.v))
            << " [weight=" << e.weight << ", label=" << e.weight << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace kmernet
