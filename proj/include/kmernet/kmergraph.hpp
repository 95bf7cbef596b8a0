#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kmernet/seqio.hpp"

namespace kmernet {

/// Word size (characters per node) and step (characters advanced between
/// consecutive words). Requires 1 <= step <= word_size.
struct NetworkConfig {
    std::size_t word_size = 1;
    std::size_t step = 1;

    void validate() const;

    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// Undirected edge between node indices u <= v.
struct WeightedEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    std::uint64_t weight = 0;

    bool is_self_loop() const { return u == v; }

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

class KmerGraphBuilder;

/// Immutable weighted undirected graph over k-mer labels.
///
/// Nodes are indexed in lexicographic label order, so two graphs with the
/// same labels and edges are identical regardless of construction order.
/// Self-loops are stored but are not part of neighbors(), degree() or
/// strength().
class KmerGraph {
public:
    KmerGraph() = default;

    std::size_t node_count() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t node) const { return labels_.at(node); }
    std::optional<std::size_t> index_of(std::string_view label) const;

    /// Edges sorted by (u, v), self-loops included.
    const std::vector<WeightedEdge>& edges() const { return edges_; }

    /// Count of distinct non-self-loop edges.
    std::size_t edge_count() const { return non_loop_edges_; }

    /// Weight of {u, v}, 0 when absent.
    std::uint64_t weight(std::size_t u, std::size_t v) const;
    std::uint64_t self_loop_weight(std::size_t node) const { return self_loops_.at(node); }

    /// Sorted neighbor indices, self excluded.
    const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_.at(node); }
    std::size_t degree(std::size_t node) const { return adjacency_.at(node).size(); }
    std::uint64_t strength(std::size_t node) const;
    bool adjacent(std::size_t u, std::size_t v) const;

    /// Sum of all edge weights, each self-loop counted once.
    std::uint64_t total_weight() const;

    friend bool operator==(const KmerGraph& a, const KmerGraph& b) {
        return a.labels_ == b.labels_ && a.edges_ == b.edges_;
    }

private:
    friend class KmerGraphBuilder;

    std::vector<std::string> labels_;
    std::vector<WeightedEdge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::vector<std::uint64_t>> adjacency_weights_;
    std::vector<std::uint64_t> self_loops_;
    std::size_t non_loop_edges_ = 0;
};

/// Accumulates nodes and weighted adjacencies, then freezes them into a
/// KmerGraph.
class KmerGraphBuilder {
public:
    void add_node(std::string_view label);
    /// Adds both endpoints if missing; repeated pairs accumulate weight.
    void add_edge(std::string_view a, std::string_view b, std::uint64_t weight = 1);

    KmerGraph build() const;

private:
    std::set<std::string, std::less<>> labels_;
    std::map<std::pair<std::string, std::string>, std::uint64_t> weights_;
};

/// Walks the sequence at offsets 0, P, 2P, ... taking words of WS characters
/// and links each pair of consecutive words. Words containing 'N' are dropped
/// and break the chain. Trailing residues that cannot fill a word are ignored.
KmerGraph build_network(const SequenceRecord& record, const NetworkConfig& config);

/// The six configurations (1,1) (2,1) (2,2) (3,1) (3,2) (3,3), in this order.
const std::vector<NetworkConfig>& standard_configs();

std::vector<std::pair<NetworkConfig, KmerGraph>> standard_network_set(const SequenceRecord& record);

/// Graphviz DOT; nodes in lexicographic order, edges labeled with weights.
std::string export_dot(const KmerGraph& graph);

}  // namespace kmernet
