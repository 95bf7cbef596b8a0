#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "kmernet/kmergraph.hpp"

namespace kmernet {

/// All-pairs hop distances on the unweighted topology (self-loops ignored).
class DistanceMatrix {
public:
    static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kUnreachable) {}

    std::size_t size() const { return n_; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    std::uint32_t& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
    bool reachable(std::size_t i, std::size_t j) const { return (*this)(i, j) != kUnreachable; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint32_t> d_;
};

/// Scalar summary of one network. Per-node measures are averaged over nodes.
struct NetworkMeasures {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    double avg_degree = 0;
    double degree_std = 0;
    std::size_t degree_min = 0;
    std::size_t degree_max = 0;
    double avg_path_length = 0;
    double avg_clustering = 0;
    double transitivity_ratio = 0;
    double avg_betweenness = 0;
    double avg_closeness = 0;
    double avg_efficiency = 0;
    std::uint64_t triangle_count = 0;
    std::uint64_t triad_count = 0;
    std::size_t n_communities = 0;
    double modularity = 0;

    static constexpr std::size_t kFieldCount = 16;
    /// Field names in declaration order.
    static const std::vector<std::string_view>& field_names();
    std::vector<double> values() const;

    friend bool operator==(const NetworkMeasures&, const NetworkMeasures&) = default;
};

/// BFS from every node.
DistanceMatrix shortest_path_matrix(const KmerGraph& graph);

/// Mean hop distance over ordered pairs i != j that are mutually reachable;
/// 0 when no pair is. Throws for fewer than two nodes.
double average_path_length(const DistanceMatrix& distances);

/// Weighted (Barrat) clustering of one node; 0 when its degree is below 2.
double weighted_clustering(const KmerGraph& graph, std::size_t node);
double weighted_clustering(const KmerGraph& graph, std::string_view label);

/// Unnormalized shortest-path betweenness, each unordered pair counted once.
std::vector<double> betweenness_all(const KmerGraph& graph);

/// Harmonic closeness: sum of 1/d over reachable nodes.
std::vector<double> closeness_all(const KmerGraph& graph);
std::vector<double> closeness_all(const DistanceMatrix& distances);

/// 1 / eccentricity inside the node's component; 0 for isolated nodes.
std::vector<double> efficiency_all(const KmerGraph& graph);
std::vector<double> efficiency_all(const DistanceMatrix& distances);

struct MotifCounts {
    std::uint64_t triangles = 0;
    /// Connected 3-node subgraphs: open two-paths plus triangles.
    std::uint64_t triads = 0;
    double transitivity_ratio = 0;

    friend bool operator==(const MotifCounts&, const MotifCounts&) = default;
};

MotifCounts motif_counts(const KmerGraph& graph);

struct CommunityResult {
    std::size_t n_communities = 0;
    double modularity = 0;
    /// Community id per node index. Ids are dense, numbered by first node.
    std::vector<std::size_t> assignment;
};

/// Modularity of a partition, using edge weights and ignoring self-loops.
/// Returns 0 for graphs without non-loop edges.
double modularity(const KmerGraph& graph, const std::vector<std::size_t>& assignment);

/// Agglomerative greedy modularity maximization. At each step the connected
/// community pair with the largest gain merges; ties go to the
/// lexicographically smallest pair of community representatives (the smallest
/// label in each). Returns the best partition seen along the merge sequence.
CommunityResult detect_communities(const KmerGraph& graph);

/// Every measure in one bundle. Graphs with fewer than two nodes or no
/// non-loop edge yield n_nodes, n_communities = n_nodes and zeros elsewhere.
NetworkMeasures measure_graph(const KmerGraph& graph);

}  // namespace kmernet
