#include "kmernet/netmeasures.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "kmernet/error.hpp"

namespace kmernet {

const std::vector<std::string_view>& NetworkMeasures::field_names() {
    static const std::vector<std::string_view> names = {
        "n_nodes",          "n_edges",         "avg_degree",         "degree_std",
        "degree_min",       "degree_max",      "avg_path_length",    "avg_clustering",
        "transitivity",     "avg_betweenness", "avg_closeness",      "avg_efficiency",
        "triangle_count",   "triad_count",     "n_communities",      "modularity",
    };
    return names;
}

std::vector<double> NetworkMeasures::values() const {
    return {
        static_cast<double>(n_nodes),
        static_cast<double>(n_edges),
        avg_degree,
        degree_std,
        static_cast<double>(degree_min),
        static_cast<double>(degree_max),
        avg_path_length,
        avg_clustering,
        transitivity_ratio,
        avg_betweenness,
        avg_closeness,
        avg_efficiency,
        static_cast<double>(triangle_count),
        static_cast<double>(triad_count),
        static_cast<double>(n_communities),
        modularity,
    };
}

DistanceMatrix shortest_path_matrix(const KmerGraph& graph) {
    const std::size_t n = graph.node_count();
    DistanceMatrix d(n);
    std::vector<std::size_t> queue;
    queue.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        queue.clear();
        d.at(s, s) = 0;
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::size_t u = queue[head];
            for (std::size_t v : graph.neighbors(u)) {
                if (d(s, v) == DistanceMatrix::kUnreachable) {
                    d.at(s, v) = d(s, u) + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return d;
}

double average_path_length(const DistanceMatrix& distances) {
    const std::size_t n = distances.size();
    if (n < 2) throw Error("degenerate graph: average path length needs at least 2 nodes");
    std::uint64_t sum = 0;
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !distances.reachable(i, j)) continue;
            sum += distances(i, j);
            ++pairs;
        }
    }
    return pairs == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(pairs);
}

double weighted_clustering(const KmerGraph& graph, std::size_t node) {
    if (node >= graph.node_count()) throw Error("unknown node index " + std::to_string(node));
    const auto& nbrs = graph.neighbors(node);
    const std::size_t k = nbrs.size();
    if (k < 2) return 0.0;
    // Each unordered pair {j, h} covers both ordered terms (w_ij + w_ih) / 2.
    std::uint64_t pair_sum = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (graph.adjacent(nbrs[a], nbrs[b])) {
                pair_sum += graph.weight(node, nbrs[a]) + graph.weight(node, nbrs[b]);
            }
        }
    }
    return static_cast<double>(pair_sum) /
           (static_cast<double>(graph.strength(node)) * static_cast<double>(k - 1));
}

double weighted_clustering(const KmerGraph& graph, std::string_view label) {
    auto idx = graph.index_of(label);
    if (!idx) throw Error("unknown node '" + std::string(label) + "'");
    return weighted_clustering(graph, *idx);
}

std::vector<double> betweenness_all(const KmerGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<double> centrality(n, 0.0);
    std::vector<std::size_t> order;
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<std::int64_t> dist(n);
    order.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            std::size_t u = order[head];
            for (std::size_t v : graph.neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    order.push_back(v);
                }
                if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
            }
        }
        // Reverse BFS order; predecessors of w are neighbors one hop closer.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t w = *it;
            for (std::size_t v : graph.neighbors(w)) {
                if (dist[v] == dist[w] - 1) {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
            }
            if (w != s) centrality[w] += delta[w];
        }
    }
    for (auto& c : centrality) c /= 2.0;
    return centrality;
}

std::vector<double> closeness_all(const DistanceMatrix& distances) {
    const std::size_t n = distances.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && distances.reachable(i, j)) out[i] += 1.0 / distances(i, j);
        }
    }
    return out;
}

std::vector<double> closeness_all(const KmerGraph& graph) {
    return closeness_all(shortest_path_matrix(graph));
}

std::vector<double> efficiency_all(const DistanceMatrix& distances) {
    const std::size_t n = distances.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t ecc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && distances.reachable(i, j)) ecc = std::max(ecc, distances(i, j));
        }
        out[i] = ecc == 0 ? 0.0 : 1.0 / ecc;
    }
    return out;
}

std::vector<double> efficiency_all(const KmerGraph& graph) {
    return efficiency_all(shortest_path_matrix(graph));
}

MotifCounts motif_counts(const KmerGraph& graph) {
    const std::size_t n = graph.node_count();
    MotifCounts out;
    std::uint64_t connected_pairs = 0;  // sum over nodes of C(k, 2)
    for (std::size_t u = 0; u < n; ++u) {
        const std::uint64_t k = graph.degree(u);
        connected_pairs += k * (k - (k > 0 ? 1 : 0)) / 2;
        // Each triangle u < v < w is found once, from its smallest corner.
        const auto& nbrs = graph.neighbors(u);
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            if (nbrs[a] < u) continue;
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                if (graph.adjacent(nbrs[a], nbrs[b])) ++out.triangles;
            }
        }
    }
    out.triads = connected_pairs - 2 * out.triangles;
    out.transitivity_ratio =
        connected_pairs == 0 ? 0.0
                             : 3.0 * static_cast<double>(out.triangles) /
                                   static_cast<double>(connected_pairs);
    return out;
}

double modularity(const KmerGraph& graph, const std::vector<std::size_t>& assignment) {
    const std::size_t n = graph.node_count();
    if (assignment.size() != n) throw Error("assignment size does not match node count");
    std::uint64_t total = 0;
    for (const auto& e : graph.edges()) {
        if (!e.is_self_loop()) total += e.weight;
    }
    if (total == 0) return 0.0;
    const std::size_t n_comm = n == 0 ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<double> internal(n_comm, 0.0);
    std::vector<double> tot(n_comm, 0.0);
    for (const auto& e : graph.edges()) {
        if (e.is_self_loop()) continue;
        if (assignment[e.u] == assignment[e.v]) internal[assignment[e.u]] += static_cast<double>(e.weight);
    }
    for (std::size_t i = 0; i < n; ++i) tot[assignment[i]] += static_cast<double>(graph.strength(i));
    const double m = static_cast<double>(total);
    double q = 0.0;
    for (std::size_t c = 0; c < n_comm; ++c) {
        q += internal[c] / m - (tot[c] / (2.0 * m)) * (tot[c] / (2.0 * m));
    }
    return q;
}

namespace {

std::vector<std::size_t> dense_assignment(const std::vector<std::size_t>& raw) {
    std::vector<std::size_t> remap(raw.size(), SIZE_MAX);
    std::vector<std::size_t> out(raw.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (remap[raw[i]] == SIZE_MAX) remap[raw[i]] = next++;
        out[i] = remap[raw[i]];
    }
    return out;
}

}  // namespace

CommunityResult detect_communities(const KmerGraph& graph) {
    const std::size_t n = graph.node_count();
    CommunityResult result;
    result.assignment.resize(n);
    std::iota(result.assignment.begin(), result.assignment.end(), std::size_t{0});
    result.n_communities = n;

    std::int64_t total = 0;
    for (const auto& e : graph.edges()) {
        if (!e.is_self_loop()) total += static_cast<std::int64_t>(e.weight);
    }
    if (total == 0) return result;

    // Integer bookkeeping keeps the gain comparisons (and therefore the
    // tie-breaking) exact. With W the total weight, the scaled quantities are
    //   Q * 4W^2         = sum_c (4W * internal_c - tot_c^2)
    //   dQ(c, d) * 2W^2  = 2W * between(c, d) - tot_c * tot_d
    // Community c is identified by its smallest node index, which is also its
    // lexicographically smallest label.
    // |Q * 4W^2| <= 4W^2, which fits in 64 bits for any realistic sequence.
    using Wide = std::int64_t;
    if (total > 1'000'000'000) throw Error("graph too heavy for exact modularity bookkeeping");
    const Wide w = total;
    std::vector<std::vector<std::int64_t>> between(n, std::vector<std::int64_t>(n, 0));
    std::vector<std::int64_t> tot(n, 0);
    std::vector<std::int64_t> internal(n, 0);
    std::vector<bool> alive(n, true);
    std::vector<std::size_t> owner(n);
    std::iota(owner.begin(), owner.end(), std::size_t{0});

    for (const auto& e : graph.edges()) {
        if (e.is_self_loop()) continue;
        between[e.u][e.v] += static_cast<std::int64_t>(e.weight);
        between[e.v][e.u] += static_cast<std::int64_t>(e.weight);
    }
    for (std::size_t i = 0; i < n; ++i) tot[i] = static_cast<std::int64_t>(graph.strength(i));

    auto scaled_q = [&]() {
        Wide q = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!alive[c]) continue;
            q += 4 * w * internal[c] - static_cast<Wide>(tot[c]) * tot[c];
        }
        return q;
    };

    Wide best_q = scaled_q();
    Wide current_q = best_q;

    while (true) {
        bool found = false;
        std::size_t best_c = 0;
        std::size_t best_d = 0;
        Wide best_gain = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!alive[c]) continue;
            for (std::size_t d = c + 1; d < n; ++d) {
                if (!alive[d] || between[c][d] == 0) continue;
                Wide gain = 2 * w * between[c][d] - static_cast<Wide>(tot[c]) * tot[d];
                // Row-major scan visits pairs in lexicographic order, so a
                // strict comparison keeps the smallest pair among equal gains.
                if (!found || gain > best_gain) {
                    found = true;
                    best_gain = gain;
                    best_c = c;
                    best_d = d;
                }
            }
        }
        if (!found) break;

        internal[best_c] += internal[best_d] + between[best_c][best_d];
        tot[best_c] += tot[best_d];
        alive[best_d] = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (x == best_c || x == best_d) continue;
            between[best_c][x] += between[best_d][x];
            between[x][best_c] = between[best_c][x];
            between[best_d][x] = 0;
            between[x][best_d] = 0;
        }
        between[best_c][best_d] = between[best_d][best_c] = 0;
        for (auto& o : owner) {
            if (o == best_d) o = best_c;
        }
        // dQ * 4W^2 = 2 * (dQ * 2W^2)
        current_q += 2 * best_gain;
        if (current_q > best_q) {
            best_q = current_q;
            result.assignment = owner;
        }
    }

    result.assignment = dense_assignment(result.assignment);
    result.n_communities =
        n == 0 ? 0 : *std::max_element(result.assignment.begin(), result.assignment.end()) + 1;
    result.modularity = static_cast<double>(best_q) / (4.0 * static_cast<double>(total) *
                                                        static_cast<double>(total));
    return result;
}

NetworkMeasures measure_graph(const KmerGraph& graph) {
    NetworkMeasures m;
    const std::size_t n = graph.node_count();
    m.n_nodes = n;
    m.n_communities = n;
    if (n < 2 || graph.edge_count() == 0) return m;

    m.n_edges = graph.edge_count();
    const double nd = static_cast<double>(n);
    m.avg_degree = 2.0 * static_cast<double>(m.n_edges) / nd;
    m.degree_min = graph.degree(0);
    m.degree_max = graph.degree(0);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = graph.degree(i);
        m.degree_min = std::min(m.degree_min, k);
        m.degree_max = std::max(m.degree_max, k);
        const double dev = static_cast<double>(k) - m.avg_degree;
        sq += dev * dev;
    }
    m.degree_std = std::sqrt(sq / nd);

    const auto distances = shortest_path_matrix(graph);
    m.avg_path_length = average_path_length(distances);

    auto mean = [nd](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s / nd;
    };
    std::vector<double> clustering(n);
    for (std::size_t i = 0; i < n; ++i) clustering[i] = weighted_clustering(graph, i);
    m.avg_clustering = mean(clustering);
    m.avg_betweenness = mean(betweenness_all(graph));
    m.avg_closeness = mean(closeness_all(distances));
    m.avg_efficiency = mean(efficiency_all(distances));

    const auto motifs = motif_counts(graph);
    m.triangle_count = motifs.triangles;
    m.triad_count = motifs.triads;
    m.transitivity_ratio = motifs.transitivity_ratio;

    const auto communities = detect_communities(graph);
    m.n_communities = communities.n_communities;
    m.modularity = communities.modularity;
    return m;
}

}  // namespace kmernet
