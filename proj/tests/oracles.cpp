#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace oracle {

Dense to_dense(const kmernet::KmerGraph& g) {
    Dense d;
    d.n = g.node_count();
    d.w.assign(d.n, std::vector<std::uint64_t>(d.n, 0));
    for (const auto& e : g.edges()) {
        if (e.u == e.v) continue;
        d.w[e.u][e.v] = e.weight;
        d.w[e.v][e.u] = e.weight;
    }
    return d;
}

kmernet::KmerGraph random_graph(std::mt19937_64& rng, std::size_t n, double p,
                                std::uint64_t max_weight, bool loops) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> weight(1, max_weight);
    auto name = [](std::size_t i) {
        return std::string("v") + (i < 10 ? "0" : "") + std::to_string(i);
    };
    kmernet::KmerGraphBuilder b;
    for (std::size_t i = 0; i < n; ++i) b.add_node(name(i));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (unit(rng) < p) b.add_edge(name(i), name(j), weight(rng));
        }
        if (loops && unit(rng) < 0.1) b.add_edge(name(i), name(i), weight(rng));
    }
    return b.build();
}

std::vector<std::vector<std::uint32_t>> all_pairs_relaxation(const Dense& g) {
    std::vector<std::vector<std::uint32_t>> d(g.n, std::vector<std::uint32_t>(g.n, kInf));
    for (std::size_t i = 0; i < g.n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < g.n; ++j) {
            if (g.adj(i, j)) d[i][j] = 1;
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t k = 0; k < g.n; ++k)
                for (std::size_t j = 0; j < g.n; ++j) {
                    if (d[i][k] == kInf || d[k][j] == kInf) continue;
                    if (d[i][k] + d[k][j] < d[i][j]) {
                        d[i][j] = d[i][k] + d[k][j];
                        changed = true;
                    }
                }
    }
    return d;
}

double average_path_length(const Dense& g) {
    auto d = all_pairs_relaxation(g);
    double sum = 0;
    double pairs = 0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            if (i != j && d[i][j] != kInf) {
                sum += d[i][j];
                pairs += 1;
            }
    return pairs == 0 ? 0.0 : sum / pairs;
}

std::vector<double> betweenness_by_enumeration(const Dense& g) {
    auto d = all_pairs_relaxation(g);
    std::vector<double> bc(g.n, 0.0);
    for (std::size_t s = 0; s < g.n; ++s) {
        for (std::size_t t = s + 1; t < g.n; ++t) {
            if (d[s][t] == kInf) continue;
            std::vector<std::vector<std::size_t>> paths;
            std::vector<std::size_t> path{s};
            std::function<void(std::size_t)> walk = [&](std::size_t u) {
                if (u == t) {
                    paths.push_back(path);
                    return;
                }
                if (path.size() - 1 >= d[s][t]) return;
                for (std::size_t v = 0; v < g.n; ++v) {
                    if (!g.adj(u, v)) continue;
                    if (std::find(path.begin(), path.end(), v) != path.end()) continue;
                    path.push_back(v);
                    walk(v);
                    path.pop_back();
                }
            };
            walk(s);
            for (const auto& p : paths) {
                for (std::size_t k = 1; k + 1 < p.size(); ++k) {
                    bc[p[k]] += 1.0 / static_cast<double>(paths.size());
                }
            }
        }
    }
    return bc;
}

std::uint64_t triangles_by_subsets(const Dense& g) {
    std::uint64_t t = 0;
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = a + 1; b < g.n; ++b)
            for (std::size_t c = b + 1; c < g.n; ++c)
                if (g.adj(a, b) && g.adj(b, c) && g.adj(a, c)) ++t;
    return t;
}

std::uint64_t triads_by_subsets(const Dense& g) {
    std::uint64_t t = 0;
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = a + 1; b < g.n; ++b)
            for (std::size_t c = b + 1; c < g.n; ++c) {
                int edges = g.adj(a, b) + g.adj(b, c) + g.adj(a, c);
                if (edges >= 2) ++t;
            }
    return t;
}

double modularity(const Dense& g, const std::vector<std::size_t>& c) {
    double two_m = 0;
    std::vector<double> k(g.n, 0.0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            if (i != j) {
                k[i] += static_cast<double>(g.w[i][j]);
                two_m += static_cast<double>(g.w[i][j]);
            }
    if (two_m == 0) return 0.0;
    double q = 0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            if (c[i] != c[j]) continue;
            double a = i == j ? 0.0 : static_cast<double>(g.w[i][j]);
            q += a - k[i] * k[j] / two_m;
        }
    return q / two_m;
}

double exhaustive_max_modularity(const Dense& g, std::vector<std::size_t>* best) {
    std::vector<std::size_t> c(g.n, 0);
    double best_q = -std::numeric_limits<double>::infinity();
    // Restricted growth strings: c[0] = 0, c[i] <= 1 + max(c[0..i-1]).
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max_used) {
        if (i == g.n) {
            double q = modularity(g, c);
            if (q > best_q) {
                best_q = q;
                if (best) *best = c;
            }
            return;
        }
        for (std::size_t v = 0; v <= max_used + 1; ++v) {
            c[i] = v;
            rec(i + 1, std::max(max_used, v));
        }
    };
    if (g.n == 0) return 0.0;
    rec(1, 0);
    return best_q;
}

double barrat_clustering(const Dense& g, std::size_t i) {
    double s = 0;
    double k = 0;
    for (std::size_t j = 0; j < g.n; ++j)
        if (g.adj(i, j)) {
            s += static_cast<double>(g.w[i][j]);
            k += 1;
        }
    if (k < 2) return 0.0;
    double sum = 0;
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t h = 0; h < g.n; ++h) {
            if (j == h) continue;
            if (g.adj(i, j) && g.adj(i, h) && g.adj(j, h)) {
                sum += (static_cast<double>(g.w[i][j]) + static_cast<double>(g.w[i][h])) / 2.0;
            }
        }
    return sum / (s * (k - 1));
}

double entropy_bits(const std::vector<double>& probabilities) {
    double h = 0;
    for (double p : probabilities)
        if (p > 0) h -= p * std::log2(p);
    return h;
}

std::string de_bruijn(std::size_t k) {
    // Standard Lyndon-word construction.
    const char* alphabet = "ACGT";
    const std::size_t n = 4;
    std::vector<std::size_t> a(n * k, 0);
    std::string out;
    std::function<void(std::size_t, std::size_t)> db = [&](std::size_t t, std::size_t p) {
        if (t > k) {
            if (k % p == 0)
                for (std::size_t j = 1; j <= p; ++j) out.push_back(alphabet[a[j]]);
        } else {
            a[t] = a[t - p];
            db(t + 1, p);
            for (std::size_t j = a[t - p] + 1; j < n; ++j) {
                a[t] = j;
                db(t + 1, t);
            }
        }
    };
    a.resize(n * k + 1);
    db(1, 1);
    return out;
}

double mann_whitney_auc(const std::vector<double>& scores, const std::vector<bool>& positive) {
    double good = 0;
    double pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!positive[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (positive[j]) continue;
            pairs += 1;
            if (scores[i] > scores[j]) good += 1;
            else if (scores[i] == scores[j]) good += 0.5;
        }
    }
    return good / pairs;
}

}  // namespace oracle
