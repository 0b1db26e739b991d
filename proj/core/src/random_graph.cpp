#include "graphmat/random_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace graphmat {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void build_adjacency(int n, const std::vector<VertexPair>& edges,
                     std::vector<std::vector<int>>& adj) {
    adj.assign(n + 1, {});
    for (const auto& [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
}

bool adjacency_has(const std::vector<std::vector<int>>& adj, int i, int j) {
    const auto& nbrs = adj[i];
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

}  // namespace

bool edge_present(std::uint64_t seed, int i, int j, double p) {
    if (i > j) std::swap(i, j);
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ (static_cast<std::uint64_t>(j) * 0xc2b2ae3d27d4eb4fULL));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return u < p;
}

bool RandomGraph::has_edge(int i, int j) const {
    if (i == j) return false;
    return adjacency_has(adj, i, j);
}

RandomGraph RandomGraph::from_edges(int n, std::vector<VertexPair> edges,
                                    double p, std::uint64_t seed) {
    RandomGraph g;
    g.n = n;
    g.p = p;
    g.seed = seed;
    for (auto& [i, j] : edges) {
        if (i > j) std::swap(i, j);
        if (i < 1 || j > n || i == j)
            throw ParameterError("from_edges: bad edge endpoint");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    build_adjacency(n, g.edges, g.adj);
    return g;
}

RandomGraph sample_gnp(int n, double d, std::uint64_t seed) {
    if (n < 1) throw ParameterError("sample_gnp: n must be >= 1");
    if (d < 0 || d > n)
        throw ParameterError("sample_gnp: d must lie in [0, n]");
    RandomGraph g;
    g.n = n;
    g.p = d / n;
    g.seed = seed;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (edge_present(seed, i, j, g.p)) g.edges.emplace_back(i, j);
    build_adjacency(n, g.edges, g.adj);
    return g;
}

CharacterParams::CharacterParams(double p_value) : p(p_value) {
    if (p < 0.0 || p > 1.0)
        throw ParameterError("CharacterParams: p must lie in [0, 1]");
    chi_present = p > 0.0 ? std::sqrt((1.0 - p) / p)
                          : std::numeric_limits<double>::infinity();
    chi_absent = p < 1.0 ? -std::sqrt(p / (1.0 - p))
                         : -std::numeric_limits<double>::infinity();
}

bool PrunedGraph::has_edge(int i, int j) const {
    if (i == j) return false;
    return adjacency_has(adj, i, j);
}

PrunedGraph trim_high_degree(const RandomGraph& g, double c_degree, double d) {
    if (c_degree <= 0)
        throw ParameterError("trim_high_degree: c_degree must be positive");
    PrunedGraph pg;
    pg.base = g;
    pg.c_degree = c_degree;
    pg.d = d;
    pg.chi = CharacterParams(g.p);
    pg.removed_mask.assign(g.n + 1, 0);
    const double cutoff = c_degree * d;
    for (int v = 1; v <= g.n; ++v) {
        if (static_cast<double>(g.degree(v)) >= cutoff) {
            pg.removed_mask[v] = 1;
            pg.removed.push_back(v);
        } else {
            pg.survivors.push_back(v);
        }
    }
    for (const auto& [i, j] : g.edges)
        if (!pg.removed_mask[i] && !pg.removed_mask[j])
            pg.edges.emplace_back(i, j);
    build_adjacency(g.n, pg.edges, pg.adj);
    return pg;
}

double character(const PrunedGraph& g, int i, int j) {
    if (i == j) throw DomainError("character: self-loop");
    if (i < 1 || j < 1 || i > g.n() || j > g.n())
        throw DomainError("character: vertex out of range");
    if (g.is_removed(i) || g.is_removed(j))
        throw DomainError("character: endpoint was removed by trimming");
    return g.has_edge(i, j) ? g.chi.chi_present : g.chi.chi_absent;
}

double chi_product(const PrunedGraph& g, std::span<const VertexPair> edge_set) {
    double prod = 1.0;
    for (const auto& [i, j] : edge_set) prod *= character(g, i, j);
    return prod;
}

bool is_two_cycle_free_at(const PrunedGraph& g, int r) {
    if (r < 0) throw ParameterError("is_two_cycle_free_at: r must be >= 0");
    const int n = g.n();
    std::vector<int> mark(n + 1, -1), comp(n + 1, -1);
    std::vector<int> ball, frontier, next;
    for (int center : g.survivors) {
        // Collect the r-ball around center.
        ball.clear();
        ball.push_back(center);
        mark[center] = center;
        frontier.assign(1, center);
        for (int depth = 0; depth < r && !frontier.empty(); ++depth) {
            next.clear();
            for (int u : frontier)
                for (int w : g.adj[u])
                    if (mark[w] != center) {
                        mark[w] = center;
                        ball.push_back(w);
                        next.push_back(w);
                    }
            frontier.swap(next);
        }
        // Each component of the induced subgraph may carry at most one cycle.
        for (int v : ball) comp[v] = -1;
        for (int v : ball) {
            if (comp[v] != -1) continue;
            int vertices = 0;
            long long edge_ends = 0;
            std::vector<int> stack{v};
            comp[v] = v;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                ++vertices;
                for (int w : g.adj[u]) {
                    if (mark[w] != center) continue;  // outside the ball
                    ++edge_ends;
                    if (comp[w] == -1) {
                        comp[w] = v;
                        stack.push_back(w);
                    }
                }
            }
            if (edge_ends / 2 > vertices) return false;
        }
    }
    return true;
}

int kappa(int n, double d) {
    if (d < 2) throw ParameterError("kappa: d must be >= 2");
    if (n < 2) throw ParameterError("kappa: n must be >= 2");
    return static_cast<int>(std::floor(0.3 * std::log(n) / std::log(d)));
}

std::string graph_to_json(const PrunedGraph& g) {
    nlohmann::json j;
    j["n"] = g.base.n;
    j["p"] = g.base.p;
    j["seed"] = g.base.seed;
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : g.base.edges) edges.push_back({a, b});
    j["removed"] = g.removed;
    return j.dump();
}

PrunedGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("graph_from_json: ") + e.what());
    }
    try {
        const int n = j.at("n").get<int>();
        std::vector<VertexPair> edges;
        for (const auto& e : j.at("edges"))
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        RandomGraph base = RandomGraph::from_edges(
            n, std::move(edges), j.at("p").get<double>(),
            j.at("seed").get<std::uint64_t>());
        std::vector<int> removed = j.at("removed").get<std::vector<int>>();

        PrunedGraph pg;
        pg.base = base;
        pg.chi = CharacterParams(base.p);
        pg.removed_mask.assign(n + 1, 0);
        for (int v : removed) {
            if (v < 1 || v > n)
                throw ValidationError("graph_from_json: removed id out of range");
            pg.removed_mask[v] = 1;
        }
        pg.removed = std::move(removed);
        std::sort(pg.removed.begin(), pg.removed.end());
        for (int v = 1; v <= n; ++v)
            if (!pg.removed_mask[v]) pg.survivors.push_back(v);
        for (const auto& [a, b] : base.edges)
            if (!pg.removed_mask[a] && !pg.removed_mask[b])
                pg.edges.emplace_back(a, b);
        build_adjacency(n, pg.edges, pg.adj);
        return pg;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("graph_from_json: ") + e.what());
    }
}

}  // namespace graphmat
