#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphmat/errors.hpp"

namespace graphmat {

using VertexPair = std::pair<int, int>;

// Edge presence is a pure function of (seed, i, j): a counter-based keyed
// generator, so sampling needs no stored random stream and parallelizes
// over vertex pairs.
bool edge_present(std::uint64_t seed, int i, int j, double p);

// G(n, d/n) sample. Vertices are 1-based.
struct RandomGraph {
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::vector<VertexPair> edges;        // i < j, sorted
    std::vector<std::vector<int>> adj;    // adj[v] sorted, adj[0] unused

    bool has_edge(int i, int j) const;
    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    // Hand-built graph (tests, fixtures). Edges may be given in any order.
    static RandomGraph from_edges(int n, std::vector<VertexPair> edges,
                                  double p = 0.5, std::uint64_t seed = 0);
};

RandomGraph sample_gnp(int n, double d, std::uint64_t seed);

// chi(1) = sqrt((1-p)/p) on present edges, chi(0) = -sqrt(p/(1-p)) on
// absent ones; zero mean and unit variance under the p-biased measure.
struct CharacterParams {
    double p;
    double chi_present;
    double chi_absent;

    explicit CharacterParams(double p_value);
};

// Trimmed graph: every vertex with degree >= c_degree * d in the ORIGINAL
// graph is removed in a single pass (no cascade), together with its edges.
struct PrunedGraph {
    RandomGraph base;
    double c_degree = 10.0;
    double d = 0.0;
    std::vector<char> removed_mask;       // 1-based
    std::vector<int> removed;             // sorted
    std::vector<int> survivors;           // sorted
    std::vector<std::vector<int>> adj;    // surviving adjacency, original ids
    std::vector<VertexPair> edges;        // surviving edges, i < j, sorted
    CharacterParams chi{0.5};

    int n() const { return base.n; }
    int n_surviving() const { return static_cast<int>(survivors.size()); }
    bool is_removed(int v) const { return removed_mask[v] != 0; }
    bool has_edge(int i, int j) const;
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

PrunedGraph trim_high_degree(const RandomGraph& g, double c_degree, double d);

double character(const PrunedGraph& g, int i, int j);
double chi_product(const PrunedGraph& g, std::span<const VertexPair> edge_set);

// True iff every connected component of every r-ball has at most one cycle
// (component edge count <= component vertex count), on the surviving graph.
bool is_two_cycle_free_at(const PrunedGraph& g, int r);

// floor(0.3 * ln n / ln d)
int kappa(int n, double d);

// JSON {"n":..,"p":..,"seed":..,"edges":[[i,j],..],"removed":[v,..]},
// 1-based ids, i < j in each pair.
std::string graph_to_json(const PrunedGraph& g);
PrunedGraph graph_from_json(const std::string& text);

}  // namespace graphmat
