#include "graphmat/shape.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

namespace graphmat {

namespace {

// Edge bit order for v vertices: (1,2),(1,3),...,(1,v),(2,3),... lex.
struct PairTable {
    int v = 0;
    int nbits = 0;
    int idx[8][8];                       // idx[i][j], 0-based, i < j
    std::pair<int, int> pairs[28];       // bit -> (i, j), 0-based

    explicit PairTable(int v_count) : v(v_count) {
        int b = 0;
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j) {
                idx[i][j] = idx[j][i] = b;
                pairs[b] = {i, j};
                ++b;
            }
        nbits = b;
    }

    std::uint32_t remap(std::uint32_t mask, const int* perm) const {
        std::uint32_t out = 0;
        for (std::uint32_t m = mask; m; m &= m - 1) {
            const auto [i, j] = pairs[std::countr_zero(m)];
            out |= 1u << idx[perm[i]][perm[j]];
        }
        return out;
    }
};

bool mask_connected(int v, std::uint32_t mask, const PairTable& pt) {
    if (v == 1) return true;
    std::uint32_t adj[8] = {};
    for (std::uint32_t m = mask; m; m &= m - 1) {
        const auto [i, j] = pt.pairs[std::countr_zero(m)];
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
    }
    std::uint32_t reach = 1, frontier = 1;
    const std::uint32_t all = (1u << v) - 1;
    while (frontier) {
        std::uint32_t nxt = 0;
        for (std::uint32_t f = frontier; f; f &= f - 1)
            nxt |= adj[std::countr_zero(f)];
        nxt &= ~reach;
        reach |= nxt;
        frontier = nxt;
    }
    return reach == all;
}

// Enumerates permutations that keep the (ascending) degree classes in
// place, i.e. products of permutations within each equal-degree block.
// Calls fn(perm) for each; perm maps old vertex -> new vertex.
template <typename Fn>
void for_each_class_perm(int v, const int* degree, Fn&& fn) {
    int order[8];
    std::iota(order, order + v, 0);
    std::stable_sort(order, order + v,
                     [&](int a, int b) { return degree[a] < degree[b]; });
    // Block boundaries in the sorted order.
    int blocks[9], nblocks = 0;
    blocks[nblocks++] = 0;
    for (int i = 1; i < v; ++i)
        if (degree[order[i]] != degree[order[i - 1]]) blocks[nblocks++] = i;
    blocks[nblocks] = v;

    int arrangement[8];
    std::copy(order, order + v, arrangement);
    int perm[8];
    auto emit = [&]() {
        for (int pos = 0; pos < v; ++pos) perm[arrangement[pos]] = pos;
        fn(perm);
    };
    auto recurse = [&](auto&& self, int b) -> void {
        if (b == nblocks) {
            emit();
            return;
        }
        int* begin = arrangement + blocks[b];
        int* end = arrangement + blocks[b + 1];
        std::sort(begin, end);
        do {
            self(self, b + 1);
        } while (std::next_permutation(begin, end));
    };
    recurse(recurse, 0);
}

struct CanonicalGraph {
    std::uint32_t mask;
    std::vector<std::array<int, 8>> aut;  // vertex permutations fixing mask
};

// All connected graphs on exactly v labeled-canonical vertices, one per
// isomorphism class, with their automorphism groups.
std::vector<CanonicalGraph> canonical_graphs(int v) {
    std::vector<CanonicalGraph> out;
    const PairTable pt(v);
    const std::uint32_t all = pt.nbits ? (1u << pt.nbits) - 1 : 0;
    for (std::uint32_t mask = 0;; ++mask) {
        do {
            if (!mask_connected(v, mask, pt)) break;
            int degree[8] = {};
            for (std::uint32_t m = mask; m; m &= m - 1) {
                const auto [i, j] = pt.pairs[std::countr_zero(m)];
                ++degree[i];
                ++degree[j];
            }
            // The canonical representative has ascending degrees.
            bool ascending = true;
            for (int i = 1; i < v; ++i)
                if (degree[i] < degree[i - 1]) ascending = false;
            if (!ascending) break;
            bool minimal = true;
            std::vector<std::array<int, 8>> aut;
            for_each_class_perm(v, degree, [&](const int* perm) {
                if (!minimal) return;
                const std::uint32_t image = pt.remap(mask, perm);
                if (image < mask) {
                    minimal = false;
                } else if (image == mask) {
                    std::array<int, 8> p{};
                    std::copy(perm, perm + v, p.begin());
                    aut.push_back(p);
                }
            });
            if (minimal) out.push_back({mask, std::move(aut)});
        } while (false);
        if (mask == all) break;
    }
    return out;
}

// Ordered boundary tuples of size 0..2 over [0, v), in (size, lex) order.
std::vector<std::vector<int>> boundary_tuples(int v) {
    std::vector<std::vector<int>> out;
    out.push_back({});
    for (int a = 0; a < v; ++a) out.push_back({a});
    for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b)
            if (a != b) out.push_back({a, b});
    return out;
}

}  // namespace

void for_each_corpus_shape(int max_vertices,
                           const std::function<void(const Shape&)>& fn) {
    if (max_vertices > 7)
        throw UnsupportedSizeError("shape_corpus supports at most 7 vertices");
    for (int v = 1; v <= max_vertices; ++v) {
        const PairTable pt(v);
        const auto tuples = boundary_tuples(v);
        const int ntuples = static_cast<int>(tuples.size());
        // tuple -> index, for orbit-minimality comparisons
        auto encode = [&](const std::vector<int>& t) {
            int code = static_cast<int>(t.size());
            for (int x : t) code = code * 8 + x + 1;
            return code;
        };
        std::vector<int> index_of(4096, -1);
        for (int i = 0; i < ntuples; ++i) index_of[encode(tuples[i])] = i;

        for (const auto& cg : canonical_graphs(v)) {
            std::vector<VertexPair> edges;
            for (std::uint32_t m = cg.mask; m; m &= m - 1) {
                const auto [i, j] = pt.pairs[std::countr_zero(m)];
                edges.emplace_back(i + 1, j + 1);
            }
            std::vector<int> mapped(3);
            for (int iu = 0; iu < ntuples; ++iu) {
                for (int iv = 0; iv < ntuples; ++iv) {
                    // Keep only the lex-min (U, V) pair in its Aut orbit.
                    bool minimal = true;
                    for (const auto& perm : cg.aut) {
                        int ju, jv;
                        {
                            mapped.assign(tuples[iu].begin(), tuples[iu].end());
                            for (int& x : mapped) x = perm[x];
                            ju = index_of[encode(mapped)];
                            mapped.assign(tuples[iv].begin(), tuples[iv].end());
                            for (int& x : mapped) x = perm[x];
                            jv = index_of[encode(mapped)];
                        }
                        if (ju < iu || (ju == iu && jv < iv)) {
                            minimal = false;
                            break;
                        }
                    }
                    if (!minimal) continue;
                    Shape s;
                    s.n_vertices = v;
                    s.edges = edges;
                    s.u = tuples[iu];
                    for (int& x : s.u) ++x;
                    s.v = tuples[iv];
                    for (int& x : s.v) ++x;
                    fn(s);
                }
            }
        }
    }
}

std::vector<Shape> shape_corpus(int max_vertices) {
    std::vector<Shape> out;
    for_each_corpus_shape(max_vertices,
                          [&](const Shape& s) { out.push_back(s); });
    return out;
}

}  // namespace graphmat
