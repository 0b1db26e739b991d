#include "graphmat/shape.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>

#include <nlohmann/json.hpp>

namespace graphmat {

namespace {

constexpr int kSeparatorCap = 20;
constexpr int kAutomorphismCap = 12;

std::vector<std::uint32_t> adjacency_masks(const Shape& s) {
    std::vector<std::uint32_t> adj(s.n_vertices, 0);
    for (const auto& [i, j] : s.edges) {
        adj[i - 1] |= 1u << (j - 1);
        adj[j - 1] |= 1u << (i - 1);
    }
    return adj;
}

std::uint32_t tuple_mask(const std::vector<int>& t) {
    std::uint32_t m = 0;
    for (int v : t) m |= 1u << (v - 1);
    return m;
}

bool separates(const std::uint32_t* adj, std::uint32_t umask,
               std::uint32_t vmask, std::uint32_t block) {
    const std::uint32_t start = umask & ~block;
    const std::uint32_t target = vmask & ~block;
    if (start & target) return false;
    std::uint32_t reach = start;
    std::uint32_t frontier = start;
    while (frontier) {
        std::uint32_t nxt = 0;
        for (std::uint32_t f = frontier; f; f &= f - 1)
            nxt |= adj[std::countr_zero(f)];
        nxt &= ~block & ~reach;
        if (nxt & target) return false;
        reach |= nxt;
        frontier = nxt;
    }
    return true;
}

int edges_inside(const std::uint32_t* adj, std::uint32_t mask) {
    int ends = 0;
    for (std::uint32_t m = mask; m; m &= m - 1)
        ends += std::popcount(adj[std::countr_zero(m)] & mask);
    return ends / 2;
}

std::vector<int> mask_to_set(std::uint32_t mask) {
    std::vector<int> out;
    for (std::uint32_t m = mask; m; m &= m - 1)
        out.push_back(std::countr_zero(m) + 1);
    return out;
}

// Lexicographic order on the sorted vertex lists, e.g. {1,3} < {2}.
bool set_lex_less(std::uint32_t a, std::uint32_t b) {
    while (a && b) {
        int va = std::countr_zero(a), vb = std::countr_zero(b);
        if (va != vb) return va < vb;
        a &= a - 1;
        b &= b - 1;
    }
    return a != 0 && b == 0 ? false : (a == 0 && b != 0);
}

void check_separator_cap(const Shape& s) {
    if (s.n_vertices > kSeparatorCap)
        throw UnsupportedSizeError(
            "separator enumeration supports at most 20 vertices");
}

// Marks every vertex lying on some simple U -> V path.
std::uint32_t on_path_mask(const Shape& s) {
    const auto adj = adjacency_masks(s);
    const std::uint32_t umask = tuple_mask(s.u);
    const std::uint32_t vmask = tuple_mask(s.v);
    std::uint32_t on_path = umask & vmask;  // length-0 paths
    // DFS over simple paths from each U vertex.
    for (int u0 = 0; u0 < s.n_vertices; ++u0) {
        if (!(umask & (1u << u0))) continue;
        std::vector<std::pair<int, std::uint32_t>> stack;  // (vertex, remaining)
        stack.push_back({u0, adj[u0]});
        std::uint32_t current = 1u << u0;
        while (!stack.empty()) {
            auto& [v, rem] = stack.back();
            std::uint32_t avail = rem & ~current;
            if (!avail) {
                current &= ~(1u << v);
                stack.pop_back();
                continue;
            }
            const int w = std::countr_zero(avail);
            rem &= ~(1u << w);
            if (vmask & (1u << w)) on_path |= current | (1u << w);
            current |= 1u << w;
            stack.push_back({w, adj[w]});
        }
    }
    return on_path;
}

}  // namespace

Shape validate_shape(const ShapeInput& raw) {
    Shape s;
    s.n_vertices = static_cast<int>(raw.vertices.size());
    std::map<int, int> relabel;
    for (int idx = 0; idx < s.n_vertices; ++idx) {
        if (!relabel.emplace(raw.vertices[idx], idx + 1).second)
            throw ValidationError("duplicate vertex id " +
                                  std::to_string(raw.vertices[idx]));
    }
    auto lookup = [&](int id, const char* where) {
        auto it = relabel.find(id);
        if (it == relabel.end())
            throw ValidationError(std::string(where) + " references unknown vertex " +
                                  std::to_string(id));
        return it->second;
    };
    for (const auto& [a, b] : raw.edges) {
        int i = lookup(a, "edge"), j = lookup(b, "edge");
        if (i == j)
            throw ValidationError("self-loop at vertex " + std::to_string(a));
        if (i > j) std::swap(i, j);
        s.edges.emplace_back(i, j);
    }
    std::sort(s.edges.begin(), s.edges.end());
    if (std::adjacent_find(s.edges.begin(), s.edges.end()) != s.edges.end())
        throw ValidationError("duplicate edge");
    auto map_boundary = [&](const std::vector<int>& t, const char* name) {
        std::vector<int> out;
        std::uint32_t seen = 0;
        for (int id : t) {
            int v = lookup(id, name);
            if (seen & (1u << (v - 1)))
                throw ValidationError(std::string(name) + " repeats vertex " +
                                      std::to_string(id));
            seen |= 1u << (v - 1);
            out.push_back(v);
        }
        return out;
    };
    s.u = map_boundary(raw.u, "u boundary");
    s.v = map_boundary(raw.v, "v boundary");
    return s;
}

Shape transpose(const Shape& s) {
    Shape t = s;
    std::swap(t.u, t.v);
    return t;
}

long automorphism_count(const Shape& s, BoundaryMode mode) {
    if (s.n_vertices > kAutomorphismCap)
        throw UnsupportedSizeError(
            "automorphism_count supports at most 12 vertices");
    const int n = s.n_vertices;
    const auto adj = adjacency_masks(s);
    const std::uint32_t umask = tuple_mask(s.u);
    const std::uint32_t vmask = tuple_mask(s.v);
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = std::popcount(adj[v]);
    std::vector<int> pos_in_u(n, -1), pos_in_v(n, -1);
    for (size_t i = 0; i < s.u.size(); ++i) pos_in_u[s.u[i] - 1] = (int)i;
    for (size_t i = 0; i < s.v.size(); ++i) pos_in_v[s.v[i] - 1] = (int)i;

    std::vector<int> image(n, -1);
    std::uint32_t used = 0;
    long count = 0;
    auto admissible = [&](int v, int w) {
        if (degree[v] != degree[w]) return false;
        const bool vu = (umask >> v) & 1, wu = (umask >> w) & 1;
        const bool vv = (vmask >> v) & 1, wv = (vmask >> w) & 1;
        if (vu != wu || vv != wv) return false;
        if (mode == BoundaryMode::Pointwise && (vu || vv) && v != w) return false;
        for (int x = 0; x < v; ++x) {
            const bool e1 = (adj[v] >> x) & 1;
            const bool e2 = (adj[w] >> image[x]) & 1;
            if (e1 != e2) return false;
        }
        return true;
    };
    auto recurse = [&](auto&& self, int v) -> void {
        if (v == n) {
            ++count;
            return;
        }
        for (int w = 0; w < n; ++w) {
            if ((used >> w) & 1) continue;
            if (!admissible(v, w)) continue;
            image[v] = w;
            used |= 1u << w;
            self(self, v + 1);
            used &= ~(1u << w);
            image[v] = -1;
        }
    };
    recurse(recurse, 0);
    return count;
}

bool is_separator(const Shape& s, const std::vector<int>& sep) {
    check_separator_cap(s);
    const auto adj = adjacency_masks(s);
    std::uint32_t block = 0;
    for (int v : sep) {
        if (v < 1 || v > s.n_vertices)
            throw DomainError("is_separator: vertex out of range");
        block |= 1u << (v - 1);
    }
    return separates(adj.data(), tuple_mask(s.u), tuple_mask(s.v), block);
}

std::pair<int, std::vector<int>> min_vertex_separator(const Shape& s) {
    check_separator_cap(s);
    const auto adj = adjacency_masks(s);
    const std::uint32_t umask = tuple_mask(s.u);
    const std::uint32_t vmask = tuple_mask(s.v);
    const std::uint32_t all = s.n_vertices == 32
                                  ? ~0u
                                  : (1u << s.n_vertices) - 1;
    int best_size = s.n_vertices + 1;
    std::uint32_t best = 0;
    for (std::uint32_t mask = 0; mask <= all; ++mask) {
        const int size = std::popcount(mask);
        if (size > best_size) continue;
        if (!separates(adj.data(), umask, vmask, mask)) continue;
        if (size < best_size ||
            (size == best_size && set_lex_less(mask, best))) {
            best_size = size;
            best = mask;
        }
        if (mask == all) break;
    }
    return {best_size, mask_to_set(best)};
}

SeparatorReport sparse_mvs(const Shape& s, double n, double d) {
    check_separator_cap(s);
    if (!(n > d && d > 1))
        throw ParameterError("sparse_mvs: require n > d > 1");
    const auto adj = adjacency_masks(s);
    const std::uint32_t umask = tuple_mask(s.u);
    const std::uint32_t vmask = tuple_mask(s.v);
    const std::uint32_t all = (1u << s.n_vertices) - 1;
    const double log_n = std::log(n);
    const double log_nd = std::log(n / d);

    int mvs_size = s.n_vertices + 1;
    bool have_best = false;
    double best_logw = 0.0;
    std::uint32_t best = 0;
    for (std::uint32_t mask = 0;; ++mask) {
        if (separates(adj.data(), umask, vmask, mask)) {
            const int size = std::popcount(mask);
            mvs_size = std::min(mvs_size, size);
            const double logw =
                0.5 * (s.n_vertices - size) * log_n +
                0.5 * edges_inside(adj.data(), mask) * log_nd;
            const double tol = 1e-12 * (1.0 + std::abs(logw));
            if (!have_best || logw > best_logw + tol ||
                (std::abs(logw - best_logw) <= tol &&
                 set_lex_less(mask, best))) {
                have_best = true;
                best_logw = logw;
                best = mask;
            }
        }
        if (mask == all) break;
    }
    SeparatorReport r;
    r.separator = mask_to_set(best);
    r.is_valid = have_best;
    r.log_smvs_weight = best_logw;
    r.smvs_weight = std::exp(best_logw);
    r.mvs_size = mvs_size;
    return r;
}

StructureReport structure(const Shape& s) {
    StructureReport rep;
    const int n = s.n_vertices;
    const auto adj = adjacency_masks(s);
    const std::uint32_t boundary = tuple_mask(s.u) | tuple_mask(s.v);

    // Connected components.
    std::vector<int> comp(n, -1);
    std::vector<std::uint32_t> comp_masks;
    for (int v = 0; v < n; ++v) {
        if (comp[v] != -1) continue;
        std::uint32_t mask = 1u << v;
        std::uint32_t frontier = mask;
        comp[v] = static_cast<int>(comp_masks.size());
        while (frontier) {
            std::uint32_t nxt = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1)
                nxt |= adj[std::countr_zero(f)];
            nxt &= ~mask;
            for (std::uint32_t f = nxt; f; f &= f - 1)
                comp[std::countr_zero(f)] = comp[v];
            mask |= nxt;
            frontier = nxt;
        }
        comp_masks.push_back(mask);
    }
    for (std::uint32_t cm : comp_masks)
        if (!(cm & boundary)) rep.floating_components.push_back(mask_to_set(cm));
    for (int v = 0; v < n; ++v)
        if (adj[v] == 0 && !((boundary >> v) & 1)) rep.isolated.push_back(v + 1);

    // Dangling vertices: outside U ∪ V, on no simple U -> V path, in a
    // component that touches the boundary.
    const std::uint32_t on_path = on_path_mask(s);
    std::uint32_t dangling = 0;
    for (int v = 0; v < n; ++v) {
        const std::uint32_t bit = 1u << v;
        if ((boundary & bit) || (on_path & bit)) continue;
        if (!(comp_masks[comp[v]] & boundary)) continue;  // floating
        dangling |= bit;
    }
    // Branches: connected components of the dangling-induced subgraph,
    // attached at their smallest non-dangling neighbor.
    std::uint32_t todo = dangling;
    while (todo) {
        const int v0 = std::countr_zero(todo);
        std::uint32_t mask = 1u << v0;
        std::uint32_t frontier = mask;
        while (frontier) {
            std::uint32_t nxt = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1)
                nxt |= adj[std::countr_zero(f)];
            nxt &= dangling & ~mask;
            mask |= nxt;
            frontier = nxt;
        }
        todo &= ~mask;
        std::uint32_t nbrs = 0;
        for (std::uint32_t f = mask; f; f &= f - 1)
            nbrs |= adj[std::countr_zero(f)];
        nbrs &= ~dangling;
        DanglingBranch b;
        b.attachment = nbrs ? std::countr_zero(nbrs) + 1 : 0;
        b.branch = mask_to_set(mask);
        rep.dangling_branches.push_back(std::move(b));
    }
    std::sort(rep.dangling_branches.begin(), rep.dangling_branches.end(),
              [](const DanglingBranch& a, const DanglingBranch& b) {
                  return a.branch < b.branch;
              });

    rep.is_middle = s.u.size() == s.v.size() &&
                    min_vertex_separator(s).first == static_cast<int>(s.u.size());
    return rep;
}

Shape line_shape() {
    return validate_shape({{1, 2}, {{1, 2}}, {1}, {2}});
}

Shape z_shape() {
    return validate_shape({{1, 2, 3, 4}, {{1, 3}, {2, 3}, {2, 4}}, {1, 2}, {3, 4}});
}

Shape floating_triangle_shape() {
    return validate_shape({{1, 2, 3, 4}, {{2, 3}, {2, 4}, {3, 4}}, {1}, {1}});
}

Shape dangling_line_shape() {
    return validate_shape({{1, 2, 3, 4}, {{1, 3}, {2, 3}, {3, 4}}, {1}, {2}});
}

std::string shape_to_json(const Shape& s) {
    nlohmann::json j;
    j["vertices"] = s.n_vertices;
    auto& edges = j["edges"] = nlohmann::json::array();
    auto sorted = s.edges;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [a, b] : sorted) edges.push_back({a, b});
    j["u"] = s.u;
    j["v"] = s.v;
    return j.dump();
}

Shape shape_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("shape_from_json: ") + e.what());
    }
    try {
        ShapeInput raw;
        const int k = j.at("vertices").get<int>();
        for (int v = 1; v <= k; ++v) raw.vertices.push_back(v);
        for (const auto& e : j.at("edges"))
            raw.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        raw.u = j.at("u").get<std::vector<int>>();
        raw.v = j.at("v").get<std::vector<int>>();
        return validate_shape(raw);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("shape_from_json: ") + e.what());
    }
}

}  // namespace graphmat
