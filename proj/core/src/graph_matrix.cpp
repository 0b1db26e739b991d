#include "graphmat/graph_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>

namespace graphmat {

namespace {

// Index space over injective tuples (or subsets) of the survivor list.
struct TupleIndexer {
    int arity = 0;
    int n_surv = 0;
    IndexMode mode = IndexMode::OrderedTuple;
    std::vector<std::vector<int>> tuples;
    std::vector<int> rank;  // vertex id -> survivor rank, -1 if removed

    TupleIndexer(int arity_in, const PrunedGraph& g, IndexMode mode_in)
        : arity(arity_in), n_surv(g.n_surviving()), mode(mode_in) {
        rank.assign(g.n() + 1, -1);
        for (int i = 0; i < n_surv; ++i) rank[g.survivors[i]] = i;
        std::vector<int> current;
        build(g, current);
    }

    void build(const PrunedGraph& g, std::vector<int>& current) {
        if (static_cast<int>(current.size()) == arity) {
            tuples.push_back(current);
            return;
        }
        for (int v : g.survivors) {
            if (std::find(current.begin(), current.end(), v) != current.end())
                continue;
            if (mode == IndexMode::SetIndexed && !current.empty() &&
                v < current.back())
                continue;
            current.push_back(v);
            build(g, current);
            current.pop_back();
        }
    }

    // Index of an injective tuple of surviving vertices; assumes arity
    // <= 2 hot paths, generic fallback otherwise.
    int index_of(std::span<const int> t) const {
        if (arity == 0) return 0;
        if (mode == IndexMode::OrderedTuple) {
            if (arity == 1) return rank[t[0]];
            if (arity == 2) {
                const int ra = rank[t[0]], rb = rank[t[1]];
                return ra * (n_surv - 1) + (rb < ra ? rb : rb - 1);
            }
        } else {
            if (arity == 1) return rank[t[0]];
            if (arity == 2) {
                int ra = rank[t[0]], rb = rank[t[1]];
                if (ra > rb) std::swap(ra, rb);
                // pairs (ra, rb), ra < rb, lex order
                return ra * n_surv - ra * (ra + 1) / 2 + (rb - ra - 1);
            }
        }
        std::vector<int> key(t.begin(), t.end());
        if (mode == IndexMode::SetIndexed) std::sort(key.begin(), key.end());
        for (size_t i = 0; i < tuples.size(); ++i)
            if (tuples[i] == key) return static_cast<int>(i);
        return -1;
    }

    std::size_t size() const { return tuples.size(); }
};

}  // namespace

double entry_bruteforce(const Shape& s, const PrunedGraph& g,
                        std::span<const int> row, std::span<const int> col) {
    if (row.size() != s.u.size() || col.size() != s.v.size())
        throw ValidationError("entry_bruteforce: boundary length mismatch");
    for (int v : row)
        if (v < 1 || v > g.n() || g.is_removed(v))
            throw DomainError("entry_bruteforce: row vertex not surviving");
    for (int v : col)
        if (v < 1 || v > g.n() || g.is_removed(v))
            throw DomainError("entry_bruteforce: col vertex not surviving");

    std::vector<int> image(s.n_vertices + 1, 0);
    // Pin the boundaries; conflicting or non-injective pins give entry 0.
    auto pin = [&](const std::vector<int>& boundary,
                   std::span<const int> values) {
        for (size_t i = 0; i < boundary.size(); ++i) {
            int sv = boundary[i];
            if (image[sv] != 0 && image[sv] != values[i]) return false;
            image[sv] = values[i];
        }
        return true;
    };
    if (!pin(s.u, row) || !pin(s.v, col)) return 0.0;
    std::vector<char> used(g.n() + 1, 0);
    for (int sv = 1; sv <= s.n_vertices; ++sv) {
        if (image[sv] == 0) continue;
        if (used[image[sv]]) return 0.0;  // joint embedding not injective
        used[image[sv]] = 1;
    }
    std::vector<int> interior;
    for (int sv = 1; sv <= s.n_vertices; ++sv)
        if (image[sv] == 0) interior.push_back(sv);

    double total = 0.0;
    auto recurse = [&](auto&& self, size_t depth) -> void {
        if (depth == interior.size()) {
            double prod = 1.0;
            for (const auto& [a, b] : s.edges)
                prod *= character(g, image[a], image[b]);
            total += prod;
            return;
        }
        for (int w : g.survivors) {
            if (used[w]) continue;
            used[w] = 1;
            image[interior[depth]] = w;
            self(self, depth + 1);
            image[interior[depth]] = 0;
            used[w] = 0;
        }
    };
    recurse(recurse, 0);
    return total;
}

DenseGraphMatrix materialize(const Shape& s, const PrunedGraph& g,
                             IndexMode mode, double work_budget,
                             double entry_budget) {
    const int ns = g.n_surviving();
    if (std::pow(static_cast<double>(ns), s.n_vertices) > work_budget)
        throw UnsupportedSizeError("materialize: embedding work budget exceeded");

    TupleIndexer row_index(static_cast<int>(s.u.size()), g, mode);
    TupleIndexer col_index(static_cast<int>(s.v.size()), g, mode);
    const double entries = static_cast<double>(row_index.size()) *
                           static_cast<double>(col_index.size());
    if (entries > entry_budget)
        throw UnsupportedSizeError("materialize: dense entry budget exceeded");

    DenseGraphMatrix out;
    out.mode = mode;
    out.row_tuples = row_index.tuples;
    out.col_tuples = col_index.tuples;
    out.m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(row_index.size()),
                                  static_cast<Eigen::Index>(col_index.size()));
    if (row_index.size() == 0 || col_index.size() == 0) return out;

    // Edges of each shape vertex into lower-numbered vertices, so the
    // character product accumulates incrementally along the recursion.
    std::vector<std::vector<int>> back_edges(s.n_vertices + 1);
    for (const auto& [a, b] : s.edges) back_edges[std::max(a, b)].push_back(std::min(a, b));

    std::vector<int> image(s.n_vertices + 1, 0);
    std::vector<char> used(g.n() + 1, 0);
    std::vector<int> row_vals(s.u.size()), col_vals(s.v.size());
    auto recurse = [&](auto&& self, int sv, double prod) -> void {
        if (sv > s.n_vertices) {
            for (size_t i = 0; i < s.u.size(); ++i) row_vals[i] = image[s.u[i]];
            for (size_t i = 0; i < s.v.size(); ++i) col_vals[i] = image[s.v[i]];
            out.m(row_index.index_of(row_vals), col_index.index_of(col_vals)) +=
                prod;
            return;
        }
        for (int w : g.survivors) {
            if (used[w]) continue;
            double p = prod;
            for (int prev : back_edges[sv]) p *= character(g, image[prev], w);
            used[w] = 1;
            image[sv] = w;
            self(self, sv + 1, p);
            used[w] = 0;
        }
    };
    recurse(recurse, 1, 1.0);
    return out;
}

LineOperator::LineOperator(const PrunedGraph& g)
    : n_(g.n()),
      a_(g.chi.chi_present),
      b_(g.chi.chi_absent),
      survivors_(g.survivors),
      adj_(g.adj) {}

Eigen::VectorXd LineOperator::apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
    double total = 0.0;
    for (int v : survivors_) total += x[v - 1];
    for (int v : survivors_) {
        double acc = b_ * (total - x[v - 1]);
        for (int w : adj_[v]) acc += (a_ - b_) * x[w - 1];
        y[v - 1] = acc;
    }
    return y;
}

LineOperator line_operator(const PrunedGraph& g) { return LineOperator(g); }

DenseOperator dense_operator(Eigen::MatrixXd m) {
    return DenseOperator(std::move(m));
}

bool is_line_shape(const Shape& s) {
    return s.n_vertices == 2 && s.edges.size() == 1 && s.u.size() == 1 &&
           s.v.size() == 1 && s.u[0] != s.v[0];
}

void dump_matrix_csv(const DenseGraphMatrix& m, std::ostream& out) {
    auto render = [](const std::vector<int>& t) {
        std::string s;
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) s += '-';
            s += std::to_string(t[i]);
        }
        return s;
    };
    out << "row,col,value\n";
    char buf[64];
    for (Eigen::Index r = 0; r < m.m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", m.m(r, c));
            out << render(m.row_tuples[r]) << ',' << render(m.col_tuples[c])
                << ',' << buf << '\n';
        }
}

}  // namespace graphmat
