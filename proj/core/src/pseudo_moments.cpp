#include "graphmat/pseudo_moments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace graphmat {

double MomentParams::resolved_k(const PrunedGraph& g) const {
    if (k >= 0) return k;
    if (g.d <= 0)
        throw ParameterError(
            "resolved_k: the k formula needs d > 0; set k explicitly");
    const double ds = static_cast<double>(d_sos);
    return g.n() / (c_eta * std::sqrt(g.d) * ds * ds * ds * ds);
}

namespace {

std::vector<int> checked_support(const std::vector<int>& S,
                                 const PrunedGraph& g) {
    std::vector<int> s = S;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int v : s) {
        if (v < 1 || v > g.n())
            throw DomainError("support vertex " + std::to_string(v) +
                              " out of range");
        if (g.is_removed(v))
            throw DomainError("support vertex " + std::to_string(v) +
                              " was removed by trimming");
    }
    return s;
}

}  // namespace

std::vector<Ribbon> enumerate_ribbons(const std::vector<int>& S,
                                      const PrunedGraph& g,
                                      const MomentParams& params) {
    const std::vector<int> s = checked_support(S, g);
    std::vector<int> others;
    for (int v : g.survivors)
        if (!std::binary_search(s.begin(), s.end(), v)) others.push_back(v);

    std::vector<Ribbon> out;
    double work = 0.0;
    const int ns = static_cast<int>(s.size());

    std::vector<int> extra;
    auto emit_for_support = [&]() {
        std::vector<int> w = s;
        w.insert(w.end(), extra.begin(), extra.end());
        std::sort(w.begin(), w.end());
        const int nw = static_cast<int>(w.size());
        std::vector<VertexPair> pairs;
        for (int i = 0; i < nw; ++i)
            for (int j = i + 1; j < nw; ++j) pairs.emplace_back(w[i], w[j]);
        const int np = static_cast<int>(pairs.size());
        std::vector<int> pos(g.n() + 1, -1);
        for (int i = 0; i < nw; ++i) pos[w[i]] = i;
        const int nx = static_cast<int>(extra.size());
        std::uint32_t s_mask = 0;
        for (int v : s) s_mask |= 1u << pos[v];

        for (std::uint32_t mask = 0; mask < (1u << np); ++mask) {
            work += 1.0;
            if (work > params.ribbon_cap)
                throw EnumerationOverflowError(
                    "enumerate_ribbons: work cap exceeded");
            // degree >= 2 for extra vertices
            int degree[16] = {};
            std::uint32_t adj[16] = {};
            for (std::uint32_t m = mask; m; m &= m - 1) {
                const auto& [a, b] = pairs[std::countr_zero(m)];
                ++degree[pos[a]];
                ++degree[pos[b]];
                adj[pos[a]] |= 1u << pos[b];
                adj[pos[b]] |= 1u << pos[a];
            }
            bool ok = true;
            for (int x = 0; x < nx && ok; ++x)
                if (degree[pos[extra[x]]] < 2) ok = false;
            if (!ok) continue;
            // reachability from S
            if (nx > 0) {
                std::uint32_t reach = s_mask, frontier = s_mask;
                while (frontier) {
                    std::uint32_t nxt = 0;
                    for (std::uint32_t f = frontier; f; f &= f - 1)
                        nxt |= adj[std::countr_zero(f)];
                    nxt &= ~reach;
                    reach |= nxt;
                    frontier = nxt;
                }
                for (int x = 0; x < nx && ok; ++x)
                    if (!(reach & (1u << pos[extra[x]]))) ok = false;
                if (!ok) continue;
            }
            Ribbon r;
            r.support = w;
            for (std::uint32_t m = mask; m; m &= m - 1)
                r.edge_set.push_back(pairs[std::countr_zero(m)]);
            std::sort(r.edge_set.begin(), r.edge_set.end());
            r.boundary_s = s;
            out.push_back(std::move(r));
        }
    };

    auto recurse = [&](auto&& self, size_t start, int budget) -> void {
        emit_for_support();
        if (budget == 0 || ns == 0) return;  // nothing reachable from S = ∅
        for (size_t i = start; i < others.size(); ++i) {
            extra.push_back(others[i]);
            self(self, i + 1, budget - 1);
            extra.pop_back();
        }
    };
    recurse(recurse, 0, params.extra_vertices);
    return out;
}

double ribbon_coefficient(const Ribbon& r, const PrunedGraph& g,
                          const MomentParams& params) {
    const double k = params.resolved_k(g);
    const double n = static_cast<double>(g.n());
    return std::pow(k / n, static_cast<double>(r.support.size())) *
           std::pow(g.chi.chi_absent, static_cast<double>(r.edge_set.size()));
}

double pe_value_enumerated(const std::vector<int>& S, const PrunedGraph& g,
                           const MomentParams& params) {
    double total = 0.0;
    for (const Ribbon& r : enumerate_ribbons(S, g, params))
        total += ribbon_coefficient(r, g, params) * chi_product(g, r.edge_set);
    return total;
}

double pe_value(const std::vector<int>& S, const PrunedGraph& g,
                const MomentParams& params) {
    const std::vector<int> s = checked_support(S, g);
    if (static_cast<int>(s.size()) > params.d_sos)
        throw DomainError("pe_value: |S| exceeds d_sos");
    if (params.extra_vertices > 2) return pe_value_enumerated(s, g, params);

    const double k = params.resolved_k(g);
    const double n = static_cast<double>(g.n());
    const double kn = k / n;
    const double u = g.chi.chi_absent;
    const double a = g.chi.chi_present;
    const double b = g.chi.chi_absent;
    const int ns = static_cast<int>(s.size());

    // Edges inside S toggle freely: they factor out of every ribbon.
    double f_s = 1.0;
    for (int i = 0; i < ns; ++i)
        for (int j = i + 1; j < ns; ++j)
            f_s *= 1.0 + u * character(g, s[i], s[j]);

    double series = 1.0;
    if (params.extra_vertices >= 1 && ns > 0) {
        // Per outside vertex x: D(x) sums edge choices from x into S with
        // >= 1 edge, E1(x) those with >= 2 (the non-dangling rule).
        const double t_absent = 1.0 + u * b;
        double t1 = 0.0, sum_e1_sq = 0.0, sum_d = 0.0, sum_d_sq = 0.0;
        std::vector<double> dvals(g.n() + 1, 0.0);
        for (int x : g.survivors) {
            if (std::binary_search(s.begin(), s.end(), x)) continue;
            int cnt = 0;
            for (int w : g.adj[x])
                if (std::binary_search(s.begin(), s.end(), w)) ++cnt;
            double prod = std::pow(t_absent, ns - cnt);
            if (cnt > 0) prod *= std::pow(1.0 + u * a, cnt);
            const double dv = prod - 1.0;
            const double e1 = prod - 1.0 - u * (cnt * a + (ns - cnt) * b);
            dvals[x] = dv;
            t1 += e1;
            sum_e1_sq += e1 * e1;
            sum_d += dv;
            sum_d_sq += dv * dv;
        }
        series += kn * t1;
        if (params.extra_vertices >= 2) {
            double edge_dd = 0.0;
            for (const auto& [x, y] : g.edges) {
                if (std::binary_search(s.begin(), s.end(), x) ||
                    std::binary_search(s.begin(), s.end(), y))
                    continue;
                edge_dd += dvals[x] * dvals[y];
            }
            const double beta = u * b;
            const double gamma = u * (a - b);
            const double t2 = (t1 * t1 - sum_e1_sq) / 2.0 +
                              beta * (sum_d * sum_d - sum_d_sq) / 2.0 +
                              gamma * edge_dd;
            series += kn * kn * t2;
        }
    }
    return f_s * std::pow(kn, ns) * series;
}

MomentMatrix assemble_moment_matrix(const PrunedGraph& g,
                                    const MomentParams& params) {
    if (params.d_sos < 2 || params.d_sos % 2 != 0)
        throw ParameterError("assemble_moment_matrix: d_sos must be even, >= 2");
    MomentMatrix m;
    m.params = params;
    m.k = params.resolved_k(g);
    m.k_warning = m.k < 1.0;
    m.n = g.n();
    m.survivors = g.survivors;

    const int half = params.d_sos / 2;
    std::vector<int> current;
    auto build = [&](auto&& self, size_t start) -> void {
        if (static_cast<int>(current.size()) <= half)
            m.index.push_back(current);
        if (static_cast<int>(current.size()) == half) return;
        for (size_t i = start; i < g.survivors.size(); ++i) {
            current.push_back(g.survivors[i]);
            self(self, i + 1);
            current.pop_back();
        }
    };
    build(build, 0);
    std::stable_sort(m.index.begin(), m.index.end(),
                     [](const auto& x, const auto& y) {
                         return x.size() < y.size();
                     });
    const int dim = static_cast<int>(m.index.size());
    if (dim > params.index_cap)
        throw UnsupportedSizeError("assemble_moment_matrix: index cap exceeded");

    std::map<std::vector<int>, double> cache;
    auto pe_cached = [&](std::vector<int> support) {
        auto it = cache.find(support);
        if (it != cache.end()) return it->second;
        const double value = pe_value(support, g, params);
        cache.emplace(std::move(support), value);
        return value;
    };

    m.unscaled = Eigen::MatrixXd::Zero(dim, dim);
    m.rescaled = Eigen::MatrixXd::Zero(dim, dim);
    const double nk = static_cast<double>(g.n()) / m.k;
    std::vector<int> support;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            support = m.index[i];
            support.insert(support.end(), m.index[j].begin(),
                           m.index[j].end());
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()),
                          support.end());
            const double value = pe_cached(support);
            m.unscaled(i, j) = m.unscaled(j, i) = value;
            const double scale = std::pow(
                nk, (m.index[i].size() + m.index[j].size()) / 2.0);
            m.rescaled(i, j) = m.rescaled(j, i) = scale * value;
        }
    }
    return m;
}

ConstraintReport check_constraints(const MomentMatrix& m,
                                   const PrunedGraph& g) {
    ConstraintReport rep;
    const int dim = static_cast<int>(m.index.size());
    rep.normalization_residual = std::abs(m.unscaled(0, 0) - 1.0);

    std::map<std::vector<int>, std::pair<double, double>> spread;
    std::vector<int> support;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            support = m.index[i];
            support.insert(support.end(), m.index[j].begin(),
                           m.index[j].end());
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()),
                          support.end());
            const double value = m.unscaled(i, j);

            bool has_edge = false;
            for (size_t a = 0; a < support.size() && !has_edge; ++a)
                for (size_t b = a + 1; b < support.size() && !has_edge; ++b)
                    if (g.has_edge(support[a], support[b])) has_edge = true;
            if (has_edge)
                rep.is_constraint_residual =
                    std::max(rep.is_constraint_residual, std::abs(value));

            auto [it, fresh] =
                spread.try_emplace(support, value, value);
            if (!fresh) {
                it->second.first = std::min(it->second.first, value);
                it->second.second = std::max(it->second.second, value);
            }
        }
    }
    for (const auto& [key, mm] : spread)
        rep.sos_symmetry_residual =
            std::max(rep.sos_symmetry_residual, mm.second - mm.first);
    return rep;
}

double objective_value(const MomentMatrix& m) {
    double total = 0.0;
    const int dim = static_cast<int>(m.index.size());
    for (int i = 0; i < dim; ++i)
        if (m.index[i].size() == 1) total += m.unscaled(i, 0);
    return total;
}

double min_eigenvalue(const MomentMatrix& m, MomentScale which) {
    const Eigen::MatrixXd& mat =
        which == MomentScale::Unscaled ? m.unscaled : m.rescaled;
    if (mat.rows() > 5000)
        throw UnsupportedSizeError("min_eigenvalue: dense eigensolve cap");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        mat, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double identity_dominance_norm(const MomentMatrix& m, const PrunedGraph& g) {
    std::vector<int> keep;
    const int dim = static_cast<int>(m.index.size());
    for (int i = 0; i < dim; ++i) {
        const auto& set = m.index[i];
        bool independent = true;
        for (size_t a = 0; a < set.size() && independent; ++a)
            for (size_t b = a + 1; b < set.size() && independent; ++b)
                if (g.has_edge(set[a], set[b])) independent = false;
        if (independent) keep.push_back(i);
    }
    const int sub = static_cast<int>(keep.size());
    Eigen::MatrixXd diff(sub, sub);
    for (int i = 0; i < sub; ++i)
        for (int j = 0; j < sub; ++j)
            diff(i, j) = m.rescaled(keep[i], keep[j]) - (i == j ? 1.0 : 0.0);
    if (sub == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        diff, Eigen::EigenvaluesOnly);
    return std::max(std::abs(solver.eigenvalues().minCoeff()),
                    std::abs(solver.eigenvalues().maxCoeff()));
}

PseudoExpectation glue(PseudoExpectation pe_trimmed, std::vector<int> removed) {
    std::sort(removed.begin(), removed.end());
    return [pe = std::move(pe_trimmed),
            rem = std::move(removed)](const std::vector<int>& S) {
        for (int v : S)
            if (std::binary_search(rem.begin(), rem.end(), v)) return 0.0;
        return pe(S);
    };
}

std::string moment_to_json(const MomentMatrix& m, const PrunedGraph& g) {
    nlohmann::json j;
    j["d_sos"] = m.params.d_sos;
    j["k"] = m.k;
    j["k_warning"] = m.k_warning;
    j["extra_vertices"] = m.params.extra_vertices;
    j["index"] = m.index;
    const int dim = static_cast<int>(m.index.size());
    auto dump = [&](const Eigen::MatrixXd& mat) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < dim; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int jj = 0; jj < dim; ++jj) row.push_back(mat(i, jj));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["unscaled"] = dump(m.unscaled);
    j["rescaled"] = dump(m.rescaled);
    j["min_eig"] = {
        {"unscaled", min_eigenvalue(m, MomentScale::Unscaled)},
        {"rescaled", min_eigenvalue(m, MomentScale::Rescaled)},
    };
    const ConstraintReport rep = check_constraints(m, g);
    j["constraints"] = {
        {"normalization", rep.normalization_residual},
        {"independent_set", rep.is_constraint_residual},
        {"sos_symmetry", rep.sos_symmetry_residual},
    };
    j["objective"] = objective_value(m);
    return j.dump(2);
}

}  // namespace graphmat
