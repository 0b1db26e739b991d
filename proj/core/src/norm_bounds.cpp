#include "graphmat/norm_bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace graphmat {

double default_q(const Shape& s, double n) {
    const double ln = std::log(n);
    const double q = static_cast<double>(s.u.size()) *
                     static_cast<double>(s.v.size()) * ln * ln;
    return std::max(1.0, q);
}

double BoundParams::resolved_q(const Shape& s) const {
    return q > 0 ? q : default_q(s, n);
}

double BoundParams::resolved_sing_decay() const {
    return sing_decay >= 0 ? sing_decay : std::exp(-d);
}

double predicted_block_value(const Shape& s, const BoundParams& params) {
    if (s.n_vertices > 20)
        throw UnsupportedSizeError(
            "predicted_block_value: separator enumeration cap is 20 vertices");
    const double n = params.n;
    const double d = params.d;
    const double c = params.c_norm;
    const double q = params.resolved_q(s);
    const double decay = params.resolved_sing_decay();
    const StructureReport st = structure(s);

    std::uint32_t mandatory = 0;
    for (int a : s.u)
        for (int b : s.v)
            if (a == b) mandatory |= 1u << (a - 1);

    int n_isolated = static_cast<int>(st.isolated.size());

    double best = 0.0;
    bool found = false;
    const std::uint32_t all = (s.n_vertices >= 32)
                                  ? 0xffffffffu
                                  : (1u << s.n_vertices) - 1;
    for (std::uint32_t mask = 0;; ++mask) {
        do {
            if ((mask & mandatory) != mandatory) break;
            std::vector<int> sep;
            for (int v = 1; v <= s.n_vertices; ++v)
                if (mask & (1u << (v - 1))) sep.push_back(v);
            if (!is_separator(s, sep)) break;

            int edges_in_s = 0;
            for (const auto& [a, b] : s.edges)
                if ((mask & (1u << (a - 1))) && (mask & (1u << (b - 1))))
                    ++edges_in_s;
            const int outside = s.n_vertices - std::popcount(mask);

            double value = std::pow(c, s.n_vertices + edges_in_s) *
                           std::pow(std::sqrt(n), outside) *
                           std::pow(n / d, edges_in_s / 2.0) *
                           std::pow(std::sqrt(n), n_isolated);
            for (const auto& br : st.dangling_branches) {
                int len = 0;
                for (int v : br.branch)
                    if (!(mask & (1u << (v - 1)))) ++len;
                if (len > 0)
                    value *= std::min(std::sqrt(2.0 * s.n_vertices * q),
                                      std::pow(std::sqrt(d), len));
            }
            for (const auto& comp : st.floating_components) {
                int comp_edges = 0;
                for (const auto& [a, b] : s.edges) {
                    const bool ain =
                        std::find(comp.begin(), comp.end(), a) != comp.end();
                    if (ain &&
                        std::find(comp.begin(), comp.end(), b) != comp.end())
                        ++comp_edges;
                }
                // Edgeless floating components are exactly the isolated
                // vertices already carried by the sqrt(n)^{|I|} factor.
                if (comp_edges == 0) continue;
                bool meets_s = false;
                for (int v : comp)
                    if (mask & (1u << (v - 1))) meets_s = true;
                const double quiet = meets_s
                                         ? 0.0
                                         : std::sqrt(n) *
                                               std::pow(decay, comp_edges);
                value *= std::max(2.0 * s.n_vertices * q, quiet);
            }
            if (!found || value > best) {
                best = value;
                found = true;
            }
        } while (false);
        if (mask == all) break;
    }
    return best;
}

NormEstimate empirical_norm(const GraphMatrixOperator& op, double tol,
                            int max_iter, std::uint64_t seed) {
    NormEstimate out;
    const Eigen::Index rows = op.rows();
    const Eigen::Index cols = op.cols();
    if (rows == 0 || cols == 0) {
        out.converged = true;
        return out;
    }
    for (int restart = 0; restart < 3; ++restart) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(restart));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::VectorXd x(rows);
        for (Eigen::Index i = 0; i < rows; ++i) x[i] = gauss(rng);
        x.normalize();
        double rayleigh = 0.0;
        bool converged = false;
        int iters = 0;
        for (int it = 0; it < max_iter; ++it) {
            const Eigen::VectorXd y = op.apply(op.apply_transpose(x));
            const double r = x.dot(y);
            const double norm = y.norm();
            ++iters;
            if (norm < 1e-300) {
                rayleigh = 0.0;
                converged = true;
                break;
            }
            if (it > 0 &&
                std::abs(r - rayleigh) < tol * std::max(std::abs(r), 1e-300)) {
                rayleigh = r;
                converged = true;
                break;
            }
            rayleigh = r;
            x = y / norm;
        }
        const double sigma = rayleigh > 0 ? std::sqrt(rayleigh) : 0.0;
        if (restart == 0 || sigma > out.value) {
            out.value = sigma;
            out.converged = converged;
            out.iterations = iters;
        }
    }
    return out;
}

double trace_moment(const Shape& s, const PrunedGraph& g, int q,
                    double work_budget, double entry_budget) {
    if (q < 1) throw ParameterError("trace_moment: q must be >= 1");
    const DenseGraphMatrix m =
        materialize(s, g, IndexMode::OrderedTuple, work_budget, entry_budget);
    const Eigen::MatrixXd base = m.m * m.m.transpose();
    Eigen::MatrixXd power = base;
    for (int i = 1; i < q; ++i) power = power * base;
    return power.trace();
}

double shape_coefficient(const Shape& tau, const PrunedGraph& g, double k) {
    const double n = static_cast<double>(g.n());
    const double exponent =
        tau.n_vertices -
        (static_cast<double>(tau.u.size()) + static_cast<double>(tau.v.size())) /
            2.0;
    return std::pow(k / n, exponent) *
           std::pow(g.chi.chi_absent, static_cast<double>(tau.edges.size()));
}

double charging_ratio(const Shape& tau, const PrunedGraph& g,
                      const ChargingParams& params) {
    if (!structure(tau).is_middle)
        throw ValidationError("charging_ratio: shape is not a middle shape");
    NormEstimate est;
    if (is_line_shape(tau)) {
        est = empirical_norm(line_operator(g), params.tol, params.max_iter,
                             params.seed);
    } else {
        const DenseGraphMatrix m =
            materialize(tau, g, IndexMode::OrderedTuple, params.work_budget,
                        params.entry_budget);
        est = empirical_norm(DenseOperator(m.m), params.tol, params.max_iter,
                             params.seed);
    }
    return std::abs(shape_coefficient(tau, g, params.k)) * est.value;
}

}  // namespace graphmat
