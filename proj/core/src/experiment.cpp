#include "graphmat/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "graphmat/graph_matrix.hpp"
#include "graphmat/random_graph.hpp"

namespace graphmat {

Shape named_shape(const std::string& name) {
    if (name == "line") return line_shape();
    if (name == "z") return z_shape();
    if (name == "floating_triangle") return floating_triangle_shape();
    if (name == "dangling_line") return dangling_line_shape();
    throw ConfigError("unknown shape id: " + name);
}

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::vector<NormExperimentRow> norm_experiment(const NormExperimentConfig& c) {
    std::vector<NormExperimentRow> rows;
    for (const auto& ns : c.shapes) {
        for (int n : c.n_values) {
            for (double d : c.d_values) {
                for (std::uint64_t seed : c.seeds) {
                    NormExperimentRow row;
                    row.shape = ns.name;
                    row.n = n;
                    row.d = d;
                    row.seed = seed;

                    const int r = kappa(n, d);
                    std::uint64_t used_seed = seed;
                    PrunedGraph g = trim_high_degree(sample_gnp(n, d, used_seed),
                                                     c.c_degree, d);
                    bool ok = is_two_cycle_free_at(g, r);
                    if (c.require_two_cycle) {
                        for (int attempt = 1;
                             !ok && attempt < c.resample_attempts; ++attempt) {
                            used_seed = seed + 0x9e3779b97f4a7c15ull *
                                                   static_cast<std::uint64_t>(
                                                       attempt);
                            g = trim_high_degree(sample_gnp(n, d, used_seed),
                                                 c.c_degree, d);
                            ok = is_two_cycle_free_at(g, r);
                        }
                    }
                    row.two_cycle_ok = ok;

                    BoundParams bp;
                    bp.n = n;
                    bp.d = d;
                    bp.q = c.q;
                    bp.c_norm = c.c_norm;
                    row.q = bp.resolved_q(ns.shape);
                    row.predicted = predicted_block_value(ns.shape, bp);
                    BoundParams unit = bp;
                    unit.c_norm = 1.0;
                    const double base = predicted_block_value(ns.shape, unit);

                    NormEstimate est;
                    if (is_line_shape(ns.shape)) {
                        est = empirical_norm(line_operator(g), c.tol,
                                             c.max_iter, seed + 1);
                    } else {
                        const DenseGraphMatrix m =
                            materialize(ns.shape, g, IndexMode::OrderedTuple,
                                        c.work_budget, c.entry_budget);
                        est = empirical_norm(DenseOperator(m.m), c.tol,
                                             c.max_iter, seed + 1);
                    }
                    row.measured = est.value;
                    row.converged = est.converged;
                    row.ratio = base > 0 ? est.value / base : 0.0;
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

void write_report_csv(const std::vector<NormExperimentRow>& rows,
                      std::ostream& out) {
    out << "shape,n,d,seed,q,two_cycle_ok,predicted,measured,ratio,converged\n";
    for (const auto& r : rows) {
        out << r.shape << ',' << r.n << ',' << fmt17(r.d) << ',' << r.seed
            << ',' << fmt17(r.q) << ',' << (r.two_cycle_ok ? 1 : 0) << ','
            << fmt17(r.predicted) << ',' << fmt17(r.measured) << ','
            << fmt17(r.ratio) << ',' << (r.converged ? 1 : 0) << '\n';
    }
}

std::string report_to_json(const std::vector<NormExperimentRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"shape", r.shape},
                       {"n", r.n},
                       {"d", r.d},
                       {"seed", r.seed},
                       {"q", r.q},
                       {"two_cycle_ok", r.two_cycle_ok},
                       {"predicted", r.predicted},
                       {"measured", r.measured},
                       {"ratio", r.ratio},
                       {"converged", r.converged}});
    }
    return arr.dump(2);
}

}  // namespace graphmat
