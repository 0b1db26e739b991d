// Acceptance gate: one criterion per invocation (argv[1] in 1..13), one
// pass/fail line per criterion on stdout. Exit 0 on pass, 1 on fail.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <queue>
#include <string>
#include <vector>

#include <graphmat/experiment.hpp>
#include <graphmat/graph_matrix.hpp>
#include <graphmat/norm_bounds.hpp>
#include <graphmat/pseudo_moments.hpp>
#include <graphmat/random_graph.hpp>
#include <graphmat/shape.hpp>

using namespace graphmat;

namespace {

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const size_t n = xs.size();
    return n == 0 ? 0.0
                  : (n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]));
}

// ---------------------------------------------------------------- 1
bool crit1() {
    long checked = 0, bad = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const PrunedGraph g =
            trim_high_degree(sample_gnp(8, 3.0, seed), 10.0, 3.0);
        for (const Shape& s : shape_corpus(4)) {
            const DenseGraphMatrix m = materialize(s, g);
            for (size_t i = 0; i < m.row_tuples.size(); ++i)
                for (size_t j = 0; j < m.col_tuples.size(); ++j) {
                    const double dev =
                        std::abs(m.m(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(j)) -
                                 entry_bruteforce(s, g, m.row_tuples[i],
                                                  m.col_tuples[j]));
                    worst = std::max(worst, dev);
                    ++checked;
                    if (dev > 1e-12) ++bad;
                }
        }
    }
    std::printf("  entries=%ld violations=%ld max_dev=%.3g\n", checked, bad,
                worst);
    return bad == 0;
}

// ---------------------------------------------------------------- 2
// Independent separator oracle: plain adjacency lists, BFS with a queue,
// subsets enumerated as index vectors.
namespace oracle {

bool blocked(const Shape& s, const std::vector<bool>& in_sep) {
    std::vector<std::vector<int>> adj(s.n_vertices + 1);
    for (auto [a, b] : s.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> target(s.n_vertices + 1, false);
    for (int v : s.v) target[v] = true;
    std::vector<bool> seen(s.n_vertices + 1, false);
    std::queue<int> q;
    for (int v : s.u)
        if (!in_sep[v]) {
            if (target[v]) return false;
            if (!seen[v]) {
                seen[v] = true;
                q.push(v);
            }
        }
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            if (in_sep[w] || seen[w]) continue;
            if (target[w]) return false;
            seen[w] = true;
            q.push(w);
        }
    }
    return true;
}

struct Best {
    int mvs = -1;
    std::vector<int> mvs_witness;
    double best_logw = 0.0;
    bool have = false;
    std::vector<int> smvs_witness;
};

Best search(const Shape& s, double n, double d) {
    Best out;
    std::vector<bool> in_sep(s.n_vertices + 1, false);
    std::vector<int> members;
    auto consider = [&]() {
        if (!blocked(s, in_sep)) return;
        const int size = static_cast<int>(members.size());
        if (out.mvs < 0 || size < out.mvs ||
            (size == out.mvs && members < out.mvs_witness)) {
            out.mvs = size;
            out.mvs_witness = members;
        }
        int inside_edges = 0;
        for (auto [a, b] : s.edges)
            if (in_sep[a] && in_sep[b]) ++inside_edges;
        const double logw = 0.5 * (s.n_vertices - size) * std::log(n) +
                            0.5 * inside_edges * std::log(n / d);
        const double tol = 1e-12 * (1.0 + std::abs(logw));
        if (!out.have || logw > out.best_logw + tol ||
            (std::abs(logw - out.best_logw) <= tol &&
             members < out.smvs_witness)) {
            out.have = true;
            out.best_logw = logw;
            out.smvs_witness = members;
        }
    };
    auto recurse = [&](auto&& self, int v) -> void {
        if (v > s.n_vertices) {
            consider();
            return;
        }
        self(self, v + 1);
        in_sep[v] = true;
        members.push_back(v);
        self(self, v + 1);
        members.pop_back();
        in_sep[v] = false;
    };
    recurse(recurse, 1);
    return out;
}

}  // namespace oracle

bool crit2() {
    const double n = 1e4, d = 10.0;
    long shapes = 0, bad = 0;
    for_each_corpus_shape(7, [&](const Shape& s) {
        ++shapes;
        if (bad > 0 && shapes % 1000) return;  // keep reporting cheap
        const oracle::Best ref = oracle::search(s, n, d);
        const auto [mvs, witness] = min_vertex_separator(s);
        const SeparatorReport rep = sparse_mvs(s, n, d);
        const bool ok =
            mvs == ref.mvs && witness == ref.mvs_witness && rep.mvs_size == ref.mvs &&
            std::abs(rep.log_smvs_weight - ref.best_logw) <=
                1e-9 * (1.0 + std::abs(ref.best_logw)) &&
            rep.separator == ref.smvs_witness;
        if (!ok) ++bad;
    });
    std::printf("  shapes=%ld mismatches=%ld\n", shapes, bad);
    return bad == 0;
}

// ---------------------------------------------------------------- 3
bool crit3() {
    const int n = 4096;
    std::vector<double> med;
    for (double d : {5.0, 10.0, 20.0}) {
        std::vector<double> scaled;
        const int r = kappa(n, d);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const PrunedGraph g =
                trim_high_degree(sample_gnp(n, d, seed), 10.0, d);
            if (!is_two_cycle_free_at(g, r)) continue;
            const NormEstimate est =
                empirical_norm(line_operator(g), 1e-8, 2000, seed);
            scaled.push_back(est.value / std::sqrt(n));
        }
        std::printf(
            "  d=%g kappa=%d conditioned_samples=%zu "
            "median(measured/sqrt n)=%.4f\n",
            d, r, scaled.size(), median(scaled));
        if (scaled.empty()) {
            // the conditioning event can be a null event: at d=10 the graph
            // holds ~d^3/6 = 167 triangles, so some vertex lies in two
            // triangles almost surely, which violates the radius-1 ball
            // check (expected violating vertices ~ n * P(Pois(0.11) >= 2)
            // ~ 25, i.e. pass probability ~ e^-25). A median conditioned on
            // a null event is undefined; the group is excluded.
            const double per = n * 0.5 *
                               std::pow(0.5 * d * (d - 1) * d / n, 2);
            std::printf(
                "  d=%g group empty: conditioning event has probability "
                "~exp(-%.0f); excluded from the medians\n",
                d, per);
            continue;
        }
        med.push_back(median(scaled));
    }
    if (med.size() < 2) {
        std::printf("  fewer than 2 non-empty d groups; cannot check spread\n");
        return false;
    }
    const double lo = *std::min_element(med.begin(), med.end());
    const double hi = *std::max_element(med.begin(), med.end());
    std::printf(
        "  spread across %zu non-empty d groups: %.4f (must be <= 1.5), "
        "max median %.4f (must be <= 5)\n",
        med.size(), hi / lo, hi);
    return hi <= 5.0 && hi / lo <= 1.5;
}

// ---------------------------------------------------------------- 4
bool crit4() {
    const int n = 60;
    const Shape z = z_shape();
    std::vector<double> med;
    for (double d : {5.0, 20.0}) {
        std::vector<double> measured;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const PrunedGraph g =
                trim_high_degree(sample_gnp(n, d, seed), 10.0, d);
            const DenseGraphMatrix m = materialize(z, g);
            measured.push_back(
                empirical_norm(DenseOperator(m.m), 1e-8, 3000, seed).value);
        }
        const double cap = 8.0 * n * std::sqrt(n / d);
        std::printf("  d=%g median=%.2f cap(8 n sqrt(n/d))=%.2f\n", d,
                    median(measured), cap);
        if (median(measured) > cap) return false;
        med.push_back(median(measured));
    }
    const double ratio = med[0] / med[1];
    std::printf("  median(d=5)/median(d=20)=%.3f (theory 2, band [1.5, 2.7])\n",
                ratio);
    return ratio >= 1.5 && ratio <= 2.7;
}

// ---------------------------------------------------------------- 5
bool crit5() {
    // ||M|| and the predicted bound are both transpose-invariant, so one
    // member of each transpose pair carries the evidence for both
    std::vector<Shape> shapes;
    long transpose_dups = 0;
    for (const Shape& s : shape_corpus(3)) {
        const Shape t = transpose(s);
        bool dup = false;
        for (const Shape& seen : shapes)
            if (t == seen) {
                dup = true;
                break;
            }
        if (dup)
            ++transpose_dups;
        else
            shapes.push_back(s);
    }

    struct Instance {
        int n;
        double d;
        std::vector<PrunedGraph> graphs;      // conditioned seeds only
        std::vector<std::uint64_t> seeds;
    };
    std::vector<Instance> instances;
    for (int n : {200, 500}) {
        for (double d : {5.0, 10.0}) {
            Instance inst{n, d, {}, {}};
            const int r = kappa(n, d);
            for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                PrunedGraph g =
                    trim_high_degree(sample_gnp(n, d, seed), 10.0, d);
                if (!is_two_cycle_free_at(g, r)) continue;
                inst.graphs.push_back(std::move(g));
                inst.seeds.push_back(seed);
            }
            instances.push_back(std::move(inst));
        }
    }

    long combos = 0, violated = 0, skipped = 0;
    for (const Shape& s : shapes) {
        for (const Instance& inst : instances) {
            BoundParams bp;
            bp.n = inst.n;
            bp.d = inst.d;
            bp.c_norm = 3.0;
            const double predicted = predicted_block_value(s, bp);
            int passing = 0, bad = 0;
            bool unsupported = false;
            for (size_t i = 0; i < inst.graphs.size(); ++i) {
                const PrunedGraph& g = inst.graphs[i];
                double measured = 0.0;
                try {
                    if (is_line_shape(s)) {
                        measured = empirical_norm(line_operator(g), 1e-7,
                                                  2000, inst.seeds[i])
                                       .value;
                    } else {
                        const DenseGraphMatrix m = materialize(
                            s, g, IndexMode::OrderedTuple, 2e8, 4e7);
                        measured = empirical_norm(DenseOperator(m.m), 1e-7,
                                                  2000, inst.seeds[i])
                                       .value;
                    }
                } catch (const UnsupportedSizeError&) {
                    unsupported = true;
                    break;
                }
                ++passing;
                if (measured > predicted) ++bad;
            }
            if (unsupported) {
                ++skipped;
                continue;
            }
            ++combos;
            if (bad > std::max(0, passing - 9)) {
                // more than (passing - 9) failures means fewer than 9 of
                // the conditioned seeds satisfied the bound
                ++violated;
                std::printf(
                    "  VIOLATION |V|=%d |E|=%zu |U|=%zu |V|=%zu n=%d d=%g "
                    "bad=%d/%d pred=%.3g\n",
                    s.n_vertices, s.edges.size(), s.u.size(), s.v.size(),
                    inst.n, inst.d, bad, passing, predicted);
            }
        }
    }
    std::printf(
        "  shapes=%zu (+%ld transpose duplicates folded) combos=%ld "
        "violated=%ld skipped_over_budget=%ld (budget 2e8 embeddings / "
        "4e7 entries)\n",
        shapes.size(), transpose_dups, combos, violated, skipped);
    return violated == 0;
}

// ---------------------------------------------------------------- 6..8
std::vector<MomentMatrix> assembled_suite(std::vector<PrunedGraph>& graphs) {
    std::vector<MomentMatrix> out;
    graphs.clear();
    for (std::uint64_t seed : {1, 2, 3}) {
        for (int extra : {0, 1, 2}) {
            PrunedGraph g = trim_high_degree(sample_gnp(30, 5.0, seed), 10.0, 5.0);
            MomentParams p;
            p.extra_vertices = extra;
            out.push_back(assemble_moment_matrix(g, p));
            graphs.push_back(std::move(g));
        }
    }
    {
        PrunedGraph g = trim_high_degree(sample_gnp(12, 3.0, 4), 10.0, 3.0);
        MomentParams p;
        p.d_sos = 4;
        p.extra_vertices = 1;
        out.push_back(assemble_moment_matrix(g, p));
        graphs.push_back(std::move(g));
    }
    return out;
}

bool crit6() {
    std::vector<PrunedGraph> graphs;
    const auto suite = assembled_suite(graphs);
    bool ok = true;
    for (const auto& m : suite)
        if (m.unscaled(0, 0) != 1.0) ok = false;
    std::printf("  matrices=%zu all have exact unit normalization: %s\n",
                suite.size(), ok ? "yes" : "no");
    return ok;
}

bool crit7() {
    double worst = 0.0;
    for (std::uint64_t seed : {1, 2, 3}) {
        const PrunedGraph g =
            trim_high_degree(sample_gnp(30, 5.0, seed), 10.0, 5.0);
        for (int extra : {0, 1, 2}) {
            MomentParams p;
            p.extra_vertices = extra;
            for (const auto& [a, b] : g.edges)
                worst = std::max(worst, std::abs(pe_value({a, b}, g, p)));
        }
    }
    std::printf("  max |pE[x_S]| over edge supports = %.3g (cap 1e-9)\n",
                worst);
    return worst <= 1e-9;
}

bool crit8() {
    std::vector<PrunedGraph> graphs;
    const auto suite = assembled_suite(graphs);
    double worst = 0.0;
    for (size_t i = 0; i < suite.size(); ++i)
        worst = std::max(
            worst,
            check_constraints(suite[i], graphs[i]).sos_symmetry_residual);
    std::printf("  max partition deviation = %.3g (cap 1e-12)\n", worst);
    return worst <= 1e-12;
}

// ---------------------------------------------------------------- 9
bool crit9() {
    int ok = 0;
    double k = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PrunedGraph g =
            trim_high_degree(sample_gnp(200, 10.0, seed), 10.0, 10.0);
        MomentParams p;  // d_sos=2, extra=2, k from the formula
        const MomentMatrix m = assemble_moment_matrix(g, p);
        k = m.k;
        const double obj = objective_value(m);
        if (obj >= 0.8 * m.k && obj <= 1.2 * m.k) ++ok;
    }
    std::printf("  k=%.4f, objective in [0.8k, 1.2k] for %d/10 seeds\n", k, ok);
    return ok >= 8;
}

// ---------------------------------------------------------------- 10
bool crit10() {
    const PrunedGraph g =
        trim_high_degree(RandomGraph::from_edges(12, {}, 0.0), 10.0, 1.0);
    MomentParams p;
    p.extra_vertices = 0;
    p.k = 3.0;
    const MomentMatrix m = assemble_moment_matrix(g, p);
    const double eig = min_eigenvalue(m, MomentScale::Unscaled);
    std::printf("  Bernoulli-product moment matrix min eigenvalue = %.3g\n",
                eig);
    return eig >= -1e-10;
}

// ---------------------------------------------------------------- 11
bool crit11() {
    int ok = 0;
    std::vector<double> norms;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PrunedGraph g =
            trim_high_degree(sample_gnp(200, 10.0, seed), 10.0, 10.0);
        MomentParams p;
        const MomentMatrix m = assemble_moment_matrix(g, p);
        const double norm = identity_dominance_norm(m, g);
        norms.push_back(norm);
        if (norm <= 0.5) ++ok;
    }
    const double k = 200.0 / (2.0 * std::sqrt(10.0) * 16.0);
    std::printf("  median ||rescaled - Pi|| = %.3f, <= 0.5 for %d/10 seeds\n",
                median(norms), ok);
    std::printf(
        "  note: at n=200 the deviation is structural, not numerical. The\n"
        "  empty-set/singleton coupling alone contributes about sqrt(k) ~ "
        "%.2f\n"
        "  and the singleton block about k ~ %.2f (k = n/(2 sqrt(d) d_sos^4) "
        "is\n"
        "  O(1) at desk scale, so the off-diagonal mass does not vanish).\n",
        std::sqrt(k), k);
    return ok >= 8;
}

// ---------------------------------------------------------------- 12
bool crit12() {
    ChargingParams cp;
    cp.tol = 1e-8;

    const PrunedGraph gl =
        trim_high_degree(sample_gnp(2000, 10.0, 1), 10.0, 10.0);
    cp.k = 2000.0 / (2.0 * std::sqrt(10.0) * 16.0);
    const double line = charging_ratio(line_shape(), gl, cp);

    const PrunedGraph gz =
        trim_high_degree(sample_gnp(60, 10.0, 1), 10.0, 10.0);
    cp.k = 60.0 / (2.0 * std::sqrt(10.0) * 16.0);
    const double z = charging_ratio(z_shape(), gz, cp);

    std::printf("  charging_ratio(line, n=2000)=%.4g, (z, n=60)=%.4g (cap "
                "0.1)\n",
                line, z);
    return line < 0.1 && z < 0.1;
}

// ---------------------------------------------------------------- 13
bool crit13() {
    const int n = 10000;
    int pass = 0;
    const int r = kappa(n, 5.0);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const PrunedGraph g =
            trim_high_degree(sample_gnp(n, 5.0, seed), 10.0, 5.0);
        if (is_two_cycle_free_at(g, r)) ++pass;
    }
    std::printf("  2-cycle pass rate at kappa=%d: %d/20 (need >= 16)\n", r,
                pass);
    if (pass < 16) return false;

    for (double d : {5.0, 10.0}) {
        size_t worst = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const PrunedGraph g =
                trim_high_degree(sample_gnp(n, d, seed), 10.0, d);
            worst = std::max(worst, g.removed.size());
        }
        std::printf("  d=%g max removed fraction = %.2e (cap 1e-3)\n", d,
                    static_cast<double>(worst) / n);
        if (static_cast<double>(worst) / n > 1e-3) return false;
    }
    return true;
}

const char* kDescriptions[] = {
    "",
    "materialize vs brute-force oracle over corpus(4)",
    "separator routines vs independent exhaustive search over corpus(7)",
    "line-graph norm scale and d-independence at n=4096",
    "Z-shape norm scale and d-ratio at n=60",
    "measured norms within the predicted envelope (c_norm=3)",
    "moment matrix normalization is exactly 1",
    "independent-set constraint vanishes to 1e-9",
    "SoS partition symmetry to 1e-12",
    "objective value within 20% of k",
    "Bernoulli-product moment matrix is PSD",
    "identity dominance of the rescaled moment matrix",
    "middle-shape charging ratios below 0.1",
    "2-cycle radius pass rate and trimming rarity",
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..13>\n");
        return 2;
    }
    const int which = std::atoi(argv[1]);
    if (which < 1 || which > 13) {
        std::fprintf(stderr, "criterion out of range\n");
        return 2;
    }
    static bool (*const table[])() = {nullptr, crit1, crit2,  crit3,  crit4,
                                      crit5,   crit6, crit7,  crit8,  crit9,
                                      crit10,  crit11, crit12, crit13};
    std::printf("criterion %d: %s\n", which, kDescriptions[which]);
    const bool ok = table[which]();
    std::printf("criterion %d: %s\n", which, ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}
