#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include <graphmat/graph_matrix.hpp>
#include <graphmat/random_graph.hpp>

namespace graphmat::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands = {"sample", "norm", "moments",
                                            "oracle", "shapes"};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

template <typename T>
void read_field(const json& j, const char* key, T& into) {
    if (j.contains(key)) into = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig c;
    if (!j.contains("command"))
        throw ConfigError("config is missing required field \"command\"");
    try {
        c.command = j.at("command").get<std::string>();
        read_field(j, "n", c.n);
        read_field(j, "d", c.d);
        read_field(j, "seeds", c.seeds);
        read_field(j, "shapes", c.shapes);
        read_field(j, "corpus_max_vertices", c.corpus_max_vertices);
        read_field(j, "c_degree", c.c_degree);
        read_field(j, "c_norm", c.c_norm);
        read_field(j, "q", c.q);
        read_field(j, "tol", c.tol);
        read_field(j, "max_iter", c.max_iter);
        read_field(j, "require_two_cycle", c.require_two_cycle);
        read_field(j, "d_sos", c.d_sos);
        read_field(j, "c_eta", c.c_eta);
        read_field(j, "extra_vertices", c.extra_vertices);
        read_field(j, "k", c.k);
        read_field(j, "out", c.out);
        read_field(j, "format", c.format);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    validate_config(c);
    return c;
}

std::string config_to_json(const ExperimentConfig& c) {
    json j;
    j["command"] = c.command;
    j["n"] = c.n;
    j["d"] = c.d;
    j["seeds"] = c.seeds;
    j["shapes"] = c.shapes;
    j["corpus_max_vertices"] = c.corpus_max_vertices;
    j["c_degree"] = c.c_degree;
    j["c_norm"] = c.c_norm;
    j["q"] = c.q;
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
    j["require_two_cycle"] = c.require_two_cycle;
    j["d_sos"] = c.d_sos;
    j["c_eta"] = c.c_eta;
    j["extra_vertices"] = c.extra_vertices;
    j["k"] = c.k;
    j["out"] = c.out;
    j["format"] = c.format;
    return j.dump(2);
}

ExperimentConfig load_config(const std::string& path) {
    return config_from_json(slurp(path));
}

Shape resolve_shape(const std::string& entry) {
    if (entry.size() > 5 &&
        entry.compare(entry.size() - 5, 5, ".json") == 0) {
        try {
            return shape_from_json(slurp(entry));
        } catch (const IoError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("shape file " + entry + ": " + e.what());
        }
    }
    return named_shape(entry);
}

void validate_config(const ExperimentConfig& c) {
    if (std::find(kCommands.begin(), kCommands.end(), c.command) ==
        kCommands.end())
        throw ConfigError("unknown command: \"" + c.command + "\"");
    for (double d : c.d)
        if (d < 0) throw ConfigError("negative d: " + std::to_string(d));
    for (int n : c.n)
        if (n < 1) throw ConfigError("n must be >= 1");
    const bool stochastic = c.command == "sample" || c.command == "norm" ||
                            c.command == "moments";
    if (stochastic && c.seeds.empty())
        throw ConfigError("seeds must be non-empty for command \"" +
                          c.command + "\"");
    if (c.format != "csv" && c.format != "json")
        throw ConfigError("format must be csv or json, got \"" + c.format +
                          "\"");
    if (c.command == "norm" || c.command == "sample") {
        if (c.n.empty()) throw ConfigError("n list is empty");
        if (c.d.empty()) throw ConfigError("d list is empty");
    }
}

int thread_cap_from_env() {
    const char* env = std::getenv("GRAPHMAT_THREADS");
    if (!env) return 1;
    const int cap = std::atoi(env);
    return cap >= 1 ? cap : 1;
}

namespace {

json run_sample(const ExperimentConfig& c) {
    const int n = c.n.front();
    const double d = c.d.front();
    const std::uint64_t seed = c.seeds.front();
    PrunedGraph g = trim_high_degree(sample_gnp(n, d, seed), c.c_degree, d);
    const int r = kappa(n, std::max(2.0, d));
    if (!c.out.empty()) spill(c.out, graph_to_json(g));
    return {{"command", "sample"},
            {"n", n},
            {"d", d},
            {"seed", seed},
            {"edges", g.edges.size()},
            {"removed", g.removed.size()},
            {"two_cycle_ok", is_two_cycle_free_at(g, r)},
            {"out", c.out}};
}

json run_norm(const ExperimentConfig& c) {
    NormExperimentConfig nc;
    for (const auto& entry : c.shapes)
        nc.shapes.push_back({entry, resolve_shape(entry)});
    nc.n_values = c.n;
    nc.d_values = c.d;
    nc.seeds = c.seeds;
    nc.c_degree = c.c_degree;
    nc.c_norm = c.c_norm;
    nc.q = c.q;
    nc.tol = c.tol;
    nc.max_iter = c.max_iter;
    nc.require_two_cycle = c.require_two_cycle;
    const auto rows = norm_experiment(nc);
    if (!c.out.empty()) {
        if (c.format == "csv") {
            std::ostringstream buf;
            write_report_csv(rows, buf);
            spill(c.out, buf.str());
        } else {
            spill(c.out, report_to_json(rows));
        }
    }
    return {{"command", "norm"}, {"rows", rows.size()}, {"out", c.out}};
}

json run_moments(const ExperimentConfig& c) {
    const int n = c.n.front();
    const double d = c.d.front();
    const std::uint64_t seed = c.seeds.front();
    PrunedGraph g = trim_high_degree(sample_gnp(n, d, seed), c.c_degree, d);
    MomentParams mp;
    mp.d_sos = c.d_sos;
    mp.c_eta = c.c_eta;
    mp.extra_vertices = c.extra_vertices;
    mp.k = c.k;
    const MomentMatrix m = assemble_moment_matrix(g, mp);
    const ConstraintReport rep = check_constraints(m, g);
    if (!c.out.empty()) spill(c.out, moment_to_json(m, g));
    return {{"command", "moments"},
            {"n", n},
            {"d", d},
            {"seed", seed},
            {"dimension", m.index.size()},
            {"k", m.k},
            {"k_warning", m.k_warning},
            {"objective", objective_value(m)},
            {"normalization", rep.normalization_residual},
            {"independent_set", rep.is_constraint_residual},
            {"sos_symmetry", rep.sos_symmetry_residual},
            {"out", c.out}};
}

json run_oracle(const ExperimentConfig& c) {
    int checked = 0, failed = 0;
    double worst = 0.0;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        PrunedGraph g =
            trim_high_degree(sample_gnp(8, 3.0, seed), c.c_degree, 3.0);
        for (const Shape& s : shape_corpus(c.corpus_max_vertices)) {
            const DenseGraphMatrix m = materialize(s, g);
            for (size_t i = 0; i < m.row_tuples.size(); ++i)
                for (size_t j = 0; j < m.col_tuples.size(); ++j) {
                    const double oracle = entry_bruteforce(
                        s, g, m.row_tuples[i], m.col_tuples[j]);
                    const double dev = std::abs(
                        m.m(static_cast<Eigen::Index>(i),
                            static_cast<Eigen::Index>(j)) -
                        oracle);
                    worst = std::max(worst, dev);
                    ++checked;
                    if (dev > 1e-12) ++failed;
                }
        }
    }
    return {{"command", "oracle"},
            {"entries_checked", checked},
            {"entries_failed", failed},
            {"max_deviation", worst},
            {"pass", failed == 0}};
}

json run_shapes(const ExperimentConfig& c) {
    const auto corpus = shape_corpus(c.corpus_max_vertices);
    if (!c.out.empty()) {
        json arr = json::array();
        for (const Shape& s : corpus) arr.push_back(json::parse(shape_to_json(s)));
        spill(c.out, arr.dump(2));
    }
    return {{"command", "shapes"},
            {"max_vertices", c.corpus_max_vertices},
            {"count", corpus.size()},
            {"out", c.out}};
}

}  // namespace

int run(const ExperimentConfig& c) {
    json summary;
    int code = 0;
    try {
        validate_config(c);
        if (c.command == "sample") summary = run_sample(c);
        else if (c.command == "norm") summary = run_norm(c);
        else if (c.command == "moments") summary = run_moments(c);
        else if (c.command == "oracle") summary = run_oracle(c);
        else summary = run_shapes(c);
        summary["status"] = "ok";
    } catch (const UnsupportedSizeError& e) {
        summary = {{"status", "error"}, {"kind", "unsupported_size"},
                   {"message", e.what()}};
        code = 3;
    } catch (const EnumerationOverflowError& e) {
        summary = {{"status", "error"}, {"kind", "unsupported_size"},
                   {"message", e.what()}};
        code = 3;
    } catch (const IoError& e) {
        summary = {{"status", "error"}, {"kind", "io"},
                   {"message", e.what()}};
        code = 4;
    } catch (const Error& e) {
        summary = {{"status", "error"}, {"kind", "config"},
                   {"message", e.what()}};
        code = 2;
    }
    summary["threads"] = thread_cap_from_env();
    std::cout << summary.dump() << std::endl;
    return code;
}

}  // namespace graphmat::cli
