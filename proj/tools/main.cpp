#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"graphmat experiment harness"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");

    // Flag overrides; only applied when given on the command line.
    std::vector<int> n;
    std::vector<double> d;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> shapes;
    int max_vertices = 0, d_sos = 0, extra_vertices = -1, max_iter = 0;
    double c_eta = 0, c_norm = 0, k = -2, q = 0, tol = 0;
    std::string out, format;
    bool require_two_cycle = false;
    auto* on = app.add_option("--n", n, "vertex counts");
    auto* od = app.add_option("--d", d, "average degrees");
    auto* os = app.add_option("--seed", seeds, "seeds");
    auto* osh = app.add_option("--shape", shapes, "shape names or .json files");
    auto* omv = app.add_option("--max-vertices", max_vertices, "corpus cap");
    auto* ods = app.add_option("--d-sos", d_sos, "SoS degree");
    auto* oev =
        app.add_option("--extra-vertices", extra_vertices, "truncation budget");
    auto* oce = app.add_option("--c-eta", c_eta, "objective constant");
    auto* ocn = app.add_option("--c-norm", c_norm, "norm bound constant");
    auto* ok = app.add_option("--k", k, "objective value override");
    auto* oq = app.add_option("--q", q, "trace power override");
    auto* otol = app.add_option("--tol", tol, "power iteration tolerance");
    auto* omi = app.add_option("--max-iter", max_iter, "power iteration cap");
    auto* oout = app.add_option("--out", out, "output artifact path");
    auto* ofmt = app.add_option("--format", format, "csv or json");
    auto* ortc = app.add_flag("--require-two-cycle", require_two_cycle,
                              "resample until the 2-cycle check passes");

    std::string command;
    for (const char* name : {"sample", "norm", "moments", "oracle", "shapes"})
        app.add_subcommand(name)
            ->fallthrough()
            ->callback([&command, name] { command = name; });

    CLI11_PARSE(app, argc, argv);

    using graphmat::cli::ExperimentConfig;
    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = graphmat::cli::load_config(config_path);
        if (!command.empty()) cfg.command = command;
        if (on->count()) cfg.n = n;
        if (od->count()) cfg.d = d;
        if (os->count()) cfg.seeds = seeds;
        if (osh->count()) cfg.shapes = shapes;
        if (omv->count()) cfg.corpus_max_vertices = max_vertices;
        if (ods->count()) cfg.d_sos = d_sos;
        if (oev->count()) cfg.extra_vertices = extra_vertices;
        if (oce->count()) cfg.c_eta = c_eta;
        if (ocn->count()) cfg.c_norm = c_norm;
        if (ok->count()) cfg.k = k;
        if (oq->count()) cfg.q = q;
        if (otol->count()) cfg.tol = tol;
        if (omi->count()) cfg.max_iter = max_iter;
        if (oout->count()) cfg.out = out;
        if (ofmt->count()) cfg.format = format;
        if (ortc->count()) cfg.require_two_cycle = require_two_cycle;
        if (cfg.command.empty())
            throw graphmat::ConfigError(
                "no command given (sample|norm|moments|oracle|shapes)");
    } catch (const graphmat::IoError& e) {
        std::cout << nlohmann::json{{"status", "error"},
                                    {"kind", "io"},
                                    {"message", e.what()}}
                         .dump()
                  << std::endl;
        return 4;
    } catch (const graphmat::Error& e) {
        std::cout << nlohmann::json{{"status", "error"},
                                    {"kind", "config"},
                                    {"message", e.what()}}
                         .dump()
                  << std::endl;
        return 2;
    }
    return graphmat::cli::run(cfg);
}
