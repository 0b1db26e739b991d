#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <graphmat/experiment.hpp>
#include <graphmat/pseudo_moments.hpp>

namespace graphmat::cli {

struct ExperimentConfig {
    std::string command;  // sample | norm | moments | oracle | shapes
    std::vector<int> n = {200};
    std::vector<double> d = {10.0};
    std::vector<std::uint64_t> seeds = {1};
    std::vector<std::string> shapes = {"line"};  // names or .json paths
    int corpus_max_vertices = 4;

    double c_degree = 10.0;
    double c_norm = 3.0;
    double q = 0.0;
    double tol = 1e-8;
    int max_iter = 2000;
    bool require_two_cycle = false;

    int d_sos = 2;
    double c_eta = 2.0;
    int extra_vertices = 2;
    double k = -1.0;

    std::string out;            // empty: stdout summary only
    std::string format = "csv"; // csv | json

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& c);

// Resolves a shape entry: a built-in name or a path to a shape JSON file.
Shape resolve_shape(const std::string& entry);

// Executes the command, writes artifacts, prints one JSON summary line to
// stdout. Returns the process exit code (0 ok, 2 config, 3 size, 4 io).
int run(const ExperimentConfig& c);

int thread_cap_from_env();

}  // namespace graphmat::cli
