#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphmat/norm_bounds.hpp"
#include "graphmat/shape.hpp"

namespace graphmat {

struct NamedShape {
    std::string name;
    Shape shape;
};

// Resolves the built-in names (line, z, floating_triangle, dangling_line);
// throws ConfigError naming the id otherwise.
Shape named_shape(const std::string& name);

struct NormExperimentConfig {
    std::vector<NamedShape> shapes;
    std::vector<int> n_values;
    std::vector<double> d_values;
    std::vector<std::uint64_t> seeds;
    double c_degree = 10.0;
    double c_norm = 3.0;
    double q = 0.0;                // <= 0: per-shape default
    double tol = 1e-8;
    int max_iter = 2000;
    bool require_two_cycle = false;  // resample (bounded) until the check passes
    int resample_attempts = 50;
    double work_budget = 1e8;
    double entry_budget = 4e7;
};

struct NormExperimentRow {
    std::string shape;
    int n = 0;
    double d = 0.0;
    std::uint64_t seed = 0;
    double q = 0.0;
    bool two_cycle_ok = false;
    double predicted = 0.0;
    double measured = 0.0;
    double ratio = 0.0;  // measured / predicted at c_norm = 1
    bool converged = false;
};

// One row per (shape, n, d, seed): sample, trim, 2-cycle check, measure
// the norm, evaluate the predicted bound.
std::vector<NormExperimentRow> norm_experiment(const NormExperimentConfig& c);

void write_report_csv(const std::vector<NormExperimentRow>& rows,
                      std::ostream& out);
std::string report_to_json(const std::vector<NormExperimentRow>& rows);

}  // namespace graphmat
