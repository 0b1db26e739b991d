#pragma once

#include <cstdint>
#include <vector>

#include "graphmat/graph_matrix.hpp"
#include "graphmat/random_graph.hpp"
#include "graphmat/shape.hpp"

namespace graphmat {

struct BoundParams {
    double n = 0.0;
    double d = 0.0;
    double q = 0.0;        // <= 0 means use default_q for the shape
    double c_norm = 3.0;
    double sing_decay = -1.0;  // < 0 means exp(-d)

    double resolved_q(const Shape& s) const;
    double resolved_sing_decay() const;
};

// q = c * |U||V| * (ln n)^2 with c = 1, floored at 1.
double default_q(const Shape& s, double n);

// B_q(alpha): max over separators S containing U∩V of
//   c^{|V(a)|} c^{|E(S)|} sqrt(n)^{|V\S|} (n/d)^{|E(S)|/2} sqrt(n)^{|I(a)|}
//   * dangling(a\S) * float(a),
// dangling = prod over branches of min(sqrt(2|V(a)|q), sqrt(d)^{|branch|}),
// float = prod over edged floating components C of
//   max(2|V(a)|q, sqrt(n) * sing_decay^{|E(C)|} * [C∩S=∅]).
// Isolated floating vertices are carried by the sqrt(n)^{|I(a)|} factor.
double predicted_block_value(const Shape& s, const BoundParams& params);

struct NormEstimate {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Largest singular value by power iteration on op·opᵀ, random start,
// converged when successive Rayleigh quotients agree to tol relative.
// Runs 3 restarts and returns the max.
NormEstimate empirical_norm(const GraphMatrixOperator& op, double tol = 1e-8,
                            int max_iter = 2000, std::uint64_t seed = 1);

// Exact Tr((M Mᵀ)^q) by repeated dense multiplication.
double trace_moment(const Shape& s, const PrunedGraph& g, int q,
                    double work_budget = 1e8, double entry_budget = 4e7);

struct ChargingParams {
    double k = 0.0;
    double tol = 1e-8;
    int max_iter = 2000;
    std::uint64_t seed = 1;
    double work_budget = 1e8;
    double entry_budget = 4e7;
};

// |lambda_tau| * ||M_tau|| for a middle shape tau, where
// lambda_tau = (k/n)^{|V(tau)| - (|U|+|V|)/2} * (-sqrt(p/(1-p)))^{|E(tau)|}.
double charging_ratio(const Shape& tau, const PrunedGraph& g,
                      const ChargingParams& params);

double shape_coefficient(const Shape& tau, const PrunedGraph& g, double k);

}  // namespace graphmat
