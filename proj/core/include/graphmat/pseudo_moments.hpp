#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphmat/random_graph.hpp"

namespace graphmat {

struct MomentParams {
    int d_sos = 2;             // even, small
    double c_eta = 2.0;
    int extra_vertices = 2;    // truncation vertex budget beyond S, <= 3
    double k = -1.0;           // < 0: n / (c_eta * sqrt(d) * d_sos^4)
    double ribbon_cap = 2e7;   // enumeration count cap
    int index_cap = 50000;     // moment matrix dimension cap

    double resolved_k(const PrunedGraph& g) const;
};

// A concrete truncation-set instance: support W ⊇ S with every vertex of
// W\S reachable from S and of degree >= 2 within edge_set.
struct Ribbon {
    std::vector<int> support;         // sorted, W ⊇ S
    std::vector<VertexPair> edge_set; // i < j, sorted
    std::vector<int> boundary_s;      // the S it was enumerated for
};

std::vector<Ribbon> enumerate_ribbons(const std::vector<int>& S,
                                      const PrunedGraph& g,
                                      const MomentParams& params);

// (k/n)^{|W|} * (-sqrt(p/(1-p)))^{|edge_set|}
double ribbon_coefficient(const Ribbon& r, const PrunedGraph& g,
                          const MomentParams& params);

// pE[x_S] = sum over ribbons of coefficient * chi_product(edge_set).
// Closed form for extra_vertices <= 2, explicit enumeration otherwise.
double pe_value(const std::vector<int>& S, const PrunedGraph& g,
                const MomentParams& params);

// Always by explicit ribbon enumeration; the oracle for the closed form.
double pe_value_enumerated(const std::vector<int>& S, const PrunedGraph& g,
                           const MomentParams& params);

struct MomentMatrix {
    std::vector<std::vector<int>> index;  // subsets of survivors, size <= d_sos/2
    Eigen::MatrixXd unscaled;             // Λ̃
    Eigen::MatrixXd rescaled;             // D Λ̃ D, D[A,A] = (n/k)^{|A|/2}
    MomentParams params;
    double k = 0.0;
    bool k_warning = false;               // set when k < 1
    int n = 0;
    std::vector<int> survivors;
};

MomentMatrix assemble_moment_matrix(const PrunedGraph& g,
                                    const MomentParams& params);

struct ConstraintReport {
    double normalization_residual = 0.0;  // |Λ̃[∅,∅] - 1|
    double is_constraint_residual = 0.0;  // max |Λ̃[A,B]|, A∪B edge-containing
    double sos_symmetry_residual = 0.0;   // max spread over equal-support pairs
};

ConstraintReport check_constraints(const MomentMatrix& m, const PrunedGraph& g);

// Σ over surviving i of Λ̃[{i}, ∅]
double objective_value(const MomentMatrix& m);

enum class MomentScale { Unscaled, Rescaled };

double min_eigenvalue(const MomentMatrix& m, MomentScale which);

// ‖rescaled Λ − I‖ restricted to indices whose sets are independent in the
// surviving graph (there Π, the 0/1 independent-set indicator diagonal, is
// the identity).
double identity_dominance_norm(const MomentMatrix& m, const PrunedGraph& g);

using PseudoExpectation = std::function<double(const std::vector<int>&)>;

// Full-graph evaluator: pe_trimmed(S) when S avoids removed vertices, 0
// otherwise.
PseudoExpectation glue(PseudoExpectation pe_trimmed, std::vector<int> removed);

std::string moment_to_json(const MomentMatrix& m, const PrunedGraph& g);

}  // namespace graphmat
