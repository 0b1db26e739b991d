#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graphmat/random_graph.hpp"
#include "graphmat/shape.hpp"

namespace graphmat {

enum class IndexMode { OrderedTuple, SetIndexed };

// Dense realization of M_shape on a concrete pruned graph. Rows are
// indexed by injective |U|-tuples (ordered mode) or |U|-subsets (set
// mode) of surviving vertices, columns analogously with |V|.
struct DenseGraphMatrix {
    Eigen::MatrixXd m;
    std::vector<std::vector<int>> row_tuples;
    std::vector<std::vector<int>> col_tuples;
    IndexMode mode = IndexMode::OrderedTuple;
};

// Sum over ALL injective embeddings of the shape pinning the boundaries
// to (row, col) of the character product. Exhaustive, no optimization;
// this is the oracle the fast paths are tested against.
double entry_bruteforce(const Shape& s, const PrunedGraph& g,
                        std::span<const int> row, std::span<const int> col);

// One enumeration over embeddings accumulating into entries.
DenseGraphMatrix materialize(const Shape& s, const PrunedGraph& g,
                             IndexMode mode = IndexMode::OrderedTuple,
                             double work_budget = 1e8,
                             double entry_budget = 4e7);

class GraphMatrixOperator {
public:
    virtual ~GraphMatrixOperator() = default;
    virtual Eigen::Index rows() const = 0;
    virtual Eigen::Index cols() const = 0;
    virtual Eigen::VectorXd apply(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const = 0;
};

class DenseOperator final : public GraphMatrixOperator {
public:
    explicit DenseOperator(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::Index rows() const override { return m_.rows(); }
    Eigen::Index cols() const override { return m_.cols(); }
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const override {
        return m_ * x;
    }
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const override {
        return m_.transpose() * x;
    }
    const Eigen::MatrixXd& matrix() const { return m_; }

private:
    Eigen::MatrixXd m_;
};

// Implicit M_line = a*A + b*(J - I - A) on survivors, applied as one
// sparse multiply plus a rank-one correction; O(|E| + n) per apply.
// Coordinates live on 1..n (vertex v at coordinate v-1); removed
// coordinates are ignored on input and zero on output.
class LineOperator final : public GraphMatrixOperator {
public:
    explicit LineOperator(const PrunedGraph& g);
    Eigen::Index rows() const override { return n_; }
    Eigen::Index cols() const override { return n_; }
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const override {
        return apply(x);  // symmetric
    }

private:
    int n_;
    double a_, b_;
    std::vector<int> survivors_;
    std::vector<std::vector<int>> adj_;
};

LineOperator line_operator(const PrunedGraph& g);
DenseOperator dense_operator(Eigen::MatrixXd m);

// True when the shape is the two-vertex single-edge shape with singleton
// boundaries on opposite endpoints (the implicit fast path applies).
bool is_line_shape(const Shape& s);

// (row_index, col_index, value) triples, tuple indices dash-joined.
void dump_matrix_csv(const DenseGraphMatrix& m, std::ostream& out);

}  // namespace graphmat
