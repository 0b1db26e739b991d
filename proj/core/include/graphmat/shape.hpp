#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "graphmat/errors.hpp"

namespace graphmat {

using VertexPair = std::pair<int, int>;

// A shape: a small pattern graph with two ordered boundary tuples U and V
// that index the rows and columns of its graph matrix.
struct Shape {
    int n_vertices = 0;
    std::vector<VertexPair> edges;  // i < j, sorted, ids in 1..n_vertices
    std::vector<int> u;             // ordered row boundary
    std::vector<int> v;             // ordered column boundary

    bool operator==(const Shape&) const = default;
};

// Raw description before validation; vertex ids are arbitrary and get
// canonicalized to 1..|V| by position in `vertices`.
struct ShapeInput {
    std::vector<int> vertices;
    std::vector<VertexPair> edges;
    std::vector<int> u;
    std::vector<int> v;
};

Shape validate_shape(const ShapeInput& raw);

Shape transpose(const Shape& s);

enum class BoundaryMode { Setwise, Pointwise };

// Number of vertex bijections preserving the edge set and fixing the
// boundaries (setwise by default). Brute force, |V| <= 12.
long automorphism_count(const Shape& s,
                        BoundaryMode mode = BoundaryMode::Setwise);

// True iff deleting S blocks every U -> V path (a boundary vertex inside S
// counts as blocked). Any valid separator necessarily contains U ∩ V.
bool is_separator(const Shape& s, const std::vector<int>& sep);

// Exhaustive minimum over all subsets, lexicographically smallest witness.
// |V| <= 20.
std::pair<int, std::vector<int>> min_vertex_separator(const Shape& s);

struct SeparatorReport {
    std::vector<int> separator;
    bool is_valid = false;
    double smvs_weight = 0.0;      // sqrt(n)^{|V\S|} * (n/d)^{|E(S)|/2}
    double log_smvs_weight = 0.0;
    int mvs_size = 0;
};

// Separator maximizing the sparse weight, exhaustive over all subsets,
// lex-min tie-break. E(S) counts edges with both endpoints in S.
SeparatorReport sparse_mvs(const Shape& s, double n, double d);

struct DanglingBranch {
    int attachment = 0;            // non-dangling vertex the branch hangs off
    std::vector<int> branch;       // dangling vertices, sorted
};

struct StructureReport {
    // Connected components disjoint from U ∪ V (singletons included).
    std::vector<std::vector<int>> floating_components;
    std::vector<DanglingBranch> dangling_branches;
    std::vector<int> isolated;     // degree-0 vertices outside U ∪ V
    bool is_middle = false;        // U and V both minimum vertex separators
};

StructureReport structure(const Shape& s);

// Deterministic enumeration of non-isomorphic connected shapes with
// |U|,|V| <= 2 and |V(shape)| <= max_vertices (max_vertices <= 7).
std::vector<Shape> shape_corpus(int max_vertices);

// Streaming variant; the callback borrows the shape for the duration of
// the call. Avoids holding the full corpus in memory at max_vertices = 7.
void for_each_corpus_shape(int max_vertices,
                           const std::function<void(const Shape&)>& fn);

// Named shapes used throughout the experiments.
Shape line_shape();
Shape z_shape();
Shape floating_triangle_shape();
Shape dangling_line_shape();

// JSON {"vertices": k, "edges": [[i,j],...], "u": [...], "v": [...]};
// canonical printing sorts edges lexicographically.
std::string shape_to_json(const Shape& s);
Shape shape_from_json(const std::string& text);

}  // namespace graphmat
