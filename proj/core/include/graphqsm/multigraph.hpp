#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gqsm {

/// Thrown when an exact computation needs a deeper cylinder / finer
/// resolution than the caller supplied. Callers refine and retry.
struct InsufficientDepth : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a desk-scale bound (enumeration size, word length,
/// resolution depth) is exceeded.
struct BoundExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Edge {
    std::string id;
    int u = -1; // endpoint vertex indices; u == v denotes a loop
    int v = -1;
};

/**
 * Finite unoriented multigraph with loops and parallel edges.
 * Vertex and edge order follow construction (file) order and are
 * significant for reproducibility. Immutable after construction.
 */
class Multigraph {
public:
    Multigraph() = default;
    Multigraph(std::vector<std::string> vertex_ids, std::vector<Edge> edges);

    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    int vertex_index(const std::string& id) const;

    /// Degree = twice the loop count plus the non-loop incidence count.
    /// The one degree function used everywhere.
    int degree(int v) const;
    int min_degree() const;
    std::vector<int> degree_sequence() const; // sorted ascending

    bool is_loop(int e) const { return edges_[e].u == edges_[e].v; }
    bool connected() const;
    /// Admissible = connected with every vertex of degree >= 3.
    bool admissible() const { return connected() && min_degree() >= 3; }

    /// Number of edges between an unordered vertex pair (loops when a == b).
    int multiplicity(int a, int b) const;

    std::string to_json() const;

private:
    std::vector<std::string> vertex_ids_;
    std::vector<Edge> edges_;
};

struct BettiNumber {
    int g = 0;
    bool operator==(const BettiNumber&) const = default;
};

/// Parses the JSON graph format:
///   {"vertices": ["u", ...], "edges": [{"id": "e", "ends": ["u","v"]}, ...]}
/// Throws std::invalid_argument on malformed text, dangling endpoint
/// references or duplicate ids. Admissibility is reported by the graph,
/// not enforced here.
Multigraph parse_multigraph(const std::string& text);

/// g = |E| - |V| + 1. Throws if the graph is disconnected.
BettiNumber betti(const Multigraph& g);

struct GraphIsomorphism {
    std::vector<int> vertex_map; // vertex i of G -> vertex_map[i] of H
    std::vector<int> edge_map;   // edge i of G -> edge_map[i] of H
};

/// Exhaustive search for a multiplicity-preserving vertex bijection with
/// degree-partition pruning; the induced edge matching pairs parallel
/// edges in file order. Throws BoundExceeded when |V| > size_guard.
std::optional<GraphIsomorphism> isomorphic(const Multigraph& g, const Multigraph& h,
                                           int size_guard = 10);

/// All connected multigraphs with min degree >= 3, |V| <= max_vertices and
/// |E| <= max_edges, one representative per isomorphism class, in a
/// deterministic order. Bounds: max_vertices <= 5, max_edges <= 10.
std::vector<Multigraph> enumerate_multigraphs(int max_vertices, int max_edges);

} // namespace gqsm
