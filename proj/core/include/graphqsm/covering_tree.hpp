#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphqsm/multigraph.hpp"
#include "graphqsm/nonbacktracking.hpp"

namespace gqsm {

/// Vertex of the universal covering tree, canonically represented as the
/// reduced non-backtracking path of directed edge ids from the lifted base
/// point x0 (empty path = x0 itself).
struct TreeVertex {
    std::vector<int> path;
    bool operator==(const TreeVertex&) const = default;
    bool operator<(const TreeVertex& o) const { return path < o.path; }
    int depth() const { return static_cast<int>(path.size()); }
};

/// Boundary cylinder: all rays from x0 extending a nonempty reduced prefix.
struct Cylinder {
    std::vector<int> path;
    bool operator==(const Cylinder&) const = default;
    bool operator<(const Cylinder& o) const { return path < o.path; }
    int depth() const { return static_cast<int>(path.size()); }
};

/// Freely reduced word in the spanning-tree generators, letters in
/// {+-1, ..., +-g}.
struct GroupWord {
    std::vector<int> letters;
    bool operator==(const GroupWord&) const = default;
    bool operator<(const GroupWord& o) const { return letters < o.letters; }
    bool identity() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }
};

GroupWord reduce_word(std::vector<int> letters);
GroupWord inverse_word(const GroupWord& w);
GroupWord concat_words(const GroupWord& a, const GroupWord& b);

struct SpanningTreeData {
    std::vector<char> is_tree_edge;               // by edge index
    std::vector<int> nontree_edges;               // generator i <-> nontree_edges[i]
    std::vector<int> generator_of_edge;           // 1-based generator index, 0 if tree edge
    std::vector<std::vector<int>> vertex_path;    // reduced tree path base -> v
    std::vector<std::vector<int>> generator_real; // realization of generator i (closed loop)
};

struct TranslationData {
    int amplitude = 0;
    std::vector<int> axis_cycle;  // cyclically reduced loop; empty iff identity
    std::vector<int> axis_offset; // path from x0 to the axis (stripped prefix)
};

struct FixedPointWitness {
    Cylinder cylinder;
    std::optional<GroupWord> fixed_word; // axis endpoint lies in the cylinder
    std::optional<Cylinder> nonfixed;    // subcylinder avoiding every short-word axis
};

struct FixedPointDensityReport {
    int depth = 0;
    int maxlen = 0;
    bool all_fixed_found = true;
    bool all_nonfixed_found = true;
    std::vector<FixedPointWitness> witnesses;
};

/**
 * Finite-depth model of the universal covering tree of an admissible graph
 * with its deck-group action. Generators come from a BFS spanning tree in
 * file order: one generator per non-tree edge (file orientation), realized
 * as tree-path + edge + tree-path back. All path computations are exact.
 */
class CoveringTree {
public:
    explicit CoveringTree(Multigraph g, int base_vertex = 0);

    const Multigraph& graph() const { return graph_; }
    const DirectedEdges& directed() const { return dir_; }
    int base_vertex() const { return base_; }
    const SpanningTreeData& spanning_tree() const { return tree_; }
    int generator_count() const { return static_cast<int>(tree_.nontree_edges.size()); }

    /// Endpoint vertex (in the quotient graph) of a tree vertex / prefix.
    int endpoint(const std::vector<int>& path) const;

    std::vector<int> realization(const GroupWord& w) const;
    TreeVertex translate_base(const GroupWord& w) const; // w applied to x0

    TreeVertex deck_apply(const GroupWord& w, const TreeVertex& v) const;
    int tree_distance(const TreeVertex& a, const TreeVertex& b) const;

    /// Exact Busemann value B(x1, x2, xi) for every xi in c; throws
    /// InsufficientDepth when the value is not yet constant on c.
    int busemann(const TreeVertex& x1, const TreeVertex& x2, const Cylinder& c) const;

    TranslationData translation_length(const GroupWord& w) const;
    /// Depth-d prefix of the forward (or backward) axis endpoint ray.
    std::vector<int> axis_ray_prefix(const TranslationData& t, int depth, bool forward) const;

    /// Exact image w . c as a minimal list of disjoint cylinders of varying
    /// depths.
    std::vector<Cylinder> image_pieces(const GroupWord& w, const Cylinder& c) const;
    /// Image as a disjoint union of depth-out_depth cylinders; throws
    /// InsufficientDepth when out_depth cannot express it.
    std::vector<Cylinder> boundary_image_cylinder(const GroupWord& w, const Cylinder& c,
                                                  int out_depth) const;

    /// Cut sequence of non-tree edges crossed by the prefix, as a reduced
    /// word (the Cayley-boundary coding).
    std::vector<int> cayley_encode(const Cylinder& c) const;
    /// Shortest prefix whose rays are exactly those with coding extending
    /// the given reduced letter sequence.
    Cylinder spine(const std::vector<int>& letters) const;

    /// Directed edges that extend a prefix without backtracking.
    std::vector<int> extensions(const std::vector<int>& path) const;
    /// All depth-k cylinders in lexicographic (directed-edge id) order.
    const std::vector<std::vector<int>>& cylinders_at_depth(int k) const;
    int cylinder_index(int k, const std::vector<int>& path) const;

    /// All reduced words of length <= maxlen (identity first, then by
    /// length, then lexicographic by signed letter order +1,-1,+2,-2,...).
    std::vector<GroupWord> words_up_to(int maxlen) const;

    FixedPointDensityReport fixed_point_density_check(int depth, int maxlen) const;

private:
    Multigraph graph_;
    DirectedEdges dir_;
    int base_ = 0;
    SpanningTreeData tree_;
    std::vector<std::vector<int>> edges_at_vertex_; // directed edge ids by origin

    struct PathHash {
        size_t operator()(const std::vector<int>& p) const {
            size_t h = 1469598103934665603ull;
            for (int x : p) {
                h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };

    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::vector<std::vector<int>>> cylinder_cache_;
    mutable std::map<int, std::unordered_map<std::vector<int>, int, PathHash>> cylinder_index_cache_;

    void append_reduced(std::vector<int>& path, int d) const;
    std::vector<int> tree_walk(int from_vertex, int to_vertex) const;
};

} // namespace gqsm
