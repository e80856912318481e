#include "graphqsm/covering_tree.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>

namespace gqsm {

GroupWord reduce_word(std::vector<int> letters) {
    std::vector<int> out;
    for (int l : letters) {
        if (l == 0) throw std::invalid_argument("letter 0 is not a generator");
        if (!out.empty() && out.back() == -l) out.pop_back();
        else out.push_back(l);
    }
    return GroupWord{std::move(out)};
}

GroupWord inverse_word(const GroupWord& w) {
    std::vector<int> out(w.letters.rbegin(), w.letters.rend());
    for (int& l : out) l = -l;
    return GroupWord{std::move(out)};
}

GroupWord concat_words(const GroupWord& a, const GroupWord& b) {
    std::vector<int> all = a.letters;
    all.insert(all.end(), b.letters.begin(), b.letters.end());
    return reduce_word(std::move(all));
}

CoveringTree::CoveringTree(Multigraph g, int base_vertex)
    : graph_(std::move(g)), dir_(graph_), base_(base_vertex) {
    if (!graph_.admissible())
        throw std::invalid_argument("covering tree requires an admissible graph");
    if (base_ < 0 || base_ >= graph_.vertex_count())
        throw std::invalid_argument("base vertex out of range");

    int nv = graph_.vertex_count();
    int ne = graph_.edge_count();
    edges_at_vertex_.assign(nv, {});
    for (int d = 0; d < dir_.count(); ++d) edges_at_vertex_[dir_.origin(d)].push_back(d);

    // BFS spanning tree in file order; loops are never tree edges.
    tree_.is_tree_edge.assign(ne, 0);
    tree_.vertex_path.assign(nv, {});
    std::vector<char> visited(nv, 0);
    visited[base_] = 1;
    std::queue<int> q;
    q.push(base_);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int d : edges_at_vertex_[v]) {
            int other = dir_.terminus(d);
            if (visited[other]) continue;
            visited[other] = 1;
            tree_.is_tree_edge[dir_.edge_of(d)] = 1;
            tree_.vertex_path[other] = tree_.vertex_path[v];
            tree_.vertex_path[other].push_back(d);
            q.push(other);
        }
    }

    tree_.generator_of_edge.assign(ne, 0);
    for (int e = 0; e < ne; ++e) {
        if (tree_.is_tree_edge[e]) continue;
        tree_.nontree_edges.push_back(e);
        tree_.generator_of_edge[e] = static_cast<int>(tree_.nontree_edges.size());
    }

    for (int i = 0; i < generator_count(); ++i) {
        int e = tree_.nontree_edges[i];
        int d = 2 * e; // file orientation
        std::vector<int> loop = tree_.vertex_path[dir_.origin(d)];
        append_reduced(loop, d);
        // tree path from terminus back to base = reversal of vertex_path
        const std::vector<int>& back = tree_.vertex_path[dir_.terminus(d)];
        for (auto it = back.rbegin(); it != back.rend(); ++it) append_reduced(loop, dir_.reversal(*it));
        tree_.generator_real.push_back(std::move(loop));
    }
}

void CoveringTree::append_reduced(std::vector<int>& path, int d) const {
    if (!path.empty() && path.back() == dir_.reversal(d)) path.pop_back();
    else path.push_back(d);
}

int CoveringTree::endpoint(const std::vector<int>& path) const {
    return path.empty() ? base_ : dir_.terminus(path.back());
}

std::vector<int> CoveringTree::realization(const GroupWord& w) const {
    std::vector<int> out;
    for (int l : w.letters) {
        int i = std::abs(l) - 1;
        if (i < 0 || i >= generator_count())
            throw std::invalid_argument("letter outside generator range");
        const std::vector<int>& gen = tree_.generator_real[i];
        if (l > 0)
            for (int d : gen) append_reduced(out, d);
        else
            for (auto it = gen.rbegin(); it != gen.rend(); ++it)
                append_reduced(out, dir_.reversal(*it));
    }
    return out;
}

TreeVertex CoveringTree::translate_base(const GroupWord& w) const {
    return TreeVertex{realization(w)};
}

TreeVertex CoveringTree::deck_apply(const GroupWord& w, const TreeVertex& v) const {
    std::vector<int> out = realization(w);
    for (int d : v.path) append_reduced(out, d);
    return TreeVertex{std::move(out)};
}

namespace {

int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    size_t n = std::min(a.size(), b.size());
    size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return static_cast<int>(i);
}

} // namespace

int CoveringTree::tree_distance(const TreeVertex& a, const TreeVertex& b) const {
    int l = common_prefix(a.path, b.path);
    return static_cast<int>(a.path.size()) + static_cast<int>(b.path.size()) - 2 * l;
}

int CoveringTree::busemann(const TreeVertex& x1, const TreeVertex& x2, const Cylinder& c) const {
    if (c.path.empty()) throw std::invalid_argument("busemann needs a nonempty cylinder");
    auto side = [&](const TreeVertex& x) -> int {
        int l = common_prefix(x.path, c.path);
        if (l == c.depth() && l < x.depth())
            throw InsufficientDepth("busemann: cylinder too shallow; refine and retry");
        return x.depth() - 2 * l;
    };
    return side(x1) - side(x2);
}

TranslationData CoveringTree::translation_length(const GroupWord& w) const {
    std::vector<int> r = realization(w);
    int i = 0, j = static_cast<int>(r.size()) - 1;
    while (i < j && r[i] == dir_.reversal(r[j])) {
        ++i;
        --j;
    }
    TranslationData t;
    if (r.empty()) return t;
    t.axis_offset.assign(r.begin(), r.begin() + i);
    t.axis_cycle.assign(r.begin() + i, r.begin() + j + 1);
    t.amplitude = static_cast<int>(t.axis_cycle.size());
    return t;
}

std::vector<int> CoveringTree::axis_ray_prefix(const TranslationData& t, int depth,
                                               bool forward) const {
    if (t.amplitude == 0) throw std::invalid_argument("identity has no axis");
    std::vector<int> ray = t.axis_offset;
    std::vector<int> cyc = t.axis_cycle;
    if (!forward) {
        std::reverse(cyc.begin(), cyc.end());
        for (int& d : cyc) d = dir_.reversal(d);
    }
    while (static_cast<int>(ray.size()) < depth)
        for (int d : cyc) {
            if (static_cast<int>(ray.size()) >= depth) break;
            assert(ray.empty() || ray.back() != dir_.reversal(d));
            ray.push_back(d);
        }
    ray.resize(depth);
    return ray;
}

std::vector<Cylinder> CoveringTree::image_pieces(const GroupWord& w, const Cylinder& c) const {
    if (c.path.empty()) throw std::invalid_argument("image of an empty prefix");
    std::vector<int> s = realization(w);
    size_t s_base = s.size();
    int pops = 0;
    for (int d : c.path) {
        if (!s.empty() && s.back() == dir_.reversal(d)) {
            s.pop_back();
            ++pops;
        } else {
            s.push_back(d);
        }
    }
    if (pops < c.depth()) return {Cylinder{std::move(s)}};

    // The whole prefix cancelled into the realization. The image is the set
    // of rays escaping the surviving stack, walked down state by state.
    std::vector<int> r = realization(w);
    int forbidden = r[s_base - pops];
    std::vector<int> cur = s;
    std::vector<Cylinder> pieces;
    while (true) {
        for (int e : edges_at_vertex_[endpoint(cur)]) {
            if (e == forbidden) continue;
            if (!cur.empty() && e == dir_.reversal(cur.back())) continue; // pop move
            std::vector<int> piece = cur;
            piece.push_back(e);
            pieces.push_back(Cylinder{std::move(piece)});
        }
        if (cur.empty()) break;
        int popped = cur.back();
        cur.pop_back();
        assert(forbidden != dir_.reversal(popped));
        forbidden = popped;
    }
    return pieces;
}

std::vector<Cylinder> CoveringTree::boundary_image_cylinder(const GroupWord& w, const Cylinder& c,
                                                            int out_depth) const {
    if (out_depth < 1) throw std::invalid_argument("out_depth must be >= 1");
    std::vector<Cylinder> pieces = image_pieces(w, c);
    std::vector<Cylinder> out;
    for (const Cylinder& p : pieces) {
        if (p.depth() > out_depth)
            throw InsufficientDepth("boundary_image_cylinder: increase out_depth");
        // refine to uniform depth
        std::vector<std::vector<int>> frontier{p.path};
        while (static_cast<int>(frontier.front().size()) < out_depth) {
            std::vector<std::vector<int>> next;
            for (const auto& path : frontier)
                for (int e : extensions(path)) {
                    auto ext = path;
                    ext.push_back(e);
                    next.push_back(std::move(ext));
                }
            frontier = std::move(next);
        }
        for (auto& path : frontier) out.push_back(Cylinder{std::move(path)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> CoveringTree::cayley_encode(const Cylinder& c) const {
    std::vector<int> letters;
    for (int d : c.path) {
        int e = dir_.edge_of(d);
        int gen = tree_.generator_of_edge[e];
        if (gen == 0) continue;
        int letter = dir_.is_reversed(d) ? -gen : gen;
        // cut sequences of reduced paths are automatically reduced
        assert(letters.empty() || letters.back() != -letter);
        letters.push_back(letter);
    }
    return letters;
}

std::vector<int> CoveringTree::tree_walk(int from_vertex, int to_vertex) const {
    const std::vector<int>& a = tree_.vertex_path[from_vertex];
    const std::vector<int>& b = tree_.vertex_path[to_vertex];
    int l = common_prefix(a, b);
    std::vector<int> out;
    for (int i = static_cast<int>(a.size()) - 1; i >= l; --i) out.push_back(dir_.reversal(a[i]));
    for (size_t i = l; i < b.size(); ++i) out.push_back(b[i]);
    return out;
}

Cylinder CoveringTree::spine(const std::vector<int>& letters) const {
    GroupWord check = reduce_word(letters);
    if (check.letters != letters)
        throw std::invalid_argument("spine requires a reduced letter sequence");
    std::vector<int> path;
    int cur = base_;
    for (int l : letters) {
        int i = std::abs(l) - 1;
        if (i < 0 || i >= generator_count())
            throw std::invalid_argument("letter outside generator range");
        int d = l > 0 ? 2 * tree_.nontree_edges[i] : 2 * tree_.nontree_edges[i] + 1;
        for (int step : tree_walk(cur, dir_.origin(d))) append_reduced(path, step);
        append_reduced(path, d);
        cur = dir_.terminus(d);
    }
    return Cylinder{std::move(path)};
}

std::vector<int> CoveringTree::extensions(const std::vector<int>& path) const {
    std::vector<int> out;
    int v = endpoint(path);
    for (int e : edges_at_vertex_[v])
        if (path.empty() || e != dir_.reversal(path.back())) out.push_back(e);
    return out;
}

const std::vector<std::vector<int>>& CoveringTree::cylinders_at_depth(int k) const {
    if (k < 1) throw std::invalid_argument("cylinder depth must be >= 1");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cylinder_cache_.find(k);
    if (it != cylinder_cache_.end()) return it->second;

    std::vector<std::vector<int>> level;
    for (int d : edges_at_vertex_[base_]) level.push_back({d});
    for (int depth = 1; depth < k; ++depth) {
        std::vector<std::vector<int>> next;
        for (const auto& path : level)
            for (int e : extensions(path)) {
                auto ext = path;
                ext.push_back(e);
                next.push_back(std::move(ext));
            }
        if (next.size() > 4'000'000)
            throw BoundExceeded("cylinder partition too large at the requested depth");
        level = std::move(next);
    }
    return cylinder_cache_.emplace(k, std::move(level)).first->second;
}

int CoveringTree::cylinder_index(int k, const std::vector<int>& path) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cylinder_index_cache_.find(k);
        if (it != cylinder_index_cache_.end()) {
            auto jt = it->second.find(path);
            if (jt == it->second.end())
                throw std::invalid_argument("path is not a depth-k cylinder");
            return jt->second;
        }
    }
    const auto& cyls = cylinders_at_depth(k);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto& index = cylinder_index_cache_[k];
    if (index.empty())
        for (size_t i = 0; i < cyls.size(); ++i) index[cyls[i]] = static_cast<int>(i);
    auto jt = index.find(path);
    if (jt == index.end()) throw std::invalid_argument("path is not a depth-k cylinder");
    return jt->second;
}

std::vector<GroupWord> CoveringTree::words_up_to(int maxlen) const {
    std::vector<GroupWord> out;
    out.push_back(GroupWord{});
    // letter order +1, -1, +2, -2, ...
    std::vector<int> alphabet;
    for (int i = 1; i <= generator_count(); ++i) {
        alphabet.push_back(i);
        alphabet.push_back(-i);
    }
    std::vector<GroupWord> level = {GroupWord{}};
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<GroupWord> next;
        for (const GroupWord& w : level)
            for (int l : alphabet) {
                if (!w.letters.empty() && w.letters.back() == -l) continue;
                GroupWord ext = w;
                ext.letters.push_back(l);
                next.push_back(std::move(ext));
            }
        for (const GroupWord& w : next) out.push_back(w);
        level = std::move(next);
    }
    return out;
}

FixedPointDensityReport CoveringTree::fixed_point_density_check(int depth, int maxlen) const {
    if (depth < 0 || depth > 8) throw BoundExceeded("fixed_point_density_check: depth <= 8");
    if (maxlen < 1 || maxlen > 6) throw BoundExceeded("fixed_point_density_check: maxlen <= 6");

    FixedPointDensityReport report;
    report.depth = depth;
    report.maxlen = maxlen;

    std::vector<GroupWord> words = words_up_to(maxlen);
    std::vector<TranslationData> translations;
    std::vector<const GroupWord*> nontrivial;
    for (const GroupWord& w : words) {
        if (w.identity()) continue;
        nontrivial.push_back(&w);
        translations.push_back(translation_length(w));
    }

    // depth == 0 means the whole boundary: a single trivial cylinder check.
    std::vector<std::vector<int>> cylinders;
    if (depth == 0) cylinders.push_back({});
    else cylinders = cylinders_at_depth(depth);

    // Bucket forward-axis prefixes (for witnesses) and all fixed-ray
    // prefixes (for avoidance) at the cylinder depth.
    std::map<std::vector<int>, const GroupWord*> forward_at_depth;
    std::map<std::vector<int>, std::vector<std::pair<size_t, bool>>> fixed_through; // -> (word idx, fwd)
    for (size_t i = 0; i < nontrivial.size(); ++i) {
        for (bool fwd : {true, false}) {
            std::vector<int> prefix = axis_ray_prefix(translations[i], depth, fwd);
            if (fwd && !forward_at_depth.count(prefix)) forward_at_depth[prefix] = nontrivial[i];
            fixed_through[prefix].push_back({i, fwd});
        }
    }

    for (const auto& cyl : cylinders) {
        FixedPointWitness w;
        w.cylinder = Cylinder{cyl};

        auto it = forward_at_depth.find(cyl);
        if (it != forward_at_depth.end()) w.fixed_word = *it->second;
        else report.all_fixed_found = false;

        // Extend until some extension is avoided by every fixed ray through
        // this cylinder.
        auto ft = fixed_through.find(cyl);
        std::vector<std::pair<size_t, bool>> passing =
            ft == fixed_through.end() ? std::vector<std::pair<size_t, bool>>{} : ft->second;
        bool found = false;
        for (int extra = 1; extra <= 12 && !found; ++extra) {
            std::set<std::vector<int>> marked;
            for (auto [wi, fwd] : passing)
                marked.insert(axis_ray_prefix(translations[wi], depth + extra, fwd));
            // lexicographically first unmarked extension
            std::vector<std::vector<int>> frontier{cyl};
            for (int step = 0; step < extra; ++step) {
                std::vector<std::vector<int>> next;
                for (const auto& p : frontier)
                    for (int e : extensions(p)) {
                        auto ext = p;
                        ext.push_back(e);
                        next.push_back(std::move(ext));
                    }
                frontier = std::move(next);
            }
            for (const auto& cand : frontier)
                if (!marked.count(cand)) {
                    w.nonfixed = Cylinder{cand};
                    found = true;
                    break;
                }
        }
        if (!found) report.all_nonfixed_found = false;
        report.witnesses.push_back(std::move(w));
    }
    return report;
}

} // namespace gqsm
