#include "graphqsm/multigraph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include <nlohmann/json.hpp>

namespace gqsm {

using ordered_json = nlohmann::ordered_json;

Multigraph::Multigraph(std::vector<std::string> vertex_ids, std::vector<Edge> edges)
    : vertex_ids_(std::move(vertex_ids)), edges_(std::move(edges)) {
    std::set<std::string> seen(vertex_ids_.begin(), vertex_ids_.end());
    if (seen.size() != vertex_ids_.size())
        throw std::invalid_argument("duplicate vertex id");
    std::set<std::string> edge_ids;
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= vertex_count() || e.v < 0 || e.v >= vertex_count())
            throw std::invalid_argument("edge endpoint out of range");
        if (!edge_ids.insert(e.id).second)
            throw std::invalid_argument("duplicate edge id: " + e.id);
    }
}

int Multigraph::vertex_index(const std::string& id) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertex_ids_[i] == id) return i;
    throw std::invalid_argument("unknown vertex id: " + id);
}

int Multigraph::degree(int v) const {
    int d = 0;
    for (const Edge& e : edges_) {
        if (e.u == v && e.v == v) d += 2;
        else if (e.u == v || e.v == v) d += 1;
    }
    return d;
}

int Multigraph::min_degree() const {
    int m = std::numeric_limits<int>::max();
    for (int v = 0; v < vertex_count(); ++v) m = std::min(m, degree(v));
    return vertex_count() == 0 ? 0 : m;
}

std::vector<int> Multigraph::degree_sequence() const {
    std::vector<int> d(vertex_count());
    for (int v = 0; v < vertex_count(); ++v) d[v] = degree(v);
    std::sort(d.begin(), d.end());
    return d;
}

bool Multigraph::connected() const {
    if (vertex_count() == 0) return false;
    std::vector<char> seen(vertex_count(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const Edge& e : edges_) {
            int other = -1;
            if (e.u == v) other = e.v;
            else if (e.v == v) other = e.u;
            if (other >= 0 && !seen[other]) {
                seen[other] = 1;
                ++reached;
                q.push(other);
            }
        }
    }
    return reached == vertex_count();
}

int Multigraph::multiplicity(int a, int b) const {
    int n = 0;
    for (const Edge& e : edges_)
        if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) ++n;
    return n;
}

std::string Multigraph::to_json() const {
    ordered_json j;
    j["vertices"] = vertex_ids_;
    j["edges"] = ordered_json::array();
    for (const Edge& e : edges_) {
        ordered_json je;
        je["id"] = e.id;
        je["ends"] = {vertex_ids_[e.u], vertex_ids_[e.v]};
        j["edges"].push_back(je);
    }
    return j.dump(2) + "\n";
}

Multigraph parse_multigraph(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed graph file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph file must contain \"vertices\" and \"edges\"");

    std::vector<std::string> vertices;
    std::map<std::string, int> index;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw std::invalid_argument("vertex id must be a string");
        std::string id = v.get<std::string>();
        if (index.count(id)) throw std::invalid_argument("duplicate vertex id: " + id);
        index[id] = static_cast<int>(vertices.size());
        vertices.push_back(id);
    }
    std::vector<Edge> edges;
    for (const auto& je : j["edges"]) {
        if (!je.is_object() || !je.contains("id") || !je.contains("ends") ||
            !je["ends"].is_array() || je["ends"].size() != 2)
            throw std::invalid_argument("edge must be {\"id\":..., \"ends\":[a,b]}");
        Edge e;
        e.id = je["id"].get<std::string>();
        for (int k = 0; k < 2; ++k) {
            std::string end = je["ends"][k].get<std::string>();
            auto it = index.find(end);
            if (it == index.end())
                throw std::invalid_argument("edge " + e.id + " references unknown vertex " + end);
            (k == 0 ? e.u : e.v) = it->second;
        }
        edges.push_back(std::move(e));
    }
    return Multigraph(std::move(vertices), std::move(edges));
}

BettiNumber betti(const Multigraph& g) {
    if (!g.connected()) throw std::invalid_argument("betti requires a connected graph");
    return BettiNumber{g.edge_count() - g.vertex_count() + 1};
}

namespace {

// Pairs matched on multiplicity between every assigned vertex pair; the
// edge bijection then matches parallel groups in file order.
bool extend_map(const Multigraph& g, const Multigraph& h, std::vector<int>& vmap,
                std::vector<char>& used, int next) {
    int n = g.vertex_count();
    if (next == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (used[cand]) continue;
        if (g.degree(next) != h.degree(cand)) continue;
        bool ok = g.multiplicity(next, next) == h.multiplicity(cand, cand);
        for (int prev = 0; ok && prev < next; ++prev)
            ok = g.multiplicity(next, prev) == h.multiplicity(cand, vmap[prev]);
        if (!ok) continue;
        vmap[next] = cand;
        used[cand] = 1;
        if (extend_map(g, h, vmap, used, next + 1)) return true;
        used[cand] = 0;
    }
    return false;
}

} // namespace

std::optional<GraphIsomorphism> isomorphic(const Multigraph& g, const Multigraph& h,
                                           int size_guard) {
    if (g.vertex_count() > size_guard || h.vertex_count() > size_guard)
        throw BoundExceeded("isomorphism size guard exceeded");
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
        return std::nullopt;
    if (g.degree_sequence() != h.degree_sequence()) return std::nullopt;

    int n = g.vertex_count();
    std::vector<int> vmap(n, -1);
    std::vector<char> used(n, 0);
    if (!extend_map(g, h, vmap, used, 0)) return std::nullopt;

    GraphIsomorphism iso;
    iso.vertex_map = vmap;
    iso.edge_map.assign(g.edge_count(), -1);
    // Match parallel edges between corresponding endpoint pairs in file order.
    std::vector<char> taken(h.edge_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        int a = vmap[g.edge(e).u], b = vmap[g.edge(e).v];
        for (int f = 0; f < h.edge_count(); ++f) {
            if (taken[f]) continue;
            if ((h.edge(f).u == a && h.edge(f).v == b) ||
                (h.edge(f).u == b && h.edge(f).v == a)) {
                iso.edge_map[e] = f;
                taken[f] = 1;
                break;
            }
        }
    }
    return iso;
}

namespace {

Multigraph graph_from_multiset(int n, const std::vector<std::pair<int, int>>& pair_types,
                               const std::vector<int>& mult) {
    std::vector<std::string> vertices;
    for (int v = 0; v < n; ++v) vertices.push_back("v" + std::to_string(v));
    std::vector<Edge> edges;
    int eid = 0;
    for (size_t t = 0; t < pair_types.size(); ++t)
        for (int k = 0; k < mult[t]; ++k)
            edges.push_back(Edge{"e" + std::to_string(eid++), pair_types[t].first,
                                 pair_types[t].second});
    return Multigraph(std::move(vertices), std::move(edges));
}

void gen_multisets(int slots, int remaining_min, int remaining_max, std::vector<int>& mult,
                   int at, const std::function<void(const std::vector<int>&)>& sink) {
    if (at == slots) {
        if (remaining_min <= 0) sink(mult);
        return;
    }
    for (int m = 0; m <= remaining_max; ++m) {
        mult[at] = m;
        gen_multisets(slots, remaining_min - m, remaining_max - m, mult, at + 1, sink);
    }
    mult[at] = 0;
}

} // namespace

std::vector<Multigraph> enumerate_multigraphs(int max_vertices, int max_edges) {
    if (max_vertices < 1 || max_vertices > 5 || max_edges < 1 || max_edges > 10)
        throw BoundExceeded("enumerate_multigraphs bounds: 1 <= maxV <= 5, 1 <= maxE <= 10");

    std::vector<Multigraph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<std::pair<int, int>> pair_types;
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) pair_types.emplace_back(a, b);

        // min edge count for min degree 3: sum of degrees = 2|E| >= 3n
        int min_e = (3 * n + 1) / 2;
        std::map<std::vector<int>, std::vector<Multigraph>> classes;

        std::vector<int> mult(pair_types.size(), 0);
        gen_multisets(static_cast<int>(pair_types.size()), min_e, max_edges, mult, 0,
                      [&](const std::vector<int>& m) {
                          int edge_total = std::accumulate(m.begin(), m.end(), 0);
                          if (edge_total < min_e) return;
                          // degree check straight from the multiset
                          std::vector<int> deg(n, 0);
                          for (size_t t = 0; t < pair_types.size(); ++t) {
                              auto [a, b] = pair_types[t];
                              if (a == b) deg[a] += 2 * m[t];
                              else {
                                  deg[a] += m[t];
                                  deg[b] += m[t];
                              }
                          }
                          for (int v = 0; v < n; ++v)
                              if (deg[v] < 3) return;
                          Multigraph g = graph_from_multiset(n, pair_types, m);
                          if (!g.connected()) return;
                          std::vector<int> key = g.degree_sequence();
                          auto& bucket = classes[key];
                          for (const Multigraph& rep : bucket)
                              if (isomorphic(rep, g)) return;
                          bucket.push_back(std::move(g));
                      });
        for (auto& [key, bucket] : classes)
            for (Multigraph& g : bucket) out.push_back(std::move(g));
    }
    // Deterministic global order: |V|, then |E|, then degree sequence,
    // already grouped by construction; stable sort keeps generation order.
    std::stable_sort(out.begin(), out.end(), [](const Multigraph& a, const Multigraph& b) {
        if (a.vertex_count() != b.vertex_count()) return a.vertex_count() < b.vertex_count();
        if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
        return a.degree_sequence() < b.degree_sequence();
    });
    return out;
}

} // namespace gqsm
