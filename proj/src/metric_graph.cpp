#include "conetree/metric_graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>

namespace conetree {

namespace {

std::mutex g_table_mutex;

constexpr Dist kUnreachable = std::numeric_limits<Dist>::max() / 4;

} // namespace

MetricGraph MetricGraph::from_edge_list(const std::vector<EdgeSpec>& edges) {
    if (edges.empty()) fail("InvalidWeight", "empty edge list");
    GraphBuilder b;
    for (const auto& e : edges) b.add_edge(e.u, e.v, e.w);
    return b.build();
}

void GraphBuilder::add_edge(std::string u, std::string v, Weight w) {
    edges_.push_back(EdgeSpec{std::move(u), std::move(v), w});
}

void GraphBuilder::add_vertex(std::string v) { extra_vertices_.push_back(std::move(v)); }

MetricGraph GraphBuilder::build(bool require_connected) const {
    MetricGraph g;
    std::set<std::string> name_set(extra_vertices_.begin(), extra_vertices_.end());
    for (const auto& e : edges_) {
        if (e.w < 1)
            fail("InvalidWeight", "edge (" + e.u + ", " + e.v + ") has weight " +
                                      std::to_string(e.w) + "; weights must be >= 1 half-unit");
        if (e.u == e.v) fail("InvalidWeight", "self-loop at vertex " + e.u);
        name_set.insert(e.u);
        name_set.insert(e.v);
    }
    g.names_.assign(name_set.begin(), name_set.end());

    std::map<std::string_view, VertexId> idx;
    for (VertexId i = 0; i < static_cast<VertexId>(g.names_.size()); ++i)
        idx.emplace(g.names_[static_cast<size_t>(i)], i);

    // collapse parallel edges to the lightest
    std::map<std::pair<VertexId, VertexId>, Weight> best;
    for (const auto& e : edges_) {
        VertexId a = idx[e.u], b = idx[e.v];
        if (a > b) std::swap(a, b);
        auto [it, fresh] = best.emplace(std::make_pair(a, b), e.w);
        if (!fresh && e.w < it->second) it->second = e.w;
    }

    g.adjacency_.assign(g.names_.size(), {});
    for (const auto& [key, w] : best) {
        g.adjacency_[static_cast<size_t>(key.first)].push_back(Neighbor{key.second, w});
        g.adjacency_[static_cast<size_t>(key.second)].push_back(Neighbor{key.first, w});
    }
    for (auto& adj : g.adjacency_)
        std::sort(adj.begin(), adj.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });

    if (require_connected && !g.connected()) {
        // name one vertex from each of two components
        std::vector<char> seen(g.names_.size(), 0);
        std::vector<VertexId> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (const auto& n : g.neighbors(v))
                if (!seen[static_cast<size_t>(n.to)]) {
                    seen[static_cast<size_t>(n.to)] = 1;
                    stack.push_back(n.to);
                }
        }
        std::string other;
        for (size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) {
                other = g.names_[i];
                break;
            }
        fail("DisconnectedGraph",
             "components containing '" + g.names_[0] + "' and '" + other + "' are not joined");
    }
    return g;
}

bool MetricGraph::connected() const {
    if (names_.empty()) return false;
    std::vector<char> seen(names_.size(), 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (const auto& n : neighbors(v))
            if (!seen[static_cast<size_t>(n.to)]) {
                seen[static_cast<size_t>(n.to)] = 1;
                ++count;
                stack.push_back(n.to);
            }
    }
    return count == names_.size();
}

int MetricGraph::edge_count() const {
    size_t total = 0;
    for (const auto& adj : adjacency_) total += adj.size();
    return static_cast<int>(total / 2);
}

std::optional<VertexId> MetricGraph::find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<VertexId>(it - names_.begin());
}

VertexId MetricGraph::index(std::string_view name) const {
    auto v = find(name);
    if (!v) fail("UnknownVertex", "no vertex named '" + std::string(name) + "'");
    return *v;
}

std::optional<Weight> MetricGraph::edge_weight(VertexId u, VertexId v) const {
    for (const auto& n : neighbors(u))
        if (n.to == v) return n.w;
    return std::nullopt;
}

std::vector<EdgeSpec> MetricGraph::edge_list() const {
    std::vector<EdgeSpec> out;
    for (VertexId u = 0; u < vertex_count(); ++u)
        for (const auto& n : neighbors(u))
            if (u < n.to) out.push_back(EdgeSpec{name(u), name(n.to), n.w});
    std::sort(out.begin(), out.end(), [](const EdgeSpec& a, const EdgeSpec& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    return out;
}

void MetricGraph::dijkstra_row(VertexId source, Dist* out) const {
    const int n = vertex_count();
    std::fill(out, out + n, kUnreachable);
    using Item = std::pair<Dist, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    out[source] = 0;
    queue.emplace(0, source);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d != out[v]) continue;
        for (const auto& nb : neighbors(v)) {
            const Dist nd = d + nb.w;
            if (nd < out[nb.to]) {
                out[nb.to] = nd;
                queue.emplace(nd, nb.to);
            }
        }
    }
}

const std::vector<Dist>& MetricGraph::table() const {
    // fast path: once built the table is immutable and shared
    if (table_) return *table_;
    const size_t n = names_.size();
    auto fresh = std::make_shared<std::vector<Dist>>(n * n, 0);
    for (VertexId s = 0; s < static_cast<VertexId>(n); ++s)
        dijkstra_row(s, fresh->data() + static_cast<size_t>(s) * n);
    std::lock_guard<std::mutex> lock(g_table_mutex);
    if (!table_) table_ = std::move(fresh);
    return *table_;
}

Dist MetricGraph::distance(VertexId u, VertexId v) const {
    if (!has_vertex(u) || !has_vertex(v)) fail("UnknownVertex", "vertex id out of range");
    return table()[static_cast<size_t>(u) * names_.size() + static_cast<size_t>(v)];
}

std::span<const Dist> MetricGraph::distance_row(VertexId u) const {
    if (!has_vertex(u)) fail("UnknownVertex", "vertex id out of range");
    const auto& t = table();
    return std::span<const Dist>(t.data() + static_cast<size_t>(u) * names_.size(), names_.size());
}

Dist MetricGraph::distance_to_set(VertexId u, std::span<const VertexId> set) const {
    if (set.empty()) fail("EmptySubset", "distance to empty set");
    auto row = distance_row(u);
    Dist best = kUnreachable;
    for (VertexId v : set) best = std::min(best, row[static_cast<size_t>(v)]);
    return best;
}

Dist MetricGraph::diameter() const {
    const auto& t = table();
    Dist best = 0;
    for (Dist d : t)
        if (d != kUnreachable) best = std::max(best, d);
    return best;
}

std::vector<VertexId> MetricGraph::geodesic(VertexId u, VertexId v) const {
    if (!has_vertex(u) || !has_vertex(v)) fail("UnknownVertex", "vertex id out of range");
    auto from_u = distance_row(u);
    auto from_v = distance_row(v);
    const Dist total = from_u[static_cast<size_t>(v)];
    if (total >= kUnreachable)
        fail("Unreachable", "no path from '" + name(u) + "' to '" + name(v) + "'");

    // Greedy walk: at each vertex pick the least neighbor that still lies
    // on a shortest path; suffix-independence makes this the lex minimum.
    std::vector<VertexId> path{u};
    VertexId cur = u;
    while (cur != v) {
        VertexId next = -1;
        for (const auto& nb : neighbors(cur)) {
            if (from_u[static_cast<size_t>(cur)] + nb.w == from_u[static_cast<size_t>(nb.to)] &&
                from_u[static_cast<size_t>(nb.to)] + from_v[static_cast<size_t>(nb.to)] == total) {
                next = nb.to;
                break; // neighbors sorted by id
            }
        }
        path.push_back(next);
        cur = next;
    }
    return path;
}

std::vector<std::vector<VertexId>> MetricGraph::all_geodesics(VertexId u, VertexId v,
                                                              size_t cap) const {
    auto from_u = distance_row(u);
    auto from_v = distance_row(v);
    const Dist total = from_u[static_cast<size_t>(v)];
    std::vector<std::vector<VertexId>> out;
    std::vector<VertexId> cur{u};
    // DFS over the shortest-path DAG
    struct Frame {
        VertexId vertex;
        size_t next_neighbor;
    };
    std::vector<Frame> stack{{u, 0}};
    while (!stack.empty()) {
        auto& frame = stack.back();
        if (frame.vertex == v) {
            out.push_back(cur);
            if (out.size() >= cap) fail("CapExceeded", "too many geodesics");
            stack.pop_back();
            cur.pop_back();
            continue;
        }
        const auto& adj = neighbors(frame.vertex);
        bool advanced = false;
        while (frame.next_neighbor < adj.size()) {
            const auto& nb = adj[frame.next_neighbor++];
            if (from_u[static_cast<size_t>(frame.vertex)] + nb.w ==
                    from_u[static_cast<size_t>(nb.to)] &&
                from_u[static_cast<size_t>(nb.to)] + from_v[static_cast<size_t>(nb.to)] == total) {
                stack.push_back({nb.to, 0});
                cur.push_back(nb.to);
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            stack.pop_back();
            cur.pop_back();
        }
    }
    return out;
}

std::vector<VertexId> MetricGraph::neighborhood(std::span<const VertexId> seeds, Dist radius) const {
    if (seeds.empty()) fail("EmptySubset", "neighborhood of empty set");
    std::vector<VertexId> out;
    for (VertexId x = 0; x < vertex_count(); ++x)
        if (distance_to_set(x, seeds) <= radius) out.push_back(x);
    return out;
}

bool MetricGraph::is_edge_path(std::span<const VertexId> path) const {
    if (path.empty()) return false;
    for (VertexId v : path)
        if (!has_vertex(v)) return false;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        if (!edge_weight(path[i], path[i + 1])) return false;
    return true;
}

Dist MetricGraph::path_length(std::span<const VertexId> path) const {
    if (!is_edge_path(path)) fail("NotAPath", "sequence is not a connected edge path");
    Dist len = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i) len += *edge_weight(path[i], path[i + 1]);
    return len;
}

MetricGraph MetricGraph::induced_subgraph(std::span<const VertexId> keep,
                                          bool allow_disconnected) const {
    std::vector<char> in(names_.size(), 0);
    for (VertexId v : keep) {
        if (!has_vertex(v)) fail("UnknownVertex", "vertex id out of range");
        in[static_cast<size_t>(v)] = 1;
    }
    GraphBuilder b;
    for (VertexId v : keep) b.add_vertex(name(v));
    for (VertexId u = 0; u < vertex_count(); ++u) {
        if (!in[static_cast<size_t>(u)]) continue;
        for (const auto& nb : neighbors(u))
            if (u < nb.to && in[static_cast<size_t>(nb.to)]) b.add_edge(name(u), name(nb.to), nb.w);
    }
    try {
        return b.build(!allow_disconnected);
    } catch (const Error& e) {
        if (e.kind() == "DisconnectedGraph")
            fail("DisconnectedSubset", "induced subgraph is not connected");
        throw;
    }
}

std::optional<Dist> MetricGraph::intrinsic_distance(const MetricGraph& sub, std::string_view u,
                                                    std::string_view v) {
    auto ui = sub.find(u);
    auto vi = sub.find(v);
    if (!ui || !vi) return std::nullopt;
    Dist d = sub.table()[static_cast<size_t>(*ui) * sub.names_.size() + static_cast<size_t>(*vi)];
    if (d >= kUnreachable) return std::nullopt;
    return d;
}

// ---- SubsetFamily ----------------------------------------------------------

const SubsetFamily::Member& SubsetFamily::member(std::string_view name) const {
    const Member* m = find(name);
    if (!m) fail("UnknownSubset", "no subset named '" + std::string(name) + "'");
    return *m;
}

const SubsetFamily::Member* SubsetFamily::find(std::string_view name) const {
    for (const auto& m : members)
        if (m.name == name) return &m;
    return nullptr;
}

Dist SubsetFamily::measured_separation(const MetricGraph& g) const {
    Dist sep = std::numeric_limits<Dist>::max();
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            for (VertexId x : members[i].vertices)
                sep = std::min(sep, g.distance_to_set(x, members[j].vertices));
    return members.size() < 2 ? 0 : sep;
}

void SubsetFamily::validate(const MetricGraph& g) const {
    std::vector<char> used(static_cast<size_t>(g.vertex_count()), 0);
    for (const auto& m : members) {
        if (m.vertices.empty()) fail("EmptySubset", "subset '" + m.name + "' is empty");
        for (VertexId v : m.vertices) {
            if (!g.has_vertex(v)) fail("UnknownVertex", "subset '" + m.name + "' names missing vertex");
            if (used[static_cast<size_t>(v)])
                fail("OverlappingSubsets", "vertex '" + g.name(v) + "' is in two subsets");
            used[static_cast<size_t>(v)] = 1;
        }
    }
    if (members.size() >= 2 && measured_separation(g) < declared_separation)
        fail("SeparationViolated", "measured separation " +
                                       std::to_string(measured_separation(g)) +
                                       " < declared " + std::to_string(declared_separation));
    if (properness_radius) {
        for (const auto& m : members) {
            auto ball = g.neighborhood(m.vertices, *properness_radius);
            if (static_cast<int>(ball.size()) == g.vertex_count())
                fail("NotCoarselyProper", "subset '" + m.name + "' covers the graph at radius " +
                                              std::to_string(*properness_radius));
        }
    }
}

SubsetFamily SubsetFamily::renamed(const MetricGraph& from, const MetricGraph& to,
                                   const std::string& prefix) const {
    SubsetFamily out;
    out.declared_separation = declared_separation;
    out.properness_radius = properness_radius;
    for (const auto& m : members) {
        Member nm;
        nm.name = prefix + m.name;
        for (VertexId v : m.vertices) nm.vertices.push_back(to.index(prefix + from.name(v)));
        std::sort(nm.vertices.begin(), nm.vertices.end());
        out.members.push_back(std::move(nm));
    }
    return out;
}

// ---- text format -----------------------------------------------------------

ParsedGraph parse_graph_text(std::string_view text) {
    GraphBuilder builder;
    struct RawSubset {
        std::string name;
        std::vector<std::string> vertices;
    };
    std::vector<RawSubset> raw_subsets;
    Dist separation = 1;
    std::optional<Dist> properness;

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "e") {
            EdgeSpec e;
            if (!(ls >> e.u >> e.v >> e.w))
                fail("ParseError", "line " + std::to_string(lineno) + ": expected 'e <u> <v> <w>'");
            builder.add_edge(e.u, e.v, e.w);
        } else if (tag == "subset") {
            RawSubset s;
            if (!(ls >> s.name))
                fail("ParseError", "line " + std::to_string(lineno) + ": subset needs a name");
            std::string v;
            while (ls >> v) s.vertices.push_back(v);
            raw_subsets.push_back(std::move(s));
        } else if (tag == "separation") {
            ls >> separation;
        } else if (tag == "properness") {
            Dist r;
            ls >> r;
            properness = r;
        } else {
            fail("ParseError", "line " + std::to_string(lineno) + ": unknown directive '" + tag + "'");
        }
    }

    ParsedGraph out;
    out.graph = builder.build();
    out.family.declared_separation = separation;
    out.family.properness_radius = properness;
    for (const auto& s : raw_subsets) {
        SubsetFamily::Member m;
        m.name = s.name;
        for (const auto& v : s.vertices) m.vertices.push_back(out.graph.index(v));
        std::sort(m.vertices.begin(), m.vertices.end());
        m.vertices.erase(std::unique(m.vertices.begin(), m.vertices.end()), m.vertices.end());
        out.family.members.push_back(std::move(m));
    }
    std::sort(out.family.members.begin(), out.family.members.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

ParsedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph_text(buffer.str());
}

std::string format_graph_text(const MetricGraph& g, const SubsetFamily& fam) {
    std::ostringstream out;
    for (const auto& e : g.edge_list()) out << "e " << e.u << " " << e.v << " " << e.w << "\n";
    if (fam.declared_separation != 1) out << "separation " << fam.declared_separation << "\n";
    if (fam.properness_radius) out << "properness " << *fam.properness_radius << "\n";
    auto members = fam.members;
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    for (const auto& m : members) {
        out << "subset " << m.name;
        std::vector<std::string> names;
        for (VertexId v : m.vertices) names.push_back(g.name(v));
        std::sort(names.begin(), names.end());
        for (const auto& n : names) out << " " << n;
        out << "\n";
    }
    return out.str();
}

std::uint64_t content_digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace conetree
