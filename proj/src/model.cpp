#include "fepr/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

namespace fepr {

namespace {

long long edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<long long>(u) << 32) | static_cast<unsigned>(v);
}

long long triple_key(Triple t, int n) {
    std::sort(t.begin(), t.end());
    long long nn = n;
    return (static_cast<long long>(t[0]) * nn + t[1]) * nn + t[2];
}

std::string triple_str(int a, int b, int c) {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

// Peels degree-2 vertices (never those in `keep`) until only `target` vertices remain.
// Returns peeled (vertex, neighbor a, neighbor b) records in peel order.
std::vector<Triple> peel(int n, const std::vector<std::vector<int>>& nbrs, const std::vector<char>& keep,
                         int target, PeelOrder order, const std::function<bool(int, int)>& adjacent) {
    std::vector<std::set<int>> live(n);
    for (int v = 0; v < n; ++v) live[v].insert(nbrs[v].begin(), nbrs[v].end());
    std::vector<char> alive(n, 1);
    auto cmp = [order](int a, int b) { return order == PeelOrder::smallest_first ? a > b : a < b; };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> pq(cmp);
    for (int v = 0; v < n; ++v)
        if (!keep[v] && live[v].size() == 2) pq.push(v);
    std::vector<Triple> out;
    int remaining = n;
    while (remaining > target) {
        if (pq.empty()) throw NotATwoTree("peeling stuck: no removable degree-2 vertex");
        int v = pq.top();
        pq.pop();
        if (!alive[v] || live[v].size() != 2) continue;
        int a = *live[v].begin();
        int b = *std::next(live[v].begin());
        if (!adjacent(a, b)) {
            throw NotATwoTree("degree-2 vertex " + std::to_string(v) + " has non-adjacent neighbors " +
                              std::to_string(a) + " and " + std::to_string(b));
        }
        out.push_back({v, a, b});
        alive[v] = 0;
        --remaining;
        for (int x : {a, b}) {
            live[x].erase(v);
            if (!keep[x] && live[x].size() == 2) pq.push(x);
        }
    }
    return out;
}

}  // namespace

int WeightedTwoTree::edge_id(int u, int v) const {
    auto it = edge_index.find(edge_key(u, v));
    return it == edge_index.end() ? -1 : it->second;
}

double WeightedTwoTree::len(int u, int v) const {
    int e = edge_id(u, v);
    if (e < 0) throw std::out_of_range("no edge " + std::to_string(u) + "-" + std::to_string(v));
    return length[e];
}

int WeightedTwoTree::triangle_id(int a, int b, int c) const {
    auto it = triangle_index.find(triple_key({a, b, c}, n));
    return it == triangle_index.end() ? -1 : it->second;
}

std::vector<RawEdge> WeightedTwoTree::raw_edges() const {
    std::vector<RawEdge> out;
    out.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) out.emplace_back(edges[i].first, edges[i].second, length[i]);
    return out;
}

WeightedTwoTree validate_2tree(int n, const std::vector<RawEdge>& raw) {
    if (n < 3) throw NotATwoTree("a 2-tree needs at least 3 vertices");
    if (static_cast<long long>(raw.size()) != 2LL * n - 3) {
        throw NotATwoTree("edge count " + std::to_string(raw.size()) + " differs from 2n-3 = " +
                          std::to_string(2 * n - 3));
    }
    WeightedTwoTree g;
    g.n = n;
    g.adj.assign(n, {});
    for (const auto& [u0, v0, l] : raw) {
        if (u0 < 0 || v0 < 0 || u0 >= n || v0 >= n) throw NotATwoTree("edge endpoint out of range");
        if (u0 == v0) throw NotATwoTree("self-loop at vertex " + std::to_string(u0));
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw BadParameter("edge " + std::to_string(u0) + "-" + std::to_string(v0) + " has non-positive length");
        }
        int u = std::min(u0, v0), v = std::max(u0, v0);
        if (!g.edge_index.emplace(edge_key(u, v), static_cast<int>(g.edges.size())).second) {
            throw NotATwoTree("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        g.edges.emplace_back(u, v);
        g.length.push_back(l);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        g.adj[u].emplace_back(v, static_cast<int>(e));
        g.adj[v].emplace_back(u, static_cast<int>(e));
    }
    std::vector<std::vector<int>> nbrs(n);
    for (int v = 0; v < n; ++v) {
        std::sort(g.adj[v].begin(), g.adj[v].end());
        for (auto [w, e] : g.adj[v]) nbrs[v].push_back(w);
    }
    std::vector<char> keep(n, 0);
    auto adjacent = [&g](int a, int b) { return g.edge_id(a, b) >= 0; };
    auto peeled = peel(n, nbrs, keep, 2, PeelOrder::smallest_first, adjacent);

    std::vector<Triple> tris;
    tris.reserve(peeled.size());
    for (auto t : peeled) {
        std::sort(t.begin(), t.end());
        tris.push_back(t);
    }
    std::sort(tris.begin(), tris.end());
    for (const Triple& t : tris) {
        double a = g.len(t[0], t[1]), b = g.len(t[1], t[2]), c = g.len(t[0], t[2]);
        if (!triangle_inequality_ok(a, b, c)) {
            throw TriangleInequalityViolated("3-cycle " + triple_str(t[0], t[1], t[2]) +
                                             " violates the strict triangle inequality");
        }
    }
    g.triangles = std::move(tris);
    g.edge_triangles.assign(g.edges.size(), {});
    for (std::size_t i = 0; i < g.triangles.size(); ++i) {
        const Triple& t = g.triangles[i];
        g.triangle_index.emplace(triple_key(t, n), static_cast<int>(i));
        g.edge_triangles[g.edge_id(t[0], t[1])].push_back(static_cast<int>(i));
        g.edge_triangles[g.edge_id(t[1], t[2])].push_back(static_cast<int>(i));
        g.edge_triangles[g.edge_id(t[0], t[2])].push_back(static_cast<int>(i));
    }
    return g;
}

DecompositionTree build_decomposition_tree(const WeightedTwoTree& g, int root_triangle, PeelOrder order) {
    if (root_triangle < 0 || root_triangle >= static_cast<int>(g.triangles.size())) {
        throw BadParameter("root is not a 3-cycle of the graph");
    }
    const Triple& rt = g.triangles[root_triangle];
    std::vector<char> keep(g.n, 0);
    for (int v : rt) keep[v] = 1;
    std::vector<std::vector<int>> nbrs(g.n);
    for (int v = 0; v < g.n; ++v)
        for (auto [w, e] : g.adj[v]) nbrs[v].push_back(w);
    auto adjacent = [&g](int a, int b) { return g.edge_id(a, b) >= 0; };
    auto peeled = peel(g.n, nbrs, keep, 3, order, adjacent);

    DecompositionTree t;
    std::size_t m = g.triangles.size();
    t.tri.reserve(m);
    t.node_of_triangle.assign(m, -1);
    std::vector<int> label(g.edges.size(), -1);
    t.tri.push_back(root_triangle);
    t.parent.push_back(-1);
    t.shared_edge.push_back(-1);
    t.apex.push_back(-1);
    t.node_of_triangle[root_triangle] = 0;
    label[g.edge_id(rt[0], rt[1])] = label[g.edge_id(rt[1], rt[2])] = label[g.edge_id(rt[0], rt[2])] = 0;
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
        auto [v, a, b] = *it;
        int node = static_cast<int>(t.tri.size());
        int base = g.edge_id(a, b);
        int tri = g.triangle_id(v, a, b);
        t.tri.push_back(tri);
        t.parent.push_back(label[base]);
        t.shared_edge.push_back(base);
        t.apex.push_back(v);
        t.node_of_triangle[tri] = node;
        label[g.edge_id(v, a)] = node;
        label[g.edge_id(v, b)] = node;
    }
    t.children.assign(t.tri.size(), {});
    for (std::size_t i = 1; i < t.tri.size(); ++i) t.children[t.parent[i]].push_back(static_cast<int>(i));
    return t;
}

double perimeter(const WeightedTwoTree& g, int triangle) {
    const Triple& t = g.triangles[triangle];
    return g.len(t[0], t[1]) + g.len(t[1], t[2]) + g.len(t[0], t[2]);
}

int max_perimeter_cycle(const WeightedTwoTree& g) {
    int best = 0;
    double bp = perimeter(g, 0);
    for (int i = 1; i < static_cast<int>(g.triangles.size()); ++i) {
        double p = perimeter(g, i);
        // Triangles are sorted, so a tie keeps the lexicographically smaller triple.
        if (p > bp + 1e-12 * bp) {
            best = i;
            bp = p;
        }
    }
    return best;
}

Realization realize_signs(const WeightedTwoTree& g, const DecompositionTree& t, const std::vector<int>& side) {
    Realization r(g.n);
    const Triple& rt = g.triangles[t.tri[0]];
    int a = rt[0], b = rt[1], c = rt[2];
    r[a] = {0.0, 0.0};
    r[b] = {g.len(a, b), 0.0};
    r[c] = place_apex(r[a], r[b], g.len(a, c), g.len(b, c), Side::left);
    for (std::size_t k = 1; k < t.size(); ++k) {
        auto [x, y] = g.edges[t.shared_edge[k]];
        int v = t.apex[k];
        Side s = side[k] > 0 ? Side::left : Side::right;
        r[v] = place_apex(r[x], r[y], g.len(x, v), g.len(y, v), s);
    }
    return r;
}

std::vector<int> signs_of(const WeightedTwoTree& g, const DecompositionTree& t, const Realization& r) {
    std::vector<int> s(t.size(), 0);
    for (std::size_t k = 1; k < t.size(); ++k) {
        auto [x, y] = g.edges[t.shared_edge[k]];
        s[k] = orientation(r[x], r[y], r[t.apex[k]]);
    }
    return s;
}

bool is_outerplanar(const WeightedTwoTree& g) {
    for (const auto& ts : g.edge_triangles)
        if (ts.size() > 2) return false;
    return true;
}

std::vector<std::vector<int>> dual_tree(const WeightedTwoTree& g) {
    std::vector<std::vector<int>> adj(g.triangles.size());
    for (const auto& ts : g.edge_triangles) {
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j) {
                adj[ts[i]].push_back(ts[j]);
                adj[ts[j]].push_back(ts[i]);
            }
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

std::optional<PlaneEmbedding> outerplane_embedding(const WeightedTwoTree& g) {
    if (!is_outerplanar(g)) return std::nullopt;
    std::size_t m = g.triangles.size();
    std::vector<Triple> orient(m);
    std::vector<char> done(m, 0);
    orient[0] = g.triangles[0];
    done[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        const Triple& o = orient[t];
        for (int k = 0; k < 3; ++k) {
            int x = o[k], y = o[(k + 1) % 3];
            for (int nt : g.edge_triangles[g.edge_id(x, y)]) {
                if (done[nt]) continue;
                const Triple& tv = g.triangles[nt];
                int w = tv[0] + tv[1] + tv[2] - x - y;
                orient[nt] = {y, x, w};
                done[nt] = 1;
                stack.push_back(nt);
            }
        }
    }
    std::vector<std::vector<std::pair<int, int>>> next(g.n);  // per vertex: (a, b) with b after a
    for (const Triple& o : orient) {
        for (int k = 0; k < 3; ++k) next[o[k]].emplace_back(o[(k + 1) % 3], o[(k + 2) % 3]);
    }
    PlaneEmbedding emb;
    emb.rotation.assign(g.n, {});
    for (int v = 0; v < g.n; ++v) {
        std::unordered_map<int, int> succ;
        std::set<int> has_pred;
        for (auto [a, b] : next[v]) {
            succ[a] = b;
            has_pred.insert(b);
        }
        int start = -1;
        for (auto [a, b] : next[v])
            if (!has_pred.count(a)) start = a;
        if (start < 0) return std::nullopt;
        std::vector<int>& rot = emb.rotation[v];
        for (int cur = start;;) {
            rot.push_back(cur);
            auto it = succ.find(cur);
            if (it == succ.end()) break;
            cur = it->second;
        }
        if (static_cast<int>(rot.size()) != g.degree(v)) return std::nullopt;
    }
    std::vector<int> out_next(g.n, -1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edge_triangles[e].size() != 1) continue;
        const Triple& o = orient[g.edge_triangles[e][0]];
        auto [u, v] = g.edges[e];
        for (int k = 0; k < 3; ++k) {
            if ((o[k] == u && o[(k + 1) % 3] == v) || (o[k] == v && o[(k + 1) % 3] == u)) {
                out_next[o[k]] = o[(k + 1) % 3];
            }
        }
    }
    int cur = 0;
    for (int i = 0; i < g.n; ++i) {
        emb.outer.push_back(cur);
        cur = out_next[cur];
        if (cur < 0) return std::nullopt;
    }
    if (cur != 0) return std::nullopt;
    return emb;
}

const char* to_string(TriangleClass c) {
    switch (c) {
        case TriangleClass::small_equilateral: return "small-equilateral";
        case TriangleClass::big_equilateral: return "big-equilateral";
        case TriangleClass::tall_isosceles: return "tall-isosceles";
        case TriangleClass::flat_isosceles: return "flat-isosceles";
    }
    return "?";
}

TriangleClass classify_triangle(double l1, double l2, double l3, double w1, double w2, double eps) {
    if (!(w1 > 0.0) || !(w1 < w2)) throw BadParameter("classify_triangle requires 0 < w1 < w2");
    int small = 0;
    for (double l : {l1, l2, l3}) {
        if (std::abs(l - w1) <= eps * w2) {
            ++small;
        } else if (std::abs(l - w2) > eps * w2) {
            throw BadParameter("length is neither w1 nor w2");
        }
    }
    switch (small) {
        case 3: return TriangleClass::small_equilateral;
        case 0: return TriangleClass::big_equilateral;
        case 1: return TriangleClass::tall_isosceles;
        default:
            if (w2 >= 2.0 * w1 * (1.0 - eps)) {
                throw ImpossibleTriangle("(w1, w1, w2) cannot form a triangle when w2 >= 2 w1");
            }
            return TriangleClass::flat_isosceles;
    }
}

SpqTree build_spq_tree(const WeightedTwoTree& g, int e_star) {
    if (e_star < 0 || e_star >= static_cast<int>(g.edges.size())) throw BadParameter("e_star is not an edge");
    SpqTree t;
    auto add = [&t](SpqNode nd) {
        t.nodes.push_back(std::move(nd));
        return static_cast<int>(t.nodes.size()) - 1;
    };
    struct Job {
        int node;
        int parent_triangle;
    };
    std::vector<Job> jobs;
    {
        SpqNode root;
        root.kind = SpqNode::Kind::P;
        root.u = g.edges[e_star].first;
        root.v = g.edges[e_star].second;
        root.edge = e_star;
        t.root = add(root);
        jobs.push_back({t.root, -1});
    }
    auto make_pole = [&](int u, int v, int parent_node, int parent_triangle) {
        int e = g.edge_id(u, v);
        bool more = g.edge_triangles[e].size() > 1;
        SpqNode nd;
        nd.kind = more ? SpqNode::Kind::P : SpqNode::Kind::Q;
        nd.u = u;
        nd.v = v;
        nd.edge = e;
        nd.parent = parent_node;
        int id = add(nd);
        if (more) jobs.push_back({id, parent_triangle});
        return id;
    };
    while (!jobs.empty()) {
        Job job = jobs.back();
        jobs.pop_back();
        int u = t.nodes[job.node].u, v = t.nodes[job.node].v, e = t.nodes[job.node].edge;
        SpqNode q;
        q.kind = SpqNode::Kind::Q;
        q.u = u;
        q.v = v;
        q.edge = e;
        q.parent = job.node;
        int qid = add(q);
        std::vector<std::pair<std::pair<double, int>, int>> s_children;
        for (int tri : g.edge_triangles[e]) {
            if (tri == job.parent_triangle) continue;
            const Triple& tv = g.triangles[tri];
            int w = tv[0] + tv[1] + tv[2] - u - v;
            SpqNode s;
            s.kind = SpqNode::Kind::S;
            s.u = u;
            s.v = v;
            s.w = w;
            s.triangle = tri;
            s.parent = job.node;
            int sid = add(s);
            int sigma = make_pole(u, w, sid, tri);
            int tau = make_pole(w, v, sid, tri);
            t.nodes[sid].children = {sigma, tau};
            s_children.push_back({{g.len(u, w) + g.len(w, v), w}, sid});
        }
        std::sort(s_children.begin(), s_children.end());
        auto& ch = t.nodes[job.node].children;
        ch.push_back(qid);
        for (auto& sc : s_children) ch.push_back(sc.second);
    }
    return t;
}

int spq_height(const SpqTree& t) {
    std::vector<int> depth(t.nodes.size(), 0);
    std::vector<int> stack{t.root};
    int h = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        h = std::max(h, depth[x]);
        for (int c : t.nodes[x].children) {
            depth[c] = depth[x] + 1;
            stack.push_back(c);
        }
    }
    return h;
}

void assert_spq_conditions(const WeightedTwoTree& g, const SpqTree& t) {
    using K = SpqNode::Kind;
    if (t.nodes[t.root].kind != K::P) throw std::logic_error("root is not a P-node");
    std::vector<int> edge_seen(g.edges.size(), 0);
    for (const SpqNode& nd : t.nodes) {
        switch (nd.kind) {
            case K::Q:
                if (!nd.children.empty()) throw std::logic_error("Q-node with children");
                ++edge_seen[nd.edge];
                break;
            case K::P: {
                if (nd.children.size() < 2) throw std::logic_error("P-node without S children");
                if (t.nodes[nd.children[0]].kind != K::Q) throw std::logic_error("P-node lacks a leading Q child");
                for (std::size_t i = 1; i < nd.children.size(); ++i)
                    if (t.nodes[nd.children[i]].kind != K::S) throw std::logic_error("P-node child is not an S-node");
                break;
            }
            case K::S: {
                if (nd.children.size() != 2) throw std::logic_error("S-node without exactly two children");
                for (int c : nd.children)
                    if (t.nodes[c].kind == K::S) throw std::logic_error("S-node child is an S-node");
                break;
            }
        }
    }
    for (int c : edge_seen)
        if (c != 1) throw std::logic_error("Q-nodes do not cover every edge exactly once");
    if (t.nodes[t.nodes[t.root].children[0]].edge != g.edge_id(t.nodes[t.root].u, t.nodes[t.root].v)) {
        throw std::logic_error("pole edge Q-node is not a child of the root");
    }
    int h = spq_height(t);
    if (h <= 0 || h % 2 != 0) throw std::logic_error("height is not even and positive");
}

int longest_path_length(const WeightedTwoTree& g) {
    if (g.n > 16) throw LongestPathTooLarge("longest path search is limited to n <= 16");
    int best = 0;
    std::function<void(int, unsigned, int)> dfs = [&](int v, unsigned mask, int len) {
        best = std::max(best, len);
        for (auto [w, e] : g.adj[v])
            if (!(mask & (1u << w))) dfs(w, mask | (1u << w), len + 1);
    };
    for (int v = 0; v < g.n; ++v) dfs(v, 1u << v, 0);
    return best;
}

}  // namespace fepr
