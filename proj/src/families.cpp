#include "fepr/families.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace fepr {

WeightedTwoTree with_lengths(const Shape& s, const std::vector<double>& lengths) {
    std::vector<RawEdge> raw;
    raw.reserve(s.edges.size());
    for (std::size_t i = 0; i < s.edges.size(); ++i) raw.emplace_back(s.edges[i].first, s.edges[i].second, lengths.at(i));
    return validate_2tree(s.n, raw);
}

WeightedTwoTree with_uniform_length(const Shape& s, double w) {
    return with_lengths(s, std::vector<double>(s.edges.size(), w));
}

Shape triangle_shape() { return {3, {{0, 1}, {1, 2}, {0, 2}}}; }

Shape attach(const Shape& s, int u, int v) {
    Shape t = s;
    int w = t.n++;
    t.edges.emplace_back(std::min(u, w), std::max(u, w));
    t.edges.emplace_back(std::min(v, w), std::max(v, w));
    return t;
}

Shape fan_shape(int triangles) {
    Shape s = triangle_shape();
    for (int i = 1; i < triangles; ++i) s = attach(s, 0, i + 1);
    return s;
}

Shape book_shape(int pages) {
    Shape s = triangle_shape();
    for (int i = 1; i < pages; ++i) s = attach(s, 0, 1);
    return s;
}

Shape strip_shape(int triangles) {
    Shape s = triangle_shape();
    for (int i = 1; i < triangles; ++i) s = attach(s, i, i + 1);
    return s;
}

Shape random_shape(int n, std::mt19937_64& rng) {
    Shape s = triangle_shape();
    while (s.n < n) {
        std::uniform_int_distribution<std::size_t> pick(0, s.edges.size() - 1);
        auto [u, v] = s.edges[pick(rng)];
        s = attach(s, u, v);
    }
    return s;
}

Shape outerpath_shape(const std::vector<bool>& turns) {
    Shape s = triangle_shape();
    int a = 1, b = 2;
    for (bool t : turns) {
        s = attach(s, a, b);
        int w = s.n - 1;
        if (t) {
            a = b;
        }
        b = w;
    }
    return s;
}

Shape outerpillar_shape(const std::vector<bool>& turns, const std::vector<bool>& leaves) {
    // Replay the outerpath while remembering the edge of each face that no other path face uses.
    Shape s = triangle_shape();
    std::vector<std::pair<int, int>> free_edge;
    int a = 1, b = 2;
    free_edge.emplace_back(0, 1);  // face 0 also has (0,2) free; (1,2) continues the path
    for (bool t : turns) {
        s = attach(s, a, b);
        int w = s.n - 1;
        // The new face is (a, b, w); the edge not taken next is free.
        free_edge.emplace_back(t ? std::make_pair(a, w) : std::make_pair(b, w));
        if (t) a = b;
        b = w;
    }
    for (std::size_t i = 0; i < leaves.size() && i < free_edge.size(); ++i)
        if (leaves[i]) s = attach(s, free_edge[i].first, free_edge[i].second);
    return s;
}

namespace {

std::vector<std::vector<int>> adjacency(const Shape& s) {
    std::vector<std::vector<int>> adj(s.n);
    for (auto [u, v] : s.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

// Stable colour refinement; colours are canonical (independent of labelling).
std::vector<long long> refine(const Shape& s) {
    auto adj = adjacency(s);
    std::vector<long long> col(s.n);
    for (int v = 0; v < s.n; ++v) col[v] = static_cast<long long>(adj[v].size());
    for (int round = 0; round < s.n; ++round) {
        std::vector<std::pair<long long, std::vector<long long>>> sig(s.n);
        for (int v = 0; v < s.n; ++v) {
            sig[v].first = col[v];
            for (int w : adj[v]) sig[v].second.push_back(col[w]);
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        std::vector<std::pair<long long, std::vector<long long>>> uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<long long> next(s.n);
        for (int v = 0; v < s.n; ++v)
            next[v] = std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin();
        bool same = true;
        for (int v = 0; v < s.n && same; ++v) same = next[v] == col[v];
        // Colours are class ranks after the first round, so a repeat means a stable partition.
        if (same && round > 0) break;
        col = std::move(next);
    }
    return col;
}

std::vector<long long> invariant(const Shape& s, const std::vector<long long>& col) {
    std::vector<long long> inv = col;
    std::sort(inv.begin(), inv.end());
    inv.push_back(s.n);
    return inv;
}

bool isomorphic_with(const Shape& a, const std::vector<long long>& ca, const Shape& b,
                     const std::vector<long long>& cb) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
    auto adja = adjacency(a);
    std::vector<std::vector<char>> mb(b.n, std::vector<char>(b.n, 0));
    for (auto [u, v] : b.edges) mb[u][v] = mb[v][u] = 1;
    std::vector<int> map(a.n, -1);
    std::vector<char> used(b.n, 0);
    std::function<bool(int)> go = [&](int v) {
        if (v == a.n) return true;
        for (int w = 0; w < b.n; ++w) {
            if (used[w] || cb[w] != ca[v]) continue;
            bool ok = true;
            for (int x : adja[v])
                if (x < v && !mb[map[x]][w]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            if (go(v + 1)) return true;
            used[w] = 0;
        }
        map[v] = -1;
        return false;
    };
    return go(0);
}

}  // namespace

bool isomorphic(const Shape& a, const Shape& b) {
    auto ca = refine(a), cb = refine(b);
    if (invariant(a, ca) != invariant(b, cb)) return false;
    return isomorphic_with(a, ca, b, cb);
}

std::vector<Shape> nonisomorphic_2trees(int n) {
    if (n < 3) return {};
    std::vector<Shape> level{triangle_shape()};
    for (int k = 4; k <= n; ++k) {
        std::vector<Shape> next;
        std::map<std::vector<long long>, std::vector<std::pair<std::size_t, std::vector<long long>>>> buckets;
        for (const Shape& s : level) {
            for (auto [u, v] : s.edges) {
                Shape t = attach(s, u, v);
                auto ct = refine(t);
                auto inv = invariant(t, ct);
                auto& bucket = buckets[inv];
                bool dup = false;
                for (auto& [idx, cr] : bucket)
                    if (isomorphic_with(t, ct, next[idx], cr)) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                bucket.emplace_back(next.size(), ct);
                next.push_back(std::move(t));
            }
        }
        level = std::move(next);
    }
    return level;
}

WeightedTwoTree equilateral_strip(int n, double w) { return with_uniform_length(strip_shape(std::max(1, n - 2)), w); }

WeightedTwoTree leafy_big_strip(int n, double w1, double w2) {
    int k = std::max(1, (n - 2) / 2);
    Shape s = strip_shape(k);
    std::vector<double> len(s.edges.size(), w2);
    for (int i = 0; i < k; ++i) {
        s = attach(s, i, i + 2);
        len.push_back(w1);
        len.push_back(w1);
    }
    return with_lengths(s, len);
}

}  // namespace fepr
