#include "fepr/fixed_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fepr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cw_gap(double from, double to) {
    double d = from - to;
    while (d < 0) d += kTwoPi;
    while (d >= kTwoPi) d -= kTwoPi;
    return d;
}

// Clockwise order of the three segments u->v, u->w, u->z as seen in the drawing.
CyclicOrder geometric_order(Point u, Point v, Point w, Point z) {
    double dv = direction(v - u);
    return cw_gap(dv, direction(w - u)) < cw_gap(dv, direction(z - u)) ? CyclicOrder::ijk : CyclicOrder::ikj;
}

void validate_rotation(const WeightedTwoTree& g, const Rotation& rot) {
    if (static_cast<int>(rot.size()) != g.n) throw BadParameter("rotation has wrong vertex count");
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> s = rot[v];
        std::sort(s.begin(), s.end());
        if (static_cast<int>(s.size()) != g.degree(v)) throw BadParameter("rotation is not a permutation");
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] != g.adj[v][i].first) throw BadParameter("rotation is not a permutation");
    }
}

FixedCandidate build_seed(const WeightedTwoTree& g, const DecompositionTree& t, const OrderQueryIndex& idx,
                          bool reflected) {
    FixedCandidate cand;
    Realization& r = cand.coords;
    r.assign(g.n, Point{});
    const Triple& c = g.triangles[t.tri[0]];
    std::vector<int> level(g.n, -1);
    std::vector<int> first(g.n, -1);  // neighbor along the first edge of a shortest path to the root cycle
    r[c[0]] = {0.0, 0.0};
    r[c[1]] = {g.len(c[0], c[1]), 0.0};
    r[c[2]] = place_apex(r[c[0]], r[c[1]], g.len(c[0], c[2]), g.len(c[1], c[2]), Side::left);
    if (reflected)
        for (int v : c) r[v] = reflect_x(r[v]);
    for (int v : c) level[v] = 0;

    for (std::size_t k = 1; k < t.size(); ++k) {
        auto [a, b] = g.edges[t.shared_edge[k]];
        int w = t.apex[k];
        int u = a, v = b;
        if (level[b] < level[a] || (level[b] == level[a] && b < a)) std::swap(u, v);
        int z = -1;
        if (level[u] > 0) {
            z = first[u];
        } else {
            for (int x : c)
                if (x != u && x != v && (z < 0 || x < z)) z = x;
        }
        int e_uv = g.edge_id(u, v), e_uw = g.edge_id(u, w), e_uz = g.edge_id(u, z);
        CyclicOrder want = cyclic_order(idx, u, e_uv, e_uw, e_uz);
        Point left = place_apex(r[u], r[v], g.len(u, w), g.len(v, w), Side::left);
        Point right = place_apex(r[u], r[v], g.len(u, w), g.len(v, w), Side::right);
        // An apex on the ray u->z would overlap edge uz, so it never respects the rotation.
        auto along_z = [&](Point apex) {
            double gap = cw_gap(direction(apex - r[u]), direction(r[z] - r[u]));
            return gap < 1e-9 || gap > kTwoPi - 1e-9;
        };
        bool ok_left = !along_z(left) && geometric_order(r[u], r[v], left, r[z]) == want;
        bool ok_right = !along_z(right) && geometric_order(r[u], r[v], right, r[z]) == want;
        if (!ok_left && !ok_right) return cand;  // Case 1: no placement respects the rotation
        Point chosen;
        if (ok_left != ok_right) {
            chosen = ok_left ? left : right;
        } else {
            // Case 3: keep (u,z) outside the new triangle's wedge at u.
            auto inside_wedge = [&](Point apex) {
                double wedge = angle_at(r[u], r[v], apex);
                double split = angle_at(r[u], r[v], r[z]) + angle_at(r[u], apex, r[z]);
                return std::abs(split - wedge) <= 1e-9 * (1.0 + wedge);
            };
            chosen = !inside_wedge(left) ? left : right;
        }
        r[w] = chosen;
        level[w] = level[u] + 1;
        first[w] = u;
    }
    cand.built = true;
    return cand;
}

}  // namespace

int OrderQueryIndex::position(int v, int edge) const {
    if (edge < 0 || edge >= static_cast<int>(labels.size())) return -1;
    for (const Label& l : labels[edge])
        if (l.vertex == v) return l.position;
    return -1;
}

OrderQueryIndex build_order_index(const WeightedTwoTree& g, const Rotation& rot) {
    validate_rotation(g, rot);
    OrderQueryIndex idx;
    idx.labels.assign(g.edges.size(), {});
    for (int v = 0; v < g.n; ++v) {
        for (std::size_t i = 0; i < rot[v].size(); ++i) {
            int e = g.edge_id(v, rot[v][i]);
            auto& slot = idx.labels[e][idx.labels[e][0].vertex < 0 ? 0 : 1];
            slot = {v, static_cast<int>(i)};
        }
    }
    return idx;
}

CyclicOrder cyclic_order(const OrderQueryIndex& idx, int v, int ei, int ej, int ek) {
    int i = idx.position(v, ei), j = idx.position(v, ej), k = idx.position(v, ek);
    if (i < 0 || j < 0 || k < 0 || i == j || j == k || i == k) {
        throw EdgesNotIncident("cyclic_order needs three distinct edges incident to the vertex");
    }
    bool ijk;
    if (i < j && i < k) {
        ijk = j < k;
    } else if (j < i && j < k) {
        ijk = k < i;
    } else {
        ijk = i < j;
    }
    return ijk ? CyclicOrder::ijk : CyclicOrder::ikj;
}

std::vector<FixedCandidate> fixed_rotation_candidates(const WeightedTwoTree& g, const Rotation& rot) {
    OrderQueryIndex idx = build_order_index(g, rot);
    DecompositionTree t = build_decomposition_tree(g, max_perimeter_cycle(g));
    return {build_seed(g, t, idx, false), build_seed(g, t, idx, true)};
}

std::optional<Realization> realize_fixed_rotation(const WeightedTwoTree& g, const Rotation& rot,
                                                  const CheckOptions& opt) {
    for (auto& cand : fixed_rotation_candidates(g, rot)) {
        if (!cand.built) continue;
        if (check_realization_rotation(g, rot, cand.coords, opt)) return std::move(cand.coords);
    }
    return std::nullopt;
}

std::optional<Realization> realize_fixed_embedding(const WeightedTwoTree& g, const PlaneEmbedding& emb,
                                                   const CheckOptions& opt) {
    for (auto& cand : fixed_rotation_candidates(g, emb.rotation)) {
        if (!cand.built) continue;
        if (check_realization_embedding(g, emb, cand.coords, opt)) return std::move(cand.coords);
    }
    return std::nullopt;
}

}  // namespace fepr
