#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fepr/model.hpp"

namespace fepr {

struct CheckResult {
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

enum class CrossingMode { automatic, pairwise, grid };

struct CheckOptions {
    bool verify_lengths = true;
    double length_tol = 1e-7;  // relative
    CrossingMode crossing = CrossingMode::automatic;
};

using Rotation = std::vector<std::vector<int>>;

CheckResult check_realization_embedding(const WeightedTwoTree& g, const PlaneEmbedding& emb, const Realization& r,
                                        const CheckOptions& opt = {});
CheckResult check_realization_rotation(const WeightedTwoTree& g, const Rotation& rot, const Realization& r,
                                       const CheckOptions& opt = {});
// Planarity and lengths only, for callers without a prescribed embedding.
CheckResult check_planar(const WeightedTwoTree& g, const Realization& r, const CheckOptions& opt = {});

// First pair of edges whose images intersect improperly, if any.
std::optional<std::pair<int, int>> find_crossing(const WeightedTwoTree& g, const Realization& r,
                                                 CrossingMode mode = CrossingMode::automatic);
// Improper contact between the images of edges e and f (shared endpoints allowed).
bool edges_conflict(const WeightedTwoTree& g, const Realization& r, int e, int f);
CheckResult check_degenerate(const WeightedTwoTree& g, const Realization& r);
CheckResult check_lengths(const WeightedTwoTree& g, const Realization& r, double rel_tol);

// Outer boundary traced from the leftmost vertex (clockwise); nullopt if the walk revisits a vertex.
std::optional<std::vector<int>> outer_cycle_walk(const WeightedTwoTree& g, const Rotation& rot, const Realization& r);
Rotation rotation_from_drawing(const WeightedTwoTree& g, const Realization& r);
std::optional<PlaneEmbedding> embedding_from_drawing(const WeightedTwoTree& g, const Realization& r);

// Vertex following `from` clockwise around `v` in `rot` (-1 when `from` is not a neighbor).
int clockwise_next(const Rotation& rot, int v, int from);
// True iff `cycle` is a facial walk of `rot` under the clockwise-successor rule.
bool is_face_of(const Rotation& rot, const std::vector<int>& cycle);

}  // namespace fepr
