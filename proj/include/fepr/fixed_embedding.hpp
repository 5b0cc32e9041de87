#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fepr/checker.hpp"
#include "fepr/model.hpp"

namespace fepr {

struct EdgesNotIncident : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Each edge carries its position in the rotation of both endpoints.
struct OrderQueryIndex {
    struct Label {
        int vertex = -1;
        int position = -1;
    };
    std::vector<std::array<Label, 2>> labels;  // per edge id
    int position(int v, int edge) const;       // -1 when the edge is not incident to v
};

enum class CyclicOrder { ijk, ikj };

OrderQueryIndex build_order_index(const WeightedTwoTree& g, const Rotation& rot);
CyclicOrder cyclic_order(const OrderQueryIndex& idx, int v, int ei, int ej, int ek);

struct FixedCandidate {
    Realization coords;
    bool built = false;  // false when Case 1 aborted the seed
};

// The two seed candidates (seed and its reflection) of the rotation-driven construction.
std::vector<FixedCandidate> fixed_rotation_candidates(const WeightedTwoTree& g, const Rotation& rot);

std::optional<Realization> realize_fixed_rotation(const WeightedTwoTree& g, const Rotation& rot,
                                                  const CheckOptions& opt = {});
std::optional<Realization> realize_fixed_embedding(const WeightedTwoTree& g, const PlaneEmbedding& emb,
                                                   const CheckOptions& opt = {});

}  // namespace fepr
