#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace fepr {

// The literal "variable `var` takes `value`".
struct Literal {
    int var = 0;
    bool value = true;
    Literal operator!() const { return {var, !value}; }
    bool operator==(const Literal&) const = default;
};

struct TwoSatFormula {
    int num_vars = 0;
    std::vector<std::pair<Literal, Literal>> clauses;  // a unit clause repeats its literal

    void add_unit(Literal a) { clauses.emplace_back(a, a); }
    void add_clause(Literal a, Literal b) { clauses.emplace_back(a, b); }
};

// Satisfying assignment via strongly connected components of the implication graph, or nullopt.
std::optional<std::vector<bool>> solve_2sat(const TwoSatFormula& f);

}  // namespace fepr
