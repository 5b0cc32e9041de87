#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fepr/model.hpp"

namespace fepr {

struct MalformedRepresentation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormulaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kW1 = 1.0;   // frame side, transmission base
inline constexpr double kW2 = 0.9;   // transmission legs
inline constexpr double kW3 = 0.2;   // short sides of the split and flag pieces
inline constexpr double kW4 = 1.61;  // flag spine

// ---------------------------------------------------------------------------------------------
// Formulas and representations

// Variables are 1-based; a negative literal is -v. Every clause is monotone after load.
struct Formula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

Formula parse_dimacs(const std::string& text);
// Each clause padded to exactly three literals by repeating its last literal. Throws FormulaError on
// an empty or mixed-sign clause.
Formula pad_monotone(const Formula& f);
bool satisfies(const Formula& f, const std::vector<bool>& assignment);  // assignment[v], index 0 unused
std::optional<std::vector<bool>> brute_force_sat(const Formula& f);      // num_vars <= 24

// Monotone rectilinear representation. The same container holds the raw layout (axis-parallel
// boxes, vertical edges) and the transformed one (grid-aligned, sheared clause parallelograms).
struct RepVariable {
    int var = 0;
    double xl = 0, xr = 0, yb = 0, yt = 0;
};
struct RepClause {
    int index = 0;        // position in the formula's clause list
    bool positive = true;
    std::array<Point, 4> corners{};  // bottom-left, bottom-right, top-right, top-left
};
struct RepEdge {
    int var = 0;
    int clause = 0;
    Point from{};  // on the variable box
    Point to{};    // on the clause box
};
struct MonotoneRectRep {
    std::vector<RepVariable> variables;
    std::vector<RepClause> clauses;
    std::vector<RepEdge> edges;
    int delta = 0;  // transformed layouts only: slots per variable side
};

// Layout file: `layout 1`, then `var <id> <xl> <xr>`, `clause <idx> <+|-> <xl> <xr> <yb> <yt>`,
// `edge <var> <clause> <x>` lines; '#' starts a comment. Variable boxes span y in [0, h] where h is
// the common clause height.
MonotoneRectRep parse_layout(const std::string& text);
std::string write_layout(const MonotoneRectRep& raw);

// Raw layout checks (equal box heights, sides, containment of edge ends, no crossings). The formula
// overload also matches edges against the padded clauses.
void check_p_properties(const MonotoneRectRep& raw);
void check_p_properties(const MonotoneRectRep& raw, const Formula& padded);
// Grid alignment checks on a transformed layout; each failure names the property.
void check_d_properties(const MonotoneRectRep& rep);

// Raw layout for formulas whose clause variable ranges form a laminar family on each side
// (variables ordered by index). Throws MalformedRepresentation otherwise.
MonotoneRectRep auto_layout(const Formula& padded);

// Grid-aligned layout: variables of width 2*delta-1 centred on the truth edges, clause bases on grid
// rows, edges of slope 60 degrees. The raw left-to-right order and nesting are preserved.
MonotoneRectRep transform_representation(const MonotoneRectRep& raw);
MonotoneRectRep transform_representation(const MonotoneRectRep& raw, const Formula& padded);

// Horizontal shear used above the upper variable line (dir = +1) or below the lower one (dir = -1):
// a point at vertical distance d from the line moves right by d / sqrt(3).
Point shear_point(Point p, double y_line, int dir);

// ---------------------------------------------------------------------------------------------
// Lattice and gadgets

// Triangular lattice point: x = a / 2, y = j * sqrt(3) / 2, with a and j of equal parity.
struct LatticePoint {
    int a = 0;
    int j = 0;
    auto operator<=>(const LatticePoint&) const = default;
    Point point() const;
};

enum class LeafKind { transmission, scalene };

struct GadgetLeaf {
    int u = -1, v = -1;  // frame edge
    int apex = -1;
    LeafKind kind = LeafKind::transmission;
    std::string tag;
};

struct FlagInfo {
    // a, b, c, d, f, g, h, i, l, m, n
    std::array<int, 11> v{};
    bool mirrored = false;
    std::string tag;
};

struct Gadget {
    WeightedTwoTree g;
    Realization frame;                         // lattice position of frame vertices, NaN elsewhere
    std::vector<LatticePoint> lattice;         // per vertex; valid where frame is finite
    std::vector<Triple> frame_triangles;
    std::vector<std::string> frame_tags;
    std::vector<GadgetLeaf> leaves;
    std::vector<FlagInfo> flags;
    std::map<std::string, std::pair<int, int>> attachments;
    std::map<std::string, Triple> cells;       // named frame triangles (s, t, ...)
    std::vector<std::string> metadata;         // convention table and layout notes

    int leaf_on(int u, int v) const;           // -1 when the edge carries no leaf
    bool is_frame_vertex(int v) const;
    // Frame-only subgraph (vertex ids preserved via the returned map).
    WeightedTwoTree frame_graph(std::vector<int>* ids = nullptr) const;
};

struct TransmissionVariant {
    bool in_slanted = false;   // IN on the 60-degree side of the first frame instead of its base
    bool out_slanted = false;  // OUT on the 60-degree side of the last frame instead of its top
    bool straight() const { return in_slanted == out_slanted; }
};

Gadget make_transmission(int k, TransmissionVariant variant = {});
Gadget make_split();
Gadget make_variable(int delta);
Gadget make_flag();
// The three components C1, C2, C3 (separate 2-trees) in one drawing frame: inputs in1..in3 on a
// common line, outputs out1 (the flag edge b-c), out2, out3 around the hexagon above in2.
std::array<Gadget, 3> make_clause(int alpha, int beta);
// The clause plus rigid frame strips below the line joining the three inputs, so the whole is one
// 2-tree whose inputs keep their relative positions.
Gadget make_clause_harness(int alpha, int beta);

// Angles of the flag and split pieces (degrees), from the law of cosines on the four lengths.
struct ReductionAngles {
    double bcd, bca, fcd, hcg, chm, lambda;
    double split_small, split_base, transmission_base;
};
ReductionAngles reduction_angles();

// ---------------------------------------------------------------------------------------------
// Full reduction

struct HardInstance {
    Gadget gadget;                       // the whole construction
    MonotoneRectRep layout;              // transformed representation it was built from
    Formula formula;                     // padded
    std::vector<int> truth_leaf;         // per variable (1-based; entry 0 unused)
    std::vector<Triple> truth_cell;      // lower split's first frame per variable
    std::vector<std::array<int, 3>> clause_vars;     // variable feeding C1, C2, C3
    std::vector<std::array<int, 3>> clause_outputs;  // leaf ids of out1 (flag a), out2, out3
    std::vector<std::array<Triple, 3>> clause_output_cells;
};

HardInstance reduce(const Formula& formula, const MonotoneRectRep& rep);
HardInstance reduce(const Formula& formula);  // auto_layout + transform

// Planar drawing of the construction for a satisfying assignment (frame on the lattice, leaves chosen by 2SAT,
// flags by local search). Throws std::invalid_argument when the assignment is not satisfying and
// std::runtime_error if no drawing is found.
Realization witness_realization(const HardInstance& inst, const std::vector<bool>& assignment);

// Fixed frame drawing plus a side choice per leaf; exact for leaves hanging off frame edges.
struct LeafPlacementOptions {
    std::vector<std::pair<int, bool>> forced;  // (leaf id, apex on the left of u->v)
    std::vector<std::pair<Point, Point>> obstacles;  // extra fixed segments
};
std::optional<Realization> place_leaves(const Gadget& gd, const Realization& fixed,
                                        const LeafPlacementOptions& opt = {});

// Provenance sidecar: gadget tag per triangle and the convention table.
std::string provenance_text(const HardInstance& inst);

}  // namespace fepr
