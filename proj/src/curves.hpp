#pragma once

#include "germ.hpp"
#include "quadric.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace g4 {

// Ambient spaces.  Variable conventions:
//   P1xP1:         ([x:y], [u:v]), bihomogeneous equations
//   WeightedPlane: [x:y:z] with the given weights
//   CI in P3:      [x0:x1:x2:x3], quadric and cubic
struct P1xP1Ambient {
    bool operator==(const P1xP1Ambient&) const { return true; }
};
struct WeightedPlaneAmbient {
    std::array<int, 3> weights;
    bool operator==(const WeightedPlaneAmbient& o) const { return weights == o.weights; }
};
struct CIAmbient {
    MPoly quadric;
    MPoly cubic;
};

using Ambient = std::variant<P1xP1Ambient, WeightedPlaneAmbient, CIAmbient>;

struct CurveSpec {
    Ambient ambient;
    MPoly equation; // unused for CI (the pair lives in the ambient)
    std::vector<std::pair<MPoly, int>> components; // optional factorization
    std::vector<std::string> tags;

    bool has_tag(const std::string& t) const;
};

// z^2 = f(x,y) in P(1,1,g+1); f is a binary form of degree 2g+2 or zero.
struct WeierstrassCurve {
    int g;
    MPoly f; // in a two-variable ring (x, y)
};

VarTablePtr p1xp1_vars();
VarTablePtr wp_vars(const std::array<int, 3>& weights);
VarTablePtr ci_vars();
VarTablePtr binary_vars();

void validate(const CurveSpec& c);

int arithmetic_genus(const CurveSpec& c);
inline int arithmetic_genus(const WeierstrassCurve& w) { return w.g; }

struct InventoryEntry {
    std::string chart;            // "y=1,v=1", "x=1", "vertex", "plane x0=0", ...
    std::vector<Rational> point;  // affine chart coordinates; empty for orbits
    GermClass cls;
    int orbit_size = 1;
    std::string note;
};

struct SingularityInventory {
    std::vector<InventoryEntry> entries;
    int total_delta = 0;
    bool certified_complete = false;
    std::vector<std::string> warnings;

    void recompute_delta();
    int count(GermKind kind, int k = -1) const; // entries counted with orbit size
};

struct ComponentInfo {
    int geometric_genus = 0;
    int orbit_size = 1;
    int degree = 0; // space degree; 0 when unknown
    std::string label;
};

struct Incidence {
    int entry = 0;     // index into inventory.entries
    int component = 0; // index into components
    int branches = 1;  // branches of that entry on that component
};

struct ComponentModel {
    std::vector<ComponentInfo> components;
    std::vector<Incidence> incidences;
};

// All singular points with rational coordinates, chart by chart.  Points with
// irrational coordinates are not returned; completeness is certified by the
// genus budget instead.
std::vector<std::pair<std::string, std::vector<Rational>>>
rational_singular_points(const CurveSpec& c);

SingularityInventory singularity_inventory(const CurveSpec& c,
                                           const std::vector<InventoryEntry>& extra = {});

// p_a = sum of geometric genera + total delta - #components + 1; sets
// certified_complete accordingly.
bool genus_budget_check(SingularityInventory& inv, const ComponentModel& model, int p_a);

// True iff removing the two-branch entry disconnects the component graph.
bool separating_check(const SingularityInventory& inv, int entry_index,
                      const ComponentModel& model);

SingularityInventory weierstrass_singularities(const WeierstrassCurve& w);
ComponentModel weierstrass_component_model(const WeierstrassCurve& w);

// Structural summary consumed by the stability rule engines.
struct CurveStructure {
    int quadric_rank = 4;
    bool reduced = true;
    bool ribbon = false;
    bool triborough = false;
    std::optional<GermClass> vertex_entry;
    std::vector<int> component_degrees; // from supplied factorization; empty if unknown
    SingularityInventory inventory;
};

CurveStructure curve_structure(const CurveSpec& c,
                               const std::vector<InventoryEntry>& extra = {});

// Space degree of a divisor on the ambient (bidegree sum on the quadric,
// weighted degree on the cone).
int component_space_degree(const CurveSpec& c, const MPoly& component);

// Writes a hyperelliptic curve z^2 + p(x,y) z + q(x,y) on P(1,1,g+1) as a
// Weierstrass curve by completing the square.
WeierstrassCurve weierstrass_from_weighted_plane(const CurveSpec& c);

} // namespace g4
