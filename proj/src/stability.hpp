#pragma once

#include "curves.hpp"

#include <optional>
#include <string>
#include <vector>

namespace g4 {

enum class StabilityStatus { Stable, StrictlySemistable, Polystable, Unstable };

const char* status_name(StabilityStatus s);

struct Reason {
    std::string rule;   // stable identifier of the clause that fired
    std::string clause; // human-readable statement
    std::string anchor; // claim-registry id
};

struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::Unstable;
    std::vector<Reason> reasons;

    bool semistable() const { return status != StabilityStatus::Unstable; }
};

// ---------------------------------------------------------------------------
// GIT of binary forms / Weierstrass curves.

// Stable iff every root multiplicity is <= g; strictly semistable iff the
// maximum is exactly g+1; unstable beyond.  Within the strictly semistable
// locus, polystable exactly for (l1 l2)^(g+1) with independent linear forms.
StabilityVerdict binary_form_git(const WeierstrassCurve& w);

// ---------------------------------------------------------------------------
// Chow stability of (2,3) complete intersections.

struct ChowInput {
    int quadric_rank = 4; // 2, 3 or 4
    bool reduced = true;
    bool ribbon = false;
    SingularityInventory inventory; // smooth-locus entries; vertex held separately
    std::optional<GermClass> vertex_entry; // rank 3 only
    bool triborough = false;                // rank 2: meets the double line in 3 points
    std::vector<int> component_degrees;     // empty when unknown
    std::optional<ComponentModel> model;    // enables the orbit matcher
    bool allow_uncertified = false;         // record a warning instead of failing
};

StabilityVerdict chow_stability(const ChowInput& in);

// Final VGIT chamber: the Chow verdict, demoted to Unstable for ribbons,
// triboroughs, and curves with a tacnode at the cone vertex.
StabilityVerdict last_chamber_vgit(const ChowInput& in);

// Convenience wrapper computing the structural summary from a curve.
ChowInput chow_input_from_curve(const CurveSpec& c,
                                const std::vector<InventoryEntry>& extra = {},
                                const std::optional<ComponentModel>& model = std::nullopt);

// ---------------------------------------------------------------------------
// Alpha-stability for the chambers above 2/3 - eps.

struct CombComponent {
    int genus = 0;
    std::string label;
};

struct CombTouch {
    int component = 0;
    int branches = 1;
    bool at_weierstrass_point = false;
};

struct CombSingularity {
    GermClass cls; // A(k) or D4
    std::vector<CombTouch> touches;
};

struct CombCurve {
    std::vector<CombComponent> components;
    std::vector<CombSingularity> sings;
    int arithmetic_genus() const;
};

enum class Chamber {
    OpenAbove911,  // (9/11, 1]
    Wall911,       // = 9/11
    Open710To911,  // (7/10, 9/11)
    Wall710,       // = 7/10
    Open23To710,   // (2/3, 7/10)
    Wall23,        // = 2/3
    OpenBelow23,   // (2/3 - eps, 2/3), reachable only by tag
};

struct ChamberRules {
    Chamber id;
    std::string label;
    int max_a; // A_k allowed iff k <= max_a; D4 never allowed in this range
    std::vector<int> forbidden_tail_attach;
    std::vector<std::pair<int, int>> forbidden_chain_attach;
    bool forbid_a1_weierstrass_chains;
};

const std::vector<ChamberRules>& chamber_table();

// Either an exact rational in (2/3, 1] or the open-chamber tag "2/3-eps".
struct AlphaQuery {
    std::optional<Rational> value;
    std::optional<std::string> tag;
    static AlphaQuery of(const Rational& a) { return {a, std::nullopt}; }
    static AlphaQuery of_tag(const std::string& t) { return {std::nullopt, t}; }
};

Chamber chamber_of(const AlphaQuery& q); // throws OutOfRange below 2/3

StabilityVerdict alpha_stability(const CombCurve& c, const AlphaQuery& alpha);

// Structure predicates, exposed for tests.
bool has_ak_attached_elliptic_tail(const CombCurve& c, int k);
bool has_elliptic_chain_attached(const CombCurve& c, int k1, int k2);
bool has_a1_weierstrass_chain(const CombCurve& c);

// ---------------------------------------------------------------------------
// KSBA-side acceptability of the degenerate-surface family members.

struct S2A5Params {
    Rational a, b0, b1, b2, b3;
    bool nonzero() const { return a != 0 || b0 != 0 || b1 != 0 || b2 != 0 || b3 != 0; }
};

// Weierstrass form of one family member: the genus-2 double cover obtained by
// completing the square in the weighted-plane sextic.
WeierstrassCurve s2a5_component_curve(const S2A5Params& p);

StabilityVerdict s2a5_family_filter(const S2A5Params& p1, const S2A5Params& p2);

} // namespace g4
