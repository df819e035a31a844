#pragma once

#include "mpoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace g4 {

// A one-parameter subgroup acting diagonally with integer weights.
struct OnePS {
    std::map<int, int> weights; // variable index -> weight; must cover all used vars
};

// Pushforward limit lim_{t->0} rho(t)_* V(f).  Convention: rho(t)_* V(f) =
// V(f(t^{-w_i} x_i)); clearing the minimal power of t and setting t = 0
// keeps the terms of maximal rho-weight sum(w_i e_i).  Worked example:
// rho(t).[x,y,z] = [x, t^-1 y, t z] on y^2z^2 + Bx^3yz + Ax^6 + y^2h4 gives
// y^2z^2 + Bx^3yz + Ax^6: the h4-terms carry t^2 and beyond and vanish.
MPoly one_ps_limit(const MPoly& f, const OnePS& rho);

// ---------------------------------------------------------------------------
// Normal forms at the cone vertex of P(1,1,2).

struct UnipotentTransform {
    Rational v; // x -> x + v y
    MPoly q;    // z -> z + q(x,y), q a binary quadratic
};

struct NormalFormA3 {
    Rational A, B;
    MPoly h4;            // binary quartic in (x, y)
    UnipotentTransform transform;
    MPoly standard_form; // y^2 z^2 + B x^3 y z + A x^6 + y^2 h4
};

// The tacnode normal form: takes an aligned sextic y^2 z^2 + g4 z + g6 with
// an A3 singularity at the vertex and computes the unique unipotent
// automorphism bringing it to the standard form.  4A = B^2 is the ribbon
// direction where the construction degenerates.
NormalFormA3 a3_normal_form(const MPoly& F);

// Linear step: moves the vertex tangent line to (y = 0), i.e. brings the
// z^2-coefficient to exactly y^2.  Requires the coefficient to be a nonzero
// rank-1 quadratic (multiplicity-2 vertex with a single tangent).
MPoly align_vertex_tangent(const MPoly& F);

struct NormalFormA4 {
    MPoly normalized; // y^2z^2 - 2x^3yz + x^6 - x^5y + y^2 h4
    MPoly h4;
};

// The ramphoid-cusp normal form at the vertex (cover of type A7): tangent
// alignment, the shear killing the low quartic, the two rescalings pinning
// b6 = 1 and b5 = -1.  The final rescale acts through the square of the
// scaling parameter, so the output is rational even when the parameter is
// not.
NormalFormA4 a4_vertex_normal_form(const MPoly& F);

// ---------------------------------------------------------------------------
// Test configurations: equivariant families plus the substitution identities
// that pin their special fibers.

struct IdentityCheck {
    std::string label;
    MPoly source;            // used when source_equation < 0
    int source_equation = -1; // index into TestConfiguration::equations
    std::map<std::string, MPoly> images; // source var name -> image in target
    VarTablePtr target;
    MPoly expected;
};

struct TestConfiguration {
    VarTablePtr vars; // family ring, parameter included
    std::vector<MPoly> equations;
    std::map<int, int> gm_weights; // variable index -> Gm-weight
    std::vector<IdentityCheck> checks;
};

struct TCReport {
    struct Item {
        std::string name;
        bool pass;
        std::string lhs, rhs;
    };
    std::vector<Item> items;
    bool all_pass() const;
};

TCReport verify_test_configuration(const TestConfiguration& tc);

// The cone family contracting an A4-vertex sextic (with quartic tail data
// b0..b4) to the two-cusp hyperelliptic curve, with its three fiber checks.
TestConfiguration a4_cone_family(const std::vector<Rational>& b);

// The normalized A4-vertex sextic with tail h4 = sum b_i x^i y^(4-i).
MPoly a4_normal_sextic(const std::vector<Rational>& b);

} // namespace g4
