#pragma once

#include "mpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace g4 {

// A rational divisor class in the basis (lambda, delta0, delta1, delta2).
struct DivClass {
    Rational lambda, d0, d1, d2;

    DivClass() : lambda(0), d0(0), d1(0), d2(0) {}
    DivClass(Rational l, Rational a, Rational b, Rational c)
        : lambda(std::move(l)), d0(std::move(a)), d1(std::move(b)), d2(std::move(c)) {}

    DivClass operator+(const DivClass& o) const;
    DivClass operator-(const DivClass& o) const;
    DivClass operator*(const Rational& c) const;
    bool operator==(const DivClass& o) const;

    std::string str() const;
};

DivClass lambda_class();
DivClass delta_class(int i); // i in {0,1,2}

// K = 13 lambda - 2 delta.
DivClass canonical_class();

// K + alpha delta = (13, alpha-2, alpha-2, alpha-2).
DivClass hk_divisor(const Rational& alpha);

// The polarizations of the contracted models, as pushforward coordinates
// with the contracted classes set to zero: delta1 always, delta2 for
// alpha <= 19/29.
DivClass L_alpha(const Rational& alpha);    // alpha in (5/9, 2/3)
DivClass L_alpha_tag(const std::string& t); // "2/3-eps" for the wall limit

struct VgitPolarizationParams {
    std::optional<Rational> s, t; // s t = 1 when both given
};

// (34s-33) lambda - (4s-4) d0 - (14s-15) d1 - (18s-21) d2.
DivClass vgit_pullback(const VgitPolarizationParams& p);

Rational t_of_alpha(const Rational& alpha); // (34a-16)/(33a-14)
Rational alpha_of_t(const Rational& t);     // (14t-16)/(33t-34)

struct WallRecord {
    int index; // 1..9; the fifth wall carries three sub-rows
    Rational alpha;
    std::string locus_removed;
    std::string singularity_introduced;
};

std::vector<WallRecord> walls();

struct IdentityReport {
    struct Item {
        std::string id;
        bool pass;
        std::string lhs, rhs;
    };
    std::vector<Item> items;
    bool all_pass() const;
    const Item* find(const std::string& id) const;
};

// Exact verification of the projectivity identities: the nef combination,
// the symbolic-epsilon ample combination, the contraction pullback solve,
// the log-canonical decomposition in symbolic alpha, and the polarization
// proportionality at s = 17/14.
IdentityReport verify_identities();

// ---------------------------------------------------------------------------
// Univariate rational functions over Q, for the symbolic identities.

struct RatFunc {
    UPoly num, den; // den monic, gcd(num, den) = 1; zero is num = 0, den = 1

    static RatFunc zero();
    static RatFunc constant(const Rational& c);
    static RatFunc variable(); // the indeterminate itself
    static RatFunc of(UPoly n, UPoly d);

    bool is_zero() const { return num.is_zero(); }
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
    std::string str() const;
};

} // namespace g4
