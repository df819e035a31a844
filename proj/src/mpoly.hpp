#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace g4 {

// Ordered list of named variables with positive integer weights.  Immutable,
// shared between all polynomials of one ring.
class VarTable {
public:
    static std::shared_ptr<const VarTable> make(std::vector<std::string> names,
                                                std::vector<int> weights = {});

    int arity() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    int weight(int i) const { return weights_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& weights() const { return weights_; }
    std::optional<int> index_of(const std::string& name) const;

    bool same_as(const VarTable& other) const {
        return names_ == other.names_ && weights_ == other.weights_;
    }

private:
    VarTable(std::vector<std::string> n, std::vector<int> w)
        : names_(std::move(n)), weights_(std::move(w)) {}
    std::vector<std::string> names_;
    std::vector<int> weights_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

using Exponents = std::vector<int>;

// Graded lexicographic order (total degree first, then lex in table order).
// Used for canonical term iteration and printing only.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class MPoly {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    MPoly() = default; // zero polynomial over the empty table; placeholder only
    explicit MPoly(VarTablePtr vars) : vars_(std::move(vars)) {}

    static MPoly constant(VarTablePtr vars, const Rational& c);
    static MPoly variable(VarTablePtr vars, int index, int power = 1);
    static MPoly monomial(VarTablePtr vars, Exponents e, const Rational& c);

    const VarTablePtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // requires is_constant()

    Rational coeff(const Exponents& e) const;
    // Coefficient of a monomial given as {var index -> exponent}.
    Rational coeff_of(const std::map<int, int>& e) const;

    int total_degree() const;   // -1 for the zero polynomial
    int degree_in(int var) const;
    int weighted_degree() const;
    int low_weighted_degree() const; // minimal weighted degree of a term
    bool is_homogeneous(int* deg = nullptr) const;
    bool is_weighted_homogeneous(int* deg = nullptr) const;
    bool uses_var(int var) const { return degree_in(var) > 0; }

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const Rational& c);

    MPoly derivative(int var) const;

    // Decomposition into weighted-homogeneous parts, keyed by weighted degree.
    std::map<int, MPoly> weighted_components() const;

    // Ring homomorphism determined by var -> image.  Variables without an
    // image are carried over to the variable of the same name in `target`;
    // if no such variable exists this is a structural error.
    MPoly substitute(const std::map<int, MPoly>& images, const VarTablePtr& target) const;
    MPoly substitute_names(const std::map<std::string, MPoly>& images,
                           const VarTablePtr& target) const;

    Rational eval(const std::vector<Rational>& point) const;
    MPoly translate(const std::vector<Rational>& shift) const; // x_i -> x_i + shift_i
    // x_i -> sum_j M[i][j] * x_j (square matrix over the same table).
    MPoly linear_change(const std::vector<std::vector<Rational>>& m) const;

    // Coefficients with respect to one variable; result[k] has v-exponent 0.
    std::vector<MPoly> coeffs_in(int var) const;
    static MPoly from_coeffs_in(int var, const std::vector<MPoly>& coeffs);

    std::string str() const;

private:
    void add_term(const Exponents& e, const Rational& c);
    void require_same_table(const MPoly& o) const;

    VarTablePtr vars_;
    TermMap terms_;
    friend MPoly operator*(const MPoly&, const MPoly&);
};

MPoly operator+(MPoly a, const MPoly& b);
MPoly operator-(MPoly a, const MPoly& b);
MPoly operator*(const MPoly& a, const MPoly& b);
MPoly operator*(const Rational& c, MPoly a);
MPoly operator*(MPoly a, const Rational& c);
bool operator==(const MPoly& a, const MPoly& b);
inline bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
MPoly pow(const MPoly& a, int n);

// Exact division; nullopt when b does not divide a.
std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b);
MPoly divide_exact(const MPoly& a, const MPoly& b);

// Gcd over Q[x_1..x_n], normalized to be primitive over Z with positive
// leading (graded-lex) coefficient.  Constants gcd to 1.
MPoly gcd(const MPoly& a, const MPoly& b);

// Squarefree decomposition of a univariate polynomial or a binary form:
// pairwise-coprime squarefree factors with multiplicities, product equal to
// the input up to a rational unit (gcd-chain construction).
std::vector<std::pair<MPoly, int>> squarefree_factor(const MPoly& f);

// Sylvester-matrix resultant eliminating `var`.  Convention: the first
// deg_v(g) rows carry f's coefficients (highest degree leftmost), the
// remaining deg_v(f) rows carry g's.
MPoly resultant(const MPoly& f, const MPoly& g, int var);

// Projective roots of a binary form over Q, with multiplicities; roots not
// defined over Q are reported as conjugate packets (size, multiplicity).
struct BinaryRoots {
    std::vector<std::pair<std::array<Rational, 2>, int>> rational;
    std::vector<std::pair<int, int>> conjugate_packets; // (#roots, multiplicity)
    int max_multiplicity = 0;
};
BinaryRoots binary_form_roots(const MPoly& f);

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q, used by root finding and gcd chains.

struct UPoly {
    std::vector<Rational> c; // c[i] = coefficient of x^i; trailing zeros trimmed

    UPoly() = default;
    explicit UPoly(std::vector<Rational> cc) : c(std::move(cc)) { trim(); }
    static UPoly constant(const Rational& v);

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rational& lead() const { return c.back(); }
    Rational eval(const Rational& x) const;
    UPoly derivative() const;
    int order_at_zero() const; // multiplicity of the root x = 0
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly operator*(const Rational& s, const UPoly& a);
bool operator==(const UPoly& a, const UPoly& b);
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b); // monic
UPoly make_monic(UPoly a);
int order_at(const UPoly& f, const Rational& a); // multiplicity of root x = a

// All rational roots with multiplicities (rational root theorem + deflation).
std::vector<std::pair<Rational, int>> rational_roots(const UPoly& f);

// View an MPoly that involves only `var` as a dense univariate polynomial.
UPoly as_univariate(const MPoly& f, int var);
MPoly from_univariate(const UPoly& u, const VarTablePtr& vars, int var);

std::vector<Integer> divisors(Integer n); // positive divisors of |n|, n != 0

} // namespace g4
