#pragma once

#include "mpoly.hpp"

#include <cstdint>
#include <vector>

namespace g4::testing {

// Deterministic xorshift generator so property tests are reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    uint64_t next() {
        uint64_t x = state_;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return state_ = x;
    }

    int range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    Rational rational(int max_abs = 6, int max_den = 4) {
        int n = range(-max_abs, max_abs);
        int d = range(1, max_den);
        return Rational(n, d);
    }

    Rational nonzero_rational(int max_abs = 6, int max_den = 4) {
        while (true) {
            Rational q = rational(max_abs, max_den);
            if (q != 0) return q;
        }
    }

    MPoly poly(const VarTablePtr& vars, int max_degree, int terms, int max_abs = 5) {
        MPoly p(vars);
        for (int t = 0; t < terms; ++t) {
            Exponents e(vars->arity(), 0);
            int budget = range(0, max_degree);
            for (int i = 0; i < vars->arity() && budget > 0; ++i) {
                e[i] = range(0, budget);
                budget -= e[i];
            }
            p += MPoly::monomial(vars, e, rational(max_abs));
        }
        return p;
    }

    MPoly nonzero_poly(const VarTablePtr& vars, int max_degree, int terms) {
        while (true) {
            MPoly p = poly(vars, max_degree, terms);
            if (!p.is_zero()) return p;
        }
    }

    // Random invertible 2x2 rational matrix (via random elementary operations).
    std::vector<std::vector<Rational>> gl2() {
        std::vector<std::vector<Rational>> m{{Rational(1), Rational(0)},
                                             {Rational(0), Rational(1)}};
        for (int step = 0; step < 4; ++step) {
            int op = range(0, 2);
            Rational c = nonzero_rational(3, 2);
            if (op == 0) { // row add
                m[0][0] += c * m[1][0];
                m[0][1] += c * m[1][1];
            } else if (op == 1) {
                m[1][0] += c * m[0][0];
                m[1][1] += c * m[0][1];
            } else { // scale a row
                m[range(0, 1)][0] *= c;
                m[range(0, 1)][1] *= c;
            }
        }
        return m;
    }

    std::vector<std::vector<Rational>> gln(int n, int steps = 8) {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i) m[i][i] = 1;
        for (int step = 0; step < steps; ++step) {
            int i = range(0, n - 1), j = range(0, n - 1);
            if (i == j) continue;
            Rational c = nonzero_rational(2, 2);
            for (int k = 0; k < n; ++k) m[i][k] += c * m[j][k];
        }
        return m;
    }

private:
    uint64_t state_;
};

} // namespace g4::testing
