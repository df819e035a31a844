#include "quadric.hpp"

#include "errors.hpp"

#include <algorithm>

namespace g4 {

Mat identity_matrix(int n) {
    Mat m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    int n = static_cast<int>(a.size());
    int k = static_cast<int>(b.size());
    int m = static_cast<int>(b[0].size());
    Mat r(n, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < k; ++l) r[i][j] += a[i][l] * b[l][j];
    return r;
}

std::vector<Rational> mat_apply(const Mat& a, const std::vector<Rational>& v) {
    std::vector<Rational> r(a.size(), Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

int mat_rank(Mat a) {
    int n = static_cast<int>(a.size());
    int m = n ? static_cast<int>(a[0].size()) : 0;
    int rank = 0;
    for (int col = 0; col < m && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (a[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[rank][col];
            for (int c = col; c < m; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

Mat mat_inverse(const Mat& a) {
    int n = static_cast<int>(a.size());
    Mat m = a;
    Mat inv = identity_matrix(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) throw structural_error("matrix is singular");
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        Rational d = m[col][col];
        for (int c = 0; c < n; ++c) { m[col][c] /= d; inv[col][c] /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (int c = 0; c < n; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

Mat gram_matrix(const MPoly& q) {
    int n = q.vars()->arity();
    int deg = 0;
    if (!q.is_homogeneous(&deg) || deg != 2)
        throw domain_error(domain_fault::unsupported, "not a homogeneous quadratic form");
    Mat a(n, std::vector<Rational>(n, Rational(0)));
    for (auto& [e, c] : q.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < n; ++v) {
            if (e[v] == 2) { i = j = v; break; }
            if (e[v] == 1) { (i < 0 ? i : j) = v; }
        }
        if (i == j) a[i][i] = c;
        else { a[i][j] = c / 2; a[j][i] = c / 2; }
    }
    return a;
}

int quadric_rank(const MPoly& q) {
    if (q.vars()->arity() != 4)
        throw domain_error(domain_fault::unsupported, "quadric_rank expects 4 variables");
    return mat_rank(gram_matrix(q));
}

namespace {

Rational quad_value(const Mat& a, const std::vector<Rational>& v) {
    Rational s(0);
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) s += a[i][j] * v[i] * v[j];
    return s;
}

Rational bilinear(const Mat& a, const std::vector<Rational>& v, const std::vector<Rational>& w) {
    Rational s(0);
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < w.size(); ++j) s += a[i][j] * v[i] * w[j];
    return s;
}

bool is_zero_vec(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Bounded search for a nonzero isotropic vector of the restriction of the
// form to the span of `basis`.  The forms normalized here come from rational
// coordinate changes of split forms, so small solutions exist.
std::vector<Rational> find_isotropic(const Mat& a, const std::vector<std::vector<Rational>>& basis) {
    int k = static_cast<int>(basis.size());
    // restricted gram matrix
    Mat g(k, std::vector<Rational>(k, Rational(0)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) g[i][j] = bilinear(a, basis[i], basis[j]);
    auto lift = [&](const std::vector<Rational>& c) {
        std::vector<Rational> v(basis[0].size(), Rational(0));
        for (int i = 0; i < k; ++i)
            for (size_t j = 0; j < v.size(); ++j) v[j] += c[i] * basis[i][j];
        return v;
    };
    // basis vectors themselves first
    for (int i = 0; i < k; ++i)
        if (g[i][i] == 0) {
            std::vector<Rational> c(k, Rational(0));
            c[i] = 1;
            return lift(c);
        }
    // pairwise: c_i e_i + e_j isotropic iff g_ii c^2 + 2 g_ij c + g_jj = 0
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            Rational disc = g[i][j] * g[i][j] - g[i][i] * g[j][j];
            auto r = rational_sqrt_exact(disc);
            if (!r) continue;
            Rational c = (-g[i][j] + *r) / g[i][i];
            std::vector<Rational> cv(k, Rational(0));
            cv[i] = c;
            cv[j] = 1;
            return lift(cv);
        }
    // bounded box search, solving for the last free coordinate exactly
    for (int height : {1, 2, 3, 5, 8, 13, 21}) {
        std::vector<int> idx(k - 1, -height);
        while (true) {
            std::vector<Rational> c(k, Rational(0));
            for (int i = 0; i + 1 < k; ++i) c[i] = idx[i];
            // quadratic in the last coordinate t: g_kk t^2 + 2 B t + Q
            Rational A2 = g[k - 1][k - 1];
            Rational B(0), Q(0);
            for (int i = 0; i + 1 < k; ++i) B += g[k - 1][i] * c[i];
            for (int i = 0; i + 1 < k; ++i)
                for (int j = 0; j + 1 < k; ++j) Q += g[i][j] * c[i] * c[j];
            if (A2 == 0) {
                if (B != 0) {
                    c[k - 1] = -Q / (2 * B);
                    if (!is_zero_vec(c)) return lift(c);
                } else if (Q == 0 && !is_zero_vec(c)) {
                    return lift(c);
                }
            } else {
                Rational disc = B * B - A2 * Q;
                auto r = rational_sqrt_exact(disc);
                if (r) {
                    c[k - 1] = (-B + *r) / A2;
                    if (!is_zero_vec(c)) return lift(c);
                }
            }
            // advance the box counter
            int pos = 0;
            while (pos < k - 1 && ++idx[pos] > height) idx[pos++] = -height;
            if (pos == k - 1) break;
        }
    }
    throw domain_error(domain_fault::not_split,
                       "no rational isotropic vector found for the quadric");
}

// Kernel of a symmetric matrix.
std::vector<std::vector<Rational>> kernel_basis(const Mat& a) {
    int n = static_cast<int>(a.size());
    Mat m = a;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int p = -1;
        for (int r = rank; r < n; ++r)
            if (m[r][col] != 0) { p = r; break; }
        if (p < 0) continue;
        std::swap(m[rank], m[p]);
        Rational d = m[rank][col];
        for (int c = 0; c < n; ++c) m[rank][c] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (int c = 0; c < n; ++c) m[r][c] -= f * m[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> out;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[free] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free];
        out.push_back(v);
    }
    return out;
}

// Vectors completing `have` to a basis of Q^n (greedy over standard basis).
std::vector<std::vector<Rational>> complete_basis(std::vector<std::vector<Rational>> have, int n) {
    std::vector<std::vector<Rational>> out;
    auto rank_of = [&](const std::vector<std::vector<Rational>>& vecs) {
        Mat m(vecs.size(), std::vector<Rational>(n, Rational(0)));
        for (size_t i = 0; i < vecs.size(); ++i) m[i] = vecs[i];
        return mat_rank(m);
    };
    int r = rank_of(have);
    for (int i = 0; i < n && static_cast<int>(have.size()) < n; ++i) {
        std::vector<Rational> e(n, Rational(0));
        e[i] = 1;
        have.push_back(e);
        if (rank_of(have) > r) {
            ++r;
            out.push_back(e);
        } else {
            have.pop_back();
        }
    }
    return out;
}

// B-orthogonal complement of the span of `vs` inside the span of `ambient`.
std::vector<std::vector<Rational>> orthogonal_complement(
    const Mat& a, const std::vector<std::vector<Rational>>& vs,
    const std::vector<std::vector<Rational>>& ambient) {
    // solve bilinear(a, v_i, x) = 0 for x in span(ambient)
    int k = static_cast<int>(ambient.size());
    Mat sys(vs.size(), std::vector<Rational>(k, Rational(0)));
    for (size_t i = 0; i < vs.size(); ++i)
        for (int j = 0; j < k; ++j) sys[i][j] = bilinear(a, vs[i], ambient[j]);
    auto null_coeffs = kernel_basis([&] {
        // make square by padding zero rows (kernel_basis handles rectangular via square pad)
        Mat sq(k, std::vector<Rational>(k, Rational(0)));
        for (size_t i = 0; i < sys.size() && i < static_cast<size_t>(k); ++i) sq[i] = sys[i];
        return sq;
    }());
    std::vector<std::vector<Rational>> out;
    for (auto& c : null_coeffs) {
        std::vector<Rational> v(ambient[0].size(), Rational(0));
        for (int j = 0; j < k; ++j)
            for (size_t t = 0; t < v.size(); ++t) v[t] += c[j] * ambient[j][t];
        out.push_back(v);
    }
    return out;
}

// Hyperbolic partner: u with B(v,u) = 1 and q(u) = 0, inside span(ambient).
std::vector<Rational> hyperbolic_partner(const Mat& a, const std::vector<Rational>& v,
                                         const std::vector<std::vector<Rational>>& ambient) {
    for (auto& w : ambient) {
        Rational b = bilinear(a, v, w);
        if (b == 0) continue;
        // normalize pairing then make isotropic: u = w/b - (q(w/b)/2) v
        std::vector<Rational> u(v.size(), Rational(0));
        for (size_t i = 0; i < u.size(); ++i) u[i] = w[i] / b;
        Rational qu = quad_value(a, u);
        for (size_t i = 0; i < u.size(); ++i) u[i] -= qu / 2 * v[i];
        return u;
    }
    throw domain_error(domain_fault::inconsistent, "isotropic vector pairs with nothing");
}

} // namespace

QuadricNormalization normalize_quadric(const MPoly& q) {
    if (q.vars()->arity() != 4)
        throw domain_error(domain_fault::unsupported, "normalize_quadric expects 4 variables");
    Mat a = gram_matrix(q);
    int rank = mat_rank(a);
    if (rank < 2)
        throw domain_error(domain_fault::unsupported,
                           "quadric of rank < 2 does not contain a (2,3) curve");

    QuadricNormalization out;
    out.rank = rank;
    auto radical = kernel_basis(a);
    std::vector<std::vector<Rational>> full;
    for (int i = 0; i < 4; ++i) {
        std::vector<Rational> e(4, Rational(0));
        e[i] = 1;
        full.push_back(e);
    }
    auto complement = complete_basis(radical, 4);

    if (rank == 4) {
        auto v0 = find_isotropic(a, full);
        auto e3 = hyperbolic_partner(a, v0, full);
        auto rest = orthogonal_complement(a, {v0, e3}, full);
        if (rest.size() != 2)
            throw domain_error(domain_fault::inconsistent, "hyperbolic complement not 2-dimensional");
        auto v1 = find_isotropic(a, rest);
        auto e2 = hyperbolic_partner(a, v1, rest);
        // q = 2 z0 z3 + 2 z1 z2 B(v1, e2); rescale e2 so the pairing is -1
        Rational b12 = bilinear(a, v1, e2); // = 1 after hyperbolic_partner
        for (auto& x : e2) x *= -Rational(1) / b12;
        // columns of C are the basis vectors: x = z0 v0 + z1 v1 + z2 e2 + z3 e3
        Mat c(4, std::vector<Rational>(4));
        for (int i = 0; i < 4; ++i) {
            c[i][0] = v0[i];
            c[i][1] = v1[i];
            c[i][2] = e2[i];
            c[i][3] = e3[i];
        }
        out.kind = QuadricKind::SmoothQuadric;
        out.transform = c;
        out.scale = 2;
        return out;
    }

    if (rank == 3) {
        auto v = find_isotropic(a, complement);
        auto u = hyperbolic_partner(a, v, complement);
        auto wbasis = orthogonal_complement(a, {v, u}, complement);
        if (wbasis.size() != 1)
            throw domain_error(domain_fault::inconsistent, "cone complement not 1-dimensional");
        auto w = wbasis[0];
        Rational d = quad_value(a, w);
        if (d == 0) throw domain_error(domain_fault::inconsistent, "degenerate cone direction");
        // q(z0 v + z1 w + z2 (-d/2 u) + z3 r) = d (z1^2 - z0 z2)
        std::vector<Rational> e2 = u;
        for (auto& x : e2) x *= -d / 2;
        Mat c(4, std::vector<Rational>(4));
        for (int i = 0; i < 4; ++i) {
            c[i][0] = v[i];
            c[i][1] = w[i];
            c[i][2] = e2[i];
            c[i][3] = radical[0][i];
        }
        out.kind = QuadricKind::QuadricCone;
        out.transform = c;
        out.scale = d;
        return out;
    }

    // rank 2: two planes when the binary form splits over Q
    auto v = find_isotropic(a, complement); // throws NotSplit for conjugate planes
    auto u = hyperbolic_partner(a, v, complement);
    Mat c(4, std::vector<Rational>(4));
    for (int i = 0; i < 4; ++i) {
        c[i][0] = v[i];
        c[i][1] = radical[0][i];
        c[i][2] = radical[1][i];
        c[i][3] = u[i];
    }
    out.kind = QuadricKind::TwoPlanes;
    out.transform = c;
    out.scale = 2;
    return out;
}

MPoly apply_transform(const MPoly& f, const Mat& c, const VarTablePtr& target) {
    int n = f.vars()->arity();
    std::map<int, MPoly> images;
    for (int i = 0; i < n; ++i) {
        MPoly im(target);
        for (int j = 0; j < n; ++j)
            if (c[i][j] != 0) im += MPoly::variable(target, j) * c[i][j];
        images.emplace(i, std::move(im));
    }
    return f.substitute(images, target);
}

} // namespace g4
