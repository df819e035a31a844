#pragma once

#include "mpoly.hpp"

#include <array>
#include <vector>

namespace g4 {

using Mat = std::vector<std::vector<Rational>>; // row-major square matrices

Mat identity_matrix(int n);
Mat mat_mul(const Mat& a, const Mat& b);
std::vector<Rational> mat_apply(const Mat& a, const std::vector<Rational>& v);
int mat_rank(Mat a);
Mat mat_inverse(const Mat& a); // throws structural_error when singular

// Gram matrix of a homogeneous quadratic form (with halves on off-diagonals).
Mat gram_matrix(const MPoly& q);

// Rank of the symmetric matrix attached to a quadratic form in 4 variables.
int quadric_rank(const MPoly& q);

enum class QuadricKind { SmoothQuadric, QuadricCone, TwoPlanes };

// Result of bringing a quadratic form to normal coordinates:
//   SmoothQuadric: q(Cz) = scale * (z0 z3 - z1 z2)
//   QuadricCone:   q(Cz) = scale * (z1^2 - z0 z2),  z3 spans the radical
//   TwoPlanes:     q(Cz) = scale * (z0 z3),         z1, z2 span the radical
// `transform` is the matrix C expressing old coordinates in terms of new:
// x_i = sum_j C[i][j] z_j.
struct QuadricNormalization {
    QuadricKind kind;
    int rank;
    Mat transform;
    Rational scale;
};

// Normalizes a rank >= 2 quadratic form over Q.  Throws NotSplit when the
// form has no rational isotropic structure (such forms do not arise from
// coordinate changes of the split normal forms) and Unsupported for rank < 2.
QuadricNormalization normalize_quadric(const MPoly& q);

// Substitute x_i = sum_j C[i][j] z_j into f, producing a polynomial in the
// target ring (same arity).
MPoly apply_transform(const MPoly& f, const Mat& c, const VarTablePtr& target);

} // namespace g4
