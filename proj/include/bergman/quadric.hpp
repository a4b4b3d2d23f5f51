#ifndef BERGMAN_QUADRIC_HPP
#define BERGMAN_QUADRIC_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bergman/point.hpp"

namespace bergman {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Parameters A = (A_1,...,A_n), 0 <= A_1 <= ... <= A_n < 1/2, of the real
// ellipsoid E(A) = { 1 - |z|^2 - sum A_j (z_j^2 + zbar_j^2) > 0 }.
struct EllipsoidParams {
    std::vector<double> A;

    int n() const { return static_cast<int>(A.size()); }
    void validate() const;  // ordering and range invariants
};

// Complex affine map z -> M z + xi.
struct AffineMap {
    CMatrix M;
    CVector xi;

    static AffineMap identity(int n);
    AffineMap inverse() const;
    double condition() const;  // of M
    CVector apply(const CVector& z) const { return M * z + xi; }
};

// Real-valued quadric r(z, zbar) = z^H H z + Re(z^T B z) + 2 Re(l^T z) + r0
// with H Hermitian and B complex symmetric.  This pairing convention is
// fixed here and used by all I/O.
struct RealQuadric {
    CMatrix H;
    CMatrix B;
    CVector l;
    double r0 = 0.0;

    int n() const { return static_cast<int>(H.rows()); }
    double eval(const CVector& z) const;
    // Quadratic part as a real symmetric 2n x 2n form on (x_1..x_n, y_1..y_n).
    RMatrix real_quadratic_form() const;
    // Substitute z = M zeta + t; returns the quadric in zeta.
    RealQuadric pullback(const CMatrix& M, const CVector& t) const;
    RealQuadric pullback(const AffineMap& phi) const {
        return pullback(phi.M, phi.xi);
    }
};

// f_A = 1 - |z|^2 - sum A_j (z_j^2 + zbar_j^2).
RealQuadric defining_poly(const EllipsoidParams& params);

enum class QuadricClass { PositiveDefinite, NegativeDefinite, IndefiniteOrDegenerate };

struct QuadricClassification {
    QuadricClass cls;
    double margin;  // smallest |eigenvalue| of the real form
};

QuadricClassification classify_quadric(const RealQuadric& q);

// Takagi factorization B = U diag(sigma) U^T with U unitary and sigma >= 0
// ascending, computed through the real symmetric embedding
// [[Re B, Im B], [Im B, -Re B]].
struct TakagiResult {
    CMatrix U;
    RVector sigma;
};
TakagiResult takagi_factor(const CMatrix& B);

struct NormalizationResult {
    AffineMap phi;           // z -> normalized coordinates
    EllipsoidParams params;  // recovered A
    double lambda;           // lambda * (q o phi^{-1}) = f_A
    double residual;         // coefficient-wise defect of that identity
};

// Affine normalization of a definite quadric with bounded nonempty
// {q > 0}: sign-normalize, Cholesky-reduce the Hermitian part, Takagi-
// diagonalize the symmetric part, translate, scale.
NormalizationResult normalize_ellipsoid(const RealQuadric& q);

}  // namespace bergman

#endif
