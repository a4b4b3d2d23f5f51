#include "bergman/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

void EllipsoidParams::validate() const {
    double prev = 0.0;
    for (double a : A) {
        if (a < prev - 1e-15 || a < 0.0 || a >= 0.5) {
            std::ostringstream os;
            os << "ellipsoid params: need 0 <= A_1 <= ... <= A_n < 1/2";
            throw ValidationError(os.str());
        }
        prev = a;
    }
    if (A.empty()) throw ValidationError("ellipsoid params: empty A");
}

AffineMap AffineMap::identity(int n) {
    return {CMatrix::Identity(n, n), CVector::Zero(n)};
}

AffineMap AffineMap::inverse() const {
    Eigen::FullPivLU<CMatrix> lu(M);
    if (!lu.isInvertible()) throw ValidationError("affine map: singular M");
    CMatrix Mi = lu.inverse();
    return {Mi, -(Mi * xi)};
}

double AffineMap::condition() const {
    Eigen::JacobiSVD<CMatrix> svd(M);
    const auto& s = svd.singularValues();
    return s(0) / std::max(s(s.size() - 1), 1e-300);
}

double RealQuadric::eval(const CVector& z) const {
    Complex hermit = (z.adjoint() * H * z)(0);
    Complex sym = (z.transpose() * B * z)(0);
    Complex lin = (l.transpose() * z)(0);
    return hermit.real() + sym.real() + 2.0 * lin.real() + r0;
}

RMatrix RealQuadric::real_quadratic_form() const {
    int n = this->n();
    auto r2 = [&](const CVector& z) {
        Complex hermit = (z.adjoint() * H * z)(0);
        Complex sym = (z.transpose() * B * z)(0);
        return hermit.real() + sym.real();
    };
    auto basis = [&](int a) {
        CVector z = CVector::Zero(n);
        if (a < n) z(a) = Complex(1, 0);
        else z(a - n) = Complex(0, 1);
        return z;
    };
    RMatrix Q(2 * n, 2 * n);
    for (int a = 0; a < 2 * n; ++a) Q(a, a) = r2(basis(a));
    for (int a = 0; a < 2 * n; ++a) {
        for (int b = a + 1; b < 2 * n; ++b) {
            double v = r2(basis(a) + basis(b)) - Q(a, a) - Q(b, b);
            Q(a, b) = Q(b, a) = 0.5 * v;
        }
    }
    return Q;
}

RealQuadric RealQuadric::pullback(const CMatrix& M, const CVector& t) const {
    RealQuadric out;
    out.H = M.adjoint() * H * M;
    CMatrix B2 = M.transpose() * B * M;
    out.B = 0.5 * (B2 + B2.transpose());
    // l'^T = t^H H M + t^T B M + l^T M
    out.l = (t.adjoint() * H * M + t.transpose() * B * M +
             l.transpose() * M).transpose();
    Complex hermit = (t.adjoint() * H * t)(0);
    Complex sym = (t.transpose() * B * t)(0);
    Complex lin = (l.transpose() * t)(0);
    out.r0 = hermit.real() + sym.real() + 2.0 * lin.real() + r0;
    return out;
}

RealQuadric defining_poly(const EllipsoidParams& params) {
    params.validate();
    int n = params.n();
    RealQuadric q;
    q.H = -CMatrix::Identity(n, n);
    q.B = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) q.B(j, j) = Complex(-2.0 * params.A[j], 0.0);
    q.l = CVector::Zero(n);
    q.r0 = 1.0;
    return q;
}

QuadricClassification classify_quadric(const RealQuadric& q) {
    RMatrix Q = q.real_quadratic_form();
    Eigen::SelfAdjointEigenSolver<RMatrix> es(Q);
    const auto& ev = es.eigenvalues();
    double emin = ev(0), emax = ev(ev.size() - 1);
    double margin = std::min(std::abs(emin), std::abs(emax));
    double scale = std::max(std::abs(emin), std::abs(emax));
    QuadricClassification out{QuadricClass::IndefiniteOrDegenerate, margin};
    if (scale == 0.0) return out;
    if (margin <= 1e-10 * scale) return out;  // degenerate
    if (emin > 0.0) out.cls = QuadricClass::PositiveDefinite;
    else if (emax < 0.0) out.cls = QuadricClass::NegativeDefinite;
    return out;
}

TakagiResult takagi_factor(const CMatrix& B) {
    int n = static_cast<int>(B.rows());
    RMatrix S = B.real(), T = B.imag();
    RMatrix M(2 * n, 2 * n);
    M << S, T, T, -S;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(M);
    // top n eigenvalues (ascending) are the nonnegative Takagi values
    TakagiResult out;
    out.sigma = RVector(n);
    out.U = CMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        int idx = n + k;
        out.sigma(k) = std::max(es.eigenvalues()(idx), 0.0);
        RVector col = es.eigenvectors().col(idx);
        for (int j = 0; j < n; ++j) out.U(j, k) = Complex(col(j), col(n + j));
    }
    // complex Gram-Schmidt guards the sigma = 0 block and tiny eigen noise
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < k; ++j) {
            Complex proj = (out.U.col(j).adjoint() * out.U.col(k))(0);
            out.U.col(k) -= proj * out.U.col(j);
        }
        double nn = out.U.col(k).norm();
        if (nn < 1e-8) {
            throw ConvergenceError("takagi: degenerate eigenvector basis");
        }
        out.U.col(k) /= nn;
    }
    return out;
}

NormalizationResult normalize_ellipsoid(const RealQuadric& q_in) {
    auto cls = classify_quadric(q_in);
    if (cls.cls == QuadricClass::IndefiniteOrDegenerate) {
        throw ValidationError(
            "normalize: quadratic part indefinite or degenerate");
    }
    // The bounded component convention {q > 0} requires the quadratic part
    // to open downward; work on g = -q which is then positive definite.
    if (cls.cls == QuadricClass::PositiveDefinite) {
        throw ValidationError(
            "normalize: {q > 0} is unbounded for a positive-definite "
            "quadratic part");
    }
    int n = q_in.n();
    RealQuadric g = q_in;
    g.H = -g.H;
    g.B = -g.B;
    g.l = -g.l;
    g.r0 = -g.r0;

    // (ii) Cholesky-reduce the Hermitian part to the identity.
    Eigen::LLT<CMatrix> llt(g.H);
    if (llt.info() != Eigen::Success) {
        throw ValidationError("normalize: Hermitian part not positive definite");
    }
    CMatrix L = llt.matrixL();
    CMatrix C = L.adjoint().inverse();
    RealQuadric g1 = g.pullback(C, CVector::Zero(n));

    // (iii) Takagi-diagonalize the complex symmetric part by a unitary.
    TakagiResult tak = takagi_factor(g1.B);
    CMatrix W = tak.U.conjugate();
    RealQuadric g2 = g1.pullback(W, CVector::Zero(n));

    if (tak.sigma(n - 1) >= 1.0) {
        throw ValidationError(
            "normalize: not a bounded ellipsoid (A_n >= 1/2 after reduction)");
    }

    // (iv) translate so the linear terms vanish:
    // conj(xi0) + Sigma xi0 + l = 0 with Sigma = diag(sigma).
    RVector sig = tak.sigma;
    CVector xi0(n);
    for (int j = 0; j < n; ++j) {
        double a = -g2.l(j).real() / (1.0 + sig(j));
        double b = g2.l(j).imag() / (1.0 - sig(j));
        xi0(j) = Complex(a, b);
    }
    RealQuadric g3 = g2.pullback(CMatrix::Identity(n, n), xi0);

    if (!(g3.r0 < 0.0)) {
        throw ValidationError("normalize: {q > 0} is empty");
    }
    // (v) scale the constant to -1: zeta = c zeta'.
    double c = std::sqrt(-g3.r0);
    double lambda = 1.0 / (-g3.r0);

    NormalizationResult out;
    out.lambda = lambda;
    out.params.A.resize(n);
    for (int j = 0; j < n; ++j) out.params.A[j] = 0.5 * sig(j);
    out.params.validate();

    CMatrix M_total = C * W * c;   // z = M_total zeta' + t_total
    CVector t_total = C * W * xi0;
    AffineMap phi_inverse{M_total, t_total};
    out.phi = phi_inverse.inverse();

    // coefficient-wise defect of lambda * (q o phi^{-1}) = f_A
    RealQuadric check = q_in.pullback(phi_inverse);
    RealQuadric target = defining_poly(out.params);
    double resid = 0.0;
    resid = std::max(resid,
                     (lambda * check.H - target.H).cwiseAbs().maxCoeff());
    resid = std::max(resid,
                     (lambda * check.B - target.B).cwiseAbs().maxCoeff());
    resid = std::max(resid,
                     (lambda * check.l - target.l).cwiseAbs().maxCoeff());
    resid = std::max(resid, std::abs(lambda * check.r0 - target.r0));
    out.residual = resid;
    if (resid > 1e-10) {
        std::ostringstream os;
        os << "normalize: coefficient residual " << resid << " exceeds 1e-10";
        throw ConvergenceError(os.str());
    }
    return out;
}

}  // namespace bergman
