#include "bergman/convex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/rng.hpp"

namespace bergman {

namespace {

// Real 2n x 2n matrix of the complex-linear map z -> M z acting on
// (x_1..x_n, y_1..y_n).
RMatrix real_embedding(const CMatrix& M) {
    int n = static_cast<int>(M.rows());
    RMatrix R(2 * n, 2 * n);
    R << M.real(), -M.imag(), M.imag(), M.real();
    return R;
}

RVector to_rvec(const std::vector<double>& v) {
    RVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r(i) = v[i];
    return r;
}

}  // namespace

ConvexBody::ConvexBody(const EllipsoidParams& params, const AffineMap& map) {
    params.validate();
    int n = params.n();
    if (map.M.rows() != n) throw ValidationError("convex body: size mismatch");
    // E(A) in real coordinates: sum (1+2A_j) x_j^2 + (1-2A_j) y_j^2 < 1.
    RVector diag(2 * n);
    for (int j = 0; j < n; ++j) {
        diag(j) = 1.0 + 2.0 * params.A[j];
        diag(n + j) = 1.0 - 2.0 * params.A[j];
    }
    RMatrix R = real_embedding(map.M);
    RMatrix Q0_inv = diag.cwiseInverse().asDiagonal();
    q_inv_ = R * Q0_inv * R.transpose();
    RMatrix Rinv = R.inverse();
    q_back_ = Rinv.transpose() * RMatrix(diag.asDiagonal()) * Rinv;
    center_ = RVector(2 * n);
    for (int j = 0; j < n; ++j) {
        center_(j) = map.xi(j).real();
        center_(n + j) = map.xi(j).imag();
    }
}

double ConvexBody::support(const RVector& u) const {
    return std::sqrt(u.dot(q_inv_ * u)) + center_.dot(u);
}

bool ConvexBody::contains(const RVector& p) const {
    RVector d = p - center_;
    return d.dot(q_back_ * d) < 1.0;
}

double ConvexBody::longest_chord(const RVector& direction) const {
    double dn = direction.norm();
    if (dn == 0.0) throw ValidationError("longest chord: zero direction");
    RVector u = direction / dn;
    double a = u.dot(q_back_ * u);
    return 2.0 / std::sqrt(a);
}

ConvexBody make_ellipsoid_body(const EllipsoidParams& params,
                               const AffineMap& map) {
    return ConvexBody(params, map);
}

HausdorffEstimate hausdorff_to_ball(const ConvexBody& body, int n_dirs,
                                    int refine_steps, std::uint64_t seed) {
    if (n_dirs < 100) {
        throw ValidationError("hausdorff: need at least 100 directions");
    }
    int dim = body.real_dim();
    auto dirs = sphere_directions(dim, n_dirs, seed);
    double best = -1.0;
    RVector best_u;
    for (const auto& d : dirs) {
        RVector u = to_rvec(d);
        double v = std::abs(body.support(u) - 1.0);
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    // local refinement by projected gradient on +-(h(u) - 1)
    auto refine = [&](RVector u, double sign) {
        double step = 0.05;
        double val = sign * (body.support(u) - 1.0);
        for (int it = 0; it < refine_steps; ++it) {
            RVector g = RVector::Zero(dim);
            const double h = 1e-6;
            for (int k = 0; k < dim; ++k) {
                RVector up = u, um = u;
                up(k) += h;
                um(k) -= h;
                up.normalize();
                um.normalize();
                g(k) = sign * (body.support(up) - body.support(um)) / (2 * h);
            }
            RVector cand = u + step * g;
            cand.normalize();
            double cv = sign * (body.support(cand) - 1.0);
            if (cv > val) {
                u = cand;
                val = cv;
                step *= 1.3;
            } else {
                step *= 0.5;
                if (step < 1e-12) break;
            }
        }
        return val;
    };
    double refined = std::max(refine(best_u, 1.0), refine(best_u, -1.0));
    // try both signs from a few top starting points
    for (const auto& d : dirs) {
        RVector u = to_rvec(d);
        double v = std::abs(body.support(u) - 1.0);
        if (v > 0.8 * best) {
            refined = std::max(refined, refine(u, 1.0));
            refined = std::max(refined, refine(u, -1.0));
        }
    }
    HausdorffEstimate est;
    est.value = std::max(refined, best);
    // crude covering-gap estimate from the support Lipschitz constant
    Eigen::SelfAdjointEigenSolver<RMatrix> es(body.transported_inverse_form());
    double lip = std::sqrt(es.eigenvalues().maxCoeff()) + body.center().norm();
    double mesh = std::pow(1.0 / n_dirs, 1.0 / (dim - 1));
    est.mesh_gap = lip * mesh * mesh;  // smooth maximum: quadratic in the gap
    est.n_dirs = n_dirs;
    return est;
}

HausdorffBoundReport check_hausdorff_bound(const EllipsoidParams& params,
                                           const AffineMap& map, int n_dirs) {
    ConvexBody body(params, map);
    auto est = hausdorff_to_ball(body, n_dirs);
    if (!(est.value < 0.5)) {
        throw ValidationError("hausdorff bound: requires eps < 1/2");
    }
    HausdorffBoundReport rep;
    rep.epsilon = est.value;
    rep.bound = est.value / (1.0 + est.value * est.value);
    rep.max_A = *std::max_element(params.A.begin(), params.A.end());
    rep.slack = rep.bound - rep.max_A;
    if (rep.max_A > rep.bound + 1e-12) {
        std::ostringstream os;
        os << "ellipsoid parameter bound violated: max A = " << rep.max_A
           << " > eps/(1+eps^2) = " << rep.bound
           << " (this indicates an implementation bug)";
        throw TheoremViolation(os.str());
    }
    return rep;
}

void check_containment(const ConvexBody& body, double eps, int n_dirs,
                       std::uint64_t seed) {
    if (!(eps > 0.0 && eps < 0.5)) {
        throw ValidationError("containment: eps in (0, 1/2)");
    }
    int dim = body.real_dim();
    auto dirs = sphere_directions(dim, n_dirs, seed);
    for (const auto& d : dirs) {
        RVector u = to_rvec(d);
        double h = body.support(u);
        if (h > 1.0 + eps + 1e-12) {
            std::ostringstream os;
            os << "containment: support " << h << " exceeds 1+eps";
            throw TheoremViolation(os.str());
        }
        if (h < 1.0 - eps - 1e-12) {
            std::ostringstream os;
            os << "containment: support " << h << " below 1-eps";
            throw TheoremViolation(os.str());
        }
    }
    // interior sampling of B_{1-eps} against the membership test
    Halton hal(dim, seed + 7);
    int accepted = 0;
    while (accepted < n_dirs) {
        auto u = hal.next();
        RVector p(dim);
        double r2 = 0.0;
        for (int k = 0; k < dim; ++k) {
            p(k) = (u[k] - 0.5) * 2.0;
            r2 += p(k) * p(k);
        }
        if (r2 >= 1.0) continue;
        ++accepted;
        RVector q = p * (1.0 - eps);
        if (!body.contains(q)) {
            std::ostringstream os;
            os << "containment: point of B_{1-eps} outside the body";
            throw TheoremViolation(os.str());
        }
    }
}

}  // namespace bergman
