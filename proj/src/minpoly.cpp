#include "bergman/minpoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bergman/asymptotics.hpp"
#include "bergman/errors.hpp"

namespace bergman {

namespace {

// All exponent tuples of `nvars` variables with total degree <= dt,
// ordered by total degree then lexicographically.
std::vector<std::vector<int>> multi_exponents(int nvars, int dt) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(nvars, 0);
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == nvars - 1) {
            cur[var] = remaining;
            out.push_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[var] = e;
            self(self, var + 1, remaining - e);
        }
    };
    for (int total = 0; total <= dt; ++total) rec(rec, 0, total);
    return out;
}

double eval_monomial(const std::vector<double>& p, const std::vector<int>& e) {
    double v = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (int k = 0; k < e[i]; ++k) v *= p[i];
    }
    return v;
}

struct Basis {
    std::vector<std::vector<int>> exps;  // t-monomials
    int dY;
    int n_cols() const { return static_cast<int>(exps.size()) * (dY + 1); }
    // column index for (exp index, j)
    int col(int ei, int j) const {
        return j * static_cast<int>(exps.size()) + ei;
    }
};

// Rows of the design matrix: monomial * f^j at each point.
Eigen::MatrixXd design_matrix(const Basis& basis,
                              const std::vector<std::vector<double>>& pts,
                              const std::vector<double>& vals) {
    int n = static_cast<int>(pts.size());
    int ne = static_cast<int>(basis.exps.size());
    Eigen::MatrixXd A(n, basis.n_cols());
    for (int i = 0; i < n; ++i) {
        double fj = 1.0;
        for (int j = 0; j <= basis.dY; ++j) {
            for (int ei = 0; ei < ne; ++ei) {
                A(i, basis.col(ei, j)) =
                    eval_monomial(pts[i], basis.exps[ei]) * fj;
            }
            fj *= vals[i];
        }
    }
    return A;
}

struct LevelFit {
    Eigen::VectorXd v;  // unit-norm coefficient vector, original basis
    double gap;         // sigma_min / sigma_{min+1}
};

// Row-equilibrated, column-scaled SVD null vector with a support-refit loop
// that prunes coefficients below cleanup_rel of the largest.
LevelFit solve_level(const Eigen::MatrixXd& A_raw, double cleanup_rel) {
    Eigen::MatrixXd A = A_raw;
    for (int i = 0; i < A.rows(); ++i) {
        double rn = A.row(i).norm();
        if (rn > 0.0) A.row(i) /= rn;
    }
    auto null_vec = [&](const std::vector<int>& cols, double* gap_out) {
        Eigen::MatrixXd S(A.rows(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) S.col(c) = A.col(cols[c]);
        Eigen::VectorXd scale = S.colwise().norm();
        for (int c = 0; c < scale.size(); ++c) {
            if (scale(c) == 0.0) scale(c) = 1.0;
        }
        Eigen::MatrixXd Ss = S.array().rowwise() / scale.transpose().array();
        Eigen::BDCSVD<Eigen::MatrixXd> svd(Ss, Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        int last = static_cast<int>(sv.size()) - 1;
        if (gap_out) {
            *gap_out = last >= 1 ? sv(last) / std::max(sv(last - 1), 1e-300)
                                 : 0.0;
        }
        Eigen::VectorXd v =
            svd.matrixV().col(last).cwiseQuotient(scale);
        return Eigen::VectorXd(v / v.norm());
    };

    std::vector<int> all(A.cols());
    std::iota(all.begin(), all.end(), 0);
    double gap = 0.0;
    Eigen::VectorXd v = null_vec(all, &gap);
    std::vector<int> support = all;
    for (int round = 0; round < 3; ++round) {
        double vmax = v.cwiseAbs().maxCoeff();
        std::vector<int> keep;
        for (int c = 0; c < v.size(); ++c) {
            if (std::abs(v(c)) > cleanup_rel * vmax) keep.push_back(c);
        }
        if (keep.size() == support.size() || keep.size() < 2) break;
        Eigen::VectorXd vs = null_vec(keep, nullptr);
        Eigen::VectorXd vf = Eigen::VectorXd::Zero(A.cols());
        for (std::size_t c = 0; c < keep.size(); ++c) vf(keep[c]) = vs(c);
        v = vf;
        support = keep;
    }
    return {v, gap};
}

struct HoldoutResiduals {
    double max_spec = 0.0;  // |P| / max(1, |f|^dY)
    double rms_spec = 0.0;
    double max_rel = 0.0;   // |P| / row norm
};

HoldoutResiduals holdout_residuals(const Basis& basis,
                                   const Eigen::VectorXd& v,
                                   const std::vector<std::vector<double>>& pts,
                                   const std::vector<double>& vals) {
    Eigen::MatrixXd Ah = design_matrix(basis, pts, vals);
    HoldoutResiduals out;
    double sq = 0.0;
    for (int i = 0; i < Ah.rows(); ++i) {
        double p = std::abs(Ah.row(i).dot(v));
        double scale = std::max(1.0, std::pow(std::abs(vals[i]),
                                              static_cast<double>(basis.dY)));
        double rs = p / scale;
        out.max_spec = std::max(out.max_spec, rs);
        sq += rs * rs;
        double rn = Ah.row(i).norm();
        if (rn > 0.0) out.max_rel = std::max(out.max_rel, p / rn);
    }
    out.rms_spec = std::sqrt(sq / std::max<int>(1, Ah.rows()));
    return out;
}

// Blow-up exponent of the transect samples via the corrected slope fit.
double transect_exponent(const SampleGrid& grid) {
    const auto& d = grid.transect_delta;
    const auto& f = grid.transect_values;
    int n = static_cast<int>(d.size());
    // Constant transect (e.g. f == 1): exponent 0.
    double fmax = *std::max_element(f.begin(), f.end());
    double fmin = *std::min_element(f.begin(), f.end());
    if (fmax - fmin <= 1e-12 * std::abs(fmax)) return 0.0;

    KernelRaySamples fake;
    fake.t_values = d;
    fake.k_values = f;
    fake.ray.t_min = d.back();
    fake.ray.t_max = d.front();
    // The refined slope fit tolerates the smooth factor along the transect.
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = std::log(d[i]);
        y(i) = std::log(f[i]);
    }
    Eigen::VectorXd c0 = X.colPivHouseholderQr().solve(y);
    double m0 = c0(1);
    // refine with {1, delta} correction regressors over a slope window
    auto rss_at = [&](double m) {
        Eigen::MatrixXd Xc(n, 2);
        Eigen::VectorXd yc(n);
        for (int i = 0; i < n; ++i) {
            Xc(i, 0) = 1.0;
            Xc(i, 1) = d[i];
            yc(i) = y(i) - m * std::log(d[i]);
        }
        Eigen::VectorXd cc = Xc.colPivHouseholderQr().solve(yc);
        return (yc - Xc * cc).squaredNorm();
    };
    double a = m0 - 0.3, b = m0 + 0.3;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a), dd2 = a + phi * (b - a);
    double fc = rss_at(c), fd = rss_at(dd2);
    for (int it = 0; it < 90; ++it) {
        if (fc < fd) {
            b = dd2; dd2 = c; fd = fc;
            c = b - phi * (b - a);
            fc = rss_at(c);
        } else {
            a = c; c = dd2; fc = fd;
            dd2 = a + phi * (b - a);
            fd = rss_at(dd2);
        }
    }
    return 0.5 * (a + b);
}

// Smallest q <= q_max with |e - p/q| <= tol for integer p.
int snap_ramification(double e, int q_max, double tol) {
    for (int q = 1; q <= q_max; ++q) {
        double p = std::round(e * q);
        if (std::abs(e - p / q) <= tol) return q;
    }
    return 1;  // no clean rational: do not constrain
}

int alpha_total(const std::vector<int>& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

}  // namespace

MinimalPolynomialCandidate detect_min_polynomial(const SampleGrid& grid,
                                                 const DetectionConfig& config) {
    grid.validate();
    if (config.dY_max < 1 || config.dt_max < 0) {
        throw ValidationError("detection: need dY_max >= 1, dt_max >= 0");
    }
    int nvars = grid.n_vars();

    MinimalPolynomialCandidate out;
    out.coords = grid.coords;

    int ram = 1;
    double ehat = 0.0;
    if (!grid.transect_delta.empty()) {
        ehat = transect_exponent(grid);
        ram = snap_ramification(ehat, config.dY_max + 2,
                                config.exponent_snap_tol);
        out.transect_exponent = ehat;
    }
    out.ramification = ram;

    auto exps_for = [&](int dt) { return multi_exponents(nvars, dt); };

    auto try_level = [&](int dY, int dt, LevelFit* fit_out, Basis* basis_out,
                         HoldoutResiduals* res_out) {
        Basis basis{exps_for(dt), dY};
        std::size_t unknowns = basis.n_cols();
        if (grid.points.size() < 2 * unknowns) {
            std::ostringstream os;
            os << "detection: " << grid.points.size()
               << " samples for " << unknowns
               << " unknowns (need >= 2x) at dY=" << dY << " dt=" << dt;
            throw ValidationError(os.str());
        }
        Eigen::MatrixXd A = design_matrix(basis, grid.points, grid.values);
        LevelFit fit = solve_level(A, config.cleanup_rel);
        HoldoutResiduals res = holdout_residuals(basis, fit.v,
                                                 grid.holdout_points,
                                                 grid.holdout_values);
        bool ok = res.max_spec <= config.tol && res.max_rel <= config.tol;
        if (fit_out) *fit_out = fit;
        if (basis_out) *basis_out = basis;
        if (res_out) *res_out = res;
        return ok;
    };

    for (int dY = 1; dY <= config.dY_max; ++dY) {
        if (dY < ram) continue;  // branching denominator exceeds this degree
        LevelFit fit;
        Basis basis{{}, 0};
        HoldoutResiduals res;
        if (!try_level(dY, config.dt_max, &fit, &basis, &res)) continue;

        // Bisect for the minimal accepted dt; acceptance is monotone in dt.
        int lo = 0, hi = config.dt_max;
        LevelFit best_fit = fit;
        Basis best_basis = basis;
        HoldoutResiduals best_res = res;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            LevelFit f2;
            Basis b2{{}, 0};
            HoldoutResiduals r2;
            if (try_level(dY, mid, &f2, &b2, &r2)) {
                hi = mid;
                best_fit = f2;
                best_basis = b2;
                best_res = r2;
            } else {
                lo = mid + 1;
            }
        }

        out.accepted = true;
        out.dY = dY;
        out.dt = lo;
        out.residual = best_res.max_spec;
        out.residual_rms = best_res.rms_spec;
        out.residual_rel = best_res.max_rel;
        out.condition = best_fit.gap;
        // A clearly separated null vector has sigma_min << sigma_{min+1}.
        out.conditioning_warning = best_fit.gap > 0.1;

        double vmax = best_fit.v.cwiseAbs().maxCoeff();
        double kept_norm = 0.0;
        for (int c = 0; c < best_fit.v.size(); ++c) {
            double cv = best_fit.v(c);
            if (std::abs(cv) <= config.cleanup_rel * vmax) continue;
            int j = c / static_cast<int>(best_basis.exps.size());
            int ei = c % static_cast<int>(best_basis.exps.size());
            out.coeffs.push_back({best_basis.exps[ei], j, cv});
            kept_norm += cv * cv;
        }
        kept_norm = std::sqrt(kept_norm);
        for (auto& term : out.coeffs) term.c /= kept_norm;
        int mult = grid.coords == CoordSystem::ReducedXY ? 2 : 1;
        int td = 0, dtc = 0;
        for (const auto& term : out.coeffs) {
            td = std::max(td, mult * alpha_total(term.alpha) + term.j);
            dtc = std::max(dtc, alpha_total(term.alpha));
        }
        out.dt = dtc;
        out.total_degree = td;
        out.rational_degree = rational_degree(out);
        return out;
    }

    out.accepted = false;
    if (config.dY_max < ram) {
        std::ostringstream os;
        os << "not algebraic within budget: boundary blow-up exponent " << ehat
           << " forces algebraic degree >= " << ram << " > dY_max "
           << config.dY_max;
        out.reject_reason = os.str();
    } else {
        out.reject_reason = "not algebraic within budget: no relation passed "
                            "the holdout residual gates";
    }
    return out;
}

std::optional<int> rational_degree(const MinimalPolynomialCandidate& cand) {
    if (cand.coeffs.empty()) return std::nullopt;
    int dY = 0;
    for (const auto& t : cand.coeffs) dY = std::max(dY, t.j);
    if (dY > 1 || cand.dY > 1) return std::nullopt;
    int mult = cand.coords == CoordSystem::ReducedXY ? 2 : 1;
    int deg_q = 0, deg_p = 0;
    for (const auto& t : cand.coeffs) {
        int d = mult * alpha_total(t.alpha);
        if (t.j == 1) deg_q = std::max(deg_q, d);
        else deg_p = std::max(deg_p, d);
    }
    return std::max(deg_p, deg_q);
}

RelationResidualReport verify_relation(const MinimalPolynomialCandidate& cand,
                                       const SampleGrid& holdout,
                                       double tol) {
    if (holdout.n_vars() != (cand.coords == CoordSystem::Real4 ? 4 : 2)) {
        throw ValidationError("verify_relation: coordinate system mismatch");
    }
    // coefficient vector must be unit-norm (invariant of the candidate type)
    double nrm = 0.0;
    for (const auto& t : cand.coeffs) nrm += t.c * t.c;
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) throw ValidationError("verify_relation: empty relation");

    const auto& pts = holdout.points;
    const auto& vals = holdout.values;
    RelationResidualReport rep;
    double sq = 0.0;
    int dY = 0;
    for (const auto& t : cand.coeffs) dY = std::max(dY, t.j);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double p = 0.0, row_sq = 0.0;
        for (const auto& term : cand.coeffs) {
            double m = eval_monomial(pts[i], term.alpha) *
                       std::pow(vals[i], term.j);
            p += term.c / nrm * m;
            row_sq += m * m;
        }
        double scale = std::max(1.0, std::pow(std::abs(vals[i]),
                                              static_cast<double>(dY)));
        double rs = std::abs(p) / scale;
        rep.max_residual = std::max(rep.max_residual, rs);
        sq += rs * rs;
        if (row_sq > 0.0) {
            rep.max_relative =
                std::max(rep.max_relative, std::abs(p) / std::sqrt(row_sq));
        }
    }
    rep.rms_residual = std::sqrt(sq / std::max<std::size_t>(1, pts.size()));
    rep.accepted = rep.max_residual <= tol && rep.max_relative <= tol;
    return rep;
}

DegreeReport check_type_degree_inequality(int d, int total_degree,
                                          int max_type) {
    DegreeReport rep;
    rep.d = d;
    rep.total_degree = total_degree;
    rep.type_max = max_type;
    rep.inequality_holds = max_type <= 2 * d;
    rep.equality = max_type == 2 * d;
    if (!rep.inequality_holds) {
        std::ostringstream os;
        os << "type/degree inequality violated: max type " << max_type
           << " > 2d = " << 2 * d
           << " (this indicates an implementation bug)";
        throw TheoremViolation(os.str());
    }
    return rep;
}

}  // namespace bergman
