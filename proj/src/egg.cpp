#include "bergman/egg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
}  // namespace

EggDomain::EggDomain(double s) : s_(s) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw ValidationError("egg domain: shape exponent s must be > 0");
    }
}

EggKernelCoefficients EggDomain::coefficients() const {
    return {0.0, (s_ - 1.0) / (s_ * kPi2), 2.0 / (s_ * kPi2)};
}

double EggDomain::defining(const CPoint2& p) const {
    return 1.0 - p.abs2_z() - std::pow(p.abs2_w(), s_);
}

Real4 EggDomain::defining_gradient(const CPoint2& p) const {
    double aw = p.abs2_w();
    double dpow = aw > 0.0 ? s_ * std::pow(aw, s_ - 1.0)
                           : (s_ == 1.0 ? 1.0 : (s_ < 1.0 ? 0.0 : 0.0));
    if (aw == 0.0 && s_ < 1.0) dpow = 0.0;  // gradient direction degenerates
    return {-2.0 * p.z.real(), -2.0 * p.z.imag(), -2.0 * dpow * p.w.real(),
            -2.0 * dpow * p.w.imag()};
}

bool EggDomain::contains_xy(double x, double y) const {
    return x >= 0.0 && y >= 0.0 && x + std::pow(y, s_) < 1.0;
}

bool EggDomain::on_boundary(const CPoint2& p, double tol) const {
    return std::abs(defining(p)) <= tol;
}

double egg_kernel_closed_xy(const EggDomain& dom, double x, double y) {
    if (x < 0.0 || y < 0.0 || !dom.contains_xy(x, y)) {
        std::ostringstream os;
        os << "egg kernel: point (x=" << x << ", y=" << y
           << ") not strictly interior to E_" << dom.s();
        throw ValidationError(os.str());
    }
    double s = dom.s();
    auto [c0, c1, c2] = dom.coefficients();
    double u = std::pow(1.0 - x, 1.0 / s);
    double d = u - y;
    double k = c1 * std::pow(1.0 - x, -2.0 + 1.0 / s) / (d * d) +
               c2 * std::pow(1.0 - x, -2.0 + 2.0 / s) / (d * d * d);
    return k;
}

double egg_kernel_closed(const EggDomain& dom, const CPoint2& p) {
    return egg_kernel_closed_xy(dom, p.abs2_z(), p.abs2_w());
}

double monomial_norm_sq(const EggDomain& dom, int a, int b) {
    if (a < 0 || b < 0) throw ValidationError("monomial norm: a, b >= 0");
    double s = dom.s();
    double c = (b + 1.0) / s;
    // pi^2/(s(a+1)) * B(c, a+2), evaluated through log-gamma so large a, b
    // stay inside double range.
    return kPi2 / (s * (a + 1.0)) * std::exp(log_beta(c, a + 2.0));
}

SeriesResult egg_kernel_series_xy(const EggDomain& dom, double x, double y,
                                  double rel_tol, const SeriesBudget& budget) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw ValidationError("egg kernel series: rel_tol in (0,1)");
    }
    if (!dom.contains_xy(x, y)) {
        throw ValidationError("egg kernel series: point not strictly interior");
    }
    double s = dom.s();
    // w < 1 exactly when the point is interior.
    double w = y * std::pow(1.0 - x, -1.0 / s);

    // Terms T(a,b) = x^a y^b / N(a,b) obey the exact recurrence
    // T(a+1,b) = T(a,b) * x (c+a+2)/(a+1) with c = (b+1)/s, and
    // T(0,b) = y^b s c (c+1) / pi^2.  Ratios decrease in a, so each row gets
    // a geometric tail bound once the ratio falls below (1+x)/2.  Row sums
    // R_b satisfy R_{b+1}/R_b = w (1 + 1/(s c))(1 + 1/(s(c+1))), decreasing
    // in b toward w, which certifies the tail over rows.
    KahanSum total;
    double tail_rows = 0.0;
    std::int64_t terms = 0;
    const double qa_star = 0.5 * (1.0 + x);
    double ypow = 1.0;

    for (std::int64_t b = 0; b < budget.max_rows; ++b) {
        double c = (b + 1.0) / s;
        double term = ypow * s * c * (c + 1.0) / kPi2;
        KahanSum row;
        double row_bound = 0.0;
        for (std::int64_t a = 0;; ++a) {
            row.add(term);
            if (++terms > budget.max_terms) {
                throw SeriesTruncationError(
                    "egg kernel series: term budget exhausted",
                    total.value() + row.value(), tail_rows);
            }
            double ratio = x * (c + a + 2.0) / (a + 1.0);
            if (ratio <= qa_star) {
                row_bound = ratio > 0.0 ? term * ratio / (1.0 - ratio) : 0.0;
                if (row_bound <= 0.25 * rel_tol * row.value()) break;
            }
            term *= ratio;
        }
        total.add(row.value());
        tail_rows += row_bound;
        double eta = w * (1.0 + 1.0 / (s * c)) * (1.0 + 1.0 / (s * (c + 1.0)));
        if (eta < 1.0) {
            double row_total = row.value() + row_bound;
            double tail_b = row_total * eta / (1.0 - eta);
            if (tail_b <= 0.5 * rel_tol * total.value() &&
                tail_rows <= 0.5 * rel_tol * total.value()) {
                return {total.value(), tail_rows + tail_b, terms};
            }
        }
        ypow *= y;
        if (ypow == 0.0 && b > 0) {
            // y == 0: single row, tail over rows is empty.
            return {total.value(), tail_rows, terms};
        }
    }
    throw SeriesTruncationError("egg kernel series: row budget exhausted",
                                total.value(), tail_rows);
}

SeriesResult egg_kernel_series(const EggDomain& dom, const CPoint2& p,
                               double rel_tol, const SeriesBudget& budget) {
    return egg_kernel_series_xy(dom, p.abs2_z(), p.abs2_w(), rel_tol, budget);
}

double ball_kernel_abs2(int n, double abs2) {
    if (n < 1) throw ValidationError("ball kernel: dimension >= 1");
    if (!(abs2 >= 0.0) || abs2 >= 1.0) {
        throw ValidationError("ball kernel: point not inside the unit ball");
    }
    return std::exp(std::lgamma(n + 1.0)) / std::pow(kPi, n) *
           std::pow(1.0 - abs2, -(n + 1.0));
}

double ball_kernel(int n, const std::vector<double>& re_im_coords) {
    if (static_cast<int>(re_im_coords.size()) != 2 * n) {
        throw ValidationError("ball kernel: expected 2n real coordinates");
    }
    double abs2 = 0.0;
    for (double v : re_im_coords) abs2 += v * v;
    return ball_kernel_abs2(n, abs2);
}

DomainKernel make_egg_domain_kernel(const EggDomain& dom) {
    return {
        [dom](const CPoint2& p) { return egg_kernel_closed(dom, p); },
        [dom](const CPoint2& p) { return dom.defining(p); },
        [dom](const CPoint2& p) { return dom.defining_gradient(p); },
    };
}

}  // namespace bergman
