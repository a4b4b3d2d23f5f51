#include "bergman/finite_type.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// Dense polynomial in (t, tbar): coefficient of t^a tbar^b at (a,b).
struct Bivariate {
    int deg;
    std::vector<Complex> c;  // (deg+1)^2 entries, row-major in a

    explicit Bivariate(int d) : deg(d), c((d + 1) * (d + 1), Complex(0, 0)) {}
    Complex& at(int a, int b) { return c[a * (deg + 1) + b]; }
    Complex at(int a, int b) const { return c[a * (deg + 1) + b]; }
};

// p(t) * conj(q)(tbar) accumulated into `out` with weight w.
void accumulate_product(Bivariate& out, const std::vector<Complex>& p,
                        const std::vector<Complex>& q, Complex w) {
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] == Complex(0, 0)) continue;
        for (std::size_t b = 0; b < q.size(); ++b) {
            if (q[b] == Complex(0, 0)) continue;
            out.at(static_cast<int>(a), static_cast<int>(b)) +=
                w * p[a] * std::conj(q[b]);
        }
    }
}

std::vector<Complex> poly_pow(const std::vector<Complex>& p, int e) {
    std::vector<Complex> r{Complex(1, 0)};
    for (int k = 0; k < e; ++k) {
        std::vector<Complex> nr(r.size() + p.size() - 1, Complex(0, 0));
        for (std::size_t i = 0; i < r.size(); ++i) {
            for (std::size_t j = 0; j < p.size(); ++j) nr[i + j] += r[i] * p[j];
        }
        r = std::move(nr);
    }
    return r;
}

int curve_component_order(const std::vector<Complex>& g) {
    for (std::size_t k = 1; k < g.size(); ++k) {
        if (std::abs(g[k]) > 0.0) return static_cast<int>(k);
    }
    return -1;  // constant
}

}  // namespace

int HolomorphicCurve::vanishing_order() const {
    int o1 = curve_component_order(gamma1);
    int o2 = curve_component_order(gamma2);
    if (o1 < 0 && o2 < 0) {
        throw ValidationError("holomorphic curve: constant curve");
    }
    if (o1 < 0) return o2;
    if (o2 < 0) return o1;
    return std::min(o1, o2);
}

RealAnalyticPoly RealAnalyticPoly::egg_defining(int s) {
    if (s < 1) throw ValidationError("egg defining polynomial: s >= 1");
    RealAnalyticPoly p;
    p.terms.push_back({Complex(1, 0), 0, 0, 0, 0});
    p.terms.push_back({Complex(-1, 0), 1, 1, 0, 0});
    p.terms.push_back({Complex(-1, 0), 0, 0, s, s});
    return p;
}

RealAnalyticPoly RealAnalyticPoly::from_quadric(const RealQuadric& q) {
    RealAnalyticPoly p;
    int n = q.n();
    if (n != 2) {
        throw ValidationError("contact search supports C^2 quadrics only");
    }
    auto var = [](int j, bool conj) {
        // exponent tuple for z_j or conj(z_j): (p1,q1,p2,q2)
        if (j == 0) return conj ? std::array<int, 4>{0, 1, 0, 0}
                                : std::array<int, 4>{1, 0, 0, 0};
        return conj ? std::array<int, 4>{0, 0, 0, 1}
                    : std::array<int, 4>{0, 0, 1, 0};
    };
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            // z^H H z = sum conj(z_j) H(j,k) z_k
            Complex h = q.H(j, k);
            if (h != Complex(0, 0)) {
                auto a = var(k, false);
                auto b = var(j, true);
                p.terms.push_back({h, a[0] + b[0], a[1] + b[1], a[2] + b[2],
                                   a[3] + b[3]});
            }
            Complex bb = q.B(j, k);
            if (bb != Complex(0, 0)) {
                // Re(z^T B z) = 1/2 (z^T B z + conj)
                auto a = var(j, false);
                auto b = var(k, false);
                p.terms.push_back({0.5 * bb, a[0] + b[0], a[1] + b[1],
                                   a[2] + b[2], a[3] + b[3]});
                auto ac = var(j, true);
                auto bc = var(k, true);
                p.terms.push_back({0.5 * std::conj(bb), ac[0] + bc[0],
                                   ac[1] + bc[1], ac[2] + bc[2],
                                   ac[3] + bc[3]});
            }
        }
        Complex lj = q.l(j);
        if (lj != Complex(0, 0)) {
            auto a = var(j, false);
            p.terms.push_back({lj, a[0], a[1], a[2], a[3]});
            auto ac = var(j, true);
            p.terms.push_back({std::conj(lj), ac[0], ac[1], ac[2], ac[3]});
        }
    }
    if (q.r0 != 0.0) p.terms.push_back({Complex(q.r0, 0), 0, 0, 0, 0});
    return p;
}

double RealAnalyticPoly::eval(const CPoint2& p) const {
    Complex acc(0, 0);
    for (const auto& t : terms) {
        acc += t.c * std::pow(p.z, t.p1) * std::pow(std::conj(p.z), t.q1) *
               std::pow(p.w, t.p2) * std::pow(std::conj(p.w), t.q2);
    }
    return acc.real();
}

int egg_type(int s, const CPoint2& xi, double boundary_tol) {
    if (s < 1) throw ValidationError("egg type: integer s >= 1");
    EggDomain dom(static_cast<double>(s));
    if (!dom.on_boundary(xi, boundary_tol)) {
        std::ostringstream os;
        os << "egg type: point not on the boundary (defining = "
           << dom.defining(xi) << ")";
        throw ValidationError(os.str());
    }
    if (std::abs(xi.w) <= 1e-14) return 2 * s;
    return 2;
}

ContactSearchResult contact_order_lower_bound(const RealAnalyticPoly& rho,
                                              const CPoint2& xi,
                                              const ContactSearchBudget& budget) {
    if (std::abs(rho.eval(xi)) > 1e-10) {
        throw ValidationError("contact search: rho(xi) != 0");
    }
    if (budget.max_curve_degree < 1) {
        throw ValidationError("contact search: degree budget >= 1");
    }

    // coefficient grid {0, +-1, +-i, +-1+-i}
    std::vector<Complex> grid = {
        {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1},
        {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
    };

    ContactSearchResult result;
    result.best.num = 0;
    result.best.den = 1;

    int max_deg = budget.max_curve_degree;
    for (int p = 1; p <= max_deg; ++p) {
        for (int q = 1; q <= max_deg; ++q) {
            for (const auto& u : grid) {
                for (const auto& v : grid) {
                    if (u == Complex(0, 0) && v == Complex(0, 0)) continue;
                    HolomorphicCurve curve;
                    curve.gamma1.assign(p + 1, Complex(0, 0));
                    curve.gamma2.assign(q + 1, Complex(0, 0));
                    curve.gamma1[0] = xi.z;
                    curve.gamma2[0] = xi.w;
                    curve.gamma1[p] = u;
                    curve.gamma2[q] = v;
                    int ord_curve = curve.vanishing_order();

                    // highest powers appearing after composition
                    int pw = 0;
                    for (const auto& t : rho.terms) {
                        pw = std::max(pw, std::max(t.p1, t.q1) * p +
                                              std::max(t.p2, t.q2) * q);
                    }
                    Bivariate comp(pw);
                    for (const auto& t : rho.terms) {
                        auto z1 = poly_pow(curve.gamma1, t.p1);
                        auto z1c = poly_pow(curve.gamma1, t.q1);
                        auto w1 = poly_pow(curve.gamma2, t.p2);
                        auto w1c = poly_pow(curve.gamma2, t.q2);
                        // t-poly = z1 * w1; tbar-poly = conj applied later
                        std::vector<Complex> hol(z1.size() + w1.size() - 1,
                                                 Complex(0, 0));
                        for (std::size_t i = 0; i < z1.size(); ++i) {
                            for (std::size_t j = 0; j < w1.size(); ++j) {
                                hol[i + j] += z1[i] * w1[j];
                            }
                        }
                        std::vector<Complex> anti(z1c.size() + w1c.size() - 1,
                                                  Complex(0, 0));
                        for (std::size_t i = 0; i < z1c.size(); ++i) {
                            for (std::size_t j = 0; j < w1c.size(); ++j) {
                                anti[i + j] += z1c[i] * w1c[j];
                            }
                        }
                        accumulate_product(comp, hol, anti, t.c);
                    }
                    // vanishing order of the composition: smallest a+b with a
                    // coefficient above threshold
                    double cmax = 0.0;
                    for (const auto& cc : comp.c) {
                        cmax = std::max(cmax, std::abs(cc));
                    }
                    if (cmax <= 1e-10) {
                        result.infinite_type_flag = true;
                        continue;  // curve inside the zero set
                    }
                    int ord = -1;
                    for (int total = 0; total <= 2 * comp.deg && ord < 0;
                         ++total) {
                        for (int a = 0; a <= std::min(total, comp.deg); ++a) {
                            int b = total - a;
                            if (b < 0 || b > comp.deg) continue;
                            if (std::abs(comp.at(a, b)) > 1e-10 * cmax) {
                                ord = total;
                                break;
                            }
                        }
                    }
                    if (ord <= 0) continue;
                    if (static_cast<double>(ord) / ord_curve >
                        result.best.value()) {
                        result.best.num = ord;
                        result.best.den = ord_curve;
                        result.best.witness = curve;
                    }
                }
            }
        }
    }
    return result;
}

double levi_min_eigenvalue(const RealAnalyticPoly& rho, const CPoint2& xi) {
    // r = -rho is the inward-negative defining function; its complex Hessian
    // restricted to the complex tangent at xi gives the Levi form.  In C^2
    // the tangent is spanned by tau = (-r_w, r_z).
    auto d = [&](int which, const CPoint2& p) {
        // holomorphic partials of rho by central differences in z_1/z_2
        const double h = 1e-5;
        CPoint2 pp = p, pm = p, pip = p, pim = p;
        if (which == 0) {
            pp.z += h; pm.z -= h;
            pip.z += Complex(0, h); pim.z -= Complex(0, h);
        } else {
            pp.w += h; pm.w -= h;
            pip.w += Complex(0, h); pim.w -= Complex(0, h);
        }
        double dx = (rho.eval(pp) - rho.eval(pm)) / (2 * h);
        double dy = (rho.eval(pip) - rho.eval(pim)) / (2 * h);
        return Complex(0.5 * dx, -0.5 * dy);  // d/dz = (d/dx - i d/dy)/2
    };
    auto dd = [&](int a, int b, const CPoint2& p) {
        // mixed partial d^2 rho / dz_a dzbar_b via differences of d()
        const double h = 1e-4;
        CPoint2 pp = p, pm = p, pip = p, pim = p;
        if (b == 0) {
            pp.z += h; pm.z -= h;
            pip.z += Complex(0, h); pim.z -= Complex(0, h);
        } else {
            pp.w += h; pm.w -= h;
            pip.w += Complex(0, h); pim.w -= Complex(0, h);
        }
        Complex dx = (d(a, pp) - d(a, pm)) / Complex(2 * h, 0);
        Complex dy = (d(a, pip) - d(a, pim)) / Complex(2 * h, 0);
        return 0.5 * dx + Complex(0, 0.5) * dy;  // d/dzbar = (d/dx + i d/dy)/2
    };
    Complex rz = d(0, xi), rw = d(1, xi);
    Complex tau1 = -rw, tau2 = rz;
    double tn = std::sqrt(std::norm(tau1) + std::norm(tau2));
    if (tn < 1e-12) {
        throw ValidationError("levi form: degenerate gradient at xi");
    }
    tau1 /= tn;
    tau2 /= tn;
    Complex levi = dd(0, 0, xi) * tau1 * std::conj(tau1) +
                   dd(0, 1, xi) * tau1 * std::conj(tau2) +
                   dd(1, 0, xi) * tau2 * std::conj(tau1) +
                   dd(1, 1, xi) * tau2 * std::conj(tau2);
    // Levi form of -rho (domain is {rho > 0})
    return -levi.real();
}

TypeReportSummary type_report(const TypeDomain& domain,
                              const std::vector<CPoint2>& probes) {
    TypeReportSummary rep;
    for (const auto& xi : probes) {
        TypePoint tp;
        tp.xi = xi;
        if (std::holds_alternative<EggFamily>(domain)) {
            int s = std::get<EggFamily>(domain).s;
            tp.r = egg_type(s, xi);
            tp.method = TypeMethod::ExactRule;
        } else {
            const auto& params = std::get<EllipsoidParams>(domain);
            params.validate();
            if (params.n() != 2) {
                throw ValidationError(
                    "type report: ellipsoid probes supported in C^2 only");
            }
            RealQuadric q = defining_poly(params);
            RealAnalyticPoly rho = RealAnalyticPoly::from_quadric(q);
            if (std::abs(rho.eval(xi)) > 1e-8) {
                throw ValidationError("type report: probe off the boundary");
            }
            double levi = levi_min_eigenvalue(rho, xi);
            if (levi > 1e-8) {
                tp.r = 2;
                tp.method = TypeMethod::LeviForm;
            } else {
                auto search = contact_order_lower_bound(rho, xi, {});
                tp.r = static_cast<int>(std::lround(search.best.value()));
                tp.method = TypeMethod::CurveSearch;
            }
        }
        rep.per_point.push_back(tp);
        rep.max_type = std::max(rep.max_type, tp.r);
    }
    return rep;
}

}  // namespace bergman
