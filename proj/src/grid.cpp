#include "bergman/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "bergman/errors.hpp"
#include "bergman/rng.hpp"

namespace bergman {

void SampleGrid::validate() const {
    if (points.size() != values.size() ||
        holdout_points.size() != holdout_values.size()) {
        throw ValidationError("sample grid: point/value size mismatch");
    }
    auto check = [&](const std::vector<std::vector<double>>& pts,
                     const std::vector<double>& vals) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (static_cast<int>(pts[i].size()) != n_vars()) {
                throw ValidationError("sample grid: wrong point dimension");
            }
            if (!std::isfinite(vals[i]) || vals[i] == 0.0) {
                throw ValidationError("sample grid: non-finite or zero value");
            }
        }
    };
    check(points, values);
    check(holdout_points, holdout_values);
}

namespace {

// Fills `out` with points of the region x + y^s <= cap (lo <= x + y^s).
void fill_xy_region(std::vector<std::vector<double>>& out, std::size_t n,
                    double s, double lo, double hi, Halton& h) {
    while (out.size() < n) {
        auto p = h.next();
        double m = p[0] + std::pow(p[1], s);
        if (m >= lo && m <= hi) out.push_back({p[0], p[1]});
    }
}

void append_corner_xy(std::vector<std::vector<double>>& out, std::size_t n,
                      double s, double dlo, double dhi, Halton& h) {
    for (std::size_t i = 0; i < n; ++i) {
        auto p = h.next();
        double delta = dhi * std::pow(dlo / dhi, p[0]);
        double x = 1.0 - delta;
        double y = std::pow(0.5 * delta * p[1], 1.0 / s);
        out.push_back({x, y});
    }
}

}  // namespace

SampleGrid function_reduced_grid(const std::function<double(double, double)>& f,
                                 double s_shape, std::size_t n_train,
                                 const GridConfig& config) {
    SampleGrid g;
    g.coords = CoordSystem::ReducedXY;
    Halton box(2, config.seed);
    fill_xy_region(g.points, n_train, s_shape, 0.0, config.box_cap, box);
    std::size_t n_corner = config.n_corner ? config.n_corner : n_train / 3;
    Halton corner(2, config.seed + 101);
    append_corner_xy(g.points, n_corner, s_shape, config.corner_lo,
                     config.corner_hi, corner);

    Halton hbox(2, config.seed + 202);
    fill_xy_region(g.holdout_points, 2 * config.n_holdout / 3, s_shape, 0.0,
                   config.box_cap, hbox);
    Halton hshell(2, config.seed + 303);
    fill_xy_region(g.holdout_points, config.n_holdout, s_shape,
                   config.shell_lo, config.shell_hi, hshell);

    for (const auto& p : g.points) g.values.push_back(f(p[0], p[1]));
    for (const auto& p : g.holdout_points) {
        g.holdout_values.push_back(f(p[0], p[1]));
    }

    // y = 0 transect toward the branch corner x -> 1.
    for (std::size_t i = 0; i < config.n_transect; ++i) {
        double frac = config.n_transect == 1
                          ? 0.0
                          : static_cast<double>(i) / (config.n_transect - 1);
        double delta =
            config.transect_hi *
            std::pow(config.transect_lo / config.transect_hi, frac);
        g.transect_delta.push_back(delta);
        g.transect_values.push_back(f(1.0 - delta, 0.0));
    }
    g.validate();
    return g;
}

SampleGrid egg_reduced_grid(const EggDomain& dom, std::size_t n_train,
                            const GridConfig& config) {
    return function_reduced_grid(
        [&dom](double x, double y) { return egg_kernel_closed_xy(dom, x, y); },
        dom.s(), n_train, config);
}

SampleGrid ball_reduced_grid(std::size_t n_train, const GridConfig& config) {
    return egg_reduced_grid(EggDomain(1.0), n_train, config);
}

SampleGrid ball_real4_grid(std::size_t n_train, const GridConfig& config) {
    SampleGrid g;
    g.coords = CoordSystem::Real4;
    auto kernel = [](const std::vector<double>& p) {
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        return ball_kernel_abs2(2, r2);
    };
    auto fill = [&](std::vector<std::vector<double>>& out, std::size_t n,
                    double lo, double hi, Halton& h) {
        while (out.size() < n) {
            auto u = h.next();
            std::vector<double> p(4);
            double r2 = 0.0;
            for (int d = 0; d < 4; ++d) {
                p[d] = (u[d] - 0.5) * 1.996;
                r2 += p[d] * p[d];
            }
            if (r2 >= lo && r2 <= hi) out.push_back(std::move(p));
        }
    };
    Halton box(4, config.seed);
    fill(g.points, n_train, 0.0, config.box_cap, box);
    // Radial corner family toward the boundary point (1,0,0,0).
    std::size_t n_corner = config.n_corner ? config.n_corner : n_train / 3;
    Halton corner(4, config.seed + 101);
    for (std::size_t i = 0; i < n_corner; ++i) {
        auto u = corner.next();
        double delta = config.corner_hi *
                       std::pow(config.corner_lo / config.corner_hi, u[0]);
        double rad = std::sqrt(1.0 - delta);
        // small angular jitter keeps the family genuinely 4-dimensional
        std::vector<double> p = {rad, 0.1 * delta * (u[1] - 0.5),
                                 0.2 * rad * (u[2] - 0.5) * delta,
                                 0.2 * rad * (u[3] - 0.5) * delta};
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        if (r2 >= 1.0) continue;
        g.points.push_back(std::move(p));
    }
    Halton hbox(4, config.seed + 202);
    fill(g.holdout_points, 2 * config.n_holdout / 3, 0.0, config.box_cap, hbox);
    Halton hshell(4, config.seed + 303);
    fill(g.holdout_points, config.n_holdout, config.shell_lo, config.shell_hi,
         hshell);

    for (const auto& p : g.points) g.values.push_back(kernel(p));
    for (const auto& p : g.holdout_points) g.holdout_values.push_back(kernel(p));

    for (std::size_t i = 0; i < config.n_transect; ++i) {
        double frac = config.n_transect == 1
                          ? 0.0
                          : static_cast<double>(i) / (config.n_transect - 1);
        double delta =
            config.transect_hi *
            std::pow(config.transect_lo / config.transect_hi, frac);
        g.transect_delta.push_back(delta);
        g.transect_values.push_back(kernel({1.0 - delta, 0.0, 0.0, 0.0}));
    }
    g.validate();
    return g;
}

}  // namespace bergman
