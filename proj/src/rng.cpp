#include "bergman/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bergman {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t i, int base) {
    double x = 0.0;
    double fac = 1.0 / base;
    while (i > 0) {
        x += static_cast<double>(i % base) * fac;
        i /= base;
        fac /= base;
    }
    return x;
}

// splitmix64, used only to derive rotation offsets from the seed.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Halton::Halton(int dim, std::uint64_t seed, std::uint64_t skip)
    : dim_(dim), index_(skip + 1) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("Halton: dim in [1,8]");
    shift_.resize(dim_);
    std::uint64_t s = seed;
    for (int d = 0; d < dim_; ++d) {
        s = mix(s + 0x12345 + d);
        shift_[d] = seed == 0 ? 0.0
                              : static_cast<double>(s >> 11) * 0x1.0p-53;
    }
}

std::vector<double> Halton::next() {
    std::vector<double> p(dim_);
    for (int d = 0; d < dim_; ++d) {
        double x = radical_inverse(index_, kPrimes[d]) + shift_[d];
        p[d] = x - std::floor(x);
    }
    ++index_;
    return p;
}

std::vector<std::vector<double>> Halton::take(std::size_t n) {
    std::vector<std::vector<double>> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(next());
    return pts;
}

std::vector<std::vector<double>> sphere_directions(int dim, int n,
                                                   std::uint64_t seed) {
    // Box-Muller on consecutive Halton coordinates; one extra coordinate pads
    // odd dimensions.
    int pairs = (dim + 1) / 2;
    Halton h(2 * pairs, seed);
    std::vector<std::vector<double>> dirs;
    dirs.reserve(n);
    while (static_cast<int>(dirs.size()) < n) {
        auto u = h.next();
        std::vector<double> g(dim);
        for (int p = 0; p < pairs; ++p) {
            double u1 = std::max(u[2 * p], 1e-300);
            double u2 = u[2 * p + 1];
            double rad = std::sqrt(-2.0 * std::log(u1));
            double a = 2.0 * std::numbers::pi * u2;
            if (2 * p < dim) g[2 * p] = rad * std::cos(a);
            if (2 * p + 1 < dim) g[2 * p + 1] = rad * std::sin(a);
        }
        double nrm = 0.0;
        for (double v : g) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) continue;
        for (double& v : g) v /= nrm;
        dirs.push_back(std::move(g));
    }
    return dirs;
}

}  // namespace bergman
