#ifndef BERGMAN_POINT_HPP
#define BERGMAN_POINT_HPP

#include <array>
#include <cmath>
#include <complex>

namespace bergman {

using Complex = std::complex<double>;

// A point of C^2 on the diagonal, (z,w).  Real coordinates are ordered
// (Re z, Im z, Re w, Im w) throughout the library.
struct CPoint2 {
    Complex z{0.0, 0.0};
    Complex w{0.0, 0.0};

    CPoint2() = default;
    CPoint2(Complex z_, Complex w_) : z(z_), w(w_) {}
    CPoint2(double re_z, double im_z, double re_w, double im_w)
        : z(re_z, im_z), w(re_w, im_w) {}

    static CPoint2 from_real4(const std::array<double, 4>& v) {
        return {Complex(v[0], v[1]), Complex(v[2], v[3])};
    }
    std::array<double, 4> to_real4() const {
        return {z.real(), z.imag(), w.real(), w.imag()};
    }

    double abs2_z() const { return std::norm(z); }
    double abs2_w() const { return std::norm(w); }
};

using Real4 = std::array<double, 4>;

inline CPoint2 operator+(const CPoint2& p, const CPoint2& q) {
    return {p.z + q.z, p.w + q.w};
}

inline Real4 operator*(double t, const Real4& v) {
    return {t * v[0], t * v[1], t * v[2], t * v[3]};
}

inline CPoint2 advance(const CPoint2& p, const Real4& v, double t) {
    return {Complex(p.z.real() + t * v[0], p.z.imag() + t * v[1]),
            Complex(p.w.real() + t * v[2], p.w.imag() + t * v[3])};
}

inline double dot(const Real4& a, const Real4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Real4& a) { return std::sqrt(dot(a, a)); }

}  // namespace bergman

#endif
