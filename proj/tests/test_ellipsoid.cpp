#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/convex.hpp"
#include "bergman/errors.hpp"
#include "bergman/quadric.hpp"

using namespace bergman;

namespace {

// Seeded random affine map M = I + scale * N (N spectral-normalized), |xi|
// bounded by shift.
AffineMap random_affine(std::mt19937_64& rng, int n, double scale,
                        double shift) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix N(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) N(i, j) = Complex(g(rng), g(rng));
    }
    Eigen::JacobiSVD<CMatrix> svd(N);
    N /= std::max(svd.singularValues()(0), 1e-12);
    CVector xi(n);
    for (int i = 0; i < n; ++i) xi(i) = shift * Complex(g(rng), g(rng)) / 2.0;
    return {CMatrix::Identity(n, n) + scale * N, xi};
}

EllipsoidParams random_params(std::mt19937_64& rng, int n, double hi) {
    std::uniform_real_distribution<double> u(0.0, hi);
    std::vector<double> A(n);
    for (auto& a : A) a = u(rng);
    std::sort(A.begin(), A.end());
    return {A};
}

}  // namespace

TEST_CASE("defining polynomial of E(A)") {
    EllipsoidParams ball{{0.0, 0.0}};
    RealQuadric q = defining_poly(ball);
    CVector z(2);
    z << Complex(0.3, 0.1), Complex(0.0, 0.2);
    CHECK(q.eval(z) == doctest::Approx(1.0 - 0.09 - 0.01 - 0.04).epsilon(1e-14));

    // A = (0, 0.3): real form 1 - x1^2 - y1^2 - 1.6 x2^2 - 0.4 y2^2
    EllipsoidParams p2{{0.0, 0.3}};
    RealQuadric q2 = defining_poly(p2);
    auto eval_real = [&](double x1, double y1, double x2, double y2) {
        CVector zz(2);
        zz << Complex(x1, y1), Complex(x2, y2);
        return q2.eval(zz);
    };
    CHECK(eval_real(1.0, 0.0, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(eval_real(0.0, 0.0, 1.0, 0.0) == doctest::Approx(-0.6).epsilon(1e-14));
    CHECK(eval_real(0.0, 0.0, 0.0, 1.0) == doctest::Approx(0.6).epsilon(1e-14));

    // degeneration witness: A_n -> 1/2 kills the y_n direction
    EllipsoidParams p3{{0.0, 0.4999999}};
    RealQuadric q3 = defining_poly(p3);
    CVector z3(2);
    z3 << Complex(0, 0), Complex(0, 1);
    CHECK(q3.eval(z3) == doctest::Approx(1.0 - 2e-7).epsilon(1e-6));

    CHECK_THROWS_AS(defining_poly(EllipsoidParams{{0.5, 0.1}}), ValidationError);
}

TEST_CASE("quadric classification") {
    // f_A keeps its written sign: the quadratic part opens downward
    auto cls = classify_quadric(defining_poly(EllipsoidParams{{0.1, 0.2}}));
    CHECK(cls.cls == QuadricClass::NegativeDefinite);
    CHECK(cls.margin > 0.0);

    RealQuadric indef;
    indef.H = CMatrix::Zero(1, 1);
    indef.B = CMatrix::Zero(1, 1);
    indef.B(0, 0) = Complex(1.0, 0.0);  // Re(z^2) = x^2 - y^2
    indef.l = CVector::Zero(1);
    CHECK(classify_quadric(indef).cls == QuadricClass::IndefiniteOrDegenerate);

    RealQuadric degen;  // x^2 alone: H + B balance kills y^2
    degen.H = CMatrix::Identity(1, 1) * 0.5;
    degen.B = CMatrix::Identity(1, 1) * 0.5;
    degen.l = CVector::Zero(1);
    CHECK(classify_quadric(degen).cls == QuadricClass::IndefiniteOrDegenerate);
}

TEST_CASE("takagi factorization reconstructs complex symmetric matrices") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + trial % 3;
        CMatrix B(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) B(i, j) = Complex(g(rng), g(rng));
        }
        B = ((B + B.transpose()) / 2.0).eval();
        auto tak = takagi_factor(B);
        CMatrix rec = tak.U * tak.sigma.asDiagonal() * tak.U.transpose();
        CHECK((rec - B).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((tak.U.adjoint() * tak.U - CMatrix::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        for (int j = 0; j + 1 < n; ++j) CHECK(tak.sigma(j) <= tak.sigma(j + 1));
        CHECK(tak.sigma(0) >= 0.0);
    }
    // degenerate spectrum
    CMatrix Z = CMatrix::Zero(3, 3);
    auto tz = takagi_factor(Z);
    CHECK(tz.sigma.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalization fixes f_A itself") {
    for (auto A : {std::vector<double>{0.0, 0.0}, {0.1, 0.2}, {0.3, 0.3},
                   {0.0, 0.45}}) {
        EllipsoidParams params{A};
        auto res = normalize_ellipsoid(defining_poly(params));
        REQUIRE(res.params.A.size() == A.size());
        for (std::size_t j = 0; j < A.size(); ++j) {
            CHECK(res.params.A[j] == doctest::Approx(A[j]).epsilon(1e-12));
        }
        CHECK(res.lambda == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(res.residual <= 1e-10);
    }
}

TEST_CASE("normalization round trips recover A through random affine maps") {
    std::mt19937_64 rng(2024);
    int passed = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto params = random_params(rng, 2, 0.49);
        auto psi = random_affine(rng, 2, 0.3, 0.3);
        RealQuadric q = defining_poly(params).pullback(psi.inverse());
        auto res = normalize_ellipsoid(q);
        bool ok = true;
        for (int j = 0; j < 2; ++j) {
            ok = ok && std::abs(res.params.A[j] - params.A[j]) < 1e-8;
        }
        ok = ok && res.residual <= 1e-10;
        if (ok) ++passed;
    }
    CHECK(passed == 200);
}

TEST_CASE("scaled and rotated balls normalize to A = 0") {
    std::mt19937_64 rng(9);
    EllipsoidParams ball{{0.0, 0.0}};
    // q = 3 (1 - |Uz|^2) for a unitary U (rotation times column phases)
    double c = std::cos(0.7), s = std::sin(0.7);
    CMatrix U(2, 2);
    U << c * std::polar(1.0, 0.3), -s * std::polar(1.0, -0.5),
        s * std::polar(1.0, 0.3), c * std::polar(1.0, -0.5);
    RealQuadric q = defining_poly(ball).pullback(U, CVector::Zero(2));
    q.H *= 3.0;
    q.B *= 3.0;
    q.l *= 3.0;
    q.r0 *= 3.0;
    auto res = normalize_ellipsoid(q);
    CHECK(res.params.A[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.params.A[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("indefinite and unbounded inputs are rejected") {
    RealQuadric indef;
    indef.H = CMatrix::Zero(2, 2);
    indef.B = CMatrix::Identity(2, 2);
    indef.l = CVector::Zero(2);
    indef.r0 = 1.0;
    CHECK_THROWS_AS(normalize_ellipsoid(indef), ValidationError);

    // positive-definite quadratic part: {q > 0} unbounded
    RealQuadric unb = defining_poly(EllipsoidParams{{0.1, 0.1}});
    unb.H = -unb.H;
    unb.B = -unb.B;
    CHECK_THROWS_AS(normalize_ellipsoid(unb), ValidationError);

    // empty interior: constant of the wrong sign
    RealQuadric empty = defining_poly(EllipsoidParams{{0.1, 0.1}});
    empty.r0 = -1.0;
    CHECK_THROWS_AS(normalize_ellipsoid(empty), ValidationError);
}

TEST_CASE("support function closed forms") {
    EllipsoidParams ball{{0.0, 0.0}};
    ConvexBody b(ball, AffineMap::identity(2));
    RVector u = RVector::Zero(4);
    u(0) = 1.0;
    CHECK(b.support(u) == doctest::Approx(1.0).epsilon(1e-14));

    EllipsoidParams pa{{0.0, 0.2}};
    ConvexBody eb(pa, AffineMap::identity(2));
    RVector ux2 = RVector::Zero(4);
    ux2(1) = 1.0;  // x_2 axis
    CHECK(eb.support(ux2) ==
          doctest::Approx(1.0 / std::sqrt(1.4)).epsilon(1e-14));

    AffineMap shift = AffineMap::identity(2);
    shift.xi(0) = Complex(0.1, 0.0);
    ConvexBody tb(ball, shift);
    CHECK(tb.support(u) == doctest::Approx(1.1).epsilon(1e-14));
    RVector um = -u;
    CHECK(tb.support(um) == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("longest chords match 2/sqrt(1 +- 2A_n)") {
    EllipsoidParams pa{{0.0, 0.2}};
    ConvexBody body(pa, AffineMap::identity(2));
    RVector x2 = RVector::Zero(4);
    x2(1) = 1.0;
    RVector y2 = RVector::Zero(4);
    y2(3) = 1.0;
    CHECK(std::abs(body.longest_chord(x2) - 2.0 / std::sqrt(1.4)) < 1e-9);
    CHECK(std::abs(body.longest_chord(y2) - 2.0 / std::sqrt(0.6)) < 1e-9);

    ConvexBody ball(EllipsoidParams{{0.0, 0.0}}, AffineMap::identity(2));
    RVector any(4);
    any << 0.3, -0.2, 0.8, 0.1;
    CHECK(std::abs(ball.longest_chord(any) - 2.0) < 1e-12);
}

TEST_CASE("support/chord consistency on axis directions of centered bodies") {
    EllipsoidParams pa{{0.1, 0.3}};
    ConvexBody body(pa, AffineMap::identity(2));
    for (int axis = 0; axis < 4; ++axis) {
        RVector u = RVector::Zero(4);
        u(axis) = 1.0;
        RVector neg = -u;
        double width = body.support(u) + body.support(neg);
        CHECK(std::abs(body.longest_chord(u) - width) < 1e-9);
    }
}

TEST_CASE("hausdorff distance to the ball") {
    ConvexBody ball(EllipsoidParams{{0.0, 0.0}}, AffineMap::identity(2));
    auto est0 = hausdorff_to_ball(ball, 256, 40);
    CHECK(est0.value < 1e-10);

    // scaled ball rho B: distance rho - 1
    AffineMap scale = AffineMap::identity(2);
    scale.M *= 1.2;
    ConvexBody sb(EllipsoidParams{{0.0, 0.0}}, scale);
    CHECK(hausdorff_to_ball(sb, 256, 40).value ==
          doctest::Approx(0.2).epsilon(1e-9));

    // E((0, 0.1)): max(1 - 1/sqrt(1.2), 1/sqrt(0.8) - 1) = 1/sqrt(0.8) - 1
    ConvexBody e01(EllipsoidParams{{0.0, 0.1}}, AffineMap::identity(2));
    double expected = 1.0 / std::sqrt(0.8) - 1.0;
    CHECK(hausdorff_to_ball(e01, 512, 60).value ==
          doctest::Approx(expected).epsilon(1e-6));

    CHECK_THROWS_AS(hausdorff_to_ball(ball, 50, 10), ValidationError);
}

TEST_CASE("hausdorff distance is monotone in A_n") {
    double prev = -1.0;
    for (double an : {0.0, 0.05, 0.1, 0.2, 0.3, 0.4}) {
        ConvexBody body(EllipsoidParams{{0.0, an}}, AffineMap::identity(2));
        double eps = hausdorff_to_ball(body, 256, 40).value;
        CHECK(eps >= prev - 1e-12);
        prev = eps;
    }
}

TEST_CASE("parameter bound of the hausdorff-close ellipsoids") {
    // identity map, A_n = 0.09: eps = 1/sqrt(0.82) - 1, bound eps/(1+eps^2)
    EllipsoidParams pa{{0.0, 0.09}};
    auto rep = check_hausdorff_bound(pa, AffineMap::identity(2));
    CHECK(rep.epsilon == doctest::Approx(0.104315).epsilon(1e-3));
    CHECK(rep.bound == doctest::Approx(0.103192).epsilon(1e-3));
    CHECK(rep.max_A == doctest::Approx(0.09));
    CHECK(rep.slack > 0.0);

    // A = 0: eps = 0, bound 0 <= 0
    auto rep0 = check_hausdorff_bound(EllipsoidParams{{0.0, 0.0}},
                                      AffineMap::identity(2));
    CHECK(rep0.epsilon < 1e-9);
    CHECK(rep0.max_A == 0.0);
}

TEST_CASE("randomized parameter-bound suite never violates the theorem") {
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto params = random_params(rng, 2, 0.15);
        auto map = random_affine(rng, 2, 0.05, 0.05);
        auto rep = check_hausdorff_bound(params, map);
        CHECK(rep.epsilon < 0.5);
        CHECK(rep.max_A <= rep.bound + 1e-12);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("containment checks") {
    ConvexBody ball(EllipsoidParams{{0.0, 0.0}}, AffineMap::identity(2));
    CHECK_NOTHROW(check_containment(ball, 0.1));

    ConvexBody e05(EllipsoidParams{{0.0, 0.0, }}, AffineMap::identity(2));
    EllipsoidParams pa{{0.0, 0.05}};
    ConvexBody body(pa, AffineMap::identity(2));
    double eps = hausdorff_to_ball(body, 512, 60).value;
    CHECK_NOTHROW(check_containment(body, eps * 1.05));

    AffineMap shift = AffineMap::identity(2);
    shift.xi(0) = Complex(0.3, 0.0);
    ConvexBody tb(EllipsoidParams{{0.0, 0.0}}, shift);
    CHECK_NOTHROW(check_containment(tb, 0.35));
    CHECK_THROWS_AS(check_containment(tb, 0.25), TheoremViolation);
    CHECK_THROWS_AS(check_containment(ball, 0.7), ValidationError);
}
