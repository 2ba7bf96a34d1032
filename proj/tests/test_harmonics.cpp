#include "fixtures.hpp"
#include "oracles.hpp"

#include "wlab/generators.hpp"
#include "wlab/harmonics.hpp"

#include <doctest.h>

#include <complex>
#include <numbers>
#include <sstream>

using namespace wlab;
using oracle::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> five_u(double u0, double u1)
{
    std::vector<double> u;
    for (int i = 1; i <= 5; ++i) {
        u.push_back(u0 + (u1 - u0) * i / 6.0);
    }
    return u;
}

// Surface of revolution as a Riemann-type surface with a, b constant.
RiemannTypeSurface unduloid_like()
{
    RiemannTypeSurface s;
    s.a = SmoothFunction::constant(0.3);
    s.b = SmoothFunction::constant(-1.0);
    s.r = SmoothFunction::from_callable([](double u) { return 1.2 + 0.4 * std::sin(2 * u); },
                                        [](double u) { return 0.8 * std::cos(2 * u); },
                                        [](double u) { return -1.6 * std::sin(2 * u); });
    return s;
}

} // namespace

TEST_CASE("extract_harmonics: examples")
{
    const HarmonicSpectrum c3 = extract_harmonics([](double v) { return std::cos(3 * v); }, 12);
    for (int j = 0; j <= 12; ++j) {
        CHECK(std::abs(c3.A[j] - (j == 3 ? 1.0 : 0.0)) < 1e-12);
        CHECK(std::abs(c3.B[j]) < 1e-12);
    }
    const HarmonicSpectrum s1 = extract_harmonics([](double v) { return 2 + std::sin(v); }, 4);
    CHECK(std::abs(s1.A[0] - 2) < 1e-12);
    CHECK(std::abs(s1.B[1] - 1) < 1e-12);
    CHECK(s1.max_abs(2) < 1e-12);
}

TEST_CASE("extract_harmonics: exact on random trig polynomials of degree <= 12")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> A(13), B(13);
        for (int j = 0; j <= 12; ++j) {
            A[j] = U(rng);
            B[j] = j == 0 ? 0 : U(rng);
        }
        auto f = [&](double v) {
            double s = A[0];
            for (int j = 1; j <= 12; ++j) {
                s += A[j] * std::cos(j * v) + B[j] * std::sin(j * v);
            }
            return s;
        };
        const HarmonicSpectrum h = extract_harmonics(f, 12);
        for (int j = 0; j <= 12; ++j) {
            CHECK(std::abs(h.A[j] - A[j]) < 1e-12);
            CHECK(std::abs(h.B[j] - B[j]) < 1e-12);
        }
        for (double v = 0; v < 2 * kPi; v += 0.1) {
            CHECK(std::abs(h.evaluate(v) - f(v)) < 1e-12);
        }
    }
}

TEST_CASE("extract_harmonics: needs N >= 2J + 2")
{
    try {
        extract_harmonics([](double) { return 1.0; }, 12, 25);
        FAIL("expected InsufficientSamples");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientSamples);
    }
    CHECK_NOTHROW(extract_harmonics([](double) { return 1.0; }, 12, 26));
}

TEST_CASE("closed_form_A6_B6 examples")
{
    const CoefficientPair one = closed_form_A6_B6(1, 0.7, 1.3, 0.4, -0.2);
    CHECK(one.A == 0.0);
    CHECK(one.B == 0.0);
    const CoefficientPair branch = closed_form_A6_B6(2.5, 0.7, 1.3, 0, 0.7 * 1.3);
    CHECK(std::abs(branch.A) < 1e-15);
    CHECK(std::abs(branch.B) < 1e-15);
    const CoefficientPair direct = closed_form_A6_B6(2, 1, 1, 1, 0);
    CHECK(direct.A == doctest::Approx(-1.0 / 8));
    CHECK(direct.B == 0.0);
}

TEST_CASE("closed_form_A4_B4_branch examples")
{
    for (double m : {2.0 / 3, 1.5}) {
        const CoefficientPair c = closed_form_A4_B4_branch(m, 0.9, 1.1, 0.3, -0.7);
        CHECK(std::abs(c.A) < 1e-14);
        CHECK(std::abs(c.B) < 1e-14);
    }
    CHECK(closed_form_A4_B4_branch(3, 0.9, 1.1, 0.4, 0.4).A == 0.0);
    const CoefficientPair d = closed_form_A4_B4_branch(1, 1, 1, 1, 0);
    CHECK(d.A == doctest::Approx(1.0 / 8));
    CHECK(d.B == 0.0);
}

TEST_CASE("twelfth-power polynomials")
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> U(-1.5, 1.5), Phi(-10, 10), Speed(0.1, 1.6);
    for (int i = 0; i < 100; ++i) {
        const double a = U(rng), b = U(rng);
        const std::complex<double> z = std::pow(std::complex<double>(a, b), 12);
        const double s = std::pow(std::hypot(a, b), 12);
        CHECK(std::abs(twelfth_power_real(a, b) - z.real()) <= 1e-10 * s);
        CHECK(std::abs(twelfth_power_imag_quarter(a, b) - z.imag() / 4) <= 1e-10 * s);

        const double phi = Phi(rng), sp = Speed(rng);
        const double pw = std::pow(sp, 12);
        CHECK(std::abs(twelfth_power_real(sp * std::cos(phi), sp * std::sin(phi)) - pw * std::cos(12 * phi)) <=
              1e-9 * pw);
        CHECK(std::abs(twelfth_power_imag_quarter(sp * std::cos(phi), sp * std::sin(phi)) -
                       pw * std::sin(12 * phi) / 4) <= 1e-9 * pw);
        CHECK(std::abs(twelfth_power_imag_quarter(a, a)) <= 1e-12 * s);
    }
}

TEST_CASE("closed_form_A12_B12: zero offset and calibration against the DFT")
{
    try {
        closed_form_A12_B12(0, 1, 1, 0);
        FAIL("expected ZeroOffset");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroOffset);
    }

    // a = u, b = 0, r = 1, relation (2, 1), u = 0.
    RiemannTypeSurface s;
    s.a = SmoothFunction::from_callable([](double u) { return u; }, [](double) { return 1.0; },
                                        [](double) { return 0.0; });
    const ParamSurface x = build_riemann_type(s);
    const LWRelation rel(2, 1);
    const HarmonicSpectrum h = residual_spectrum(x, rel, 0.0, 12);
    const TwelfthHarmonic closed = closed_form_A12_B12(1, 1, 1, 0);
    CHECK(closed.A12 == doctest::Approx(1.0 / 2048));
    CHECK(std::abs(h.A[12] - closed.A12) < 1e-12);
    CHECK(std::abs(h.B[12]) < 1e-12);

    // The DFT fixes the prefactors independently of m and of the surface.
    const RiemannTypeSurface g = fixture::generic_riemann_type();
    const ParamSurface gx = build_riemann_type(g);
    for (const double m : {-2.0, 0.5, 3.0}) {
        const LWRelation r(m, 0.7);
        for (double u : five_u(-1, 1)) {
            const RiemannPointData d = sample_riemann_data(g, u);
            const HarmonicSpectrum sp = residual_spectrum(gx, r, u, 12);
            const double common = std::pow(0.7, 4) * std::pow(d.r, 12);
            const double A = twelfth_power_real(d.a_d, d.b_d), B = twelfth_power_imag_quarter(d.a_d, d.b_d);
            const double scale = residual_scale_along_circle(gx, r, u);
            CHECK(std::abs(sp.A[12] - common * A / 2048) < 1e-9 * scale);
            CHECK(std::abs(sp.B[12] - common * B / 512) < 1e-9 * scale);
            // b' = 0 at u = 0 makes B vanish there.
            if (std::abs(B) > 1e-6) {
                CHECK(rel_err(sp.B[12] / (common * B), 1.0 / 512, 0) < 1e-7);
            }
            CHECK(rel_err(sp.A[12] / (common * A), 1.0 / 2048, 0) < 1e-7);
        }
    }
}

TEST_CASE("closed_form_A3_B3 examples")
{
    const CoefficientPair minimal = closed_form_A3_B3(-1, 1.3, 0.4, 0.2, 0.9, -0.5);
    CHECK(minimal.A == 0.0);
    CHECK(minimal.B == 0.0);
    const CoefficientPair straight = closed_form_A3_B3(2, 1.3, 0.4, 0.2, 0, 0);
    CHECK(straight.A == 0.0);
    CHECK(straight.B == 0.0);

    // a' = phi' cos phi, b' = phi' sin phi.
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int i = 0; i < 50; ++i) {
        const double phi = U(rng), dphi = i % 2 ? 1.0 : U(rng), ddphi = i % 2 ? 0.0 : U(rng);
        const double m = U(rng), r = 1 + std::abs(U(rng)) / 3;
        const double ad = dphi * std::cos(phi), bd = dphi * std::sin(phi);
        const double add = ddphi * std::cos(phi) - dphi * dphi * std::sin(phi);
        const double bdd = ddphi * std::sin(phi) + dphi * dphi * std::cos(phi);
        const CoefficientPair c = closed_form_A3_B3(m, r, ad, bd, add, bdd);
        const double pre = 0.25 * (1 + m) * (1 + m) * std::pow(r, 5) * dphi * dphi;
        const double A = pre * (-ddphi * std::cos(3 * phi) + dphi * dphi * std::sin(3 * phi));
        const double B = -pre * (ddphi * std::sin(3 * phi) + dphi * dphi * std::cos(3 * phi));
        const double scale = std::abs(pre) * (std::abs(ddphi) + dphi * dphi) + 1e-300;
        CHECK(std::abs(c.A - A) / scale < 1e-12);
        CHECK(std::abs(c.B - B) / scale < 1e-12);
    }
}

TEST_CASE("degree bounds of the residual expansion")
{
    const auto g = fixture::generic_cyclic();
    const CyclicSurface cyc = build_cyclic(g.curve, g.data);
    for (const double m : {-1.5, 0.5, 2.0, 3.0}) {
        const LWRelation rel(m, 0);
        for (double u : five_u(0, 2)) {
            const HarmonicSpectrum h = residual_spectrum(cyc.surface, rel, u, 20);
            const double scale = residual_scale_along_circle(cyc.surface, rel, u);
            CHECK(h.max_abs(7) < 1e-9 * scale);
            CHECK(h.max_abs(6) > 1e3 * h.max_abs(7)); // the bound is attained
        }
    }

    const RiemannTypeSurface rt = fixture::generic_riemann_type();
    const ParamSurface x = build_riemann_type(rt);
    for (double u : five_u(-1, 1)) {
        const LWRelation zero(2, 0), offset(2, 0.8);
        const HarmonicSpectrum h0 = residual_spectrum(x, zero, u, 20);
        CHECK(h0.max_abs(4) < 1e-9 * residual_scale_along_circle(x, zero, u));
        const HarmonicSpectrum h1 = residual_spectrum(x, offset, u, 20);
        const double s1 = residual_scale_along_circle(x, offset, u);
        CHECK(h1.max_abs(13) < 1e-9 * s1);
        CHECK(h1.max_abs(12) > 1e3 * h1.max_abs(13));
    }
}

TEST_CASE("A6/B6 match the DFT up to one constant along the cyclic fixture")
{
    const auto g = fixture::generic_cyclic();
    const CyclicSurface cyc = build_cyclic(g.curve, g.data);
    for (const double m : {2.0, -0.5}) {
        const LWRelation rel(m, 0);
        std::vector<double> ratios;
        for (double u : five_u(0, 2)) {
            const auto closed = closed_form_for_cyclic(sample_cyclic_data(g.curve, g.data, u), rel);
            REQUIRE(closed);
            CHECK(closed->j == 6);
            const CoefficientReport r =
                verify_coefficient_identity(cyc.surface, rel, u, 6, closed->value, kCyclicSixthCalibration);
            CHECK(r.pass);
            ratios.push_back(r.ratio);
        }
        for (double q : ratios) {
            CHECK(rel_err(q, ratios.front(), 0) < 1e-7);
            CHECK(rel_err(q, kCyclicSixthCalibration, 0) < 1e-7);
        }
    }
    const auto none = closed_form_for_cyclic(sample_cyclic_data(g.curve, g.data, 1.0), LWRelation(2, 1));
    CHECK_FALSE(none);
}

TEST_CASE("A3/B3 and A12/B12 match the DFT along a Riemann-type fixture")
{
    const RiemannTypeSurface rt = fixture::generic_riemann_type();
    const ParamSurface x = build_riemann_type(rt);
    for (const LWRelation rel : {LWRelation(2, 0), LWRelation(0.5, 0), LWRelation(2, 1), LWRelation(-3, 0.4)}) {
        std::vector<double> ratios;
        for (double u : five_u(-1, 1)) {
            const ClosedFormAt closed = closed_form_for_riemann_type(sample_riemann_data(rt, u), rel);
            CHECK(closed.j == (rel.n() == 0 ? 3 : 12));
            const CoefficientReport r =
                verify_coefficient_identity(x, rel, u, closed.j, closed.value, closed.calibration);
            CHECK(r.pass);
            ratios.push_back(r.ratio);
        }
        for (double q : ratios) {
            CHECK(rel_err(q, ratios.front(), 0) < 1e-7);
        }
    }
}

TEST_CASE("Riemann example: the expanded residual vanishes for (-1, 0)")
{
    RiemannExampleParams p;
    p.lambda = 1;
    const RiemannExample ex = gen_riemann_example(p);
    const LWRelation rel(-1, 0);
    for (double u : five_u(ex.shape.u0, ex.shape.u1)) {
        const HarmonicSpectrum h = residual_spectrum(ex.surface, rel, u, 12);
        const double scale = residual_scale_along_circle(ex.surface, rel, u);
        CHECK(h.max_abs(0) < 1e-8 * scale);
        // The squared residual too.
        const HarmonicSpectrum sq = extract_harmonics(
            [&](double v) { return lw_residual_poly(evaluate_jet(ex.surface, u, v), rel); }, 12);
        CHECK(sq.max_abs(0) < 1e-8 * scale * scale);
        for (int j = 1; j <= 6; ++j) {
            const CoefficientReport r = verify_coefficient_identity(ex.surface, rel, u, j, {0, 0});
            CHECK(r.pass);
            CHECK(std::abs(r.dft_A) < 1e-8 * r.scale);
            CHECK(std::abs(r.dft_B) < 1e-8 * r.scale);
        }
    }
}

TEST_CASE("surfaces of revolution: spectrum concentrated at j = 0")
{
    const RiemannTypeSurface rev = unduloid_like();
    const ParamSurface x = build_riemann_type(rev);
    for (double u : five_u(-1, 1)) {
        const HarmonicSpectrum h = residual_spectrum(x, LWRelation(3, 0.2), u, 12);
        CHECK(std::abs(h.A[0]) > 0);
        CHECK(h.max_abs(1) < 1e-10 * std::abs(h.A[0]));
    }

    RotationalProfileParams pp;
    pp.rho0 = 1.5;
    pp.theta0 = kPi / 2;
    pp.s_min = -0.5;
    pp.s_max = 0.5;
    const LWRelation rel(2, -1);
    const RotationalLW rot = gen_rotational_lw(rel, pp);
    for (double s : {-0.4, 0.0, 0.3}) {
        const double scale = residual_scale_along_circle(rot.surface, rel, s);
        for (int j = 1; j <= 12; ++j) {
            const CoefficientReport r = verify_coefficient_identity(rot.surface, rel, s, j, {0, 0});
            CHECK(std::abs(r.dft_A) < 1e-10 * scale);
            CHECK(std::abs(r.dft_B) < 1e-10 * scale);
        }
    }
}

TEST_CASE("coefficient CSV layout")
{
    CoefficientReport with;
    with.u = 0.5;
    with.j = 3;
    with.dft_A = 1;
    with.dft_B = -2;
    with.closed_A = 1;
    with.closed_B = -2;
    with.ratio = 1;
    with.pass = true;
    CoefficientReport without;
    without.u = 0.25;
    without.j = 4;
    without.has_closed = false;
    std::ostringstream out;
    write_coefficient_csv(out, {with, without});
    CHECK(out.str() == "u,j,dft_A,dft_B,closed_A,closed_B,ratio,pass\n"
                       "0.5,3,1,-2,1,-2,1,true\n"
                       "0.25,4,0,0,,,,\n");
}
