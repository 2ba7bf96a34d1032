#include "fixtures.hpp"
#include "oracles.hpp"

#include "wlab/fitting.hpp"
#include "wlab/generators.hpp"

#include <doctest.h>

#include <sstream>

using namespace wlab;
using oracle::rel_err;

namespace {

CurvatureSampleSet line_samples(double m, double n, const std::vector<double>& k2)
{
    CurvatureSampleSet s;
    for (double x : k2) {
        s.samples.push_back({m * x + n, x, 0, 0});
    }
    return s;
}

CurvatureSampleSet swap_labels(CurvatureSampleSet s)
{
    for (CurvatureSample& c : s.samples) {
        std::swap(c.k1, c.k2);
    }
    return s;
}

template <class F>
ErrorKind error_kind(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InternalConsistency;
}

} // namespace

TEST_CASE("fit_lw: exact line k1 = 2 k2 + 0.5")
{
    const LWFit fit = fit_lw(line_samples(2, 0.5, {-1, -0.3, 0.2, 0.7, 1.5}));
    CHECK(std::abs(fit.as_given.m - 2) < 1e-12);
    CHECK(std::abs(fit.as_given.n - 0.5) < 1e-12);
    CHECK(fit.as_given.rms < 1e-12);
    REQUIRE(fit.swapped.has_value());
    CHECK(std::abs(fit.swapped->m - 0.5) < 1e-12);
    CHECK(std::abs(fit.swapped->n + 0.25) < 1e-12);
}

TEST_CASE("fit_lw: exactness and labeling duality on random lines")
{
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> M(-3, 3), N(-2, 2), K(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        double m = M(rng);
        if (std::abs(m) < 0.05) {
            m = 0.05;
        }
        const double n = N(rng);
        std::vector<double> k2(20);
        for (double& x : k2) {
            x = K(rng);
        }
        const CurvatureSampleSet given = line_samples(m, n, k2);
        const LWFit fit = fit_lw(given);
        CHECK(rel_err(fit.as_given.m, m) < 1e-10);
        CHECK(rel_err(fit.as_given.n, n) < 1e-10);

        const LWFit dual = fit_lw(swap_labels(given));
        CHECK(rel_err(dual.as_given.m, 1 / fit.as_given.m) < 1e-8);
        CHECK(rel_err(dual.as_given.n, -fit.as_given.n / fit.as_given.m) < 1e-8);
        REQUIRE(dual.swapped.has_value());
        CHECK(rel_err(dual.swapped->m, m) < 1e-8);
        CHECK(rel_err(dual.swapped->n, n) < 1e-8);
    }
}

TEST_CASE("fit_lw: errors")
{
    CHECK(error_kind([] { fit_lw(line_samples(2, 0, {1, 2})); }) == ErrorKind::InsufficientSamples);
    CHECK(error_kind([] { fit_lw(line_samples(2, 0, {1, NAN, 2})); }) == ErrorKind::NonFiniteInput);
    CHECK(error_kind([] { fit_lw(line_samples(1, 0, {0.2, 1, 3})); }) == ErrorKind::UnderdeterminedUmbilic);
    CHECK(error_kind([] { fit_lw(line_samples(2, 1, {0.5, 0.5, 0.5})); }) == ErrorKind::InsufficientSpread);

    const ParamSurface sphere = gen_fixture({FixtureKind::Sphere, 1});
    CHECK(error_kind([&] { fit_lw(sample_curvatures(sphere, 20, 20)); }) == ErrorKind::UnderdeterminedUmbilic);
}

TEST_CASE("fit_lw: a k1 that does not vary leaves out the swapped fit")
{
    CurvatureSampleSet s;
    for (double x : {-1.0, 0.0, 0.5}) {
        s.samples.push_back({1, x, 0, 0});
    }
    const LWFit fit = fit_lw(s);
    CHECK_FALSE(fit.swapped.has_value());
    CHECK(std::abs(fit.as_given.m) < 1e-14);
    CHECK(std::abs(fit.best().n - 1) < 1e-14);
}

TEST_CASE("sample_curvatures matches pointwise evaluation")
{
    const ParamSurface torus = gen_fixture({FixtureKind::Torus, 2, 1});
    const CurvatureSampleSet s = sample_curvatures(torus, 7, 5);
    REQUIRE(s.samples.size() == 35);
    for (const CurvatureSample& c : s.samples) {
        const CurvatureData d = curvature(evaluate_jet(torus, c.u, c.v));
        CHECK(c.k1 == d.k1);
        CHECK(c.k2 == d.k2);
    }
    CHECK(s.scale() == doctest::Approx(1.0));
}

TEST_CASE("classify: the five reference verdicts")
{
    const ClassificationReport sphere = classify(gen_fixture({FixtureKind::Sphere, 1}));
    CHECK(sphere.verdict == Verdict::Umbilic);
    CHECK(sphere.fit_status == "umbilic");

    const ClassificationReport cat = classify(gen_fixture({FixtureKind::Catenoid, 1}));
    CHECK(cat.verdict == Verdict::SurfaceOfRevolution);
    CHECK(cat.is_lw);
    CHECK(cat.is_minimal);
    REQUIRE(cat.fit.has_value());
    CHECK(std::abs(cat.fit->best().m + 1) < 1e-6);
    CHECK(std::abs(cat.fit->best().n) < 1e-6);

    const ClassificationReport cyl = classify(gen_fixture({FixtureKind::Cylinder, 1}));
    CHECK(cyl.verdict == Verdict::SurfaceOfRevolution);
    CHECK(cyl.is_lw);
    CHECK_FALSE(cyl.is_minimal);

    RiemannExampleParams p;
    p.lambda = 1;
    const RiemannExample ex = gen_riemann_example(p);
    const ClassificationReport rie = classify(ex.shape);
    CHECK(rie.verdict == Verdict::RiemannMinimalExample);
    CHECK(rie.is_lw);
    CHECK(rie.is_riemann_type_minimal);
    CHECK_FALSE(rie.is_rotational);
    REQUIRE(rie.fit.has_value());
    CHECK(std::abs(rie.fit->best().m + 1) < 1e-6);
    CHECK(std::abs(rie.fit->best().n) < 1e-6);
    // The generic path sees the same surface through H and K alone.
    CHECK(classify(ex.surface).verdict == Verdict::RiemannMinimalExample);

    const ClassificationReport sine = classify(fixture::sine_riemann_type());
    CHECK(sine.verdict == Verdict::NotLinearWeingarten);
    CHECK_FALSE(sine.is_lw);
    CHECK(sine.lw_residual > 1e-3);
}

TEST_CASE("classify: rotational LW profiles and the torus")
{
    const RotationalLW delaunay = gen_rotational_lw(LWRelation(-1, 1), {0.7, 0, std::numbers::pi / 2, -1, 1, 0});
    const ClassificationReport r = classify(delaunay.surface);
    CHECK(r.verdict == Verdict::SurfaceOfRevolution);
    CHECK(r.is_rotational);
    CHECK(r.rotation_defect < 1e-9);

    const ClassificationReport torus = classify(gen_fixture({FixtureKind::Torus, 2, 1}));
    CHECK(torus.verdict == Verdict::NotLinearWeingarten);
    CHECK(torus.fit_status == "zero-slope");
    CHECK(torus.is_rotational);

    // A surface of revolution presented as a Riemann-type surface.
    RiemannTypeSurface unduloid;
    unduloid.r = SmoothFunction::from_callable([](double u) { return 1.2 + 0.3 * std::sin(u); });
    CHECK(classify(unduloid).is_rotational);
}

TEST_CASE("classify: verdict agrees with the flags")
{
    for (const ClassificationReport& r :
         {classify(gen_fixture({FixtureKind::Catenoid, 2})), classify(fixture::generic_riemann_type())}) {
        if (r.verdict == Verdict::RiemannMinimalExample) {
            CHECK((r.is_lw && r.is_minimal && !r.is_rotational));
        }
        if (r.verdict == Verdict::SurfaceOfRevolution) {
            CHECK((r.is_lw && r.is_rotational));
        }
        if (r.verdict == Verdict::NotLinearWeingarten) {
            CHECK_FALSE(r.is_lw);
        }
        CHECK_FALSE(r.verdict_text.empty());
    }
}

TEST_CASE("report writers")
{
    RiemannExampleParams p;
    p.lambda = 1;
    const ClassificationReport r = classify(gen_riemann_example(p).shape);

    std::ostringstream text;
    write_report_text(text, r);
    CHECK(text.str().rfind("verdict: riemann-minimal-example\n", 0) == 0);
    CHECK(text.str().find("\nis_rotational: false\n") != std::string::npos);
    CHECK(text.str().find("\nm_given: ") != std::string::npos);

    std::ostringstream csv;
    write_report_csv(csv, r);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "key,value");
    std::getline(in, line);
    CHECK(line == "verdict,riemann-minimal-example");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find(',') != std::string::npos);
    }
    CHECK(rows > 10);

    CHECK(to_string(Verdict::Umbilic) == "umbilic");
    CHECK(to_string(Verdict::NotLinearWeingarten) == "not-lw");
}
