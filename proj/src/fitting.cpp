#include "wlab/fitting.hpp"

#include "wlab/format.hpp"
#include "wlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace wlab {

namespace {

constexpr double kDegenerateFraction = 1e-10;

struct Range {
    double lo = INFINITY, hi = -INFINITY;
    void add(double x)
    {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    double width() const { return hi - lo; }
};

LineFit fit_line(const std::vector<CurvatureSample>& samples, bool swap)
{
    const double count = static_cast<double>(samples.size());
    double mx = 0, my = 0;
    for (const auto& s : samples) {
        mx += swap ? s.k1 : s.k2;
        my += swap ? s.k2 : s.k1;
    }
    mx /= count;
    my /= count;
    double sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        const double dx = (swap ? s.k1 : s.k2) - mx;
        const double dy = (swap ? s.k2 : s.k1) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    LineFit fit;
    fit.m = sxy / sxx;
    fit.n = my - fit.m * mx;
    double ss = 0;
    for (const auto& s : samples) {
        const double x = swap ? s.k1 : s.k2;
        const double y = swap ? s.k2 : s.k1;
        const double r = y - fit.m * x - fit.n;
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / count);
    return fit;
}

std::string verdict_text(Verdict v, bool riemann_type)
{
    switch (v) {
    case Verdict::Umbilic:
        return "umbilic at every sample: k1 = m k2 + (1 - m) k holds for every m, so (m, n) is underdetermined";
    case Verdict::SurfaceOfRevolution:
        return "linear Weingarten surface of revolution";
    case Verdict::RiemannMinimalExample:
        return "Riemann minimal example: non-rotational, minimal, (m, n) = (-1, 0)";
    case Verdict::NonRotationalLW:
        return riemann_type ? "non-rotational, non-minimal linear Weingarten surface of Riemann-type "
                              "(no such surface is expected; check sampling and tolerance)"
                            : "non-rotational, non-minimal linear Weingarten surface";
    case Verdict::NotLinearWeingarten:
        return riemann_type ? "not a linear Weingarten surface of Riemann-type"
                            : "not a linear Weingarten surface";
    }
    return "";
}

void decide(ClassificationReport& r, bool riemann_type)
{
    r.is_riemann_type_minimal = r.is_lw && r.is_minimal && !r.is_rotational && r.fit_status != "umbilic";
    if (r.fit_status == "umbilic") {
        r.verdict = Verdict::Umbilic;
    } else if (!r.is_lw) {
        r.verdict = Verdict::NotLinearWeingarten;
    } else if (r.is_rotational) {
        r.verdict = Verdict::SurfaceOfRevolution;
    } else if (r.is_riemann_type_minimal) {
        r.verdict = Verdict::RiemannMinimalExample;
    } else {
        r.verdict = Verdict::NonRotationalLW;
    }
    r.verdict_text = verdict_text(r.verdict, riemann_type);
}

ClassificationReport classify_samples(const ParamSurface& surface, const ClassifyOptions& options)
{
    ClassificationReport r;
    const CurvatureSampleSet set = sample_curvatures(surface, options.nu, options.nv);
    r.samples = static_cast<int>(set.samples.size());
    r.scale = set.scale();

    for (const auto& s : set.samples) {
        r.max_abs_H = std::max(r.max_abs_H, std::abs(0.5 * (s.k1 + s.k2)));
    }
    r.is_minimal = r.max_abs_H <= options.tol * r.scale;

    try {
        r.fit = fit_lw(set);
        r.fit_status = "line";
        r.lw_residual = r.fit->best().rms;
        // k1 = 0 k2 + n (e.g. the torus, whose meridian curvature is constant) is not LW.
        auto admissible = [&](const LineFit& f) {
            return f.rms <= options.tol * r.scale && std::abs(f.m) > options.tol;
        };
        r.is_lw = admissible(r.fit->as_given) || (r.fit->swapped && admissible(*r.fit->swapped));
        if (!r.is_lw && r.lw_residual <= options.tol * r.scale) {
            r.fit_status = "zero-slope";
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::UnderdeterminedUmbilic) {
            r.fit_status = "umbilic";
            r.is_lw = true;
        } else if (e.kind() == ErrorKind::InsufficientSpread) {
            Range k1;
            for (const auto& s : set.samples) {
                k1.add(s.k1);
            }
            // Both curvatures constant: LW for a whole pencil of lines through (k2, k1).
            const bool constant = k1.width() <= kDegenerateFraction * r.scale;
            r.fit_status = constant ? "constant" : "k2-constant";
            r.is_lw = constant;
        } else {
            throw;
        }
    }

    // v-independence of H and K along each u-circle.
    double defect = 0;
    for (int i = 0; i < options.nu; ++i) {
        Range h, k;
        for (int j = 0; j < options.nv; ++j) {
            const auto& s = set.samples[static_cast<std::size_t>(i) * options.nv + j];
            h.add(0.5 * (s.k1 + s.k2));
            k.add(s.k1 * s.k2);
        }
        const double scale = std::max(r.scale, 1e-300);
        defect = std::max({defect, h.width() / scale, k.width() / (scale * scale)});
    }
    r.rotation_defect = defect;
    r.is_rotational = defect <= options.tol;
    return r;
}

} // namespace

double CurvatureSampleSet::scale() const
{
    double s = 0;
    for (const auto& x : samples) {
        s = std::max({s, std::abs(x.k1), std::abs(x.k2)});
    }
    return s;
}

const LineFit& LWFit::best() const
{
    if (swapped && swapped->rms < as_given.rms) {
        return *swapped;
    }
    return as_given;
}

LWFit fit_lw(const CurvatureSampleSet& set)
{
    const auto& samples = set.samples;
    if (samples.size() < 3) {
        throw Error(ErrorKind::InsufficientSamples, "fitting needs at least 3 curvature samples");
    }
    Range k1, k2;
    double gap = 0;
    for (const auto& s : samples) {
        if (!std::isfinite(s.k1) || !std::isfinite(s.k2)) {
            throw Error(ErrorKind::NonFiniteInput, "curvature samples must be finite");
        }
        k1.add(s.k1);
        k2.add(s.k2);
        gap = std::max(gap, std::abs(s.k1 - s.k2));
    }
    const double scale = set.scale();
    const double floor = kDegenerateFraction * scale;
    if (gap <= floor) {
        throw Error(ErrorKind::UnderdeterminedUmbilic,
                    "all samples are umbilic; any m fits with n = (1 - m) k");
    }
    if (k2.width() <= floor) {
        std::ostringstream msg;
        msg << "k2 spans only " << k2.width() << " (scale " << scale << ")";
        throw Error(ErrorKind::InsufficientSpread, msg.str());
    }
    LWFit fit;
    fit.scale = scale;
    fit.as_given = fit_line(samples, false);
    if (k1.width() > floor) {
        fit.swapped = fit_line(samples, true);
    }
    return fit;
}

CurvatureSampleSet sample_curvatures(const ParamSurface& surface, int nu, int nv)
{
    const std::vector<UV> grid = interior_grid(surface.domain(), nu, nv);
    CurvatureSampleSet set;
    set.samples.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const CurvatureData c = curvature(evaluate_jet(surface, grid[i].u, grid[i].v));
        set.samples[i] = CurvatureSample{c.k1, c.k2, grid[i].u, grid[i].v};
    });
    return set;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Umbilic: return "umbilic";
    case Verdict::SurfaceOfRevolution: return "surface-of-revolution";
    case Verdict::RiemannMinimalExample: return "riemann-minimal-example";
    case Verdict::NonRotationalLW: return "non-rotational-lw";
    case Verdict::NotLinearWeingarten: return "not-lw";
    }
    return "unknown";
}

ClassificationReport classify(const ParamSurface& surface, const ClassifyOptions& options)
{
    ClassificationReport r = classify_samples(surface, options);
    decide(r, false);
    return r;
}

ClassificationReport classify(const RiemannTypeSurface& shape, const ClassifyOptions& options)
{
    ClassificationReport r = classify_samples(build_riemann_type(shape), options);
    r.rotation_defect = center_total_variation(shape);
    r.is_rotational = is_rotational(shape);
    decide(r, true);
    return r;
}

namespace {

std::vector<std::pair<std::string, std::string>> report_fields(const ClassificationReport& r)
{
    auto num = [](double x) { return format_g12(x); };
    auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
    std::vector<std::pair<std::string, std::string>> f;
    f.emplace_back("verdict", to_string(r.verdict));
    f.emplace_back("verdict_text", r.verdict_text);
    f.emplace_back("samples", std::to_string(r.samples));
    f.emplace_back("curvature_scale", num(r.scale));
    f.emplace_back("fit_status", r.fit_status);
    f.emplace_back("is_lw", flag(r.is_lw));
    f.emplace_back("lw_rms_residual", num(r.lw_residual));
    if (r.fit) {
        f.emplace_back("m_given", num(r.fit->as_given.m));
        f.emplace_back("n_given", num(r.fit->as_given.n));
        f.emplace_back("rms_given", num(r.fit->as_given.rms));
        if (r.fit->swapped) {
            f.emplace_back("m_swapped", num(r.fit->swapped->m));
            f.emplace_back("n_swapped", num(r.fit->swapped->n));
            f.emplace_back("rms_swapped", num(r.fit->swapped->rms));
        }
    }
    f.emplace_back("is_rotational", flag(r.is_rotational));
    f.emplace_back("rotation_defect", num(r.rotation_defect));
    f.emplace_back("is_minimal", flag(r.is_minimal));
    f.emplace_back("max_abs_H", num(r.max_abs_H));
    f.emplace_back("is_riemann_type_minimal", flag(r.is_riemann_type_minimal));
    return f;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

} // namespace

void write_report_text(std::ostream& out, const ClassificationReport& r)
{
    for (const auto& [key, value] : report_fields(r)) {
        out << key << ": " << value << '\n';
    }
}

void write_report_csv(std::ostream& out, const ClassificationReport& r)
{
    out << "key,value\n";
    for (const auto& [key, value] : report_fields(r)) {
        out << key << ',' << csv_escape(value) << '\n';
    }
}

} // namespace wlab
