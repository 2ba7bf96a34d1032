#include "wlab/scene.hpp"

#include "wlab/io.hpp"

#include <cmath>
#include <regex>
#include <set>
#include <sstream>

namespace wlab {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw Error(ErrorKind::Config, "field '" + field + "': " + what);
}

std::string join(const std::string& parent, const std::string& key)
{
    return parent.empty() ? key : parent + "." + key;
}

// Reads fields of one JSON object, fills defaults and rejects unknown keys.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) {
            field_error(path_, "expected an object");
        }
    }

    double number(const std::string& key, double fallback)
    {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return fallback;
        }
        const json& x = j_.at(key);
        if (!x.is_number()) {
            field_error(join(path_, key), "expected a number");
        }
        const double v = x.get<double>();
        if (!std::isfinite(v)) {
            field_error(join(path_, key), "must be finite");
        }
        return v;
    }

    int integer(const std::string& key, int fallback)
    {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return fallback;
        }
        const json& x = j_.at(key);
        if (!x.is_number_integer()) {
            field_error(join(path_, key), "expected an integer");
        }
        return x.get<int>();
    }

    std::string string(const std::string& key, const std::optional<std::string>& fallback)
    {
        seen_.insert(key);
        if (!j_.contains(key)) {
            if (!fallback) {
                field_error(join(path_, key), "is required");
            }
            return *fallback;
        }
        const json& x = j_.at(key);
        if (!x.is_string()) {
            field_error(join(path_, key), "expected a string");
        }
        return x.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key)
    {
        seen_.insert(key);
        if (!j_.contains(key)) {
            field_error(join(path_, key), "is required");
        }
        const json& x = j_.at(key);
        if (!x.is_array()) {
            field_error(join(path_, key), "expected an array of numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i].is_number() || !std::isfinite(x[i].get<double>())) {
                field_error(join(path_, key) + "[" + std::to_string(i) + "]", "expected a finite number");
            }
            out.push_back(x[i].get<double>());
        }
        return out;
    }

    // Normalized function spec.
    json function(const std::string& key, double fallback);

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                field_error(join(path_, it.key()), "unknown field");
            }
        }
    }

    void mark(const std::string& key) { seen_.insert(key); }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

json normalize_function(const json& spec, const std::string& field)
{
    if (spec.is_number()) {
        const double c = spec.get<double>();
        if (!std::isfinite(c)) {
            field_error(field, "must be finite");
        }
        return c;
    }
    ObjectReader r(spec, field);
    const std::string type = r.string("type", std::nullopt);
    json out;
    out["type"] = type;
    if (type == "poly") {
        const auto c = r.numbers("coeffs");
        if (c.empty()) {
            field_error(field + ".coeffs", "needs at least one coefficient");
        }
        out["coeffs"] = c;
    } else if (type == "sin" || type == "cos") {
        out["amplitude"] = r.number("amplitude", 1);
        out["frequency"] = r.number("frequency", 1);
        out["phase"] = r.number("phase", 0);
        out["offset"] = r.number("offset", 0);
    } else if (type == "cosh") {
        out["amplitude"] = r.number("amplitude", 1);
        const double s = r.number("scale", 1);
        if (s == 0) {
            field_error(field + ".scale", "must be nonzero");
        }
        out["scale"] = s;
        out["offset"] = r.number("offset", 0);
    } else if (type == "samples") {
        const auto x = r.numbers("x");
        const auto y = r.numbers("y");
        if (x.size() != y.size()) {
            field_error(field, "x and y must have the same length");
        }
        try {
            (void)SmoothFunction::from_samples(x, y);
        } catch (const Error& e) {
            field_error(field, e.what());
        }
        out["x"] = x;
        out["y"] = y;
    } else {
        field_error(field + ".type", "expected poly, sin, cos, cosh or samples");
    }
    r.finish();
    return out;
}

json ObjectReader::function(const std::string& key, double fallback)
{
    seen_.insert(key);
    if (!j_.contains(key)) {
        return fallback;
    }
    return normalize_function(j_.at(key), join(path_, key));
}

struct KindName {
    SurfaceKind kind;
    const char* name;
};

constexpr KindName kKinds[] = {
    {SurfaceKind::Fixture, "fixture"},
    {SurfaceKind::Cyclic, "cyclic"},
    {SurfaceKind::RiemannType, "riemann-type"},
    {SurfaceKind::RiemannExample, "riemann-example"},
    {SurfaceKind::RotationalLW, "rotational-lw"},
};

json normalize_surface(const json& j, SurfaceKind& kind)
{
    ObjectReader r(j, "surface");
    const std::string name = r.string("kind", std::nullopt);
    bool found = false;
    for (const auto& k : kKinds) {
        if (name == k.name) {
            kind = k.kind;
            found = true;
        }
    }
    if (!found) {
        field_error("surface.kind", "expected fixture, cyclic, riemann-type, riemann-example or rotational-lw");
    }
    json out;
    out["kind"] = name;
    switch (kind) {
    case SurfaceKind::Fixture: {
        const std::string shape = r.string("shape", std::nullopt);
        if (!parse_fixture_kind(shape)) {
            field_error("surface.shape", "expected sphere, cylinder, torus or catenoid");
        }
        out["shape"] = shape;
        out["size"] = r.number("size", 1);
        out["tube"] = r.number("tube", 0.5);
        out["height"] = r.number("height", 2);
        break;
    }
    case SurfaceKind::Cyclic:
        out["curvature"] = r.function("curvature", 0);
        out["torsion"] = r.function("torsion", 0);
        out["alpha"] = r.function("alpha", 1);
        out["beta"] = r.function("beta", 0);
        out["gamma"] = r.function("gamma", 0);
        out["radius"] = r.function("radius", 1);
        out["u0"] = r.number("u0", 0);
        out["u1"] = r.number("u1", 1);
        out["step"] = r.number("step", 0.02);
        if (!(out["step"].get<double>() > 0)) {
            field_error("surface.step", "must be positive");
        }
        break;
    case SurfaceKind::RiemannType:
        out["a"] = r.function("a", 0);
        out["b"] = r.function("b", 0);
        out["r"] = r.function("r", 1);
        out["u0"] = r.number("u0", -1);
        out["u1"] = r.number("u1", 1);
        break;
    case SurfaceKind::RiemannExample:
        out["lambda"] = r.number("lambda", 0);
        out["mu"] = r.number("mu", 0);
        out["r0"] = r.number("r0", 1);
        out["r0_d"] = r.number("r0_d", 0);
        out["u_start"] = r.number("u_start", 0);
        out["u_min"] = r.number("u_min", -1);
        out["u_max"] = r.number("u_max", 1);
        break;
    case SurfaceKind::RotationalLW:
        out["rho0"] = r.number("rho0", 1);
        out["z0"] = r.number("z0", 0);
        out["theta0"] = r.number("theta0", 0);
        out["s_min"] = r.number("s_min", 0);
        out["s_max"] = r.number("s_max", 1);
        out["s_start"] = r.number("s_start", 0);
        break;
    }
    if (out.contains("u0") && !(out["u1"].get<double>() > out["u0"].get<double>())) {
        field_error("surface.u1", "must exceed u0");
    }
    r.finish();
    return out;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte)
{
    int line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

double num(const json& j, const char* key)
{
    return j.at(key).get<double>();
}

} // namespace

std::string to_string(SurfaceKind kind)
{
    for (const auto& k : kKinds) {
        if (k.kind == kind) {
            return k.name;
        }
    }
    return "unknown";
}

SmoothFunction function_from_json(const json& raw, const std::string& field)
{
    const json spec = normalize_function(raw, field);
    if (spec.is_number()) {
        return SmoothFunction::constant(spec.get<double>());
    }
    const std::string type = spec["type"];
    if (type == "poly") {
        const auto c = spec["coeffs"].get<std::vector<double>>();
        auto eval = [c](double x, int order) {
            double sum = 0;
            for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(order);) {
                double factor = 1;
                for (int q = 0; q < order; ++q) {
                    factor *= static_cast<double>(k - q);
                }
                sum = sum * x + factor * c[k];
            }
            return sum;
        };
        return SmoothFunction::from_callable([eval](double x) { return eval(x, 0); },
                                             [eval](double x) { return eval(x, 1); },
                                             [eval](double x) { return eval(x, 2); });
    }
    if (type == "sin" || type == "cos") {
        const double A = num(spec, "amplitude"), w = num(spec, "frequency"), p = num(spec, "phase"),
                     c = num(spec, "offset");
        // cos(t) = sin(t + pi/2)
        const double shift = type == "cos" ? p + M_PI / 2 : p;
        return SmoothFunction::from_callable([=](double x) { return A * std::sin(w * x + shift) + c; },
                                             [=](double x) { return A * w * std::cos(w * x + shift); },
                                             [=](double x) { return -A * w * w * std::sin(w * x + shift); });
    }
    if (type == "cosh") {
        const double A = num(spec, "amplitude"), s = num(spec, "scale"), c = num(spec, "offset");
        return SmoothFunction::from_callable([=](double x) { return A * std::cosh(x / s) + c; },
                                             [=](double x) { return A * std::sinh(x / s) / s; },
                                             [=](double x) { return A * std::cosh(x / s) / (s * s); });
    }
    return SmoothFunction::from_samples(spec["x"].get<std::vector<double>>(), spec["y"].get<std::vector<double>>());
}

SceneConfig scene_from_json(const json& j)
{
    ObjectReader top(j, "");
    SceneConfig c;
    if (top.string("version", std::string("1")) != "1") {
        field_error("version", "unsupported version (expected \"1\")");
    }

    if (!j.contains("surface")) {
        field_error("surface", "is required");
    }
    top.mark("surface");
    c.surface = normalize_surface(j.at("surface"), c.kind);

    top.mark("grid");
    if (j.contains("grid")) {
        ObjectReader g(j.at("grid"), "grid");
        c.grid.nu = g.integer("nu", c.grid.nu);
        c.grid.nv = g.integer("nv", c.grid.nv);
        g.finish();
    }
    if (c.grid.nu < 2 || c.grid.nv < 2) {
        field_error(c.grid.nu < 2 ? "grid.nu" : "grid.nv", "must be at least 2");
    }

    top.mark("relation");
    if (j.contains("relation")) {
        ObjectReader r(j.at("relation"), "relation");
        const double m = r.number("m", NAN);
        const double n = r.number("n", 0);
        r.finish();
        if (std::isnan(m)) {
            field_error("relation.m", "is required");
        }
        if (m == 0) {
            field_error("relation.m", "linear Weingarten relation requires m ≠ 0");
        }
        c.relation = LWRelation(m, n);
    }
    if (c.kind == SurfaceKind::RotationalLW && !c.relation) {
        field_error("relation", "is required for rotational-lw surfaces");
    }

    top.mark("output");
    if (j.contains("output")) {
        ObjectReader o(j.at("output"), "output");
        c.output.dir = o.string("dir", c.output.dir);
        c.output.name = o.string("name", c.output.name);
        o.finish();
        if (c.output.name.empty() || c.output.name.find('/') != std::string::npos) {
            field_error("output.name", "must be a non-empty file stem without '/'");
        }
    }
    top.finish();
    return c;
}

SceneConfig parse_scene(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream msg;
        msg << "line " << line << ", column " << column << ": " << e.what();
        throw Error(ErrorKind::Config, msg.str());
    }
    return scene_from_json(j);
}

SceneConfig load_scene(const std::string& path)
{
    return parse_scene(read_file(path));
}

json scene_to_json(const SceneConfig& c)
{
    json j;
    j["version"] = "1";
    j["surface"] = c.surface;
    j["grid"] = {{"nu", c.grid.nu}, {"nv", c.grid.nv}};
    if (c.relation) {
        j["relation"] = {{"m", c.relation->m()}, {"n", c.relation->n()}};
    }
    j["output"] = {{"dir", c.output.dir}, {"name", c.output.name}};
    return j;
}

std::string canonical_text(const SceneConfig& c)
{
    return scene_to_json(c).dump(2) + "\n";
}

GridSpec parse_grid(const std::string& text)
{
    static const std::regex pattern(R"(\s*(\d+)\s*[xX]\s*(\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) {
        throw Error(ErrorKind::Config, "grid '" + text + "': expected NUxNV, e.g. 40x40");
    }
    GridSpec g;
    try {
        g.nu = std::stoi(m[1]);
        g.nv = std::stoi(m[2]);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Config, "grid '" + text + "': value out of range");
    }
    if (g.nu < 2 || g.nv < 2) {
        throw Error(ErrorKind::Config, "grid '" + text + "': nu and nv must be at least 2");
    }
    return g;
}

BuiltScene build_scene(const SceneConfig& c)
{
    const json& s = c.surface;
    json info = json::object();
    switch (c.kind) {
    case SurfaceKind::Fixture: {
        FixtureParams p;
        p.kind = *parse_fixture_kind(s["shape"].get<std::string>());
        p.size = num(s, "size");
        p.tube = num(s, "tube");
        p.height = num(s, "height");
        return BuiltScene{gen_fixture(p), std::nullopt, std::nullopt, info};
    }
    case SurfaceKind::Cyclic: {
        FrenetCurve curve;
        curve.curvature = function_from_json(s["curvature"], "surface.curvature");
        curve.torsion = function_from_json(s["torsion"], "surface.torsion");
        curve.u0 = num(s, "u0");
        curve.u1 = num(s, "u1");
        CyclicFoliationData data;
        data.alpha = function_from_json(s["alpha"], "surface.alpha");
        data.beta = function_from_json(s["beta"], "surface.beta");
        data.gamma = function_from_json(s["gamma"], "surface.gamma");
        data.radius = function_from_json(s["radius"], "surface.radius");
        CyclicSurface cs = build_cyclic(curve, data, num(s, "step"));
        info["max_gram_deviation"] = cs.frames.max_gram_deviation();
        ParamSurface surface = cs.surface;
        return BuiltScene{surface, std::nullopt, std::move(cs), info};
    }
    case SurfaceKind::RiemannType: {
        RiemannTypeSurface shape;
        shape.a = function_from_json(s["a"], "surface.a");
        shape.b = function_from_json(s["b"], "surface.b");
        shape.r = function_from_json(s["r"], "surface.r");
        shape.u0 = num(s, "u0");
        shape.u1 = num(s, "u1");
        return BuiltScene{build_riemann_type(shape), shape, std::nullopt, info};
    }
    case SurfaceKind::RiemannExample: {
        RiemannExampleParams p;
        p.lambda = num(s, "lambda");
        p.mu = num(s, "mu");
        p.r0 = num(s, "r0");
        p.r0_d = num(s, "r0_d");
        p.u_start = num(s, "u_start");
        p.u_min = num(s, "u_min");
        p.u_max = num(s, "u_max");
        RiemannExample ex = gen_riemann_example(p);
        info["truncated"] = ex.truncated;
        info["truncation_reason"] = ex.truncation_reason;
        info["u_min"] = ex.shape.u0;
        info["u_max"] = ex.shape.u1;
        return BuiltScene{ex.surface, ex.shape, std::nullopt, info};
    }
    case SurfaceKind::RotationalLW: {
        RotationalProfileParams p;
        p.rho0 = num(s, "rho0");
        p.z0 = num(s, "z0");
        p.theta0 = num(s, "theta0");
        p.s_min = num(s, "s_min");
        p.s_max = num(s, "s_max");
        p.s_start = num(s, "s_start");
        RotationalLW rot = gen_rotational_lw(*c.relation, p);
        info["truncated"] = rot.profile.truncated;
        info["truncation_reason"] = rot.profile.truncation_reason;
        info["s_min"] = rot.profile.s_min;
        info["s_max"] = rot.profile.s_max;
        return BuiltScene{rot.surface, std::nullopt, std::nullopt, info};
    }
    }
    throw Error(ErrorKind::Config, "unknown surface kind");
}

} // namespace wlab
