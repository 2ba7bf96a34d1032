#include "wlab/commands.hpp"

#include "wlab/format.hpp"
#include "wlab/harmonics.hpp"
#include "wlab/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace wlab {

using nlohmann::json;

namespace {

std::string mesh_text(const ParamSurface& surface, const SceneConfig& c, bool normals, GridMesh* keep = nullptr)
{
    GridMesh mesh = mesh_surface(surface, c.grid.nu, c.grid.nv, normals);
    std::ostringstream obj;
    write_obj(obj, mesh);
    if (keep) {
        *keep = std::move(mesh);
    }
    return obj.str();
}

std::vector<double> default_u_list(const Domain& d)
{
    std::vector<double> u;
    for (int i = 1; i <= 5; ++i) {
        u.push_back(d.u0 + d.u_extent() * i / 6.0);
    }
    return u;
}

std::vector<double> parse_number_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(x)) {
            throw Error(ErrorKind::Config, "--u: '" + item + "' is not a number");
        }
        out.push_back(x);
    }
    return out;
}

} // namespace

SceneConfig effective_scene(const CommandOptions& o)
{
    SceneConfig c = load_scene(o.config_path);
    if (o.out_dir) {
        c.output.dir = *o.out_dir;
    }
    if (o.grid) {
        c.grid = *o.grid;
    }
    return c;
}

std::string output_path(const SceneConfig& c, const std::string& suffix)
{
    return (std::filesystem::path(c.output.dir) / (c.output.name + suffix)).string();
}

SceneConfig scene_from_metadata(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Config, std::string("metadata: ") + e.what());
    }
    if (!j.is_object() || !j.contains("config")) {
        throw Error(ErrorKind::Config, "metadata: missing 'config'");
    }
    return scene_from_json(j.at("config"));
}

std::vector<std::string> cmd_generate(const CommandOptions& o, std::ostream& log)
{
    const SceneConfig c = effective_scene(o);
    const BuiltScene scene = build_scene(c);
    GridMesh mesh;
    const std::string obj = mesh_text(scene.surface, c, o.normals, &mesh);

    json meta;
    meta["config"] = scene_to_json(c);
    meta["generator"] = scene.info;
    const Domain& d = scene.surface.domain();
    meta["domain"] = {{"u0", d.u0}, {"u1", d.u1}, {"v0", d.v0}, {"v1", d.v1},
                      {"u_periodic", d.u_periodic}, {"v_periodic", d.v_periodic}};
    meta["mesh"] = {{"file", c.output.name + ".obj"},
                    {"nu", mesh.nu},
                    {"nv", mesh.nv},
                    {"vertices", mesh.vertices.size()},
                    {"faces", mesh.faces.size()},
                    {"normals", !mesh.normals.empty()}};

    const std::string obj_path = output_path(c, ".obj");
    const std::string meta_path = output_path(c, ".meta.json");
    write_file_atomic(obj_path, obj);
    write_file_atomic(meta_path, meta.dump(2) + "\n");
    log << "surface: " << to_string(c.kind) << "\n";
    log << "mesh: " << mesh.vertices.size() << " vertices, " << mesh.faces.size() << " faces\n";
    if (scene.info.contains("truncated")) {
        log << "truncated: " << (scene.info["truncated"].get<bool>() ? "true" : "false") << "\n";
    }
    return {obj_path, meta_path};
}

std::vector<std::string> cmd_export(const CommandOptions& o, std::ostream& log)
{
    const SceneConfig c = effective_scene(o);
    const BuiltScene scene = build_scene(c);
    GridMesh mesh;
    const std::string obj = mesh_text(scene.surface, c, o.normals, &mesh);
    const std::string path = output_path(c, ".obj");
    write_file_atomic(path, obj);
    log << "mesh: " << mesh.vertices.size() << " vertices, " << mesh.faces.size() << " faces\n";
    return {path};
}

std::vector<std::string> cmd_analyze(const CommandOptions& o, std::ostream& log)
{
    const SceneConfig c = effective_scene(o);
    const BuiltScene scene = build_scene(c);
    std::ostringstream csv;
    write_analysis_csv(csv, scene.surface, c.grid.nu, c.grid.nv, c.relation);
    const std::string path = output_path(c, ".analysis.csv");
    write_file_atomic(path, csv.str());

    const CurvatureSampleSet set = sample_curvatures(scene.surface, c.grid.nu, c.grid.nv);
    double max_h = 0, k_min = INFINITY, k_max = -INFINITY;
    for (const auto& s : set.samples) {
        max_h = std::max(max_h, std::abs(0.5 * (s.k1 + s.k2)));
        k_min = std::min(k_min, s.k1 * s.k2);
        k_max = std::max(k_max, s.k1 * s.k2);
    }
    log << "points: " << set.samples.size() << "\n";
    log << "max |H|: " << format_g12(max_h) << "\n";
    log << "K range: [" << format_g12(k_min) << ", " << format_g12(k_max) << "]\n";
    return {path};
}

std::vector<std::string> cmd_harmonics(const CommandOptions& o, std::ostream& log)
{
    const SceneConfig c = effective_scene(o);
    if (!c.relation) {
        throw Error(ErrorKind::Config, "field 'relation': harmonics need a relation {m, n}");
    }
    if (o.J < 0) {
        throw Error(ErrorKind::Config, "--J must be non-negative");
    }
    const BuiltScene scene = build_scene(c);
    const LWRelation rel = *c.relation;
    const Domain& d = scene.surface.domain();
    const std::vector<double> us = o.u_list.empty() ? default_u_list(d) : o.u_list;

    std::vector<CoefficientReport> rows;
    bool all_pass = true;
    double worst_tail = 0, worst_all = 0;
    int bound = -1;
    if (scene.riemann_type) {
        bound = rel.n() == 0.0 ? 3 : 12;
    } else if (scene.cyclic && rel.n() == 0.0) {
        bound = 6;
    }
    for (double u : us) {
        if (!(u >= d.u0 && u <= d.u1)) {
            std::ostringstream msg;
            msg << "u = " << u << " lies outside [" << d.u0 << ", " << d.u1 << "]";
            throw Error(ErrorKind::OutOfDomain, msg.str());
        }
        const HarmonicSpectrum spec = residual_spectrum(scene.surface, rel, u, o.J, o.samples);
        const double scale = residual_scale_along_circle(scene.surface, rel, u, o.samples);
        worst_all = std::max(worst_all, spec.max_abs() / scale);
        if (bound >= 0 && bound < o.J) {
            worst_tail = std::max(worst_tail, spec.max_abs(bound + 1) / scale);
        }

        std::optional<ClosedFormAt> closed;
        if (scene.riemann_type) {
            closed = closed_form_for_riemann_type(sample_riemann_data(*scene.riemann_type, u), rel);
        } else if (scene.cyclic) {
            closed = closed_form_for_cyclic(sample_cyclic_data(scene.cyclic->curve, scene.cyclic->data, u), rel);
        }
        for (int j = 0; j <= o.J; ++j) {
            if (closed && closed->j == j) {
                CoefficientReport r = verify_coefficient_identity(scene.surface, rel, u, j, closed->value,
                                                                  closed->calibration, o.samples);
                all_pass = all_pass && r.pass;
                rows.push_back(r);
                continue;
            }
            CoefficientReport r;
            r.u = u;
            r.j = j;
            r.dft_A = spec.A[static_cast<std::size_t>(j)];
            r.dft_B = spec.B[static_cast<std::size_t>(j)];
            r.scale = scale;
            r.has_closed = false;
            rows.push_back(r);
        }
    }
    std::ostringstream csv;
    write_coefficient_csv(csv, rows);
    const std::string path = output_path(c, ".harmonics.csv");
    write_file_atomic(path, csv.str());

    log << "circles: " << us.size() << ", harmonics up to j = " << o.J << ", samples " << o.samples << "\n";
    log << "max |coefficient| / scale: " << format_g12(worst_all) << "\n";
    if (bound >= 0 && bound < o.J) {
        log << "degree bound j <= " << bound << ": max tail / scale = " << format_g12(worst_tail) << "\n";
    }
    for (const auto& r : rows) {
        if (r.has_closed) {
            log << "u = " << format_g12(r.u) << " j = " << r.j << ": ratio "
                << (std::isfinite(r.ratio) ? format_g12(r.ratio) : std::string("n/a")) << ", "
                << (r.pass ? "pass" : "FAIL") << "\n";
        }
    }
    if (scene.riemann_type && rel.n() != 0.0) {
        const TwelfthHarmonicCalibration cal;
        log << "calibration j = 12: c_A = " << format_g12(cal.c_A) << " (1/2048), c_B = " << format_g12(cal.c_B)
            << " (1/512)\n";
    }
    if (!all_pass) {
        throw Error(ErrorKind::InternalConsistency, "coefficient identity failed; see " + path);
    }
    return {path};
}

std::vector<std::string> cmd_fit(const CommandOptions& o, std::ostream& log)
{
    const SceneConfig c = effective_scene(o);
    if (!(o.tol > 0)) {
        throw Error(ErrorKind::Config, "--tol must be positive");
    }
    const BuiltScene scene = build_scene(c);
    ClassifyOptions opts;
    opts.nu = c.grid.nu;
    opts.nv = c.grid.nv;
    opts.tol = o.tol;
    const ClassificationReport report =
        scene.riemann_type ? classify(*scene.riemann_type, opts) : classify(scene.surface, opts);

    std::ostringstream text, csv;
    write_report_text(text, report);
    write_report_csv(csv, report);
    const std::string text_path = output_path(c, ".fit.txt");
    const std::string csv_path = output_path(c, ".fit.csv");
    write_file_atomic(text_path, text.str());
    write_file_atomic(csv_path, csv.str());
    log << text.str();
    return {text_path, csv_path};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"wlab: linear Weingarten surface laboratory"};
    app.require_subcommand(1);

    CommandOptions o;
    std::string grid_text, u_text;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "scene config (JSON)")->required();
        sub->add_option("--out", o.out_dir, "output directory (overrides output.dir)");
        sub->add_option("--grid", grid_text, "grid resolution NUxNV (overrides grid)");
        sub->add_option("--tol", o.tol, "relative tolerance for fit/classification");
    };
    auto* gen = app.add_subcommand("generate", "build the surface; write OBJ mesh and metadata");
    auto* ana = app.add_subcommand("analyze", "per-point H, K, k1, k2 and residuals as CSV");
    auto* har = app.add_subcommand("harmonics", "Fourier coefficients of the residual along circles");
    auto* fit = app.add_subcommand("fit", "fit k1 = m k2 + n and classify");
    auto* exp = app.add_subcommand("export", "write the OBJ mesh only");
    for (auto* sub : {gen, ana, har, fit, exp}) {
        common(sub);
    }
    for (auto* sub : {gen, exp}) {
        sub->add_flag("!--no-normals", o.normals, "omit vn records");
    }
    har->add_option("--u", u_text, "comma-separated circle parameters");
    har->add_option("--J", o.J, "highest harmonic");
    har->add_option("--samples", o.samples, "samples per circle");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (!grid_text.empty()) {
            o.grid = parse_grid(grid_text);
        }
        if (!u_text.empty()) {
            o.u_list = parse_number_list(u_text);
        }
        std::vector<std::string> files;
        if (gen->parsed()) {
            files = cmd_generate(o, out);
        } else if (ana->parsed()) {
            files = cmd_analyze(o, out);
        } else if (har->parsed()) {
            files = cmd_harmonics(o, out);
        } else if (fit->parsed()) {
            files = cmd_fit(o, out);
        } else {
            files = cmd_export(o, out);
        }
        for (const auto& f : files) {
            out << "wrote " << f << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_validation() ? kExitValidation : kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace wlab
