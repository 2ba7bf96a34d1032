#include "wlab/io.hpp"

#include "wlab/format.hpp"
#include "wlab/parallel.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unistd.h>

namespace wlab {

namespace {

std::vector<double> grid_axis(double t0, double t1, int count, bool periodic)
{
    std::vector<double> t(static_cast<std::size_t>(count));
    const double step = periodic ? (t1 - t0) / count : (t1 - t0) / (count - 1);
    for (int i = 0; i < count; ++i) {
        t[static_cast<std::size_t>(i)] = t0 + i * step;
    }
    if (!periodic) {
        t.back() = t1;
    }
    return t;
}

// Normal at (u, v); at degenerate points (sphere poles) the normal of a point
// nudged into the interior is used.
Vec3 vertex_normal(const ParamSurface& s, double u, double v)
{
    try {
        return evaluate_jet(s, u, v).normal;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateJet) {
            throw;
        }
    }
    const Domain& d = s.domain();
    const double du = 1e-6 * d.u_extent(), dv = 1e-6 * d.v_extent();
    const double un = u + (u - d.u0 < d.u1 - u ? du : -du);
    const double vn = v + (v - d.v0 < d.v1 - v ? dv : -dv);
    return evaluate_jet(s, un, vn).normal;
}

} // namespace

GridMesh mesh_surface(const ParamSurface& surface, int nu, int nv, bool with_normals)
{
    if (nu < 2 || nv < 2) {
        throw Error(ErrorKind::InvalidParameter, "mesh grid needs nu, nv >= 2");
    }
    const Domain& d = surface.domain();
    GridMesh mesh;
    mesh.nu = nu;
    mesh.nv = nv;
    mesh.wrap_u = d.u_periodic;
    mesh.wrap_v = d.v_periodic;
    const auto us = grid_axis(d.u0, d.u1, nu, d.u_periodic);
    const auto vs = grid_axis(d.v0, d.v1, nv, d.v_periodic);
    const std::size_t count = static_cast<std::size_t>(nu) * nv;
    mesh.vertices.resize(count);
    if (with_normals) {
        mesh.normals.resize(count);
    }
    parallel_for(count, [&](std::size_t k) {
        const double u = us[k / nv], v = vs[k % nv];
        mesh.vertices[k] = surface.position(u, v);
        if (with_normals) {
            mesh.normals[k] = vertex_normal(surface, u, v);
        }
    });
    for (const auto& p : mesh.vertices) {
        if (!p.allFinite()) {
            throw Error(ErrorKind::NonFinite, "surface position is not finite on the mesh grid");
        }
    }
    const int cells_u = mesh.wrap_u ? nu : nu - 1;
    const int cells_v = mesh.wrap_v ? nv : nv - 1;
    auto index = [nu, nv](int i, int j) { return (i % nu) * nv + (j % nv); };
    for (int i = 0; i < cells_u; ++i) {
        for (int j = 0; j < cells_v; ++j) {
            const int a = index(i, j), b = index(i + 1, j), c = index(i + 1, j + 1), e = index(i, j + 1);
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, e});
        }
    }
    return mesh;
}

void write_obj(std::ostream& out, const GridMesh& mesh)
{
    out << "# wlab grid mesh " << mesh.nu << "x" << mesh.nv << "\n";
    for (const auto& p : mesh.vertices) {
        out << "v " << format_g9(p.x()) << ' ' << format_g9(p.y()) << ' ' << format_g9(p.z()) << '\n';
    }
    for (const auto& n : mesh.normals) {
        out << "vn " << format_g9(n.x()) << ' ' << format_g9(n.y()) << ' ' << format_g9(n.z()) << '\n';
    }
    const bool normals = !mesh.normals.empty();
    for (const auto& f : mesh.faces) {
        out << 'f';
        for (int idx : f) {
            out << ' ' << idx + 1;
            if (normals) {
                out << "//" << idx + 1;
            }
        }
        out << '\n';
    }
}

ObjStats inspect_obj(std::istream& in)
{
    ObjStats s;
    std::vector<std::string> face_tokens;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            ++s.vertices;
        } else if (tag == "vn") {
            ++s.normals;
        } else if (tag == "f") {
            ++s.faces;
            std::string tok;
            int corners = 0;
            while (ls >> tok) {
                face_tokens.push_back(tok);
                ++corners;
            }
            if (corners < 3) {
                s.indices_valid = false;
            }
        }
    }
    for (const auto& tok : face_tokens) {
        const auto slash = tok.find('/');
        try {
            const int v = std::stoi(tok.substr(0, slash));
            if (v < 1 || v > s.vertices) {
                s.indices_valid = false;
            }
            const auto last = tok.rfind('/');
            if (slash != std::string::npos && last + 1 < tok.size()) {
                const int n = std::stoi(tok.substr(last + 1));
                if (n < 1 || n > s.normals) {
                    s.indices_valid = false;
                }
            }
        } catch (const std::exception&) {
            s.indices_valid = false;
        }
    }
    return s;
}

void write_analysis_csv(std::ostream& out, const ParamSurface& surface, int nu, int nv,
                        const std::optional<LWRelation>& relation)
{
    const std::vector<UV> grid = interior_grid(surface.domain(), nu, nv);
    std::vector<std::string> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        const JetPoint jet = evaluate_jet(surface, grid[k].u, grid[k].v);
        const CurvatureData c = curvature(jet);
        std::string row = format_g12(grid[k].u) + ',' + format_g12(grid[k].v) + ',' + format_g12(c.H) + ',' +
                          format_g12(c.K) + ',' + format_g12(c.k1) + ',' + format_g12(c.k2);
        if (relation) {
            const double direct = lw_residual_linear(c, *relation);
            const double swapped = lw_residual_linear(c, relation->swapped());
            const DeterminantForms d = determinant_forms(jet);
            row += ',' + format_g12(direct) + ',' + format_g12(swapped) + ',' +
                   format_g12(lw_residual_signed(jet, *relation)) + ',' +
                   format_g12(lw_residual_poly(jet, *relation)) + ',' +
                   format_g12(lw_residual_poly(jet, *relation) / residual_scale_poly(d, *relation));
        }
        rows[k] = std::move(row);
    });
    out << "u,v,H,K,k1,k2";
    if (relation) {
        out << ",lw_linear,lw_linear_swapped,lw_signed,lw_poly,lw_poly_relative";
    }
    out << '\n';
    for (const auto& r : rows) {
        out << r << '\n';
    }
}

void write_file_atomic(const std::string& path, const std::string& contents)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) {
            throw Error(ErrorKind::Io, "cannot create directory " + target.parent_path().string() + ": " +
                                           ec.message());
        }
    }
    const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
        }
        f << contents;
        f.flush();
        if (!f) {
            fs::remove(tmp, ec);
            throw Error(ErrorKind::Io, "write to " + tmp.string() + " failed");
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot rename onto " + path + ": " + ec.message());
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorKind::Io, "cannot read " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace wlab
