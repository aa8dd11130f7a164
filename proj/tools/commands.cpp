#include "commands.hpp"

#include "nestres/asymptotics.hpp"
#include "nestres/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace nestres::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_out(const RunOptions& o, const std::string& name) {
    std::filesystem::create_directories(o.out_dir);
    const auto path = o.out_dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    std::cerr << "writing " << path.string() << "\n";
    return f;
}

void echo_block(std::ostream& f, const RunConfig& c, const std::string& command) {
    f << "## nestres " << command << "\n";
    std::istringstream in(echo(c));
    for (std::string line; std::getline(in, line);) f << "# " << line << "\n";
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::vector<double> uniform(const Window& w, int n) {
    ScanConfig s;
    s.omega_min = w.min;
    s.omega_max = w.max;
    s.samples = n;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = s.grid_point(i);
    return out;
}

// Viridis control points, linear interpolation.
std::array<int, 3> colour(double t) {
    static const double stops[5][3] = {
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int k = std::min(int(t), 3);
    const double f = t - k;
    std::array<int, 3> rgb{};
    for (int i = 0; i < 3; ++i) rgb[i] = int(std::lround(stops[k][i] + f * (stops[k + 1][i] - stops[k][i])));
    return rgb;
}

void write_svg(std::ostream& f, const RunConfig& c, const ConcentricGeometry& g, const std::vector<Vec2d>& pts,
               const std::vector<double>& mag) {
    const double size = 600.0, cell = size / c.grid, scale = size / (2.0 * c.extent);
    double top = 0.0;
    for (double m : mag)
        if (std::isfinite(m)) top = std::max(top, m);
    if (top == 0.0) top = 1.0;
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << " " << size << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"black\"/>\n";
    char buf[160];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!std::isfinite(mag[i])) continue;
        const auto rgb = colour(mag[i] / top);
        const double x = (pts[i](0) + c.extent) * scale - 0.5 * cell, y = (c.extent - pts[i](1)) * scale - 0.5 * cell;
        std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"rgb(%d,%d,%d)\"/>\n",
                      x, y, cell + 0.05, cell + 0.05, rgb[0], rgb[1], rgb[2]);
        f << buf;
    }
    for (double r : g.radii()) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"white\" stroke-width=\"1\"/>\n",
                      0.5 * size, 0.5 * size, r * scale);
        f << buf;
    }
    std::snprintf(buf, sizeof buf, "<text x=\"8\" y=\"20\" fill=\"white\" font-size=\"14\">max |u| = %.4e</text>\n", top);
    f << buf << "</svg>\n";
}

} // namespace

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

std::vector<RootResult> asymptotic_rows(const RunConfig& c, int q, int threads) {
    return nested_asymptotic_roots(c.geometry(), c.medium, c.contrast(), c.scan(q, threads));
}

std::vector<ResonanceRow> resonance_rows(const RunConfig& c, int threads) {
    const auto g = c.geometry();
    const auto ct = c.contrast();
    std::vector<ResonanceRow> rows;
    for (int q : {1, 2}) {
        const auto exact = find_resonances(c.scan(q, threads), g, c.medium, ct);
        const auto asym = asymptotic_rows(c, q, threads);
        const std::size_t n = std::max(exact.size(), asym.size());
        for (std::size_t k = 0; k < n; ++k) {
            ResonanceRow r{int(k) + 1, q, cplx(kNaN, kNaN), cplx(kNaN, kNaN), kNaN, kNaN, true};
            if (k < exact.size()) {
                r.exact = exact[k].omega;
                r.res_exact = exact[k].residual;
                r.ok &= exact[k].converged && finite(r.exact);
            } else
                r.ok = false;
            if (k < asym.size()) {
                r.asym = asym[k].omega;
                r.res_asym = asym[k].residual;
                r.ok &= asym[k].converged && finite(r.asym);
            } else
                r.ok = false;
            rows.push_back(r);
        }
    }
    return rows;
}

int cmd_resonances(const RunConfig& c, const RunOptions& o) {
    const auto rows = resonance_rows(c, o.threads);
    auto f = open_out(o, c.resonances_file);
    echo_block(f, c, "resonances");
    f << "## q=2 rows have multiplicity 2; q=3 shares their determinant\n";
    f << "j,q,re_exact,im_exact,re_asym,im_asym,res_exact,res_asym\n";
    bool ok = true;
    for (const auto& r : rows) {
        f << r.j << "," << r.q << "," << sci(r.exact.real()) << "," << sci(r.exact.imag()) << "," << sci(r.asym.real())
          << "," << sci(r.asym.imag()) << "," << sci(r.res_exact) << "," << sci(r.res_asym) << "\n";
        ok &= r.ok;
    }
    if (!ok) std::cerr << "some roots did not converge or could not be paired (NaN rows)\n";
    return ok ? kOk : kNonConvergence;
}

int cmd_asymptotic(const RunConfig& c, const RunOptions& o) {
    std::vector<std::pair<int, std::vector<RootResult>>> all;
    for (int q : {1, 2}) all.emplace_back(q, asymptotic_rows(c, q, o.threads));
    auto f = open_out(o, c.asymptotic_file);
    echo_block(f, c, "asymptotic");
    f << "j,q,re_asym,im_asym,res_asym\n";
    bool ok = true;
    for (const auto& [q, roots] : all)
        for (std::size_t k = 0; k < roots.size(); ++k) {
            const auto& r = roots[k];
            f << k + 1 << "," << q << "," << sci(r.omega.real()) << "," << sci(r.omega.imag()) << "," << sci(r.residual)
              << "\n";
            ok &= r.converged && finite(r.omega);
        }
    return ok ? kOk : kNonConvergence;
}

int cmd_scan_det(const RunConfig& c, const RunOptions& o) {
    const auto g = c.geometry();
    const auto ct = c.contrast();
    ScanConfig s;
    s.omega_min = c.det_window().min;
    s.omega_max = c.det_window().max;
    s.samples = c.det_samples;
    s.threads = o.threads;
    const auto f1 = parallel_grid(s, [&](double w) { return normalized_det(g, c.medium, ct, w, 1); });
    const auto f2 = parallel_grid(s, [&](double w) { return normalized_det(g, c.medium, ct, w, 2); });
    auto f = open_out(o, c.scan_file);
    echo_block(f, c, "scan-det");
    f << "omega,f1,f2\n";
    for (int i = 0; i < s.samples; ++i) f << sci(s.grid_point(i)) << "," << sci(f1[i]) << "," << sci(f2[i]) << "\n";
    return kOk;
}

double field_frequency(const RunConfig& c, int threads) {
    const OmegaSpec spec = parse_omega(c.omega);
    if (spec.value) return *spec.value;
    const int q = spec.channel == 1 ? 1 : 2;
    const auto roots = find_resonances(c.scan(q, threads), c.geometry(), c.medium, c.contrast());
    if (spec.index > int(roots.size()) || !roots[spec.index - 1].converged)
        throw ConvergenceError("root q=" + std::to_string(spec.channel) + ", j=" + std::to_string(spec.index) +
                               " not found in the scan window");
    return roots[spec.index - 1].omega.real();
}

int cmd_field(const RunConfig& c, const RunOptions& o) {
    double omega = 0.0;
    try {
        omega = field_frequency(c, o.threads);
    } catch (const ConvergenceError& e) {
        std::cerr << e.what() << "\n";
        return kNonConvergence;
    }
    const auto g = c.geometry();
    const auto ct = c.contrast();
    const auto sol = solve_scattering(g, c.medium, ct, omega, c.incident(), c.n_max);

    const double r1 = g.radii()[0];
    std::vector<Vec2d> all, inside;
    std::vector<int> index(std::size_t(c.grid) * c.grid, -1);
    for (int iy = 0; iy < c.grid; ++iy)
        for (int ix = 0; ix < c.grid; ++ix) {
            const Vec2d x(-c.extent + 2.0 * c.extent * ix / (c.grid - 1), -c.extent + 2.0 * c.extent * iy / (c.grid - 1));
            try {
                g.region_of(x.norm(), 1e-9 * r1);
                index[all.size()] = int(inside.size());
                inside.push_back(x);
            } catch (const SingularPointError&) {
            }
            all.push_back(x);
        }
    const FieldGrid fg = evaluate_field(g, c.medium, ct, sol, inside, o.threads);

    auto f = open_out(o, c.field_file);
    echo_block(f, c, "field");
    f << "## omega = " << sci(omega) << "\n";
    f << "## region -1 marks points on a circle, where the field is not evaluated\n";
    f << "x,y,region,re_ux,im_ux,re_uy,im_uy,re_usx,im_usx,re_usy,im_usy,re_upx,im_upx,re_upy,im_upy\n";
    std::vector<double> mag(all.size(), kNaN);
    for (std::size_t i = 0; i < all.size(); ++i) {
        f << sci(all[i](0)) << "," << sci(all[i](1)) << ",";
        const int k = index[i];
        if (k < 0) {
            f << -1;
            for (int n = 0; n < 12; ++n) f << ",nan";
            f << "\n";
            continue;
        }
        f << fg.regions[k];
        for (const Vec2c* v : {&fg.values[k], &fg.u_s[k], &fg.u_p[k]})
            for (int d = 0; d < 2; ++d) f << "," << sci((*v)(d).real()) << "," << sci((*v)(d).imag());
        f << "\n";
        mag[i] = fg.values[k].norm();
    }
    if (o.svg) {
        auto s = open_out(o, c.svg_file);
        write_svg(s, c, g, all, mag);
    }
    return kOk;
}

int cmd_enhancement(const RunConfig& c, const RunOptions& o) {
    const auto omegas = uniform(c.enhancement_window(), c.enhancement_samples);
    const auto samples = enhancement_scan(c.geometry(), c.medium, c.contrast(), c.incident(), omegas, {}, c.n_max, o.threads);
    auto f = open_out(o, c.enhancement_file);
    echo_block(f, c, "enhancement");
    f << "omega,norm_s,norm_p\n";
    bool ok = true;
    for (const auto& e : samples) {
        f << sci(e.omega) << "," << sci(e.norm_s) << "," << sci(e.norm_p) << "\n";
        ok &= e.ok;
    }
    return ok ? kOk : kNonConvergence;
}

} // namespace nestres::cli
