// Acceptance run: one PASS/FAIL line per criterion on stdout, details on stderr.
#include "commands.hpp"
#include "nestres/asymptotics.hpp"
#include "nestres/diskkernels.hpp"
#include "nestres/fields.hpp"
#include "nestres/specfun.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

using namespace nestres;
using namespace nestres::cli;

namespace {

const Medium kDefault(2.0, 1.0, 1.0);

struct ReferenceRow {
    cplx exact, asym;
};
// Reference frequencies, exact and leading order, at delta = 1e-5 (mid), 1e-4 (high), 1e-6 (low).
// Eight rows each: channel 1 (j = 1..4), then channel 2 (j = 1..4).
const std::vector<ReferenceRow> kReferenceMid = {
    {{0.005517, 1.4e-8}, {0.005529, 1.7e-8}},       {{0.015223, 9.7e-8}, {0.015213, 9.6e-8}},
    {{0.022261, 8.72e-7}, {0.022249, 8.073e-6}},    {{0.027129, 1.858e-6}, {0.027125, 1.850e-6}},
    {{0.001552, -2.8774e-5}, {0.001554, 2.8371e-5}}, {{0.017528, -3.617e-6}, {0.017527, -3.621e-6}},
    {{0.029591, -1.392e-6}, {0.029581, -1.390e-6}}, {{0.037349, -3.518e-6}, {0.037354, -3.589e-6}}};
const std::vector<ReferenceRow> kReferenceHigh = {
    {{0.017052, 2.75e-7}, {0.017730, 2.61e-7}},       {{0.049018, 3.2007e-5}, {0.049319, 3.2677e-5}},
    {{0.071528, 2.81906e-4}, {0.071530, 2.82035e-4}}, {{0.086270, 5.60944e-4}, {0.086279, 5.60777e-4}},
    {{0.005180, -1.01872e-4}, {0.005201, -1.02344e-4}}, {{0.055971, -2.3098e-5}, {0.055981, -2.3193e-5}},
    {{0.093085, -8.201e-6}, {0.093177, -8.257e-6}},   {{0.011349, -2.3256e-5}, {0.011056, -2.3358e-5}}};
const std::vector<ReferenceRow> kReferenceLow = {
    {{0.001740, 2.1e-8}, {0.001740, 2.3e-8}},         {{0.004815, 2.974e-6}, {0.004815, 2.974e-6}},
    {{0.007028, 3.0042e-5}, {0.007027, 3.0040e-5}},   {{0.008569, 6.0162e-5}, {0.008571, 6.0163e-5}},
    {{0.000470, -1.2744e-5}, {0.000467, -1.2744e-5}}, {{0.005568, -2.617e-6}, {0.005570, -2.619e-6}},
    {{0.009327, -7.93e-7}, {0.009327, -7.92e-7}},     {{0.011889, -2.691e-6}, {0.011889, -2.690e-6}}};

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << std::endl;
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TableRun {
    std::vector<ResonanceRow> rows;
    double seconds;
};

TableRun run_table(const std::string& name) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rows = resonance_rows(preset(name), 1);
    return {rows, seconds_since(t0)};
}

bool im_close(double mine, double ref) { return std::abs(mine - ref) <= std::max(1e-8, 0.5 * std::abs(ref)); }

// Matches of the exact column; rows in `skip` (0-based) are reported but not required.
int match_exact(const std::string& label, const TableRun& run, const std::vector<ReferenceRow>& ref,
                const std::vector<int>& skip, int& required) {
    int ok = 0;
    required = 0;
    std::cerr << label << " exact column (computed vs reference)\n";
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const bool have = i < run.rows.size();
        const cplx w = have ? run.rows[i].exact : cplx(NAN, NAN);
        bool im = im_close(w.imag(), ref[i].exact.imag());
        // The two printed imaginary parts of mid row 3 differ tenfold; either is accepted.
        if (&ref == &kReferenceMid && i == 2) im = im || im_close(w.imag(), ref[i].asym.imag());
        const bool re = std::abs(w.real() - ref[i].exact.real()) <= 2e-5;
        const bool skipped = std::find(skip.begin(), skip.end(), int(i)) != skip.end();
        if (!skipped) {
            ++required;
            ok += re && im;
        }
        char buf[200];
        std::snprintf(buf, sizeof buf, "  row %zu: %.6e %+.4e i | %.6f %+.4e i | dRe %.2e %s%s\n", i + 1, w.real(),
                      w.imag(), ref[i].exact.real(), ref[i].exact.imag(), w.real() - ref[i].exact.real(),
                      re && im ? "ok" : (re ? "Im off" : "Re off"), skipped ? " (not required)" : "");
        std::cerr << buf;
    }
    return ok;
}

double max_discrepancy(const TableRun& run) {
    double worst = 0.0;
    for (const auto& r : run.rows) worst = std::max(worst, std::abs(r.exact - r.asym) / std::abs(r.exact));
    return worst;
}

std::vector<cplx> sample_arguments() {
    std::vector<cplx> zs;
    for (int i = 0; i <= 40; ++i) zs.emplace_back(std::pow(10.0, -3.0 + 4.0 * i / 40.0), 0.0);
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> lmag(std::log(1e-3), std::log(5.0)), arg(-kPi / 4, kPi / 4);
    for (int i = 0; i < 60; ++i) zs.push_back(std::polar(std::exp(lmag(gen)), arg(gen)));
    return zs;
}

Vec2c density(int n, cplx cv, cplx ct, double phi) {
    const cplx e = std::exp(kI * double(n) * phi);
    return e * (cv * Vec2c(std::cos(phi), std::sin(phi)) + ct * Vec2c(-std::sin(phi), std::cos(phi)));
}

Mat2c value_map_quad(cplx w, double R, int n, double r, int nodes = 512) {
    Mat2c out = Mat2c::Zero();
    for (int col = 0; col < 2; ++col)
        for (int j = 0; j < nodes; ++j) {
            const double phi = 2.0 * kPi * j / nodes;
            const Vec2d y(R * std::cos(phi), R * std::sin(phi));
            out.col(col) += green_tensor(kDefault, w, Vec2d(r, 0.0) - y) *
                            density(n, col == 0 ? 1.0 : 0.0, col == 0 ? 0.0 : 1.0, phi) * (2.0 * kPi * R / nodes);
        }
    return out;
}

std::vector<double> peaks(const std::vector<double>& w, const std::vector<double>& v) {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) out.push_back(w[i]);
    return out;
}

} // namespace

int main() {
    // 1-3: reference frequencies
    const TableRun t1 = run_table("table1"), t2 = run_table("table2"), t3 = run_table("table3");
    int req1 = 0, req2 = 0, req3 = 0;
    const int ok1 = match_exact("table1", t1, kReferenceMid, {}, req1);
    report(1, ok1 == req1 && t1.rows.size() == 8 && t1.seconds <= 60.0, "exact frequencies, delta = 1e-5",
           std::to_string(ok1) + "/" + std::to_string(req1) + " rows within tolerance, " + fmt("%.1f s", t1.seconds));

    const int ok2 = match_exact("table2", t2, kReferenceHigh, {7}, req2);
    const int ok3 = match_exact("table3", t3, kReferenceLow, {}, req3);
    report(2, ok2 == req2 && ok3 == req3, "exact frequencies, delta = 1e-4 and 1e-6",
           std::to_string(ok2) + "/" + std::to_string(req2) + " and " + std::to_string(ok3) + "/" + std::to_string(req3) +
               " rows within tolerance (delta = 1e-4 row 8 reported only)");

    int asym_ok = 0, asym_req = 0;
    std::cerr << "asymptotic column (computed vs reference)\n";
    for (const auto& [run, ref, skip] : {std::tuple{&t1, &kReferenceMid, -1}, std::tuple{&t2, &kReferenceHigh, 7},
                                           std::tuple{&t3, &kReferenceLow, -1}})
        for (std::size_t i = 0; i < ref->size(); ++i) {
            const double mine = i < run->rows.size() ? run->rows[i].asym.real() : NAN;
            const double d = std::abs(mine - (*ref)[i].asym.real());
            std::cerr << "  " << fmt("%.6e", mine) << " vs " << fmt("%.6f", (*ref)[i].asym.real()) << " dRe "
                      << fmt("%.2e", d) << (int(i) == skip ? " (not required)" : "") << "\n";
            if (int(i) == skip) continue;
            ++asym_req;
            asym_ok += d <= 5e-5;
        }
    const double d4 = max_discrepancy(t2), d5 = max_discrepancy(t1), d6 = max_discrepancy(t3);
    report(3, asym_ok == asym_req && d4 > d5 && d5 > d6, "leading-order frequencies",
           std::to_string(asym_ok) + "/" + std::to_string(asym_req) + " rows within 5e-5; max relative exact-asymptotic gap " +
               fmt("%.2e", d4) + " > " + fmt("%.2e", d5) + " > " + fmt("%.2e", d6));

    // 4: sqrt(delta) scaling
    {
        bool ok = t2.rows.size() == t3.rows.size() && !t2.rows.empty();
        double lo = 1.0, hi = 0.0;
        for (std::size_t i = 0; ok && i < t2.rows.size(); ++i) {
            const double r = t3.rows[i].exact.real() / t2.rows[i].exact.real();
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        ok = ok && lo >= 0.08 && hi <= 0.12;
        report(4, ok, "square-root contrast scaling", "ratios in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]");
    }

    // 5: channel symmetry
    {
        const auto g = ConcentricGeometry::nested_equidistant(4);
        const Contrast c(1e-5, 1e-5);
        std::mt19937 gen(20241016);
        std::uniform_real_distribution<double> pick(1e-3, 4e-2);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double w = pick(gen);
            const cplx d2 = determinant(assemble(g, kDefault, c, w, 2)).value();
            const cplx d3 = determinant(assemble(g, kDefault, c, w, 3)).value();
            worst = std::max(worst, std::abs(d2 - d3) / std::abs(d2));
        }
        report(5, worst < 1e-12, "channel 2 and 3 determinants agree", "max relative difference " + fmt("%.2e", worst));
    }

    // 6: single disk
    {
        const double R = 2.0, delta = 1e-6;
        const Contrast c(delta, delta);
        const auto g = ConcentricGeometry::single_disk(R);
        ScanConfig cfg;
        cfg.channel = 1;
        cfg.omega_min = 5e-4;
        cfg.omega_max = 3e-3;
        cfg.samples = 500;
        const auto shear = find_resonances(cfg, g, kDefault, c);
        const double closed = std::sqrt(8.0 * kDefault.mu * delta / (kDefault.rho * R * R * (1.0 - delta)));
        const double err = shear.size() == 1 ? std::abs(shear[0].omega.real() - closed) / closed : INFINITY;
        cfg.channel = 2;
        cfg.omega_min = 1e-5;
        cfg.omega_max = 5e-3;
        const auto trans = find_resonances(cfg, g, kDefault, c);
        double res = trans.empty() ? INFINITY : 0.0;
        for (const auto& r : trans) res = std::max(res, disk_translational_residual(kDefault, delta, R, r.omega));
        report(6, err < 1e-4 && res < 1e-2, "single disk closed forms",
               "rotational relative error " + fmt("%.2e", err) + ", translational residual " + fmt("%.2e", res));
    }

    // 7: special functions
    {
        double wr = 0.0, rec = 0.0;
        for (cplx z : sample_arguments())
            for (int n = 0; n <= 2; ++n) {
                const cplx j = bessel_j(n, z), jp = bessel_jp(n, z);
                const cplx y = (bessel_h1(n, z) - j) / kI, yp = (bessel_h1p(n, z) - jp) / kI;
                wr = std::max(wr, std::abs(j * yp - jp * y - 2.0 / (kPi * z)) / std::abs(2.0 / (kPi * z)));
                for (int kind = 0; kind < 2; ++kind) {
                    auto f = [&](int k) { return kind == 0 ? bessel_j(k, z) : bessel_h1(k, z); };
                    const cplx fp = kind == 0 ? jp : bessel_h1p(n, z);
                    const cplx a = double(n) / z * f(n);
                    rec = std::max(rec, std::abs(f(n + 1) - (a - fp)) / (std::abs(f(n + 1)) + std::abs(a) + std::abs(fp)));
                    rec = std::max(rec, std::abs(f(n - 1) - (a + fp)) / (std::abs(f(n - 1)) + std::abs(a) + std::abs(fp)));
                }
            }
        bool series = true;
        const cplx ec = euler_constant_ec();
        const auto c3 = hankel_series_coeffs(3);
        for (double t : {0.05, 0.02, 0.005, 1e-3}) {
            const double lt = std::log(t);
            const cplx j0 = 1.0 - t * t / 4 + std::pow(t, 4) / 64 - std::pow(t, 6) / 2304.0;
            const cplx j1 = t / 2 - std::pow(t, 3) / 16 + std::pow(t, 5) / 384;
            const cplx h0 = (kI / kPi) * (ec + 2.0 * lt) - (kI * t * t / (4 * kPi)) * (-2.0 + ec + 2.0 * lt) +
                            (kI * std::pow(t, 4) / (64 * kPi)) * (-3.0 + ec + 2.0 * lt);
            const cplx h1 = -2.0 * kI / (kPi * t) + (kI * t / (2 * kPi)) * (-1.0 + ec + 2.0 * lt) -
                            (kI * std::pow(t, 3) / (16 * kPi)) * (-2.5 + ec + 2.0 * lt);
            series &= std::abs(bessel_j(0, t) - j0) <= 1.01 * std::pow(t, 8) / 147456.0 + 4e-16;
            series &= std::abs(bessel_j(1, t) - j1) <= 1.01 * std::pow(t, 7) / 18432.0 + 4e-16;
            series &= std::abs(bessel_h1(0, t) - h0) <= 1.01 * std::abs(4.0 * (c3.c + c3.b * lt)) * std::pow(t, 6) + 1e-15;
            series &= std::abs(bessel_h1(1, t) - h1) <=
                      1.01 * std::abs(4.0 * (6.0 * c3.c + c3.b * (6.0 * lt + 1.0))) * std::pow(t, 5) + 1e-15 / t;
        }
        report(7, wr < 1e-11 && rec < 1e-11 && series, "special function identities",
               "Wronskian " + fmt("%.1e", wr) + ", recursions " + fmt("%.1e", rec) + ", expansions " +
                   (series ? "within bounds" : "outside bounds"));
    }

    // 8: layer potentials
    {
        double cont = 0.0, jump = 0.0, quad = 0.0;
        for (cplx w : {cplx(0.01), 0.05 * cplx(1.0, 0.001)})
            for (double R : {0.5, 1.0, 2.0})
                for (int n : {0, 1, -1, 2, -2}) {
                    const auto ext = exterior_transfer(kDefault, w, R, n, R);
                    const auto in = interior_transfer(kDefault, w, R, n, R);
                    const Mat2c a = boundary_coeffs(kDefault, w, R, n).matrix();
                    cont = std::max({cont, (ext.value_map - in.value_map).norm() / a.norm(),
                                     (ext.value_map - a).norm() / a.norm()});
                    jump = std::max(jump, (ext.traction_map - in.traction_map - Mat2c::Identity()).norm());
                }
        for (int n : {0, 1, -1, 2})
            for (double r : {0.5, 1.6}) {
                const Mat2c closed = (r < 1.0 ? interior_transfer(kDefault, 0.05, 1.0, n, r)
                                              : exterior_transfer(kDefault, 0.05, 1.0, n, r))
                                         .value_map;
                quad = std::max(quad, (closed - value_map_quad(0.05, 1.0, n, r)).norm() / closed.norm());
            }
        report(8, cont < 1e-10 && jump < 1e-10 && quad < 1e-6, "layer potential identities",
               "continuity " + fmt("%.1e", cont) + ", traction jump " + fmt("%.1e", jump) + ", quadrature " +
                   fmt("%.1e", quad));
    }

    // 9: kernel space and C
    {
        double kern = 0.0, diag = 0.0;
        for (double R : {0.5, 1.0, 2.0}) {
            kern = std::max(kern, kernel_space_residual(kDefault, R));
            const Eigen::Matrix3d c = c_matrix(kDefault, R);
            const auto kb = kernel_basis(R);
            for (int i = 0; i < 3; ++i) {
                // S[zeta_i] = s_i zeta_i, so C_ii = s_i (zeta_i, zeta_i).
                const double e = static_disk_single_layer(kDefault, R, i + 1) *
                                 circle_pairing(kb.zeta[i], kb.zeta[i], R).real();
                diag = std::max(diag, std::abs(c(i, i) - e) / std::abs(e));
            }
        }
        const double Rc = c_singular_radius(kDefault);
        double cond = 0.0;
        for (int n : {-1, 1}) {
            Eigen::JacobiSVD<Mat2c> svd(modal_single_layer_hat(kDefault, 1e-3, Rc, n, Rc));
            cond = std::max(cond, svd.singularValues()(0) / svd.singularValues()(1));
        }
        report(9, kern < 1e-8 && diag < 1e-12 && std::isfinite(cond), "kernel space and C matrix",
               "kernel residual " + fmt("%.1e", kern) + ", C diagonal vs eigenvalues " + fmt("%.1e", diag) +
                   ", corrected single layer condition " + fmt("%.2f", cond) + " at R = " + fmt("%.4f", Rc));
    }

    // 10: enhancement
    {
        const RunConfig c1 = preset("table1");
        const auto g = c1.geometry();
        const auto ct = c1.contrast();
        const auto wave = c1.incident();
        const auto shear = find_resonances(c1.scan(1, 4), g, kDefault, ct);
        auto peak_amplitude = [&](double w) {
            const auto s = solve_scattering(g, kDefault, ct, w, wave);
            double best = 0.0;
            for (int j = 1; j <= g.resonators(); ++j)
                for (cplx v : mode_amplitudes(g, kDefault, ct, s, j).varrho) best = std::max(best, std::abs(v));
            return best;
        };
        const double at_root = shear.empty() ? 0.0 : peak_amplitude(shear[0].omega.real());
        const double ratio = at_root / peak_amplitude(0.03);

        const RunConfig c4 = preset("fig4");
        const auto omegas = [&] {
            ScanConfig s;
            s.omega_min = c4.enhancement_window().min;
            s.omega_max = c4.enhancement_window().max;
            s.samples = c4.enhancement_samples;
            std::vector<double> w(s.samples);
            for (int i = 0; i < s.samples; ++i) w[i] = s.grid_point(i);
            return w;
        }();
        const double step = omegas[1] - omegas[0];
        const auto t0 = std::chrono::steady_clock::now();
        const auto scan = enhancement_scan(c4.geometry(), kDefault, c4.contrast(), c4.incident(), omegas, {}, c4.n_max, 1);
        const double secs = seconds_since(t0);
        std::vector<double> ns, np;
        for (const auto& e : scan) {
            ns.push_back(e.norm_s);
            np.push_back(e.norm_p);
        }
        int hit = 0, total = 0;
        for (int q : {1, 2}) {
            const auto roots = find_resonances(c4.scan(q, 4), c4.geometry(), kDefault, c4.contrast());
            const auto pk = peaks(omegas, q == 1 ? ns : np);
            for (const auto& r : roots) {
                if (r.omega.real() < omegas.front() || r.omega.real() > omegas.back()) continue;
                ++total;
                double nearest = INFINITY;
                for (double p : pk) nearest = std::min(nearest, std::abs(p - r.omega.real()));
                hit += nearest <= step;
                std::cerr << "  q=" << q << " root " << fmt("%.6e", r.omega.real()) << " Im " << fmt("%.2e", r.omega.imag())
                          << ": nearest " << (q == 1 ? "shear" : "pressure") << " norm peak "
                          << (std::isfinite(nearest) ? fmt("%.2e", nearest) : std::string("none")) << " away (step "
                          << fmt("%.2e", step) << ")\n";
            }
        }
        report(10, ratio >= 100.0 && hit == total && total > 0 && secs <= 600.0, "resonant enhancement",
               "amplitude ratio " + fmt("%.0f", ratio) + ", " + std::to_string(hit) + "/" + std::to_string(total) +
                   " roots with a norm peak within one step, 200-point scan " + fmt("%.1f s", secs));
    }

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
