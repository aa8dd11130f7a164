#include "nestres/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace nestres {

const VecXc& ScatteringSolution::harmonic(int n) const {
    if (std::abs(n) > n_max) throw DomainError("scattering solution: harmonic beyond the truncation");
    return densities.at(n + n_max);
}

ScatteringSolution solve_scattering(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega,
                                    const IncidentWave& wave, int n_max, double max_condition) {
    if (n_max < 1) throw DomainError("solve_scattering: n_max must be at least 1");
    ScatteringSolution s{omega, wave, n_max, {}};
    for (int n = -n_max; n <= n_max; ++n)
        s.densities.push_back(solve_densities(assemble_harmonic(g, m, c, omega, n), harmonic_rhs(g, m, omega, wave, n),
                                              max_condition));
    return s;
}

std::string region_label(const ConcentricGeometry& g, int region) {
    const int M = g.circles();
    if (region < 0 || region > M) throw DomainError("region_label: region index out of range");
    if (region == 0) return "exterior";
    if (g.kind() == ConcentricGeometry::Kind::single_disk) return "disk";
    if (region == M) return "core";
    if (region % 2 == 1) return "annulus " + std::to_string((region + 1) / 2);
    return "gap " + std::to_string(region / 2);
}

int resonator_region(const ConcentricGeometry& g, int j) {
    if (j < 1 || j > g.resonators()) throw DomainError("resonator index out of range");
    return 2 * j - 1;
}

namespace {

struct Parts {
    Vec2c total = Vec2c::Zero(), s = Vec2c::Zero(), p = Vec2c::Zero();
};

Parts incident_parts(const Medium& m, cplx omega, const IncidentWave& w, const Vec2d& x) {
    Parts out;
    if (w.kind != IncidentWave::Kind::s) out.p = incident_field(m, omega, IncidentWave(IncidentWave::Kind::p, w.direction, w.amplitude), x);
    if (w.kind != IncidentWave::Kind::p)
        out.s = incident_field(m, omega, IncidentWave(IncidentWave::Kind::s, w.direction, w.polarization, w.amplitude), x);
    out.total = out.s + out.p;
    return out;
}

// Frame coefficients of every harmonic at one radius of one region.
std::vector<ModalTrace> radial_modes(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                     const ScatteringSolution& s, int region, double r) {
    std::vector<ModalTrace> out;
    for (int n = -s.n_max; n <= s.n_max; ++n)
        out.push_back(harmonic_trace(g, m, c, s.omega, n, s.harmonic(n), region, r));
    return out;
}

Parts combine(const std::vector<ModalTrace>& modes, int n_max, double th) {
    const Vec2c er(std::cos(th), std::sin(th)), et(-std::sin(th), std::cos(th));
    Parts out;
    for (int n = -n_max; n <= n_max; ++n) {
        const ModalTrace& t = modes[n + n_max];
        const cplx e = std::exp(kI * double(n) * th);
        out.s += e * (t.value_s(0) * er + t.value_s(1) * et);
        out.p += e * (t.value_p(0) * er + t.value_p(1) * et);
    }
    out.total = out.s + out.p;
    return out;
}

Parts field_at(const ConcentricGeometry& g, const Medium& m, const Contrast& c, const ScatteringSolution& s,
               const Vec2d& x, int& region) {
    const double r1 = g.radii()[0];
    double r = x.norm();
    region = g.region_of(r, 1e-9 * r1);
    // The frame is undefined at the origin; the field is continuous there.
    if (r == 0.0) r = 1e-12 * r1;
    Parts out = combine(radial_modes(g, m, c, s, region, r), s.n_max, std::atan2(x(1), x(0)));
    if (region == 0) {
        const Parts inc = incident_parts(m, s.omega, s.wave, x);
        out.s += inc.s;
        out.p += inc.p;
    }
    out.total = out.s + out.p;
    return out;
}

template <typename F> void parallel_for(int count, int threads, F&& body) {
    const int nt = std::max(1, std::min(threads, count));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += nt) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Radial span of a bounded region.
std::pair<double, double> region_span(const ConcentricGeometry& g, int region) {
    if (region < 1 || region > g.circles()) throw DomainError("region must be bounded");
    const auto& r = g.radii();
    return {region < g.circles() ? r[region] : 0.0, r[region - 1]};
}

// Tensor polar quadrature: nodes * nodes points over a bounded region.
template <typename F> void polar_quadrature(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                            const ScatteringSolution& s, int region, F&& visit, int nodes = 64) {
    const auto [a, b] = region_span(g, region);
    Eigen::VectorXd x, w;
    gauss_legendre(nodes, a, b, x, w);
    const double dth = 2.0 * kPi / nodes;
    for (int i = 0; i < nodes; ++i) {
        const auto modes = radial_modes(g, m, c, s, region, x(i));
        for (int k = 0; k < nodes; ++k) {
            const double th = k * dth;
            visit(Vec2d(x(i) * std::cos(th), x(i) * std::sin(th)), combine(modes, s.n_max, th), w(i) * x(i) * dth);
        }
    }
}

} // namespace

void gauss_legendre(int n, double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    if (n < 1) throw DomainError("gauss_legendre: need at least one node");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x = 0.5 * (b - a) * (es.eigenvalues().array() + 1.0) + a;
    w = (b - a) * es.eigenvectors().row(0).transpose().array().square();
}

FieldGrid evaluate_field(const ConcentricGeometry& g, const Medium& m, const Contrast& c, const ScatteringSolution& s,
                         const std::vector<Vec2d>& points, int threads) {
    FieldGrid f;
    const std::size_t n = points.size();
    f.points = points;
    f.regions.assign(n, 0);
    f.values.assign(n, Vec2c::Zero());
    f.u_s.assign(n, Vec2c::Zero());
    f.u_p.assign(n, Vec2c::Zero());
    parallel_for(int(n), threads, [&](int i) {
        const Parts p = field_at(g, m, c, s, points[i], f.regions[i]);
        f.values[i] = p.total;
        f.u_s[i] = p.s;
        f.u_p[i] = p.p;
    });
    return f;
}

SplitDiagnostics sp_split_check(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                const ScatteringSolution& s, const std::vector<Vec2d>& points, double h) {
    SplitDiagnostics d;
    for (const Vec2d& x : points) {
        int region = 0;
        Eigen::Matrix<cplx, 2, 2> gs, gp; // gradients, column k = derivative along x_k
        for (int k = 0; k < 2; ++k) {
            const Vec2d e = h * Vec2d::Unit(k);
            const Parts plus = field_at(g, m, c, s, x + e, region), minus = field_at(g, m, c, s, x - e, region);
            gs.col(k) = (plus.s - minus.s) / (2.0 * h);
            gp.col(k) = (plus.p - minus.p) / (2.0 * h);
        }
        const double scale = std::max(gs.norm() + gp.norm(), 1e-300);
        d.divergence_s = std::max(d.divergence_s, std::abs(gs.trace()) / scale);
        d.curl_p = std::max(d.curl_p, std::abs(gp(1, 0) - gp(0, 1)) / scale);
        ++d.samples;
    }
    return d;
}

ModeAmplitudes mode_amplitudes(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                               const ScatteringSolution& s, int j) {
    const int region = resonator_region(g, j);
    std::array<cplx, 3> num{};
    std::array<double, 3> den{};
    polar_quadrature(g, m, c, s, region, [&](const Vec2d& x, const Parts& u, double wt) {
        const std::array<Vec2d, 3> xi{Vec2d(1.0, 0.0), Vec2d(0.0, 1.0), Vec2d(x(1), -x(0))};
        for (int i = 0; i < 3; ++i) {
            num[i] += wt * (u.total(0) * xi[i](0) + u.total(1) * xi[i](1));
            den[i] += wt * xi[i].squaredNorm();
        }
    });
    ModeAmplitudes out{j, {}};
    for (int i = 0; i < 3; ++i) out.varrho[i] = num[i] / den[i];
    return out;
}

std::vector<EnhancementSample> enhancement_scan(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                                const IncidentWave& wave, const std::vector<double>& omegas,
                                                std::vector<int> regions, int n_max, int threads) {
    if (regions.empty())
        for (int j = 1; j <= g.resonators(); ++j) regions.push_back(resonator_region(g, j));
    for (int r : regions) region_span(g, r);
    std::vector<EnhancementSample> out(omegas.size());
    parallel_for(int(omegas.size()), threads, [&](int i) {
        EnhancementSample& e = out[i];
        e.omega = omegas[i];
        try {
            const ScatteringSolution s = solve_scattering(g, m, c, omegas[i], wave, n_max);
            double ns = 0.0, np = 0.0;
            for (int r : regions)
                polar_quadrature(g, m, c, s, r, [&](const Vec2d&, const Parts& u, double wt) {
                    ns += wt * u.s.squaredNorm();
                    np += wt * u.p.squaredNorm();
                });
            e.norm_s = std::sqrt(ns);
            e.norm_p = std::sqrt(np);
        } catch (const NearSingularError& err) {
            e.ok = false;
            e.error = err.what();
            e.norm_s = e.norm_p = std::numeric_limits<double>::quiet_NaN();
        }
    });
    return out;
}

} // namespace nestres
