#include "nestres/asymptotics.hpp"
#include "nestres/specfun.hpp"

#include <cmath>
#include <limits>

namespace nestres {

Vec2c LowModes::cartesian(double th) const {
    const Vec2c er(std::cos(th), std::sin(th)), et(-std::sin(th), std::cos(th));
    Vec2c out = Vec2c::Zero();
    for (int n = -1; n <= 1; ++n) out += std::exp(kI * double(n) * th) * ((*this)[n](0) * er + (*this)[n](1) * et);
    return out;
}

cplx circle_pairing(const LowModes& a, const LowModes& b, double r) {
    cplx s = 0.0;
    for (int n = -1; n <= 1; ++n) s += a[n](0) * b[-n](0) + a[n](1) * b[-n](1);
    return 2.0 * kPi * r * s;
}

KernelBasis kernel_basis(double r) {
    if (!(r > 0.0)) throw DomainError("kernel_basis: radius must be positive");
    KernelBasis k;
    k.radius = r;
    k.xi[0][1] = Vec2c(0.5, 0.5 * kI);
    k.xi[0][-1] = Vec2c(0.5, -0.5 * kI);
    k.xi[1][1] = Vec2c(-0.5 * kI, 0.5);
    k.xi[1][-1] = Vec2c(0.5 * kI, 0.5);
    k.xi[2][0] = Vec2c(0.0, -r);
    for (int i = 0; i < 3; ++i) {
        const double s = i < 2 ? 1.0 / (2.0 * kPi * r) : 1.0 / (2.0 * kPi * r * r * r);
        for (int n = -1; n <= 1; ++n) k.zeta[i][n] = s * k.xi[i][n];
    }
    return k;
}

namespace {

void check_low_mode(int n) {
    if (n < -1 || n > 1) throw DomainError("static single layer: only harmonics -1, 0, 1 are available");
}

// Value map and its radial derivative of the static single layer.
struct ValueAndSlope {
    Mat2c v, dv;
};

ValueAndSlope static_values(const Medium& m, double R, int n, double r, bool inside) {
    check_low_mode(n);
    if (!(R > 0.0)) throw DomainError("static single layer: radius must be positive");
    const double lam = m.lambda, mu = m.mu, pm = m.p_modulus();
    ValueAndSlope out;
    out.v.setZero();
    out.dv.setZero();
    if (n == 0) {
        if (inside) {
            out.v(0, 0) = -r / (2.0 * pm);
            out.dv(0, 0) = -1.0 / (2.0 * pm);
            out.v(1, 1) = -r / (2.0 * mu);
            out.dv(1, 1) = -1.0 / (2.0 * mu);
        } else {
            out.v(0, 0) = -R * R / (2.0 * pm * r);
            out.dv(0, 0) = R * R / (2.0 * pm * r * r);
            out.v(1, 1) = -R * R / (2.0 * mu * r);
            out.dv(1, 1) = R * R / (2.0 * mu * r * r);
        }
        return out;
    }
    const double D = 16.0 * mu * pm, E = 4.0 * lam + 12.0 * mu, F = 4.0 * (lam + mu);
    const double g = lam - mu, h = 3.0 * lam + 5.0 * mu;
    if (inside) {
        const double L = std::log(R), r2 = r * r, R2 = R * R, s = 1.0 / (D * R);
        out.v << s * (R2 * (E * L - F) + g * r2), kI * s * (-R2 * E * L + g * r2),
            kI * s * (R2 * (E * L - F) + h * r2), -s * (-R2 * E * L + h * r2);
        out.dv << s * 2.0 * g * r, kI * s * 2.0 * g * r, kI * s * 2.0 * h * r, -s * 2.0 * h * r;
    } else {
        const double L = std::log(r), q = R * R / (r * r), dq = -2.0 * R * R / (r * r * r), s = R / D;
        out.v << s * (g * q + E * L - F), -kI * s * (h * q + E * L - F), kI * s * (-g * q + E * L), s * (-h * q + E * L);
        out.dv << s * (g * dq + E / r), -kI * s * (h * dq + E / r), kI * s * (-g * dq + E / r), s * (-h * dq + E / r);
    }
    if (n == -1) {
        out.v(0, 1) = -out.v(0, 1);
        out.v(1, 0) = -out.v(1, 0);
        out.dv(0, 1) = -out.dv(0, 1);
        out.dv(1, 0) = -out.dv(1, 0);
    }
    return out;
}

StaticModalMap with_traction(const Medium& m, int n, double r, const ValueAndSlope& vs) {
    StaticModalMap out;
    out.value = vs.v;
    const cplx in = kI * double(n);
    for (int col = 0; col < 2; ++col) {
        const cplx A = vs.v(0, col), B = vs.v(1, col), dA = vs.dv(0, col), dB = vs.dv(1, col);
        out.traction(0, col) = m.p_modulus() * dA + m.lambda * (A + in * B) / r;
        out.traction(1, col) = m.mu * (dB - B / r + in * A / r);
    }
    return out;
}

Mat2c mean_value_block(int n) {
    Mat2c b = Mat2c::Zero();
    if (n == 1) b << 1.0, -kI, kI, 1.0;
    if (n == -1) b << 1.0, kI, -kI, 1.0;
    return b;
}

double translational_eigen(const Medium& m, double R) {
    const auto c = asymptotic_constants(m);
    return c.sigma1 * std::log(R) - 0.5 * c.sigma2;
}

} // namespace

StaticModalMap static_interior(const Medium& m, double R, int n, double r) {
    if (r < 0.0 || r > R) throw DomainError("static_interior: target radius outside [0, R]");
    if (r == 0.0) throw SingularPointError("static_interior: the moving frame is undefined at the origin");
    return with_traction(m, n, r, static_values(m, R, n, r, true));
}

StaticModalMap static_exterior(const Medium& m, double R, int n, double r) {
    if (r < R) throw DomainError("static_exterior: target radius inside the source circle");
    return with_traction(m, n, r, static_values(m, R, n, r, false));
}

Mat2c modal_single_layer_hat(const Medium& m, cplx omega, double R, int n, double r, double scale) {
    const Mat2c v = static_values(m, R, n, r, r <= R).v;
    if (n == 0) return v;
    return v + gamma_omega(m, omega, scale) * kPi * R * mean_value_block(n);
}

double static_disk_single_layer(const Medium& m, double R, int i) {
    if (!(R > 0.0)) throw DomainError("static_disk_single_layer: radius must be positive");
    if (i == 1 || i == 2) return R * translational_eigen(m, R);
    if (i == 3) return -R / (2.0 * m.mu);
    throw DomainError("static_disk_single_layer: index must be 1, 2 or 3");
}

Eigen::Matrix3d c_matrix(const Medium& m, double R) {
    const KernelBasis k = kernel_basis(R);
    Eigen::Matrix3d c;
    for (int j = 0; j < 3; ++j) {
        LowModes s;
        for (int n = -1; n <= 1; ++n) s[n] = static_values(m, R, n, R, true).v * k.zeta[j][n];
        for (int i = 0; i < 3; ++i) c(i, j) = circle_pairing(k.zeta[i], s, R).real();
    }
    return c;
}

double c_singular_radius(const Medium& m) {
    const auto c = asymptotic_constants(m);
    return std::exp(0.5 * c.sigma2 / c.sigma1);
}

double kernel_space_residual(const Medium& m, double R) {
    const KernelBasis k = kernel_basis(R);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int n = -1; n <= 1; ++n) {
            const Vec2c t = static_interior(m, R, n, R).traction * k.zeta[i][n];
            worst = std::max(worst, t.norm());
        }
    return worst;
}

cplx DiskLeadingCoeffs::q(int i, cplx omega) const {
    if (i == 3) return 1.0;
    if (i != 1 && i != 2) throw DomainError("disk q: index must be 1, 2 or 3");
    const double e = translational_eigen(medium, radius);
    return (e + 2.0 * kPi * gamma_omega(medium, omega, contrast.tau())) / (e + 2.0 * kPi * gamma_omega(medium, omega));
}

cplx DiskLeadingCoeffs::equation(int i, cplx omega) const {
    const double rho = medium.rho;
    const cplx w2 = rho * omega * omega;
    const cplx pi = p.at(i - 1);
    return w2 * std::log(omega) * pi + w2 * (std::log(std::sqrt(rho) * contrast.tau()) * pi + m.at(i - 1)) -
           contrast.epsilon * q(i, omega);
}

DiskLeadingCoeffs disk_leading_coeffs(const Medium& med, const Contrast& c, double R) {
    if (!(R > 0.0)) throw DomainError("disk_leading_coeffs: radius must be positive");
    const auto k = asymptotic_constants(med);
    DiskLeadingCoeffs d{med, c, R, {}, {}};
    const double area = kPi * R * R;
    d.p = {k.a_lame * area, k.a_lame * area, 0.0};
    const cplx m1 = k.b_lame * area - 0.5 * R * R * translational_eigen(med, R);
    d.m = {m1, m1, R * R / (8.0 * med.mu)};
    return d;
}

namespace {

// Fixed-point start for rho w^2 (p (ln w + ln(sqrt(rho) tau)) + m) = eps q.
cplx disk_seed(const DiskLeadingCoeffs& d, int i) {
    const double rho = d.medium.rho;
    cplx w = std::sqrt(d.contrast.epsilon / (rho * std::abs(d.m.at(i - 1))));
    for (int k = 0; k < 30; ++k) {
        const cplx den = rho * (d.p.at(i - 1) * (std::log(w) + std::log(std::sqrt(rho) * d.contrast.tau())) + d.m.at(i - 1));
        w = std::sqrt(d.contrast.epsilon * d.q(i, w) / den);
    }
    return w;
}

} // namespace

std::array<RootResult, 3> disk_asymptotic_roots(const Medium& med, const Contrast& c, double R, const ScanConfig& cfg) {
    const DiskLeadingCoeffs d = disk_leading_coeffs(med, c, R);
    std::array<RootResult, 3> out;
    for (int i = 1; i <= 3; ++i) {
        RootResult r;
        if (i == 3) {
            r.omega = std::sqrt(c.epsilon * d.q(3, 1.0) / (med.rho * d.m[2]));
            r.converged = true;
        } else {
            const cplx seed = disk_seed(d, i);
            ScanConfig local = cfg;
            local.omega_max = std::max(cfg.omega_max, 10.0 * std::abs(seed));
            try {
                r = muller_refine([&](cplx w) { return d.equation(i, w) / c.epsilon; }, seed, local);
            } catch (const ConvergenceError&) {
                r.omega = seed;
                r.converged = false;
            }
            r.seed = seed.real();
        }
        r.channel = i == 3 ? 1 : 2;
        r.multiplicity = 1;
        r.method = RootMethod::asymptotic;
        r.residual = std::abs(d.equation(i, r.omega)) / c.epsilon;
        out[i - 1] = r;
    }
    return out;
}

double disk_translational_residual(const Medium& m, double epsilon, double R, cplx omega) {
    const auto k = wave_numbers(m, omega);
    const cplx ec = euler_constant_ec();
    const cplx rhs = -(R * R / 8.0) * (k.ks * k.ks * (ec + 2.0 * std::log(k.ks * R)) + k.kp * k.kp * (ec + 2.0 * std::log(k.kp * R)));
    return std::abs(epsilon - rhs) / epsilon;
}

namespace {

// One mode family of the nested problem: translational (w = 2, harmonic +1, xi = (1, i))
// or rotational (w = 1, harmonic 0, t-component, xi = -r).
struct Family {
    int w;
    bool translational;
    const Medium* med;
    cplx omega;
    double tau;

    MatXc S(double R, double r, double scale) const {
        if (translational) return modal_single_layer_hat(*med, omega, R, 1, r, scale);
        MatXc s(1, 1);
        s(0, 0) = static_values(*med, R, 0, r, r <= R).v(1, 1);
        return s;
    }
    VecXc xi(double r) const {
        VecXc v(w);
        if (translational) v << 1.0, kI;
        else v << -r;
        return v;
    }
    VecXc zeta(double r) const {
        return translational ? VecXc(xi(r) / (2.0 * kPi * r)) : VecXc(xi(r) / (2.0 * kPi * r * r * r));
    }
    cplx pair(const VecXc& f, const VecXc& g, double r) const {
        if (translational) return kPi * r * (f(0) * g(0) - f(1) * g(1));
        return 2.0 * kPi * r * f(0) * g(0);
    }
};

struct GapSolution {
    VecXc outer, inner;
    double residual;
};

// Densities on circles o > i with o-trace d_o and i-trace d_i of their combined single layer
// (outer density minus inner density).
GapSolution solve_gap(const Family& f, double o, double i, const VecXc& d_o, const VecXc& d_i) {
    const int w = f.w;
    MatXc k(2 * w, 2 * w);
    k << f.S(o, o, 1.0), -f.S(i, o, 1.0), f.S(o, i, 1.0), -f.S(i, i, 1.0);
    VecXc rhs(2 * w);
    rhs << d_o, d_i;
    Eigen::PartialPivLU<MatXc> lu(k);
    const VecXc s = lu.solve(rhs);
    const double res = (k * s - rhs).norm() / rhs.norm();
    return {s.head(w), s.tail(w), res};
}

struct FamilyMatrices {
    MatXc Q;
    double residual = 0.0;
};

FamilyMatrices family_q(const Family& f, const std::vector<double>& a, const std::vector<double>& b) {
    const int N = int(a.size());
    struct Sigma {
        VecXc up_outer, up_inner, down_outer, down_inner;
    };
    std::vector<Sigma> sg(N);
    FamilyMatrices out;
    const VecXc zero = VecXc::Zero(f.w);
    for (int i = 0; i < N; ++i) {
        if (i == 0) {
            Eigen::PartialPivLU<MatXc> lu(f.S(a[0], a[0], 1.0));
            sg[0].up_inner = -lu.solve(f.xi(a[0]));
        } else {
            const auto s = solve_gap(f, b[i - 1], a[i], zero, f.xi(a[i]));
            sg[i].up_outer = s.outer;
            sg[i].up_inner = s.inner;
            out.residual = std::max(out.residual, s.residual);
        }
        if (i + 1 < N) {
            const auto s = solve_gap(f, b[i], a[i + 1], zero, -f.xi(a[i + 1]));
            sg[i].down_outer = s.outer;
            sg[i].down_inner = s.inner;
            out.residual = std::max(out.residual, s.residual);
        }
    }
    out.Q = MatXc::Zero(N, N);
    for (int m = 0; m < N; ++m) {
        const VecXc z = f.zeta(a[m]);
        const VecXc sp = f.S(a[m], a[m], f.tau) * z;
        const VecXc sm = f.S(a[m], b[m], f.tau) * z;
        if (m > 0) out.Q(m, m - 1) = f.pair(sp, sg[m - 1].down_inner, a[m]);
        out.Q(m, m) = f.pair(sp, sg[m].up_inner, a[m]);
        if (m + 1 < N) {
            out.Q(m, m) -= f.pair(sm, sg[m].down_outer, b[m]);
            out.Q(m, m + 1) = -f.pair(sm, sg[m + 1].up_outer, b[m]);
        }
    }
    // The pairing above carries the opposite orientation to the transmission problem.
    out.Q = -out.Q;
    return out;
}

void ring_radii(const ConcentricGeometry& g, std::vector<double>& a, std::vector<double>& b) {
    a.clear();
    b.clear();
    if (g.kind() == ConcentricGeometry::Kind::single_disk) {
        a.push_back(g.radii()[0]);
        b.push_back(0.0);
        return;
    }
    for (int m = 0; m < g.resonators(); ++m) {
        a.push_back(g.radii()[2 * m]);
        b.push_back(g.radii()[2 * m + 1]);
    }
}

} // namespace

MatXc LeadingMatrices::system(const Medium& m, const Contrast& c, cplx omega) const {
    const cplx w2 = m.rho * omega * omega;
    return w2 * std::log(omega) * P + w2 * (std::log(std::sqrt(m.rho) * c.tau()) * P + M) - c.epsilon * Q;
}

LeadingMatrices nested_leading_matrices(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega) {
    std::vector<double> a, b;
    ring_radii(g, a, b);
    const int N = int(a.size());
    const auto k = asymptotic_constants(m);
    LeadingMatrices L{N, MatXc::Zero(3 * N, 3 * N), MatXc::Zero(3 * N, 3 * N), MatXc::Zero(3 * N, 3 * N)};
    for (int j = 0; j < N; ++j) {
        const double area = kPi * (a[j] * a[j] - b[j] * b[j]);
        const cplx m11 = k.b_lame * area - translational_eigen(m, a[j]) * area / (2.0 * kPi);
        for (int i = 0; i < 2; ++i) {
            L.P(i * N + j, i * N + j) = k.a_lame * area;
            L.M(i * N + j, i * N + j) = m11;
        }
        L.M(2 * N + j, 2 * N + j) = (std::pow(a[j], 4) - std::pow(b[j], 4)) / (8.0 * m.mu * a[j] * a[j]);
    }
    const Family trans{2, true, &m, omega, c.tau()};
    const Family rot{1, false, &m, omega, c.tau()};
    const MatXc qt = family_q(trans, a, b).Q;
    L.Q.block(0, 0, N, N) = qt;
    L.Q.block(N, N, N, N) = qt;
    L.Q.block(2 * N, 2 * N, N, N) = family_q(rot, a, b).Q;
    return L;
}

double gap_density_residual(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega) {
    std::vector<double> a, b;
    ring_radii(g, a, b);
    const Family trans{2, true, &m, omega, c.tau()};
    const Family rot{1, false, &m, omega, c.tau()};
    return std::max(family_q(trans, a, b).residual, family_q(rot, a, b).residual);
}

cplx asymptotic_det(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int q) {
    channel_mode(q);
    const LeadingMatrices L = nested_leading_matrices(g, m, c, omega);
    const int N = L.resonators;
    const int off = q == 1 ? 2 * N : 0;
    const MatXc s = L.system(m, c, omega).block(off, off, N, N) / c.epsilon;
    return s.determinant();
}

std::vector<RootResult> asymptotic_roots_from_seeds(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                                    int q, const std::vector<cplx>& seeds, const ScanConfig& cfg) {
    std::vector<RootResult> out;
    for (cplx s : seeds) {
        RootResult r;
        try {
            r = muller_refine([&](cplx w) { return asymptotic_det(g, m, c, w, q); }, s, cfg);
        } catch (const ConvergenceError&) {
            r.omega = cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
            r.converged = false;
        }
        r.seed = s.real();
        r.channel = q;
        r.method = RootMethod::asymptotic;
        r.multiplicity = q == 1 ? 1 : 2;
        if (std::isfinite(r.omega.real())) r.residual = std::abs(asymptotic_det(g, m, c, r.omega, q));
        out.push_back(r);
    }
    return out;
}

std::vector<RootResult> nested_asymptotic_roots(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                                const ScanConfig& cfg) {
    cfg.validate();
    const auto vals = parallel_grid(cfg, [&](double w) { return std::abs(asymptotic_det(g, m, c, w, cfg.channel)); });
    std::vector<cplx> seeds;
    for (double s : local_minima(cfg, vals)) seeds.emplace_back(s, 0.0);
    auto roots = asymptotic_roots_from_seeds(g, m, c, cfg.channel, seeds, cfg);
    std::vector<RootResult> kept;
    for (const auto& r : roots)
        if (!std::isfinite(r.omega.real()) || (r.omega.real() >= cfg.omega_min && r.omega.real() <= cfg.omega_max))
            kept.push_back(r);
    std::sort(kept.begin(), kept.end(), [](const RootResult& x, const RootResult& y) { return x.omega.real() < y.omega.real(); });
    std::vector<RootResult> merged;
    for (const auto& r : kept) {
        if (!merged.empty() && std::abs(merged.back().omega - r.omega) < 1e-9) continue;
        merged.push_back(r);
    }
    return merged;
}

} // namespace nestres
