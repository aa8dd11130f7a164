#include "nestres/assembly.hpp"
#include "nestres/diskkernels.hpp"
#include "nestres/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace nestres {

ConcentricGeometry::ConcentricGeometry(Kind kind, std::vector<double> radii) : kind_(kind), radii_(std::move(radii)) {
    if (radii_.empty()) throw DomainError("geometry: no circles");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] > 0.0)) throw DomainError("geometry: radii must be positive");
        if (i > 0 && !(radii_[i] < radii_[i - 1])) throw DomainError("geometry: radii must be strictly decreasing");
    }
    if (kind_ == Kind::single_disk && radii_.size() != 1) throw DomainError("geometry: a single disk has one circle");
    if (kind_ == Kind::nested && radii_.size() % 2 != 0) throw DomainError("geometry: nested layout needs an even number of circles");
}

ConcentricGeometry ConcentricGeometry::single_disk(double radius) { return {Kind::single_disk, {radius}}; }

ConcentricGeometry ConcentricGeometry::nested(std::vector<double> radii) { return {Kind::nested, std::move(radii)}; }

ConcentricGeometry ConcentricGeometry::nested_equidistant(int n, double outer_radius) {
    if (n < 1) throw DomainError("geometry: at least one resonator");
    std::vector<double> r;
    const double s = outer_radius / 2.0;
    for (int j = 1; j <= n; ++j) {
        r.push_back(s * (2.0 - 2.0 * (j - 1) / n));
        r.push_back(s * (2.0 - (2.0 * j - 1) / n));
    }
    return nested(std::move(r));
}

bool ConcentricGeometry::is_resonator_region(int region) const {
    if (region < 0 || region > circles()) throw DomainError("geometry: region index out of range");
    return region % 2 == 1;
}

int ConcentricGeometry::region_of(double r, double tol) const {
    int k = 0;
    for (double rc : radii_) {
        if (std::abs(r - rc) <= tol) throw SingularPointError("geometry: point on an interface");
        if (r < rc) ++k;
    }
    return k;
}

int channel_mode(int q) {
    switch (q) {
    case 1: return 0;
    case 2: return 1;
    case 3: return -1;
    default: throw DomainError("channel must be 1, 2 or 3");
    }
}

int channel_width(int q) {
    channel_mode(q);
    return q == 1 ? 1 : 2;
}

Medium region_medium(const ConcentricGeometry& g, const Medium& background, const Contrast& c, int region) {
    return g.is_resonator_region(region) ? c.resonator(background) : background;
}

namespace {

// Block of a 2x2 frame map restricted to the channel's components.
MatXc restrict(const Mat2c& a, int w) {
    if (w == 1) return a.block<1, 1>(1, 1);
    return a;
}

// Column offset of the inner- (side 0) or outer-representation (side 1) density on circle i.
int unknown(int i, int side, int w) { return (2 * i + side) * w; }

} // namespace

namespace {

// Harmonic n restricted to `w` frame components (w = 1 keeps only the tangential one).
MatXc assemble_modes(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int n, int w) {
    const int M = g.circles();
    const auto& r = g.radii();
    const double scale = r[0];
    MatXc a = MatXc::Zero(2 * M * w, 2 * M * w);

    for (int i = 0; i < M; ++i) {
        const Medium outside = region_medium(g, m, c, i);
        const Medium inside = region_medium(g, m, c, i + 1);
        const int row_u = 2 * i * w, row_t = (2 * i + 1) * w;
        auto put = [&](int col, const ModalTransfer& t, double sign) {
            a.block(row_u, col, w, w) += sign * restrict(t.value_map, w);
            a.block(row_t, col, w, w) += sign * scale * restrict(t.traction_map, w);
        };
        // inside field minus outside field
        put(unknown(i, 0, w), interior_transfer(inside, omega, r[i], n, r[i]), 1.0);
        if (i + 1 < M) put(unknown(i + 1, 1, w), exterior_transfer(inside, omega, r[i + 1], n, r[i]), 1.0);
        put(unknown(i, 1, w), exterior_transfer(outside, omega, r[i], n, r[i]), -1.0);
        if (i > 0) put(unknown(i - 1, 0, w), interior_transfer(outside, omega, r[i - 1], n, r[i]), -1.0);
    }
    return a;
}

} // namespace

ModalSystem assemble(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int q) {
    return {q, g.circles(), assemble_modes(g, m, c, omega, channel_mode(q), channel_width(q))};
}

ModalSystem assemble_harmonic(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int n) {
    return {0, g.circles(), assemble_modes(g, m, c, omega, n, 2)};
}

IncidentWave::IncidentWave(Kind kind_, Vec2d direction_, cplx amplitude_)
    : IncidentWave(kind_, direction_, Vec2d(-direction_(1), direction_(0)), amplitude_) {}

IncidentWave::IncidentWave(Kind kind_, Vec2d direction_, Vec2d polarization_, cplx amplitude_)
    : kind(kind_), direction(direction_), polarization(polarization_), amplitude(amplitude_) {
    if (std::abs(direction.norm() - 1.0) > 1e-12) throw DomainError("incident wave: direction must be a unit vector");
    if (kind != Kind::p) {
        if (std::abs(polarization.norm() - 1.0) > 1e-12) throw DomainError("incident wave: polarization must be a unit vector");
        if (std::abs(polarization.dot(direction)) > 1e-12) throw DomainError("incident wave: polarization must be orthogonal to the direction");
    }
}

ModalTrace incident_mode(const Medium& m, cplx omega, const IncidentWave& wave, int n, double r) {
    if (!(r > 0.0)) throw DomainError("incident_mode: radius must be positive");
    const auto k = wave_numbers(m, omega);
    const double theta_d = std::atan2(wave.direction(1), wave.direction(0));
    const double dn = n;
    const cplx phase = std::pow(kI, n) * std::exp(-kI * dn * theta_d);
    ModalTrace out;
    auto second = [&](cplx x, cplx z, cplx zp) { return -zp / x - (1.0 - dn * dn / (x * x)) * z; };

    if (wave.kind != IncidentWave::Kind::s) {
        // u = d e^{i k x.d} = grad(e^{i k x.d}) / (i k)
        const cplx kk = k.kp, x = kk * r;
        const cplx z = bessel_j(n, x), zp = bessel_jp(n, x), zpp = second(x, z, zp);
        const cplx a = wave.amplitude * phase / (kI * kk);
        const Vec2c v(a * kk * zp, a * kI * dn / r * z);
        const Vec2c t(a * (-m.lambda * kk * kk * z + 2.0 * m.mu * kk * kk * zpp),
                      a * 2.0 * m.mu * kI * dn * (kk * zp / r - z / (r * r)));
        out.value_p += v;
        out.value += v;
        out.traction += t;
    }
    if (wave.kind != IncidentWave::Kind::p) {
        // u = q e^{i k x.d} = s rot(e^{i k x.d}) / (i k), rot f = (-d_y f, d_x f), q = s d^perp
        const Vec2d perp(-wave.direction(1), wave.direction(0));
        const double s = wave.polarization.dot(perp);
        const cplx kk = k.ks, x = kk * r;
        const cplx z = bessel_j(n, x), zp = bessel_jp(n, x), zpp = second(x, z, zp);
        const cplx a = s * wave.amplitude * phase / (kI * kk);
        const Vec2c v(-a * kI * dn / r * z, a * kk * zp);
        const Vec2c t(-a * 2.0 * m.mu * kI * dn * (kk * zp / r - z / (r * r)),
                      a * m.mu * (kk * kk * zpp - kk * zp / r + dn * dn * z / (r * r)));
        out.value_s += v;
        out.value += v;
        out.traction += t;
    }
    return out;
}

Vec2c incident_field(const Medium& m, cplx omega, const IncidentWave& w, const Vec2d& x) {
    const auto k = wave_numbers(m, omega);
    const double xd = x.dot(w.direction);
    Vec2c u = Vec2c::Zero();
    if (w.kind != IncidentWave::Kind::s) u += w.amplitude * std::exp(kI * k.kp * xd) * w.direction.cast<cplx>();
    if (w.kind != IncidentWave::Kind::p) u += w.amplitude * std::exp(kI * k.ks * xd) * w.polarization.cast<cplx>();
    return u;
}

namespace {

VecXc rhs_modes(const ConcentricGeometry& g, const Medium& m, cplx omega, const IncidentWave& wave, int n, int w) {
    const double r1 = g.radii()[0];
    const ModalTrace t = incident_mode(m, omega, wave, n, r1);
    VecXc f = VecXc::Zero(2 * g.circles() * w);
    if (w == 1) {
        f(0) = t.value(1);
        f(1) = r1 * t.traction(1);
    } else {
        f.segment(0, 2) = t.value;
        f.segment(2, 2) = r1 * t.traction;
    }
    return f;
}

ModalTrace trace_modes(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int n, int w,
                       const VecXc& x, int region, double r) {
    const int M = g.circles();
    if (region < 0 || region > M) throw DomainError("region_trace: region index out of range");
    if (x.size() != 2 * M * w) throw DomainError("region_trace: density vector does not match the system");
    const auto& radii = g.radii();
    const Medium med = region_medium(g, m, c, region);
    ModalTrace out;
    auto add = [&](const ModalTransfer& t, int col) {
        Vec2c d = Vec2c::Zero();
        if (w == 1) d(1) = x(col);
        else d = x.segment(col, 2);
        out.value += t.value_map * d;
        out.value_s += t.value_s * d;
        out.value_p += t.value_p * d;
        out.traction += t.traction_map * d;
    };
    if (region < M) add(exterior_transfer(med, omega, radii[region], n, r), unknown(region, 1, w));
    if (region > 0) add(interior_transfer(med, omega, radii[region - 1], n, r), unknown(region - 1, 0, w));
    if (w == 1) {
        out.value(0) = out.value_s(0) = out.value_p(0) = out.traction(0) = 0.0;
    }
    return out;
}

} // namespace

VecXc incident_rhs(const ConcentricGeometry& g, const Medium& m, cplx omega, const IncidentWave& wave, int q) {
    return rhs_modes(g, m, omega, wave, channel_mode(q), channel_width(q));
}

VecXc harmonic_rhs(const ConcentricGeometry& g, const Medium& m, cplx omega, const IncidentWave& wave, int n) {
    return rhs_modes(g, m, omega, wave, n, 2);
}

ModalTrace region_trace(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int q,
                        const VecXc& x, int region, double r) {
    return trace_modes(g, m, c, omega, channel_mode(q), channel_width(q), x, region, r);
}

ModalTrace harmonic_trace(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int n,
                          const VecXc& x, int region, double r) {
    return trace_modes(g, m, c, omega, n, 2, x, region, r);
}

ScaledDeterminant determinant(const MatXc& a) {
    if (a.rows() != a.cols()) throw DomainError("determinant: matrix must be square");
    if (a.rows() == 0) return {1.0, 0.0};
    Eigen::PartialPivLU<MatXc> lu(a);
    const MatXc& u = lu.matrixLU();
    cplx mant = double(lu.permutationP().determinant());
    double expo = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        mant *= u(i, i);
        const double mag = std::abs(mant);
        if (mag == 0.0) return {0.0, 0.0};
        const double e = std::floor(std::log10(mag));
        mant /= std::pow(10.0, e);
        expo += e;
    }
    return {mant, expo};
}

VecXc solve_densities(const ModalSystem& s, const VecXc& rhs, double max_condition) {
    if (rhs.size() != s.matrix.rows()) throw DomainError("solve_densities: right-hand side has the wrong size");
    Eigen::PartialPivLU<MatXc> lu(s.matrix);
    const double rc = lu.rcond();
    const double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(cond <= max_condition)) throw NearSingularError("solve_densities: system is near singular", cond);
    return lu.solve(rhs);
}

} // namespace nestres
