#include "nestres/diskkernels.hpp"
#include "nestres/specfun.hpp"

#include <cmath>

namespace nestres {

Mat2c ModalBoundaryCoeffs::matrix() const {
    Mat2c a;
    a << alpha1, alpha3, alpha2, alpha4;
    return a;
}

Mat2c NPModalCoeffs::matrix() const {
    Mat2c a;
    a << a1, b1, a2, b2;
    return a;
}

namespace {

enum class Side { exterior, interior };

struct Pair {
    cplx z, zp;
};

// Source factors use J on the exterior side and H on the interior side; targets the opposite.
Pair source_factor(Side side, int n, cplx arg) {
    const auto c = cylinder_values(n, arg);
    return side == Side::exterior ? Pair{c.j, c.jp} : Pair{c.h, c.hp};
}

Pair target_factor(Side side, int n, cplx arg) {
    if (side == Side::interior && arg == cplx(0.0)) return {bessel_j(n, arg), bessel_jp(n, arg)};
    const auto c = cylinder_values(n, arg);
    return side == Side::exterior ? Pair{c.h, c.hp} : Pair{c.j, c.jp};
}

ModalTransfer transfer(const Medium& m, cplx omega, double R, int n, double x, Side side) {
    if (omega == cplx(0.0)) throw DomainError("modal transfer: zero frequency");
    if (!(R > 0.0)) throw DomainError("modal transfer: source radius must be positive");
    const auto k = wave_numbers(m, omega);
    const cplx ks = k.ks, kp = k.kp;
    const double mu = m.mu;
    const cplx w2 = omega * omega * m.rho;
    const double nn = double(n) * double(n);
    const double dn = double(n);

    ModalTransfer out;
    out.n = n;
    out.source_radius = R;
    out.target_radius = x;

    if (x == 0.0) {
        if (side != Side::interior || n != 0)
            throw SingularPointError("modal transfer: the moving frame is undefined at the origin");
        out.value_map.setZero();
        out.value_s.setZero();
        out.value_p.setZero();
        out.traction_map.setZero();
        return out;
    }

    const Pair sS = source_factor(side, n, ks * R);
    const Pair sP = source_factor(side, n, kp * R);
    const Pair tS = target_factor(side, n, ks * x);
    const Pair tP = target_factor(side, n, kp * x);

    // Values: density coefficients on the shear and pressure cylindrical waves.
    // The common 1/(omega^2 rho) is applied once at the end.
    const double pre = 1.0 / (4.0 * R);
    const cplx cs_v = -kI * kPi * pre * dn * ks * R * sS.z;
    const cplx cp_v = -kI * kPi * pre * kp * kp * R * R * sP.zp;
    const cplx cs_t = -kPi * pre * ks * ks * R * R * sS.zp;
    const cplx cp_t = -kPi * pre * dn * kp * R * sP.z;
    const cplx ws_v = 2.0 * dn * tS.z / (ks * x), ws_t = 2.0 * kI * tS.zp;
    const cplx wp_v = 2.0 * tP.zp, wp_t = 2.0 * kI * dn * tP.z / (kp * x);

    const cplx inv_w2 = 1.0 / w2;
    out.value_s << cs_v * ws_v, cs_t * ws_v, cs_v * ws_t, cs_t * ws_t;
    out.value_p << cp_v * wp_v, cp_t * wp_v, cp_v * wp_t, cp_t * wp_t;
    out.value_s *= inv_w2;
    out.value_p *= inv_w2;
    out.value_map = out.value_s + out.value_p;

    // Tractions from the stresses of each normalized cylindrical wave.
    const cplx xs = ks * x, xp = kp * x;
    const cplx zpp_s = -tS.zp / xs - (1.0 - nn / (xs * xs)) * tS.z;
    const cplx zpp_p = -tP.zp / xp - (1.0 - nn / (xp * xp)) * tP.z;
    const double lam = m.lambda;
    const cplx ts_v = 4.0 * mu * dn * (tS.zp / x - tS.z / (ks * x * x));
    const cplx ts_t = 2.0 / (kI * ks) * mu * (-nn * tS.z / (x * x) - ks * ks * zpp_s + ks * tS.zp / x);
    const cplx tp_v = 2.0 * kp * (-lam * tP.z + 2.0 * mu * zpp_p);
    const cplx tp_t = 4.0 * kI * mu * dn * (tP.zp / x - tP.z / (kp * x * x));
    out.traction_map << cs_v * ts_v + cp_v * tp_v, cs_t * ts_v + cp_t * tp_v,
        cs_v * ts_t + cp_v * tp_t, cs_t * ts_t + cp_t * tp_t;
    out.traction_map *= inv_w2;
    return out;
}

} // namespace

ModalTransfer exterior_transfer(const Medium& m, cplx omega, double R, int n, double r) {
    if (r < R) throw DomainError("exterior_transfer: target radius inside the source circle");
    return transfer(m, omega, R, n, r, Side::exterior);
}

ModalTransfer interior_transfer(const Medium& m, cplx omega, double R, int n, double r) {
    if (r > R || r < 0.0) throw DomainError("interior_transfer: target radius outside [0, R]");
    return transfer(m, omega, R, n, r, Side::interior);
}

ModalBoundaryCoeffs boundary_coeffs(const Medium& m, cplx omega, double R, int n) {
    if (omega == cplx(0.0)) throw DomainError("boundary_coeffs: zero frequency");
    const auto k = wave_numbers(m, omega);
    const auto s = cylinder_values(n, k.ks * R);
    const auto p = cylinder_values(n, k.kp * R);
    const cplx w2 = omega * omega * m.rho;
    const double dn = n, nn = dn * dn;
    ModalBoundaryCoeffs c;
    c.n = n;
    c.alpha1 = -kI * kPi / (2.0 * w2 * R) * (nn * s.j * s.h + k.kp * k.kp * R * R * p.jp * p.hp);
    c.alpha2 = dn * kPi / (2.0 * w2) * (k.ks * s.j * s.hp + k.kp * p.jp * p.h);
    c.alpha3 = -dn * kPi / (2.0 * w2) * (k.ks * s.jp * s.h + k.kp * p.j * p.hp);
    c.alpha4 = -kI * kPi / (2.0 * w2 * R) * (k.ks * k.ks * R * R * s.jp * s.hp + nn * p.j * p.h);
    return c;
}

NPModalCoeffs np_coeffs(const Medium& m, cplx omega, double R, int n) {
    const Mat2c g = exterior_transfer(m, omega, R, n, R).traction_map;
    return {n, g(0, 0) - 0.5, g(1, 0), g(0, 1), g(1, 1) - 0.5};
}

} // namespace nestres
