#include "nestres/specfun.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace nestres {

namespace {

constexpr double kSeriesSwitch = 2.0;
constexpr double kMaxArgument = 50.0;
constexpr int kMaxTerms = 60;
constexpr double kSeriesTol = 1e-17;

void check_argument(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("cylinder function: non-finite argument");
    if (std::abs(z) >= kMaxArgument)
        throw DomainError("cylinder function: |z| outside supported range");
}

double digamma_int(int m) { // psi(m), m >= 1
    double s = -kEulerGamma;
    for (int j = 1; j < m; ++j) s += 1.0 / j;
    return s;
}

double factorial(int m) {
    double f = 1.0;
    for (int j = 2; j <= m; ++j) f *= j;
    return f;
}

// Finite Laurent part of Y_n, n >= 0, so that Y_n = pole + regular.
cplx y_pole(int n, cplx z) {
    if (n == 0) return 0.0;
    const cplx h = 0.5 * z;
    const cplx h2 = h * h;
    cplx p = 1.0, finite = 0.0;
    for (int k = 0; k < n; ++k) {
        finite += factorial(n - k - 1) / factorial(k) * p;
        p *= h2;
    }
    return -finite / std::pow(h, n) / kPi;
}

// J_n and Y_n for n >= 0 by power series; with drop_pole the Laurent part of Y_n is omitted.
std::array<cplx, 2> jy_series(int n, cplx z, bool drop_pole = false) {
    const cplx h = 0.5 * z;
    const cplx q = -h * h;
    const cplx hn = std::pow(h, n);

    cplx term = 1.0 / factorial(n);
    cplx sj = term;
    cplx sy = (digamma_int(1) + digamma_int(n + 1)) * term;
    for (int k = 1; k < kMaxTerms; ++k) {
        term *= q / (double(k) * double(n + k));
        const cplx ty = (digamma_int(k + 1) + digamma_int(n + k + 1)) * term;
        sj += term;
        sy += ty;
        if (std::abs(term) < kSeriesTol * std::abs(sj) && std::abs(ty) < kSeriesTol * std::abs(sy)) break;
    }
    const cplx jn = hn * sj;

    cplx yn = (2.0 / kPi) * jn * std::log(h) - hn * sy / kPi;
    if (!drop_pole) yn += y_pole(n, z);
    return {jn, yn};
}

// J_0..J_nmax and Y_0..Y_nmax by backward recurrence and Neumann series.
void jy_recurrence(int nmax, cplx z, std::vector<cplx>& j, std::vector<cplx>& y) {
    const int m = 2 * (int(1.3 * std::abs(z)) + nmax / 2 + 20);
    std::vector<cplx> f(m + 2, 0.0);
    f[m] = 1e-30;
    for (int k = m; k > 0; --k) {
        f[k - 1] = (2.0 * k / z) * f[k] - f[k + 1];
        if (std::abs(f[k - 1]) > 1e250) {
            for (int i = k - 1; i <= m; ++i) f[i] *= 1e-250;
        }
    }
    cplx norm = f[0];
    for (int k = 2; k <= m; k += 2) norm += 2.0 * f[k];
    for (auto& v : f) v /= norm;

    cplx s0 = 0.0, s1 = 0.0;
    for (int k = 1; 2 * k <= m; ++k) {
        const double sgn = (k % 2) ? -1.0 : 1.0;
        s0 += sgn * f[2 * k] / double(k);
        if (2 * k + 1 <= m) s1 += sgn * double(1 + 2 * k) / double(k * (k + 1)) * f[2 * k + 1];
    }
    const cplx lg = std::log(0.5 * z);
    j.assign(f.begin(), f.begin() + nmax + 1);
    y.assign(nmax + 1, 0.0);
    y[0] = (2.0 / kPi) * (lg + kEulerGamma) * f[0] - (4.0 / kPi) * s0;
    if (nmax >= 1)
        y[1] = -(2.0 / (kPi * z)) * f[0] + (2.0 / kPi) * (lg - (1.0 - kEulerGamma)) * f[1] - (2.0 / kPi) * s1;
    for (int k = 1; k < nmax; ++k) y[k + 1] = (2.0 * k / z) * y[k] - y[k - 1];
}

// (J_n, Y_n) for n >= 0.
std::array<cplx, 2> jy_nonneg(int n, cplx z) {
    if (std::abs(z) <= kSeriesSwitch) return jy_series(n, z);
    std::vector<cplx> j, y;
    jy_recurrence(n, z, j, y);
    return {j[n], y[n]};
}

std::array<cplx, 2> jy(int n, cplx z) {
    const int a = std::abs(n);
    auto v = jy_nonneg(a, z);
    if (n < 0 && (a % 2)) {
        v[0] = -v[0];
        v[1] = -v[1];
    }
    return v;
}

} // namespace

cplx bessel_j(int n, cplx z) {
    check_argument(z);
    if (z == cplx(0.0)) return n == 0 ? 1.0 : 0.0;
    return jy(n, z)[0];
}

cplx bessel_y(int n, cplx z) {
    check_argument(z);
    if (z == cplx(0.0)) throw SingularPointError("Y_n is singular at z = 0");
    return jy(n, z)[1];
}

cplx bessel_h1(int n, cplx z) {
    check_argument(z);
    if (z == cplx(0.0)) throw SingularPointError("H_n is singular at z = 0");
    const auto v = jy(n, z);
    return v[0] + kI * v[1];
}

cplx bessel_jp(int n, cplx z) {
    check_argument(z);
    if (z == cplx(0.0)) return (n == 1) ? 0.5 : (n == -1 ? -0.5 : 0.0);
    return 0.5 * (jy(n - 1, z)[0] - jy(n + 1, z)[0]);
}

cplx bessel_h1p(int n, cplx z) {
    check_argument(z);
    if (z == cplx(0.0)) throw SingularPointError("H_n' is singular at z = 0");
    const auto a = jy(n - 1, z);
    const auto b = jy(n + 1, z);
    return 0.5 * ((a[0] - b[0]) + kI * (a[1] - b[1]));
}

cplx bessel_h1_smooth(int n, cplx z) {
    check_argument(z);
    if (n < 0) throw DomainError("bessel_h1_smooth: n must be nonnegative");
    if (z == cplx(0.0)) throw SingularPointError("H_n is singular at z = 0");
    if (std::abs(z) <= kSeriesSwitch) {
        const auto v = jy_series(n, z, true);
        return v[0] + kI * v[1];
    }
    const auto v = jy_nonneg(n, z);
    return v[0] + kI * (v[1] - y_pole(n, z));
}

CylinderValues cylinder_values(int n, cplx z) {
    check_argument(z);
    if (z == cplx(0.0)) throw SingularPointError("H_n is singular at z = 0");
    const int a = std::abs(n);
    std::array<cplx, 2> lo, mid, hi;
    if (std::abs(z) <= kSeriesSwitch) {
        mid = jy(n, z);
        lo = jy(n - 1, z);
        hi = jy(n + 1, z);
    } else {
        std::vector<cplx> j, y;
        jy_recurrence(a + 1, z, j, y);
        auto pick = [&](int k) -> std::array<cplx, 2> {
            const int ka = std::abs(k);
            const double s = (k < 0 && (ka % 2)) ? -1.0 : 1.0;
            return {s * j[ka], s * y[ka]};
        };
        mid = pick(n);
        lo = pick(n - 1);
        hi = pick(n + 1);
    }
    CylinderValues out;
    out.j = mid[0];
    out.h = mid[0] + kI * mid[1];
    out.jp = 0.5 * (lo[0] - hi[0]);
    out.hp = 0.5 * ((lo[0] - hi[0]) + kI * (lo[1] - hi[1]));
    return out;
}

SeriesCoefficients hankel_series_coeffs(int n) {
    if (n < 0) throw DomainError("hankel_series_coeffs: n must be nonnegative");
    const double f = factorial(n);
    const double b = ((n % 2) ? -1.0 : 1.0) / (2.0 * kPi * std::pow(4.0, n) * f * f);
    double harmonic = 0.0;
    for (int j = 1; j <= n; ++j) harmonic += 1.0 / j;
    const cplx c = b * cplx(kEulerGamma - std::log(2.0) - harmonic, -0.5 * kPi);
    return {n, b, c};
}

} // namespace nestres
