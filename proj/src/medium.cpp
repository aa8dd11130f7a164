#include "nestres/medium.hpp"
#include "nestres/specfun.hpp"

#include <cmath>

namespace nestres {

Medium::Medium(double lambda_, double mu_, double rho_) : lambda(lambda_), mu(mu_), rho(rho_) {
    if (!(mu > 0.0)) throw DomainError("Medium: mu must be positive");
    if (!(rho > 0.0)) throw DomainError("Medium: rho must be positive");
    if (!(lambda + 2.0 * mu > 0.0)) throw DomainError("Medium: lambda + 2 mu must be positive");
}

Contrast::Contrast(double delta_, double epsilon_) : delta(delta_), epsilon(epsilon_) {
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("Contrast: delta must lie in (0, 1]");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("Contrast: epsilon must lie in (0, 1]");
}

Contrast Contrast::from_tau(double delta, double tau) {
    if (!(tau > 0.0)) throw DomainError("Contrast: tau must be positive");
    return Contrast(delta, delta / (tau * tau));
}

Medium Contrast::resonator(const Medium& b) const {
    return Medium(b.lambda / delta, b.mu / delta, b.rho / epsilon);
}

WaveNumbers wave_numbers(const Medium& m, cplx omega) {
    if (omega == cplx(0.0)) throw DomainError("wave_numbers: zero frequency");
    return {omega * std::sqrt(m.rho / m.mu), omega * std::sqrt(m.rho / m.p_modulus())};
}

AsymptoticConstants asymptotic_constants(const Medium& m) {
    const double lam = m.lambda, mu = m.mu, pm = m.p_modulus();
    AsymptoticConstants c{};
    c.alpha1 = (1.0 / mu + 1.0 / pm) / (4.0 * kPi);
    c.alpha2 = (1.0 / mu - 1.0 / pm) / (4.0 * kPi);
    c.sigma1 = 2.0 * kPi * c.alpha1;
    c.sigma2 = 2.0 * kPi * c.alpha2;
    c.e_c = euler_constant_ec();
    c.alpha = 0.5 * c.alpha1 * c.e_c + 0.5 * c.alpha2 - (std::log(mu) / mu + std::log(pm) / pm) / (8.0 * kPi);
    c.beta2 = -(3.0 / (mu * mu) + 1.0 / (pm * pm)) / (32.0 * kPi);
    c.beta3 = (1.0 / (mu * mu) - 1.0 / (pm * pm)) / (16.0 * kPi);
    c.beta1 = (0.5 * c.e_c - 1.0) * c.beta2 - c.beta3 / 8.0 +
              (3.0 * std::log(mu) / (mu * mu) + std::log(pm) / (pm * pm)) / (64.0 * kPi);
    c.beta4 = 0.25 * (2.0 * c.e_c - 3.0) * c.beta3 -
              (std::log(mu) / (mu * mu) - std::log(pm) / (pm * pm)) / (32.0 * kPi);
    c.a_lame = (2.0 * lam + 6.0 * mu) * c.beta2 + (3.0 * lam + 5.0 * mu) * c.beta3;
    c.b_lame = c.beta1 * (2.0 * lam + 6.0 * mu) + c.beta2 * (lam + 5.0 * mu) + c.beta3 * (lam + mu) +
               c.beta4 * (3.0 * lam + 5.0 * mu);
    return c;
}

cplx gamma_omega(const Medium& m, cplx omega, double scale) {
    const cplx w = scale * omega;
    if (w.imag() == 0.0 && w.real() <= 0.0) throw DomainError("gamma_omega: argument on the branch cut");
    const auto c = asymptotic_constants(m);
    return std::log(std::sqrt(m.rho) * w) * c.alpha1 + c.alpha;
}

Mat2c green_tensor(const Medium& m, cplx omega, const Vec2d& x) {
    const double r = x.norm();
    if (r == 0.0) throw SingularPointError("green_tensor: x = 0");
    if (omega == cplx(0.0)) throw DomainError("green_tensor: zero frequency");
    const auto k = wave_numbers(m, omega);
    const Vec2d e = x / r;
    const Mat2d ee = e * e.transpose();
    const Mat2d id = Mat2d::Identity();

    // grad grad H_0(k r) = -k^2 H_0 ee + k^2 (H_1/t) (2 ee - I); the pole of H_1/t
    // contributes -2i/(pi r^2) for either wave number and cancels in the p - s difference.
    auto smooth_part = [&](cplx kk, double inv_modulus) -> Mat2c {
        const cplx t = kk * r;
        const cplx h0 = bessel_h1(0, t);
        const cplx h1s = bessel_h1_smooth(1, t);
        return inv_modulus * (-h0 * ee.cast<cplx>() + (h1s / t) * (2.0 * ee - id).cast<cplx>());
    };
    const Mat2c dd = smooth_part(k.kp, 1.0 / m.p_modulus()) - smooth_part(k.ks, 1.0 / m.mu);
    return -(kI / (4.0 * m.mu)) * bessel_h1(0, k.ks * r) * id.cast<cplx>() + (kI / 4.0) * dd;
}

Correctors green_tensor_correctors(const Medium& m, const Vec2d& x) {
    const double r2 = x.squaredNorm();
    if (r2 == 0.0) throw SingularPointError("green_tensor_correctors: x = 0");
    const auto c = asymptotic_constants(m);
    const double lr = 0.5 * std::log(r2);
    const Mat2c id = Mat2c::Identity();
    const Mat2c xx = (x * x.transpose()).cast<cplx>();
    Correctors out;
    out.first = c.beta2 * r2 * id + c.beta3 * xx;
    out.second = c.beta1 * r2 * id + c.beta2 * lr * r2 * id + c.beta3 * lr * xx + c.beta4 * xx;
    return out;
}

} // namespace nestres
