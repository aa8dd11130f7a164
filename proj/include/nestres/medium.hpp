#pragma once
#include "nestres/core.hpp"

#include <utility>

namespace nestres {

struct Medium {
    double lambda = 2.0;
    double mu = 1.0;
    double rho = 1.0;

    Medium() = default;
    Medium(double lambda_, double mu_, double rho_);

    double p_modulus() const { return lambda + 2.0 * mu; }
};

// High-contrast scaling: resonator moduli divided by delta, density by epsilon.
struct Contrast {
    double delta = 1.0;
    double epsilon = 1.0;

    Contrast() = default;
    Contrast(double delta_, double epsilon_);
    static Contrast from_tau(double delta, double tau);

    double tau() const { return std::sqrt(delta / epsilon); }
    bool tau_flagged() const { return tau() < 0.1 || tau() > 10.0; }
    Medium resonator(const Medium& background) const;
};

struct AsymptoticConstants {
    double alpha1, alpha2;
    double sigma1, sigma2;
    cplx e_c;
    cplx alpha;
    cplx beta1;
    double beta2, beta3;
    cplx beta4;
    cplx a_lame, b_lame;
};

struct WaveNumbers {
    cplx ks, kp;
};

WaveNumbers wave_numbers(const Medium& m, cplx omega);
AsymptoticConstants asymptotic_constants(const Medium& m);

// ln(sqrt(rho) * scale * omega) * alpha1 + alpha
cplx gamma_omega(const Medium& m, cplx omega, double scale = 1.0);

// Time-harmonic fundamental solution of the Lame system.
Mat2c green_tensor(const Medium& m, cplx omega, const Vec2d& x);

struct Correctors {
    Mat2c first;  // beta2 |x|^2 I + beta3 x x^T
    Mat2c second; // beta1 |x|^2 I + beta2 ln|x| |x|^2 I + beta3 ln|x| x x^T + beta4 x x^T
};
Correctors green_tensor_correctors(const Medium& m, const Vec2d& x);

// Static kernel alpha1 ln|x| I - alpha2 x x^T / |x|^2.
template <typename Scalar>
Mat2<Scalar> green_tensor_static(const Medium& m, const Vec2<Scalar>& x) {
    using std::log;
    const Scalar r2 = x.squaredNorm();
    if (r2 == Scalar(0)) throw SingularPointError("static kernel is singular at x = 0");
    const Scalar a1 = Scalar((1.0 / m.mu + 1.0 / m.p_modulus()) / (4.0 * kPi));
    const Scalar a2 = Scalar((1.0 / m.mu - 1.0 / m.p_modulus()) / (4.0 * kPi));
    return a1 * Scalar(0.5) * log(r2) * Mat2<Scalar>::Identity() - a2 * (x * x.transpose()) / r2;
}

} // namespace nestres
