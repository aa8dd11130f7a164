#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nestres/medium.hpp"
#include "nestres/specfun.hpp"

#include <functional>
#include <random>

using namespace nestres;

namespace {

const Medium kDefault(2.0, 1.0, 1.0);

double mat_rel(const Mat2c& a, const Mat2c& b) { return (a - b).norm() / b.norm(); }

// Lame operator mu Lap u + (lambda + mu) grad div u applied column-wise, by central differences.
Mat2c lame_fd(const Medium& m, const std::function<Mat2c(const Vec2d&)>& f, const Vec2d& x, double h) {
    const Vec2d ex(h, 0.0), ey(0.0, h);
    const Mat2c f0 = f(x);
    const Mat2c fxx = (f(x + ex) - 2.0 * f0 + f(x - ex)) / (h * h);
    const Mat2c fyy = (f(x + ey) - 2.0 * f0 + f(x - ey)) / (h * h);
    const Mat2c fxy = (f(x + ex + ey) - f(x + ex - ey) - f(x - ex + ey) + f(x - ex - ey)) / (4.0 * h * h);
    Mat2c out;
    for (int col = 0; col < 2; ++col) {
        // u = column col; div u = d_x u_0 + d_y u_1
        const cplx gdx = fxx(0, col) + fxy(1, col);
        const cplx gdy = fxy(0, col) + fyy(1, col);
        out(0, col) = m.mu * (fxx(0, col) + fyy(0, col)) + (m.lambda + m.mu) * gdx;
        out(1, col) = m.mu * (fxx(1, col) + fyy(1, col)) + (m.lambda + m.mu) * gdy;
    }
    return out;
}

// Independent series coefficients of -(i/4) H_0(t) = sum (c_n + b_n ln t) t^{2n}.
double coef_b(int n) {
    double f = 1.0;
    for (int j = 2; j <= n; ++j) f *= j;
    return (n % 2 ? -1.0 : 1.0) / (2.0 * kPi * std::pow(4.0, n) * f * f);
}
cplx coef_c(int n) {
    double h = 0.0;
    for (int j = 1; j <= n; ++j) h += 1.0 / j;
    return coef_b(n) * (kEulerGamma - std::log(2.0) - h - kI * kPi / 2.0);
}

// Term n of the four expansion families of the fundamental solution.
Mat2c family_term(const Medium& m, double omega, const Vec2d& x, int n) {
    const double r = x.norm();
    const Mat2c id = Mat2c::Identity();
    const Mat2c xx = (x * x.transpose()).cast<cplx>();
    const double ks = omega * std::sqrt(m.rho / m.mu), kp = omega * std::sqrt(m.rho / m.p_modulus());
    const double b = coef_b(n);
    const cplx c = coef_c(n);
    auto hess = [&](double k) -> Mat2c {
        const double lk = std::log(k * r);
        const cplx iso = (b + 2.0 * n * c + 2.0 * n * b * lk) * std::pow(k, 2 * n) * std::pow(r, 2 * n - 2);
        const cplx dir = ((4.0 * n - 2.0) * b + 2.0 * n * (2.0 * n - 2.0) * c + 2.0 * n * (2.0 * n - 2.0) * b * lk) *
                         std::pow(k, 2 * n) * std::pow(r, 2 * n - 4);
        return iso * id + dir * xx;
    };
    const cplx g = (c + b * std::log(ks * r)) * std::pow(ks * r, 2 * n);
    return g / m.mu * id + (hess(ks) - hess(kp)) / (omega * omega * m.rho);
}

} // namespace

TEST_CASE("medium validation") {
    CHECK_THROWS_AS(Medium(2.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(Medium(2.0, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(Medium(-3.0, 1.0, 1.0), DomainError);
    CHECK_NOTHROW(Medium(-1.5, 1.0, 1.0));
    CHECK_THROWS_AS(Contrast(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(Contrast(0.5, 1.5), DomainError);
    const Contrast c(1e-4, 1e-4 / 4.0);
    CHECK(c.tau() == doctest::Approx(2.0));
    CHECK_FALSE(c.tau_flagged());
    CHECK(Contrast(1e-4, 1.0).tau_flagged());
    CHECK(Contrast::from_tau(1e-3, 3.0).epsilon == doctest::Approx(1e-3 / 9.0));
}

TEST_CASE("wave numbers") {
    const auto k = wave_numbers(kDefault, 0.01);
    CHECK(std::abs(k.ks - 0.01) < 1e-17);
    CHECK(std::abs(k.kp - 0.005) < 1e-17);
    for (cplx w : {cplx(0.3), cplx(2.0, 0.1)}) {
        const auto kk = wave_numbers(kDefault, w);
        CHECK(std::abs(kk.kp / kk.ks - 0.5) < 1e-15);
    }
    const Contrast c(1e-3, 1e-3 / 4.0);
    const auto kt = wave_numbers(c.resonator(kDefault), 0.01);
    CHECK(std::abs(kt.ks - c.tau() * k.ks) < 1e-15);
    CHECK(std::abs(kt.kp - c.tau() * k.kp) < 1e-15);
    CHECK_THROWS_AS(wave_numbers(kDefault, 0.0), DomainError);
}

TEST_CASE("asymptotic constants") {
    const auto c = asymptotic_constants(kDefault);
    CHECK(c.alpha1 == doctest::Approx(5.0 / (16 * kPi)).epsilon(1e-15));
    CHECK(c.alpha2 == doctest::Approx(3.0 / (16 * kPi)).epsilon(1e-15));
    CHECK(c.alpha1 > c.alpha2);
    CHECK(c.alpha2 > 0.0);
    CHECK(c.beta2 < 0.0);
    CHECK(c.beta3 > 0.0);
    CHECK(c.sigma1 == doctest::Approx(2 * kPi * c.alpha1));
    CHECK(c.sigma2 == doctest::Approx(2 * kPi * c.alpha2));
    const double b2 = -3.0625 / (32 * kPi), b3 = 0.9375 / (16 * kPi);
    CHECK(c.beta2 == doctest::Approx(b2).epsilon(1e-15));
    CHECK(c.beta3 == doctest::Approx(b3).epsilon(1e-15));
    CHECK(std::abs(c.a_lame - (10 * b2 + 11 * b3)) < 1e-15);

    const double s = 3.7;
    const auto cs = asymptotic_constants(Medium(2.0 * s, 1.0 * s, 1.0));
    CHECK(cs.alpha1 == doctest::Approx(c.alpha1 / s).epsilon(1e-14));
    CHECK(cs.alpha2 == doctest::Approx(c.alpha2 / s).epsilon(1e-14));
}

TEST_CASE("gamma_omega") {
    const auto c = asymptotic_constants(kDefault);
    const cplx expect = c.alpha1 * std::log(0.01) +
                        (0.5 * c.alpha1 * (2 * kEulerGamma - kI * kPi - 2 * std::log(2.0)) + 0.5 * c.alpha2 -
                         (0.0 + std::log(4.0) / 4.0) / (8 * kPi));
    CHECK(std::abs(gamma_omega(kDefault, 0.01) - expect) < 1e-15);
    for (cplx w : {cplx(0.01), cplx(0.2, -0.01)}) {
        CHECK(std::abs(gamma_omega(kDefault, w, 2.5) - gamma_omega(kDefault, w) - c.alpha1 * std::log(2.5)) < 1e-14);
        CHECK(std::abs(gamma_omega(kDefault, w, 1.0) - gamma_omega(kDefault, w)) == 0.0);
        CHECK(std::abs((gamma_omega(kDefault, 2.0 * w) - gamma_omega(kDefault, w)) / std::log(2.0) - c.alpha1) < 1e-13);
    }
    CHECK_THROWS_AS(gamma_omega(kDefault, -0.01), DomainError);
}

TEST_CASE("static kernel") {
    const auto c = asymptotic_constants(kDefault);
    const Mat2d g = green_tensor_static(kDefault, Vec2d(1.0, 0.0));
    CHECK(g(0, 0) == doctest::Approx(-c.alpha2));
    CHECK(std::abs(g(0, 1)) < 1e-17);
    CHECK(std::abs(g(1, 1)) < 1e-17);
    const Vec2d x(0.3, -0.8);
    const Mat2d gx = green_tensor_static(kDefault, x);
    CHECK(gx.trace() == doctest::Approx(2 * c.alpha1 * std::log(x.norm()) - c.alpha2));
    const double th = 0.73;
    Mat2d rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const Mat2d grot = green_tensor_static(kDefault, Vec2d(rot * x));
    CHECK((grot - rot * gx * rot.transpose()).norm() < 1e-15);
    CHECK_THROWS_AS(green_tensor_static(kDefault, Vec2d(0.0, 0.0)), SingularPointError);
}

TEST_CASE("fundamental solution symmetry and parity") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const Vec2d x(u(gen), u(gen));
        for (cplx w : {cplx(0.01), cplx(0.7, 0.02), cplx(3.0)}) {
            const Mat2c g = green_tensor(kDefault, w, x);
            CHECK(std::abs(g(0, 1) - g(1, 0)) < 1e-14 * g.norm());
            CHECK((g - green_tensor(kDefault, w, Vec2d(-x))).norm() < 1e-14 * g.norm());
        }
    }
    CHECK_THROWS_AS(green_tensor(kDefault, 0.1, Vec2d(0.0, 0.0)), SingularPointError);
    CHECK_THROWS_AS(green_tensor(kDefault, 0.0, Vec2d(1.0, 0.0)), DomainError);
}

TEST_CASE("fundamental solution satisfies the time-harmonic Lame system") {
    const Medium m(1.3, 0.8, 1.7);
    const cplx w(0.9, 0.0);
    const Vec2d x(0.6, -0.45);
    auto f = [&](const Vec2d& y) { return green_tensor(m, w, y); };
    const Mat2c res = lame_fd(m, f, x, 1e-3) + w * w * m.rho * f(x);
    CHECK(res.norm() < 1e-5 * (w * w * m.rho * f(x)).norm());
}

TEST_CASE("low-frequency expansion of the fundamental solution") {
    const Vec2d x(0.3, 0.4);
    const Mat2c base = green_tensor_static(kDefault, x).cast<cplx>();
    double prev = 0.0;
    for (double w : {1e-2, 1e-3}) {
        const Mat2c g = green_tensor(kDefault, w, x);
        const double lead = (g - base - gamma_omega(kDefault, w) * Mat2c::Identity()).norm();
        const auto corr = green_tensor_correctors(kDefault, x);
        const double rho = kDefault.rho;
        const Mat2c second = w * w * std::log(w) * rho * corr.first + w * w * rho * std::log(std::sqrt(rho)) * corr.first +
                             w * w * rho * corr.second;
        const double rest =
            (g - base - gamma_omega(kDefault, w) * Mat2c::Identity() - second).norm();
        CHECK(lead < 10.0 * w * w * std::abs(std::log(w)));
        CHECK(rest < 10.0 * std::pow(w, 4) * std::abs(std::log(w)));
        if (prev > 0.0) {
            const double ratio = prev / lead;
            const double model = (1e-4 * std::log(1e-2)) / (1e-6 * std::log(1e-3));
            CHECK(ratio == doctest::Approx(model).epsilon(0.25));
        }
        prev = lead;
    }
}

TEST_CASE("series families reproduce the fundamental solution") {
    const double w = 1e-3;
    const Vec2d x(0.3, 0.4);
    Mat2c partial = Mat2c::Zero();
    for (int n = 0; n <= 2; ++n) partial += family_term(kDefault, w, x, n);
    const double omitted = family_term(kDefault, w, x, 3).norm();
    const Mat2c g = green_tensor(kDefault, w, x);
    CHECK((partial - g).norm() < omitted);
    CHECK(omitted < 1e-9);
}

TEST_CASE("correctors under the Lame operator") {
    const auto c = asymptotic_constants(kDefault);
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<Vec2d> pts{Vec2d(0.3, 0.4)};
    for (int i = 0; i < 3; ++i) pts.emplace_back(u(gen), u(gen));
    for (const Vec2d& x : pts) {
        auto g1 = [&](const Vec2d& y) { return green_tensor_correctors(kDefault, y).first; };
        auto g2 = [&](const Vec2d& y) { return green_tensor_correctors(kDefault, y).second; };
        const Mat2c id = Mat2c::Identity();
        CHECK(mat_rel(lame_fd(kDefault, g1, x, 1e-3), c.a_lame * id) < 1e-6);
        const Mat2c expect2 = c.b_lame * id - green_tensor_static(kDefault, x).cast<cplx>();
        CHECK(mat_rel(lame_fd(kDefault, g2, x, 1e-3), expect2) < 1e-6);
    }
    CHECK(std::abs(c.a_lame + c.alpha1) < 1e-15);
    CHECK(std::abs(c.b_lame + c.alpha) < 1e-14);
    CHECK(green_tensor_correctors(kDefault, Vec2d(1e-8, 0.0)).first.norm() < 1e-16);
    CHECK_THROWS_AS(green_tensor_correctors(kDefault, Vec2d(0.0, 0.0)), SingularPointError);
}
