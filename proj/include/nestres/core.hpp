#pragma once
#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace nestres {

using cplx = std::complex<double>;

template <typename Scalar> using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar> using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vec2d = Vec2<double>;
using Vec2c = Vec2<cplx>;
using Mat2d = Mat2<double>;
using Mat2c = Mat2<cplx>;
using MatXc = MatX<cplx>;
using VecXc = VecX<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr cplx kI{0.0, 1.0};

// E_c = 2*gamma - i*pi - 2 ln 2
inline cplx euler_constant_ec() { return {2.0 * kEulerGamma - 2.0 * std::log(2.0), -kPi}; }

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SingularPointError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NearSingularError : std::runtime_error {
    double condition;
    NearSingularError(const std::string& what, double cond) : std::runtime_error(what), condition(cond) {}
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nestres
