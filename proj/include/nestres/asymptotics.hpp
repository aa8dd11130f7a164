#pragma once
#include "nestres/assembly.hpp"
#include "nestres/detsolve.hpp"

#include <array>

namespace nestres {

// Frame coefficients of a density or field on a circle restricted to harmonics n = -1, 0, +1.
struct LowModes {
    std::array<Vec2c, 3> c{Vec2c::Zero(), Vec2c::Zero(), Vec2c::Zero()};
    Vec2c& operator[](int n) { return c.at(n + 1); }
    const Vec2c& operator[](int n) const { return c.at(n + 1); }
    Vec2c cartesian(double theta) const;
};

// Bilinear pairing of two fields on the circle of radius r: integral of a . b ds.
cplx circle_pairing(const LowModes& a, const LowModes& b, double r);

// Rigid motions xi_1 = e_1, xi_2 = e_2, xi_3 = (x_2, -x_1) restricted to the circle, and the
// densities zeta_i = xi_i / (2 pi r), zeta_3 = xi_3 / (2 pi r^3), biorthonormal to them.
struct KernelBasis {
    double radius;
    std::array<LowModes, 3> xi;
    std::array<LowModes, 3> zeta;
};
KernelBasis kernel_basis(double r);

// Static single layer of the circle of radius R acting on harmonic n in {-1, 0, 1}, evaluated at radius r.
// The traction is the limit from the side requested.
struct StaticModalMap {
    Mat2c value;
    Mat2c traction;
};
StaticModalMap static_interior(const Medium& m, double R, int n, double r);
StaticModalMap static_exterior(const Medium& m, double R, int n, double r);

// Value map of S_static + gamma_{scale*omega} times the mean-value term, harmonic n in {-1, 0, 1}.
Mat2c modal_single_layer_hat(const Medium& m, cplx omega, double R, int n, double r, double scale = 1.0);

// Eigenvalue of the static single layer of the disk of radius R on zeta_i, i in {1, 2, 3}.
double static_disk_single_layer(const Medium& m, double R, int i);
// C_ij = (zeta_i, S[zeta_j]) on the circle of radius R.
Eigen::Matrix3d c_matrix(const Medium& m, double R);
// Radius at which the translational eigenvalue of the static single layer vanishes.
double c_singular_radius(const Medium& m);
// max_i |(-1/2 I + K*)[zeta_i]| on the circle of radius R, from the static interior traction.
double kernel_space_residual(const Medium& m, double R);

struct DiskLeadingCoeffs {
    Medium medium;
    Contrast contrast;
    double radius;
    std::array<cplx, 3> p;
    std::array<cplx, 3> m;
    cplx q(int i, cplx omega) const;
    // rho w^2 ln w p_i + rho w^2 (ln(sqrt(rho) tau) p_i + m_i) - eps q_i
    cplx equation(int i, cplx omega) const;
};
DiskLeadingCoeffs disk_leading_coeffs(const Medium& m, const Contrast& c, double R);

// Leading-order disk resonances: i = 1, 2 (translational, channel 2) and i = 3 (rotational, channel 1).
std::array<RootResult, 3> disk_asymptotic_roots(const Medium& m, const Contrast& c, double R, const ScanConfig& cfg = {});

// Relative residual of eps = -(R^2/8)[k_s^2(E_c + 2 ln(k_s R)) + k_p^2(E_c + 2 ln(k_p R))].
double disk_translational_residual(const Medium& m, double epsilon, double R, cplx omega);

// P, M, Q of size 3N x 3N, index i * N + m for mode i and resonator m. A single disk is treated as
// an annulus with inner radius 0.
struct LeadingMatrices {
    int resonators;
    MatXc P, M, Q;
    // rho w^2 ln w P + rho w^2 (ln(sqrt(rho) tau) P + M) - eps Q
    MatXc system(const Medium& m, const Contrast& c, cplx omega) const;
};
LeadingMatrices nested_leading_matrices(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega);

// Largest relative mismatch of the gap densities against their boundary data.
double gap_density_residual(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega);

// Determinant of the N x N block of channel q (1: rotational mode, 2 or 3: translational mode).
cplx asymptotic_det(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int q);

std::vector<RootResult> nested_asymptotic_roots(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                                const ScanConfig& cfg);
std::vector<RootResult> asymptotic_roots_from_seeds(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                                    int q, const std::vector<cplx>& seeds, const ScanConfig& cfg);

} // namespace nestres
