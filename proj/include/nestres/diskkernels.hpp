#pragma once
#include "nestres/core.hpp"
#include "nestres/medium.hpp"

namespace nestres {

// Modal densities and fields are written in the moving frame
// v_n = e^{in theta}(cos theta, sin theta), t_n = e^{in theta}(-sin theta, cos theta).
// A 2x2 map sends density coefficients (c_v, c_t) to field coefficients (v, t).

// Single-layer values on the source circle: [[alpha_1n, alpha_3n], [alpha_2n, alpha_4n]].
struct ModalBoundaryCoeffs {
    int n;
    cplx alpha1, alpha2, alpha3, alpha4;
    Mat2c matrix() const;
};

// Neumann-Poincare modal action: [[a_1n, b_1n], [a_2n, b_2n]].
struct NPModalCoeffs {
    int n;
    cplx a1, a2, b1, b2;
    Mat2c matrix() const;
};

struct ModalTransfer {
    int n;
    double source_radius;
    double target_radius;
    Mat2c value_map;   // value_s + value_p
    Mat2c value_s;     // shear-wave part
    Mat2c value_p;     // pressure-wave part
    Mat2c traction_map;
};

ModalBoundaryCoeffs boundary_coeffs(const Medium& m, cplx omega, double R, int n);
NPModalCoeffs np_coeffs(const Medium& m, cplx omega, double R, int n);

// Single layer on the circle of radius R evaluated at radius r >= R.
ModalTransfer exterior_transfer(const Medium& m, cplx omega, double R, int n, double r);
// Single layer on the circle of radius R evaluated at radius r <= R.
ModalTransfer interior_transfer(const Medium& m, cplx omega, double R, int n, double r);

} // namespace nestres
