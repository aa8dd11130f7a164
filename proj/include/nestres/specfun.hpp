#pragma once
#include "nestres/core.hpp"

namespace nestres {

// Cylinder functions of integer order and complex argument, principal branch.
// Supported range is |z| < 50.
cplx bessel_j(int n, cplx z);
cplx bessel_y(int n, cplx z);
cplx bessel_h1(int n, cplx z);
cplx bessel_jp(int n, cplx z);
cplx bessel_h1p(int n, cplx z);

// H_n(z) with its Laurent pole part removed, n >= 0:
// H_n + (i/pi) sum_{k<n} (n-k-1)!/k! (z/2)^{2k-n}.
cplx bessel_h1_smooth(int n, cplx z);

// J_n, J_n', H_n, H_n' sharing one evaluation.
struct CylinderValues {
    cplx j, jp, h, hp;
};
CylinderValues cylinder_values(int n, cplx z);

// Coefficients of -(i/4) H_0(t) = sum_n c_n t^{2n} + b_n ln(t) t^{2n}.
struct SeriesCoefficients {
    int n;
    double b;
    cplx c;
};
SeriesCoefficients hankel_series_coeffs(int n);

} // namespace nestres
