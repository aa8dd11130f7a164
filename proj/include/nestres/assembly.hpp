#pragma once
#include "nestres/core.hpp"
#include "nestres/medium.hpp"

#include <vector>

namespace nestres {

// Concentric circles r_1 > r_2 > ... > r_M. Region k (0 <= k <= M) lies between circle k and
// circle k+1 (1-based); region 0 is the exterior and region M contains the origin.
class ConcentricGeometry {
public:
    enum class Kind { single_disk, nested };

    static ConcentricGeometry single_disk(double radius);
    static ConcentricGeometry nested(std::vector<double> radii);
    // N annuli of equal width 1/N separated by equal gaps, outer radius 2.
    static ConcentricGeometry nested_equidistant(int n_resonators, double outer_radius = 2.0);

    Kind kind() const { return kind_; }
    const std::vector<double>& radii() const { return radii_; }
    int circles() const { return int(radii_.size()); }
    int resonators() const { return kind_ == Kind::single_disk ? 1 : circles() / 2; }
    bool is_resonator_region(int region) const;
    // Region containing radius r; throws SingularPointError within tol of a circle.
    int region_of(double r, double tol = 0.0) const;

private:
    ConcentricGeometry(Kind kind, std::vector<double> radii);
    Kind kind_;
    std::vector<double> radii_;
};

// q = 1: n = 0 tangential component; q = 2: n = +1; q = 3: n = -1.
int channel_mode(int q);
int channel_width(int q);

struct ModalSystem {
    int channel; // 0 for a full two-component harmonic system
    int circles;
    MatXc matrix;
};

Medium region_medium(const ConcentricGeometry& g, const Medium& background, const Contrast& c, int region);

ModalSystem assemble(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int q);
// Any harmonic n with both frame components; same block layout as the channel systems.
ModalSystem assemble_harmonic(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int n);

struct IncidentWave {
    enum class Kind { p, s, mixed };
    Kind kind = Kind::p;
    Vec2d direction{1.0, 0.0};
    Vec2d polarization{0.0, 1.0}; // s part only, orthogonal to direction
    cplx amplitude = 1.0;

    IncidentWave() = default;
    IncidentWave(Kind kind, Vec2d direction, cplx amplitude = 1.0);
    IncidentWave(Kind kind, Vec2d direction, Vec2d polarization, cplx amplitude);
};

// Frame coefficients of one angular harmonic of a field on a circle.
struct ModalTrace {
    Vec2c value = Vec2c::Zero();
    Vec2c traction = Vec2c::Zero();
    Vec2c value_s = Vec2c::Zero();
    Vec2c value_p = Vec2c::Zero();
};

// Harmonic n of the incident wave (and its traction in medium m) on the circle of radius r.
ModalTrace incident_mode(const Medium& m, cplx omega, const IncidentWave& w, int n, double r);
Vec2c incident_field(const Medium& m, cplx omega, const IncidentWave& w, const Vec2d& x);

VecXc incident_rhs(const ConcentricGeometry& g, const Medium& m, cplx omega, const IncidentWave& w, int q);
VecXc harmonic_rhs(const ConcentricGeometry& g, const Medium& m, cplx omega, const IncidentWave& w, int n);

// Harmonic of the field represented in `region` by the densities of channel q, at radius r.
// The incident wave is not included.
ModalTrace region_trace(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int q,
                        const VecXc& densities, int region, double r);
ModalTrace harmonic_trace(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int n,
                          const VecXc& densities, int region, double r);

// det = mantissa * 10^exponent
struct ScaledDeterminant {
    cplx mantissa;
    double exponent;
    cplx value() const { return mantissa * std::pow(10.0, exponent); }
    double log10_abs() const { return std::log10(std::abs(mantissa)) + exponent; }
};
ScaledDeterminant determinant(const MatXc& a);
inline ScaledDeterminant determinant(const ModalSystem& s) { return determinant(s.matrix); }

VecXc solve_densities(const ModalSystem& s, const VecXc& rhs, double max_condition = 1e14);

} // namespace nestres
