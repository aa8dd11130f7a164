#pragma once
#include "nestres/assembly.hpp"

#include <array>
#include <string>
#include <vector>

namespace nestres {

// Densities of every harmonic |n| <= n_max for one incident wave.
struct ScatteringSolution {
    cplx omega;
    IncidentWave wave;
    int n_max;
    std::vector<VecXc> densities; // harmonic n at index n + n_max

    const VecXc& harmonic(int n) const;
};

ScatteringSolution solve_scattering(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega,
                                    const IncidentWave& wave, int n_max = 8, double max_condition = 1e14);

// "exterior", "annulus j", "gap j", "core" or "disk".
std::string region_label(const ConcentricGeometry& g, int region);

struct FieldGrid {
    std::vector<Vec2d> points;
    std::vector<int> regions;
    std::vector<Vec2c> values;
    std::vector<Vec2c> u_s; // shear part
    std::vector<Vec2c> u_p; // pressure part
};

// Total displacement (incident wave included outside the outer circle). Points closer than
// 1e-9 r_1 to a circle raise SingularPointError.
FieldGrid evaluate_field(const ConcentricGeometry& g, const Medium& m, const Contrast& c, const ScatteringSolution& s,
                         const std::vector<Vec2d>& points, int threads = 1);

struct SplitDiagnostics {
    double divergence_s = 0.0; // max |div u_s| over the local gradient scale
    double curl_p = 0.0;       // max |curl u_p| over the local gradient scale
    int samples = 0;
};
// Central differences with step h; the sample points must stay 2h away from every circle.
SplitDiagnostics sp_split_check(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                const ScatteringSolution& s, const std::vector<Vec2d>& points, double h = 1e-4);

// L2 projections of the field in resonator j (1-based) on the rigid motions e_1, e_2, (x_2, -x_1).
struct ModeAmplitudes {
    int resonator;
    std::array<cplx, 3> varrho;
};
ModeAmplitudes mode_amplitudes(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                               const ScatteringSolution& s, int j);

// Region index of resonator j (1-based).
int resonator_region(const ConcentricGeometry& g, int j);

struct EnhancementSample {
    double omega;
    double norm_s = 0.0;
    double norm_p = 0.0;
    bool ok = true;
    std::string error;
};
// L2 norms of the shear and pressure parts over the given bounded regions (all resonators when empty).
std::vector<EnhancementSample> enhancement_scan(const ConcentricGeometry& g, const Medium& m, const Contrast& c,
                                                const IncidentWave& wave, const std::vector<double>& omegas,
                                                std::vector<int> regions = {}, int n_max = 8, int threads = 1);

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& w);

} // namespace nestres
