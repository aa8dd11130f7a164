#pragma once
#include "nestres/assembly.hpp"

#include <functional>
#include <vector>

namespace nestres {

struct ScanConfig {
    int channel = 1;
    double omega_min = 1e-3;
    double omega_max = 4e-2;
    int samples = 4000;
    double refine_tol = 1e-12;
    int max_iter = 60;
    int threads = 1;

    void validate() const;
    double grid_point(int i) const {
        return i == samples - 1 ? omega_max : omega_min + (omega_max - omega_min) * i / (samples - 1);
    }
};

enum class RootMethod { exact, asymptotic };

struct RootResult {
    cplx omega{0.0, 0.0};
    int channel = 1;
    double residual = 0.0;
    int iterations = 0;
    RootMethod method = RootMethod::exact;
    double seed = 0.0;
    bool converged = false;
    int multiplicity = 1;
};

// |det A| / delta^{(N+1)/2} with N the number of resonators.
double normalized_det(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int q);

// Evaluates fn at every grid point, split across cfg.threads workers.
std::vector<double> parallel_grid(const ScanConfig& cfg, const std::function<double(double)>& fn);

std::vector<double> scan_values(const ScanConfig& cfg, const ConcentricGeometry& g, const Medium& m, const Contrast& c);
// Strictly interior local minima of sampled values on the configured grid.
std::vector<double> local_minima(const ScanConfig& cfg, const std::vector<double>& values);
std::vector<double> scan_minima(const ScanConfig& cfg, const ConcentricGeometry& g, const Medium& m, const Contrast& c);

// Muller iteration started from seed*(1 - 1e-4), seed*(1 + 1e-4), seed.
// Throws ConvergenceError if an iterate leaves |omega| <= 10 * cfg.omega_max.
RootResult muller_refine(const std::function<cplx(cplx)>& f, cplx seed, const ScanConfig& cfg);

// Determinant of the channel system, rescaled by a fixed power of ten so that values near the seed are O(1).
std::function<cplx(cplx)> determinant_function(const ConcentricGeometry& g, const Medium& m, const Contrast& c, int q,
                                               cplx reference);

// Roots of the channel determinant in the scan window, ascending in Re. Channel 2 roots carry
// multiplicity 2 (channel 3 shares the determinant).
std::vector<RootResult> find_resonances(const ScanConfig& cfg, const ConcentricGeometry& g, const Medium& m,
                                        const Contrast& c);

} // namespace nestres
