#pragma once
#include "run_config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace nestres::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kNonConvergence = 3 };

struct RunOptions {
    std::filesystem::path out_dir = ".";
    int threads = 1;
    bool svg = false;
};

struct ResonanceRow {
    int j;
    int q;
    cplx exact;
    cplx asym;
    double res_exact;
    double res_asym;
    bool ok;
};

// Exact roots of channels 1 and 2 paired by index with the asymptotic roots; sorted by (q, Re).
std::vector<ResonanceRow> resonance_rows(const RunConfig& c, int threads);
std::vector<RootResult> asymptotic_rows(const RunConfig& c, int q, int threads);

// Frequency for field evaluation: the number given, or Re of the referenced exact root.
// Throws ConvergenceError if the root is not found.
double field_frequency(const RunConfig& c, int threads);

int cmd_resonances(const RunConfig& c, const RunOptions& o);
int cmd_asymptotic(const RunConfig& c, const RunOptions& o);
int cmd_scan_det(const RunConfig& c, const RunOptions& o);
int cmd_field(const RunConfig& c, const RunOptions& o);
int cmd_enhancement(const RunConfig& c, const RunOptions& o);

// "%.8e", nine significant digits.
std::string sci(double v);

} // namespace nestres::cli
