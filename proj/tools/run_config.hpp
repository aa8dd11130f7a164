#pragma once
#include "nestres/assembly.hpp"
#include "nestres/detsolve.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nestres::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Window {
    double min = 0.0;
    double max = 0.0;
};

struct RunConfig {
    // [geometry]
    std::string layout = "nested-equidistant"; // nested-equidistant | radii | disk
    int resonators = 4;
    double outer_radius = 2.0;
    std::vector<double> radii;

    // [medium]
    Medium medium{2.0, 1.0, 1.0};

    // [contrast]
    double delta = 1e-5;
    std::optional<double> tau = 1.0;
    std::optional<double> epsilon;

    // [scan]; unset windows scale with sqrt(delta)
    std::optional<Window> q1, q2, det, enhancement;
    int samples = 4000;
    int det_samples = 1000;
    int enhancement_samples = 200;
    double refine_tol = 1e-12;
    int max_iter = 60;

    // [incident]
    std::string wave = "mixed"; // p | s | mixed
    double angle = 0.0;         // degrees from e_1
    double amplitude = 1.0;
    std::string omega = "root:q=1,j=1";
    int n_max = 8;

    // [output]
    std::string resonances_file = "resonances.csv";
    std::string asymptotic_file = "asymptotic.csv";
    std::string scan_file = "scan_det.csv";
    std::string field_file = "field.csv";
    std::string svg_file = "field.svg";
    std::string enhancement_file = "enhancement.csv";
    int grid = 121;
    double extent = 2.4;

    ConcentricGeometry geometry() const;
    Contrast contrast() const;
    IncidentWave incident() const;
    Window window(int q) const;
    Window det_window() const;
    Window enhancement_window() const;
    ScanConfig scan(int q, int threads) const;

    // Throws ConfigError naming the offending key.
    void validate() const;
};

// Frequency requested by [incident] omega: a number or root:q=Q,j=J.
struct OmegaSpec {
    std::optional<double> value;
    int channel = 1;
    int index = 1;
};
OmegaSpec parse_omega(const std::string& text);

RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// table1, table2, table3, fig2 ... fig7.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Resolved config in the input format; parsing it back gives the same run.
std::string echo(const RunConfig& c);

} // namespace nestres::cli
