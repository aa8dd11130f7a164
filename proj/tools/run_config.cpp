#include "run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace nestres::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

// Shortest text that parses back to v.
std::string num(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// Line of `key` inside `[section]`, 0 if not found.
int line_of(const std::string& text, const std::string& section, const std::string& key) {
    std::istringstream in(text);
    std::string line, current;
    for (int n = 1; std::getline(in, line); ++n) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            current = trim(t.substr(1, t.find(']') - 1));
            continue;
        }
        if (current == section && trim(t.substr(0, t.find('='))) == key) return n;
    }
    return 0;
}

double to_double(const std::string& v) {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument("not a finite number");
    return x;
}

int to_int(const std::string& v) {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument("not an integer");
    return x;
}

std::vector<double> to_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(to_double(trim(item)));
    return out;
}

Window to_window(const std::string& v) {
    const auto l = to_list(v);
    if (l.size() != 2) throw std::invalid_argument("expected two comma-separated numbers");
    return {l[0], l[1]};
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"geometry.layout", [](RunConfig& c, const std::string& v) { c.layout = v; }},
        {"geometry.resonators", [](RunConfig& c, const std::string& v) { c.resonators = to_int(v); }},
        {"geometry.outer_radius", [](RunConfig& c, const std::string& v) { c.outer_radius = to_double(v); }},
        {"geometry.radii", [](RunConfig& c, const std::string& v) { c.radii = to_list(v); }},
        {"medium.lambda", [](RunConfig& c, const std::string& v) { c.medium.lambda = to_double(v); }},
        {"medium.mu", [](RunConfig& c, const std::string& v) { c.medium.mu = to_double(v); }},
        {"medium.rho", [](RunConfig& c, const std::string& v) { c.medium.rho = to_double(v); }},
        {"contrast.delta", [](RunConfig& c, const std::string& v) { c.delta = to_double(v); }},
        {"contrast.tau", [](RunConfig& c, const std::string& v) { c.tau = to_double(v); }},
        {"contrast.epsilon", [](RunConfig& c, const std::string& v) { c.epsilon = to_double(v); }},
        {"scan.q1_window", [](RunConfig& c, const std::string& v) { c.q1 = to_window(v); }},
        {"scan.q2_window", [](RunConfig& c, const std::string& v) { c.q2 = to_window(v); }},
        {"scan.det_window", [](RunConfig& c, const std::string& v) { c.det = to_window(v); }},
        {"scan.enhancement_window", [](RunConfig& c, const std::string& v) { c.enhancement = to_window(v); }},
        {"scan.samples", [](RunConfig& c, const std::string& v) { c.samples = to_int(v); }},
        {"scan.det_samples", [](RunConfig& c, const std::string& v) { c.det_samples = to_int(v); }},
        {"scan.enhancement_samples", [](RunConfig& c, const std::string& v) { c.enhancement_samples = to_int(v); }},
        {"scan.refine_tol", [](RunConfig& c, const std::string& v) { c.refine_tol = to_double(v); }},
        {"scan.max_iter", [](RunConfig& c, const std::string& v) { c.max_iter = to_int(v); }},
        {"incident.wave", [](RunConfig& c, const std::string& v) { c.wave = v; }},
        {"incident.angle", [](RunConfig& c, const std::string& v) { c.angle = to_double(v); }},
        {"incident.amplitude", [](RunConfig& c, const std::string& v) { c.amplitude = to_double(v); }},
        {"incident.omega", [](RunConfig& c, const std::string& v) {
             parse_omega(v);
             c.omega = v;
         }},
        {"incident.n_max", [](RunConfig& c, const std::string& v) { c.n_max = to_int(v); }},
        {"output.resonances", [](RunConfig& c, const std::string& v) { c.resonances_file = v; }},
        {"output.asymptotic", [](RunConfig& c, const std::string& v) { c.asymptotic_file = v; }},
        {"output.scan", [](RunConfig& c, const std::string& v) { c.scan_file = v; }},
        {"output.field", [](RunConfig& c, const std::string& v) { c.field_file = v; }},
        {"output.svg", [](RunConfig& c, const std::string& v) { c.svg_file = v; }},
        {"output.enhancement", [](RunConfig& c, const std::string& v) { c.enhancement_file = v; }},
        {"output.grid", [](RunConfig& c, const std::string& v) { c.grid = to_int(v); }},
        {"output.extent", [](RunConfig& c, const std::string& v) { c.extent = to_double(v); }},
    };
    return table;
}

double contrast_scale(const RunConfig& c) { return std::sqrt(c.contrast().epsilon / 1e-5); }

} // namespace

ConcentricGeometry RunConfig::geometry() const {
    if (layout == "nested-equidistant") return ConcentricGeometry::nested_equidistant(resonators, outer_radius);
    if (layout == "disk") return ConcentricGeometry::single_disk(outer_radius);
    if (layout == "radii") return ConcentricGeometry::nested(radii);
    throw ConfigError("geometry.layout: expected nested-equidistant, radii or disk, got '" + layout + "'");
}

Contrast RunConfig::contrast() const {
    if (tau.has_value() == epsilon.has_value()) throw ConfigError("contrast: give exactly one of tau and epsilon");
    return tau ? Contrast::from_tau(delta, *tau) : Contrast(delta, *epsilon);
}

IncidentWave RunConfig::incident() const {
    const double a = angle * kPi / 180.0;
    const Vec2d d(std::cos(a), std::sin(a)), p(-std::sin(a), std::cos(a));
    IncidentWave::Kind k;
    if (wave == "p") k = IncidentWave::Kind::p;
    else if (wave == "s") k = IncidentWave::Kind::s;
    else if (wave == "mixed") k = IncidentWave::Kind::mixed;
    else throw ConfigError("incident.wave: expected p, s or mixed, got '" + wave + "'");
    return IncidentWave(k, d, p, amplitude);
}

Window RunConfig::window(int q) const {
    const auto& w = q == 1 ? q1 : q2;
    if (w) return *w;
    const double s = contrast_scale(*this);
    return {1e-3 * s, 4e-2 * s};
}

Window RunConfig::det_window() const {
    if (det) return *det;
    return {std::min(window(1).min, window(2).min), std::max(window(1).max, window(2).max)};
}

Window RunConfig::enhancement_window() const {
    if (enhancement) return *enhancement;
    return det_window();
}

ScanConfig RunConfig::scan(int q, int threads) const {
    ScanConfig s;
    s.channel = q;
    s.omega_min = window(q).min;
    s.omega_max = window(q).max;
    s.samples = samples;
    s.refine_tol = refine_tol;
    s.max_iter = max_iter;
    s.threads = threads;
    return s;
}

void RunConfig::validate() const {
    try {
        geometry();
        contrast();
        Medium(medium.lambda, medium.mu, medium.rho);
        incident();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    auto check_window = [](const Window& w, const char* key) {
        if (!(w.min > 0.0 && w.max > w.min)) throw ConfigError(std::string(key) + ": need 0 < min < max");
    };
    check_window(window(1), "scan.q1_window");
    check_window(window(2), "scan.q2_window");
    check_window(det_window(), "scan.det_window");
    check_window(enhancement_window(), "scan.enhancement_window");
    if (samples < 3 || det_samples < 2 || enhancement_samples < 2) throw ConfigError("scan: too few samples");
    if (!(refine_tol > 0.0) || max_iter < 1) throw ConfigError("scan: refine_tol and max_iter must be positive");
    if (n_max < 1) throw ConfigError("incident.n_max: must be at least 1");
    if (grid < 2 || !(extent > 0.0)) throw ConfigError("output: grid >= 2 and extent > 0 required");
}

OmegaSpec parse_omega(const std::string& text) {
    OmegaSpec s;
    const std::string t = trim(text);
    if (t.rfind("root:", 0) == 0) {
        int q = 0, j = 0, used = 0;
        if (std::sscanf(t.c_str(), "root:q=%d,j=%d%n", &q, &j, &used) != 2 || used != int(t.size()))
            throw ConfigError("incident.omega: expected root:q=Q,j=J, got '" + text + "'");
        if (q < 1 || q > 3 || j < 1) throw ConfigError("incident.omega: q in 1..3 and j >= 1 required");
        s.channel = q;
        s.index = j;
        return s;
    }
    try {
        s.value = to_double(t);
    } catch (const std::exception&) {
        throw ConfigError("incident.omega: expected a number or root:q=Q,j=J, got '" + text + "'");
    }
    if (!(*s.value > 0.0)) throw ConfigError("incident.omega: must be positive");
    return s;
}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    RunConfig c;
    bool tau_given = false, eps_given = false;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ConfigError(source + ": key '" + section + "' outside a section");
        for (const auto& [key, node] : body) {
            const std::string name = section + "." + key;
            const int line = line_of(text, section, key);
            const std::string where = source + ":" + std::to_string(line) + ": ";
            const auto it = setters().find(name);
            if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "' in [" + section + "]");
            try {
                it->second(c, trim(node.data()));
            } catch (const ConfigError& e) {
                throw ConfigError(where + e.what());
            } catch (const std::exception&) {
                throw ConfigError(where + name + ": cannot parse '" + node.data() + "'");
            }
            tau_given |= name == "contrast.tau";
            eps_given |= name == "contrast.epsilon";
        }
    }
    if (eps_given && !tau_given) c.tau.reset();
    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path + ": cannot open");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::vector<std::string> preset_names() {
    return {"table1", "table2", "table3", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

RunConfig preset(const std::string& name) {
    RunConfig c;
    if (name == "table1") c.delta = 1e-5;
    else if (name == "table2") c.delta = 1e-4;
    else if (name == "table3") c.delta = 1e-6;
    else if (name == "fig2" || name == "fig3") {
        c.delta = 1e-5;
        c.det = Window{name == "fig2" ? 1e-3 : 1e-6, 4e-2};
        c.det_samples = 2000;
    } else if (name == "fig4" || name == "fig5") {
        c.delta = 1e-6;
        c.enhancement = Window{3e-4, 1.3e-2};
        c.enhancement_samples = 200;
    } else if (name == "fig6" || name == "fig7") {
        c.delta = 1e-6;
        c.omega = name == "fig6" ? "root:q=1,j=1" : "root:q=2,j=1";
    } else
        throw ConfigError("unknown preset '" + name + "'");
    return c;
}

std::string echo(const RunConfig& c) {
    std::ostringstream o;
    auto win = [](const Window& w) { return num(w.min) + ", " + num(w.max); };
    o << "[geometry]\nlayout = " << c.layout << "\n";
    if (c.layout == "radii") {
        o << "radii = ";
        for (std::size_t i = 0; i < c.radii.size(); ++i) o << (i ? ", " : "") << num(c.radii[i]);
        o << "\n";
    } else {
        if (c.layout == "nested-equidistant") o << "resonators = " << c.resonators << "\n";
        o << "outer_radius = " << num(c.outer_radius) << "\n";
    }
    o << "[medium]\nlambda = " << num(c.medium.lambda) << "\nmu = " << num(c.medium.mu) << "\nrho = " << num(c.medium.rho)
      << "\n";
    o << "[contrast]\ndelta = " << num(c.delta) << "\n";
    if (c.tau) o << "tau = " << num(*c.tau) << "\n";
    else o << "epsilon = " << num(*c.epsilon) << "\n";
    o << "[scan]\nq1_window = " << win(c.window(1)) << "\nq2_window = " << win(c.window(2))
      << "\ndet_window = " << win(c.det_window()) << "\nenhancement_window = " << win(c.enhancement_window())
      << "\nsamples = " << c.samples << "\ndet_samples = " << c.det_samples
      << "\nenhancement_samples = " << c.enhancement_samples << "\nrefine_tol = " << num(c.refine_tol)
      << "\nmax_iter = " << c.max_iter << "\n";
    o << "[incident]\nwave = " << c.wave << "\nangle = " << num(c.angle) << "\namplitude = " << num(c.amplitude)
      << "\nomega = " << c.omega << "\nn_max = " << c.n_max << "\n";
    o << "[output]\nresonances = " << c.resonances_file << "\nasymptotic = " << c.asymptotic_file
      << "\nscan = " << c.scan_file << "\nfield = " << c.field_file << "\nsvg = " << c.svg_file
      << "\nenhancement = " << c.enhancement_file << "\ngrid = " << c.grid << "\nextent = " << num(c.extent) << "\n";
    return o.str();
}

} // namespace nestres::cli
