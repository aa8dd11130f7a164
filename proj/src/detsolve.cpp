#include "nestres/detsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace nestres {

void ScanConfig::validate() const {
    channel_mode(channel);
    if (!(omega_min > 0.0 && omega_min < omega_max)) throw DomainError("scan: need 0 < omega_min < omega_max");
    if (samples < 2) throw DomainError("scan: at least two samples");
    if (!(refine_tol > 0.0) || max_iter < 1) throw DomainError("scan: invalid refinement settings");
    if (threads < 1) throw DomainError("scan: at least one thread");
}

double normalized_det(const ConcentricGeometry& g, const Medium& m, const Contrast& c, cplx omega, int q) {
    const auto d = determinant(assemble(g, m, c, omega, q));
    const double power = 0.5 * (g.resonators() + 1);
    return std::pow(10.0, d.log10_abs() - power * std::log10(c.delta));
}

std::vector<double> parallel_grid(const ScanConfig& cfg, const std::function<double(double)>& fn) {
    cfg.validate();
    std::vector<double> out(cfg.samples);
    const int nt = std::min(cfg.threads, cfg.samples);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < cfg.samples; i += nt) out[i] = fn(cfg.grid_point(i));
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<double> scan_values(const ScanConfig& cfg, const ConcentricGeometry& g, const Medium& m, const Contrast& c) {
    return parallel_grid(cfg, [&](double w) { return normalized_det(g, m, c, w, cfg.channel); });
}

std::vector<double> local_minima(const ScanConfig& cfg, const std::vector<double>& v) {
    std::vector<double> seeds;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] < v[i - 1] && v[i] < v[i + 1]) seeds.push_back(cfg.grid_point(int(i)));
    return seeds;
}

std::vector<double> scan_minima(const ScanConfig& cfg, const ConcentricGeometry& g, const Medium& m, const Contrast& c) {
    return local_minima(cfg, scan_values(cfg, g, m, c));
}

RootResult muller_refine(const std::function<cplx(cplx)>& f, cplx seed, const ScanConfig& cfg) {
    RootResult res;
    res.seed = seed.real();
    cplx x0 = seed * (1.0 - 1e-4), x1 = seed * (1.0 + 1e-4), x2 = seed;
    cplx f0 = f(x0), f1 = f(x1), f2 = f(x2);
    const double bound = 10.0 * cfg.omega_max;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        res.iterations = it;
        if (f2 == 0.0) {
            res.converged = true;
            break;
        }
        const cplx h1 = x1 - x0, h2 = x2 - x1;
        const cplx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
        const cplx a = (d2 - d1) / (h2 + h1);
        const cplx b = a * h2 + d2;
        const cplx disc = std::sqrt(b * b - 4.0 * a * f2);
        const cplx den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
        const cplx dx = den == 0.0 ? cplx(1e-4 * std::abs(x2)) : -2.0 * f2 / den;
        const cplx x3 = x2 + dx;
        if (!std::isfinite(x3.real()) || !std::isfinite(x3.imag()) || std::abs(x3) > bound)
            throw ConvergenceError("muller: iterate left the search region");
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        f2 = f(x3);
        if (std::abs(dx) < cfg.refine_tol) {
            res.converged = true;
            break;
        }
    }
    res.omega = x2;
    res.residual = std::abs(f2);
    return res;
}

std::function<cplx(cplx)> determinant_function(const ConcentricGeometry& g, const Medium& m, const Contrast& c, int q,
                                               cplx reference) {
    const double shift = std::floor(determinant(assemble(g, m, c, reference, q)).log10_abs());
    return [=](cplx w) {
        const auto d = determinant(assemble(g, m, c, w, q));
        return d.mantissa * std::pow(10.0, d.exponent - shift);
    };
}

std::vector<RootResult> find_resonances(const ScanConfig& cfg, const ConcentricGeometry& g, const Medium& m,
                                        const Contrast& c) {
    cfg.validate();
    const std::vector<double> seeds = scan_minima(cfg, g, m, c);
    std::vector<RootResult> roots(seeds.size());
    std::vector<char> keep(seeds.size(), 0);
    ScanConfig one = cfg;
    one.threads = 1;
    auto work = [&](std::size_t k) {
        RootResult r;
        r.seed = seeds[k];
        r.channel = cfg.channel;
        try {
            r = muller_refine(determinant_function(g, m, c, cfg.channel, seeds[k]), seeds[k], one);
        } catch (const ConvergenceError&) {
            r.omega = cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
            r.converged = false;
        }
        r.seed = seeds[k];
        r.channel = cfg.channel;
        r.method = RootMethod::exact;
        r.multiplicity = cfg.channel == 1 ? 1 : 2;
        if (std::isfinite(r.omega.real())) r.residual = normalized_det(g, m, c, r.omega, cfg.channel);
        roots[k] = r;
        const bool inside = !std::isfinite(r.omega.real()) ||
                            (r.omega.real() >= cfg.omega_min && r.omega.real() <= cfg.omega_max);
        keep[k] = inside ? 1 : 0;
    };
    const std::size_t nt = std::max<std::size_t>(1, std::min<std::size_t>(cfg.threads, seeds.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t k = t; k < seeds.size(); k += nt) work(k);
        });
    for (auto& th : pool) th.join();

    std::vector<RootResult> out;
    for (std::size_t k = 0; k < roots.size(); ++k)
        if (keep[k]) out.push_back(roots[k]);
    std::sort(out.begin(), out.end(), [](const RootResult& a, const RootResult& b) {
        const bool fa = std::isfinite(a.omega.real()), fb = std::isfinite(b.omega.real());
        if (fa != fb) return fa;
        return fa ? a.omega.real() < b.omega.real() : a.seed < b.seed;
    });
    std::vector<RootResult> merged;
    for (const auto& r : out) {
        if (!merged.empty() && std::isfinite(r.omega.real()) && std::abs(merged.back().omega - r.omega) < 1e-9) {
            if (r.residual < merged.back().residual) merged.back() = r;
            continue;
        }
        merged.push_back(r);
    }
    return merged;
}

} // namespace nestres
