#include "gmdet/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <vector>

#include "gmdet/detector.hpp"
#include "gmdet/exponent.hpp"
#include "gmdet/montecarlo.hpp"
#include "gmdet/scheduler.hpp"

namespace gmdet::cli {

namespace {

const char* regime_name(SnrRegime r) {
    switch (r) {
        case SnrRegime::high_snr: return "high_snr";
        case SnrRegime::low_snr: return "low_snr";
        default: return "boundary";
    }
}

SnrRegime classify(double snr) {
    if (snr > 1.0) return SnrRegime::high_snr;
    if (snr < 1.0) return SnrRegime::low_snr;
    return SnrRegime::boundary;
}

std::optional<double> resolve_correlation(const Params& p) {
    bool from_spacing = p.drift.has_value() && p.delta.has_value();
    if (p.correlation && from_spacing)
        throw UsageError(
            "give either --a or --drift-A with --delta, not both");
    if (p.delta.has_value() && !p.drift.has_value())
        throw UsageError("--delta needs --drift-A");
    if (p.correlation) return p.correlation;
    if (from_spacing) {
        if (!(*p.delta >= 0.0)) throw UsageError("--delta must be >= 0");
        if (!(*p.drift >= 0.0)) throw UsageError("--drift-A must be >= 0");
        return std::exp(-*p.drift * *p.delta);
    }
    return std::nullopt;
}

std::vector<double> grid_values(const GridSpec& g) {
    std::vector<double> v(static_cast<std::size_t>(g.count));
    for (int i = 0; i < g.count; ++i)
        v[static_cast<std::size_t>(i)] =
            g.start + (g.stop - g.start) * i / (g.count - 1);
    return v;
}

void check_grid(const GridSpec& g) {
    if (g.count < 2) throw UsageError("grid count must be at least 2");
    if (!(g.stop > g.start)) throw UsageError("grid stop must exceed start");
}

long calibration_trials(const Params& p) {
    return std::max(p.trials,
                    static_cast<long>(std::ceil(100.0 / p.alpha)));
}

void kv(std::ostream& os, const char* key, double value) {
    os << key << '=' << format_double(value) << '\n';
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

double resolve_snr(const Params& p) {
    int given = static_cast<int>(p.gamma.has_value()) +
                static_cast<int>(p.snr_db.has_value()) +
                static_cast<int>(p.signal_var.has_value());
    if (given == 0)
        throw UsageError("give the SNR via --gamma, --snr-db, or --pi0");
    if (given > 1)
        throw UsageError("--gamma, --snr-db, and --pi0 are mutually exclusive");
    double snr;
    if (p.gamma)
        snr = *p.gamma;
    else if (p.snr_db)
        snr = std::pow(10.0, *p.snr_db / 10.0);
    else
        snr = *p.signal_var / p.noise_var;
    if (!(snr > 0.0)) throw UsageError("SNR must be positive");
    return snr;
}

SampledModel resolve_model(const Params& p) {
    auto a = resolve_correlation(p);
    if (!a)
        throw UsageError("give the correlation via --a or --drift-A/--delta");
    double snr = resolve_snr(p);
    double pi0 = p.signal_var ? *p.signal_var : snr * p.noise_var;
    return SampledModel::from_correlation(*a, pi0, p.noise_var);
}

void run_point(const Params& p, std::ostream& os) {
    double snr = resolve_snr(p);
    auto a = resolve_correlation(p);
    if (a) {
        auto model = resolve_model(p);
        auto report = error_exponent(model);
        auto spectral = error_exponent_spectral(model, p.quadrature_points);
        kv(os, "a", model.correlation);
        kv(os, "gamma", snr);
        kv(os, "K", report.exponent);
        kv(os, "P", report.prediction_var);
        kv(os, "Re", report.innovation_var_h1);
        kv(os, "Rte", report.innovation_var_h0);
        kv(os, "K_spectral", spectral.exponent);
    } else {
        kv(os, "gamma", snr);
    }
    SnrRegime regime = classify(snr);
    os << "regime=" << regime_name(regime) << '\n';
    if (regime == SnrRegime::low_snr) {
        double am = optimal_correlation(snr);
        kv(os, "a_m", am);
        kv(os, "K_at_am",
           error_exponent(SampledModel::from_correlation(am, snr, 1.0))
               .exponent);
        if (p.drift) {
            if (!(*p.drift > 0.0))
                throw UsageError("--drift-A must be positive for a spacing");
            kv(os, "delta_star", -std::log(am) / *p.drift);
        }
    }
}

void run_simulate(const Params& p, std::ostream& os) {
    if (!p.n) throw UsageError("simulate needs --n");
    auto model = resolve_model(p);
    auto est = estimate_miss(model, *p.n, p.alpha, calibration_trials(p),
                             p.trials, p.seed);
    os << "n=" << est.n << '\n';
    kv(os, "p_miss", est.p_miss);
    kv(os, "stderr", est.std_error);
    kv(os, "threshold", est.threshold);
    os << "trials=" << est.trials << '\n';
    os << "seed=" << est.seed << '\n';
}

void run_sweep(const SweepSpec& spec, std::ostream& os) {
    check_grid(spec.grid);
    const Params& p = spec.fixed;
    auto points = grid_values(spec.grid);
    switch (spec.quantity) {
        case SweepQuantity::exponent_vs_a: {
            if (spec.grid.start < 0.0 || spec.grid.stop > 1.0)
                throw UsageError("correlation grid must lie within [0, 1]");
            double snr = resolve_snr(p);
            double pi0 = p.signal_var ? *p.signal_var : snr * p.noise_var;
            os << "a,K,P,Re,Rte\n";
            for (double a : points) {
                auto r = error_exponent(
                    SampledModel::from_correlation(a, pi0, p.noise_var));
                os << format_double(a) << ',' << format_double(r.exponent)
                   << ',' << format_double(r.prediction_var) << ','
                   << format_double(r.innovation_var_h1) << ','
                   << format_double(r.innovation_var_h0) << '\n';
            }
            break;
        }
        case SweepQuantity::exponent_vs_snr: {
            auto a = resolve_correlation(p);
            if (!a)
                throw UsageError(
                    "exponent_vs_snr needs --a or --drift-A/--delta");
            if (!(spec.grid.start > 0.0))
                throw UsageError("SNR grid must be positive");
            os << "gamma,K\n";
            for (double snr : points) {
                auto r = error_exponent(SampledModel::from_correlation(
                    *a, snr * p.noise_var, p.noise_var));
                os << format_double(snr) << ',' << format_double(r.exponent)
                   << '\n';
            }
            break;
        }
        case SweepQuantity::am_vs_snr:
        case SweepQuantity::delta_star_vs_snr: {
            if (!(spec.grid.start > 0.0 && spec.grid.stop < 1.0))
                throw UsageError(
                    "optimal-correlation sweeps need an SNR grid inside (0, 1)");
            bool wants_spacing =
                spec.quantity == SweepQuantity::delta_star_vs_snr;
            if (wants_spacing && !(p.drift && *p.drift > 0.0))
                throw UsageError("delta_star_vs_snr needs a positive --drift-A");
            os << (wants_spacing ? "gamma,delta_star\n"
                                 : "gamma,a_m,residual,K_at_am\n");
            for (double snr : points) {
                double am = optimal_correlation(snr);
                if (wants_spacing) {
                    os << format_double(snr) << ','
                       << format_double(-std::log(am) / *p.drift) << '\n';
                } else {
                    double k =
                        error_exponent(
                            SampledModel::from_correlation(am, snr, 1.0))
                            .exponent;
                    os << format_double(snr) << ',' << format_double(am) << ','
                       << format_double(optimality_residual(am, snr)) << ','
                       << format_double(k) << '\n';
                }
            }
            break;
        }
        case SweepQuantity::pm_vs_n: {
            auto model = resolve_model(p);
            os << "n,p_miss,stderr,threshold\n";
            for (double v : points) {
                int n = static_cast<int>(std::llround(v));
                if (n < 1) throw UsageError("sample counts must be >= 1");
                auto est = estimate_miss(model, n, p.alpha,
                                         calibration_trials(p), p.trials,
                                         p.seed);
                os << n << ',' << format_double(est.p_miss) << ','
                   << format_double(est.std_error) << ','
                   << format_double(est.threshold) << '\n';
            }
            break;
        }
    }
}

void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to standard output");
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open output file: " + path);
    writer(file);
    file.flush();
    if (!file) throw IoError("failed writing output file: " + path);
}

const char* quantity_name(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::exponent_vs_a: return "exponent_vs_a";
        case SweepQuantity::exponent_vs_snr: return "exponent_vs_snr";
        case SweepQuantity::am_vs_snr: return "am_vs_snr";
        case SweepQuantity::delta_star_vs_snr: return "delta_star_vs_snr";
        default: return "pm_vs_n";
    }
}

std::optional<SweepQuantity> parse_quantity(const std::string& name) {
    for (auto q : {SweepQuantity::exponent_vs_a, SweepQuantity::exponent_vs_snr,
                   SweepQuantity::am_vs_snr, SweepQuantity::delta_star_vs_snr,
                   SweepQuantity::pm_vs_n})
        if (name == quantity_name(q)) return q;
    return std::nullopt;
}

} // namespace gmdet::cli
