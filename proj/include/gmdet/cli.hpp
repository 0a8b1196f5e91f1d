// Library side of the command-line front end: parameter resolution,
// single-point reports, and CSV parameter sweeps with byte-stable output.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "gmdet/field_model.hpp"

namespace gmdet::cli {

/// Invalid or contradictory command-line parameters; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Failure writing results; maps to exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a subcommand may fix ahead of a computation.  Optionals stay
/// empty unless given on the command line, so contradictions are detectable.
struct Params {
    std::optional<double> correlation; ///< --a
    std::optional<double> gamma;       ///< --gamma (linear SNR)
    std::optional<double> snr_db;      ///< --snr-db
    std::optional<double> signal_var;  ///< --pi0
    std::optional<double> drift;       ///< --drift-A
    std::optional<double> delta;       ///< --delta (sensor spacing)
    double noise_var = 1.0;            ///< --sigma2
    double alpha = 1e-3;               ///< --alpha
    std::optional<int> n;              ///< --n
    long trials = 100000;              ///< --trials
    std::uint64_t seed = 0;            ///< --seed
    int quadrature_points = 8192;      ///< --quadrature-points
};

/// Linear SNR from the params; exactly one of --gamma / --snr-db / --pi0.
double resolve_snr(const Params& p);

/// Sampled model from the params; correlation from --a or from
/// (--drift-A, --delta), never both.
SampledModel resolve_model(const Params& p);

enum class SweepQuantity {
    exponent_vs_a,
    exponent_vs_snr,
    am_vs_snr,
    delta_star_vs_snr,
    pm_vs_n,
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

struct SweepSpec {
    SweepQuantity quantity;
    GridSpec grid;    ///< range of the swept variable (count >= 2)
    Params fixed;     ///< everything else
    std::string out;  ///< output path; empty means stdout
};

/// Format with 17 significant digits, locale-independent.
std::string format_double(double v);

/// Key=value report of the exponent, filter quantities, SNR regime and,
/// below unit SNR, the optimal correlation and spacing.
void run_point(const Params& p, std::ostream& os);

/// Key=value report of one Monte Carlo miss estimate.
void run_simulate(const Params& p, std::ostream& os);

/// One CSV table for the requested quantity, one row per grid point.
void run_sweep(const SweepSpec& spec, std::ostream& os);

/// Run `writer` against the named file, or stdout when the path is empty.
/// Throws IoError when the file cannot be opened or the write fails.
void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& writer);

const char* quantity_name(SweepQuantity q);
std::optional<SweepQuantity> parse_quantity(const std::string& name);

} // namespace gmdet::cli
