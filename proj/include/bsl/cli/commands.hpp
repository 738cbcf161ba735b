// commands.hpp: bloch-siegert-lab command line front end

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bsl/chrw.hpp"
#include "bsl/cli/table_writer.hpp"
#include "bsl/resonance.hpp"
#include "bsl/spectrum.hpp"

namespace bsl::cli {

enum ExitCode { kExitOk = 0, kExitNumerical = 1, kExitUsage = 2 };

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    // lo, lo + step, ..., up to hi (inclusive within 1e-9 step).
    std::vector<double> values() const;
};

// "lo:hi:step"; throws std::invalid_argument.
Range parse_range(const std::string& text);

// All physical inputs are in the same (arbitrary) unit as omega0 and are
// divided by omega0 before use, so every output is in units of omega0.
struct RunConfig {
    std::string command;
    double omega0 = 1.0;
    std::optional<double> A;
    std::optional<Range> A_range;
    std::optional<double> omega;
    std::optional<Range> omega_range;
    double kappa = 2e-3;
    std::vector<ShiftMethod> methods;  // empty selects all
    FrameMode mode = FrameMode::Chrw;
    std::optional<Range> nu_range;
    std::string out;                   // empty writes to stdout
    TableFormat format = TableFormat::Csv;
    bool quick = false;
    int truncation = 0;
    Normalization normalization = Normalization::PeakUnit;
};

int cmd_shift_table(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_shift_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_population(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv, dispatches and maps failures onto ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bsl::cli
