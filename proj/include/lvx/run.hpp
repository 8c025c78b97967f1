// run.hpp — subcommand drivers shared by the CLI binary and the tests

#pragma once

#include <iosfwd>

#include "lvx/config.hpp"

namespace lvx::cli {

// Exit codes used across the drivers.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNumeric = 3;

// Prints one line per diagnostic (or "ok"); exit 1 on any error diagnostic.
int run_validate(const RunConfig& cfg, std::ostream& out);

// Writes <outputs>/spectrum.csv: n1,n2,mu1,mu2,mu3,f1,f2 over the grid.
int run_spectrum(const RunConfig& cfg, std::ostream& out);

// Writes <outputs>/series.csv: tau,w,q_a,q_b,norm; with emit_svg also
// w.svg and q.svg.
int run_dynamics(const RunConfig& cfg, std::ostream& out);

// Runs the analytic pipeline against the exact oracle at an oracle-safe
// truncation, writes <outputs>/compare.csv and prints max_rel_gap=<value>.
int run_compare(const RunConfig& cfg, std::ostream& out);

// Fixed 17-significant-digit scientific CSV number format.
std::string csv_num(double v);

}  // namespace lvx::cli
