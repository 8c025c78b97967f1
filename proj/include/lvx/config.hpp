// config.hpp — line-based `key = value` run configuration

#pragma once

#include <string>

#include "lvx/types.hpp"

namespace lvx::cli {

struct RunConfig {
    AtomKind atom = AtomKind::Lambda;
    SystemParams params;
    double tau_start = 0.0;
    double tau_end = 100.0;
    int tau_steps = 1001;
    bool rwa = false;          // forces eps1 = eps2 = 0
    std::string outputs = "."; // directory for emitted files
    bool emit_svg = false;
};

// Grammar: one `key = value` per line, `#` starts a comment, keys are
// case-sensitive snake_case, complex values as `re+imi` (plain reals are
// accepted). Unset n_max defaults to the coherent 6-sigma rule.
//
// Throws parse_error (with line number) for malformed lines, unknown keys,
// and missing required keys (atom, g1, g2).
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

std::string to_config_key(AtomKind k);

}  // namespace lvx::cli
