#include "lvx/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace lvx::cli {

std::string to_config_key(AtomKind k) { return lvx::to_string(k); }

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw parse_error(line, "expected a number, got '" + v + "'");
    return x;
}

int parse_int(const std::string& v, int line) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const long x = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw parse_error(line, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw parse_error(line, "expected true/false, got '" + v + "'");
}

// `re`, `re+imi` or `re-imi`
complexd parse_complex(const std::string& v, int line) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double re = std::strtod(begin, &end);
    if (end == begin) throw parse_error(line, "expected a complex value, got '" + v + "'");
    if (*end == '\0') return {re, 0.0};
    if (*end != '+' && *end != '-')
        throw parse_error(line, "malformed complex value '" + v + "'");
    const char* im_begin = end;
    const double im = std::strtod(im_begin, &end);
    if (end == im_begin || *end != 'i' || *(end + 1) != '\0')
        throw parse_error(line, "malformed complex value '" + v + "' (want re+imi)");
    return {re, im};
}

AtomKind parse_atom(const std::string& v, int line) {
    if (v == "lambda") return AtomKind::Lambda;
    if (v == "vee") return AtomKind::Vee;
    if (v == "ladder") return AtomKind::Ladder;
    throw parse_error(line, "unknown atom '" + v + "' (want lambda|vee|ladder)");
}

int default_n_max(complexd alpha) {
    const double nbar = std::norm(alpha);
    return std::max(8, static_cast<int>(std::ceil(nbar + 6.0 * std::sqrt(nbar))));
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::pair<std::string, int>> kv;  // key -> value, line

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw parse_error(line, "expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw parse_error(line, "empty key");
        if (value.empty()) throw parse_error(line, "empty value for '" + key + "'");
        kv[key] = {value, line};  // later lines override earlier ones
    }

    bool have_n_max1 = false, have_n_max2 = false;
    bool have_atom = false, have_g1 = false, have_g2 = false;
    for (const auto& [key, vl] : kv) {
        const auto& [value, ln] = vl;
        if (key == "atom") { cfg.atom = parse_atom(value, ln); have_atom = true; }
        else if (key == "omega_f") cfg.params.omega_f = parse_double(value, ln);
        else if (key == "omega_fp") cfg.params.omega_fp = parse_double(value, ln);
        else if (key == "e1") cfg.params.e1 = parse_double(value, ln);
        else if (key == "e2") cfg.params.e2 = parse_double(value, ln);
        else if (key == "e3") cfg.params.e3 = parse_double(value, ln);
        else if (key == "g1") { cfg.params.g1 = parse_double(value, ln); have_g1 = true; }
        else if (key == "g2") { cfg.params.g2 = parse_double(value, ln); have_g2 = true; }
        else if (key == "alpha1") cfg.params.alpha1 = parse_complex(value, ln);
        else if (key == "alpha2") cfg.params.alpha2 = parse_complex(value, ln);
        else if (key == "n_max1") { cfg.params.n_max1 = parse_int(value, ln); have_n_max1 = true; }
        else if (key == "n_max2") { cfg.params.n_max2 = parse_int(value, ln); have_n_max2 = true; }
        else if (key == "tau_start") cfg.tau_start = parse_double(value, ln);
        else if (key == "tau_end") cfg.tau_end = parse_double(value, ln);
        else if (key == "tau_steps") cfg.tau_steps = parse_int(value, ln);
        else if (key == "rwa") cfg.rwa = parse_bool(value, ln);
        else if (key == "emit_svg") cfg.emit_svg = parse_bool(value, ln);
        else if (key == "outputs") cfg.outputs = value;
        else throw parse_error(ln, "unknown key '" + key + "'");
    }

    if (!have_atom) throw parse_error(0, "missing key 'atom'");
    if (!have_g1) throw parse_error(0, "missing key 'g1'");
    if (!have_g2) throw parse_error(0, "missing key 'g2'");
    if (!have_n_max1) cfg.params.n_max1 = default_n_max(cfg.params.alpha1);
    if (!have_n_max2) cfg.params.n_max2 = default_n_max(cfg.params.alpha2);

    if (cfg.tau_steps < 1) throw parse_error(0, "tau_steps must be >= 1");
    if (cfg.tau_start < 0.0 || cfg.tau_end < cfg.tau_start)
        throw parse_error(0, "need tau_end >= tau_start >= 0");
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace lvx::cli
