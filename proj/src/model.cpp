#include "lvx/model.hpp"

#include <cmath>
#include <sstream>

#include "lvx/dynamics.hpp"

namespace lvx {

const char* to_string(AtomKind k) {
    switch (k) {
        case AtomKind::Lambda: return "lambda";
        case AtomKind::Vee: return "vee";
        case AtomKind::Ladder: return "ladder";
    }
    return "?";
}

TransitionMap transition_map(AtomKind k) {
    switch (k) {
        case AtomKind::Lambda: return {{1, 2}, {1, 3}};
        case AtomKind::Vee: return {{1, 3}, {2, 3}};
        case AtomKind::Ladder: return {{1, 2}, {2, 3}};
    }
    return {{1, 2}, {1, 3}};
}

const char* to_string(DiagCode c) {
    switch (c) {
        case DiagCode::NonPositiveFrequency: return "NonPositiveFrequency";
        case DiagCode::NegativeCoupling: return "NegativeCoupling";
        case DiagCode::BadTruncation: return "BadTruncation";
        case DiagCode::DegenerateTransition: return "DegenerateTransition";
        case DiagCode::ThreePhotonResonance: return "ThreePhotonResonance";
        case DiagCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
        case DiagCode::PerturbationLarge: return "PerturbationLarge";
        case DiagCode::TruncationTail: return "TruncationTail";
    }
    return "?";
}

namespace {

double level_energy(const SystemParams& p, int level) {
    return level == 1 ? p.e1 : level == 2 ? p.e2 : p.e3;
}

// margin below which |E_u - E_l - 3 omega| counts as a three-photon resonance
constexpr double kResonanceMargin = 1e-6;

}  // namespace

DerivedParams derive_params(const SystemParams& p, AtomKind k) {
    const TransitionMap tm = transition_map(k);
    const double gap_a = level_energy(p, tm.mode_a.upper) - level_energy(p, tm.mode_a.lower);
    const double gap_b = level_energy(p, tm.mode_b.upper) - level_energy(p, tm.mode_b.lower);

    DerivedParams d;
    d.wtilde_a = (gap_a + p.omega_f) / 2.0;
    d.wtilde_b = (gap_b + p.omega_fp) / 2.0;
    d.delta_a = gap_a - p.omega_f;
    d.delta_b = gap_b - p.omega_fp;

    if (d.wtilde_a == 0.0 || d.wtilde_b == 0.0)
        throw degenerate_transition("partial frequency vanishes; eps undefined");
    if (std::abs(gap_a - 3.0 * p.omega_f) < kResonanceMargin * p.omega_f)
        throw three_photon_resonance("mode a transition at three-photon resonance");
    if (std::abs(gap_b - 3.0 * p.omega_fp) < kResonanceMargin * p.omega_f)
        throw three_photon_resonance("mode b transition at three-photon resonance");

    d.eps1 = p.g1 / (2.0 * d.wtilde_a);
    d.eps2 = p.g2 / (2.0 * d.wtilde_b);
    d.beta1 = d.eps1 * p.g1 / (2.0 * p.omega_f);
    d.beta2 = d.eps2 * p.g2 / (2.0 * p.omega_fp);
    d.gamma1 = (2.0 * d.eps1 * d.eps1 * d.wtilde_a + d.eps2 * d.eps2 * d.wtilde_b) *
               p.g1 / (p.omega_f * (gap_a - 3.0 * p.omega_f));
    d.gamma2 = (2.0 * d.eps2 * d.eps2 * d.wtilde_b + d.eps1 * d.eps1 * d.wtilde_a) *
               p.g2 / (p.omega_fp * (gap_b - 3.0 * p.omega_fp));
    return d;
}

DerivedParams rwa_limit(DerivedParams d) {
    d.eps1 = d.eps2 = 0.0;
    d.beta1 = d.beta2 = 0.0;
    d.gamma1 = d.gamma2 = 0.0;
    return d;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

namespace {

// truncation rule: n_max must cover the coherent mean plus six sigma
int required_n_max(complexd alpha) {
    const double nbar = std::norm(alpha);
    return static_cast<int>(std::ceil(nbar + 6.0 * std::sqrt(nbar)));
}

// tail mass of the truncated coherent distribution, by direct summation
double coherent_tail_mass(complexd alpha, int n_max) {
    double kept = 0.0;
    for (complexd pn : coherent_weights(alpha, n_max)) kept += std::norm(pn);
    return 1.0 - kept;
}

void check_mode_truncation(std::vector<Diagnostic>& out, const char* name,
                           complexd alpha, int n_max) {
    if (n_max < 0) {
        out.push_back({Severity::Error, DiagCode::BadTruncation,
                       std::string(name) + " is negative"});
        return;
    }
    const int need = required_n_max(alpha);
    const double tail = coherent_tail_mass(alpha, n_max);
    if (n_max < need || tail > 1e-3) {
        std::ostringstream msg;
        msg << name << " = " << n_max << " clips the coherent tail (need >= "
            << need << ", tail mass " << tail << ")";
        out.push_back({Severity::Warning, DiagCode::TruncationTail, msg.str()});
    }
}

void check_eps(std::vector<Diagnostic>& out, const char* name, double eps, double g) {
    if (g > 0.0 && (!std::isfinite(eps) || eps <= 0.0 || eps >= 1.0)) {
        std::ostringstream msg;
        msg << name << " = " << eps << " outside (0,1); not a perturbative regime";
        out.push_back({Severity::Error, DiagCode::EpsilonOutOfRange, msg.str()});
    } else if (eps > 0.1) {
        std::ostringstream msg;
        msg << name << " = " << eps << " > 0.1; perturbation theory unreliable";
        out.push_back({Severity::Warning, DiagCode::PerturbationLarge, msg.str()});
    }
}

}  // namespace

std::vector<Diagnostic> validate(const SystemParams& p, AtomKind k) {
    std::vector<Diagnostic> out;
    if (!(p.omega_f > 0.0))
        out.push_back({Severity::Error, DiagCode::NonPositiveFrequency,
                       "omega_f must be positive"});
    if (!(p.omega_fp > 0.0))
        out.push_back({Severity::Error, DiagCode::NonPositiveFrequency,
                       "omega_fp must be positive"});
    if (p.g1 < 0.0)
        out.push_back({Severity::Error, DiagCode::NegativeCoupling, "g1 is negative"});
    if (p.g2 < 0.0)
        out.push_back({Severity::Error, DiagCode::NegativeCoupling, "g2 is negative"});
    check_mode_truncation(out, "n_max1", p.alpha1, p.n_max1);
    check_mode_truncation(out, "n_max2", p.alpha2, p.n_max2);
    if (has_errors(out)) return out;

    try {
        const DerivedParams d = derive_params(p, k);
        check_eps(out, "eps1", d.eps1, p.g1);
        check_eps(out, "eps2", d.eps2, p.g2);
    } catch (const degenerate_transition& e) {
        out.push_back({Severity::Error, DiagCode::DegenerateTransition, e.what()});
    } catch (const three_photon_resonance& e) {
        out.push_back({Severity::Error, DiagCode::ThreePhotonResonance, e.what()});
    }
    return out;
}

}  // namespace lvx
