// model.hpp — parameter derivation and regime validation

#pragma once

#include <vector>

#include "lvx/types.hpp"

namespace lvx {

enum class Severity { Error, Warning };

enum class DiagCode {
    NonPositiveFrequency,
    NegativeCoupling,
    BadTruncation,         // n_max negative
    DegenerateTransition,  // wtilde = 0, eps undefined
    ThreePhotonResonance,  // |E_u - E_l - 3 omega| below margin
    EpsilonOutOfRange,     // eps outside (0,1) with nonzero coupling
    PerturbationLarge,     // eps > 0.1, perturbation theory unreliable
    TruncationTail,        // coherent tail mass above n_max too large
};

struct Diagnostic {
    Severity severity;
    DiagCode code;
    std::string message;
};

// Derives eps, wtilde, beta, gamma and the detunings for the topology's two
// transitions. Throws degenerate_transition when a partial frequency
// vanishes and three_photon_resonance near E_u - E_l = 3 omega.
DerivedParams derive_params(const SystemParams& p, AtomKind k);

// Copy with the perturbation switched off (eps = beta = gamma = 0); detunings
// and partial frequencies are kept. This is the RWA limit of the pipeline.
DerivedParams rwa_limit(DerivedParams d);

// Non-throwing regime check. Errors for invariant violations and resonances,
// warnings for eps > 0.1 and for truncations that clip the coherent tail.
std::vector<Diagnostic> validate(const SystemParams& p, AtomKind k);

bool has_errors(const std::vector<Diagnostic>& diags);

const char* to_string(DiagCode c);

}  // namespace lvx
