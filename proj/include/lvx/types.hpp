// types.hpp — shared domain types for the lvx simulator
//
// Conventions: hbar = 1, all frequencies/energies in units of omega_f,
// atomic levels labelled 1..3 (level 1 highest for Lambda and Ladder).

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lvx {

using complexd = std::complex<double>;

// Three-level atom topology: Lambda (one upper, two lower), Vee (two upper,
// one lower), Ladder (cascade 1 > 2 > 3).
enum class AtomKind { Lambda, Vee, Ladder };

const char* to_string(AtomKind k);

// Raw physical inputs. Mode a has frequency omega_f, mode b omega_fp.
struct SystemParams {
    double omega_f = 1.0;   // mode a frequency
    double omega_fp = 1.0;  // mode b frequency
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;  // atomic level energies
    double g1 = 0.0, g2 = 0.0;            // coupling strengths per transition
    complexd alpha1{0.0, 0.0};  // coherent amplitude, mode a
    complexd alpha2{0.0, 0.0};  // coherent amplitude, mode b
    int n_max1 = 0, n_max2 = 0; // Fock truncation per mode (inclusive)
};

// Perturbation bookkeeping derived from SystemParams per atom topology.
// eps_i = g_i / (2 wtilde_i) are the small parameters; beta/gamma belong to
// the second and third transformation and never enter the effective blocks.
struct DerivedParams {
    double eps1 = 0.0, eps2 = 0.0;
    double wtilde_a = 0.0, wtilde_b = 0.0;  // partial frequencies
    double beta1 = 0.0, beta2 = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0;
    double delta_a = 0.0, delta_b = 0.0;    // detunings of the two transitions
};

// One atom-field product state |level, n1, n2>.
struct Ket {
    int level = 1;  // 1..3
    int n1 = 0;     // mode a photon number
    int n2 = 0;     // mode b photon number

    friend bool operator==(const Ket&, const Ket&) = default;
};

// Which mode drives which atomic transition, per topology.
struct Transition { int upper; int lower; };
struct TransitionMap { Transition mode_a; Transition mode_b; };

// Lambda: a on 1<->2, b on 1<->3.  Vee: a on 1<->3, b on 2<->3.
// Ladder: a on 1<->2, b on 2<->3.
TransitionMap transition_map(AtomKind k);

// Which field mode an observable refers to.
enum class FieldMode { A, B };

// ---------------------------------------------------------------------------
// Error types. All derive from lvx::error so callers can catch the family.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_transition : error { using error::error; };
struct three_photon_resonance : error { using error::error; };
struct degenerate_cubic : error { using error::error; };
struct not_an_eigenvalue : error { using error::error; };
struct dimension_too_large : error { using error::error; };
struct convergence_failure : error { using error::error; };
struct empty_state : error { using error::error; };
struct undefined_for_vacuum : error { using error::error; };
struct no_match : error { using error::error; };

struct parse_error : error {
    int line = 0;
    parse_error(int line_, const std::string& what_)
        : error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

}  // namespace lvx
