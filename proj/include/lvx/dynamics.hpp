// dynamics.hpp — bimodal coherent initial state, projection onto block
// eigenvectors with the first-order back-transform, and time evolution.

#pragma once

#include <vector>

#include "lvx/effective.hpp"
#include "lvx/types.hpp"

namespace lvx {

// Coherent expansion weights P_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!) for
// n = 0..n_max, via the stable recurrence P_{n+1} = P_n alpha / sqrt(n+1).
std::vector<complexd> coherent_weights(complexd alpha, int n_max);

struct CoherentWeights {
    std::vector<complexd> p1;  // mode a, index 0..n_max1
    std::vector<complexd> p2;  // mode b, index 0..n_max2

    complexd at(int i1, int i2) const {
        if (i1 < 0 || i2 < 0 || i1 >= static_cast<int>(p1.size()) ||
            i2 >= static_cast<int>(p2.size()))
            return {0.0, 0.0};
        return p1[static_cast<std::size_t>(i1)] * p2[static_cast<std::size_t>(i2)];
    }
};

CoherentWeights coherent_weights(const SystemParams& p);

// One first-order component of the back-transformed eigenvector: the block
// coefficient at `source` (0=a, 1=b, 2=c) times `scale` lands on `ket`.
// scale already carries the sign, eps and the sqrt factor.
struct Satellite {
    int source;
    double scale;
    Ket ket;
};

// First-order satellites of block (n1, n2)'s eigenvectors under the inverse
// unitary transformation; empty when eps1 = eps2 = 0.
std::vector<Satellite> backtransform_satellites(AtomKind k, const DerivedParams& d,
                                                int n1, int n2);

// Projection weights lambda_L = <phi_L | psi(0)> of the coherent initial
// state (atom in level 1) on the back-transformed eigenvectors, first order
// in eps. Weights of an excluded row are zero.
std::array<complexd, 3> lambda_weights(AtomKind k, const BlockSpectrum& spec,
                                       const DerivedParams& d,
                                       const CoherentWeights& w, int n1, int n2);

// Amplitude grids over (n1, n2). Slot meanings follow the triplet basis:
// amp_a[n1,n2] multiplies triplet state 1, amp_b state 2, amp_c state 3 of
// block (n1, n2). norm_corr = (sum of squared magnitudes)^{-1/2}.
struct EvolvedState {
    AtomKind kind = AtomKind::Lambda;
    double t = 0.0;
    int n_max1 = 0, n_max2 = 0;
    std::vector<complexd> amp_a, amp_b, amp_c;
    double norm_corr = 1.0;

    std::size_t idx(int n1, int n2) const {
        return static_cast<std::size_t>(n1) * (n_max2 + 1) + n2;
    }
    // The product state an amplitude slot refers to; slot 0..2.
    Ket slot_ket(int slot, int n1, int n2) const;
    bool slot_valid(int slot, int n1, int n2) const;
};

// Evolves the coherent initial state to time t (units 1/omega_f), keeping
// zeroth- and first-order terms in eps. No renormalization is applied to the
// grids; norm_corr is stored for the observables.
EvolvedState evolve(AtomKind k, const SpectrumGrid& spectra, const DerivedParams& d,
                    const CoherentWeights& w, double t);

// N(t) = (sum |A|^2 + |B|^2 + |C|^2)^{-1/2}. Throws empty_state if the sum
// underflows below 1e-300.
double norm_correction(const EvolvedState& s);

}  // namespace lvx
