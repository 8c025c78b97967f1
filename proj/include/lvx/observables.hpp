// observables.hpp — population inversion, photon statistics, time series

#pragma once

#include <span>
#include <vector>

#include "lvx/dynamics.hpp"

namespace lvx {

// W = N^2 sum(upper populations - lower populations). Lambda and Ladder count
// level 1 against {2,3}; Vee counts {1,2} against 3.
double population_inversion(const EvolvedState& s);

struct PhotonMoments {
    double mean;
    double second;  // <n^2>
};

// Normalized photon-number moments of one mode, read off the amplitude grids
// through each slot's product-state labels.
PhotonMoments photon_moments(const EvolvedState& s, FieldMode mode);

// Q = (<n^2> - <n>^2)/<n> - 1. Throws undefined_for_vacuum when the mean is
// at or below 1e-12.
double mandel_q(const EvolvedState& s, FieldMode mode);

struct TimeSeries {
    std::vector<double> tau;   // scaled time omega_f t
    std::vector<double> w;     // population inversion
    std::vector<double> q_a;   // Mandel parameter, mode a (NaN for vacuum)
    std::vector<double> q_b;   // Mandel parameter, mode b
    std::vector<double> norm;  // N(t)
};

// Builds the spectra once and evolves at each tau. Requires validate() to
// pass without errors; throws lvx::error otherwise.
TimeSeries time_series(AtomKind k, const SystemParams& p, const DerivedParams& d,
                       std::span<const double> tau_grid);

}  // namespace lvx
