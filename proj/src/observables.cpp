#include "lvx/observables.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lvx/model.hpp"

namespace lvx {

double population_inversion(const EvolvedState& s) {
    // slot b holds level 2, which counts as upper population for Vee
    const double sign_b = (s.kind == AtomKind::Vee) ? 1.0 : -1.0;
    double sum = 0.0;
    for (int n1 = 0; n1 <= s.n_max1; ++n1) {
        for (int n2 = 0; n2 <= s.n_max2; ++n2) {
            const std::size_t i = s.idx(n1, n2);
            sum += std::norm(s.amp_a[i]) + sign_b * std::norm(s.amp_b[i]) -
                   std::norm(s.amp_c[i]);
        }
    }
    return s.norm_corr * s.norm_corr * sum;
}

PhotonMoments photon_moments(const EvolvedState& s, FieldMode mode) {
    double mean = 0.0, second = 0.0;
    const std::vector<complexd>* grids[3] = {&s.amp_a, &s.amp_b, &s.amp_c};
    for (int n1 = 0; n1 <= s.n_max1; ++n1) {
        for (int n2 = 0; n2 <= s.n_max2; ++n2) {
            const std::size_t i = s.idx(n1, n2);
            for (int slot = 0; slot < 3; ++slot) {
                if (!s.slot_valid(slot, n1, n2)) continue;
                const double w = std::norm((*grids[slot])[i]);
                if (w == 0.0) continue;
                const Ket ket = s.slot_ket(slot, n1, n2);
                const double n = mode == FieldMode::A ? ket.n1 : ket.n2;
                mean += n * w;
                second += n * n * w;
            }
        }
    }
    const double n2c = s.norm_corr * s.norm_corr;
    return {mean * n2c, second * n2c};
}

double mandel_q(const EvolvedState& s, FieldMode mode) {
    const PhotonMoments m = photon_moments(s, mode);
    if (m.mean <= 1e-12)
        throw undefined_for_vacuum("Mandel Q undefined: mean photon number is zero");
    return (m.second - m.mean * m.mean) / m.mean - 1.0;
}

TimeSeries time_series(AtomKind k, const SystemParams& p, const DerivedParams& d,
                       std::span<const double> tau_grid) {
    const auto diags = validate(p, k);
    if (has_errors(diags)) {
        std::ostringstream msg;
        msg << "invalid parameters:";
        for (const auto& diag : diags)
            if (diag.severity == Severity::Error) msg << " [" << diag.message << "]";
        throw error(msg.str());
    }

    const SpectrumGrid spectra = build_spectra(k, p, d);
    const CoherentWeights w = coherent_weights(p);

    TimeSeries ts;
    ts.tau.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        const EvolvedState s = evolve(k, spectra, d, w, tau);
        ts.tau.push_back(tau);
        ts.w.push_back(population_inversion(s));
        for (FieldMode mode : {FieldMode::A, FieldMode::B}) {
            double q = std::numeric_limits<double>::quiet_NaN();
            try {
                q = mandel_q(s, mode);
            } catch (const undefined_for_vacuum&) {
                // vacuum mode: Q has no value, recorded as NaN
            }
            (mode == FieldMode::A ? ts.q_a : ts.q_b).push_back(q);
        }
        ts.norm.push_back(s.norm_corr);
    }
    return ts;
}

}  // namespace lvx
