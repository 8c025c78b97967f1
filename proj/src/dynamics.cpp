#include "lvx/dynamics.hpp"

#include <cmath>

namespace lvx {

std::vector<complexd> coherent_weights(complexd alpha, int n_max) {
    std::vector<complexd> p(static_cast<std::size_t>(n_max) + 1);
    p[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < n_max; ++n)
        p[static_cast<std::size_t>(n) + 1] =
            p[static_cast<std::size_t>(n)] * alpha / std::sqrt(n + 1.0);
    return p;
}

CoherentWeights coherent_weights(const SystemParams& p) {
    return {coherent_weights(p.alpha1, p.n_max1), coherent_weights(p.alpha2, p.n_max2)};
}

namespace {

struct ModePair {
    int upper, lower;
    double eps;
    int photon;  // 0 -> n1, 1 -> n2
};

std::array<ModePair, 2> mode_pairs(AtomKind k, const DerivedParams& d) {
    const TransitionMap tm = transition_map(k);
    return {ModePair{tm.mode_a.upper, tm.mode_a.lower, d.eps1, 0},
            ModePair{tm.mode_b.upper, tm.mode_b.lower, d.eps2, 1}};
}

int photon_count(const Ket& k, int photon) { return photon == 0 ? k.n1 : k.n2; }

Ket with_photon(Ket k, int photon, int n) {
    (photon == 0 ? k.n1 : k.n2) = n;
    return k;
}

}  // namespace

std::vector<Satellite> backtransform_satellites(AtomKind k, const DerivedParams& d,
                                                int n1, int n2) {
    // |phi_L> gains, at first order, -eps (adag sigma_ul - a sigma_lu) applied
    // to each triplet component: lower levels climb with a created photon
    // (-eps sqrt(n+1)), upper levels drop with an absorbed one (+eps sqrt(n)).
    std::vector<Satellite> out;
    if (d.eps1 == 0.0 && d.eps2 == 0.0) return out;
    const TripletBasis basis = triplet_basis(k, n1, n2);
    const auto modes = mode_pairs(k, d);
    for (int slot = 0; slot < 3; ++slot) {
        if (!basis.slot_valid(slot)) continue;
        const Ket& ket = basis.states[static_cast<std::size_t>(slot)];
        for (const ModePair& m : modes) {
            if (m.eps == 0.0) continue;
            const int n = photon_count(ket, m.photon);
            if (ket.level == m.lower) {
                Ket target = with_photon(ket, m.photon, n + 1);
                target.level = m.upper;
                out.push_back({slot, -m.eps * std::sqrt(n + 1.0), target});
            } else if (ket.level == m.upper && n >= 1) {
                Ket target = with_photon(ket, m.photon, n - 1);
                target.level = m.lower;
                out.push_back({slot, m.eps * std::sqrt(static_cast<double>(n)), target});
            }
        }
    }
    return out;
}

namespace {

std::array<complexd, 3> lambda_from(const BlockSpectrum& spec,
                                    const std::vector<Satellite>& sats,
                                    const CoherentWeights& w, int n1, int n2) {
    std::array<complexd, 3> lam{};
    const complexd p00 = w.at(n1, n2);
    for (int L = 0; L < 3; ++L) {
        if (L == spec.excluded_row) continue;
        complexd v = spec.coeffs[static_cast<std::size_t>(L)][0] * p00;
        for (const Satellite& s : sats) {
            if (s.ket.level != 1) continue;  // psi(0) lives in level 1
            v += s.scale * spec.coeffs[static_cast<std::size_t>(L)][static_cast<std::size_t>(s.source)] *
                 w.at(s.ket.n1, s.ket.n2);
        }
        lam[static_cast<std::size_t>(L)] = v;
    }
    return lam;
}

}  // namespace

std::array<complexd, 3> lambda_weights(AtomKind k, const BlockSpectrum& spec,
                                       const DerivedParams& d,
                                       const CoherentWeights& w, int n1, int n2) {
    return lambda_from(spec, backtransform_satellites(k, d, n1, n2), w, n1, n2);
}

Ket EvolvedState::slot_ket(int slot, int n1, int n2) const {
    return triplet_basis(kind, n1, n2).states[static_cast<std::size_t>(slot)];
}

bool EvolvedState::slot_valid(int slot, int n1, int n2) const {
    return triplet_basis(kind, n1, n2).slot_valid(slot);
}

namespace {

// grid coordinates holding the amplitude of |level, m1, m2>, per topology;
// returns false when the ket is no triplet member of any grid slot
bool grid_slot(AtomKind k, const Ket& ket, int& slot, int& g1, int& g2) {
    switch (ket.level) {
        case 1:
            slot = 0;
            g1 = ket.n1;
            g2 = ket.n2;
            return true;
        case 2:
            slot = 1;
            g1 = ket.n1 - 1;
            g2 = (k == AtomKind::Vee) ? ket.n2 + 1 : ket.n2;
            return g1 >= 0;
        case 3:
            slot = 2;
            switch (k) {
                case AtomKind::Lambda: g1 = ket.n1; g2 = ket.n2 - 1; break;
                case AtomKind::Ladder: g1 = ket.n1 - 1; g2 = ket.n2 - 1; break;
                case AtomKind::Vee: g1 = ket.n1 - 1; g2 = ket.n2; break;
            }
            return g1 >= 0 && g2 >= 0;
    }
    return false;
}

}  // namespace

EvolvedState evolve(AtomKind k, const SpectrumGrid& spectra, const DerivedParams& d,
                    const CoherentWeights& w, double t) {
    EvolvedState st;
    st.kind = k;
    st.t = t;
    st.n_max1 = spectra.n_max1;
    st.n_max2 = spectra.n_max2;
    const std::size_t cells =
        static_cast<std::size_t>(st.n_max1 + 1) * (st.n_max2 + 1);
    st.amp_a.assign(cells, {});
    st.amp_b.assign(cells, {});
    st.amp_c.assign(cells, {});
    std::vector<complexd>* grids[3] = {&st.amp_a, &st.amp_b, &st.amp_c};

    for (int n1 = 0; n1 <= st.n_max1; ++n1) {
        for (int n2 = 0; n2 <= st.n_max2; ++n2) {
            const BlockSpectrum& spec = spectra.at(n1, n2);
            const auto sats = backtransform_satellites(k, d, n1, n2);
            const auto lam = lambda_from(spec, sats, w, n1, n2);
            const complexd lam0_base = w.at(n1, n2);

            for (int L = 0; L < 3; ++L) {
                if (L == spec.excluded_row) continue;
                const Vec3& row = spec.coeffs[static_cast<std::size_t>(L)];
                const double mu = spec.mu[static_cast<std::size_t>(L)];
                const complexd phase = std::exp(complexd(0.0, -mu * t));
                const complexd weight = phase * lam[static_cast<std::size_t>(L)];

                // triplet components carry the full first-order lambda
                const TripletBasis basis = triplet_basis(k, n1, n2);
                for (int slot = 0; slot < 3; ++slot) {
                    if (!basis.slot_valid(slot)) continue;
                    (*grids[slot])[st.idx(n1, n2)] += weight * row[static_cast<std::size_t>(slot)];
                }

                // satellites pair with the zeroth-order lambda only; the
                // cross terms would be second order
                const complexd w0 = phase * (row[0] * lam0_base);
                for (const Satellite& sat : sats) {
                    int slot = 0, g1 = 0, g2 = 0;
                    if (!grid_slot(k, sat.ket, slot, g1, g2)) continue;
                    if (g1 > st.n_max1 || g2 > st.n_max2 || g1 < 0 || g2 < 0) continue;
                    (*grids[slot])[st.idx(g1, g2)] +=
                        w0 * (sat.scale * row[static_cast<std::size_t>(sat.source)]);
                }
            }
        }
    }

    st.norm_corr = norm_correction(st);
    return st;
}

double norm_correction(const EvolvedState& s) {
    double sum = 0.0;
    for (int n1 = 0; n1 <= s.n_max1; ++n1) {
        for (int n2 = 0; n2 <= s.n_max2; ++n2) {
            const std::size_t i = s.idx(n1, n2);
            sum += std::norm(s.amp_a[i]) + std::norm(s.amp_b[i]) + std::norm(s.amp_c[i]);
        }
    }
    if (sum < 1e-300) throw empty_state("state vector underflow; nothing to normalize");
    return 1.0 / std::sqrt(sum);
}

}  // namespace lvx
