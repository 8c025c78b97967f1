#include <doctest.h>

#include <cmath>
#include <numeric>

#include "lvx/model.hpp"
#include "lvx/observables.hpp"
#include "lvx/oracle.hpp"
#include "test_support.hpp"

using namespace lvx;

namespace {

EvolvedState blank_state(AtomKind k, int n_max) {
    EvolvedState s;
    s.kind = k;
    s.n_max1 = s.n_max2 = n_max;
    const std::size_t cells = static_cast<std::size_t>(n_max + 1) * (n_max + 1);
    s.amp_a.assign(cells, {});
    s.amp_b.assign(cells, {});
    s.amp_c.assign(cells, {});
    return s;
}

EvolvedState initial_state(AtomKind k, const SystemParams& p, const DerivedParams& d) {
    const SpectrumGrid grid = build_spectra(k, p, d);
    return evolve(k, grid, d, coherent_weights(p), 0.0);
}

double stdev(std::span<const double> v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / v.size());
}

}  // namespace

TEST_CASE("W = 1 for the initial level-1 state, all topologies") {
    for (AtomKind k : {AtomKind::Lambda, AtomKind::Vee, AtomKind::Ladder}) {
        const SystemParams p = test::small_params(k);
        const DerivedParams d = derive_params(p, k);
        const EvolvedState s = initial_state(k, p, d);
        CHECK(std::abs(population_inversion(s) - 1.0) < 1e-10);
    }
}

TEST_CASE("equal populations give W = -1/3 for lambda") {
    EvolvedState s = blank_state(AtomKind::Lambda, 2);
    s.amp_a[s.idx(1, 1)] = 0.5;
    s.amp_b[s.idx(1, 1)] = 0.5;
    s.amp_c[s.idx(1, 1)] = 0.5;
    s.norm_corr = norm_correction(s);
    CHECK(population_inversion(s) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("vee counts level 2 as upper population") {
    EvolvedState s = blank_state(AtomKind::Vee, 2);
    s.amp_a[s.idx(1, 1)] = 0.5;
    s.amp_b[s.idx(1, 1)] = 0.5;
    s.amp_c[s.idx(1, 1)] = 0.5;
    s.norm_corr = norm_correction(s);
    CHECK(population_inversion(s) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("photon moments of the coherent initial state") {
    SystemParams p = test::small_params(AtomKind::Lambda);
    p.alpha1 = complexd(2.0, 0.0);  // |alpha|^2 = 4
    p.alpha2 = complexd(0.0, 2.0);
    p.n_max1 = p.n_max2 = 24;
    const DerivedParams d = derive_params(p, AtomKind::Lambda);
    const EvolvedState s = initial_state(AtomKind::Lambda, p, d);

    const PhotonMoments ma = photon_moments(s, FieldMode::A);
    CHECK(std::abs(ma.mean - 4.0) < 1e-8);
    CHECK(std::abs(ma.second - 20.0) < 1e-7);  // <n^2> = nbar^2 + nbar
    const PhotonMoments mb = photon_moments(s, FieldMode::B);
    CHECK(std::abs(mb.mean - 4.0) < 1e-8);
}

TEST_CASE("photon moments of the vacuum vanish") {
    SystemParams p = test::small_params(AtomKind::Ladder);
    p.alpha1 = p.alpha2 = complexd(0.0, 0.0);
    const DerivedParams d = derive_params(p, AtomKind::Ladder);
    const EvolvedState s = initial_state(AtomKind::Ladder, p, d);
    for (FieldMode m : {FieldMode::A, FieldMode::B}) {
        const PhotonMoments mm = photon_moments(s, m);
        CHECK(mm.mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
        CHECK(mm.second == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    }
}

TEST_CASE("Mandel Q: coherent input is Poissonian") {
    SystemParams p = test::small_params(AtomKind::Lambda);
    p.alpha1 = p.alpha2 = complexd(2.0, 0.0);
    p.n_max1 = p.n_max2 = 24;
    const DerivedParams d = derive_params(p, AtomKind::Lambda);
    const EvolvedState s = initial_state(AtomKind::Lambda, p, d);
    CHECK(std::abs(mandel_q(s, FieldMode::A)) < 1e-6);
    CHECK(std::abs(mandel_q(s, FieldMode::B)) < 1e-6);
}

TEST_CASE("Mandel Q: single Fock layer gives -1") {
    EvolvedState s = blank_state(AtomKind::Lambda, 4);
    s.amp_a[s.idx(3, 2)] = complexd(0.7, 0.1);  // only n1 = 3 occupied
    s.norm_corr = norm_correction(s);
    CHECK(mandel_q(s, FieldMode::A) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("Mandel Q: two-point distribution p(0) = p(2) = 1/2") {
    EvolvedState s = blank_state(AtomKind::Lambda, 4);
    s.amp_a[s.idx(0, 0)] = 1.0 / std::sqrt(2.0);
    s.amp_a[s.idx(2, 0)] = 1.0 / std::sqrt(2.0);
    s.norm_corr = norm_correction(s);
    // <n> = 1, <n^2> = 2, variance 1 -> Q = 0
    CHECK(mandel_q(s, FieldMode::A) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("Mandel Q is undefined for the vacuum") {
    EvolvedState s = blank_state(AtomKind::Lambda, 2);
    s.amp_a[s.idx(0, 0)] = 1.0;
    s.norm_corr = norm_correction(s);
    CHECK_THROWS_AS(mandel_q(s, FieldMode::A), undefined_for_vacuum);
}

TEST_CASE("time series: single point at tau = 0") {
    SystemParams p = test::small_params(AtomKind::Lambda);
    p.n_max1 = p.n_max2 = 14;  // contains the coherent tail of nbar = 2
    const DerivedParams d = derive_params(p, AtomKind::Lambda);
    const double tau0 = 0.0;
    const TimeSeries ts = time_series(AtomKind::Lambda, p, d, std::span(&tau0, 1));
    REQUIRE(ts.tau.size() == 1);
    CHECK(std::abs(ts.w[0] - 1.0) < 1e-10);
    CHECK(std::abs(ts.q_a[0]) < 1e-6);
    CHECK(std::abs(ts.q_b[0]) < 1e-6);
}

TEST_CASE("time series: no dynamics without coupling") {
    SystemParams p = test::small_params(AtomKind::Vee);
    p.g1 = p.g2 = 0.0;
    const DerivedParams d = derive_params(p, AtomKind::Vee);
    const std::array<double, 4> tau = {0.0, 5.0, 20.0, 60.0};
    const TimeSeries ts = time_series(AtomKind::Vee, p, d, tau);
    for (double w : ts.w) CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("time series rejects invalid parameters") {
    SystemParams p = test::small_params(AtomKind::Lambda);
    p.omega_f = -1.0;
    const DerivedParams d{};
    const double tau0 = 0.0;
    CHECK_THROWS_AS(time_series(AtomKind::Lambda, p, d, std::span(&tau0, 1)),
                    error);
}

TEST_CASE("W stays inside [-1, 1] along the evolution") {
    for (AtomKind k : {AtomKind::Lambda, AtomKind::Vee, AtomKind::Ladder}) {
        const SystemParams p = test::small_params(k);
        const DerivedParams d = derive_params(p, k);
        std::vector<double> tau;
        for (double t = 0.0; t <= 50.0; t += 2.5) tau.push_back(t);
        const TimeSeries ts = time_series(k, p, d, tau);
        for (double w : ts.w) {
            CHECK(w <= 1.0 + 1e-12);
            CHECK(w >= -1.0 - 1e-12);
        }
    }
}

TEST_CASE("energy offset shifts nothing observable") {
    SystemParams p = test::small_params(AtomKind::Lambda);
    std::vector<double> tau;
    for (double t = 0.0; t <= 30.0; t += 3.0) tau.push_back(t);
    const TimeSeries base =
        time_series(AtomKind::Lambda, p, derive_params(p, AtomKind::Lambda), tau);

    SystemParams q = p;
    const double c = 0.37;
    q.e1 += c;
    q.e2 += c;
    q.e3 += c;
    const TimeSeries shifted =
        time_series(AtomKind::Lambda, q, derive_params(q, AtomKind::Lambda), tau);

    for (std::size_t i = 0; i < tau.size(); ++i) {
        CHECK(std::abs(base.w[i] - shifted.w[i]) < 1e-9);
        CHECK(std::abs(base.q_a[i] - shifted.q_a[i]) < 1e-9);
        CHECK(std::abs(base.q_b[i] - shifted.q_b[i]) < 1e-9);
    }
}

TEST_CASE("reference point: perturbation changes the inversion series") {
    const SystemParams p = test::reference_params(AtomKind::Lambda);
    const DerivedParams d = derive_params(p, AtomKind::Lambda);
    std::vector<double> tau;
    for (double t = 0.0; t <= 60.0; t += 2.0) tau.push_back(t);
    const TimeSeries full = time_series(AtomKind::Lambda, p, d, tau);
    const TimeSeries rwa = time_series(AtomKind::Lambda, p, rwa_limit(d), tau);
    double max_dw = 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        max_dw = std::max(max_dw, std::abs(full.w[i] - rwa.w[i]));
        CHECK(std::abs(full.w[i]) <= 1.0 + 1e-12);
        CHECK(std::abs(rwa.w[i]) <= 1.0 + 1e-12);
    }
    CHECK(max_dw > 1000.0 * std::numeric_limits<double>::epsilon());
}

TEST_CASE("reference point: Rabi oscillations collapse") {
    const SystemParams p = test::reference_params(AtomKind::Lambda);
    const DerivedParams d = rwa_limit(derive_params(p, AtomKind::Lambda));
    std::vector<double> early, late;
    for (double t = 0.0; t <= 5.0; t += 0.25) early.push_back(t);
    for (double t = 30.0; t <= 40.0; t += 0.25) late.push_back(t);
    const TimeSeries e = time_series(AtomKind::Lambda, p, d, early);
    const TimeSeries l = time_series(AtomKind::Lambda, p, d, late);
    CHECK(stdev(l.w) < stdev(e.w));
}

TEST_CASE("RWA limit: W and Q agree with the oracle") {
    for (AtomKind k : {AtomKind::Lambda, AtomKind::Vee, AtomKind::Ladder}) {
        const SystemParams p = test::small_params(k);
        const DerivedParams d = rwa_limit(derive_params(p, k));
        const CoherentWeights w = coherent_weights(p);
        const SpectrumGrid grid = build_spectra(k, p, d);

        SystemParams po = p;
        po.n_max1 += 2;
        po.n_max2 += 2;
        const oracle::DenseOperator h = oracle::build_full_hamiltonian(k, po, false);
        const oracle::EigenSystem es = oracle::eigendecompose(h);
        const Eigen::VectorXcd psi0 = oracle::initial_state(h.basis, w, true);

        for (double t : {0.0, 8.0, 31.0}) {
            const EvolvedState s = evolve(k, grid, d, w, t);
            const Eigen::VectorXcd psi = oracle::exact_evolve(es, psi0, t);
            CHECK(std::abs(population_inversion(s) -
                           oracle::population_inversion(k, h.basis, psi)) < 1e-8);
            for (FieldMode mode : {FieldMode::A, FieldMode::B}) {
                const PhotonMoments om = oracle::photon_moments(h.basis, psi, mode);
                const double oq = (om.second - om.mean * om.mean) / om.mean - 1.0;
                CHECK(std::abs(mandel_q(s, mode) - oq) < 1e-8);
            }
        }
    }
}
