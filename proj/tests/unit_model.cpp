#include <doctest.h>

#include <cmath>
#include <random>

#include "lvx/model.hpp"

using namespace lvx;

namespace {

// Reference parameter point: detunings 0.2 / 0.28 at omega = 1,
// couplings (0.01, 0.04).
SystemParams lambda_reference() {
    SystemParams p;
    p.omega_f = p.omega_fp = 1.0;
    p.e1 = 1.5;
    p.e2 = 0.3;   // e1 - e2 = 1.2 -> delta_a = 0.2
    p.e3 = 0.22;  // e1 - e3 = 1.28 -> delta_b = 0.28
    p.g1 = 0.01;
    p.g2 = 0.04;
    p.alpha1 = p.alpha2 = complexd(5.0, 0.0);
    p.n_max1 = p.n_max2 = 60;
    return p;
}

bool has_code(const std::vector<Diagnostic>& diags, DiagCode code) {
    for (const auto& d : diags)
        if (d.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("lambda detunings at the reference point") {
    const DerivedParams d = derive_params(lambda_reference(), AtomKind::Lambda);
    CHECK(d.delta_a == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(d.delta_b == doctest::Approx(0.28).epsilon(1e-12));
    CHECK(d.wtilde_a == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(d.wtilde_b == doctest::Approx(1.14).epsilon(1e-12));
}

TEST_CASE("zero coupling gives zero perturbation parameters") {
    for (AtomKind k : {AtomKind::Lambda, AtomKind::Vee, AtomKind::Ladder}) {
        SystemParams p = lambda_reference();
        p.g1 = p.g2 = 0.0;
        const DerivedParams d = derive_params(p, k);
        CHECK(d.eps1 == 0.0);
        CHECK(d.eps2 == 0.0);
        CHECK(d.beta1 == 0.0);
        CHECK(d.beta2 == 0.0);
        CHECK(d.gamma1 == 0.0);
        CHECK(d.gamma2 == 0.0);
    }
}

TEST_CASE("eps by hand substitution: wtilde = 1.1, g = 0.04") {
    SystemParams p = lambda_reference();
    p.g1 = 0.04;  // same transition, stronger coupling
    const DerivedParams d = derive_params(p, AtomKind::Lambda);
    CHECK(d.eps1 == doctest::Approx(0.04 / 2.2).epsilon(1e-14));
    CHECK(d.eps1 == doctest::Approx(0.018181818181818182).epsilon(1e-12));
}

TEST_CASE("the stated reference epsilons come out of g = 0.04 on both transitions") {
    SystemParams p = lambda_reference();
    p.g1 = p.g2 = 0.04;
    const DerivedParams d = derive_params(p, AtomKind::Lambda);
    CHECK(d.eps1 == doctest::Approx(1.0 / 55.0).epsilon(1e-12));
    CHECK(d.eps2 == doctest::Approx(1.0 / 57.0).epsilon(1e-12));
}

TEST_CASE("vee and ladder transition maps") {
    SystemParams p;
    p.e1 = 2.48;
    p.e2 = 1.28;
    p.e3 = 0.0;
    p.g1 = 0.01;
    p.g2 = 0.04;
    p.n_max1 = p.n_max2 = 8;

    SUBCASE("ladder: 1<->2 via mode a, 2<->3 via mode b") {
        const DerivedParams d = derive_params(p, AtomKind::Ladder);
        CHECK(d.delta_a == doctest::Approx(2.48 - 1.28 - 1.0));
        CHECK(d.delta_b == doctest::Approx(1.28 - 0.0 - 1.0));
        CHECK(d.wtilde_a == doctest::Approx((1.2 + 1.0) / 2.0));
        CHECK(d.wtilde_b == doctest::Approx((1.28 + 1.0) / 2.0));
    }
    SUBCASE("vee: 1<->3 via mode a, 2<->3 via mode b") {
        const DerivedParams d = derive_params(p, AtomKind::Vee);
        CHECK(d.delta_a == doctest::Approx(2.48 - 1.0));
        CHECK(d.delta_b == doctest::Approx(1.28 - 1.0));
        CHECK(d.wtilde_a == doctest::Approx((2.48 + 1.0) / 2.0));
        CHECK(d.wtilde_b == doctest::Approx((1.28 + 1.0) / 2.0));
    }
}

TEST_CASE("degenerate transition throws") {
    SystemParams p = lambda_reference();
    p.e2 = p.e1 + p.omega_f;  // wtilde_a = 0
    CHECK_THROWS_AS(derive_params(p, AtomKind::Lambda), degenerate_transition);
}

TEST_CASE("three-photon resonance throws") {
    SystemParams p = lambda_reference();
    p.e2 = p.e1 - 3.0 * p.omega_f;
    CHECK_THROWS_AS(derive_params(p, AtomKind::Lambda), three_photon_resonance);
    p.e2 = p.e1 - 3.0 * p.omega_f + 1e-8;  // still inside the margin
    CHECK_THROWS_AS(derive_params(p, AtomKind::Lambda), three_photon_resonance);
}

TEST_CASE("validate: reference point is clean") {
    const auto diags = validate(lambda_reference(), AtomKind::Lambda);
    CHECK(diags.empty());

    SystemParams strong = lambda_reference();
    strong.g1 = strong.g2 = 0.04;  // eps = (1/55, 1/57)
    CHECK(validate(strong, AtomKind::Lambda).empty());
}

TEST_CASE("validate: large eps warns") {
    SystemParams p = lambda_reference();
    p.g1 = 1.1;  // eps1 = 0.5
    const auto diags = validate(p, AtomKind::Lambda);
    CHECK(!has_errors(diags));
    CHECK(has_code(diags, DiagCode::PerturbationLarge));
}

TEST_CASE("validate: clipped coherent tail warns") {
    SystemParams p = lambda_reference();
    p.n_max1 = 20;  // |alpha|^2 = 25 needs 55
    const auto diags = validate(p, AtomKind::Lambda);
    CHECK(!has_errors(diags));
    CHECK(has_code(diags, DiagCode::TruncationTail));
}

TEST_CASE("validate: basic invariants as errors") {
    SystemParams p = lambda_reference();
    p.omega_f = 0.0;
    CHECK(has_code(validate(p, AtomKind::Lambda), DiagCode::NonPositiveFrequency));

    p = lambda_reference();
    p.g2 = -0.1;
    CHECK(has_code(validate(p, AtomKind::Lambda), DiagCode::NegativeCoupling));

    p = lambda_reference();
    p.e2 = p.e1 + p.omega_f;
    CHECK(has_code(validate(p, AtomKind::Lambda), DiagCode::DegenerateTransition));

    p = lambda_reference();
    p.e2 = p.e1 - 3.0;
    CHECK(has_code(validate(p, AtomKind::Lambda), DiagCode::ThreePhotonResonance));

    p = lambda_reference();
    p.e2 = p.e1 + 2.0;  // wtilde_a < 0 -> eps1 < 0
    CHECK(has_code(validate(p, AtomKind::Lambda), DiagCode::EpsilonOutOfRange));
}

TEST_CASE("scale covariance: frequencies scale, eps does not") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(0.2, 2.0);
    for (int it = 0; it < 200; ++it) {
        SystemParams p;
        p.omega_f = U(rng);
        p.omega_fp = U(rng);
        p.e1 = 2.0 + U(rng);
        p.e2 = U(rng);
        p.e3 = 0.5 * U(rng);
        p.g1 = 0.05 * U(rng);
        p.g2 = 0.05 * U(rng);
        p.n_max1 = p.n_max2 = 4;
        const double s = 0.25 + U(rng);

        for (AtomKind k : {AtomKind::Lambda, AtomKind::Vee, AtomKind::Ladder}) {
            DerivedParams d0;
            try {
                d0 = derive_params(p, k);
            } catch (const error&) {
                continue;  // resonant draw
            }
            SystemParams q = p;
            q.omega_f *= s;
            q.omega_fp *= s;
            q.e1 *= s;
            q.e2 *= s;
            q.e3 *= s;
            q.g1 *= s;
            q.g2 *= s;
            const DerivedParams d1 = derive_params(q, k);
            CHECK(d1.eps1 == doctest::Approx(d0.eps1).epsilon(1e-12));
            CHECK(d1.eps2 == doctest::Approx(d0.eps2).epsilon(1e-12));
            CHECK(d1.wtilde_a == doctest::Approx(s * d0.wtilde_a).epsilon(1e-12));
            CHECK(std::abs(d1.delta_a - s * d0.delta_a) < 1e-12);
            CHECK(std::abs(d1.delta_b - s * d0.delta_b) < 1e-12);
        }
    }
}

TEST_CASE("eps is linear in the coupling") {
    SystemParams p = lambda_reference();
    const DerivedParams d0 = derive_params(p, AtomKind::Lambda);
    p.g1 *= 3.0;
    p.g2 *= 3.0;
    const DerivedParams d1 = derive_params(p, AtomKind::Lambda);
    CHECK(d1.eps1 == doctest::Approx(3.0 * d0.eps1).epsilon(1e-14));
    CHECK(d1.eps2 == doctest::Approx(3.0 * d0.eps2).epsilon(1e-14));
}

TEST_CASE("rwa_limit zeroes the perturbation only") {
    const DerivedParams d = derive_params(lambda_reference(), AtomKind::Lambda);
    const DerivedParams r = rwa_limit(d);
    CHECK(r.eps1 == 0.0);
    CHECK(r.eps2 == 0.0);
    CHECK(r.beta1 == 0.0);
    CHECK(r.gamma2 == 0.0);
    CHECK(r.delta_a == d.delta_a);
    CHECK(r.wtilde_b == d.wtilde_b);
}
