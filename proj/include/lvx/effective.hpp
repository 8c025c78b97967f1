// effective.hpp — conserved-excitation 3x3 blocks of the effective
// Hamiltonian, closed-form Cardano spectra and eigen-coefficients.

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lvx/types.hpp"

namespace lvx {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// Intensity-dependent deformations of the two couplings at photon numbers
// (n1, n2). Both equal 1 when eps1 = eps2 = 0.
struct NonlinearityPair {
    double f1;
    double f2;
};

NonlinearityPair nonlinearity(AtomKind k, const DerivedParams& d, int n1, int n2);

// The three product states spanning one conserved-excitation block.
// Vee blocks with n2 = 0 have no middle state (middle_absent set); the stored
// middle ket then carries n2 = -1 and must not be dereferenced.
struct TripletBasis {
    std::array<Ket, 3> states;
    bool middle_absent = false;

    bool slot_valid(int i) const { return i != 1 || !middle_absent; }
};

TripletBasis triplet_basis(AtomKind k, int n1, int n2);

// One block: real symmetric by construction. For an absent middle state the
// middle row/column is zero.
struct Block {
    TripletBasis basis;
    Mat3 m{};
};

Block build_block(AtomKind k, const SystemParams& p, const DerivedParams& d,
                  int n1, int n2);

// Coefficients of mu^3 + x1 mu^2 + x2 mu + x3 = -det(m - mu I), from the
// matrix invariants: x1 = -tr m, x2 = (tr^2 m - tr m^2)/2, x3 = -det m.
struct CubicCoefficients {
    double x1, x2, x3;
};

CubicCoefficients cubic_coefficients(const Block& b);

// Three real roots, ascending, plus the Cardano cosine-branch index L (1..3)
// each sorted root came from.
struct CardanoRoots {
    Vec3 mu;
    std::array<int, 3> branch;
};

// Solves the given cubic. Requires x1^2 - 3 x2 >= -1e-12 max(1, x1^2)
// (always true for characteristic polynomials of symmetric matrices);
// slightly negative values are clamped to a triple root.
CardanoRoots cardano_solve(double x1, double x2, double x3);

// Matrix-direct overload: forms the characteristic polynomial in compensated
// (double-double) arithmetic so near-degenerate roots stay accurate to
// ~1e-14 absolute. This is the route block_spectrum takes.
CardanoRoots cardano_solve(const Block& b);

// Unit-norm real eigenvector of b.m for eigenvalue mu, sign-fixed so the
// first nonzero component is positive. Throws not_an_eigenvalue when the
// best residual exceeds 1e-8 ||m||.
Vec3 eigen_coefficients(const Block& b, double mu);

// Spectrum of one block: eigenvalues ascending, row L of coeffs = (a,b,c)
// for mu[L]. Rows are orthonormal (degenerate pairs are re-orthogonalized).
// excluded_row marks the pure-absent-state row of degenerate Vee blocks,
// which dynamics must skip; -1 when every row is physical.
struct BlockSpectrum {
    Vec3 mu{};
    std::array<Vec3, 3> coeffs{};
    std::array<int, 3> branch{};
    int excluded_row = -1;
};

BlockSpectrum block_spectrum(AtomKind k, const SystemParams& p,
                             const DerivedParams& d, int n1, int n2);

// All blocks with 0 <= n1 <= n_max1, 0 <= n2 <= n_max2. Blocks are
// independent; the grid is immutable after construction.
struct SpectrumGrid {
    AtomKind kind = AtomKind::Lambda;
    int n_max1 = 0, n_max2 = 0;
    std::vector<BlockSpectrum> blocks;

    const BlockSpectrum& at(int n1, int n2) const {
        return blocks[static_cast<std::size_t>(n1) * (n_max2 + 1) + n2];
    }
};

SpectrumGrid build_spectra(AtomKind k, const SystemParams& p, const DerivedParams& d);

// Frobenius norm, shared by the residual checks.
double frobenius(const Mat3& m);

// Term groups of the Hamiltonians, applied by direct operator action on
// product states. This engine is the single source of truth for matrix
// elements; the oracle builds its dense operators from the same routine.
enum class TermGroup {
    Free,             // H0: mode energies + level energy
    Rotating,         // excitation-conserving couplings, undeformed
    CounterRotating,  // the CRT partner terms
    FirstOrderShift,  // eps g (n sigma_z - sigma_ll) intensity shifts
    DeformedCoupling, // g f(n1,n2) deformed excitation-conserving couplings
};

// Streams (result ket, coefficient) pairs of (term group) |in> into sink.
// Coefficients are real; lowering on an empty mode emits nothing.
void apply_terms(TermGroup group, AtomKind k, const SystemParams& p,
                 const DerivedParams& d, const Ket& in,
                 const std::function<void(const Ket&, double)>& sink);

}  // namespace lvx
