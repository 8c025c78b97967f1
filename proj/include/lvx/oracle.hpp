// oracle.hpp — exact numerical reference in the truncated product space:
// dense Hamiltonians (with or without CRTs), eigendecomposition, exact time
// evolution, and spectrum matching against the analytic blocks.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lvx/dynamics.hpp"
#include "lvx/effective.hpp"
#include "lvx/observables.hpp"
#include "lvx/types.hpp"

namespace lvx::oracle {

// Flat index map over |level, n1, n2>, level-major. Bijective on
// 1..3 x 0..n_max1 x 0..n_max2.
struct FockBasis {
    int n_max1 = 0;
    int n_max2 = 0;

    int dim() const { return 3 * (n_max1 + 1) * (n_max2 + 1); }

    bool contains(const Ket& k) const {
        return k.level >= 1 && k.level <= 3 && k.n1 >= 0 && k.n1 <= n_max1 &&
               k.n2 >= 0 && k.n2 <= n_max2;
    }

    int index(const Ket& k) const {
        return ((k.level - 1) * (n_max1 + 1) + k.n1) * (n_max2 + 1) + k.n2;
    }

    Ket ket(int idx) const {
        const int per_level = (n_max1 + 1) * (n_max2 + 1);
        return Ket{idx / per_level + 1, (idx % per_level) / (n_max2 + 1),
                   idx % (n_max2 + 1)};
    }
};

// Dense Hermitian operator; couplings leaving the truncated space are
// dropped. entries(i,j) = conj(entries(j,i)) exactly by construction.
struct DenseOperator {
    FockBasis basis;
    Eigen::MatrixXcd entries;
};

// Largest basis the dense oracle accepts.
inline constexpr int kMaxDim = 5000;

// H0 + H1, plus the counter-rotating H2 when include_crt is set. The basis
// comes from p.n_max1/n_max2. Throws dimension_too_large beyond kMaxDim.
DenseOperator build_full_hamiltonian(AtomKind k, const SystemParams& p,
                                     bool include_crt);

// The effective Hamiltonian assembled in the full truncated space from the
// same term engine as effective::build_block.
DenseOperator build_effective_full(AtomKind k, const SystemParams& p,
                                   const DerivedParams& d);

// Diagonal conserved-excitation operator of the topology: n1 + n2 + level
// weight (Lambda 1/0/0, Vee 1/1/0, Ladder 2/1/0).
DenseOperator excitation_number(AtomKind k, const FockBasis& basis);

struct EigenSystem {
    FockBasis basis;
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // orthonormal columns
};

// Dense Hermitian eigendecomposition. Residual ||Hv - lambda v|| stays below
// 1e-9 ||H|| per pair. Throws convergence_failure if the solver fails.
EigenSystem eigendecompose(const DenseOperator& h);

// psi(t) = V e^{-i lambda t} V^dagger psi0.
Eigen::VectorXcd exact_evolve(const EigenSystem& es, const Eigen::VectorXcd& psi0,
                              double t);

// Convenience overload decomposing h on the fly. psi0 must be normalized to
// 1e-10.
Eigen::VectorXcd exact_evolve(const DenseOperator& h, const Eigen::VectorXcd& psi0,
                              double t);

// |psi(0)> = sum P_{n1} P_{n2} |1, n1, n2> from the analytic coherent
// weights (zero beyond their truncation), optionally renormalized.
Eigen::VectorXcd initial_state(const FockBasis& basis, const CoherentWeights& w,
                               bool normalize);

// The first-order back-transform of one block eigenvector, embedded in the
// full space and normalized. Used for spectrum matching and as an
// independent cross-check of the dynamics index conventions.
Eigen::VectorXcd backtransformed_eigenvector(AtomKind k, const DerivedParams& d,
                                             const FockBasis& basis,
                                             const BlockSpectrum& spec, int row,
                                             int n1, int n2);

struct BlockGap {
    int n1, n2, row;
    double mu_analytic;
    double mu_exact;
    double abs_gap;
    double rel_gap;
    double support;  // weight of the matched exact eigenvector on the triplet
};

struct SpectrumMatch {
    std::vector<BlockGap> gaps;
    double max_abs_gap = 0.0;
    double max_rel_gap = 0.0;
};

// Matches analytic block eigenvalues with n1 + n2 <= block_sum_limit against
// the exact eigenpairs: for each analytic row, the exact eigenvector with the
// largest overlap on the back-transformed triplet vector must carry more
// than half the weight, else no_match is thrown.
SpectrumMatch match_spectra(const SpectrumGrid& analytic, const EigenSystem& exact,
                            const DerivedParams& d, int block_sum_limit);

// Observables of a full-space state, for cross-checks against the analytic
// pipeline. The state is assumed normalized.
double population_inversion(AtomKind k, const FockBasis& basis,
                            const Eigen::VectorXcd& psi);
PhotonMoments photon_moments(const FockBasis& basis, const Eigen::VectorXcd& psi,
                             FieldMode mode);

}  // namespace lvx::oracle
