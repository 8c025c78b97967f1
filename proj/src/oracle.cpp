#include "lvx/oracle.hpp"

#include <cmath>
#include <sstream>

namespace lvx::oracle {

namespace {

FockBasis basis_from(const SystemParams& p) {
    FockBasis b{p.n_max1, p.n_max2};
    if (b.dim() > kMaxDim) {
        std::ostringstream msg;
        msg << "basis dimension " << b.dim() << " exceeds the dense limit " << kMaxDim;
        throw dimension_too_large(msg.str());
    }
    if (p.n_max1 < 0 || p.n_max2 < 0) throw dimension_too_large("negative truncation");
    return b;
}

// assemble by column through the shared term engine; couplings leaving the
// truncated space are dropped
DenseOperator assemble(AtomKind k, const SystemParams& p, const DerivedParams& d,
                       const FockBasis& basis, std::initializer_list<TermGroup> groups) {
    DenseOperator op{basis, Eigen::MatrixXcd::Zero(basis.dim(), basis.dim())};
    for (int col = 0; col < basis.dim(); ++col) {
        const Ket in = basis.ket(col);
        auto sink = [&](const Ket& out, double c) {
            if (basis.contains(out)) op.entries(basis.index(out), col) += c;
        };
        for (TermGroup g : groups) apply_terms(g, k, p, d, in, sink);
    }
    return op;
}

}  // namespace

DenseOperator build_full_hamiltonian(AtomKind k, const SystemParams& p,
                                     bool include_crt) {
    const FockBasis basis = basis_from(p);
    const DerivedParams d{};  // undeformed groups ignore the derived values
    if (include_crt)
        return assemble(k, p, d, basis,
                        {TermGroup::Free, TermGroup::Rotating, TermGroup::CounterRotating});
    return assemble(k, p, d, basis, {TermGroup::Free, TermGroup::Rotating});
}

DenseOperator build_effective_full(AtomKind k, const SystemParams& p,
                                   const DerivedParams& d) {
    return assemble(k, p, d, basis_from(p),
                    {TermGroup::Free, TermGroup::FirstOrderShift, TermGroup::DeformedCoupling});
}

DenseOperator excitation_number(AtomKind k, const FockBasis& basis) {
    double w1 = 0, w2 = 0;  // excitation weight of levels 1, 2 (level 3 = 0)
    switch (k) {
        case AtomKind::Lambda: w1 = 1; break;
        case AtomKind::Vee: w1 = 1; w2 = 1; break;
        case AtomKind::Ladder: w1 = 2; w2 = 1; break;
    }
    DenseOperator op{basis, Eigen::MatrixXcd::Zero(basis.dim(), basis.dim())};
    for (int i = 0; i < basis.dim(); ++i) {
        const Ket ket = basis.ket(i);
        const double lvl = ket.level == 1 ? w1 : ket.level == 2 ? w2 : 0.0;
        op.entries(i, i) = ket.n1 + ket.n2 + lvl;
    }
    return op;
}

EigenSystem eigendecompose(const DenseOperator& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries);
    if (solver.info() != Eigen::Success)
        throw convergence_failure("dense Hermitian eigensolver did not converge");
    return {h.basis, solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXcd exact_evolve(const EigenSystem& es, const Eigen::VectorXcd& psi0,
                              double t) {
    Eigen::VectorXcd coeff = es.vectors.adjoint() * psi0;
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
        coeff(i) *= std::exp(complexd(0.0, -es.values(i) * t));
    return es.vectors * coeff;
}

Eigen::VectorXcd exact_evolve(const DenseOperator& h, const Eigen::VectorXcd& psi0,
                              double t) {
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw error("exact_evolve: psi0 is not normalized");
    return exact_evolve(eigendecompose(h), psi0, t);
}

Eigen::VectorXcd initial_state(const FockBasis& basis, const CoherentWeights& w,
                               bool normalize) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim());
    for (int n1 = 0; n1 <= basis.n_max1; ++n1)
        for (int n2 = 0; n2 <= basis.n_max2; ++n2)
            psi(basis.index(Ket{1, n1, n2})) = w.at(n1, n2);
    if (normalize) {
        const double n = psi.norm();
        if (n < 1e-150) throw empty_state("coherent weights sum to zero");
        psi /= n;
    }
    return psi;
}

Eigen::VectorXcd backtransformed_eigenvector(AtomKind k, const DerivedParams& d,
                                             const FockBasis& basis,
                                             const BlockSpectrum& spec, int row,
                                             int n1, int n2) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.dim());
    const TripletBasis triplet = triplet_basis(k, n1, n2);
    const Vec3& coeffs = spec.coeffs[static_cast<std::size_t>(row)];
    for (int slot = 0; slot < 3; ++slot) {
        if (!triplet.slot_valid(slot)) continue;
        const Ket& ket = triplet.states[static_cast<std::size_t>(slot)];
        if (basis.contains(ket))
            v(basis.index(ket)) += coeffs[static_cast<std::size_t>(slot)];
    }
    for (const Satellite& sat : backtransform_satellites(k, d, n1, n2)) {
        if (basis.contains(sat.ket))
            v(basis.index(sat.ket)) +=
                sat.scale * coeffs[static_cast<std::size_t>(sat.source)];
    }
    const double n = v.norm();
    if (n < 1e-150) throw empty_state("back-transformed eigenvector vanished");
    return v / n;
}

SpectrumMatch match_spectra(const SpectrumGrid& analytic, const EigenSystem& exact,
                            const DerivedParams& d, int block_sum_limit) {
    SpectrumMatch report;
    for (int n1 = 0; n1 <= analytic.n_max1; ++n1) {
        for (int n2 = 0; n2 <= analytic.n_max2; ++n2) {
            if (n1 + n2 > block_sum_limit) continue;
            const BlockSpectrum& spec = analytic.at(n1, n2);
            for (int row = 0; row < 3; ++row) {
                if (row == spec.excluded_row) continue;
                const Eigen::VectorXcd v = backtransformed_eigenvector(
                    analytic.kind, d, exact.basis, spec, row, n1, n2);
                int best = -1;
                double best_support = 0.0;
                for (Eigen::Index i = 0; i < exact.values.size(); ++i) {
                    const double support = std::norm(exact.vectors.col(i).dot(v));
                    if (support > best_support) {
                        best_support = support;
                        best = static_cast<int>(i);
                    }
                }
                if (best < 0 || best_support <= 0.5) {
                    std::ostringstream msg;
                    msg << "no exact eigenvector has dominant support on block (" << n1
                        << "," << n2 << ") row " << row << " (best " << best_support
                        << ")";
                    throw no_match(msg.str());
                }
                const double mu = spec.mu[static_cast<std::size_t>(row)];
                const double ex = exact.values(best);
                const double abs_gap = std::abs(mu - ex);
                const double rel_gap = abs_gap / std::max(std::abs(ex), 1e-9);
                report.gaps.push_back({n1, n2, row, mu, ex, abs_gap, rel_gap, best_support});
                report.max_abs_gap = std::max(report.max_abs_gap, abs_gap);
                report.max_rel_gap = std::max(report.max_rel_gap, rel_gap);
            }
        }
    }
    return report;
}

double population_inversion(AtomKind k, const FockBasis& basis,
                            const Eigen::VectorXcd& psi) {
    const double sign2 = (k == AtomKind::Vee) ? 1.0 : -1.0;
    double sum = 0.0;
    for (int i = 0; i < basis.dim(); ++i) {
        const int level = basis.ket(i).level;
        const double sgn = level == 1 ? 1.0 : level == 2 ? sign2 : -1.0;
        sum += sgn * std::norm(psi(i));
    }
    return sum;
}

PhotonMoments photon_moments(const FockBasis& basis, const Eigen::VectorXcd& psi,
                             FieldMode mode) {
    double mean = 0.0, second = 0.0;
    for (int i = 0; i < basis.dim(); ++i) {
        const double w = std::norm(psi(i));
        if (w == 0.0) continue;
        const Ket ket = basis.ket(i);
        const double n = mode == FieldMode::A ? ket.n1 : ket.n2;
        mean += n * w;
        second += n * n * w;
    }
    return {mean, second};
}

}  // namespace lvx::oracle
