#include "lvx/effective.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lvx {

NonlinearityPair nonlinearity(AtomKind k, const DerivedParams& d, int n1, int n2) {
    const double e1 = d.eps1 * d.eps1;
    const double e2 = d.eps2 * d.eps2;
    switch (k) {
        case AtomKind::Lambda:
            return {1.0 - e1 * n1 - 0.5 * e2 * n2, 1.0 - e2 * n2 - 0.5 * e1 * n1};
        case AtomKind::Vee:
            return {1.0 - e1 * n1 - 0.5 * e2 * (1 + n2),
                    1.0 - e2 * n2 - 0.5 * e1 * (1 + n1)};
        case AtomKind::Ladder:
            return {1.0 - e1 * n1 - 0.5 * e2 * n2,
                    1.0 - 0.5 * e1 * (1 + n1) - e2 * n2};
    }
    return {1.0, 1.0};
}

TripletBasis triplet_basis(AtomKind k, int n1, int n2) {
    TripletBasis b;
    switch (k) {
        case AtomKind::Lambda:
            b.states = {Ket{1, n1, n2}, Ket{2, n1 + 1, n2}, Ket{3, n1, n2 + 1}};
            break;
        case AtomKind::Ladder:
            b.states = {Ket{1, n1, n2}, Ket{2, n1 + 1, n2}, Ket{3, n1 + 1, n2 + 1}};
            break;
        case AtomKind::Vee:
            b.states = {Ket{1, n1, n2}, Ket{2, n1 + 1, n2 - 1}, Ket{3, n1 + 1, n2}};
            b.middle_absent = (n2 == 0);
            break;
    }
    return b;
}

// ----------------------------------------------------------------- engine --

namespace {

struct ModeInfo {
    int upper, lower;  // atomic levels of the driven transition
    double g, eps;
    int photon;        // 0 -> n1, 1 -> n2
};

std::array<ModeInfo, 2> modes_for(AtomKind k, const SystemParams& p,
                                  const DerivedParams& d) {
    const TransitionMap tm = transition_map(k);
    return {ModeInfo{tm.mode_a.upper, tm.mode_a.lower, p.g1, d.eps1, 0},
            ModeInfo{tm.mode_b.upper, tm.mode_b.lower, p.g2, d.eps2, 1}};
}

int photon_count(const Ket& k, int photon) { return photon == 0 ? k.n1 : k.n2; }

Ket with_photon(Ket k, int photon, int n) {
    (photon == 0 ? k.n1 : k.n2) = n;
    return k;
}

double level_energy(const SystemParams& p, int level) {
    return level == 1 ? p.e1 : level == 2 ? p.e2 : p.e3;
}

// sigma_z^{ul} = sigma_uu - sigma_ll on |level>
double sigma_z(int level, int upper, int lower) {
    return level == upper ? 1.0 : level == lower ? -1.0 : 0.0;
}

double deformation(AtomKind k, const DerivedParams& d, int photon, int n1, int n2) {
    const NonlinearityPair f = nonlinearity(k, d, n1, n2);
    return photon == 0 ? f.f1 : f.f2;
}

}  // namespace

void apply_terms(TermGroup group, AtomKind k, const SystemParams& p,
                 const DerivedParams& d, const Ket& in,
                 const std::function<void(const Ket&, double)>& sink) {
    const auto modes = modes_for(k, p, d);
    switch (group) {
        case TermGroup::Free:
            sink(in, p.omega_f * in.n1 + p.omega_fp * in.n2 + level_energy(p, in.level));
            break;

        case TermGroup::FirstOrderShift: {
            // eps g (n sigma_z^{ul} - sigma_ll), accumulated over both modes
            double c = 0.0;
            for (const ModeInfo& m : modes) {
                const double occupied = in.level == m.lower ? 1.0 : 0.0;
                c += m.eps * m.g *
                     (photon_count(in, m.photon) * sigma_z(in.level, m.upper, m.lower) -
                      occupied);
            }
            sink(in, c);
            break;
        }

        case TermGroup::Rotating:
            for (const ModeInfo& m : modes) {
                const int n = photon_count(in, m.photon);
                if (in.level == m.upper) {  // emit: photon +1, atom drops
                    Ket out = with_photon(in, m.photon, n + 1);
                    out.level = m.lower;
                    sink(out, m.g * std::sqrt(n + 1.0));
                } else if (in.level == m.lower && n >= 1) {  // absorb
                    Ket out = with_photon(in, m.photon, n - 1);
                    out.level = m.upper;
                    sink(out, m.g * std::sqrt(static_cast<double>(n)));
                }
            }
            break;

        case TermGroup::CounterRotating:
            for (const ModeInfo& m : modes) {
                const int n = photon_count(in, m.photon);
                if (in.level == m.lower) {  // photon +1 while atom rises
                    Ket out = with_photon(in, m.photon, n + 1);
                    out.level = m.upper;
                    sink(out, m.g * std::sqrt(n + 1.0));
                } else if (in.level == m.upper && n >= 1) {
                    Ket out = with_photon(in, m.photon, n - 1);
                    out.level = m.lower;
                    sink(out, m.g * std::sqrt(static_cast<double>(n)));
                }
            }
            break;

        case TermGroup::DeformedCoupling:
            // g f(n1,n2) at the higher photon number on both directions, so
            // the two matrix-element routes agree bit for bit.
            for (const ModeInfo& m : modes) {
                const int n = photon_count(in, m.photon);
                if (in.level == m.upper) {
                    Ket out = with_photon(in, m.photon, n + 1);
                    out.level = m.lower;
                    sink(out, m.g * std::sqrt(n + 1.0) *
                                  deformation(k, d, m.photon, out.n1, out.n2));
                } else if (in.level == m.lower && n >= 1) {
                    Ket out = with_photon(in, m.photon, n - 1);
                    out.level = m.upper;
                    sink(out, m.g * std::sqrt(static_cast<double>(n)) *
                                  deformation(k, d, m.photon, in.n1, in.n2));
                }
            }
            break;
    }
}

Block build_block(AtomKind k, const SystemParams& p, const DerivedParams& d,
                  int n1, int n2) {
    Block b;
    b.basis = triplet_basis(k, n1, n2);
    for (int col = 0; col < 3; ++col) {
        if (!b.basis.slot_valid(col)) continue;
        const Ket& in = b.basis.states[static_cast<std::size_t>(col)];
        auto sink = [&](const Ket& out, double c) {
            for (int row = 0; row < 3; ++row) {
                if (!b.basis.slot_valid(row)) continue;
                if (out == b.basis.states[static_cast<std::size_t>(row)]) {
                    b.m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] += c;
                    return;
                }
            }
            // the effective Hamiltonian conserves the excitation; anything
            // else indicates a broken triplet
        };
        for (TermGroup g : {TermGroup::Free, TermGroup::FirstOrderShift,
                            TermGroup::DeformedCoupling})
            apply_terms(g, k, p, d, in, sink);
    }
    return b;
}

double frobenius(const Mat3& m) {
    double s = 0.0;
    for (const auto& row : m)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

// ------------------------------------------------- compensated arithmetic --

namespace {

// double-double value (hi + lo, non-overlapping)
struct D2 {
    double hi = 0.0, lo = 0.0;
};

inline D2 two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline D2 quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline D2 two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline D2 dd(double x) { return {x, 0.0}; }

inline D2 dd_add(D2 a, D2 b) {
    D2 s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline D2 dd_neg(D2 a) { return {-a.hi, -a.lo}; }

inline D2 dd_sub(D2 a, D2 b) { return dd_add(a, dd_neg(b)); }

inline D2 dd_mul(D2 a, D2 b) {
    D2 p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline D2 dd_div(D2 a, D2 b) {
    const double q1 = a.hi / b.hi;
    D2 r = dd_sub(a, dd_mul(dd(q1), b));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(dd(q2), b));
    const double q3 = r.hi / b.hi;
    D2 q = quick_two_sum(q1, q2);
    q.lo += q3;
    return quick_two_sum(q.hi, q.lo);
}

inline D2 dd_sqrt(D2 a) {
    if (a.hi <= 0.0) return {0.0, 0.0};
    const double s = std::sqrt(a.hi);
    const D2 r = dd_sub(a, dd_mul(dd(s), dd(s)));
    return quick_two_sum(s, r.hi / (2.0 * s));
}

struct CubicDD {
    D2 x1, x2, x3;
};

// characteristic coefficients from the matrix, products kept exact
CubicDD coefficients_dd(const Mat3& m) {
    CubicDD c;
    D2 tr = two_sum(m[0][0], m[1][1]);
    tr = dd_add(tr, dd(m[2][2]));
    c.x1 = dd_neg(tr);

    D2 x2 = dd_sub(dd_mul(dd(m[0][0]), dd(m[1][1])), dd_mul(dd(m[0][1]), dd(m[0][1])));
    x2 = dd_add(x2, dd_sub(dd_mul(dd(m[0][0]), dd(m[2][2])),
                           dd_mul(dd(m[0][2]), dd(m[0][2]))));
    x2 = dd_add(x2, dd_sub(dd_mul(dd(m[1][1]), dd(m[2][2])),
                           dd_mul(dd(m[1][2]), dd(m[1][2]))));
    c.x2 = x2;

    D2 det = dd_mul(dd(m[0][0]), dd_sub(dd_mul(dd(m[1][1]), dd(m[2][2])),
                                        dd_mul(dd(m[1][2]), dd(m[1][2]))));
    det = dd_sub(det, dd_mul(dd(m[0][1]), dd_sub(dd_mul(dd(m[0][1]), dd(m[2][2])),
                                                 dd_mul(dd(m[1][2]), dd(m[0][2])))));
    det = dd_add(det, dd_mul(dd(m[0][2]), dd_sub(dd_mul(dd(m[0][1]), dd(m[1][2])),
                                                 dd_mul(dd(m[1][1]), dd(m[0][2])))));
    c.x3 = dd_neg(det);
    return c;
}

// trigonometric Cardano estimates in plain double, with branch labels
void trig_estimates(double x1, double x2, double x3, double r[3], int branch[3]) {
    double p = x1 * x1 - 3.0 * x2;
    if (p < 0.0) p = 0.0;
    const double sp = std::sqrt(p);
    const double num = 9.0 * x1 * x2 - 2.0 * x1 * x1 * x1 - 27.0 * x3;
    const double den = 2.0 * p * sp;
    const double arg = den > 0.0 ? std::clamp(num / den, -1.0, 1.0) : 0.0;
    const double theta = std::acos(arg) / 3.0;
    struct RB { double r; int b; };
    std::array<RB, 3> rb;
    for (int L = 0; L < 3; ++L)
        rb[static_cast<std::size_t>(L)] = {
            -x1 / 3.0 + (2.0 / 3.0) * sp * std::cos(theta + 2.0 * M_PI * L / 3.0),
            L + 1};
    std::sort(rb.begin(), rb.end(), [](RB a, RB b) { return a.r < b.r; });
    for (int i = 0; i < 3; ++i) {
        r[i] = rb[static_cast<std::size_t>(i)].r;
        branch[i] = rb[static_cast<std::size_t>(i)].b;
    }
}

// evaluate P and P' at mu (Horner, double-double)
D2 poly_eval(const CubicDD& c, D2 mu) {
    return dd_add(dd_mul(dd_add(dd_mul(dd_add(mu, c.x1), mu), c.x2), mu), c.x3);
}

D2 poly_deriv(const CubicDD& c, D2 mu) {
    return dd_add(dd_mul(dd_add(dd_mul(dd(3.0), mu), dd_mul(dd(2.0), c.x1)), mu), c.x2);
}

CardanoRoots solve_cubic_dd(const CubicDD& c) {
    const double x1_d = c.x1.hi, x2_d = c.x2.hi;
    const double p_d = x1_d * x1_d - 3.0 * x2_d;
    if (p_d < -1e-12 * std::max(1.0, x1_d * x1_d)) {
        std::ostringstream msg;
        msg << "x1^2 - 3 x2 = " << p_d << " < 0: not a symmetric-matrix cubic";
        throw degenerate_cubic(msg.str());
    }

    double est[3];
    int branch[3];
    trig_estimates(x1_d, x2_d, c.x3.hi, est, branch);

    CardanoRoots out;
    out.branch = {branch[0], branch[1], branch[2]};

    const double scale = std::max({1.0, std::abs(est[0]), std::abs(est[2])});
    if (est[2] - est[0] <= 1e-13 * scale) {
        // (near-)triple root; the centroid is well conditioned
        const double r = -x1_d / 3.0;
        out.mu = {r, r, r};
        return out;
    }

    // refine the root across the wider gap, then deflate to a quadratic
    const bool iso_high = (est[1] - est[0]) < (est[2] - est[1]);
    D2 R = dd(iso_high ? est[2] : est[0]);
    for (int it = 0; it < 4; ++it) {
        const D2 dP = poly_deriv(c, R);
        if (dP.hi == 0.0) break;
        R = dd_sub(R, dd_div(poly_eval(c, R), dP));
    }
    const D2 B = dd_add(c.x1, R);
    const D2 C = dd_add(c.x2, dd_mul(R, B));
    D2 disc = dd_sub(dd_mul(B, B), dd_mul(dd(4.0), C));
    if (disc.hi < 0.0) disc = dd(0.0);
    const D2 sq = dd_sqrt(disc);
    const D2 q = dd_mul(dd(-0.5), dd_add(B, B.hi >= 0.0 ? sq : dd_neg(sq)));
    double ra, rb;
    if (q.hi != 0.0) {
        ra = q.hi;
        rb = dd_div(C, q).hi;
    } else {
        ra = rb = -B.hi / 2.0;
    }
    out.mu = {R.hi, ra, rb};
    std::sort(out.mu.begin(), out.mu.end());
    return out;
}

}  // namespace

CubicCoefficients cubic_coefficients(const Block& b) {
    const Mat3& m = b.m;
    const double tr = m[0][0] + m[1][1] + m[2][2];
    double tr2 = 0.0;  // tr(m^2) for symmetric m
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            tr2 += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                   m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    const double det =
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return {-(m[0][0] + m[1][1] + m[2][2]), (tr * tr - tr2) / 2.0, -det};
}

CardanoRoots cardano_solve(double x1, double x2, double x3) {
    return solve_cubic_dd(CubicDD{dd(x1), dd(x2), dd(x3)});
}

CardanoRoots cardano_solve(const Block& b) {
    return solve_cubic_dd(coefficients_dd(b.m));
}

// ------------------------------------------------------- eigenvectors -----

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

void fix_sign(Vec3& v) {
    for (double comp : v) {
        if (std::abs(comp) > 1e-12) {
            if (comp < 0.0)
                v = scaled(v, -1.0);
            return;
        }
    }
}

// any unit vector orthogonal to r (|r| > 0)
Vec3 orthogonal_to(const Vec3& r) {
    const Vec3 trial = std::abs(r[0]) <= std::abs(r[1]) &&
                               std::abs(r[0]) <= std::abs(r[2])
                           ? Vec3{1, 0, 0}
                       : std::abs(r[1]) <= std::abs(r[2]) ? Vec3{0, 1, 0}
                                                          : Vec3{0, 0, 1};
    Vec3 v = cross(r, trial);
    return scaled(v, 1.0 / norm(v));
}

}  // namespace

Vec3 eigen_coefficients(const Block& b, double mu) {
    const Mat3& m = b.m;
    Mat3 K = m;
    for (int i = 0; i < 3; ++i) K[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] -= mu;

    const Vec3 r0 = K[0], r1 = K[1], r2 = K[2];
    const std::array<Vec3, 3> candidates = {cross(r1, r2), cross(r2, r0), cross(r0, r1)};

    const double mnorm = std::max(frobenius(m), 1.0);
    Vec3 v{};
    double best = 0.0;
    for (const Vec3& c : candidates) {
        const double n = norm(c);
        if (n > best) {
            best = n;
            v = scaled(c, 1.0 / n);
        }
    }
    if (best <= 1e-16 * mnorm * mnorm) {
        // rank <= 1: the null space is a plane (or everything); return one
        // vector of it, orthogonality across a degenerate pair is restored
        // by block_spectrum
        const Vec3* longest = &r0;
        if (norm(r1) > norm(*longest)) longest = &r1;
        if (norm(r2) > norm(*longest)) longest = &r2;
        if (norm(*longest) > 1e-14 * mnorm)
            v = orthogonal_to(*longest);
        else
            v = {1.0, 0.0, 0.0};  // m = mu I
    }

    fix_sign(v);
    const Vec3 res = {dot(K[0], v), dot(K[1], v), dot(K[2], v)};
    if (norm(res) > 1e-8 * frobenius(m)) {
        std::ostringstream msg;
        msg << "mu = " << mu << " is not an eigenvalue (residual " << norm(res) << ")";
        throw not_an_eigenvalue(msg.str());
    }
    return v;
}

BlockSpectrum block_spectrum(AtomKind k, const SystemParams& p,
                             const DerivedParams& d, int n1, int n2) {
    const Block b = build_block(k, p, d, n1, n2);
    const CardanoRoots roots = cardano_solve(b);

    BlockSpectrum s;
    s.mu = roots.mu;
    s.branch = roots.branch;
    for (int L = 0; L < 3; ++L)
        s.coeffs[static_cast<std::size_t>(L)] = eigen_coefficients(b, s.mu[static_cast<std::size_t>(L)]);

    // restore orthogonality inside (near-)degenerate groups
    const double tol = 1e-6 * std::max(1.0, frobenius(b.m));
    const bool d01 = std::abs(s.mu[1] - s.mu[0]) <= tol;
    const bool d12 = std::abs(s.mu[2] - s.mu[1]) <= tol;
    if (d01 && d12) {
        s.coeffs = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    } else if (d01 || d12) {
        const int i = d01 ? 1 : 2;   // second member of the pair
        const int j = i - 1;         // first member
        const int k = d01 ? 2 : 0;   // the distinct eigenvector
        auto& vi = s.coeffs[static_cast<std::size_t>(i)];
        const auto& vj = s.coeffs[static_cast<std::size_t>(j)];
        const double ov = dot(vi, vj);
        for (int c = 0; c < 3; ++c) vi[static_cast<std::size_t>(c)] -= ov * vj[static_cast<std::size_t>(c)];
        const double n = norm(vi);
        if (n > 0.5) {
            vi = scaled(vi, 1.0 / n);
        } else {
            // both solves hit the same plane vector; the degenerate plane is
            // the complement of the distinct eigenvector
            vi = cross(vj, s.coeffs[static_cast<std::size_t>(k)]);
            vi = scaled(vi, 1.0 / norm(vi));
        }
        fix_sign(vi);
    }

    if (b.basis.middle_absent) {
        // the zero row/column makes e2 an exact eigenvector; mask it
        int worst = 0;
        double wmax = -1.0;
        for (int L = 0; L < 3; ++L) {
            const double w = std::abs(s.coeffs[static_cast<std::size_t>(L)][1]);
            if (w > wmax) {
                wmax = w;
                worst = L;
            }
        }
        s.excluded_row = worst;
    }
    return s;
}

SpectrumGrid build_spectra(AtomKind k, const SystemParams& p, const DerivedParams& d) {
    SpectrumGrid g;
    g.kind = k;
    g.n_max1 = p.n_max1;
    g.n_max2 = p.n_max2;
    g.blocks.reserve(static_cast<std::size_t>(p.n_max1 + 1) * (p.n_max2 + 1));
    for (int n1 = 0; n1 <= p.n_max1; ++n1)
        for (int n2 = 0; n2 <= p.n_max2; ++n2)
            g.blocks.push_back(block_spectrum(k, p, d, n1, n2));
    return g;
}

}  // namespace lvx
