#ifndef LEVQ_CONTOUR_HPP
#define LEVQ_CONTOUR_HPP

#include <functional>
#include <iosfwd>
#include <vector>

#include "levq/models.hpp"
#include "levq/types.hpp"

namespace levq {

enum class ContourKind { Lplus, Lminus, central };
enum class ContourRole { pdf, cpdf_upper, cpdf_lower };

struct Node {
    Complex xi;  // image point chi(j*zeta)
    Complex w;   // (zeta*b/2pi) * cosh(i*omega + j*zeta)
};

// Deformed integration curve chi(y) = i*omega1 + b*sinh(i*omega + y),
// discretized with step zeta and truncated at |j| <= n_trunc.
struct SinhContour {
    Real omega1 = 0, b = 1, omega = 0, zeta = 0.1;
    int n_trunc = 0;
    ContourKind kind = ContourKind::central;
    Real d = 0;  // achieved half-width of the analyticity strip in y
    Real est_disc_error = 0, est_trunc_error = 0;

    Complex point(Real y) const {
        return Complex(0, omega1) + b * std::sinh(Complex(0, omega) + y);
    }
    Complex dpoint(Real y) const { return b * std::cosh(Complex(0, omega) + y); }
    Real elevation() const { return omega1 + b * std::sin(omega); }
    Real est_error() const { return est_disc_error + est_trunc_error; }
};

std::vector<Node> contour_nodes(const SinhContour& c);
void dump_contour_csv(const SinhContour& c, std::ostream& os);

// Laplace-side curve chi^L(y) = sigma + i*b_l*sinh(i*omega_l + y).
struct BromwichContour {
    Real sigma = 1, b_l = 1, omega_l = pi / 4, zeta_l = 0.1;
    int n_l = 0;
    Real d = 0;
    Real est_disc_error = 0, est_trunc_error = 0;

    Complex point(Real y) const {
        return sigma + Complex(0, b_l) * std::sinh(Complex(0, omega_l) + y);
    }
    Real est_error() const { return est_disc_error + est_trunc_error; }
};

std::vector<Node> bromwich_nodes(const BromwichContour& c);

// Generic step/truncation selection for a sinh-discretized integral with
// fixed curve geometry.  `modulus` is |f(xi)| of the integrand without the
// cosh weight; `domain_ok` validates image points of the shifted curves.
struct GridSelect {
    Real tol = 1e-10;
    Real omega = 0, b = 1, omega1 = 0;
    Real d_cap = pi / 4;
    int n_cap = 250000;
    std::function<Real(Complex)> modulus;
    std::function<bool(Complex)> domain_ok;
};

struct GridChoice {
    Real zeta = 0.1;
    int n = 0;
    Real d = 0;
    Real h_norm = 0;
    Real est_disc = 0, est_trunc = 0;
};

GridChoice select_sinh_grid(const GridSelect& s);

// Contour selection for the Fourier inversion of e^{i*x_shift*xi - t*psi0}.
// x_shift is the oscillation coefficient (-a + t*mu).
SinhContour select_contour(const LevyModel& m, Real t, Real x_shift, ContourRole role,
                           Real tol);
inline SinhContour select_contour(const LevyModel& m, Real x_shift, ContourRole role,
                                  Real tol) {
    return select_contour(m, 1.0, x_shift, role, tol);
}

// Laplace contour paired with Fourier contours of wing angle up to
// |inner_omega|; feasibility requires max(1,nu)*|inner_omega| < pi/2 - omega_l.
// `transform_modulus` bounds |g^(q)| for the truncation scan (default: 1/|q|).
BromwichContour select_bromwich(const LevyModel& m, Real t, Real tol,
                                Real inner_omega,
                                const std::function<Real(Complex)>& transform_modulus = {});
BromwichContour select_bromwich(const LevyModel& m, Real t, Real tol);

// Wing angle for inner Fourier contours used under a sinh Bromwich contour.
Real inner_omega_for_bromwich(const LevyModel& m);

// Scan q + psi(xi) over all node pairs; throws DeformationError if the value
// approaches the cut (-inf, 0].
void verify_joint_feasibility(const LevyModel& m, const std::vector<Node>& q_nodes,
                              const std::vector<Node>& xi_nodes);

}  // namespace levq

#endif
