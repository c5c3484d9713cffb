#ifndef LEVQ_MODELS_HPP
#define LEVQ_MODELS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levq/types.hpp"

namespace levq {

enum class Family { BM, CGMY, NIG, VG, Merton, Meixner, RegularizedStable };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// A one-dimensional Levy process described through its characteristic
// exponent psi(xi) = -i*mu*xi + psi0(xi), together with the analyticity
// metadata (strip, cone, order, type) that drives contour selection.
// Immutable after construction; all evaluation is pure.
struct LevyModel {
    Family family = Family::BM;
    Real mu = 0.0;
    std::function<Complex(Complex)> psi0;
    Real strip_lo = -1e6;  // mu_-
    Real strip_hi = 1e6;   // mu_+
    Real cone_lo = -pi / 2;  // gamma^-_0
    Real cone_hi = pi / 2;   // gamma^+_0
    Real order = 2.0;        // nu
    bool log_order = false;  // logarithmic growth (Variance Gamma)
    Real c_inf = 0.0;
    bool signed_sl = false;
    std::optional<Real> stable_lambda;
    bool symmetric = false;  // psi0 real and even on the real line
    std::string name;
    std::vector<std::pair<std::string, Real>> params;

    Complex psi(Complex xi) const { return Complex(0, -mu) * xi + psi0(xi); }

    // Finite-variation jump part (atoms of the extremum at exponential times
    // appear only here, and only when mu != 0).
    bool finite_variation() const { return log_order || order < 1.0; }

    // Whether the Laplace contour may be sinh-deformed jointly with the
    // Fourier contour.  nu == 1 with drift is treated conservatively.
    bool bromwich_ok() const { return (!log_order && order > 1.0) || mu == 0.0; }
};

// Membership test for the analyticity domain S_(strip) + (cone U {0}),
// with the strip and cone opening scaled by `margin` toward zero.
bool in_domain(const LevyModel& m, Complex xi, Real margin = 1.0);

// psi(xi) with a finiteness check; throws NumericError on overflow, which
// normally signals contour misconfiguration.
Complex eval_psi(const LevyModel& m, Complex xi);

LevyModel make_bm(Real sigma, Real mu = 0.0);
LevyModel make_nig(Real alpha, Real beta, Real delta, Real mu = 0.0);
LevyModel make_cgmy(Real c, Real g, Real m, Real y, Real mu = 0.0);
LevyModel make_vg(Real c, Real g, Real m, Real mu);
LevyModel make_merton(Real sigma, Real lambda, Real jump_mean, Real jump_sd, Real mu = 0.0);
LevyModel make_meixner(Real a, Real b, Real d, Real mu = 0.0);
LevyModel make_regularized_stable(Real alpha, Real c, Real lambda = 1e-8, Real mu = 0.0);

// Generic factory used by the config front end.
LevyModel make_model(Family family, const std::map<std::string, Real>& params);

// Mirror process -X; its supremum is the negated infimum of X.
LevyModel mirror_model(const LevyModel& m);

// FNV-1a over the family name and parameter bit patterns; identifies the
// model in serialized table containers.
std::uint64_t model_hash(const LevyModel& m);

}  // namespace levq

#endif
