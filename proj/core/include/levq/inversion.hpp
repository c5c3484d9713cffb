#ifndef LEVQ_INVERSION_HPP
#define LEVQ_INVERSION_HPP

#include <utility>
#include <vector>

#include "levq/contour.hpp"
#include "levq/models.hpp"
#include "levq/types.hpp"

namespace levq {

enum class TailSide { left, right };

// Contour nodes with the horizon-dependent factors e^{-t*psi0(xi_j)} cached,
// so that repeated evaluation at many abscissas only recomputes the
// oscillatory factor e^{i(-a+t*mu)*xi_j}.
struct CachedInversion {
    SinhContour contour;
    std::vector<Node> nodes;
    std::vector<Complex> expfac;
    Real t = 1, mu = 0;
    bool vp_symmetric = false;  // principal-value form on a symmetric contour

    Real pdf_at(Real a) const;
    Real cdf_upper_at(Real a) const;     // contour above 0: value = integral
    Real survival_lower_at(Real a) const;  // contour below 0: 1 - F, to relative accuracy
    Real cdf_vp_at(Real a) const;        // symmetric principal-value form: 1/2 + v.p.
    std::pair<Real, Real> cdf_pdf_upper_at(Real a) const;
    std::pair<Real, Real> survival_pdf_lower_at(Real a) const;

    Real est_error() const { return contour.est_error(); }
};

CachedInversion build_cached(const LevyModel& m, Real t, Real x_shift, ContourRole role,
                             Real tol);

// Stored flat-Fourier integrand arrays for quantile solves beyond the central
// grid on one side.
struct TailArray {
    CachedInversion cached;
    TailSide side = TailSide::left;

    // (F, p) in one pass over the stored nodes.
    std::pair<Real, Real> cdf_and_pdf(Real a) const;
    // (1-F, p) for the right tail, accurate in relative terms.
    std::pair<Real, Real> survival_and_pdf(Real a) const;
};

// Cached per-(model, t) evaluators for both oscillation signs; the work horse
// behind table construction.
class InversionEngine {
  public:
    InversionEngine(const LevyModel& m, Real t, Real tol);

    Real pdf(Real a) const;
    Real cdf(Real a) const;
    Real survival(Real a) const;
    Real est_error() const;

    const LevyModel& model() const { return model_; }
    Real t() const { return t_; }
    Real tol() const { return tol_; }

  private:
    LevyModel model_;
    Real t_, tol_;
    bool stable_ = false;
    CachedInversion pdf_plus_, pdf_minus_;
    CachedInversion cdf_upper_, cdf_lower_;
    CachedInversion central_;  // regularized-stable path
};

Real pdf_x(const LevyModel& m, Real t, Real a, Real tol);
Real cdf_x(const LevyModel& m, Real t, Real a, Real tol);
TailArray build_tail_array(const LevyModel& m, Real t, TailSide side, Real tol);
inline std::pair<Real, Real> tail_cdf_and_pdf(const TailArray& tail, Real a) {
    return tail.cdf_and_pdf(a);
}

// Mean and standard deviation of X_t from the exponent derivatives at 0.
Real model_mean(const LevyModel& m, Real t);
Real model_std(const LevyModel& m, Real t);

}  // namespace levq

#endif
