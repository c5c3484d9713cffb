#ifndef LEVQ_EXTREMUM_HPP
#define LEVQ_EXTREMUM_HPP

#include <memory>
#include <vector>

#include "levq/inversion.hpp"
#include "levq/laplace.hpp"
#include "levq/wiener_hopf.hpp"

namespace levq {

// Distributions of the running supremum, infimum and drawdown at a fixed
// horizon, through the double (Laplace x Fourier) inversion of the
// Wiener-Hopf factor representations.  Factor values are cached on the
// (q, xi) product grid at construction; per-point evaluation only recomputes
// the oscillatory factors.
class ExtremumEngine {
  public:
    ExtremumEngine(const LevyModel& m, Real T, Real tol,
                   BackendChoice choice = BackendChoice::automatic, Real h_min = 1e-4);

    Real cdf_sup(Real h) const;       // P[sup X <= h], h > 0
    Real sup_survival(Real h) const;  // 1 - cdf_sup, accurate in relative terms
    Real pdf_sup(Real h) const;
    Real cdf_inf(Real h) const;       // P[inf X >= h], h < 0
    Real inf_below(Real a) const;     // P[inf X <= a], a < 0
    Real cdf_drawdown(Real a) const;  // P[sup X - X_T >= a], a > 0

    const LevyModel& model() const { return model_; }
    Real horizon() const { return T_; }
    Real tol() const { return tol_; }
    LaplaceKind backend_kind() const { return backend_.kind; }
    const LaplaceBackend& backend() const { return backend_; }

    // Internals shared with the joint-law engine.
    const std::vector<Node>& q_nodes() const { return q_nodes_; }
    const SinhContour& sup_contour() const { return sup_contour_; }
    const SinhContour& inf_contour() const;
    const WhfGrid& sup_grid() const { return sup_grid_; }
    const WhfGrid& inf_grid() const;

  private:
    struct InfPart {
        SinhContour contour;
        WhfGrid grid;
        std::vector<std::vector<Complex>> cdf_rows;  // w*phi/(-i xi) per q
    };
    const InfPart& inf_part() const;
    Real invert_rows(const std::vector<std::vector<Complex>>& rows,
                     const std::vector<Node>& xi_nodes, Real h) const;

    LevyModel model_;
    Real T_, tol_, h_min_;
    LaplaceBackend backend_;
    std::vector<Node> q_nodes_;  // Bromwich nodes, or GWR abscissas with unit weights
    SinhContour sup_contour_;
    WhfGrid sup_grid_;
    std::vector<std::vector<Complex>> sup_cdf_rows_;  // w_k phi^{++}/(-i xi_k)
    std::vector<std::vector<Complex>> sup_pdf_rows_;  // w_k phi^{++}
    mutable std::unique_ptr<InfPart> inf_;
};

// One-shot conveniences.
Real cdf_sup(const LevyModel& m, Real T, Real h, Real tol,
             BackendChoice choice = BackendChoice::automatic);
Real pdf_sup(const LevyModel& m, Real T, Real h, Real tol,
             BackendChoice choice = BackendChoice::automatic);
Real cdf_inf(const LevyModel& m, Real T, Real h, Real tol,
             BackendChoice choice = BackendChoice::automatic);
Real cdf_drawdown(const LevyModel& m, Real T, Real a, Real tol,
                  BackendChoice choice = BackendChoice::automatic);

// Geometry used for the supremum-side Fourier contour (shared with joint).
SinhContour make_extremum_contour(const LevyModel& m, Real tol, Real h_min, bool lower);

}  // namespace levq

#endif
