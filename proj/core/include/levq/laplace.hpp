#ifndef LEVQ_LAPLACE_HPP
#define LEVQ_LAPLACE_HPP

#include <functional>
#include <span>
#include <vector>

#include "levq/contour.hpp"
#include "levq/models.hpp"
#include "levq/types.hpp"

namespace levq {

enum class LaplaceKind { SinhBromwich, GWR };

struct LaplaceBackend {
    LaplaceKind kind = LaplaceKind::GWR;
    BromwichContour contour;  // SinhBromwich only
    int gwr_m = 8;            // 2M transform evaluations
};

// Positive real abscissas k*ln2/t, k = 1..2m.
std::vector<Real> gwr_abscissas(int m, Real t);

// Gaver functionals of the transform values at the 2m abscissas, combined by
// Wynn's rho extrapolation.  Double precision caps the reachable accuracy
// near 1e-7 for 2m = 16.
Real gwr_extrapolate(std::span<const Real> f_at_abscissas, Real t, int m);

Real invert(const LaplaceBackend& backend,
            const std::function<Complex(Complex)>& transform, Real t);

// Backend selection: sinh Bromwich when the model admits the joint
// deformation (order >= 1, or zero drift), GWR otherwise.
enum class BackendChoice { automatic, gwr, bromwich };
LaplaceBackend choose_backend(const LevyModel& m, Real t, Real tol,
                              BackendChoice choice = BackendChoice::automatic,
                              Real inner_omega = -1.0);

}  // namespace levq

#endif
