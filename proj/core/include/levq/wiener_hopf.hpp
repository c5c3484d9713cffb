#ifndef LEVQ_WIENER_HOPF_HPP
#define LEVQ_WIENER_HOPF_HPP

#include <vector>

#include "levq/contour.hpp"
#include "levq/models.hpp"
#include "levq/types.hpp"

namespace levq {

enum class WhfSide { plus, minus };
enum class AtomKind { none, plus, minus };

struct WhfValue {
    Complex q, xi, phi_plus, phi_minus;
};

// eta-contour with the exponent values cached; the rail is q-independent, so
// one rail serves every Laplace abscissa.
struct WhfRail {
    SinhContour contour;
    std::vector<Node> nodes;
    std::vector<Complex> psi_full;  // psi(eta_j)
    std::vector<Complex> psi0_val;  // psi0(eta_j)
    bool lower = true;              // below 0 (phi_plus rail) or above (phi_minus)
};

// Standalone rail below/above the origin.
WhfRail build_phi_rail(const LevyModel& m, bool lower, Real tol);
// Rail running parallel to a given xi-contour, vertically offset so the
// kernel pole eta = xi stays off the rail for every xi node.
WhfRail offset_rail(const LevyModel& m, const SinhContour& xi_contour, Real gap, bool lower,
                    Real tol);

// Per-q data on a rail: branch-tracked logarithms of 1 + psi(eta)/q
// (generic) or 1 + psi0(eta)/(q - i*mu*eta) (finite-variation form).
struct WhfSlice {
    Complex q;
    std::vector<Complex> logs;
    bool finvar = false;
};
WhfSlice make_generic_slice(const WhfRail& rail, const LevyModel& m, Complex q);
WhfSlice make_finvar_slice(const WhfRail& rail, const LevyModel& m, Complex q);

// phi^+ (rail below xi) or phi^- (rail above xi) from a generic slice.
Complex phi_from_slice(const WhfRail& rail, const WhfSlice& slice, Complex xi, WhfSide side);
// Finite-variation representation q/(q - i*mu*xi) * exp(...) from a finvar slice.
Complex phi_finvar_from_slice(const WhfRail& rail, const WhfSlice& slice, const LevyModel& m,
                              Complex xi, WhfSide side);
// Atom mass from a finvar slice on the opposite-side rail.
Real atom_from_slice(const WhfRail& rail, const WhfSlice& slice, WhfSide side);

Complex phi_plus(const LevyModel& m, Complex q, Complex xi, Real tol);
Complex phi_minus(const LevyModel& m, Complex q, Complex xi, Real tol);
Real atom_mass(const LevyModel& m, Real q, WhfSide side, Real tol);
Complex phi_decayed(const LevyModel& m, Complex q, Complex xi, WhfSide side, Real tol);

AtomKind atom_kind(const LevyModel& m);

// Ladder-time normalization kappa(q,0): exp of the contour integral of
// log((q+psi)/(1+psi))/xi over a curve below the origin.  Satisfies
// kappa(q,0)*kappa^(q,0) = q with the mirror factor, and equals sqrt(q) for
// symmetric processes.
Complex kappa0(const LevyModel& m, Complex q, Real tol);
Complex kappa0_from_rail(const WhfRail& rail, const LevyModel& m, Complex q);

// Cached factor values on a (q, xi) product grid.
struct WhfGrid {
    std::vector<Node> q_nodes;
    std::vector<Node> xi_nodes;
    std::vector<std::vector<Complex>> values;  // [iq][ixi] = phi^{++} or phi^{--}
    std::vector<Real> atoms;                   // per q node
    std::vector<Complex> kappa;                // kappa(q,0) per q node
    AtomKind kind = AtomKind::none;
    WhfSide side = WhfSide::plus;
};

WhfGrid build_whf_grid(const LevyModel& m, const std::vector<Node>& q_nodes,
                       const SinhContour& xi_contour, WhfSide side, Real tol,
                       bool with_kappa = false);

void dump_whf_grid_csv(const WhfGrid& g, std::ostream& os);

}  // namespace levq

#endif
