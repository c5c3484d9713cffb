#include "levq/wiener_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace levq {

namespace {

// Continuous-branch logarithm along a contour: anchored at the central node
// with the principal branch, extended by principal logs of successive ratios.
std::vector<Complex> tracked_log_seq(const std::vector<Complex>& z) {
    const int n2 = static_cast<int>(z.size());
    const int c = (n2 - 1) / 2;
    std::vector<Complex> u(static_cast<std::size_t>(n2));
    u[static_cast<std::size_t>(c)] = std::log(z[static_cast<std::size_t>(c)]);
    auto step = [&](int from, int to) {
        const Complex zf = z[static_cast<std::size_t>(from)];
        const Complex zt = z[static_cast<std::size_t>(to)];
        if (zt.real() < 0 && zf.real() < 0 && (zt.imag() < 0) != (zf.imag() < 0))
            throw BranchCutError("argument crossed the negative real axis between nodes");
        const Complex ratio = zt / zf;
        if (std::abs(std::arg(ratio)) > 2.8)
            throw BranchCutError("log increment too large between adjacent nodes");
        u[static_cast<std::size_t>(to)] = u[static_cast<std::size_t>(from)] + std::log(ratio);
    };
    for (int j = c + 1; j < n2; ++j) step(j - 1, j);
    for (int j = c - 1; j >= 0; --j) step(j + 1, j);
    return u;
}

Real strip_scale(const LevyModel& m) {
    return std::min(1.0, 0.8 * std::min(-m.strip_lo, m.strip_hi));
}

void fill_rail(WhfRail& rail, const LevyModel& m) {
    rail.nodes = contour_nodes(rail.contour);
    rail.psi_full.clear();
    rail.psi0_val.clear();
    rail.psi_full.reserve(rail.nodes.size());
    rail.psi0_val.reserve(rail.nodes.size());
    for (const auto& nd : rail.nodes) {
        const Complex p0 = m.psi0(nd.xi);
        rail.psi0_val.push_back(p0);
        rail.psi_full.push_back(Complex(0, -m.mu) * nd.xi + p0);
    }
}

// Shared step/truncation selection for exponent rails; the 1/|eta| kernel is
// the slowest-decaying use (atoms and the ladder normalization).
void select_rail_grid(WhfRail& rail, const LevyModel& m, Real tol) {
    GridSelect s;
    s.tol = tol;
    s.omega = rail.contour.omega;
    s.b = rail.contour.b;
    s.omega1 = rail.contour.omega1;
    s.d_cap = 0.5 * std::min(m.cone_hi - std::abs(rail.contour.omega),
                             std::abs(m.cone_lo) - std::abs(rail.contour.omega));
    s.d_cap = std::max(s.d_cap, 1e-3);
    const auto psi0 = m.psi0;
    const Real mu = m.mu;
    s.modulus = [psi0, mu](Complex eta) -> Real {
        const Complex p = Complex(0, -mu) * eta + psi0(eta);
        const Real a = std::abs(1.0 + p);
        return std::abs(std::log(a) + 1.0) / std::max(std::abs(eta), 1e-8);
    };
    s.domain_ok = [&m](Complex eta) { return in_domain(m, eta, 0.95); };
    const GridChoice g = select_sinh_grid(s);
    rail.contour.zeta = g.zeta;
    rail.contour.n_trunc = g.n;
    rail.contour.d = g.d;
    rail.contour.est_disc_error = g.est_disc;
    rail.contour.est_trunc_error = g.est_trunc;
}

}  // namespace

WhfRail build_phi_rail(const LevyModel& m, bool lower, Real tol) {
    if (m.stable_lambda)
        throw AccuracyError(
            "Wiener-Hopf rails need a strip of positive width; the regularized-stable "
            "strip is too thin",
            0.0);
    WhfRail rail;
    rail.lower = lower;
    rail.contour.omega = lower ? 0.5 * m.cone_lo : 0.5 * m.cone_hi;
    rail.contour.b = std::clamp(0.5 * std::min(-m.strip_lo, m.strip_hi), 0.25, 1.0);
    const Real elev = 0.4 * strip_scale(m);
    rail.contour.omega1 =
        (lower ? -elev : elev) - rail.contour.b * std::sin(rail.contour.omega);
    rail.contour.kind = lower ? ContourKind::Lminus : ContourKind::Lplus;
    select_rail_grid(rail, m, tol);
    fill_rail(rail, m);
    return rail;
}

WhfRail offset_rail(const LevyModel& m, const SinhContour& xi_contour, Real gap, bool lower,
                    Real tol) {
    WhfRail rail;
    rail.lower = lower;
    rail.contour = xi_contour;
    rail.contour.omega1 += lower ? -gap : gap;
    rail.contour.kind = lower ? ContourKind::Lminus : ContourKind::Lplus;
    select_rail_grid(rail, m, tol);
    fill_rail(rail, m);
    return rail;
}

WhfSlice make_generic_slice(const WhfRail& rail, const LevyModel& m, Complex q) {
    (void)m;
    WhfSlice s;
    s.q = q;
    std::vector<Complex> z;
    z.reserve(rail.nodes.size());
    for (std::size_t j = 0; j < rail.nodes.size(); ++j) z.push_back(1.0 + rail.psi_full[j] / q);
    s.logs = tracked_log_seq(z);
    return s;
}

WhfSlice make_finvar_slice(const WhfRail& rail, const LevyModel& m, Complex q) {
    WhfSlice s;
    s.q = q;
    s.finvar = true;
    std::vector<Complex> z;
    z.reserve(rail.nodes.size());
    for (std::size_t j = 0; j < rail.nodes.size(); ++j) {
        const Complex den = q - Complex(0, m.mu) * rail.nodes[j].xi;
        z.push_back(1.0 + rail.psi0_val[j] / den);
    }
    s.logs = tracked_log_seq(z);
    return s;
}

Complex phi_from_slice(const WhfRail& rail, const WhfSlice& slice, Complex xi, WhfSide side) {
    if (xi == Complex(0, 0)) return 1.0;
    Complex acc = 0;
    for (std::size_t j = 0; j < rail.nodes.size(); ++j) {
        const Complex eta = rail.nodes[j].xi;
        acc += rail.nodes[j].w * slice.logs[j] / (eta * (eta - xi));
    }
    acc *= xi;
    const Complex e = (side == WhfSide::plus) ? Complex(0, 1) * acc : Complex(0, -1) * acc;
    return std::exp(e);
}

Complex phi_finvar_from_slice(const WhfRail& rail, const WhfSlice& slice, const LevyModel& m,
                              Complex xi, WhfSide side) {
    if (xi == Complex(0, 0)) return 1.0;
    Complex acc = 0;
    for (std::size_t j = 0; j < rail.nodes.size(); ++j) {
        const Complex eta = rail.nodes[j].xi;
        acc += rail.nodes[j].w * slice.logs[j] / (eta * (xi - eta));
    }
    acc *= xi;
    const Complex e = (side == WhfSide::plus) ? Complex(0, -1) * acc : Complex(0, 1) * acc;
    return slice.q / (slice.q - Complex(0, m.mu) * xi) * std::exp(e);
}

Real atom_from_slice(const WhfRail& rail, const WhfSlice& slice, WhfSide side) {
    Complex acc = 0;
    for (std::size_t j = 0; j < rail.nodes.size(); ++j)
        acc += rail.nodes[j].w * slice.logs[j] / rail.nodes[j].xi;
    const Complex e = (side == WhfSide::minus) ? Complex(0, 1) * acc : Complex(0, -1) * acc;
    const Complex a = std::exp(e);
    return std::clamp(a.real(), 0.0, 1.0);
}

AtomKind atom_kind(const LevyModel& m) {
    if (!m.finite_variation() || m.mu == 0.0) return AtomKind::none;
    return m.mu > 0 ? AtomKind::minus : AtomKind::plus;
}

namespace {

// Rail placed relative to an evaluation point: below it for phi_plus, above
// for phi_minus.  Standalone rails sit at a fixed elevation; when xi lies on
// the wrong side of that elevation the rail is shifted past it.
WhfRail rail_for_point(const LevyModel& m, Complex xi, WhfSide side, Real tol) {
    WhfRail rail = build_phi_rail(m, side == WhfSide::plus, tol);
    const Real elev = rail.contour.elevation();
    const Real gap = std::max(0.4 * strip_scale(m), 0.2);
    if (side == WhfSide::plus && xi.imag() - gap < elev) {
        rail.contour.omega1 -= (elev - (xi.imag() - gap));
        select_rail_grid(rail, m, tol);
        fill_rail(rail, m);
    } else if (side == WhfSide::minus && xi.imag() + gap > elev) {
        rail.contour.omega1 += (xi.imag() + gap) - elev;
        select_rail_grid(rail, m, tol);
        fill_rail(rail, m);
    }
    for (const auto& nd : rail.nodes)
        if (std::abs(nd.xi - xi) < 0.05 * gap)
            throw ParameterError("evaluation point sits on the integration contour");
    return rail;
}

}  // namespace

Complex phi_plus(const LevyModel& m, Complex q, Complex xi, Real tol) {
    if (xi == Complex(0, 0)) return 1.0;
    const WhfRail rail = rail_for_point(m, xi, WhfSide::plus, tol);
    return phi_from_slice(rail, make_generic_slice(rail, m, q), xi, WhfSide::plus);
}

Complex phi_minus(const LevyModel& m, Complex q, Complex xi, Real tol) {
    if (xi == Complex(0, 0)) return 1.0;
    const WhfRail rail = rail_for_point(m, xi, WhfSide::minus, tol);
    return phi_from_slice(rail, make_generic_slice(rail, m, q), xi, WhfSide::minus);
}

Real atom_mass(const LevyModel& m, Real q, WhfSide side, Real tol) {
    if (q <= 0) throw ParameterError("atom_mass: q must be positive");
    const AtomKind k = atom_kind(m);
    if (k == AtomKind::none) return 0.0;
    if (side == WhfSide::minus && k != AtomKind::minus) return 0.0;
    if (side == WhfSide::plus && k != AtomKind::plus) return 0.0;
    // a^- integrates over the upper rail, a^+ over the lower one.
    const WhfRail rail = build_phi_rail(m, side == WhfSide::plus, tol);
    return atom_from_slice(rail, make_finvar_slice(rail, m, q), side);
}

Complex phi_decayed(const LevyModel& m, Complex q, Complex xi, WhfSide side, Real tol) {
    const AtomKind k = atom_kind(m);
    if (k == AtomKind::none) {
        return side == WhfSide::plus ? phi_plus(m, q, xi, tol) : phi_minus(m, q, xi, tol);
    }
    if (std::abs(q.imag()) > 1e-12 * std::abs(q))
        throw ParameterError("finite-variation decomposition requires real positive q");
    const bool atom_on_this_side = (side == WhfSide::plus) == (k == AtomKind::plus);
    if (!atom_on_this_side) {
        // Atom-free factor: the drift-split representation decays like 1/|xi|.
        const WhfRail rail = rail_for_point(m, xi, side, tol);
        return phi_finvar_from_slice(rail, make_finvar_slice(rail, m, q), m, xi, side);
    }
    const WhfRail rail = rail_for_point(m, xi, side, tol);
    const Complex phi = phi_from_slice(rail, make_generic_slice(rail, m, q), xi, side);
    const Real a = atom_from_slice(rail, make_finvar_slice(rail, m, q), side);
    return phi - a;
}

Complex kappa0_from_rail(const WhfRail& rail, const LevyModel& m, Complex q) {
    (void)m;
    std::vector<Complex> z;
    z.reserve(rail.nodes.size());
    for (std::size_t j = 0; j < rail.nodes.size(); ++j)
        z.push_back((q + rail.psi_full[j]) / (1.0 + rail.psi_full[j]));
    const auto logs = tracked_log_seq(z);
    Complex acc = 0;
    for (std::size_t j = 0; j < rail.nodes.size(); ++j)
        acc += rail.nodes[j].w * logs[j] / rail.nodes[j].xi;
    return std::exp(Complex(0, -1) * acc);
}

Complex kappa0(const LevyModel& m, Complex q, Real tol) {
    const WhfRail rail = build_phi_rail(m, true, tol);
    return kappa0_from_rail(rail, m, q);
}

WhfGrid build_whf_grid(const LevyModel& m, const std::vector<Node>& q_nodes,
                       const SinhContour& xi_contour, WhfSide side, Real tol,
                       bool with_kappa) {
    WhfGrid g;
    g.side = side;
    g.kind = atom_kind(m);
    g.q_nodes = q_nodes;
    g.xi_nodes = contour_nodes(xi_contour);

    const Real gap = std::max(0.5, xi_contour.b * std::abs(std::sin(xi_contour.omega)));
    const bool lower = (side == WhfSide::plus);
    const WhfRail rail = offset_rail(m, xi_contour, gap, lower, tol);
    verify_joint_feasibility(m, q_nodes, rail.nodes);
    verify_joint_feasibility(m, q_nodes, g.xi_nodes);

    const bool atom_here = (g.kind == AtomKind::plus && side == WhfSide::plus) ||
                           (g.kind == AtomKind::minus && side == WhfSide::minus);
    const bool finvar_repr = (g.kind != AtomKind::none) && !atom_here;

    WhfRail kappa_rail;
    if (with_kappa) {
        if (lower)
            kappa_rail = rail;
        else
            kappa_rail = build_phi_rail(m, true, tol);
    }

    g.values.resize(q_nodes.size());
    g.atoms.assign(q_nodes.size(), 0.0);
    if (with_kappa) g.kappa.resize(q_nodes.size());

    for (std::size_t iq = 0; iq < q_nodes.size(); ++iq) {
        const Complex q = q_nodes[iq].xi;
        auto& row = g.values[iq];
        row.reserve(g.xi_nodes.size());
        if (finvar_repr) {
            const WhfSlice s = make_finvar_slice(rail, m, q);
            for (const auto& xn : g.xi_nodes)
                row.push_back(phi_finvar_from_slice(rail, s, m, xn.xi, side));
        } else if (atom_here) {
            const WhfSlice su = make_generic_slice(rail, m, q);
            const WhfSlice sv = make_finvar_slice(rail, m, q);
            const Real a = atom_from_slice(rail, sv, side);
            g.atoms[iq] = a;
            for (const auto& xn : g.xi_nodes)
                row.push_back(phi_from_slice(rail, su, xn.xi, side) - a);
        } else {
            const WhfSlice s = make_generic_slice(rail, m, q);
            for (const auto& xn : g.xi_nodes)
                row.push_back(phi_from_slice(rail, s, xn.xi, side));
        }
        if (with_kappa) g.kappa[iq] = kappa0_from_rail(kappa_rail, m, q);
    }
    return g;
}

void dump_whf_grid_csv(const WhfGrid& g, std::ostream& os) {
    os << "iq,ixi,re,im\n";
    for (std::size_t iq = 0; iq < g.values.size(); ++iq)
        for (std::size_t ix = 0; ix < g.values[iq].size(); ++ix)
            os << iq << ',' << ix << ',' << g.values[iq][ix].real() << ','
               << g.values[iq][ix].imag() << '\n';
}

}  // namespace levq
