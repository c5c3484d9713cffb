#include "levq/extremum.hpp"

#include <algorithm>
#include <cmath>

namespace levq {

namespace {

Real strip_scale(const LevyModel& m) {
    return std::min(1.0, 0.8 * std::min(-m.strip_lo, m.strip_hi));
}

std::vector<Node> gwr_q_nodes(int m, Real t) {
    std::vector<Node> out;
    for (Real q : gwr_abscissas(m, t)) out.push_back({Complex(q, 0), Complex(1, 0)});
    return out;
}

}  // namespace

SinhContour make_extremum_contour(const LevyModel& m, Real tol, Real h_min, bool lower) {
    if (m.stable_lambda)
        throw AccuracyError("extremum machinery needs a strip of positive width", 0.0);
    SinhContour c;
    const Real w = inner_omega_for_bromwich(m);
    c.omega = lower ? -w : w;
    c.b = std::clamp(0.5 * std::min(-m.strip_lo, m.strip_hi), 0.25, 1.0);
    const Real elev = std::max(0.25, 0.35 * strip_scale(m));
    c.omega1 = (lower ? -elev : elev) - c.b * std::sin(c.omega);
    c.kind = lower ? ContourKind::Lminus : ContourKind::Lplus;

    // Factor decay exponent: conservative for the atom-bearing side.
    const Real nup = m.finite_variation() ? 0.25 : std::min(1.0, m.order);
    const Real hm = std::max(h_min, 1e-8);
    GridSelect s;
    s.tol = tol;
    s.omega = c.omega;
    s.b = c.b;
    s.omega1 = c.omega1;
    s.d_cap = std::max(
        0.5 * std::min(m.cone_hi - std::abs(c.omega), std::abs(m.cone_lo) - std::abs(c.omega)),
        1e-3);
    const bool low = lower;
    s.modulus = [nup, hm, low](Complex xi) -> Real {
        const Real decay = low ? hm * xi.imag() : -hm * xi.imag();
        const Real e = std::exp(std::min(decay, 0.0));
        return e / ((1.0 + std::pow(std::abs(xi), 1.0 + nup)) * 2 * pi);
    };
    s.domain_ok = [&m](Complex xi) { return in_domain(m, xi, 0.92); };
    const GridChoice g = select_sinh_grid(s);
    c.zeta = g.zeta;
    c.n_trunc = g.n;
    c.d = g.d;
    c.est_disc_error = g.est_disc;
    c.est_trunc_error = g.est_trunc;
    if ((lower && c.elevation() >= 0) || (!lower && c.elevation() <= 0))
        throw DeformationError("extremum contour ended up on the wrong side of the pole");
    return c;
}

ExtremumEngine::ExtremumEngine(const LevyModel& m, Real T, Real tol, BackendChoice choice,
                               Real h_min)
    : model_(m), T_(T), tol_(tol), h_min_(h_min) {
    if (T <= 0) throw ParameterError("horizon T must be positive");
    backend_ = choose_backend(m, T, tol, choice);
    q_nodes_ = backend_.kind == LaplaceKind::GWR ? gwr_q_nodes(backend_.gwr_m, T)
                                                 : bromwich_nodes(backend_.contour);
    sup_contour_ = make_extremum_contour(m, tol, h_min, /*lower=*/true);
    sup_grid_ = build_whf_grid(m, q_nodes_, sup_contour_, WhfSide::plus, tol);

    const auto& xi = sup_grid_.xi_nodes;
    sup_cdf_rows_.resize(q_nodes_.size());
    sup_pdf_rows_.resize(q_nodes_.size());
    for (std::size_t iq = 0; iq < q_nodes_.size(); ++iq) {
        auto& rc = sup_cdf_rows_[iq];
        auto& rp = sup_pdf_rows_[iq];
        rc.resize(xi.size());
        rp.resize(xi.size());
        for (std::size_t k = 0; k < xi.size(); ++k) {
            const Complex base = xi[k].w * sup_grid_.values[iq][k];
            rp[k] = base;
            rc[k] = base / (Complex(0, -1) * xi[k].xi);
        }
    }
}

const ExtremumEngine::InfPart& ExtremumEngine::inf_part() const {
    if (!inf_) {
        auto part = std::make_unique<InfPart>();
        part->contour = make_extremum_contour(model_, tol_, h_min_, /*lower=*/false);
        part->grid = build_whf_grid(model_, q_nodes_, part->contour, WhfSide::minus, tol_);
        part->cdf_rows.resize(q_nodes_.size());
        const auto& xi = part->grid.xi_nodes;
        for (std::size_t iq = 0; iq < q_nodes_.size(); ++iq) {
            auto& rc = part->cdf_rows[iq];
            rc.resize(xi.size());
            for (std::size_t k = 0; k < xi.size(); ++k)
                rc[k] = xi[k].w * part->grid.values[iq][k] / (Complex(0, -1) * xi[k].xi);
        }
        inf_ = std::move(part);
    }
    return *inf_;
}

const SinhContour& ExtremumEngine::inf_contour() const { return inf_part().contour; }
const WhfGrid& ExtremumEngine::inf_grid() const { return inf_part().grid; }

// Inverse Laplace transform of q -> (1/q) * sum_k rows[iq][k] e^{-i h xi_k}.
Real ExtremumEngine::invert_rows(const std::vector<std::vector<Complex>>& rows,
                                 const std::vector<Node>& xi_nodes, Real h) const {
    const std::size_t nxi = xi_nodes.size();
    std::vector<Complex> osc(nxi);
    for (std::size_t k = 0; k < nxi; ++k)
        osc[k] = std::exp(Complex(0, -h) * xi_nodes[k].xi);
    auto inner = [&](std::size_t iq) {
        Complex s = 0;
        for (std::size_t k = 0; k < nxi; ++k) s += rows[iq][k] * osc[k];
        return s;
    };
    if (backend_.kind == LaplaceKind::GWR) {
        std::vector<Real> f(q_nodes_.size());
        for (std::size_t iq = 0; iq < q_nodes_.size(); ++iq)
            f[iq] = (inner(iq) / q_nodes_[iq].xi).real();
        return gwr_extrapolate(f, T_, backend_.gwr_m);
    }
    const int n = backend_.contour.n_l;
    Real acc = 0;
    for (int j = n; j >= 0; --j) {
        const std::size_t iq = static_cast<std::size_t>(n + j);
        const auto& nd = q_nodes_[iq];
        const Complex v = nd.w * std::exp(nd.xi * T_) / nd.xi * inner(iq);
        acc += (j == 0 ? 1.0 : 2.0) * v.real();
    }
    return acc;
}

Real ExtremumEngine::sup_survival(Real h) const {
    if (h <= 0) throw ParameterError("cdf_sup: h must be positive");
    return -invert_rows(sup_cdf_rows_, sup_grid_.xi_nodes, h);
}

Real ExtremumEngine::cdf_sup(Real h) const {
    return std::clamp(1.0 - sup_survival(h), 0.0, 1.0);
}

Real ExtremumEngine::pdf_sup(Real h) const {
    if (h <= 0) throw ParameterError("pdf_sup: h must be positive");
    return std::max(invert_rows(sup_pdf_rows_, sup_grid_.xi_nodes, h), 0.0);
}

Real ExtremumEngine::inf_below(Real a) const {
    if (a >= 0) throw ParameterError("inf_below: a must be negative");
    const auto& part = inf_part();
    return std::clamp(invert_rows(part.cdf_rows, part.grid.xi_nodes, a), 0.0, 1.0);
}

Real ExtremumEngine::cdf_inf(Real h) const {
    if (h >= 0) throw ParameterError("cdf_inf: h must be negative");
    return std::clamp(1.0 - inf_below(h), 0.0, 1.0);
}

Real ExtremumEngine::cdf_drawdown(Real a) const {
    if (a <= 0) throw ParameterError("cdf_drawdown: a must be positive");
    return inf_below(-a);
}

Real cdf_sup(const LevyModel& m, Real T, Real h, Real tol, BackendChoice choice) {
    return ExtremumEngine(m, T, tol, choice, std::min(h, 1e-3)).cdf_sup(h);
}
Real pdf_sup(const LevyModel& m, Real T, Real h, Real tol, BackendChoice choice) {
    return ExtremumEngine(m, T, tol, choice, std::min(h, 1e-3)).pdf_sup(h);
}
Real cdf_inf(const LevyModel& m, Real T, Real h, Real tol, BackendChoice choice) {
    return ExtremumEngine(m, T, tol, choice, std::min(-h, 1e-3)).cdf_inf(h);
}
Real cdf_drawdown(const LevyModel& m, Real T, Real a, Real tol, BackendChoice choice) {
    return ExtremumEngine(m, T, tol, choice, std::min(a, 1e-3)).cdf_drawdown(a);
}

}  // namespace levq
