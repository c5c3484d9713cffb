#include "levq/inversion.hpp"

#include <algorithm>
#include <cmath>

namespace levq {

namespace {

// Conjugate-paired summation: nodes satisfy xi_{-j} = -conj(xi_j) and the
// integrand is Hermitian, so the two half-sums are conjugate.
template <typename Term>
Real paired_sum(const std::vector<Node>& nodes, const std::vector<Complex>& expfac,
                Real x_shift, bool include_center, Term term) {
    const int n = (static_cast<int>(nodes.size()) - 1) / 2;
    Real acc = 0;
    for (int j = n; j >= 1; --j) {
        const std::size_t k = static_cast<std::size_t>(n + j);
        const Complex f = std::exp(Complex(0, x_shift) * nodes[k].xi) * expfac[k];
        acc += 2.0 * (term(nodes[k], f)).real();
    }
    if (include_center) {
        const std::size_t k = static_cast<std::size_t>(n);
        const Complex f = std::exp(Complex(0, x_shift) * nodes[k].xi) * expfac[k];
        acc += (term(nodes[k], f)).real();
    }
    return acc;
}

}  // namespace

Real CachedInversion::pdf_at(Real a) const {
    const Real x_shift = -a + t * mu;
    return paired_sum(nodes, expfac, x_shift, true,
                      [](const Node& nd, Complex f) { return nd.w * f; });
}

Real CachedInversion::cdf_upper_at(Real a) const {
    const Real x_shift = -a + t * mu;
    return paired_sum(nodes, expfac, x_shift, true, [](const Node& nd, Complex f) {
        return nd.w * f / (Complex(0, -1) * nd.xi);
    });
}

Real CachedInversion::survival_lower_at(Real a) const {
    const Real x_shift = -a + t * mu;
    // F = 1 + S on the lower contour, so 1 - F = -S with no cancellation.
    return -paired_sum(nodes, expfac, x_shift, true, [](const Node& nd, Complex f) {
        return nd.w * f / (Complex(0, -1) * nd.xi);
    });
}

Real CachedInversion::cdf_vp_at(Real a) const {
    const Real x_shift = -a + t * mu;
    const int n = (static_cast<int>(nodes.size()) - 1) / 2;
    const Real s = paired_sum(nodes, expfac, x_shift, false, [](const Node& nd, Complex f) {
        return nd.w * f / (Complex(0, -1) * nd.xi);
    });
    // Finite part of the even-regularized integrand at the origin node.
    const Real center = -x_shift * nodes[static_cast<std::size_t>(n)].w.real();
    return 0.5 + s + center;
}

std::pair<Real, Real> CachedInversion::cdf_pdf_upper_at(Real a) const {
    const Real x_shift = -a + t * mu;
    const int n = (static_cast<int>(nodes.size()) - 1) / 2;
    Real accF = 0, accp = 0;
    for (int j = n; j >= 0; --j) {
        const std::size_t k = static_cast<std::size_t>(n + j);
        const Complex f = std::exp(Complex(0, x_shift) * nodes[k].xi) * expfac[k];
        const Complex base = nodes[k].w * f;
        const Real mult = (j == 0) ? 1.0 : 2.0;
        accp += mult * base.real();
        accF += mult * (base / (Complex(0, -1) * nodes[k].xi)).real();
    }
    return {accF, accp};
}

std::pair<Real, Real> CachedInversion::survival_pdf_lower_at(Real a) const {
    const Real x_shift = -a + t * mu;
    const int n = (static_cast<int>(nodes.size()) - 1) / 2;
    Real accS = 0, accp = 0;
    for (int j = n; j >= 0; --j) {
        const std::size_t k = static_cast<std::size_t>(n + j);
        const Complex f = std::exp(Complex(0, x_shift) * nodes[k].xi) * expfac[k];
        const Complex base = nodes[k].w * f;
        const Real mult = (j == 0) ? 1.0 : 2.0;
        accp += mult * base.real();
        accS -= mult * (base / (Complex(0, -1) * nodes[k].xi)).real();
    }
    return {accS, accp};
}

CachedInversion build_cached(const LevyModel& m, Real t, Real x_shift, ContourRole role,
                             Real tol) {
    CachedInversion c;
    c.contour = select_contour(m, t, x_shift, role, tol);
    c.nodes = contour_nodes(c.contour);
    c.t = t;
    c.mu = m.mu;
    c.expfac.reserve(c.nodes.size());
    for (const auto& nd : c.nodes) {
        const Complex e = std::exp(-t * m.psi0(nd.xi));
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw NumericError("characteristic factor overflowed on the contour");
        c.expfac.push_back(e);
    }
    return c;
}

InversionEngine::InversionEngine(const LevyModel& m, Real t, Real tol)
    : model_(m), t_(t), tol_(tol), stable_(m.stable_lambda.has_value()) {
    if (t <= 0) throw ParameterError("horizon t must be positive");
    if (stable_) {
        central_ = build_cached(m, t, 0.0, ContourRole::pdf, tol);
        central_.vp_symmetric = true;
        return;
    }
    // Contours selected at vanishing oscillation stay valid for every a on
    // their side: the oscillatory factor only improves the decay.
    pdf_plus_ = build_cached(m, t, 1e-12, ContourRole::pdf, tol);
    pdf_minus_ = build_cached(m, t, -1e-12, ContourRole::pdf, tol);
    cdf_upper_ = build_cached(m, t, 1e-12, ContourRole::cpdf_upper, tol);
    cdf_lower_ = build_cached(m, t, -1e-12, ContourRole::cpdf_lower, tol);
}

Real InversionEngine::pdf(Real a) const {
    const Real x_shift = -a + t_ * model_.mu;
    Real v;
    if (stable_)
        v = central_.pdf_at(a);
    else
        v = (x_shift >= 0 ? pdf_plus_ : pdf_minus_).pdf_at(a);
    return std::max(v, 0.0);
}

Real InversionEngine::cdf(Real a) const {
    const Real x_shift = -a + t_ * model_.mu;
    Real v;
    if (stable_)
        v = central_.cdf_vp_at(a);
    else if (x_shift >= 0)
        v = cdf_upper_.cdf_upper_at(a);
    else
        v = 1.0 - cdf_lower_.survival_lower_at(a);
    return std::clamp(v, 0.0, 1.0);
}

Real InversionEngine::survival(Real a) const {
    const Real x_shift = -a + t_ * model_.mu;
    Real v;
    if (stable_)
        v = 1.0 - central_.cdf_vp_at(a);
    else if (x_shift >= 0)
        v = 1.0 - cdf_upper_.cdf_upper_at(a);
    else
        v = cdf_lower_.survival_lower_at(a);
    return std::clamp(v, 0.0, 1.0);
}

Real InversionEngine::est_error() const {
    if (stable_) return central_.est_error();
    return std::max(std::max(pdf_plus_.est_error(), pdf_minus_.est_error()),
                    std::max(cdf_upper_.est_error(), cdf_lower_.est_error()));
}

Real pdf_x(const LevyModel& m, Real t, Real a, Real tol) {
    if (t <= 0) throw ParameterError("pdf_x: t must be positive");
    if (m.stable_lambda) {
        const auto c = build_cached(m, t, 0.0, ContourRole::pdf, tol);
        return std::max(c.pdf_at(a), 0.0);
    }
    const Real x_shift = -a + t * m.mu;
    const auto c = build_cached(m, t, x_shift, ContourRole::pdf, tol);
    return std::max(c.pdf_at(a), 0.0);
}

Real cdf_x(const LevyModel& m, Real t, Real a, Real tol) {
    if (t <= 0) throw ParameterError("cdf_x: t must be positive");
    if (m.stable_lambda) {
        auto c = build_cached(m, t, 0.0, ContourRole::pdf, tol);
        c.vp_symmetric = true;
        return std::clamp(c.cdf_vp_at(a), 0.0, 1.0);
    }
    const Real x_shift = -a + t * m.mu;
    if (x_shift >= 0) {
        const auto c = build_cached(m, t, x_shift, ContourRole::cpdf_upper, tol);
        return std::clamp(c.cdf_upper_at(a), 0.0, 1.0);
    }
    const auto c = build_cached(m, t, x_shift, ContourRole::cpdf_lower, tol);
    return std::clamp(1.0 - c.survival_lower_at(a), 0.0, 1.0);
}

TailArray build_tail_array(const LevyModel& m, Real t, TailSide side, Real tol) {
    TailArray tail;
    tail.side = side;
    if (m.stable_lambda) {
        tail.cached = build_cached(m, t, 0.0, ContourRole::pdf, tol);
        tail.cached.vp_symmetric = true;
        return tail;
    }
    if (side == TailSide::left)
        tail.cached = build_cached(m, t, 1e-12, ContourRole::cpdf_upper, tol);
    else
        tail.cached = build_cached(m, t, -1e-12, ContourRole::cpdf_lower, tol);
    return tail;
}

std::pair<Real, Real> TailArray::cdf_and_pdf(Real a) const {
    if (cached.vp_symmetric) return {cached.cdf_vp_at(a), cached.pdf_at(a)};
    if (side == TailSide::left) return cached.cdf_pdf_upper_at(a);
    auto [s, p] = cached.survival_pdf_lower_at(a);
    return {1.0 - s, p};
}

std::pair<Real, Real> TailArray::survival_and_pdf(Real a) const {
    if (cached.vp_symmetric) return {1.0 - cached.cdf_vp_at(a), cached.pdf_at(a)};
    if (side == TailSide::left) {
        auto [f, p] = cached.cdf_pdf_upper_at(a);
        return {1.0 - f, p};
    }
    return cached.survival_pdf_lower_at(a);
}

Real model_mean(const LevyModel& m, Real t) {
    const Real h = 1e-5;
    const Complex d1 = (m.psi0(Complex(h, 0)) - m.psi0(Complex(-h, 0))) / (2 * h);
    return t * (m.mu - d1.imag());
}

Real model_std(const LevyModel& m, Real t) {
    const Real h = 1e-4;
    const Complex d2 =
        (m.psi0(Complex(h, 0)) - 2.0 * m.psi0(Complex(0, 0)) + m.psi0(Complex(-h, 0))) /
        (h * h);
    return std::sqrt(std::max(t * d2.real(), 0.0));
}

}  // namespace levq
