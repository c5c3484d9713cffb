#include "levq/laplace.hpp"

#include <algorithm>
#include <cmath>

namespace levq {

namespace {
constexpr Real kLn2 = 0.6931471805599453;

// Binomial coefficients as exact doubles (n <= 32 here).
Real binom(int n, int k) {
    Real v = 1;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}
}  // namespace

std::vector<Real> gwr_abscissas(int m, Real t) {
    if (m < 1) throw ParameterError("GWR order must be >= 1");
    if (t <= 0) throw ParameterError("GWR: t must be positive");
    std::vector<Real> q;
    q.reserve(static_cast<std::size_t>(2 * m));
    for (int k = 1; k <= 2 * m; ++k) q.push_back(k * kLn2 / t);
    return q;
}

Real gwr_extrapolate(std::span<const Real> f, Real t, int m) {
    if (static_cast<int>(f.size()) != 2 * m)
        throw ParameterError("GWR: need exactly 2m transform values");
    // Gaver functionals G_1..G_m; (2n)!/(n!(n-1)!) = n*C(2n,n).
    std::vector<Real> g(static_cast<std::size_t>(m));
    for (int n = 1; n <= m; ++n) {
        Real s = 0;
        for (int j = 0; j <= n; ++j)
            s += ((j % 2) ? -1.0 : 1.0) * binom(n, j) * f[static_cast<std::size_t>(n + j - 1)];
        g[static_cast<std::size_t>(n - 1)] = (n * kLn2 / t) * binom(2 * n, n) * s;
    }
    // Wynn rho: rho_k^(n) = rho_{k-2}^(n+1) + k/(rho_{k-1}^(n+1) - rho_{k-1}^(n)),
    // even columns approximate the limit.
    const int M = m;
    std::vector<Real> km2(static_cast<std::size_t>(M + 1), 0.0);  // column k-2
    std::vector<Real> km1(g.begin(), g.end());                    // column k-1 (k=1 start)
    Real best = g.back();
    for (int k = 1; k < M; ++k) {
        const std::size_t len = km1.size() - 1;
        std::vector<Real> cur(len);
        for (std::size_t n = 0; n < len; ++n) {
            Real den = km1[n + 1] - km1[n];
            if (std::abs(den) < 1e-30) den = (den >= 0 ? 1e-30 : -1e-30);
            cur[n] = km2[n + 1] + k / den;
        }
        if (k % 2 == 0 && std::isfinite(cur.front())) best = cur.front();
        km2 = std::move(km1);
        km1 = std::move(cur);
        if (km1.size() <= 1) break;
    }
    if (km1.size() >= 1 && (M - 1) % 2 == 0 && std::isfinite(km1.front())) best = km1.front();
    if (!std::isfinite(best))
        throw ExtrapolationError("Wynn rho table blew up", g.back());
    return best;
}

Real invert(const LaplaceBackend& backend, const std::function<Complex(Complex)>& transform,
            Real t) {
    if (t <= 0) throw ParameterError("invert: t must be positive");
    if (backend.kind == LaplaceKind::GWR) {
        const auto qs = gwr_abscissas(backend.gwr_m, t);
        std::vector<Real> f;
        f.reserve(qs.size());
        for (Real q : qs) f.push_back(transform(Complex(q, 0)).real());
        return gwr_extrapolate(f, t, backend.gwr_m);
    }
    const auto nodes = bromwich_nodes(backend.contour);
    const int n = backend.contour.n_l;
    Real acc = 0;
    for (int j = n; j >= 1; --j) {
        const auto& nd = nodes[static_cast<std::size_t>(n + j)];
        acc += 2.0 * (nd.w * std::exp(nd.xi * t) * transform(nd.xi)).real();
    }
    const auto& c0 = nodes[static_cast<std::size_t>(n)];
    acc += (c0.w * std::exp(c0.xi * t) * transform(c0.xi)).real();
    return acc;
}

LaplaceBackend choose_backend(const LevyModel& m, Real t, Real tol, BackendChoice choice,
                              Real inner_omega) {
    LaplaceBackend b;
    const bool want_bromwich =
        choice == BackendChoice::bromwich ||
        (choice == BackendChoice::automatic && m.bromwich_ok());
    if (!want_bromwich) {
        b.kind = LaplaceKind::GWR;
        return b;
    }
    b.kind = LaplaceKind::SinhBromwich;
    const Real w = inner_omega > 0 ? inner_omega : inner_omega_for_bromwich(m);
    b.contour = select_bromwich(m, t, tol, w, {});
    return b;
}

}  // namespace levq
