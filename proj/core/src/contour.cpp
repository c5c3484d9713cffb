#include "levq/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace levq {

namespace {

Real clamp_tol(Real tol) {
    if (!(tol > 1e-15 && tol < 1e-2))
        throw ParameterError("tolerance must lie in (1e-15, 1e-2)");
    return tol;
}

struct Curve {
    std::function<Complex(Real, Real)> at;   // chi(y + i v)
    std::function<Complex(Real, Real)> dat;  // chi'(y + i v)
};

Curve sinh_curve(Real omega1, Real b, Real omega) {
    return {
        [=](Real y, Real v) {
            return Complex(0, omega1) + b * std::sinh(Complex(0, omega + v) + y);
        },
        [=](Real y, Real v) { return b * std::cosh(Complex(0, omega + v) + y); },
    };
}

Curve laplace_curve(Real sigma, Real b, Real omega) {
    return {
        [=](Real y, Real v) {
            return sigma + Complex(0, b) * std::sinh(Complex(0, omega + v) + y);
        },
        [=](Real y, Real v) {
            return Complex(0, b) * std::cosh(Complex(0, omega + v) + y);
        },
    };
}

struct GridSelectCtx {
    const Curve& curve;
    Real tol;
    Real d_cap;
    int n_cap;
    const std::function<Real(Complex)>& modulus;
    const std::function<bool(Complex)>& domain_ok;
    const std::function<bool(Real)>& shift_ok;  // extra predicate on the strip offset v
};

GridChoice select_grid_impl(const GridSelectCtx& s) {
    auto mod_at = [&](Real y, Real v) -> Real {
        const Complex xi = s.curve.at(y, v);
        const Real m = s.modulus(xi);
        if (!std::isfinite(m)) return std::numeric_limits<Real>::infinity();
        return m * std::abs(s.curve.dat(y, v));
    };

    // Extent of the integrand along the real y-line.
    Real peak = 0, y_max = 1.0;
    {
        const Real step = 0.25;
        for (int k = 0;; ++k) {
            const Real y = k * step;
            const Real m = std::max(mod_at(y, 0), mod_at(-y, 0));
            if (std::isfinite(m)) peak = std::max(peak, m);
            if (k > 8 && m <= peak * 1e-18 + 1e-300) {
                y_max = y;
                break;
            }
            if (y > 120.0) {
                y_max = y;
                break;
            }
        }
    }
    if (peak == 0) {
        GridChoice g;
        g.zeta = 0.25;
        g.n = 8;
        g.d = s.d_cap;
        return g;
    }

    auto feasible = [&](Real v) -> bool {
        if (s.shift_ok && !(s.shift_ok(v) && s.shift_ok(-v))) return false;
        const int S = 33;
        for (int i = 0; i < S; ++i) {
            const Real y = y_max * i / (S - 1);
            for (const Real ys : {y, -y}) {
                for (const Real vs : {v, -v}) {
                    const Complex xi = s.curve.at(ys, vs);
                    if (s.domain_ok && !s.domain_ok(xi)) return false;
                    const Real m = mod_at(ys, vs);
                    if (!std::isfinite(m) || m > peak * 1e12 + 1e12) return false;
                }
            }
        }
        return true;
    };

    Real d_feas;
    if (feasible(s.d_cap)) {
        d_feas = s.d_cap;
    } else {
        Real lo = s.d_cap * 1e-3, hi = s.d_cap;
        if (!feasible(lo))
            throw AccuracyError("no usable analyticity strip for the transformed integrand",
                                peak);
        for (int it = 0; it < 40; ++it) {
            const Real mid = 0.5 * (lo + hi);
            (feasible(mid) ? lo : hi) = mid;
        }
        d_feas = lo;
    }
    const Real d = 0.85 * d_feas;

    // Hardy-norm estimate along the strip edges, 32-node coarse trapezoid.
    Real h_norm = 0;
    {
        const int S = 32;
        const Real dy = 2 * y_max / (S - 1);
        for (int i = 0; i < S; ++i) {
            const Real y = -y_max + i * dy;
            const Real a = mod_at(y, d), bm = mod_at(y, -d);
            if (std::isfinite(a)) h_norm += a * dy;
            if (std::isfinite(bm)) h_norm += bm * dy;
        }
    }

    GridChoice g;
    g.d = d;
    g.h_norm = h_norm;
    const Real target = 0.5 * s.tol;
    const Real arg = std::max(h_norm, target) / target;
    g.zeta = std::min(2 * pi * d / std::log1p(arg), 0.5);

    // Truncation: walk outward in steps of 8 nodes until the weighted term
    // stays below tol/10 (double-exponential or plain exponential decay makes
    // the overshoot cheap).
    const Real thr = s.tol / 10.0;
    int n = 8;
    while (n < s.n_cap) {
        const Real m0 = std::max(mod_at(n * g.zeta, 0), mod_at(-n * g.zeta, 0)) * g.zeta;
        if (m0 < thr) {
            const Real m1 =
                std::max(mod_at((n + 4) * g.zeta, 0), mod_at(-(n + 4) * g.zeta, 0)) * g.zeta;
            if (m1 < thr) break;
        }
        n += 8;
    }
    if (n >= s.n_cap)
        throw AccuracyError("node cap exceeded while scanning for truncation", peak);
    g.n = n;
    g.est_trunc = 4.0 * std::max(mod_at(n * g.zeta, 0), mod_at(-n * g.zeta, 0)) * g.zeta;
    const Real e = std::exp(-2 * pi * d / g.zeta);
    g.est_disc = h_norm * e / (1 - e);
    return g;
}

}  // namespace

GridChoice select_sinh_grid(const GridSelect& s) {
    const Curve c = sinh_curve(s.omega1, s.b, s.omega);
    static const std::function<bool(Real)> no_shift_pred;
    GridSelectCtx ctx{c, s.tol, s.d_cap, s.n_cap, s.modulus, s.domain_ok, no_shift_pred};
    return select_grid_impl(ctx);
}

std::vector<Node> contour_nodes(const SinhContour& c) {
    std::vector<Node> out;
    out.reserve(2 * c.n_trunc + 1);
    const Real scale = c.zeta * c.b / (2 * pi);
    for (int j = -c.n_trunc; j <= c.n_trunc; ++j) {
        const Complex arg = Complex(0, c.omega) + j * c.zeta;
        out.push_back({Complex(0, c.omega1) + c.b * std::sinh(arg), scale * std::cosh(arg)});
    }
    return out;
}

std::vector<Node> bromwich_nodes(const BromwichContour& c) {
    std::vector<Node> out;
    out.reserve(2 * c.n_l + 1);
    const Real scale = c.zeta_l * c.b_l / (2 * pi);
    for (int j = -c.n_l; j <= c.n_l; ++j) {
        const Complex arg = Complex(0, c.omega_l) + j * c.zeta_l;
        out.push_back({c.sigma + Complex(0, c.b_l) * std::sinh(arg), scale * std::cosh(arg)});
    }
    return out;
}

void dump_contour_csv(const SinhContour& c, std::ostream& os) {
    os << "j,re_xi,im_xi,re_w,im_w\n";
    const auto nodes = contour_nodes(c);
    for (int j = -c.n_trunc; j <= c.n_trunc; ++j) {
        const auto& nd = nodes[static_cast<std::size_t>(j + c.n_trunc)];
        os << j << ',' << nd.xi.real() << ',' << nd.xi.imag() << ',' << nd.w.real() << ','
           << nd.w.imag() << '\n';
    }
}

SinhContour select_contour(const LevyModel& m, Real t, Real x_shift, ContourRole role,
                           Real tol) {
    clamp_tol(tol);
    if (t <= 0) throw ParameterError("horizon t must be positive");

    const bool stable = m.stable_lambda.has_value();
    Real geff_hi = m.cone_hi, geff_lo = m.cone_lo;
    if (!m.log_order && m.order > 1.0) {
        geff_hi = std::min(geff_hi, pi / (2 * m.order));
        geff_lo = std::max(geff_lo, -pi / (2 * m.order));
    }

    Real omega;
    if (stable)
        omega = 0.0;
    else if (x_shift > 0)
        omega = 0.5 * geff_hi;
    else if (x_shift < 0)
        omega = 0.5 * geff_lo;
    else
        omega = 0.5 * (m.cone_hi + m.cone_lo);

    const Real strip_min = std::min(-m.strip_lo, m.strip_hi);
    const Real b = stable ? 1.0 : std::clamp(0.5 * strip_min, 0.25, 1.0);

    Real elev = 0.0;
    if (!stable) {
        const Real cap = 0.45 * std::min(1.0, 0.8 * strip_min);
        if (role == ContourRole::cpdf_upper) elev = cap;
        if (role == ContourRole::cpdf_lower) elev = -cap;
    }
    const Real omega1 = elev - b * std::sin(omega);

    const auto psi0 = m.psi0;
    auto modulus = [=](Complex xi) -> Real {
        const Complex e = Complex(0, x_shift) * xi - t * psi0(xi);
        Real v = (e.real() < 700.0) ? std::exp(e.real()) : std::numeric_limits<Real>::infinity();
        if (role != ContourRole::pdf) v /= std::max(std::abs(xi), 1e-300);
        return v / (2 * pi);
    };

    std::function<bool(Complex)> domain_ok;
    if (stable) {
        domain_ok = [](Complex) { return true; };
    } else {
        domain_ok = [&m](Complex xi) { return in_domain(m, xi, 0.92); };
    }

    std::function<bool(Real)> shift_ok;
    const Real pole_margin = 0.05 * std::max(std::abs(elev), 0.1);
    if (role == ContourRole::cpdf_upper && !stable)
        shift_ok = [=](Real v) { return omega1 + b * std::sin(omega + v) > pole_margin; };
    else if (role == ContourRole::cpdf_lower && !stable)
        shift_ok = [=](Real v) { return omega1 + b * std::sin(omega + v) < -pole_margin; };

    const Real d_cap = std::max(std::min(geff_hi - omega, omega - geff_lo), 1e-3);

    const Curve curve = sinh_curve(omega1, b, omega);
    GridSelectCtx ctx{curve, tol, d_cap, 250000, modulus, domain_ok, shift_ok};
    GridChoice g = select_grid_impl(ctx);

    SinhContour c;
    c.omega1 = omega1;
    c.b = b;
    c.omega = omega;
    c.zeta = g.zeta;
    c.n_trunc = g.n;
    c.d = g.d;
    c.est_disc_error = g.est_disc;
    c.est_trunc_error = g.est_trunc;
    c.kind = role == ContourRole::pdf
                 ? ContourKind::central
                 : (role == ContourRole::cpdf_upper ? ContourKind::Lplus : ContourKind::Lminus);

    // Self-consistency probe: trapezoid vs midpoint on the actual integrand.
    // The difference tracks the discretization error even where the strip
    // bound is not sharp (weakly singular regularized-stable exponents).
    auto term = [&](Real y) -> Complex {
        const Complex xi = curve.at(y, 0);
        Complex v = std::exp(Complex(0, x_shift) * xi - t * psi0(xi));
        if (role != ContourRole::pdf) v /= Complex(0, -1) * xi;
        return v * curve.dat(y, 0);
    };
    for (int iter = 0; iter < 24; ++iter) {
        Complex s_trap = 0, s_mid = 0;
        for (int j = -c.n_trunc; j <= c.n_trunc; ++j) {
            s_trap += term(j * c.zeta);
            s_mid += term((j + 0.5) * c.zeta);
        }
        s_trap *= c.zeta / (2 * pi);
        s_mid *= c.zeta / (2 * pi);
        const Real err = 0.5 * std::abs(s_trap - s_mid);
        c.est_disc_error = err;
        if (err <= std::max(tol, std::abs(s_trap) * 5e-15)) break;
        const Real zeta_new = 0.7 * c.zeta;
        const int n_new = static_cast<int>(std::ceil(c.n_trunc * c.zeta / zeta_new)) + 8;
        if (n_new > 2000000)
            throw AccuracyError("requested tolerance unreachable on this contour",
                                std::abs(s_trap));
        c.zeta = zeta_new;
        c.n_trunc = n_new;
    }

    // Construction-time invariants: image nodes inside the model's domain and
    // the pole kept on the correct side.
    if (!stable) {
        for (const auto& nd : contour_nodes(c))
            if (!in_domain(m, nd.xi, 0.999))
                throw AccuracyError("contour node escaped the analyticity domain",
                                    std::abs(nd.xi));
        if (role == ContourRole::cpdf_upper && c.elevation() <= 0)
            throw ParameterError("upper cpdf contour must stay above the pole at 0");
        if (role == ContourRole::cpdf_lower && c.elevation() >= 0)
            throw ParameterError("lower cpdf contour must stay below the pole at 0");
    }
    return c;
}

Real inner_omega_for_bromwich(const LevyModel& m) {
    const Real nu_eff = m.log_order ? 1.0 : std::max(1.0, m.order);
    const Real budget = pi / 2 - pi / 5;
    Real w = 0.45 * budget / nu_eff;
    w = std::min(w, 0.5 * std::abs(m.cone_lo));
    return w;
}

BromwichContour select_bromwich(const LevyModel& m, Real t, Real tol, Real inner_omega,
                                const std::function<Real(Complex)>& transform_modulus) {
    clamp_tol(tol);
    if (t <= 0) throw ParameterError("horizon t must be positive");
    if (!m.bromwich_ok())
        throw DeformationError(
            "sinh deformation of the Bromwich integral is infeasible for this model "
            "(order < 1 with drift, or logarithmic order): fall back to GWR");

    const Real nu_eff = m.log_order ? 1.0 : std::max(1.0, m.order);
    const Real budget = pi / 2 - nu_eff * std::abs(inner_omega);
    if (budget < 0.15)
        throw DeformationError("inner contour angle leaves no budget for the Laplace contour");

    BromwichContour c;
    c.omega_l = std::min(pi / 5, 0.5 * budget);
    c.b_l = 1.0 / (t * std::sin(c.omega_l));
    c.sigma = c.b_l * std::sin(c.omega_l) + 0.5 / t;

    const Real cross = std::asin(std::min(1.0, 1.45 * std::sin(c.omega_l))) - c.omega_l;
    const Real d_cap =
        std::max(std::min({c.omega_l - 0.02, budget - c.omega_l - 0.02, cross}), 1e-3);

    auto tmod = transform_modulus
                    ? transform_modulus
                    : std::function<Real(Complex)>(
                          [](Complex q) { return 1.0 / std::max(std::abs(q), 1e-300); });
    auto modulus = [=](Complex q) -> Real {
        const Real re = q.real() * t;
        const Real v = (re < 700.0) ? std::exp(re) : std::numeric_limits<Real>::infinity();
        return v * tmod(q) / (2 * pi);
    };
    const Real sigma_min = 0.05 / t;
    std::function<bool(Complex)> domain_ok;  // handled by shift_ok below
    std::function<bool(Real)> shift_ok = [=, &c](Real v) {
        return c.sigma - c.b_l * std::sin(c.omega_l + v) > sigma_min;
    };

    const Curve curve = laplace_curve(c.sigma, c.b_l, c.omega_l);
    GridSelectCtx ctx{curve, tol, d_cap, 250000, modulus, domain_ok, shift_ok};
    const GridChoice g = select_grid_impl(ctx);
    c.zeta_l = g.zeta;
    c.n_l = g.n;
    c.d = g.d;
    c.est_disc_error = g.est_disc;
    c.est_trunc_error = g.est_trunc;
    return c;
}

BromwichContour select_bromwich(const LevyModel& m, Real t, Real tol) {
    const Real w = inner_omega_for_bromwich(m);
    BromwichContour c = select_bromwich(m, t, tol, w, {});
    // Default partner contour, wings down below zero, for the joint scan.
    SinhContour xi;
    xi.omega = -w;
    xi.b = std::clamp(0.5 * std::min(-m.strip_lo, m.strip_hi), 0.25, 1.0);
    xi.omega1 = -0.3 * std::min(1.0, 0.8 * std::min(-m.strip_lo, m.strip_hi)) -
                xi.b * std::sin(xi.omega);
    xi.zeta = 0.1;
    xi.n_trunc = 120;
    verify_joint_feasibility(m, bromwich_nodes(c), contour_nodes(xi));
    return c;
}

void verify_joint_feasibility(const LevyModel& m, const std::vector<Node>& q_nodes,
                              const std::vector<Node>& xi_nodes) {
    std::vector<Complex> psis;
    psis.reserve(xi_nodes.size());
    for (const auto& nd : xi_nodes) psis.push_back(eval_psi(m, nd.xi));
    for (const auto& qn : q_nodes) {
        for (const auto& p : psis) {
            const Complex z = qn.xi + p;
            const Real az = std::abs(z);
            if (az < 1e-9 * (1.0 + std::abs(qn.xi)))
                throw DeformationError("q + psi(xi) vanished on the joint grid");
            if (z.real() <= 0 && std::abs(z.imag()) < 0.02 * (-z.real()) + 1e-12)
                throw DeformationError(
                    "q + psi(xi) approached the negative real axis on the joint grid: "
                    "fall back to GWR");
        }
    }
}

}  // namespace levq
