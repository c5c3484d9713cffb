// Closed-form reference values and brute-force quadratures used to pin
// expected results. Everything here is independent of the contour machinery
// under test: plain real-axis formulas and textbook identities only.
#ifndef LEVQ_TESTS_ORACLES_HPP
#define LEVQ_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Acklam's rational approximation polished with two Newton steps.
inline double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("u outside (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (u < plow) {
        const double q = std::sqrt(-2 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (u <= phigh) {
        const double q = u - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        const double q = std::sqrt(-2 * std::log(1 - u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    for (int it = 0; it < 2; ++it) {
        const double e = normal_cdf(x) - u;
        x -= e / std::max(normal_pdf(x), 1e-300);
    }
    return x;
}

// Law of the running maximum of a drifted Brownian motion (reflection).
inline double bm_sup_cdf(double t, double h, double mu = 0.0, double sigma = 1.0) {
    if (h <= 0) return 0.0;
    const double st = sigma * std::sqrt(t);
    return normal_cdf((h - mu * t) / st) -
           std::exp(2 * mu * h / (sigma * sigma)) * normal_cdf((-h - mu * t) / st);
}

inline double bm_sup_pdf(double t, double h, double mu = 0.0, double sigma = 1.0) {
    if (h <= 0) return 0.0;
    const double st = sigma * std::sqrt(t);
    const double d1 = (h - mu * t) / st, d2 = (-h - mu * t) / st;
    const double g = std::exp(2 * mu * h / (sigma * sigma));
    return normal_pdf(d1) / st - g * (2 * mu / (sigma * sigma)) * normal_cdf(d2) +
           g * normal_pdf(d2) / st;
}

// P[X_T <= a, max <= h] for drifted Brownian motion, a <= h, h > 0.
inline double bm_joint_cdf(double t, double a, double h, double mu = 0.0,
                           double sigma = 1.0) {
    if (h <= 0) return 0.0;
    const double aa = std::min(a, h);
    const double st = sigma * std::sqrt(t);
    return normal_cdf((aa - mu * t) / st) -
           std::exp(2 * mu * h / (sigma * sigma)) * normal_cdf((aa - 2 * h - mu * t) / st);
}

inline double bm_dh_joint(double t, double a, double h, double mu = 0.0,
                          double sigma = 1.0) {
    const double st = sigma * std::sqrt(t);
    const double g = std::exp(2 * mu * h / (sigma * sigma));
    return -g * (2 * mu / (sigma * sigma)) * normal_cdf((a - 2 * h - mu * t) / st) +
           g * normal_pdf((a - 2 * h - mu * t) / st) * (2.0 / st);
}

// Argmax CDF of driftless Brownian motion on [0, T].
inline double arcsine_cdf(double t, double T) {
    if (t <= 0) return 0.0;
    if (t >= T) return 1.0;
    return 2.0 / M_PI * std::asin(std::sqrt(t / T));
}

// Conditional argmax law of driftless BM given max = h: integrates the
// classical joint density h*exp(-h^2/2s)/(pi s^{3/2} sqrt(T-s)) by
// substitution s = T sin^2(pi u/2) and composite Gauss-Legendre.
inline double bm_tau_conditional_cdf(double t, double T, double h) {
    if (t <= 0) return 0.0;
    if (t >= T) return 1.0;
    static const double gx[] = {-0.9894009349916499, -0.9445750230732326,
                                -0.8656312023878318, -0.7554044083550030,
                                -0.6178762444026438, -0.4580167776572274,
                                -0.2816035507792589, -0.0950125098376374,
                                0.0950125098376374,  0.2816035507792589,
                                0.4580167776572274,  0.6178762444026438,
                                0.7554044083550030,  0.8656312023878318,
                                0.9445750230732326,  0.9894009349916499};
    static const double gw[] = {0.0271524594117541, 0.0622535239386479,
                                0.0951585116824928, 0.1246289712555339,
                                0.1495959888165767, 0.1691565193950025,
                                0.1826034150449236, 0.1862902109277343,
                                0.1826034150449236, 0.1691565193950025,
                                0.1495959888165767, 0.1246289712555339,
                                0.0951585116824928, 0.0622535239386479,
                                0.0271524594117541};
    const double u_hi = 2.0 / M_PI * std::asin(std::sqrt(t / T));
    auto integrand = [&](double u) {
        const double s = T * std::pow(std::sin(M_PI * u / 2), 2);
        const double jac = T * (M_PI / 2) * std::sin(M_PI * u);
        if (s <= 0 || s >= T) return 0.0;
        return h * std::exp(-h * h / (2 * s)) / (M_PI * std::pow(s, 1.5) * std::sqrt(T - s)) *
               jac;
    };
    const int panels = 64;
    double acc = 0;
    for (int p = 0; p < panels; ++p) {
        const double lo = u_hi * p / panels, hi = u_hi * (p + 1) / panels;
        const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
        for (int i = 0; i < 16; ++i) acc += gw[i] * integrand(c + r * gx[i]) * r;
    }
    const double dens = std::sqrt(2.0 / (M_PI * T)) * std::exp(-h * h / (2 * T));
    return acc / dens;
}

// NIG(alpha, beta, delta*t) density shifted by mu*t, via the Bessel K1 form.
inline double nig_pdf(double x, double t, double alpha, double beta, double delta,
                      double mu) {
    const double dt = delta * t;
    const double gbar = std::sqrt(alpha * alpha - beta * beta);
    const double z = x - mu * t;
    const double g = std::sqrt(dt * dt + z * z);
    return alpha * dt / M_PI * std::exp(dt * gbar + beta * z) *
           std::cyl_bessel_k(1.0, alpha * g) / g;
}

// Flat-line Gil-Pelaez quadrature oracles (composite Simpson, no contour
// deformation): slow but independent of everything under test.
inline double flat_cdf(const std::function<std::complex<double>(double)>& psi, double mu,
                       double t, double a, double xi_max, std::size_t n) {
    const double b = -a + t * mu;
    const double h0 = 1e-6;
    const double dpsi_im = (psi(h0) - psi(-h0)).imag() / (2 * h0);
    auto f = [&](double xi) {
        if (xi == 0.0) return b - t * dpsi_im;
        const std::complex<double> v =
            std::exp(std::complex<double>(0, b * xi) - t * psi(xi));
        return v.imag() / xi;
    };
    if (n % 2 == 1) ++n;
    const double h = xi_max / static_cast<double>(n);
    double acc = f(0.0) + f(xi_max);
    for (std::size_t k = 1; k < n; ++k) acc += f(k * h) * (k % 2 ? 4.0 : 2.0);
    acc *= h / 3.0;
    return 0.5 - acc / M_PI;
}

inline double flat_pdf(const std::function<std::complex<double>(double)>& psi, double mu,
                       double t, double a, double xi_max, std::size_t n) {
    const double b = -a + t * mu;
    auto f = [&](double xi) {
        const std::complex<double> v =
            std::exp(std::complex<double>(0, b * xi) - t * psi(xi));
        return v.real();
    };
    if (n % 2 == 1) ++n;
    const double h = xi_max / static_cast<double>(n);
    double acc = f(0.0) + f(xi_max);
    for (std::size_t k = 1; k < n; ++k) acc += f(k * h) * (k % 2 ? 4.0 : 2.0);
    acc *= h / 3.0;
    return acc / M_PI;
}

// One-sample Kolmogorov-Smirnov critical value at the 99% level.
inline double ks99(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

}  // namespace oracle

#endif
