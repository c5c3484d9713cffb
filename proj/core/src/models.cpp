#include "levq/models.hpp"

#include <cmath>
#include <sstream>

namespace levq {

namespace {

constexpr Real kBigStrip = 1e6;

void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError("parameter constraint violated: " + what);
}

// log(cosh(z)) continued analytically across large |Re z|, where the naive
// principal log would wrap.
Complex log_cosh(Complex z) {
    const Real x = z.real();
    if (x > 0.35)
        return z + std::log(0.5 * (1.0 + std::exp(-2.0 * z)));
    if (x < -0.35)
        return -z + std::log(0.5 * (1.0 + std::exp(2.0 * z)));
    return std::log(std::cosh(z));
}

// Spot checks of the declared invariants; cheap enough to run in every factory.
void verify_model(const LevyModel& m) {
    const Real scale = std::abs(m.psi0(Complex(1.0, 0.0))) + 1.0;
    if (std::abs(m.psi0(Complex(0.0, 0.0))) > 1e-12 * scale)
        throw ParameterError(m.name + ": psi0(0) != 0");
    for (Real x : {0.7, 3.3, 11.0, 101.0}) {
        const Complex a = m.psi0(Complex(x, 0.0));
        const Complex b = m.psi0(Complex(-x, 0.0));
        if (std::abs(b - std::conj(a)) > 1e-10 * (1.0 + std::abs(a)))
            throw ParameterError(m.name + ": psi0 not Hermitian on the real line");
        if (a.real() < -1e-10 * (1.0 + std::abs(a)))
            throw ParameterError(m.name + ": Re psi0 < 0 on the real line");
        if (m.symmetric && std::abs(a.imag()) > 1e-10 * (1.0 + std::abs(a)))
            throw ParameterError(m.name + ": declared symmetric but Im psi0 != 0");
    }
    for (Real x : {1e3, 1e4}) {
        const Real re = m.psi0(Complex(x, 0.0)).real();
        const Real floor = m.log_order ? 0.5 * m.c_inf * std::log(x)
                                       : 0.5 * m.c_inf * std::pow(x, m.order);
        if (re < floor)
            throw ParameterError(m.name + ": coercivity spot check failed");
    }
    const Real expect = m.signed_sl ? pi / 4 : pi / 2;
    if (std::abs(m.cone_hi - expect) > 1e-12 || std::abs(m.cone_lo + expect) > 1e-12)
        throw ParameterError(m.name + ": cone bounds inconsistent with family class");
}

Real get_param(const std::map<std::string, Real>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw ParameterError("missing model parameter: " + key);
    return it->second;
}

Real get_param(const std::map<std::string, Real>& p, const std::string& key, Real def) {
    auto it = p.find(key);
    return it == p.end() ? def : it->second;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::BM: return "bm";
        case Family::CGMY: return "cgmy";
        case Family::NIG: return "nig";
        case Family::VG: return "vg";
        case Family::Merton: return "merton";
        case Family::Meixner: return "meixner";
        case Family::RegularizedStable: return "rstable";
    }
    return "?";
}

Family family_from_name(const std::string& s) {
    if (s == "bm") return Family::BM;
    if (s == "cgmy" || s == "kobol") return Family::CGMY;
    if (s == "nig") return Family::NIG;
    if (s == "vg") return Family::VG;
    if (s == "merton") return Family::Merton;
    if (s == "meixner") return Family::Meixner;
    if (s == "rstable" || s == "stable") return Family::RegularizedStable;
    throw ParameterError("unknown model family: " + s);
}

bool in_domain(const LevyModel& m, Complex xi, Real margin) {
    const Real lo = m.strip_lo * margin;
    const Real hi = m.strip_hi * margin;
    const Real glo = m.cone_lo * margin;
    const Real ghi = m.cone_hi * margin;
    const Real y = xi.imag();
    const Real x = std::abs(xi.real());
    if (y > lo && y < hi) return true;
    if (x <= 0.0) return false;
    if (y >= hi) return std::atan2(y - hi, x) < ghi;
    return std::atan2(y - lo, x) > glo;
}

Complex eval_psi(const LevyModel& m, Complex xi) {
    const Complex v = m.psi(xi);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericError(m.name + ": psi overflow at xi=(" +
                           std::to_string(xi.real()) + "," + std::to_string(xi.imag()) + ")");
    return v;
}

LevyModel make_bm(Real sigma, Real mu) {
    require(sigma > 0, "BM sigma > 0");
    LevyModel m;
    m.family = Family::BM;
    m.mu = mu;
    const Real s2 = sigma * sigma;
    m.psi0 = [s2](Complex xi) { return 0.5 * s2 * xi * xi; };
    m.strip_lo = -kBigStrip;
    m.strip_hi = kBigStrip;
    m.order = 2.0;
    m.c_inf = 0.5 * s2;
    m.symmetric = true;
    m.name = "bm";
    m.params = {{"sigma", sigma}, {"mu", mu}};
    verify_model(m);
    return m;
}

LevyModel make_nig(Real alpha, Real beta, Real delta, Real mu) {
    require(alpha > 0, "NIG alpha > 0");
    require(std::abs(beta) < alpha, "NIG |beta| < alpha");
    require(delta > 0, "NIG delta > 0");
    LevyModel m;
    m.family = Family::NIG;
    m.mu = mu;
    const Real gbar = std::sqrt(alpha * alpha - beta * beta);
    m.psi0 = [alpha, beta, gbar, delta](Complex xi) {
        const Complex z = beta + Complex(0, 1) * xi;
        return delta * (std::sqrt(alpha * alpha - z * z) - gbar);
    };
    m.strip_lo = beta - alpha;
    m.strip_hi = beta + alpha;
    m.order = 1.0;
    m.c_inf = delta;
    m.symmetric = (beta == 0.0);
    m.name = "nig";
    m.params = {{"alpha", alpha}, {"beta", beta}, {"delta", delta}, {"mu", mu}};
    verify_model(m);
    return m;
}

LevyModel make_cgmy(Real c, Real g, Real mm, Real y, Real mu) {
    require(c > 0, "CGMY C > 0");
    require(g > 0, "CGMY G > 0");
    require(mm > 0, "CGMY M > 0");
    require(y > 0 && y < 2 && y != 1, "CGMY Y in (0,2) \\ {1}");
    LevyModel m;
    m.family = Family::CGMY;
    m.mu = mu;
    const Real gam = std::tgamma(-y);
    const Real my = std::pow(mm, y), gy = std::pow(g, y);
    if (y < 1) {
        // Uncompensated jump exponent: mu is the pathwise drift.
        m.psi0 = [=](Complex xi) {
            const Complex iu = Complex(0, 1) * xi;
            return c * gam * (my - std::pow(mm - iu, y) + gy - std::pow(g + iu, y));
        };
    } else {
        // Compensated so that psi0'(0) = 0.
        const Real dm = y * std::pow(mm, y - 1), dg = y * std::pow(g, y - 1);
        m.psi0 = [=](Complex xi) {
            const Complex iu = Complex(0, 1) * xi;
            return c * gam * (my - std::pow(mm - iu, y) + iu * dm +
                              gy - std::pow(g + iu, y) - iu * dg);
        };
    }
    m.strip_lo = -mm;
    m.strip_hi = g;
    m.order = y;
    m.c_inf = -2.0 * c * gam * std::cos(pi * y / 2);
    m.symmetric = (g == mm);
    m.name = "cgmy";
    m.params = {{"c", c}, {"g", g}, {"m", mm}, {"y", y}, {"mu", mu}};
    verify_model(m);
    return m;
}

LevyModel make_vg(Real c, Real g, Real mm, Real mu) {
    require(c > 0, "VG c > 0");
    require(g > 0, "VG G > 0");
    require(mm > 0, "VG M > 0");
    if (mu == 0.0)
        throw UnsupportedModelError("driftless Variance Gamma is not supported");
    LevyModel m;
    m.family = Family::VG;
    m.mu = mu;
    m.psi0 = [=](Complex xi) {
        const Complex iu = Complex(0, 1) * xi;
        return c * (std::log(mm - iu) - std::log(mm) + std::log(g + iu) - std::log(g));
    };
    m.strip_lo = -mm;
    m.strip_hi = g;
    m.order = 1.0;
    m.log_order = true;
    m.c_inf = 2.0 * c;
    m.symmetric = (g == mm);
    m.name = "vg";
    m.params = {{"c", c}, {"g", g}, {"m", mm}, {"mu", mu}};
    verify_model(m);
    return m;
}

LevyModel make_merton(Real sigma, Real lambda, Real jump_mean, Real jump_sd, Real mu) {
    require(sigma > 0, "Merton sigma > 0");
    require(lambda > 0, "Merton lambda > 0");
    require(jump_sd > 0, "Merton jump_sd > 0");
    LevyModel m;
    m.family = Family::Merton;
    m.mu = mu;
    const Real s2 = sigma * sigma, j2 = jump_sd * jump_sd;
    m.psi0 = [=](Complex xi) {
        return 0.5 * s2 * xi * xi +
               lambda * (1.0 - std::exp(Complex(0, jump_mean) * xi - 0.5 * j2 * xi * xi));
    };
    m.strip_lo = -kBigStrip;
    m.strip_hi = kBigStrip;
    m.cone_lo = -pi / 4;
    m.cone_hi = pi / 4;
    m.order = 2.0;
    m.c_inf = 0.5 * s2;
    m.signed_sl = true;
    m.symmetric = (jump_mean == 0.0);
    m.name = "merton";
    m.params = {{"sigma", sigma}, {"lambda", lambda},
                {"jump_mean", jump_mean}, {"jump_sd", jump_sd}, {"mu", mu}};
    verify_model(m);
    return m;
}

LevyModel make_meixner(Real a, Real b, Real d, Real mu) {
    require(a > 0, "Meixner a > 0");
    require(b > -pi && b < pi, "Meixner b in (-pi, pi)");
    require(d > 0, "Meixner d > 0");
    LevyModel m;
    m.family = Family::Meixner;
    m.mu = mu;
    const Real lncosb2 = std::log(std::cos(b / 2));
    m.psi0 = [=](Complex xi) {
        return 2.0 * d * (log_cosh(0.5 * (a * xi - Complex(0, b))) - lncosb2);
    };
    m.strip_lo = (b - pi) / a;
    m.strip_hi = (b + pi) / a;
    m.cone_lo = -pi / 4;
    m.cone_hi = pi / 4;
    m.order = 1.0;
    m.c_inf = a * d;
    m.signed_sl = true;
    m.symmetric = (b == 0.0);
    m.name = "meixner";
    m.params = {{"a", a}, {"b", b}, {"d", d}, {"mu", mu}};
    verify_model(m);
    return m;
}

LevyModel make_regularized_stable(Real alpha, Real c, Real lambda, Real mu) {
    require(alpha > 0 && alpha < 2, "regularized stable alpha in (0,2)");
    require(c > 0, "regularized stable c > 0");
    require(lambda > 0, "regularized stable lambda > 0");
    LevyModel m;
    m.family = Family::RegularizedStable;
    m.mu = mu;
    const Real shift = std::pow(lambda, alpha);
    m.psi0 = [=](Complex xi) {
        return c * (std::pow(lambda * lambda + xi * xi, 0.5 * alpha) - shift);
    };
    m.strip_lo = -lambda;
    m.strip_hi = lambda;
    m.order = alpha;
    m.c_inf = c;
    m.stable_lambda = lambda;
    m.symmetric = true;
    m.name = "rstable";
    m.params = {{"alpha", alpha}, {"c", c}, {"lambda", lambda}, {"mu", mu}};
    verify_model(m);
    return m;
}

LevyModel make_model(Family family, const std::map<std::string, Real>& p) {
    switch (family) {
        case Family::BM:
            return make_bm(get_param(p, "sigma"), get_param(p, "mu", 0.0));
        case Family::NIG:
            return make_nig(get_param(p, "alpha"), get_param(p, "beta", 0.0),
                            get_param(p, "delta"), get_param(p, "mu", 0.0));
        case Family::CGMY:
            return make_cgmy(get_param(p, "c"), get_param(p, "g"), get_param(p, "m"),
                             get_param(p, "y"), get_param(p, "mu", 0.0));
        case Family::VG:
            return make_vg(get_param(p, "c"), get_param(p, "g"), get_param(p, "m"),
                           get_param(p, "mu", 0.0));
        case Family::Merton:
            return make_merton(get_param(p, "sigma"), get_param(p, "lambda"),
                               get_param(p, "jump_mean", 0.0), get_param(p, "jump_sd"),
                               get_param(p, "mu", 0.0));
        case Family::Meixner:
            return make_meixner(get_param(p, "a"), get_param(p, "b", 0.0),
                                get_param(p, "d"), get_param(p, "mu", 0.0));
        case Family::RegularizedStable:
            return make_regularized_stable(get_param(p, "alpha"), get_param(p, "c", 1.0),
                                           get_param(p, "lambda", 1e-8),
                                           get_param(p, "mu", 0.0));
    }
    throw ParameterError("unknown family");
}

LevyModel mirror_model(const LevyModel& m) {
    LevyModel r = m;
    r.mu = -m.mu;
    auto base = m.psi0;
    r.psi0 = [base](Complex xi) { return base(-xi); };
    r.strip_lo = -m.strip_hi;
    r.strip_hi = -m.strip_lo;
    r.cone_lo = -m.cone_hi;
    r.cone_hi = -m.cone_lo;
    r.name = m.name + "-mirror";
    return r;
}

std::uint64_t model_hash(const LevyModel& m) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
    };
    mix(m.name.data(), m.name.size());
    for (const auto& [k, v] : m.params) {
        mix(k.data(), k.size());
        mix(&v, sizeof(v));
    }
    return h;
}

}  // namespace levq
