#include "famedkit/special.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace famedkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// B_{2k} / (2k+1)!
const std::array<double, 40>& bernoulli_over_factorial() {
    static const std::array<double, 40> table = [] {
        std::array<double, 40> t{};
        for (int k = 1; k <= 40; ++k)
            t[k - 1] = boost::math::bernoulli_b2n<double>(k) / boost::math::factorial<double>(2 * k + 1);
        return t;
    }();
    return table;
}

// |z| <= 1, Re z <= 1/2
cplx dilog_core(cplx z) {
    cplx u = -std::log(1.0 - z);
    cplx u2 = u * u;
    cplx sum = u - u2 / 4.0;
    cplx p = u;
    const auto& c = bernoulli_over_factorial();
    for (size_t k = 0; k < c.size(); ++k) {
        p *= u2;
        cplx term = c[k] * p;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

template <int P>
GaussRule make_rule() {
    using G = boost::math::quadrature::gauss<double, P>;
    GaussRule r;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            r.x.push_back(0.0);
            r.w.push_back(w[i]);
            continue;
        }
        r.x.push_back(a[i]);
        r.w.push_back(w[i]);
        r.x.push_back(-a[i]);
        r.w.push_back(w[i]);
    }
    return r;
}

}

const GaussRule& gauss_rule(int points) {
    static const GaussRule r10 = make_rule<10>();
    static const GaussRule r15 = make_rule<15>();
    static const GaussRule r20 = make_rule<20>();
    static const GaussRule r30 = make_rule<30>();
    switch (points) {
        case 10: return r10;
        case 15: return r15;
        case 20: return r20;
        case 30: return r30;
        default: throw std::invalid_argument("unsupported Gauss rule size");
    }
}

cplx dilog(cplx z) {
    if (z.imag() == 0.0 && z.real() > 1.0) throw std::domain_error("dilog: argument on the branch cut [1, inf)");
    if (z == 0.0) return 0.0;
    if (z == 1.0) return kPi * kPi / 6.0;
    if (std::abs(z) > 1.0) {
        cplx l = std::log(-z);
        return -dilog(1.0 / z) - kPi * kPi / 6.0 - 0.5 * l * l;
    }
    if (z.real() > 0.5) return -dilog_core(1.0 - z) + kPi * kPi / 6.0 - std::log(z) * std::log(1.0 - z);
    return dilog_core(z);
}

double bloch_wigner(cplx z) {
    if (z.imag() == 0.0) return 0.0;
    if (std::abs(z) > 1.0) return -bloch_wigner(1.0 / z);
    return dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

double clausen2(double theta) {
    double t = std::remainder(theta, 2 * kPi);
    if (t == 0.0) return 0.0;
    double s = t < 0 ? -1.0 : 1.0;
    t = std::abs(t);
    // Cl2(t) = t - t log t + sum |B_2k| t^(2k+1) / (2k (2k+1)!)
    double sum = t - t * std::log(t);
    double p = t;
    const auto& c = bernoulli_over_factorial();
    for (size_t k = 0; k < c.size(); ++k) {
        p *= t * t;
        double term = std::abs(c[k]) * p / (2.0 * (k + 1));
        sum += term;
        if (term < 1e-18) break;
    }
    return s * sum;
}

double lobachevsky(double x) {
    return 0.5 * clausen2(2 * x);
}

QDilogParams::QDilogParams(double b_) : b(b_) {
    if (!(b > 0) || !std::isfinite(b)) throw std::invalid_argument("b must be a positive real");
}

namespace {

cplx small_series(cplx x) {
    cplx x2 = x * x;
    return x2 * (-1.0 / 6 + x2 * (1.0 / 120 + x2 * (-1.0 / 5040 + x2 * (1.0 / 362880 - x2 / 39916800.0))));
}

// u / sinh(u) - 1 for real u >= 0
double sinhc_m1(double u) {
    if (u < 0.1) {
        double u2 = u * u;
        return u2 * (-1.0 / 6 + u2 * (7.0 / 360 + u2 * (-31.0 / 15120 + u2 * 127.0 / 604800)));
    }
    if (u > 700) return -1.0;
    return u / std::sinh(u) - 1.0;
}

// log Phi_b inside the strip, from the defining integral
cplx log_phi_strip(cplx z, double b) {
    const double k = b + 1.0 / b;
    const cplx I(0, 1);
    cplx base = I * kPi * z * z / 2.0 + I * kPi * (b * b + 1.0 / (b * b)) / 24.0;
    if (z == 0.0) return I * kPi * (b * b + 1.0 / (b * b)) / 24.0;
    const double beta = std::min(b, 1.0 / b);
    if (2 * kPi * beta * std::abs(z.real()) > 40.0 + std::log1p(std::abs(z))) {
        if (z.real() < 0) return 0.0;
        return I * kPi * z * z + I * kPi * (b * b + 1.0 / (b * b)) / 12.0;
    }
    const double rate = k - 2 * std::abs(z.imag());
    const double ws = 1.0;
    const double L = std::max(ws + 1.0, 40.0 / rate);
    const double h = std::min(1.0, 24.0 / (2 * std::abs(z) + k));
    const auto& g = gauss_rule(30);

    auto g_small = [&](double w) -> cplx {
        cplx x = 2.0 * z * w;
        cplx A = std::abs(x) < 0.1 ? small_series(x) : std::sin(x) / x - 1.0;
        double e1 = sinhc_m1(b * w), e2 = sinhc_m1(w / b);
        double Bf = e1 + e2 + e1 * e2;
        return -(z / (w * w)) * (A + Bf + A * Bf);
    };
    auto g_big = [&](double w) -> cplx {
        cplx num = (std::exp(2.0 * I * z * w - k * w) - std::exp(-2.0 * I * z * w - k * w)) / (2.0 * I);
        double den = (1 - std::exp(-2 * b * w)) * (1 - std::exp(-2 * w / b));
        return -num * 4.0 / den / (2 * w);
    };
    auto integrate = [&](auto&& f, double a, double c) {
        int n = std::max(1, static_cast<int>(std::ceil((c - a) / h)));
        double step = (c - a) / n;
        cplx tot = 0;
        for (int i = 0; i < n; ++i) {
            double m = a + (i + 0.5) * step, r = step / 2;
            for (size_t j = 0; j < g.x.size(); ++j) tot += r * g.w[j] * f(m + r * g.x[j]);
        }
        return tot;
    };
    cplx J = integrate(g_small, 0.0, ws) + z / ws + integrate(g_big, ws, L);
    return base + I * J;
}

// log(1 + e^t) without overflow
cplx log1p_exp(cplx t) {
    if (t.real() > 0) return t + std::log(1.0 + std::exp(-t));
    return std::log(1.0 + std::exp(t));
}

}

cplx log_phi_b(cplx z, double b) {
    QDilogParams p(b);
    const double cb = p.strip_halfwidth();
    // distance to poles i(cb + m b + n/b) and zeros -i(cb + m b + n/b)
    if (std::abs(z.real()) < 1e-8 && std::abs(z.imag()) >= cb - 1e-8) {
        double y = std::abs(z.imag());
        for (int m = 0; m * b <= y + 1; ++m)
            for (int n = 0; m * b + n / b <= y + 1; ++n)
                if (std::abs(y - (cb + m * b + n / b)) < 1e-8)
                    throw std::domain_error(z.imag() > 0 ? "phi_b: pole" : "phi_b: zero");
    }
    const double beta = std::min(b, 1.0 / b);
    const cplx I(0, 1);
    cplx acc = 0;
    int shifts = 0;
    while (std::abs(z.imag()) > 0.8 * cb) {
        if (++shifts > 10000) throw std::domain_error("phi_b: too many functional-equation shifts");
        if (z.imag() > 0) {
            // Phi(w) = Phi(w - i beta) / (1 + e^{2 pi beta (w - i beta / 2)})
            acc -= log1p_exp(2 * kPi * beta * (z - I * beta / 2.0));
            z -= I * beta;
        } else {
            // Phi(w) = (1 + e^{2 pi beta (w + i beta / 2)}) Phi(w + i beta)
            acc += log1p_exp(2 * kPi * beta * (z + I * beta / 2.0));
            z += I * beta;
        }
    }
    return acc + log_phi_strip(z, b);
}

cplx phi_b(cplx z, double b) {
    return std::exp(log_phi_b(z, b));
}

double phi_b_semiclassical_residual(cplx z, double b) {
    if (std::abs(z.imag()) >= kPi) throw std::domain_error("semiclassical residual: z outside R + i(-pi, pi)");
    cplx s = log_phi_b(z / (2 * kPi * b), b) + cplx(0, 1) * dilog(-std::exp(z)) / (2 * kPi * b * b);
    return std::abs(std::exp(s) - 1.0);
}

}
