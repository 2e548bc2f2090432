#pragma once

#include <complex>
#include <vector>

namespace famedkit {

using cplx = std::complex<double>;

cplx dilog(cplx z);
double bloch_wigner(cplx z);
// Clausen function Cl2
double clausen2(double theta);
// Lobachevsky function, -int_0^x log|2 sin t| dt
double lobachevsky(double x);

struct QDilogParams {
    double b = 1.0;
    explicit QDilogParams(double b_);
    double sqrt_hbar() const { return 1.0 / (b + 1.0 / b); }
    double hbar() const { return sqrt_hbar() * sqrt_hbar(); }
    double strip_halfwidth() const { return 0.5 / sqrt_hbar(); }
};

// a branch of log Phi_b(z)
cplx log_phi_b(cplx z, double b);
cplx phi_b(cplx z, double b);
double phi_b_semiclassical_residual(cplx z, double b);

// full Gauss-Legendre rule on [-1, 1]
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_rule(int points);

}
