#pragma once

#include "famedkit/geometry.hpp"

namespace famedkit {

struct Flattening {
    std::vector<long> f, fp, fpp;
    bool strong = false;
    std::vector<std::string> curves;  // curves certified
};

class NoIntegerSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// integer solution of M x = r closest to the origin (HNF + LLL + Babai)
std::vector<long> solve_integer_system(const IntMatrix& M, const std::vector<long>& r);
// LLL-reduced basis of the integer kernel of M (columns)
IntMatrix integer_kernel(const IntMatrix& M);

Flattening strong_flattening(const OrderedTriangulation& tri);
// edge rows then one row per curve, G f + G' f' + G'' f'' - target; all zero when valid
std::vector<long> flattening_residual(const OrderedTriangulation& tri, const Flattening& fl);
bool is_valid_flattening(const OrderedTriangulation& tri, const Flattening& fl);

struct OneLoopValue {
    cplx tau;
    Convention convention = Convention::GppMinusGp;
    cplx alt_tau;
    bool conventions_agree = true;
};

// phase normalized into [0, pi)
cplx normalize_sign(cplx w);
cplx one_loop_tau_raw(const NZSystem& nz, const ShapeSolution& sol, const Flattening& fl);
OneLoopValue one_loop_tau(const NZSystem& nz, const ShapeSolution& sol, const Flattening& fl);
OneLoopValue one_loop_tau(const OrderedTriangulation& tri, const NZSystem& nz, const ShapeSolution& sol,
                          const Flattening& fl);

// prod z^{-f''} z''^{f-1}
cplx flattening_monomial(const ShapeSolution& sol, const Flattening& fl);

struct HessianBridge {
    cplx det_hessian;
    cplx rhs;  // (-i)^N 2 det B^{-1} prod z^{-f''} z''^{f-1} tau
    double modulus_rel_error = 0;
    double phase_mod_pi_error = 0;
};

HessianBridge hessian_torsion_bridge(const NZSystem& nz, const KinematicalMatrices& km, const CriticalPoint& cp,
                                     const Flattening& fl);

}
