#pragma once

#include "famedkit/kinematical.hpp"
#include "famedkit/nz.hpp"
#include "famedkit/special.hpp"

#include <Eigen/Dense>

#include <optional>

namespace famedkit {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct ShapeSolution {
    std::vector<cplx> z;
    std::vector<cplx> y;       // eps (Log z - i pi)
    std::vector<cplx> log_z;   // branch-tracked
    std::vector<cplx> log_zpp;
    std::vector<int> signs;
    double residual = 0;
    cplx u_target = 0;  // complex holonomy target of the curve row
    bool geometric = false;
    bool converged = false;
    int iterations = 0;
    std::string message;

    cplx zp(int k) const;
    cplx log_zp(int k) const;
};

struct SolveOptions {
    int max_iter = 100;
    double tol = 1e-12;
    int max_continuation_steps = 64;
};

// Newton in y coordinates on A Log z + B Log z'' = i pi nu + (0, ..., hl)
ShapeSolution solve_gluing(const NZSystem& nz, const std::vector<int>& signs, cplx hl,
                           const std::vector<cplx>& z0 = {}, const SolveOptions& opt = {});
ShapeSolution solve_gluing(const OrderedTriangulation& tri, cplx hl, const NZOptions& nzopt = {},
                           const SolveOptions& opt = {});

// shapes realizing an angle structure (argument a, modulus sin(theta') / sin(theta''))
std::vector<cplx> shapes_from_angles(const OrderedTriangulation& tri, const std::vector<double>& angles);

CVec nz_residual(const NZSystem& nz, const ShapeSolution& sol, cplx hl);
double hyperbolic_volume(const ShapeSolution& sol);
// sum C Log z + C' Log z' + C'' Log z'' - i pi nu
cplx complex_holonomy(const PeripheralCurve& c, const ShapeSolution& sol);

struct PotentialEval {
    cplx value;
    CVec gradient;
    CMat hessian;
    cplx lambda_target;
};

struct PotentialData {
    Eigen::MatrixXd Q;
    Eigen::VectorXd s;  // -eps
    CVec v;             // B^{-1}(nu + u) - G pi, in real units
};

PotentialData potential_data(const KinematicalMatrices& km, const NZSystem& nz, cplx lambda);
PotentialEval potential_S(const CVec& y, const PotentialData& pd, cplx lambda = 0);
PotentialEval potential_S(const CVec& y, cplx lambda, const NZSystem& nz, const KinematicalMatrices& km);
// each y_k in R + i s_k (0, pi)
bool in_strip(const CVec& y, const Eigen::VectorXd& s);

struct CriticalPoint {
    ShapeSolution solution;
    CVec y;
    PotentialEval eval;
    double gradient_norm = 0;
};

CriticalPoint find_critical_point(const NZSystem& nz, const KinematicalMatrices& km, cplx lambda,
                                  const std::vector<cplx>& z0 = {});

CVec to_cvec(const std::vector<cplx>& v);
Eigen::MatrixXd to_eigen(const RatMatrix& m);
Eigen::MatrixXd to_eigen(const IntMatrix& m);

}
