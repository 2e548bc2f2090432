#pragma once

#include "famedkit/triangulation.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace famedkit {

struct AngleStructure {
    std::vector<double> angles;  // a1 b1 c1 a2 b2 c2 ...
};

struct LinearConstraints {
    Eigen::MatrixXd C;
    Eigen::VectorXd d;
};

// tetrahedron sums then edge weights (all edge classes)
LinearConstraints angle_constraints(const OrderedTriangulation& tri);
// coefficients of the angular holonomy of a curve; value = row . alpha - pi nu
Eigen::VectorXd holonomy_row(const OrderedTriangulation& tri, const PeripheralCurve& c);

struct LPResult {
    enum Status { Optimal, Infeasible, Unbounded, IterationLimit } status = Infeasible;
    Eigen::VectorXd x;
    double value = 0;
};

// maximize c.x subject to A x = b, x >= 0 (two-phase simplex, Bland's rule)
LPResult lp_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter = 10000);

// maximizes the smallest angle; empty when that optimum is <= 0
std::optional<AngleStructure> feasibility(const OrderedTriangulation& tri, double margin = 1e-9);
std::optional<AngleStructure> interior_point(const LinearConstraints& lc, double margin = 1e-9, double* min_angle = nullptr);

double volume_functional(const AngleStructure& alpha);
double angular_holonomy(const OrderedTriangulation& tri, const AngleStructure& alpha, const PeripheralCurve& c);
double max_constraint_violation(const OrderedTriangulation& tri, const AngleStructure& alpha);

struct VolumeReport {
    AngleStructure maximizer;
    double value = 0;
    std::optional<double> slice_theta;
    bool converged = false;
    double kkt_residual = 0;
    int iterations = 0;
    std::string message;
};

struct VolumeOptions {
    std::optional<double> slice_theta;
    std::string slice_curve = "l";
    int max_iter = 200;
    double kkt_tol = 1e-11;
};

VolumeReport maximize_volume(const OrderedTriangulation& tri, const VolumeOptions& opt = {});

// orthonormal basis of the null space of C
Eigen::MatrixXd null_space(const Eigen::MatrixXd& C, double tol = 1e-10);

}
