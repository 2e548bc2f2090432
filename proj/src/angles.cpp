#include "famedkit/angles.hpp"

#include "famedkit/nz.hpp"
#include "famedkit/special.hpp"

#include <cmath>
#include <limits>

namespace famedkit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

LinearConstraints angle_constraints(const OrderedTriangulation& tri) {
    const int n = tri.size();
    const int ne = static_cast<int>(tri.edge_classes.size());
    LinearConstraints lc;
    lc.C = Eigen::MatrixXd::Zero(n + ne, 3 * n);
    lc.d = Eigen::VectorXd::Zero(n + ne);
    for (int t = 0; t < n; ++t) {
        lc.C.block(t, 3 * t, 1, 3).setOnes();
        lc.d(t) = kPi;
    }
    for (int e = 0; e < ne; ++e) {
        for (int s : tri.edge_classes[e].slots) lc.C(n + e, 3 * (s / 6) + kEdgeAngle[s % 6]) += 1;
        lc.d(n + e) = 2 * kPi;
    }
    return lc;
}

Eigen::VectorXd holonomy_row(const OrderedTriangulation& tri, const PeripheralCurve& c) {
    const int n = tri.size();
    Eigen::VectorXd h = Eigen::VectorXd::Zero(3 * n);
    for (int t = 0; t < n; ++t) {
        int sg = tri.tets[t].sign;
        h(3 * t + symbol_angle(0, sg)) += c.C[t];
        h(3 * t + symbol_angle(1, sg)) += c.Cp[t];
        h(3 * t + symbol_angle(2, sg)) += c.Cpp[t];
    }
    return h;
}

LPResult lp_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    const double eps = 1e-10;
    // tableau with artificials; last row is the objective in reduced form
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        double s = b(i) < 0 ? -1.0 : 1.0;
        T.block(i, 0, 1, n) = s * A.row(i);
        T(i, n + i) = 1.0;
        T(i, n + m) = s * b(i);
        basis[i] = n + i;
    }
    auto pivot = [&](int r, int col) {
        T.row(r) /= T(r, col);
        for (int i = 0; i <= m; ++i)
            if (i != r && std::abs(T(i, col)) > 0) T.row(i) -= T(i, col) * T.row(r);
        basis[r] = col;
    };
    // runs simplex on the objective row; allowed columns < limit
    auto run = [&](int limit) -> LPResult::Status {
        for (int it = 0; it < max_iter; ++it) {
            int col = -1;
            for (int j = 0; j < limit; ++j)
                if (T(m, j) < -eps) {
                    col = j;
                    break;
                }
            if (col < 0) return LPResult::Optimal;
            int row = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i)
                if (T(i, col) > eps) {
                    double ratio = T(i, n + m) / T(i, col);
                    if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && row >= 0 && basis[i] < basis[row])) {
                        best = ratio;
                        row = i;
                    }
                }
            if (row < 0) return LPResult::Unbounded;
            pivot(row, col);
        }
        return LPResult::IterationLimit;
    };
    // phase 1: minimize the sum of artificials
    T.row(m).setZero();
    for (int i = 0; i < m; ++i) T.row(m) -= T.row(i);
    for (int i = 0; i < m; ++i) T(m, n + i) = 0;
    LPResult res;
    auto st = run(n + m);
    if (st == LPResult::IterationLimit) {
        res.status = st;
        return res;
    }
    if (T(m, n + m) < -1e-8) {
        res.status = LPResult::Infeasible;
        return res;
    }
    // drive artificials out of the basis
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        for (int j = 0; j < n; ++j)
            if (std::abs(T(i, j)) > 1e-9) {
                pivot(i, j);
                break;
            }
    }
    // phase 2
    T.row(m).setZero();
    for (int j = 0; j < n; ++j) T(m, j) = -c(j);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n && T(m, basis[i]) != 0) T.row(m) -= T(m, basis[i]) * T.row(i);
    for (int i = 0; i < m; ++i) T.col(n + i).setZero();
    st = run(n);
    res.status = st;
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.x(basis[i]) = T(i, n + m);
    res.value = c.dot(res.x);
    return res;
}

std::optional<AngleStructure> interior_point(const LinearConstraints& lc, double margin, double* min_angle) {
    // alpha = beta + delta, beta >= 0, 0 <= delta <= 1
    const int m = static_cast<int>(lc.C.rows());
    const int n = static_cast<int>(lc.C.cols());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, n + 2);
    Eigen::VectorXd b(m + 1);
    A.block(0, 0, m, n) = lc.C;
    A.block(0, n, m, 1) = lc.C.rowwise().sum();
    b.head(m) = lc.d;
    A(m, n) = 1;
    A(m, n + 1) = 1;
    b(m) = 1;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 2);
    c(n) = 1;
    auto r = lp_maximize(c, A, b);
    if (min_angle) *min_angle = r.status == LPResult::Optimal ? r.x(n) : 0.0;
    if (r.status != LPResult::Optimal || r.x(n) <= margin) return std::nullopt;
    AngleStructure a;
    for (int i = 0; i < n; ++i) a.angles.push_back(r.x(i) + r.x(n));
    return a;
}

std::optional<AngleStructure> feasibility(const OrderedTriangulation& tri, double margin) {
    return interior_point(angle_constraints(tri), margin);
}

double volume_functional(const AngleStructure& alpha) {
    double v = 0;
    for (double x : alpha.angles) v += lobachevsky(x);
    return v;
}

double angular_holonomy(const OrderedTriangulation& tri, const AngleStructure& alpha, const PeripheralCurve& c) {
    auto h = holonomy_row(tri, c);
    Eigen::Map<const Eigen::VectorXd> a(alpha.angles.data(), static_cast<Eigen::Index>(alpha.angles.size()));
    return h.dot(a) - kPi * static_cast<double>(c.nu);
}

double max_constraint_violation(const OrderedTriangulation& tri, const AngleStructure& alpha) {
    auto lc = angle_constraints(tri);
    Eigen::Map<const Eigen::VectorXd> a(alpha.angles.data(), static_cast<Eigen::Index>(alpha.angles.size()));
    return (lc.C * a - lc.d).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& C, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol * std::max(1.0, s(0))) ++rank;
    return svd.matrixV().rightCols(C.cols() - rank);
}

VolumeReport maximize_volume(const OrderedTriangulation& tri, const VolumeOptions& opt) {
    VolumeReport rep;
    rep.slice_theta = opt.slice_theta;
    auto lc = angle_constraints(tri);
    if (opt.slice_theta) {
        const auto* c = tri.curve(opt.slice_curve);
        if (!c) throw InputError("missing curve data: '" + opt.slice_curve + "'");
        auto h = holonomy_row(tri, *c);
        lc.C.conservativeResize(lc.C.rows() + 1, Eigen::NoChange);
        lc.C.row(lc.C.rows() - 1) = h.transpose();
        lc.d.conservativeResize(lc.d.size() + 1);
        lc.d(lc.d.size() - 1) = *opt.slice_theta + kPi * static_cast<double>(c->nu);
    }
    auto start = interior_point(lc);
    if (!start) {
        rep.message = "no interior angle structure";
        return rep;
    }
    const int n = static_cast<int>(lc.C.cols());
    Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(start->angles.data(), n);
    Eigen::MatrixXd Z = null_space(lc.C);
    auto V = [](const Eigen::VectorXd& a) {
        double v = 0;
        for (int i = 0; i < a.size(); ++i) v += lobachevsky(a(i));
        return v;
    };
    Eigen::VectorXd pg;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        Eigen::VectorXd g(n), hd(n);
        for (int i = 0; i < n; ++i) {
            g(i) = -std::log(2 * std::sin(x(i)));
            hd(i) = -1.0 / std::tan(x(i));
        }
        pg = Z.transpose() * g;
        rep.kkt_residual = pg.norm();
        if (rep.kkt_residual < opt.kkt_tol) break;
        Eigen::MatrixXd H = Z.transpose() * hd.asDiagonal() * Z;
        Eigen::VectorXd step = -Z * H.ldlt().solve(pg);
        if (!(step.dot(g) > 0)) step = Z * pg;
        // stay strictly inside (0, pi)
        double tmax = 1.0;
        for (int i = 0; i < n; ++i) {
            if (step(i) < 0) tmax = std::min(tmax, 0.99 * x(i) / -step(i));
            if (step(i) > 0) tmax = std::min(tmax, 0.99 * (kPi - x(i)) / step(i));
        }
        double t = tmax, v0 = V(x), slope = step.dot(g);
        while (t > 1e-14 && V(x + t * step) < v0 + 1e-4 * t * slope) t /= 2;
        if (t <= 1e-14) break;
        x += t * step;
    }
    rep.iterations = it;
    rep.maximizer.angles.assign(x.data(), x.data() + n);
    rep.value = volume_functional(rep.maximizer);
    rep.converged = rep.kkt_residual < std::max(opt.kkt_tol, 1e-9) && x.minCoeff() > 1e-6;
    if (!rep.converged) rep.message = x.minCoeff() <= 1e-6 ? "maximum approaches the boundary" : "iteration limit";
    return rep;
}

}
