#include "famedkit/geometry.hpp"

#include "famedkit/angles.hpp"

#include <cmath>

namespace famedkit {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx I(0, 1);

cplx log1p_exp(cplx t) {
    if (t.real() > 0) return t + std::log(1.0 + std::exp(-t));
    return std::log(1.0 + std::exp(t));
}

cplx nearest_branch(cplx v, cplx ref) {
    double k = std::round((ref.imag() - v.imag()) / (2 * kPi));
    return v + cplx(0, 2 * kPi * k);
}

struct State {
    CVec y, lz, lzpp;
};

void fill_logs(State& st, const std::vector<int>& signs, const State* prev) {
    const int n = static_cast<int>(st.y.size());
    st.lz.resize(n);
    st.lzpp.resize(n);
    for (int k = 0; k < n; ++k) {
        st.lz(k) = double(signs[k]) * st.y(k) + I * kPi;
        cplx l = log1p_exp(-double(signs[k]) * st.y(k));
        st.lzpp(k) = prev ? nearest_branch(l, prev->lzpp(k)) : l;
    }
}

CVec residual_of(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const CVec& rhs, const State& st) {
    return A.cast<cplx>() * st.lz + B.cast<cplx>() * st.lzpp - rhs;
}

}

CVec to_cvec(const std::vector<cplx>& v) {
    CVec out(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out(i) = v[i];
    return out;
}

Eigen::MatrixXd to_eigen(const RatMatrix& m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j].convert_to<double>();
    return out;
}

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) out(i, j) = static_cast<double>(m[i][j]);
    return out;
}

cplx ShapeSolution::zp(int k) const {
    return 1.0 / (1.0 - z[k]);
}

cplx ShapeSolution::log_zp(int k) const {
    return I * kPi - log_z[k] - log_zpp[k];
}

namespace {

ShapeSolution newton(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const CVec& rhs,
                     const std::vector<int>& signs, State st, const SolveOptions& opt) {
    const int n = static_cast<int>(st.y.size());
    ShapeSolution sol;
    fill_logs(st, signs, nullptr);
    CVec r = residual_of(A, B, rhs, st);
    double res = r.cwiseAbs().maxCoeff();
    int it = 0;
    for (; it < opt.max_iter && res >= opt.tol; ++it) {
        CMat J(n, n);
        for (int k = 0; k < n; ++k) {
            double e = signs[k];
            cplx d = 1.0 / (1.0 + std::exp(e * st.y(k)));
            for (int i = 0; i < n; ++i) J(i, k) = e * (A(i, k) - B(i, k) * d);
        }
        CVec step = J.partialPivLu().solve(-r);
        if (!step.allFinite()) break;
        double t = 1.0;
        bool accepted = false;
        while (t > 1e-6) {
            State trial;
            trial.y = st.y + t * step;
            fill_logs(trial, signs, &st);
            CVec r2 = residual_of(A, B, rhs, trial);
            double res2 = r2.cwiseAbs().maxCoeff();
            if (std::isfinite(res2) && (res2 < res || res2 < opt.tol)) {
                st = trial;
                r = r2;
                res = res2;
                accepted = true;
                break;
            }
            t /= 2;
        }
        if (!accepted) break;
    }
    sol.iterations = it;
    sol.residual = res;
    sol.converged = res < opt.tol;
    sol.signs = signs;
    for (int k = 0; k < n; ++k) {
        sol.y.push_back(st.y(k));
        sol.log_z.push_back(st.lz(k));
        sol.log_zpp.push_back(st.lzpp(k));
        sol.z.push_back(std::exp(st.lz(k)));
    }
    sol.geometric = true;
    for (auto z : sol.z)
        if (!(z.imag() > 0)) sol.geometric = false;
    if (!sol.converged) sol.message = "Newton did not reach the residual tolerance";
    else if (!sol.geometric) sol.message = "solution leaves the upper half-plane";
    return sol;
}

State state_from_shapes(const std::vector<cplx>& z, const std::vector<int>& signs) {
    State st;
    st.y.resize(static_cast<Eigen::Index>(z.size()));
    for (size_t k = 0; k < z.size(); ++k) st.y(k) = double(signs[k]) * (std::log(z[k]) - I * kPi);
    return st;
}

}

ShapeSolution solve_gluing(const NZSystem& nz, const std::vector<int>& signs, cplx hl, const std::vector<cplx>& z0,
                           const SolveOptions& opt) {
    const int n = static_cast<int>(signs.size());
    if (static_cast<int>(nz.A.size()) != n) throw std::domain_error("gluing system is not square");
    Eigen::MatrixXd A = to_eigen(nz.A), B = to_eigen(nz.B);
    auto rhs_for = [&](cplx h) {
        CVec rhs(n);
        for (int i = 0; i < n; ++i) rhs(i) = I * kPi * double(nz.nu[i]);
        rhs(nz.curve_row) += h;
        return rhs;
    };
    std::vector<cplx> start = z0;
    if (start.empty()) start.assign(n, std::polar(1.0, kPi / 3));
    auto sol = newton(A, B, rhs_for(hl), signs, state_from_shapes(start, signs), opt);
    if (!sol.converged && hl != 0.0) {
        // continuation from the target-free solution
        auto base = newton(A, B, rhs_for(0.0), signs, state_from_shapes(start, signs), opt);
        if (base.converged) {
            for (int steps = 4; steps <= opt.max_continuation_steps; steps *= 2) {
                auto cur = base;
                bool ok = true;
                for (int s = 1; s <= steps; ++s) {
                    cur = newton(A, B, rhs_for(hl * (double(s) / steps)), signs, state_from_shapes(cur.z, signs), opt);
                    if (!cur.converged) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    sol = cur;
                    break;
                }
            }
        }
    }
    sol.u_target = hl;
    return sol;
}

ShapeSolution solve_gluing(const OrderedTriangulation& tri, cplx hl, const NZOptions& nzopt, const SolveOptions& opt) {
    auto nz = nz_system(tri, nzopt);
    auto sol = solve_gluing(nz, tri.signs(), hl, {}, opt);
    if (!sol.converged) {
        if (auto w = feasibility(tri)) {
            auto alt = solve_gluing(nz, tri.signs(), hl, shapes_from_angles(tri, w->angles), opt);
            if (alt.converged) return alt;
        }
    }
    return sol;
}

std::vector<cplx> shapes_from_angles(const OrderedTriangulation& tri, const std::vector<double>& angles) {
    std::vector<cplx> z;
    for (int t = 0; t < tri.size(); ++t) {
        int sg = tri.tets[t].sign;
        double a = angles[3 * t + symbol_angle(0, sg)];
        double tp = angles[3 * t + symbol_angle(1, sg)];
        double tpp = angles[3 * t + symbol_angle(2, sg)];
        z.push_back(std::polar(std::sin(tp) / std::sin(tpp), a));
    }
    return z;
}

CVec nz_residual(const NZSystem& nz, const ShapeSolution& sol, cplx hl) {
    const int n = static_cast<int>(sol.z.size());
    CVec r(nz.A.size());
    for (size_t i = 0; i < nz.A.size(); ++i) {
        cplx v = -I * kPi * double(nz.nu[i]);
        for (int k = 0; k < n; ++k) v += double(nz.A[i][k]) * sol.log_z[k] + double(nz.B[i][k]) * sol.log_zpp[k];
        if (static_cast<int>(i) == nz.curve_row) v -= hl;
        r(i) = v;
    }
    return r;
}

double hyperbolic_volume(const ShapeSolution& sol) {
    double v = 0;
    for (auto z : sol.z) v += bloch_wigner(z);
    return v;
}

cplx complex_holonomy(const PeripheralCurve& c, const ShapeSolution& sol) {
    cplx h = -I * kPi * double(c.nu);
    for (size_t k = 0; k < sol.z.size(); ++k)
        h += double(c.C[k]) * sol.log_z[k] + double(c.Cp[k]) * sol.log_zp(static_cast<int>(k)) +
             double(c.Cpp[k]) * sol.log_zpp[k];
    return h;
}

PotentialData potential_data(const KinematicalMatrices& km, const NZSystem& nz, cplx lambda) {
    const int n = static_cast<int>(km.signs.size());
    if (km.Q.empty()) throw SingularMatrix("det A = 0");
    if (nz.Binv.empty()) throw SingularMatrix("NZ matrix B is singular");
    PotentialData pd;
    pd.Q = to_eigen(km.Q);
    pd.s.resize(n);
    for (int k = 0; k < n; ++k) pd.s(k) = -km.signs[k];
    Eigen::MatrixXd Binv = to_eigen(nz.Binv), G = to_eigen(km.scriptG);
    CVec nu(n);
    for (int i = 0; i < n; ++i) nu(i) = kPi * double(nz.nu[i]);
    nu(nz.curve_row) += lambda;
    pd.v = Binv.cast<cplx>() * nu - (G * Eigen::VectorXd::Constant(n, kPi)).cast<cplx>();
    return pd;
}

PotentialEval potential_S(const CVec& y, const PotentialData& pd, cplx lambda) {
    const int n = static_cast<int>(y.size());
    PotentialEval ev;
    ev.lambda_target = lambda;
    CVec Qy = pd.Q.cast<cplx>() * y;
    cplx quad = 0;
    for (int k = 0; k < n; ++k) quad += y(k) * Qy(k);
    ev.value = I * quad;
    ev.gradient = 2.0 * I * Qy;
    ev.hessian = 2.0 * I * pd.Q.cast<cplx>();
    for (int k = 0; k < n; ++k) {
        double s = pd.s(k);
        cplx ey = std::exp(y(k));
        ev.value += s * y(k) * pd.v(k) - I * s * dilog(-ey);
        ev.gradient(k) += s * pd.v(k) + I * s * log1p_exp(y(k));
        ev.hessian(k, k) += I * s * ey / (1.0 + ey);
    }
    return ev;
}

PotentialEval potential_S(const CVec& y, cplx lambda, const NZSystem& nz, const KinematicalMatrices& km) {
    auto pd = potential_data(km, nz, lambda);
    if (!in_strip(y, pd.s)) throw std::domain_error("y outside the strip");
    return potential_S(y, pd, lambda);
}

bool in_strip(const CVec& y, const Eigen::VectorXd& s) {
    for (int k = 0; k < y.size(); ++k) {
        double im = y(k).imag() * s(k);
        if (!(im > 0 && im < kPi)) return false;
    }
    return true;
}

CriticalPoint find_critical_point(const NZSystem& nz, const KinematicalMatrices& km, cplx lambda,
                                  const std::vector<cplx>& z0) {
    CriticalPoint cp;
    cp.solution = solve_gluing(nz, km.signs, I * lambda, z0);
    cp.y = to_cvec(cp.solution.y);
    cp.eval = potential_S(cp.y, lambda, nz, km);
    cp.gradient_norm = cp.eval.gradient.cwiseAbs().maxCoeff();
    return cp;
}

}
