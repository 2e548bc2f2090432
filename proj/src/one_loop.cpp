#include "famedkit/one_loop.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numeric>

namespace famedkit {

namespace {
using boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<cpp_int>>;
constexpr double kPi = 3.14159265358979323846;

long to_long(const cpp_int& v) {
    return v.convert_to<long>();
}

// column operations: M U = H with H in column echelon form
struct ColumnHNF {
    BigMatrix H, U;
    std::vector<int> pivot_rows;  // pivot row of column j < rank
    int rank = 0;
};

ColumnHNF column_hnf(const IntMatrix& M) {
    const size_t m = M.size(), n = m ? M[0].size() : 0;
    ColumnHNF out;
    out.H.assign(m, std::vector<cpp_int>(n));
    out.U.assign(n, std::vector<cpp_int>(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) out.H[i][j] = M[i][j];
    for (size_t j = 0; j < n; ++j) out.U[j][j] = 1;
    auto col_op = [&](size_t dst, size_t src, const cpp_int& q) {
        for (auto& row : out.H) row[dst] -= q * row[src];
        for (auto& row : out.U) row[dst] -= q * row[src];
    };
    auto col_swap = [&](size_t a, size_t b) {
        for (auto& row : out.H) std::swap(row[a], row[b]);
        for (auto& row : out.U) std::swap(row[a], row[b]);
    };
    auto col_neg = [&](size_t a) {
        for (auto& row : out.H) row[a] = -row[a];
        for (auto& row : out.U) row[a] = -row[a];
    };
    size_t c = 0;
    for (size_t i = 0; i < m && c < n; ++i) {
        while (true) {
            size_t best = n;
            for (size_t j = c; j < n; ++j)
                if (out.H[i][j] != 0 && (best == n || abs(out.H[i][j]) < abs(out.H[i][best]))) best = j;
            if (best == n) break;
            col_swap(c, best);
            bool done = true;
            for (size_t j = c + 1; j < n; ++j) {
                if (out.H[i][j] == 0) continue;
                cpp_int q = out.H[i][j] / out.H[i][c];
                col_op(j, c, q);
                if (out.H[i][j] != 0) done = false;
            }
            if (done) break;
        }
        if (c < n && out.H[i][c] != 0) {
            if (out.H[i][c] < 0) col_neg(c);
            for (size_t j = 0; j < c; ++j) {
                cpp_int q = out.H[i][j] / out.H[i][c];
                if (out.H[i][j] - q * out.H[i][c] < 0) q -= 1;
                if (q != 0) col_op(j, c, q);
            }
            out.pivot_rows.push_back(static_cast<int>(i));
            ++c;
        }
    }
    out.rank = static_cast<int>(c);
    return out;
}

using RealVec = std::vector<double>;

double dot(const RealVec& a, const RealVec& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void gram_schmidt(const std::vector<RealVec>& B, std::vector<RealVec>& Bs, std::vector<std::vector<double>>& mu) {
    const size_t k = B.size();
    Bs = B;
    mu.assign(k, std::vector<double>(k, 0));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < i; ++j) {
            mu[i][j] = dot(B[i], Bs[j]) / dot(Bs[j], Bs[j]);
            for (size_t t = 0; t < B[i].size(); ++t) Bs[i][t] -= mu[i][j] * Bs[j][t];
        }
    }
}

std::vector<std::vector<long>> lll(std::vector<std::vector<long>> basis) {
    const size_t k = basis.size();
    if (k < 2) return basis;
    auto as_real = [&]() {
        std::vector<RealVec> B;
        for (auto& v : basis) B.emplace_back(v.begin(), v.end());
        return B;
    };
    std::vector<RealVec> Bs;
    std::vector<std::vector<double>> mu;
    size_t i = 1;
    int guard = 0;
    while (i < k && guard++ < 100000) {
        gram_schmidt(as_real(), Bs, mu);
        for (size_t j = i; j-- > 0;) {
            long q = std::lround(mu[i][j]);
            if (q != 0) {
                for (size_t t = 0; t < basis[i].size(); ++t) basis[i][t] -= q * basis[j][t];
                gram_schmidt(as_real(), Bs, mu);
            }
        }
        if (dot(Bs[i], Bs[i]) >= (0.75 - mu[i][i - 1] * mu[i][i - 1]) * dot(Bs[i - 1], Bs[i - 1])) {
            ++i;
        } else {
            std::swap(basis[i], basis[i - 1]);
            i = std::max<size_t>(i - 1, 1);
        }
    }
    return basis;
}

long norm2(const std::vector<long>& v) {
    long s = 0;
    for (long x : v) s += x * x;
    return s;
}

}

IntMatrix integer_kernel(const IntMatrix& M) {
    auto h = column_hnf(M);
    const size_t n = h.U.size();
    std::vector<std::vector<long>> basis;
    for (size_t j = h.rank; j < n; ++j) {
        std::vector<long> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = to_long(h.U[i][j]);
        basis.push_back(v);
    }
    basis = lll(basis);
    IntMatrix K(n, std::vector<long>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < n; ++i) K[i][j] = basis[j][i];
    return K;
}

std::vector<long> solve_integer_system(const IntMatrix& M, const std::vector<long>& r) {
    auto h = column_hnf(M);
    const size_t m = M.size(), n = h.U.size();
    std::vector<cpp_int> y(n);
    for (int j = 0; j < h.rank; ++j) {
        int row = h.pivot_rows[j];
        cpp_int acc = r[row];
        for (int t = 0; t < j; ++t) acc -= h.H[row][t] * y[t];
        if (acc % h.H[row][j] != 0) throw NoIntegerSolution("no integer solution");
        y[j] = acc / h.H[row][j];
    }
    for (size_t i = 0; i < m; ++i) {
        cpp_int acc = 0;
        for (int t = 0; t < h.rank; ++t) acc += h.H[i][t] * y[t];
        if (acc != r[i]) throw NoIntegerSolution("inconsistent integer system");
    }
    std::vector<long> x(n, 0);
    for (size_t i = 0; i < n; ++i) {
        cpp_int acc = 0;
        for (size_t j = 0; j < n; ++j) acc += h.U[i][j] * y[j];
        x[i] = to_long(acc);
    }
    auto K = integer_kernel(M);
    const size_t k = K.empty() ? 0 : K[0].size();
    if (k == 0) return x;
    std::vector<RealVec> B(k, RealVec(n));
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < n; ++i) B[j][i] = double(K[i][j]);
    std::vector<RealVec> Bs;
    std::vector<std::vector<double>> mu;
    gram_schmidt(B, Bs, mu);
    // Babai nearest plane towards the origin
    RealVec t(x.begin(), x.end());
    for (size_t j = k; j-- > 0;) {
        long c = std::lround(dot(t, Bs[j]) / dot(Bs[j], Bs[j]));
        if (c == 0) continue;
        for (size_t i = 0; i < n; ++i) {
            x[i] -= c * K[i][j];
            t[i] -= c * B[j][i];
        }
    }
    bool improved = true;
    while (improved) {
        improved = false;
        for (size_t j = 0; j < k; ++j)
            for (int sg : {1, -1}) {
                auto cand = x;
                for (size_t i = 0; i < n; ++i) cand[i] += sg * K[i][j];
                if (norm2(cand) < norm2(x) || (norm2(cand) == norm2(x) && cand > x)) {
                    x = cand;
                    improved = true;
                }
            }
    }
    return x;
}

namespace {

struct FlatSystem {
    IntMatrix M;
    std::vector<long> r;
};

// unknowns (f, f''), f' = 1 - f - f''
FlatSystem flattening_system(const OrderedTriangulation& tri) {
    auto gm = edge_incidence(tri, "");
    const int n = tri.size();
    FlatSystem fs;
    auto add_row = [&](const std::vector<long>& g, const std::vector<long>& gp, const std::vector<long>& gpp,
                       long target) {
        std::vector<long> row(2 * n);
        long sp = 0;
        for (int k = 0; k < n; ++k) {
            row[k] = g[k] - gp[k];
            row[n + k] = gpp[k] - gp[k];
            sp += gp[k];
        }
        fs.M.push_back(row);
        fs.r.push_back(target - sp);
    };
    for (size_t e = 0; e < gm.edgeG.size(); ++e) add_row(gm.edgeG[e], gm.edgeGp[e], gm.edgeGpp[e], 2);
    for (const auto& c : tri.curves) add_row(c.C, c.Cp, c.Cpp, c.nu);
    return fs;
}

}

Flattening strong_flattening(const OrderedTriangulation& tri) {
    auto fs = flattening_system(tri);
    auto x = solve_integer_system(fs.M, fs.r);
    const int n = tri.size();
    Flattening fl;
    for (int k = 0; k < n; ++k) {
        fl.f.push_back(x[k]);
        fl.fpp.push_back(x[n + k]);
        fl.fp.push_back(1 - x[k] - x[n + k]);
    }
    for (const auto& c : tri.curves) fl.curves.push_back(c.name);
    fl.strong = tri.curves.size() >= 2;
    return fl;
}

std::vector<long> flattening_residual(const OrderedTriangulation& tri, const Flattening& fl) {
    auto gm = edge_incidence(tri, "");
    const int n = tri.size();
    std::vector<long> out;
    auto row = [&](const std::vector<long>& g, const std::vector<long>& gp, const std::vector<long>& gpp, long target) {
        long s = -target;
        for (int k = 0; k < n; ++k) s += g[k] * fl.f[k] + gp[k] * fl.fp[k] + gpp[k] * fl.fpp[k];
        out.push_back(s);
    };
    for (size_t e = 0; e < gm.edgeG.size(); ++e) row(gm.edgeG[e], gm.edgeGp[e], gm.edgeGpp[e], 2);
    for (const auto& c : tri.curves) row(c.C, c.Cp, c.Cpp, c.nu);
    for (int k = 0; k < n; ++k) out.push_back(fl.f[k] + fl.fp[k] + fl.fpp[k] - 1);
    return out;
}

bool is_valid_flattening(const OrderedTriangulation& tri, const Flattening& fl) {
    if (static_cast<int>(fl.f.size()) != tri.size()) return false;
    for (long v : flattening_residual(tri, fl))
        if (v != 0) return false;
    return true;
}

cplx normalize_sign(cplx w) {
    double a = std::arg(w);
    if (a < 0 || a >= kPi) return -w;
    return w;
}

cplx one_loop_tau_raw(const NZSystem& nz, const ShapeSolution& sol, const Flattening& fl) {
    const int n = static_cast<int>(sol.z.size());
    CMat M(n, n);
    for (int k = 0; k < n; ++k) {
        if (sol.z[k] == 0.0) throw std::domain_error("degenerate shape");
        cplx zpp = (sol.z[k] - 1.0) / sol.z[k];
        for (int i = 0; i < n; ++i) M(i, k) = double(nz.A[i][k]) * zpp + double(nz.B[i][k]) / sol.z[k];
    }
    cplx mono = 1.0;
    for (int k = 0; k < n; ++k) {
        cplx zpp = (sol.z[k] - 1.0) / sol.z[k];
        mono *= std::pow(sol.z[k], double(fl.fpp[k])) * std::pow(zpp, double(-fl.f[k]));
    }
    return 0.5 * M.determinant() * mono;
}

OneLoopValue one_loop_tau(const NZSystem& nz, const ShapeSolution& sol, const Flattening& fl) {
    OneLoopValue v;
    v.tau = normalize_sign(one_loop_tau_raw(nz, sol, fl));
    v.alt_tau = v.tau;
    v.convention = nz.convention;
    return v;
}

OneLoopValue one_loop_tau(const OrderedTriangulation& tri, const NZSystem& nz, const ShapeSolution& sol,
                          const Flattening& fl) {
    auto v = one_loop_tau(nz, sol, fl);
    auto other = nz.convention == Convention::GppMinusGp ? Convention::GppMinusG : Convention::GppMinusGp;
    auto alt = assemble_nz(edge_incidence(tri, nz.curve, nz.dropped_edge), other);
    v.alt_tau = normalize_sign(one_loop_tau_raw(alt, sol, fl));
    v.conventions_agree = std::abs(v.alt_tau - v.tau) <= 1e-12 * std::max(1.0, std::abs(v.tau));
    return v;
}

cplx flattening_monomial(const ShapeSolution& sol, const Flattening& fl) {
    cplx mono = 1.0;
    for (size_t k = 0; k < sol.z.size(); ++k) {
        cplx zpp = (sol.z[k] - 1.0) / sol.z[k];
        mono *= std::pow(sol.z[k], double(-fl.fpp[k])) * std::pow(zpp, double(fl.f[k] - 1));
    }
    return mono;
}

HessianBridge hessian_torsion_bridge(const NZSystem& nz, const KinematicalMatrices& km, const CriticalPoint& cp,
                                     const Flattening& fl) {
    HessianBridge hb;
    const int n = static_cast<int>(cp.y.size());
    hb.det_hessian = cp.eval.hessian.determinant();
    double detBinv = 1.0 / nz.detB.convert_to<double>();
    cplx tau = one_loop_tau_raw(nz, cp.solution, fl);
    hb.rhs = std::pow(cplx(0, -1), n) * 2.0 * detBinv * flattening_monomial(cp.solution, fl) * tau;
    hb.modulus_rel_error = std::abs(std::abs(hb.det_hessian) - std::abs(hb.rhs)) / std::abs(hb.rhs);
    double dphi = std::arg(hb.det_hessian / hb.rhs);
    hb.phase_mod_pi_error = std::min(std::abs(dphi), kPi - std::abs(dphi));
    (void)km;
    return hb;
}

}
