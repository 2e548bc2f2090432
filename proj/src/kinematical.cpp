#include "famedkit/kinematical.hpp"

namespace famedkit {

KinematicalMatrices build_RAB(const OrderedTriangulation& tri) {
    const int n = tri.size();
    KinematicalMatrices km;
    km.signs = tri.signs();
    km.R.assign(n, std::vector<long>(2 * n, 0));
    km.A.assign(2 * n, std::vector<long>(2 * n, 0));
    km.B.assign(2 * n, std::vector<long>(n, 0));
    for (const auto& f : tri.faces) km.face_names.push_back(f.name);
    auto x = [&](int t, int k) {
        int c = tri.face_class_of(t, k);
        if (c < 0) throw InputError("face " + std::to_string(t) + "." + std::to_string(k) + " has no class");
        return c;
    };
    for (int j = 0; j < n; ++j) {
        km.R[j][x(j, 0)] = tri.tets[j].sign;
        km.A[j][x(j, 0)] += 1;
        km.A[j][x(j, 1)] -= 1;
        km.A[j][x(j, 2)] += 1;
        km.A[n + j][x(j, 2)] += 1;
        km.A[n + j][x(j, 3)] -= 1;
        km.B[n + j][j] = 1;
    }
    km.detA = determinant(to_rational(km.A));
    return km;
}

RatMatrix compute_Q(const KinematicalMatrices& km) {
    if (km.detA == 0) throw SingularMatrix("det A = 0");
    auto M = multiply(multiply(to_rational(km.R), inverse(to_rational(km.A))), to_rational(km.B));
    auto Q = scale(add(M, transpose(M)), Rational(-1, 2));
    return Q;
}

RatMatrix compute_scriptG(const RatMatrix& Q, const std::vector<int>& signs) {
    const size_t n = Q.size();
    auto G = zeros(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) G[i][j] = Q[i][j] * (-2 * signs[i] * signs[j]);
    for (size_t i = 0; i < n; ++i)
        if (signs[i] > 0) G[i][i] += 1;
    return G;
}

KinematicalMatrices kinematical(const OrderedTriangulation& tri) {
    auto km = build_RAB(tri);
    if (km.detA != 0) {
        km.Q = compute_Q(km);
        km.scriptG = compute_scriptG(km.Q, km.signs);
    }
    return km;
}

}
