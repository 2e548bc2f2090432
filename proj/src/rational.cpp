#include "famedkit/rational.hpp"

#include <stdexcept>

namespace famedkit {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (long v : m[i]) r[i].emplace_back(v);
    return r;
}

RatMatrix zeros(size_t rows, size_t cols) {
    return RatMatrix(rows, std::vector<Rational>(cols, Rational(0)));
}

RatMatrix identity(size_t n) {
    auto m = zeros(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMatrix transpose(const RatMatrix& m) {
    if (m.empty()) return {};
    auto t = zeros(m[0].size(), m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
    if (a.empty() || b.empty()) return {};
    if (a[0].size() != b.size()) throw std::invalid_argument("multiply: shape mismatch");
    auto c = zeros(a.size(), b[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

RatMatrix add(const RatMatrix& a, const RatMatrix& b) {
    auto c = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
    return c;
}

RatMatrix scale(const RatMatrix& a, const Rational& s) {
    auto c = a;
    for (auto& row : c)
        for (auto& v : row) v *= s;
    return c;
}

Rational determinant(const RatMatrix& m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        if (row.size() != n) throw std::domain_error("determinant of a non-square matrix");
    // clear denominators row by row
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    Rational factor = 1;
    for (size_t i = 0; i < n; ++i) {
        BigInt l = 1;
        for (const auto& v : m[i]) l = boost::multiprecision::lcm(l, denominator(v));
        for (size_t j = 0; j < n; ++j) a[i][j] = numerator(m[i][j]) * (l / denominator(m[i][j]));
        factor /= Rational(l);
    }
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return Rational(a[n - 1][n - 1]) * sign * factor;
}

RatMatrix inverse(const RatMatrix& m) {
    const size_t n = m.size();
    auto a = m;
    auto inv = identity(n);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("matrix is singular");
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        Rational piv = a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

bool is_symmetric(const RatMatrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (m[i][j] != m[j][i]) return false;
    return true;
}

bool equal(const RatMatrix& a, const RatMatrix& b) {
    return a == b;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::vector<std::vector<std::string>> to_strings(const RatMatrix& m) {
    std::vector<std::vector<std::string>> out(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const auto& v : m[i]) out[i].push_back(to_string(v));
    return out;
}

std::vector<std::vector<double>> to_double(const RatMatrix& m) {
    std::vector<std::vector<double>> out(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const auto& v : m[i]) out[i].push_back(v.convert_to<double>());
    return out;
}

}
