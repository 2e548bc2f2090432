#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace famedkit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using IntMatrix = std::vector<std::vector<long>>;
using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix to_rational(const IntMatrix& m);
RatMatrix zeros(size_t rows, size_t cols);
RatMatrix identity(size_t n);
RatMatrix transpose(const RatMatrix& m);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatMatrix add(const RatMatrix& a, const RatMatrix& b);
RatMatrix scale(const RatMatrix& a, const Rational& s);

// fraction-free (Bareiss) on the cleared-denominator matrix
Rational determinant(const RatMatrix& m);
// throws std::domain_error when singular
RatMatrix inverse(const RatMatrix& m);

bool is_symmetric(const RatMatrix& m);
bool equal(const RatMatrix& a, const RatMatrix& b);

std::string to_string(const Rational& r);
std::vector<std::vector<std::string>> to_strings(const RatMatrix& m);
std::vector<std::vector<double>> to_double(const RatMatrix& m);

}
