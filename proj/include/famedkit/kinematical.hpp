#pragma once

#include "famedkit/rational.hpp"
#include "famedkit/triangulation.hpp"

namespace famedkit {

class SingularMatrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct KinematicalMatrices {
    IntMatrix R;  // N x 2N
    IntMatrix A;  // 2N x 2N
    IntMatrix B;  // 2N x N
    Rational detA;
    RatMatrix Q;
    RatMatrix scriptG;
    std::vector<int> signs;
    std::vector<std::string> face_names;
};

KinematicalMatrices build_RAB(const OrderedTriangulation& tri);
// throws SingularMatrix when det A = 0
RatMatrix compute_Q(const KinematicalMatrices& km);
RatMatrix compute_scriptG(const RatMatrix& Q, const std::vector<int>& signs);
// R, A, B, det A and, when A is invertible, Q and scriptG
KinematicalMatrices kinematical(const OrderedTriangulation& tri);

}
