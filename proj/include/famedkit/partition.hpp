#pragma once

#include "famedkit/angles.hpp"
#include "famedkit/one_loop.hpp"

#include <functional>

namespace famedkit {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ContourScaling { Unscaled, Scaled };

struct ContourOptions {
    int nodes = 192;
    double tilt = 0.1;         // 0 disables
    double tail_exponent = 50;  // decay exponent reached at the truncation point
    ContourScaling scaling = ContourScaling::Scaled;
    double extra_shift = 0;     // added to every d_k
};

struct ContourSpec {
    std::vector<double> shift;        // d_k
    std::vector<double> half_length;  // L_k
    std::vector<double> tilt;         // phi_k
    int nodes = 192;
};

struct PartitionSetup {
    KinematicalMatrices km;
    NZSystem nz;
    PotentialData pd;
    double lambda = 0;
    std::vector<double> a, rate;  // per tetrahedron
};

PartitionSetup partition_setup(const OrderedTriangulation& tri, const AngleStructure& alpha, double b);
ContourSpec make_contour(const PartitionSetup& ps, double b, const ContourOptions& opt = {});

// log of the integrand without the Gaussian cross terms
cplx partition_log_integrand(const CVec& y, const PotentialData& pd, double b);

cplx partition_integral(const PartitionSetup& ps, double b, const ContourSpec& c);
double partition_modulus(const OrderedTriangulation& tri, const AngleStructure& alpha, double b,
                         const ContourOptions& opt = {});

struct Prediction {
    double modulus = 0;
    double volume = 0;
    cplx tau;
    cplx hm, hl;
    double prefactor = 0;  // modulus * e^{Vol / 2 pi b^2}
};

Prediction predicted_modulus(const OrderedTriangulation& tri, const AngleStructure& alpha, double b);

struct JonesSetup {
    PartitionSetup ps;
    std::vector<double> a;  // coefficients of y in x
    cplx a0 = 0;
    int pivot = -1;
    Eigen::MatrixXd reduced_Q;
};

JonesSetup jones_setup(const OrderedTriangulation& tri, const AngleStructure& alpha, double b);
ContourSpec jones_contour(const JonesSetup& js, double b, const ContourOptions& opt = {});

// caches the free-axis nodes; each call only evaluates the pivot factor
class JonesIntegrator {
public:
    JonesIntegrator(const JonesSetup& js, double b, const ContourSpec& c);
    cplx operator()(cplx x) const;

private:
    const JonesSetup& js_;
    double b_;
    std::vector<int> free_;
    std::vector<std::vector<cplx>> y_, w_, logs_;
};

cplx jones_function(const JonesSetup& js, cplx x, double b, const ContourSpec& c);
cplx jones_function(const OrderedTriangulation& tri, cplx x, double b, const ContourOptions& opt = {});

struct Reconstruction {
    cplx integral;        // int J(x) e^{x lambda (1 + b^-2) / 4 pi} dx
    double expected = 0;  // |Z| (2 pi b)^N
    double rel_error = 0;
    double x_half_length = 0;
    int x_nodes = 0;
};

struct ReconstructionOptions {
    ContourOptions jones{.nodes = 640, .tilt = 0.1, .tail_exponent = 40};
    ContourOptions partition{};
    double x_panel = 2.0;     // width of one 20-point panel on the x-line
    double x_cutoff = 1e-12;  // stop once a panel pair falls below this relative size
    double x_max = 200;
};

Reconstruction jones_reconstruction(const OrderedTriangulation& tri, const AngleStructure& alpha, double b,
                                    const ReconstructionOptions& opt = {});

struct AsymptoticSample {
    double b = 0;
    double value = 0;
};

struct AsymptoticReport {
    std::vector<AsymptoticSample> samples;
    double fitted_rate = 0;
    double predicted_rate = 0;
    double fitted_prefactor = 0;
    double predicted_prefactor = 0;
    double rate_error = 0;
    double prefactor_error = 0;
    int degree = 0;
    std::vector<double> partial_rates;
};

// power: value is divided by (2 pi b)^power before fitting
AsymptoticReport fit_asymptotics(std::vector<AsymptoticSample> samples, double volume, double predicted_prefactor = 0,
                                 int power = 0);
// value of the polynomial fit in t at t = 0
double extrapolate_to_zero(const std::vector<double>& t, const std::vector<double>& y, int degree);

struct OperatorPolynomial {
    struct Term {
        cplx coef;
        int mpow = 0;
        int lpow = 0;
    };
    std::vector<Term> terms;
    cplx operator()(cplx M, cplx L) const;
};

OperatorPolynomial parse_polynomial(const std::string& text);
OperatorPolynomial load_polynomial(const std::string& path);

struct AJReport {
    std::vector<cplx> x, hl, values;
    double max_abs = 0;
};

// samples the geometric branch at H(l) targets, M = e^{H(m)/2}, L = e^{H(l)/2}
AJReport aj_evaluate(const OperatorPolynomial& poly, const OrderedTriangulation& tri,
                     const std::vector<cplx>& hl_targets, const std::string& meridian = "m");
std::vector<cplx> default_branch_samples(int count = 20);

}
