#pragma once

#include "famedkit/kinematical.hpp"

#include <optional>

namespace famedkit {

// shape symbol of an edge slot: 0 = z, 1 = z', 2 = z''
int shape_symbol(int slot, int sign);
// angle letter (0 = a, 1 = b, 2 = c) carrying a shape symbol
int symbol_angle(int symbol, int sign);

struct GluingMatrices {
    IntMatrix G, Gp, Gpp;             // retained edges then the curve row
    IntMatrix edgeG, edgeGp, edgeGpp;  // all edge classes
    std::vector<int> retained_edges;
    int dropped_edge = -1;
    std::string curve;
    long curve_nu = 0;
};

// empty curve: edge rows only
GluingMatrices edge_incidence(const OrderedTriangulation& tri, const std::string& curve = "l", int drop_edge = -1);

enum class Convention { GppMinusGp, GppMinusG };
std::string to_string(Convention c);
Convention parse_convention(const std::string& s);

struct NZSystem {
    IntMatrix A, B;
    std::vector<long> nu;  // multiples of pi
    int curve_row = -1;
    std::string curve;
    int dropped_edge = -1;
    std::vector<int> retained_edges;
    Convention convention = Convention::GppMinusGp;
    Rational detB;
    RatMatrix Binv;  // empty when singular
    RatMatrix BinvA;
};

NZSystem assemble_nz(const GluingMatrices& gm, Convention convention = Convention::GppMinusGp);

struct NZOptions {
    std::string curve = "l";
    int drop_edge = -1;
    Convention convention = Convention::GppMinusGp;
};

NZSystem nz_system(const OrderedTriangulation& tri, const NZOptions& opt = {});

// row of a peripheral curve in eliminated form: (a, b, nu/pi)
struct CurveRow {
    std::vector<long> a, b;
    long nu = 0;
};
CurveRow curve_row(const PeripheralCurve& c, Convention convention = Convention::GppMinusGp);

struct FamedCertificate {
    bool angle_space_nonempty = false;
    std::vector<double> witness;
    bool detA_nonzero = false;
    Rational detA;
    bool detB_nonzero = false;
    Rational detB;
    bool duality_holds = false;
    bool famed = false;
    Convention convention = Convention::GppMinusGp;
    int dropped_edge = -1;
    RatMatrix BinvA;
    RatMatrix scriptG;
    // the other elimination convention
    Rational alt_detB;
    bool alt_duality_holds = false;
    bool conventions_agree = true;
};

FamedCertificate famed_check(const OrderedTriangulation& tri, const NZOptions& opt = {});

}
