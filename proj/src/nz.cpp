#include "famedkit/nz.hpp"

#include "famedkit/angles.hpp"

namespace famedkit {

int shape_symbol(int slot, int sign) {
    int letter = kEdgeAngle[slot];
    if (letter == 0) return 0;
    if (sign > 0) return letter == 2 ? 1 : 2;
    return letter == 1 ? 1 : 2;
}

int symbol_angle(int symbol, int sign) {
    if (symbol == 0) return 0;
    if (sign > 0) return symbol == 1 ? 2 : 1;
    return symbol == 1 ? 1 : 2;
}

GluingMatrices edge_incidence(const OrderedTriangulation& tri, const std::string& curve, int drop_edge) {
    const int n = tri.size();
    const int ne = static_cast<int>(tri.edge_classes.size());
    GluingMatrices gm;
    gm.edgeG.assign(ne, std::vector<long>(n, 0));
    gm.edgeGp = gm.edgeG;
    gm.edgeGpp = gm.edgeG;
    for (int e = 0; e < ne; ++e)
        for (int s : tri.edge_classes[e].slots) {
            int t = s / 6;
            switch (shape_symbol(s % 6, tri.tets[t].sign)) {
                case 0: ++gm.edgeG[e][t]; break;
                case 1: ++gm.edgeGp[e][t]; break;
                default: ++gm.edgeGpp[e][t]; break;
            }
        }
    const PeripheralCurve* c = nullptr;
    if (!curve.empty()) {
        c = tri.curve(curve);
        if (!c) throw InputError("missing curve data: '" + curve + "'");
        gm.curve = curve;
        gm.curve_nu = c->nu;
    }
    gm.dropped_edge = drop_edge < 0 ? ne - 1 : drop_edge;
    if (gm.dropped_edge >= ne) throw InputError("dropped edge out of range");
    for (int e = 0; e < ne; ++e) {
        if (e == gm.dropped_edge) continue;
        gm.retained_edges.push_back(e);
        gm.G.push_back(gm.edgeG[e]);
        gm.Gp.push_back(gm.edgeGp[e]);
        gm.Gpp.push_back(gm.edgeGpp[e]);
    }
    if (!c) return gm;
    gm.G.push_back(c->C);
    gm.Gp.push_back(c->Cp);
    gm.Gpp.push_back(c->Cpp);
    return gm;
}

std::string to_string(Convention c) {
    return c == Convention::GppMinusGp ? "gpp-gp" : "gpp-g";
}

Convention parse_convention(const std::string& s) {
    if (s == "gpp-gp") return Convention::GppMinusGp;
    if (s == "gpp-g") return Convention::GppMinusG;
    throw InputError("unknown convention '" + s + "'");
}

NZSystem assemble_nz(const GluingMatrices& gm, Convention convention) {
    NZSystem nz;
    nz.convention = convention;
    nz.curve = gm.curve;
    nz.dropped_edge = gm.dropped_edge;
    nz.retained_edges = gm.retained_edges;
    const size_t rows = gm.G.size();
    const size_t n = rows ? gm.G[0].size() : 0;
    nz.A.assign(rows, std::vector<long>(n, 0));
    nz.B = nz.A;
    nz.nu.assign(rows, 0);
    for (size_t i = 0; i < rows; ++i) {
        long sp = 0;
        for (size_t k = 0; k < n; ++k) {
            nz.A[i][k] = gm.G[i][k] - gm.Gp[i][k];
            nz.B[i][k] = convention == Convention::GppMinusGp ? gm.Gpp[i][k] - gm.Gp[i][k] : gm.Gpp[i][k] - gm.G[i][k];
            sp += gm.Gp[i][k];
        }
        nz.nu[i] = i + 1 == rows ? gm.curve_nu - sp : 2 - sp;
    }
    nz.curve_row = static_cast<int>(rows) - 1;
    auto B = to_rational(nz.B);
    // more or fewer edge classes than tetrahedra: B is not square
    nz.detB = rows == n ? determinant(B) : Rational(0);
    if (nz.detB != 0) {
        nz.Binv = inverse(B);
        nz.BinvA = multiply(nz.Binv, to_rational(nz.A));
    }
    return nz;
}

NZSystem nz_system(const OrderedTriangulation& tri, const NZOptions& opt) {
    return assemble_nz(edge_incidence(tri, opt.curve, opt.drop_edge), opt.convention);
}

CurveRow curve_row(const PeripheralCurve& c, Convention convention) {
    CurveRow r;
    long sp = 0;
    for (size_t k = 0; k < c.C.size(); ++k) {
        r.a.push_back(c.C[k] - c.Cp[k]);
        r.b.push_back(convention == Convention::GppMinusGp ? c.Cpp[k] - c.Cp[k] : c.Cpp[k] - c.C[k]);
        sp += c.Cp[k];
    }
    r.nu = c.nu - sp;
    return r;
}

FamedCertificate famed_check(const OrderedTriangulation& tri, const NZOptions& opt) {
    FamedCertificate cert;
    cert.convention = opt.convention;
    if (auto w = feasibility(tri)) {
        cert.angle_space_nonempty = true;
        cert.witness = w->angles;
    }
    auto km = kinematical(tri);
    cert.detA = km.detA;
    cert.detA_nonzero = km.detA != 0;
    cert.scriptG = km.scriptG;
    auto gm = edge_incidence(tri, opt.curve, opt.drop_edge);
    auto nz = assemble_nz(gm, opt.convention);
    cert.dropped_edge = nz.dropped_edge;
    cert.detB = nz.detB;
    cert.detB_nonzero = nz.detB != 0;
    cert.BinvA = nz.BinvA;
    cert.duality_holds = cert.detA_nonzero && cert.detB_nonzero && nz.BinvA == km.scriptG;
    auto alt = assemble_nz(gm, opt.convention == Convention::GppMinusGp ? Convention::GppMinusG : Convention::GppMinusGp);
    cert.alt_detB = alt.detB;
    cert.alt_duality_holds = cert.detA_nonzero && alt.detB != 0 && alt.BinvA == km.scriptG;
    cert.conventions_agree = alt.B == nz.B;
    cert.famed = cert.angle_space_nonempty && cert.detA_nonzero && cert.detB_nonzero && cert.duality_holds;
    return cert;
}

}
