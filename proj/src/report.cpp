#include "famedkit/report.hpp"

namespace famedkit {

std::string artifact_version() {
#ifdef FAMEDKIT_VERSION
    return FAMEDKIT_VERSION;
#else
    return "0.0.0";
#endif
}

json RunReport::to_json() const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["timings"] = json::object();
    for (const auto& [k, v] : timings) j["timings"][k] = v;
    j["versions"] = {{"artifact", artifact_version()}, {"format", kReportFormatVersion}};
    return j;
}

RunReport RunReport::from_json(const json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    for (const auto& [k, v] : j.at("timings").items()) r.timings[k] = v.get<double>();
    return r;
}

std::string render(const json& j) {
    return j.dump(2) + "\n";
}

StageTimer::StageTimer(RunReport& r, std::string stage)
    : report_(r), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}

StageTimer::~StageTimer() {
    auto dt = std::chrono::steady_clock::now() - start_;
    report_.timings[stage_] += std::chrono::duration<double, std::milli>(dt).count();
}

json complex_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

json complex_vector_json(const std::vector<cplx>& v) {
    json a = json::array();
    for (auto z : v) a.push_back(complex_json(z));
    return a;
}

json matrix_json(const IntMatrix& m) {
    json a = json::array();
    for (const auto& row : m) a.push_back(row);
    return a;
}

json matrix_json(const RatMatrix& m) {
    return to_strings(m);
}

json vector_json(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

json triangulation_json(const OrderedTriangulation& tri) {
    json j;
    j["name"] = tri.name;
    j["tetrahedra"] = tri.size();
    j["kind"] = tri.knot_complement ? "knot-complement" : "generic";
    j["signs"] = tri.signs();
    json faces = json::array();
    for (const auto& f : tri.faces)
        faces.push_back({{"name", f.name},
                         {"first", std::to_string(f.first.tet) + "." + std::to_string(f.first.face)},
                         {"second", std::to_string(f.second.tet) + "." + std::to_string(f.second.face)}});
    j["faces"] = faces;
    json edges = json::array();
    for (const auto& e : tri.edge_classes) {
        json slots = json::array();
        for (int s : e.slots) slots.push_back(std::to_string(s / 6) + ":" + std::to_string(kEdgeVertices[s % 6].first) +
                            std::to_string(kEdgeVertices[s % 6].second));
        edges.push_back(slots);
    }
    j["edge_classes"] = edges;
    json curves = json::array();
    for (const auto& c : tri.curves) curves.push_back(c.name);
    j["curves"] = curves;
    return j;
}

json kinematical_json(const KinematicalMatrices& km) {
    json j;
    j["face_names"] = km.face_names;
    j["R"] = matrix_json(km.R);
    j["A"] = matrix_json(km.A);
    j["B"] = matrix_json(km.B);
    j["detA"] = to_string(km.detA);
    if (!km.Q.empty()) {
        j["Q"] = matrix_json(km.Q);
        j["scriptG"] = matrix_json(km.scriptG);
    }
    return j;
}

json nz_json(const NZSystem& nz) {
    json j;
    j["convention"] = to_string(nz.convention);
    j["curve"] = nz.curve;
    j["dropped_edge"] = nz.dropped_edge;
    j["A"] = matrix_json(nz.A);
    j["B"] = matrix_json(nz.B);
    j["nu_over_pi"] = nz.nu;
    j["detB"] = to_string(nz.detB);
    if (!nz.Binv.empty()) {
        j["Binv"] = matrix_json(nz.Binv);
        j["BinvA"] = matrix_json(nz.BinvA);
    }
    return j;
}

json famed_json(const FamedCertificate& c) {
    json j;
    j["famed"] = c.famed;
    j["angle_space_nonempty"] = c.angle_space_nonempty;
    j["witness"] = c.witness;
    j["detA"] = to_string(c.detA);
    j["detA_nonzero"] = c.detA_nonzero;
    j["detB"] = to_string(c.detB);
    j["detB_nonzero"] = c.detB_nonzero;
    j["duality_holds"] = c.duality_holds;
    j["convention"] = to_string(c.convention);
    j["dropped_edge"] = c.dropped_edge;
    if (!c.BinvA.empty()) j["BinvA"] = matrix_json(c.BinvA);
    if (!c.scriptG.empty()) j["scriptG"] = matrix_json(c.scriptG);
    j["alt_detB"] = to_string(c.alt_detB);
    j["alt_duality_holds"] = c.alt_duality_holds;
    j["conventions_agree"] = c.conventions_agree;
    return j;
}

json volume_json(const VolumeReport& r) {
    json j;
    j["value"] = r.value;
    j["maximizer"] = r.maximizer.angles;
    j["slice_theta"] = r.slice_theta ? json(*r.slice_theta) : json(nullptr);
    j["converged"] = r.converged;
    j["kkt_residual"] = r.kkt_residual;
    j["iterations"] = r.iterations;
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

json shape_json(const ShapeSolution& s) {
    json j;
    j["z"] = complex_vector_json(s.z);
    j["y"] = complex_vector_json(s.y);
    j["residual"] = s.residual;
    j["u_target"] = complex_json(s.u_target);
    j["geometric"] = s.geometric;
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    if (!s.message.empty()) j["message"] = s.message;
    return j;
}

json flattening_json(const Flattening& f) {
    return {{"f", f.f}, {"fp", f.fp}, {"fpp", f.fpp}, {"strong", f.strong}, {"curves", f.curves}};
}

json asymptotic_json(const AsymptoticReport& r) {
    json j;
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back({{"b", s.b}, {"value", s.value}});
    j["samples"] = samples;
    j["degree"] = r.degree;
    j["fitted_rate"] = r.fitted_rate;
    j["predicted_rate"] = r.predicted_rate;
    j["rate_error"] = r.rate_error;
    j["fitted_prefactor"] = r.fitted_prefactor;
    j["predicted_prefactor"] = r.predicted_prefactor;
    j["prefactor_error"] = r.prefactor_error;
    j["partial_rates"] = r.partial_rates;
    return j;
}

}
