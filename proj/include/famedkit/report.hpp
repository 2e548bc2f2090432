#pragma once

#include "famedkit/partition.hpp"

#include <json.hpp>

#include <chrono>
#include <map>

namespace famedkit {

using json = nlohmann::ordered_json;

constexpr int kReportFormatVersion = 1;
std::string artifact_version();

struct RunReport {
    std::string command;
    json inputs = json::object();
    json outputs = json::object();
    std::map<std::string, double> timings;  // milliseconds

    json to_json() const;
    static RunReport from_json(const json& j);
};

// pretty-printed, trailing newline
std::string render(const json& j);

class StageTimer {
public:
    explicit StageTimer(RunReport& r, std::string stage);
    ~StageTimer();

private:
    RunReport& report_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

json complex_json(cplx z);
json complex_vector_json(const std::vector<cplx>& v);
json matrix_json(const IntMatrix& m);
json matrix_json(const RatMatrix& m);
json vector_json(const Eigen::VectorXd& v);

json triangulation_json(const OrderedTriangulation& tri);
json kinematical_json(const KinematicalMatrices& km);
json nz_json(const NZSystem& nz);
json famed_json(const FamedCertificate& c);
json volume_json(const VolumeReport& r);
json shape_json(const ShapeSolution& s);
json flattening_json(const Flattening& f);
json asymptotic_json(const AsymptoticReport& r);

}
