#pragma once

#include "famedkit/report.hpp"

namespace famedkit {

struct CriterionResult {
    std::string id;
    bool passed = false;
    std::string summary;
    double seconds = 0;
    json details = json::object();
};

std::vector<std::string> acceptance_ids();
CriterionResult run_criterion(const std::string& id);
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& ids = {});
std::string format_line(const CriterionResult& r);

// closed-form twist-knot matrices, rows and columns ordered t_1..t_p, U, V, W
RatMatrix twist_Q(int n);
RatMatrix twist_scriptG(int n);
// columns ordered s, 0, 1, ..., p-1, p+1, H
RatMatrix twist_Binv(int n);
// edge class labels ("s", "0", ..., "p+1") of a twist preset, by incidence counts
std::vector<std::string> twist_edge_labels(const OrderedTriangulation& tri, int n);

}
