#include <iostream>

#include "famedkit/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(argv[i]);
    bool all = true;
    for (const auto& id : ids.empty() ? famedkit::acceptance_ids() : ids) {
        auto r = famedkit::run_criterion(id);
        std::cout << famedkit::format_line(r) << std::endl;
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
