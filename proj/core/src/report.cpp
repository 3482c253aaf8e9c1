#include "dbar/report.hpp"

#include <json.hpp>

namespace dbar {

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["provenance"] = {{"config_hash", config_hash},
                       {"seed", seed},
                       {"grid", {{"nr", grid_nr}, {"ntheta", grid_ntheta}}}};
    j["all_pass"] = all_pass();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"observed", c.observed},
                       {"bound_or_target", c.bound_or_target},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    }
    j["checks"] = arr;
    return j.dump(2);
}

}  // namespace dbar
