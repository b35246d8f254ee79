#ifndef PRSA_VERIFY_HPP
#define PRSA_VERIFY_HPP

#include <string>
#include <vector>

#include "prsa/io.hpp"

namespace prsa {

/// Outcome of one named verification scenario. Every tolerance is pinned in
/// the scenario itself; `report` carries the full comparison payload.
struct ScenarioResult {
    std::string name;
    bool passed = false;
    Json report;
};

/// Names accepted by run_scenario, in acceptance order.
const std::vector<std::string>& scenario_names();

/// Runs one scenario end to end with its pinned seeds and tolerances.
/// Unknown names raise ModelError.
ScenarioResult run_scenario(const std::string& name);

}  // namespace prsa

#endif
