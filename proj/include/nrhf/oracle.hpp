#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "nrhf/cbs.hpp"
#include "nrhf/constraints.hpp"
#include "nrhf/instance.hpp"
#include "nrhf/plan.hpp"

namespace nrhf::oracle {

// Brute-force ground truth for desk-sized instances. Nothing here shares code
// with the label search or CBS; resource updates and conflict tests are
// re-derived from the model definition.

struct OracleLimits
{
    int max_nodes = 16;
    int horizon = 12;  // latest admissible arrival time
    int max_agents = 3;
};

class OracleRefusal : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Exhaustive search over every elementary timed path and every generator
// pattern. Ties go to the lexicographically smallest path, then pattern.
std::optional<Plan> brute_force_single(const Instance& instance, int agent, const ConstraintSet& constraints,
                                       const OracleLimits& limits = {});

// Every elementary path start -> goal within the horizon that admits at
// least one feasible generator pattern, each with its lexicographically
// smallest such pattern. Sorted by cost, then path.
std::vector<Plan> all_feasible_plans(const Instance& instance, int agent, const OracleLimits& limits = {});

// Independent pairwise conflict test under the vanish-at-target model.
bool plans_conflict(const Plan& p, const Plan& q, int epsilon);

// Minimum total cost over the cross product of every agent's feasible plans.
std::optional<Solution> brute_force_joint(const Instance& instance, const OracleLimits& limits = {});

}  // namespace nrhf::oracle
