#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrhf/cbs.hpp"
#include "nrhf/instance.hpp"

namespace nrhf::milp {

class MilpError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct MilpConfig
{
    std::optional<double> big_m;    // default: required_big_m(instance, epsilon)
    std::optional<double> epsilon;  // default: instance epsilon
    int naming_version = 1;
};

enum class VarType
{
    Binary,
    Continuous,
};

// What a column stands for. Unused index fields hold -1.
struct VarInfo
{
    std::string symbol;  // x, g, b, q, t, yv, uv, ye
    int agent = -1;
    int agent_b = -1;    // pairwise separation variables
    NodeId i = kNoNode;  // node, or edge tail
    NodeId j = kNoNode;  // edge head
};

struct Variable
{
    std::string name;
    VarType type = VarType::Continuous;
    double lower = 0.0;
    double upper = 0.0;
    VarInfo info;
};

enum class Sense
{
    LessEqual,
    GreaterEqual,
    Equal,
};

struct Term
{
    int var;
    double coef;
};

// Row tags name the model family each row belongs to:
//   deg_start deg_goal flow              path degree / conservation
//   batt_init batt_upper batt_lower      battery propagation
//   fuel_init fuel                       generator fuel propagation
//   gen_use gen_noise                    generator only on used, non-restricted edges
//   time_init time_lower time_upper      arrival-time propagation
//   vertex_sep vertex_gate edge_sep      linearised conflict separation
struct Row
{
    std::string name;
    std::string tag;
    std::vector<Term> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

struct Model
{
    std::vector<Variable> vars;
    std::vector<Term> objective;  // minimised
    std::vector<Row> rows;
    double big_m = 0.0;
    double epsilon = 0.0;

    int find(const std::string& name) const;
};

// Smallest big-M that keeps every deactivated row slack for this instance.
double required_big_m(const Instance& instance, double epsilon);

// Builds the full model and asserts the closed-form row counts per tag.
// Throws MilpError if a configured big_m is below required_big_m.
Model export_milp(const Instance& instance, const MilpConfig& config = {});

// LP text in the CPLEX-LP dialect understood by most MILP solvers.
std::string write_lp(const Model& model);

// Sidecar: one line per column, `name symbol agent agent_b i j`.
std::string write_name_map(const Model& model);

struct RowViolation
{
    std::string row;
    std::string tag;
    double lhs;
    double rhs;
};

struct EmbedReport
{
    std::vector<double> assignment;  // indexed like Model::vars
    std::vector<RowViolation> violations;
    std::vector<std::string> bound_violations;
    double objective = 0.0;

    bool feasible() const { return violations.empty() && bound_violations.empty(); }
};

inline constexpr double kRowTolerance = 1e-7;

// Derives the full assignment implied by the plans and evaluates every row.
EmbedReport embed_solution(const Instance& instance, const Model& model, const Solution& solution);

}  // namespace nrhf::milp
