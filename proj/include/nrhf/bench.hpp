#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nrhf/cbs.hpp"
#include "nrhf/generator.hpp"

namespace nrhf {

// One CSV row. Outcome is solved, infeasible, timeout, root-trivial, or error.
struct BenchRecord
{
    std::string instance_id;
    int nodes = 0;
    int agents = 0;
    std::string outcome;
    std::optional<double> total_cost;
    std::int64_t ct_nodes_expanded = 0;
    std::int64_t subproblem_calls = 0;
    double subproblem_s = 0.0;
    double wall_s = 0.0;
    std::optional<double> spp_subproblem_s;  // with compare_spp
};

std::string csv_header(bool compare_spp);
std::string csv_row(const BenchRecord& record, bool compare_spp);

// Solves one instance. A solved instance whose root node was already
// conflict-free is reported as root-trivial.
BenchRecord bench_instance(const std::string& id, const Instance& instance, const CbsOptions& options);

// Benchmarks every `*.inst` file in `dir` (sorted by name) with up to `jobs`
// concurrent solves. Rows come back in file order; unreadable files yield an
// error row.
std::vector<BenchRecord> bench_directory(const std::filesystem::path& dir, const CbsOptions& options, int jobs);

// Solves in parallel; result i belongs to instances[i].
std::vector<BenchRecord> bench_instances(const std::vector<std::pair<std::string, Instance>>& instances,
                                         const CbsOptions& options, int jobs);

enum class RootClass
{
    Conflicting,
    ConflictFree,
    Infeasible,
    Timeout,
};

// Plans every agent alone and classifies the root constraint-tree node.
RootClass classify_root(const Instance& instance, double time_budget_s);

struct GeneratedInstance
{
    std::uint64_t seed;
    Instance instance;
};

struct GenerateReport
{
    std::vector<GeneratedInstance> instances;
    int attempts = 0;
    int discarded_conflict_free = 0;
    int discarded_infeasible = 0;
    int discarded_timeout = 0;
};

struct BatchSpec
{
    GridSpec grid;  // grid.seed is the first attempt's seed; attempt k uses grid.seed + k
    int agents = 1;
    int count = 0;
    bool nontrivial = false;  // keep only instances whose root node has a conflict
    int attempt_cap = 0;      // 0: 20 * count + 100
    double screen_budget_s = 10.0;
};

// Throws std::runtime_error when the quota is not met within the attempt cap.
GenerateReport generate_batch(const BatchSpec& spec);

std::string format_report(const GenerateReport& report);

}  // namespace nrhf
