// nrhf: generate, solve, verify, benchmark, and export NRHF-MAPF instances.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nrhf/bench.hpp"
#include "nrhf/cbs.hpp"
#include "nrhf/instance_io.hpp"
#include "nrhf/milp.hpp"
#include "nrhf/oracle.hpp"
#include "nrhf/solution_io.hpp"

namespace fs = std::filesystem;
using namespace nrhf;

namespace {

enum ExitCode
{
    kOk = 0,
    kError = 1,
    kInfeasible = 2,
    kTimeout = 3,
};

int exit_for(SearchStatus s)
{
    switch (s)
    {
    case SearchStatus::Solved: return kOk;
    case SearchStatus::Infeasible: return kInfeasible;
    case SearchStatus::Timeout: return kTimeout;
    }
    return kError;
}

struct GridArgs
{
    GridSpec spec;
    std::vector<double> travel_cost = pair(spec.travel_cost), energy_cost = pair(spec.energy_cost),
                        recharge = pair(spec.recharge), battery_init = pair(spec.battery_init),
                        battery_max = pair(spec.battery_max), fuel_init = pair(spec.fuel_init);

    static std::vector<double> pair(Range r) { return {r.min, r.max}; }

    void add_to(CLI::App& app)
    {
        app.add_option("--rows", spec.rows, "Grid rows")->capture_default_str();
        app.add_option("--cols", spec.cols, "Grid columns")->capture_default_str();
        app.add_option("--noise-density", spec.noise_density, "Fraction of adjacencies where the generator is banned")
            ->capture_default_str();
        app.add_option("--value-step", spec.value_step, "Lattice step for drawn values, 0 for continuous")
            ->capture_default_str();
        app.add_option("--travel-cost", travel_cost, "MIN MAX")->expected(2)->capture_default_str();
        app.add_option("--energy-cost", energy_cost, "MIN MAX")->expected(2)->capture_default_str();
        app.add_option("--recharge", recharge, "MIN MAX")->expected(2)->capture_default_str();
        app.add_option("--battery-init", battery_init, "MIN MAX")->expected(2)->capture_default_str();
        app.add_option("--battery-max", battery_max, "MIN MAX")->expected(2)->capture_default_str();
        app.add_option("--fuel-init", fuel_init, "MIN MAX")->expected(2)->capture_default_str();
    }

    GridSpec resolve(std::uint64_t seed, int epsilon) const
    {
        GridSpec g = spec;
        g.travel_cost = {travel_cost[0], travel_cost[1]};
        g.energy_cost = {energy_cost[0], energy_cost[1]};
        g.recharge = {recharge[0], recharge[1]};
        g.battery_init = {battery_init[0], battery_init[1]};
        g.battery_max = {battery_max[0], battery_max[1]};
        g.fuel_init = {fuel_init[0], fuel_init[1]};
        g.seed = seed;
        g.epsilon = epsilon;
        return g;
    }
};

struct SolveArgs
{
    double timeout_s = 120.0;
    std::optional<int> horizon;
    std::optional<int> epsilon;

    void add_to(CLI::App& app)
    {
        app.add_option("--timeout-s", timeout_s, "Wall-clock budget per instance")->capture_default_str();
        app.add_option("--horizon", horizon, "Latest admissible arrival time for every agent");
        app.add_option("--epsilon", epsilon, "Override the instance's conflict threshold");
    }

    CbsOptions options() const
    {
        CbsOptions o;
        o.time_budget_s = timeout_s;
        o.horizon = horizon;
        return o;
    }

    Instance load(const std::string& path) const
    {
        Instance inst = read_instance_file(path);
        if (epsilon)
        {
            inst.epsilon = *epsilon;
            require_valid(inst);
        }
        return inst;
    }
};

// Replay, pairwise conflicts, MILP embedding, and the brute-force optimum
// when the instance is small enough. Returns one message per failure.
std::vector<std::string> verify_solution(const Instance& inst, const Solution& sol, std::optional<int> horizon)
{
    std::vector<std::string> problems;
    if (static_cast<int>(sol.plans.size()) != inst.agent_count())
    {
        problems.push_back("solution has " + std::to_string(sol.plans.size()) + " plans for " +
                           std::to_string(inst.agent_count()) + " agents");
        return problems;
    }
    double total = 0.0;
    for (int k = 0; k < inst.agent_count(); ++k)
    {
        for (const auto& p : check_plan(inst, k, sol.plans[k]))
            problems.push_back("agent " + std::to_string(k) + ": " + p);
        total += sol.plans[k].cost;
    }
    if (std::abs(total - sol.total_cost) > 1e-9)
        problems.push_back("total_cost does not equal the sum of plan costs");
    for (const Conflict& c : detect_conflicts(sol.plans, inst.epsilon))
        problems.push_back(std::string(c.kind == ConflictKind::Vertex ? "vertex" : "edge") + " conflict between " +
                           std::to_string(c.agent_a) + " and " + std::to_string(c.agent_b) + " at time " +
                           std::to_string(c.time));
    if (!problems.empty())
        return problems;

    const milp::Model model = milp::export_milp(inst);
    const milp::EmbedReport rep = milp::embed_solution(inst, model, sol);
    for (const auto& v : rep.violations)
        problems.push_back("milp row " + v.row + " violated: lhs " + text::format_real(v.lhs) + " rhs " +
                           text::format_real(v.rhs));
    for (const auto& b : rep.bound_violations)
        problems.push_back("milp bound: " + b);
    if (std::abs(rep.objective - sol.total_cost) > 1e-9)
        problems.push_back("milp objective differs from total_cost");

    oracle::OracleLimits limits;
    limits.horizon = horizon.value_or(limits.horizon);
    bool oracle_applies = inst.graph.node_count() <= limits.max_nodes && inst.agent_count() <= limits.max_agents;
    for (const Plan& p : sol.plans)
        oracle_applies = oracle_applies && p.arrival_times.back() <= limits.horizon;
    if (oracle_applies)
    {
        auto best = oracle::brute_force_joint(inst, limits);
        if (!best)
            problems.push_back("oracle finds no solution within horizon " + std::to_string(limits.horizon));
        else if (best->total_cost != sol.total_cost)
            problems.push_back("oracle optimum " + text::format_real(best->total_cost) + " differs from " +
                               text::format_real(sol.total_cost));
        else
            std::cerr << "oracle: optimum " << text::format_real(best->total_cost) << " confirmed\n";
    }
    return problems;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& rows, bool compare_spp)
{
    os << csv_header(compare_spp) << '\n';
    for (const auto& r : rows)
        os << csv_row(r, compare_spp) << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Conflict-based search for noise-restricted hybrid-fuel multi-agent path finding"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    int epsilon = 1;

    // generate
    auto* gen = app.add_subcommand("generate", "Write random grid instances");
    GridArgs gen_grid;
    gen_grid.add_to(*gen);
    int gen_agents = 4, gen_count = 1, attempt_cap = 0;
    bool nontrivial = false;
    std::string out_dir = ".", prefix = "inst";
    double screen_s = 10.0;
    gen->add_option("--agents", gen_agents, "Agents per instance")->capture_default_str();
    gen->add_option("--count", gen_count, "Instances to write")->capture_default_str();
    gen->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    gen->add_option("--prefix", prefix, "File name prefix")->capture_default_str();
    gen->add_option("--seed", seed, "Seed of the first attempt")->capture_default_str();
    gen->add_option("--epsilon", epsilon, "Conflict threshold")->capture_default_str();
    gen->add_flag("--nontrivial", nontrivial, "Discard instances whose root node is conflict-free or infeasible");
    gen->add_option("--attempt-cap", attempt_cap, "Give up after this many attempts (0: 20*count+100)");
    gen->add_option("--screen-timeout-s", screen_s, "Budget for planning the root node during screening")
        ->capture_default_str();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance with CBS");
    std::string inst_path, sol_out, stats_out;
    SolveArgs solve_args;
    bool verify_after = false;
    solve_cmd->add_option("instance", inst_path, "Instance file")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("-o,--out", sol_out, "Solution file");
    solve_cmd->add_option("--stats-file", stats_out, "Statistics file (default: stdout)")
        ->check([](const std::string& v) { return v.starts_with("-") ? std::string("expected a file name") : std::string(); });
    solve_cmd->add_flag("--verify", verify_after, "Check the solution by replay, MILP embedding, and oracle");
    solve_args.add_to(*solve_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Check a solution file against an instance");
    std::string verify_inst, verify_sol;
    std::optional<int> verify_horizon;
    verify_cmd->add_option("instance", verify_inst, "Instance file")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("solution", verify_sol, "Solution file")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--horizon", verify_horizon, "Oracle horizon");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Solve every .inst file in a directory and write CSV");
    std::string bench_dir, csv_out;
    SolveArgs bench_args;
    int jobs = 1;
    bool compare_spp = false;
    bench_cmd->add_option("dir", bench_dir, "Instance directory")->required()->check(CLI::ExistingDirectory);
    bench_cmd->add_option("-o,--out", csv_out, "CSV file (default: stdout)");
    bench_cmd->add_option("--jobs", jobs, "Concurrent solves")->capture_default_str()->check(CLI::PositiveNumber);
    bench_cmd->add_flag("--compare-spp", compare_spp, "Also time a resource-free A* for every subproblem");
    bench_args.add_to(*bench_cmd);

    // export-milp
    auto* export_cmd = app.add_subcommand("export-milp", "Write the MILP model in LP format");
    std::string export_inst, lp_out;
    std::optional<double> big_m;
    std::optional<double> export_eps;
    export_cmd->add_option("instance", export_inst, "Instance file")->required()->check(CLI::ExistingFile);
    export_cmd->add_option("-o,--out", lp_out, "LP file; the name map goes to <out>.names")->required();
    export_cmd->add_option("--big-m", big_m, "Big-M constant (default: smallest valid)");
    export_cmd->add_option("--epsilon", export_eps, "Separation threshold (default: instance epsilon)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    try
    {
        if (*gen)
        {
            BatchSpec batch;
            batch.grid = gen_grid.resolve(seed, epsilon);
            batch.agents = gen_agents;
            batch.count = gen_count;
            batch.nontrivial = nontrivial;
            batch.attempt_cap = attempt_cap;
            batch.screen_budget_s = screen_s;
            const auto problems = batch.grid.problems();
            if (!problems.empty())
            {
                for (const auto& p : problems)
                    std::cerr << "error: " << p << '\n';
                return kError;
            }
            const GenerateReport report = generate_batch(batch);
            fs::create_directories(out_dir);
            for (std::size_t k = 0; k < report.instances.size(); ++k)
            {
                char name[64];
                std::snprintf(name, sizeof name, "%s_%03zu.inst", prefix.c_str(), k);
                write_instance_file(fs::path(out_dir) / name, report.instances[k].instance);
            }
            write_text_file(fs::path(out_dir) / (prefix + "_report.txt"), format_report(report));
            std::cout << format_report(report);
            return kOk;
        }

        if (*solve_cmd)
        {
            const Instance inst = solve_args.load(inst_path);
            const CbsResult res = solve(inst, solve_args.options());
            const std::string stats = format_stats(res.stats, res.status);
            if (stats_out.empty())
                std::cout << stats;
            else
                write_text_file(stats_out, stats);
            if (res.solution)
            {
                if (!sol_out.empty())
                    write_text_file(sol_out, save_solution(*res.solution));
                if (verify_after)
                {
                    const auto problems = verify_solution(inst, *res.solution, solve_args.horizon);
                    for (const auto& p : problems)
                        std::cerr << "verify: " << p << '\n';
                    if (!problems.empty())
                        return kError;
                    std::cerr << "verify: pass\n";
                }
            }
            return exit_for(res.status);
        }

        if (*verify_cmd)
        {
            const Instance inst = read_instance_file(verify_inst);
            const Solution sol = load_solution(read_text_file(verify_sol));
            const auto problems = verify_solution(inst, sol, verify_horizon);
            for (const auto& p : problems)
                std::cerr << "verify: " << p << '\n';
            if (!problems.empty())
                return kError;
            std::cout << "verify: pass\n";
            return kOk;
        }

        if (*bench_cmd)
        {
            CbsOptions opts = bench_args.options();
            opts.compare_spp = compare_spp;
            const auto rows = bench_directory(bench_dir, opts, jobs);
            if (csv_out.empty())
                write_csv(std::cout, rows, compare_spp);
            else
            {
                std::ofstream os(csv_out);
                if (!os)
                    throw std::runtime_error("cannot write " + csv_out);
                write_csv(os, rows, compare_spp);
            }
            return kOk;
        }

        if (*export_cmd)
        {
            const Instance inst = read_instance_file(export_inst);
            milp::MilpConfig cfg;
            cfg.big_m = big_m;
            cfg.epsilon = export_eps;
            const milp::Model model = milp::export_milp(inst, cfg);
            write_text_file(lp_out, milp::write_lp(model));
            write_text_file(lp_out + ".names", milp::write_name_map(model));
            return kOk;
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
