#include "nrhf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nrhf/instance_io.hpp"

namespace nrhf {

namespace {

std::string fixed(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn)
{
    const std::size_t workers = std::min<std::size_t>(std::max(1, jobs), std::max<std::size_t>(n, 1));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                fn(i);
        });
    for (auto& t : pool)
        t.join();
}

}  // namespace

std::string csv_header(bool compare_spp)
{
    std::string h = "instance_id,nodes,agents,outcome,total_cost,ct_nodes_expanded,subproblem_calls,subproblem_s,wall_s";
    if (compare_spp)
        h += ",nrhfsp_subproblem_s,spp_subproblem_s";
    return h;
}

std::string csv_row(const BenchRecord& r, bool compare_spp)
{
    std::ostringstream os;
    os << r.instance_id << ',' << r.nodes << ',' << r.agents << ',' << r.outcome << ','
       << (r.total_cost ? text::format_real(*r.total_cost) : "") << ',' << r.ct_nodes_expanded << ','
       << r.subproblem_calls << ',' << fixed(r.subproblem_s) << ',' << fixed(r.wall_s);
    if (compare_spp)
        os << ',' << fixed(r.subproblem_s) << ',' << (r.spp_subproblem_s ? fixed(*r.spp_subproblem_s) : "");
    return os.str();
}

BenchRecord bench_instance(const std::string& id, const Instance& instance, const CbsOptions& options)
{
    BenchRecord rec;
    rec.instance_id = id;
    rec.nodes = instance.graph.node_count();
    rec.agents = instance.agent_count();

    const CbsResult res = solve(instance, options);
    rec.outcome = to_string(res.status);
    rec.ct_nodes_expanded = res.stats.ct_nodes_expanded;
    rec.subproblem_calls = res.stats.subproblem_calls;
    rec.subproblem_s = res.stats.subproblem_seconds;
    rec.wall_s = res.stats.wall_seconds;
    if (options.compare_spp)
        rec.spp_subproblem_s = res.stats.spp_subproblem_seconds;
    if (res.status == SearchStatus::Solved)
    {
        if (!res.solution || !detect_conflicts(res.solution->plans, instance.epsilon).empty())
        {
            rec.outcome = "error";
            return rec;
        }
        rec.total_cost = res.solution->total_cost;
        if (res.stats.root_conflicts == 0)
            rec.outcome = "root-trivial";
    }
    return rec;
}

std::vector<BenchRecord> bench_instances(const std::vector<std::pair<std::string, Instance>>& instances,
                                         const CbsOptions& options, int jobs)
{
    std::vector<BenchRecord> out(instances.size());
    parallel_for(instances.size(), jobs,
                 [&](std::size_t i) { out[i] = bench_instance(instances[i].first, instances[i].second, options); });
    return out;
}

std::vector<BenchRecord> bench_directory(const std::filesystem::path& dir, const CbsOptions& options, int jobs)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".inst")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<BenchRecord> out(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) {
        const std::string id = files[i].stem().string();
        try
        {
            out[i] = bench_instance(id, read_instance_file(files[i]), options);
        }
        catch (const std::exception&)
        {
            BenchRecord rec;
            rec.instance_id = id;
            rec.outcome = "error";
            out[i] = rec;
        }
    });
    return out;
}

RootClass classify_root(const Instance& instance, double time_budget_s)
{
    CbsOptions opts;
    opts.time_budget_s = time_budget_s;
    CbsContext context(instance, opts);
    std::vector<Plan> plans;
    const ConstraintSet none;
    for (int k = 0; k < instance.agent_count(); ++k)
    {
        SubproblemResult sub = context.replan(k, none);
        if (sub.status == SearchStatus::Timeout)
            return RootClass::Timeout;
        if (sub.status == SearchStatus::Infeasible)
            return RootClass::Infeasible;
        plans.push_back(std::move(*sub.plan));
    }
    return first_conflict(plans, instance.epsilon) ? RootClass::Conflicting : RootClass::ConflictFree;
}

GenerateReport generate_batch(const BatchSpec& spec)
{
    GenerateReport report;
    if (spec.count < 0)
        throw std::invalid_argument("count must be non-negative");
    const int cap = spec.attempt_cap > 0 ? spec.attempt_cap : 20 * spec.count + 100;
    while (static_cast<int>(report.instances.size()) < spec.count)
    {
        if (report.attempts >= cap)
            throw std::runtime_error("generated " + std::to_string(report.instances.size()) + " of " +
                                     std::to_string(spec.count) + " instances within the attempt cap of " +
                                     std::to_string(cap) + "\n" + format_report(report));
        GridSpec grid = spec.grid;
        grid.seed = spec.grid.seed + static_cast<std::uint64_t>(report.attempts);
        ++report.attempts;
        Instance inst = generate_instance(grid, spec.agents);
        if (spec.nontrivial)
        {
            switch (classify_root(inst, spec.screen_budget_s))
            {
            case RootClass::Conflicting: break;
            case RootClass::ConflictFree: ++report.discarded_conflict_free; continue;
            case RootClass::Infeasible: ++report.discarded_infeasible; continue;
            case RootClass::Timeout: ++report.discarded_timeout; continue;
            }
        }
        report.instances.push_back(GeneratedInstance{grid.seed, std::move(inst)});
    }
    return report;
}

std::string format_report(const GenerateReport& r)
{
    std::ostringstream os;
    os << "kept = " << r.instances.size() << '\n'
       << "attempts = " << r.attempts << '\n'
       << "discarded_conflict_free = " << r.discarded_conflict_free << '\n'
       << "discarded_infeasible = " << r.discarded_infeasible << '\n'
       << "discarded_timeout = " << r.discarded_timeout << '\n';
    return os.str();
}

}  // namespace nrhf
