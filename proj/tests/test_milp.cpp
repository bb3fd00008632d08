#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "nrhf/generator.hpp"
#include "nrhf/instance_io.hpp"
#include "nrhf/milp.hpp"
#include "support/support.hpp"

using namespace nrhf;
using nrhf::testing::agent;
using nrhf::testing::edge;
using nrhf::testing::make_instance;

namespace {

std::set<std::string> tags_of(const milp::EmbedReport& r)
{
    std::set<std::string> out;
    for (const auto& v : r.violations)
        out.insert(v.tag);
    return out;
}

std::map<std::string, std::size_t> count_tags(const milp::Model& m)
{
    std::map<std::string, std::size_t> out;
    for (const auto& r : m.rows)
        ++out[r.tag];
    return out;
}

// Agent 0 crosses node 2 at t=1, agent 1 at t=2.
Instance crossing()
{
    return make_instance(5, {edge(0, 2, 1, 1, 1), edge(2, 3, 1, 1, 1), edge(1, 4, 1, 1, 1), edge(4, 2, 1, 1, 1)},
                         {agent(0, 3, 5, 5, 0), agent(1, 2, 5, 5, 0)});
}

}  // namespace

TEST(ExportMilp, TwoNodeOneAgent)
{
    const Instance inst = make_instance(2, {edge(0, 1, 3, 1, 1)}, {agent(0, 1, 5, 6, 2)});
    const milp::Model m = milp::export_milp(inst);
    int binaries = 0;
    for (const auto& v : m.vars)
        binaries += v.type == milp::VarType::Binary ? 1 : 0;
    EXPECT_EQ(binaries, 2);
    EXPECT_EQ(m.vars.size(), 8u);

    const int x = m.find("x_0_0_1");
    ASSERT_GE(x, 0);
    for (const auto& r : m.rows)
        if (r.tag == "deg_start" || r.tag == "deg_goal")
        {
            ASSERT_EQ(r.terms.size(), 1u);
            EXPECT_EQ(r.terms[0].var, x);
            EXPECT_EQ(r.sense, milp::Sense::Equal);
            EXPECT_EQ(r.rhs, 1);
        }
    EXPECT_EQ(count_tags(m).count("flow"), 0u);
    EXPECT_EQ(m.big_m, milp::required_big_m(inst, 1));
}

TEST(ExportMilp, ClosedFormCounts)
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 60; ++trial)
    {
        GridSpec s = nrhf::testing::tight_spec(2 + trial % 3, 2 + trial % 4, rng);
        const int U = 1 + trial % 4;
        const Instance inst = generate_instance(s, U);
        const milp::Model m = milp::export_milp(inst);
        const std::size_t N = inst.graph.node_count(), E = inst.graph.edge_count(), P = U * (U - 1) / 2;
        const auto c = count_tags(m);
        auto at = [&](const char* tag) { return c.count(tag) ? c.at(tag) : 0; };
        for (const char* tag : {"deg_start", "deg_goal", "batt_init", "fuel_init", "time_init"})
            EXPECT_EQ(at(tag), static_cast<std::size_t>(U)) << tag;
        EXPECT_EQ(at("flow"), U * (N - 2));
        for (const char* tag : {"batt_upper", "batt_lower", "fuel", "gen_use", "gen_noise", "time_lower", "time_upper"})
            EXPECT_EQ(at(tag), U * E) << tag;
        EXPECT_EQ(at("vertex_gate"), P * N);
        EXPECT_EQ(at("vertex_sep"), 2 * P * N);
        EXPECT_EQ(at("edge_sep"), 2 * P * E);  // every grid edge has its reverse
        EXPECT_EQ(m.vars.size(), U * (2 * E + 3 * N) + P * (2 * N + E));
    }
}

TEST(ExportMilp, BigMBelowBoundIsRefused)
{
    const Instance inst = crossing();
    milp::MilpConfig cfg;
    cfg.big_m = milp::required_big_m(inst, 1) - 0.5;
    EXPECT_THROW(milp::export_milp(inst, cfg), milp::MilpError);
    cfg.big_m = milp::required_big_m(inst, 1);
    EXPECT_NO_THROW(milp::export_milp(inst, cfg));
}

TEST(ExportMilp, DeterministicAndNameMapTotal)
{
    const Instance inst = generate_instance(GridSpec{}, 3);
    const milp::Model m = milp::export_milp(inst);
    const std::string lp = milp::write_lp(m);
    EXPECT_EQ(lp, milp::write_lp(milp::export_milp(inst)));

    std::set<std::string> mapped;
    std::istringstream map(milp::write_name_map(m));
    std::string line;
    while (std::getline(map, line))
        if (!line.empty() && line[0] != '#')
            mapped.insert(line.substr(0, line.find(' ')));
    EXPECT_EQ(mapped.size(), m.vars.size());

    // every identifier in the LP body that looks like a column is mapped, and vice versa
    std::set<std::string> used;
    std::istringstream body(lp);
    while (std::getline(body, line))
    {
        if (line.starts_with("\\"))
            continue;
        std::istringstream words(line);
        std::string tok;
        while (words >> tok)
            if (tok.find('_') != std::string::npos && tok.back() != ':')
                used.insert(tok);
    }
    EXPECT_EQ(used, mapped);
}

TEST(ExportMilp, GoldenTinyModel)
{
    const Instance inst = read_instance_file(std::string(NRHF_FIXTURE_DIR) + "/tiny.inst");
    const std::string golden = read_text_file(std::string(NRHF_FIXTURE_DIR) + "/lp/tiny.lp");
    EXPECT_EQ(milp::write_lp(milp::export_milp(inst)), golden);
}

TEST(EmbedSolution, CbsSolutionsAreFeasible)
{
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial)
    {
        GridSpec s = nrhf::testing::tight_spec(3, 3 + trial % 2, rng);
        s.battery_init = {4, 10};
        s.fuel_init = {5, 30};
        s.epsilon = 1 + trial % 2;
        const Instance inst = generate_instance(s, 2 + trial % 2);
        const CbsResult r = solve(inst);
        if (r.status != SearchStatus::Solved)
            continue;
        ++checked;
        const milp::Model m = milp::export_milp(inst);
        const milp::EmbedReport rep = milp::embed_solution(inst, m, *r.solution);
        ASSERT_TRUE(rep.feasible()) << "trial " << trial << ": "
                                    << (rep.violations.empty() ? rep.bound_violations.front() : rep.violations.front().row);
        ASSERT_EQ(rep.objective, r.solution->total_cost);
    }
    EXPECT_GT(checked, 150);
}

TEST(EmbedSolution, TimeShiftCollisionViolatesVertexSeparation)
{
    const Instance inst = crossing();
    const CbsResult r = solve(inst);
    ASSERT_EQ(r.status, SearchStatus::Solved);
    const milp::Model m = milp::export_milp(inst);
    EXPECT_TRUE(milp::embed_solution(inst, m, *r.solution).feasible());

    Solution shifted = *r.solution;
    for (int& t : shifted.plans[0].arrival_times)
        t += 1;
    const auto rep = milp::embed_solution(inst, m, shifted);
    EXPECT_TRUE(tags_of(rep).count("vertex_sep"));
    bool at_node_2 = false;
    for (const auto& v : rep.violations)
        at_node_2 |= v.row.starts_with("vertex_sep") && v.row.ends_with("_0_1_2");
    EXPECT_TRUE(at_node_2);
}

TEST(EmbedSolution, SwapViolatesEdgeSeparation)
{
    const Instance inst = make_instance(2, {edge(0, 1), edge(1, 0)}, {agent(0, 1), agent(1, 0)});
    Solution sol;
    Plan a;
    a.path = {0, 1};
    a.arrival_times = {0, 1};
    a.gen_pattern = {false};
    a.cost = 1;
    a.final_battery = 100;
    Plan b = a;
    b.path = {1, 0};
    sol.plans = {a, b};
    sol.total_cost = 2;
    const auto rep = milp::embed_solution(inst, milp::export_milp(inst), sol);
    EXPECT_TRUE(tags_of(rep).count("edge_sep"));
}

TEST(EmbedSolution, GeneratorInNoiseZone)
{
    const Instance inst = make_instance(3, {edge(0, 1, 1, 1, 2, false), edge(1, 2, 1, 1, 2, true)},
                                        {agent(0, 2, 5, 10, 10)});
    const CbsResult r = solve(inst);
    ASSERT_EQ(r.status, SearchStatus::Solved);
    Solution forced = *r.solution;
    forced.plans[0].gen_pattern[0] = true;
    const auto rep = milp::embed_solution(inst, milp::export_milp(inst), forced);
    EXPECT_TRUE(tags_of(rep).count("gen_noise"));
}
