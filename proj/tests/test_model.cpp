#include <gtest/gtest.h>

#include <random>

#include "nrhf/generator.hpp"
#include "nrhf/instance_io.hpp"
#include "nrhf/solution_io.hpp"
#include "support/support.hpp"

using namespace nrhf;
using nrhf::testing::agent;
using nrhf::testing::edge;

namespace {

bool mentions(const std::vector<std::string>& msgs, const std::string& needle)
{
    for (const auto& m : msgs)
        if (m.find(needle) != std::string::npos)
            return true;
    return false;
}

}  // namespace

TEST(Graph, AdjacencyMatchesEdgeList)
{
    Graph g(3, {edge(0, 1), edge(1, 2), edge(2, 0), edge(0, 2)});
    EXPECT_EQ(g.edge_count(), 4);
    EXPECT_EQ(g.out_edges(0).size(), 2u);
    EXPECT_EQ(g.in_edges(2).size(), 2u);
    for (NodeId i = 0; i < 3; ++i)
    {
        for (EdgeIndex e : g.out_edges(i))
            EXPECT_EQ(g.edge(e).from, i);
        for (EdgeIndex e : g.in_edges(i))
            EXPECT_EQ(g.edge(e).to, i);
    }
    ASSERT_TRUE(g.find_edge(2, 0).has_value());
    EXPECT_FALSE(g.has_edge(1, 0));
}

TEST(Graph, RejectsOutOfRangeEndpoint)
{
    EXPECT_THROW(Graph(2, {edge(0, 2)}), std::invalid_argument);
}

TEST(Generator, TwoByTwoWithoutNoise)
{
    GridSpec s;
    s.rows = 2;
    s.cols = 2;
    s.noise_density = 0.0;
    Graph g = build_grid(s);
    EXPECT_EQ(g.node_count(), 4);
    EXPECT_EQ(g.edge_count(), 8);
    for (const Edge& e : g.edges())
        EXPECT_TRUE(e.attr.gen_allowed);
}

TEST(Generator, FiveByFiveEdgeCount)
{
    GridSpec s;
    Graph g = build_grid(s);
    EXPECT_EQ(g.node_count(), 25);
    EXPECT_EQ(g.edge_count(), 80);
}

TEST(Generator, SameSeedSameGraph)
{
    GridSpec s;
    s.seed = 42;
    EXPECT_EQ(build_grid(s), build_grid(s));
    GridSpec t = s;
    t.seed = 43;
    EXPECT_FALSE(build_grid(s) == build_grid(t));
}

TEST(Generator, GridProperties)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> side(2, 9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial)
    {
        GridSpec s;
        s.rows = side(rng);
        s.cols = side(rng);
        s.noise_density = unit(rng);
        s.seed = rng();
        const Graph g = build_grid(s);
        ASSERT_EQ(g.edge_count(), 2 * (s.rows * (s.cols - 1) + s.cols * (s.rows - 1)));
        int banned = 0;
        for (const Edge& e : g.edges())
        {
            auto rev = g.find_edge(e.to, e.from);
            ASSERT_TRUE(rev.has_value());
            ASSERT_EQ(e.attr.gen_allowed, g.edge(*rev).attr.gen_allowed);
            ASSERT_EQ(e.attr.travel_time, 1);
            banned += e.attr.gen_allowed ? 0 : 1;
        }
        const int pairs = g.edge_count() / 2;
        EXPECT_EQ(banned / 2, static_cast<int>(std::lround(s.noise_density * pairs)));

        const int agents = std::uniform_int_distribution<int>(1, s.rows * s.cols)(rng);
        const Instance inst = generate_instance(s, agents);
        EXPECT_TRUE(validate(inst).empty());
        EXPECT_EQ(inst, generate_instance(s, agents));
        for (const AgentSpec& a : inst.agents)
            EXPECT_EQ(a.start_time, 0);
    }
}

TEST(Generator, FourAgentsOnFiveByFive)
{
    const Instance inst = generate_instance(GridSpec{}, 4);
    ASSERT_EQ(inst.agent_count(), 4);
    std::set<NodeId> starts;
    for (const AgentSpec& a : inst.agents)
    {
        starts.insert(a.start);
        EXPECT_NE(a.start, a.goal);
    }
    EXPECT_EQ(starts.size(), 4u);
}

TEST(Generator, TooManyAgents)
{
    GridSpec s;
    s.rows = 2;
    s.cols = 2;
    EXPECT_THROW(generate_instance(s, 5), std::invalid_argument);
}

TEST(Generator, InvalidSpec)
{
    GridSpec s;
    s.battery_max = {5.0, 4.0};
    EXPECT_FALSE(s.problems().empty());
    EXPECT_THROW(build_grid(s), std::invalid_argument);
}

TEST(Validate, WellFormed)
{
    Instance inst{Graph(2, {edge(0, 1)}), {agent(0, 1)}, 1};
    EXPECT_TRUE(validate(inst).empty());
}

TEST(Validate, SharedStartNamesBothAgents)
{
    Instance inst{Graph(3, {edge(0, 1), edge(0, 2)}), {agent(0, 1), agent(0, 2)}, 1};
    const auto v = validate(inst);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("0"), std::string::npos);
    EXPECT_NE(v[0].find("1"), std::string::npos);
    EXPECT_TRUE(mentions(v, "start"));
}

TEST(Validate, BatteryAboveMax)
{
    Instance inst{Graph(2, {edge(0, 1)}), {agent(0, 1, 12.0, 10.0)}, 1};
    EXPECT_TRUE(mentions(validate(inst), "battery"));
}

TEST(Validate, ReportsEveryViolation)
{
    Instance inst{Graph(2, {Edge{0, 0, EdgeAttr{-1.0, 0, 0.0, 0.0, true}}}), {agent(1, 1, 5.0, 1.0)}, 0};
    EXPECT_GE(validate(inst).size(), 5u);
    EXPECT_THROW(require_valid(inst), std::invalid_argument);
}

TEST(InstanceIo, RoundTripGenerated)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial)
    {
        GridSpec s = nrhf::testing::tight_spec(2 + trial % 5, 2 + trial % 3, rng);
        s.value_step = trial % 2 == 0 ? 0.0 : 0.5;
        const Instance inst = generate_instance(s, 1 + trial % 4);
        ASSERT_EQ(load_instance(save_instance(inst)), inst);
    }
}

TEST(InstanceIo, TruncatedFile)
{
    const Instance inst = generate_instance(GridSpec{}, 3);
    const std::string text = save_instance(inst);
    for (std::size_t cut : {std::size_t{0}, std::size_t{10}, text.size() / 2, text.size() - 20})
        EXPECT_THROW(load_instance(text.substr(0, cut)), std::exception);
}

TEST(InstanceIo, UnknownFieldIsNamed)
{
    const std::string text = "nrhf-instance 1\n[graph]\nnode_count = 2\n0 1 1 1 0 0 1\n"
                             "[agents]\n0 1 5 5 0 0\n[params]\nepsilon = 1\nwind = 3\n";
    try
    {
        load_instance(text);
        FAIL() << "accepted an unknown field";
    }
    catch (const ParseError& e)
    {
        EXPECT_NE(std::string(e.what()).find("wind"), std::string::npos);
        EXPECT_EQ(e.line(), 9);
    }
}

TEST(InstanceIo, ValidationFailureAfterParse)
{
    const std::string text = "nrhf-instance 1\n[graph]\nnode_count = 2\n0 1 1 1 0 0 1\n"
                             "[agents]\n0 1 9 5 0 0\n[params]\nepsilon = 1\n";
    EXPECT_THROW(load_instance(text), std::invalid_argument);
}

TEST(InstanceIo, BadNumber)
{
    const std::string text = "nrhf-instance 1\n[graph]\nnode_count = 2\n0 1 x 1 0 0 1\n"
                             "[agents]\n0 1 5 5 0 0\n[params]\nepsilon = 1\n";
    EXPECT_THROW(load_instance(text), ParseError);
}

TEST(SolutionIo, RoundTrip)
{
    Solution sol;
    Plan p;
    p.path = {3, 4, 7};
    p.arrival_times = {0, 1, 2};
    p.gen_pattern = {true, false};
    p.cost = 4.5;
    p.final_battery = 0.25;
    p.final_fuel = 3;
    sol.plans = {p, p};
    sol.total_cost = 9;
    const Solution back = load_solution(save_solution(sol));
    ASSERT_EQ(back.plans.size(), 2u);
    EXPECT_EQ(back.total_cost, 9);
    EXPECT_EQ(back.plans[1].path, p.path);
    EXPECT_EQ(back.plans[1].arrival_times, p.arrival_times);
    EXPECT_EQ(back.plans[1].gen_pattern, p.gen_pattern);
    EXPECT_EQ(back.plans[1].final_battery, 0.25);
}

TEST(SolutionIo, RejectsMalformed)
{
    EXPECT_THROW(load_solution(""), ParseError);
    EXPECT_THROW(load_solution("nrhf-solution 1\n[agent 0]\n0 0 -\n"), ParseError);  // no total_cost
    EXPECT_THROW(load_solution("nrhf-solution 1\ntotal_cost = 1\n[agent 0]\n0 0 1\n"), ParseError);
    EXPECT_THROW(load_solution("nrhf-solution 1\ntotal_cost = 1\n[agent 1]\n0 0 -\n"), ParseError);
    EXPECT_THROW(load_solution("nrhf-solution 1\ntotal_cost = 1\nspeed = 2\n"), ParseError);
}
