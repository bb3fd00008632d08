#include <gtest/gtest.h>

#include <filesystem>

#include "nrhf/bench.hpp"
#include "nrhf/instance_io.hpp"
#include "support/support.hpp"

using namespace nrhf;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("nrhf_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

BatchSpec small_batch(int count)
{
    BatchSpec b;
    b.grid.seed = 500;
    b.agents = 4;
    b.count = count;
    b.nontrivial = true;
    return b;
}

}  // namespace

TEST(GenerateBatch, NontrivialInstancesHaveRootConflicts)
{
    const GenerateReport rep = generate_batch(small_batch(20));
    ASSERT_EQ(rep.instances.size(), 20u);
    EXPECT_EQ(rep.attempts,
              20 + rep.discarded_conflict_free + rep.discarded_infeasible + rep.discarded_timeout);
    for (const auto& g : rep.instances)
        EXPECT_EQ(classify_root(g.instance, 10), RootClass::Conflicting);
}

TEST(GenerateBatch, CountZero)
{
    const GenerateReport rep = generate_batch(small_batch(0));
    EXPECT_TRUE(rep.instances.empty());
    EXPECT_EQ(rep.attempts, 0);
}

TEST(GenerateBatch, Deterministic)
{
    const GenerateReport a = generate_batch(small_batch(8));
    const GenerateReport b = generate_batch(small_batch(8));
    ASSERT_EQ(a.instances.size(), b.instances.size());
    for (std::size_t k = 0; k < a.instances.size(); ++k)
    {
        EXPECT_EQ(a.instances[k].seed, b.instances[k].seed);
        EXPECT_EQ(save_instance(a.instances[k].instance), save_instance(b.instances[k].instance));
    }
}

TEST(GenerateBatch, AttemptCapReached)
{
    BatchSpec b = small_batch(5);
    b.attempt_cap = 3;
    b.grid.rows = 2;
    b.grid.cols = 2;
    b.agents = 1;  // a single agent never has a root conflict
    EXPECT_THROW(generate_batch(b), std::runtime_error);
}

TEST(Bench, CsvShape)
{
    BenchRecord r;
    r.instance_id = "inst_000";
    r.nodes = 25;
    r.agents = 4;
    r.outcome = "solved";
    r.total_cost = 12.5;
    r.spp_subproblem_s = 0.001;
    const std::string header = csv_header(false);
    const std::string row = csv_row(r, false);
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
    const std::string wide_header = csv_header(true);
    EXPECT_EQ(std::count(wide_header.begin(), wide_header.end(), ','),
              std::count(header.begin(), header.end(), ',') + 2);
    const std::string wide = csv_row(r, true);
    EXPECT_EQ(std::count(wide.begin(), wide.end(), ','), std::count(header.begin(), header.end(), ',') + 2);
    EXPECT_TRUE(row.starts_with("inst_000,25,4,solved,12.5,"));
}

TEST(Bench, DirectoryInFileOrderWithErrors)
{
    const fs::path dir = fresh_dir("bench");
    const GenerateReport rep = generate_batch(small_batch(6));
    for (std::size_t k = 0; k < rep.instances.size(); ++k)
        write_instance_file(dir / ("i" + std::to_string(k) + ".inst"), rep.instances[k].instance);
    write_text_file(dir / "i9_broken.inst", "nrhf-instance 1\n[graph]\n");
    write_text_file(dir / "notes.txt", "ignored");

    CbsOptions opts;
    opts.compare_spp = true;
    const auto one = bench_directory(dir, opts, 1);
    const auto many = bench_directory(dir, opts, 3);
    ASSERT_EQ(one.size(), 7u);
    ASSERT_EQ(many.size(), 7u);
    for (std::size_t k = 0; k < one.size(); ++k)
    {
        EXPECT_EQ(one[k].instance_id, many[k].instance_id);
        EXPECT_EQ(one[k].outcome, many[k].outcome);
        EXPECT_EQ(one[k].total_cost, many[k].total_cost);
        EXPECT_EQ(one[k].ct_nodes_expanded, many[k].ct_nodes_expanded);
    }
    for (std::size_t k = 0; k < 6; ++k)
    {
        EXPECT_EQ(one[k].instance_id, "i" + std::to_string(k));
        EXPECT_TRUE(one[k].outcome == "solved" || one[k].outcome == "infeasible" || one[k].outcome == "timeout");
        EXPECT_GE(one[k].wall_s, 0);
        EXPECT_GE(one[k].subproblem_s, 0);
        ASSERT_TRUE(one[k].spp_subproblem_s);
        if (one[k].outcome == "solved")
        {
            EXPECT_TRUE(one[k].total_cost);
        }
    }
    EXPECT_EQ(one[6].outcome, "error");
}

TEST(Bench, EmptyDirectory)
{
    EXPECT_TRUE(bench_directory(fresh_dir("empty"), {}, 2).empty());
}

TEST(Bench, RootTrivialOutcome)
{
    const Instance inst = nrhf::testing::make_instance(
        4, {nrhf::testing::edge(0, 1), nrhf::testing::edge(2, 3)},
        {nrhf::testing::agent(0, 1), nrhf::testing::agent(2, 3)});
    const BenchRecord r = bench_instance("x", inst, {});
    EXPECT_EQ(r.outcome, "root-trivial");
    EXPECT_EQ(r.ct_nodes_expanded, 1);
}
