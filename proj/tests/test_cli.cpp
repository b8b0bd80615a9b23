#include "fie23/cli.hpp"
#include "fie23/csv.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = fie23::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ListsProblems) {
    const Result r = run({"problems"});
    EXPECT_EQ(r.code, 0);
    for (const char* name : {"model", "quasi-periodic", "model-analog", "van-der-pol"}) {
        EXPECT_NE(r.out.find(name), std::string::npos);
    }
}

TEST(Cli, ConvergenceTable) {
    const Result r = run({"convergence", "--problem", "model", "--method", "ie-pre-post-3", "--steps", "40,80,160"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("2.90040"), std::string::npos);
    EXPECT_NE(r.out.find("2.95040"), std::string::npos);
    EXPECT_NE(r.out.find("160"), std::string::npos);
}

TEST(Cli, Rk4SolveReachesE) {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "fie23_cli_solve.csv";
    const Result r = run({"solve", "--problem", "model", "--method", "rk4-ref", "--dt0", "1e-3", "--t0", "0", "--t1",
                          "1", "--out", path.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    const fie23::Trajectory tr = fie23::read_csv(path);
    EXPECT_EQ(tr.size(), 1001u);
    EXPECT_EQ(tr.final_time(), 1.0);
    EXPECT_NEAR(tr.final_state()[0], std::exp(1.0), 1e-10);
    std::filesystem::remove(path);
}

TEST(Cli, AdaptiveSolveWithParameter) {
    const Result r = run({"solve", "--problem", "model-analog", "--param", "gamma=3", "--method", "filtered-ie23",
                          "--tol", "1e-3", "--dt0", "1e-3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("final t 3"), std::string::npos);
    EXPECT_NE(r.out.find("accepted"), std::string::npos);
}

TEST(Cli, CompareRows) {
    const Result r = run({"compare", "--problem", "model", "--tol", "1e-3", "--dt0", "0.01", "--steps", "200"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("filtered-ie23"), std::string::npos);
    EXPECT_NE(r.out.find("ie-pre-post-3"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({"solve", "--problem", "nope"}).code, 2);
    EXPECT_NE(run({"solve", "--problem", "nope"}).err.find("nope"), std::string::npos);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"solve"}).code, 2);
    EXPECT_EQ(run({"solve", "--problem", "model", "--method", "euler"}).code, 2);
    EXPECT_EQ(run({"solve", "--problem", "model", "--param", "lambda"}).code, 2);
    EXPECT_EQ(run({"solve", "--problem", "model", "--param", "mu=1"}).code, 2);
    EXPECT_EQ(run({"solve", "--problem", "model", "--tol", "-1"}).code, 2);
    EXPECT_EQ(run({"convergence", "--problem", "model", "--method", "filtered-ie23"}).code, 2);
}

TEST(Cli, SolverFailuresExitOne) {
    const Result r = run({"solve", "--problem", "model", "--tol", "1e-14", "--dt0", "0.01"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("MinStepReached"), std::string::npos);
    EXPECT_EQ(run({"solve", "--problem", "model", "--out", "/nonexistent-dir/x.csv"}).code, 1);
}

TEST(Cli, HelpExitsZero) {
    const Result r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("solve"), std::string::npos);
}
