#include "fie23/adaptive.hpp"
#include "fie23/csv.hpp"
#include "fie23/errors.hpp"
#include "fie23/problems.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace fie23;
using fie23::testing::scalar;

namespace {

void expect_bit_equal(const Trajectory& a, const Trajectory& b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.times[i], b.times[i]);
        EXPECT_EQ(a.states[i], b.states[i]);
        EXPECT_EQ(a.est[i], b.est[i]);
        EXPECT_EQ(a.steps[i], b.steps[i]);
    }
}

std::size_t line_count(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST(Csv, TwoPointScalarTrajectory) {
    Trajectory tr;
    tr.append(0.0, scalar(1.0), 0.0, 0.0);
    tr.append(0.1, scalar(1.1), 0.0, 0.1);
    std::ostringstream os;
    write_csv(tr, os);
    EXPECT_EQ(line_count(os.str()), 3u);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "t,y0,est,k");
    EXPECT_NE(os.str().find("0.10000000000000001,1.1000000000000001,0,0.10000000000000001"), std::string::npos);
}

TEST(Csv, AdaptiveRunRoundTripsBitExactly) {
    const ProblemSpec spec = quasi_periodic_problem();
    SolverConfig cfg = spec.config(5e-3, 0.01);
    cfg.t_end = 2.0;
    const AdaptiveRun run = solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
    std::stringstream ss;
    write_csv(run.trajectory, ss);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "t,y0,y1,y2,y3,est,k");
    const Trajectory back = parse_csv(ss);
    expect_bit_equal(back, run.trajectory);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(back.est[i], 0.0);
}

TEST(Csv, FileRoundTrip) {
    const ProblemSpec spec = model_problem(1.0);
    const AdaptiveRun run = solve_filtered_ie23(spec.problem, spec.config(1e-3, 0.05), spec.initial_state);
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "fie23_csv_roundtrip.csv";
    emit_csv(run.trajectory, path);
    expect_bit_equal(read_csv(path), run.trajectory);
    std::filesystem::remove(path);
}

TEST(Csv, Errors) {
    const auto kind = [](const std::string& text) {
        std::istringstream is(text);
        try {
            (void)parse_csv(is);
        } catch (const SolverError& e) {
            return e.kind();
        }
        return ErrorKind::InvalidConfig;
    };
    EXPECT_EQ(kind(""), ErrorKind::ParseError);
    EXPECT_EQ(kind("t,x,est,k\n"), ErrorKind::ParseError);
    EXPECT_EQ(kind("t,y0,est,k\n0,1,0\n"), ErrorKind::ParseError);
    EXPECT_EQ(kind("t,y0,est,k\n0,abc,0,0\n"), ErrorKind::ParseError);
    EXPECT_EQ(kind("t,y0,est,k\n1,1,0,0\n0,1,0,0\n"), ErrorKind::ParseError);

    Trajectory tr;
    tr.append(0.0, scalar(1.0), 0.0, 0.0);
    EXPECT_THROW(emit_csv(tr, "/nonexistent-dir/out.csv"), SolverError);
    EXPECT_THROW((void)read_csv("/nonexistent-dir/in.csv"), SolverError);
}
