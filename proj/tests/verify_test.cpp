#include "eprobe/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include <gtest/gtest.h>

namespace eprobe {
namespace {

bool contains(const std::vector<double>& grid, double x) {
  return std::find(grid.begin(), grid.end(), x) != grid.end();
}

TEST(VerificationGridTest, AlwaysInjectsTheDangerousInputs) {
  // Even the smallest legal grid carries both endpoints and the sign-flip
  // point.
  for (int n : {2, 3, 10, 1000}) {
    const std::vector<double> grid = verification_grid(n);
    EXPECT_TRUE(contains(grid, 0.0)) << "n=" << n;
    EXPECT_TRUE(contains(grid, 0.25)) << "n=" << n;
    EXPECT_TRUE(contains(grid, ErrorRate::kMax)) << "n=" << n;
  }
}

TEST(VerificationGridTest, SortedUniqueAndInRange) {
  const std::vector<double> grid = verification_grid(1000);
  EXPECT_GE(grid.size(), 1000u);
  EXPECT_EQ(0.0, grid.front());
  EXPECT_EQ(ErrorRate::kMax, grid.back());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    EXPECT_LT(grid[i - 1], grid[i]);
  }
}

TEST(VerificationGridTest, RejectsDegenerateGrids) {
  EXPECT_THROW(verification_grid(1), std::domain_error);
  EXPECT_THROW(verification_grid(0), std::domain_error);
  EXPECT_THROW(verification_grid(-5), std::domain_error);
}

TEST(RunVerificationTest, CleanAtTheDefaultTolerance) {
  const VerifyReport report = run_verification({1e-12, 120});
  EXPECT_TRUE(report.ok()) << report.violations.size() << " violations, e.g. "
                           << (report.violations.empty()
                                   ? ""
                                   : report.violations.front().quantity);
  EXPECT_GT(report.checks, 0u);
}

TEST(RunVerificationTest, ImpossibleToleranceIsReportedNotHidden) {
  const VerifyReport report = run_verification({1e-300, 120});
  EXPECT_FALSE(report.ok());
  EXPECT_GT(report.checks, report.violations.size());
  for (const Violation& v : report.violations) {
    EXPECT_FALSE(v.quantity.empty());
    EXPECT_GE(v.e, 0.0);
    EXPECT_LE(v.e, ErrorRate::kMax);
  }
}

TEST(RunVerificationTest, RejectsNonPositiveTolerance) {
  EXPECT_THROW(run_verification({0.0, 100}), std::domain_error);
  EXPECT_THROW(run_verification({-1e-9, 100}), std::domain_error);
}

}  // namespace
}  // namespace eprobe
