#include <gtest/gtest.h>

#include "mifs/properties.hpp"
#include "mifs/system.hpp"

using namespace mifs;

namespace {

class Property : public ::testing::TestWithParam<std::string> {};

std::string test_name(const ::testing::TestParamInfo<std::string>& info) {
  std::string out;
  for (char c : info.param) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

}  // namespace

TEST_P(Property, Holds) {
  VerifyOptions opts;
  opts.only = {GetParam()};
  const auto report = run_verify(example_system(), opts);
  ASSERT_EQ(report.results.size(), 1u);
  const auto& r = report.results.front();
  EXPECT_TRUE(r.passed) << r.name << " worst=" << r.worst << " limit=" << r.limit << " " << r.witness;
  EXPECT_GT(r.trials, 0u);
}

INSTANTIATE_TEST_SUITE_P(All, Property, ::testing::ValuesIn(property_names()), test_name);

TEST(Verify, NamesAreUnique) {
  auto names = property_names();
  std::sort(names.begin(), names.end());
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
  EXPECT_GE(names.size(), 20u);
}

TEST(Verify, ZeroTrialsIsVacuousWithWarning) {
  VerifyOptions opts;
  opts.trials = 0;
  const auto report = run_verify(example_system(), opts);
  EXPECT_TRUE(report.passed);
  EXPECT_FALSE(report.warnings.empty());
}

TEST(Verify, InjectedFaultIsDetected) {
  VerifyOptions opts;
  opts.inject_fault = "2";
  opts.only = {"projection.equivariance", "projection.membership"};
  const auto report = run_verify(example_system(), opts);
  EXPECT_FALSE(report.passed);
  std::size_t failing = 0;
  for (const auto& r : report.results)
    if (!r.passed) {
      ++failing;
      EXPECT_FALSE(r.witness.empty());
    }
  EXPECT_GE(failing, 1u);
}

TEST(Verify, UnknownFaultLetterIsRejected) {
  VerifyOptions opts;
  opts.inject_fault = "9";
  EXPECT_ANY_THROW(run_verify(example_system(), opts));
}
