// Characterisations of the attack structure against the definitional
// oracle: the first component tracks the supervisor, the second the
// attacker, and attack-revealing states coincide with loss of stealth.

#include <gtest/gtest.h>

#include "properties.hpp"
#include "random_instances.hpp"
#include "support.hpp"

using namespace desattack;
using testing_support::RunningExample;

namespace {

void expect_clean(const testing_support::RunPropertyReport& r, const std::string& where) {
  EXPECT_GT(r.runs, 0u);
  EXPECT_TRUE(r.first_component.empty()) << where << ": " << r.first_component.front();
  EXPECT_TRUE(r.second_component.empty()) << where << ": " << r.second_component.front();
  EXPECT_TRUE(r.stealth.empty()) << where << ": " << r.stealth.front();
  EXPECT_TRUE(r.recursion.empty()) << where << ": " << r.recursion.front();
}

}  // namespace

TEST(RunProperties, RunningExample) {
  RunningExample ex;
  expect_clean(testing_support::check_run_properties(build_aas(ex.g, ex.h), 10), "H");
  expect_clean(testing_support::check_run_properties(build_aas(ex.g, ex.h_all), 10), "all-enabling");
}

TEST(RunProperties, RandomInstances) {
  for (std::uint64_t seed = 10'001; seed <= 10'100; ++seed) {
    auto in = testing_support::random_instance(seed);
    expect_clean(testing_support::check_run_properties(build_aas(in.plant, in.sup), 8), "seed " + std::to_string(seed));
  }
}

TEST(RunProperties, WiderAlphabets) {
  testing_support::InstanceShape shape;
  shape.max_events = 5;
  shape.max_vulnerable = 3;
  for (std::uint64_t seed = 20'001; seed <= 20'030; ++seed) {
    auto in = testing_support::random_instance(seed, shape);
    expect_clean(testing_support::check_run_properties(build_aas(in.plant, in.sup), 6), "seed " + std::to_string(seed));
  }
}
