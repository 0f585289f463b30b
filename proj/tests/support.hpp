#pragma once

#include <string>

#include "desattack/desattack.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(DESATTACK_FIXTURES) + "/" + name; }

struct RunningExample {
  desattack::Plant g = desattack::load_plant(fixture("plant.json"));
  desattack::SupervisorAutomaton h = desattack::load_supervisor(fixture("supervisor.json"));
  desattack::SupervisorAutomaton h_all = desattack::load_supervisor(fixture("supervisor_all.json"));

  desattack::EventId ev(const std::string& n) const { return g.alphabet().id(n); }
  desattack::StateId st(const std::string& n) const { return g.state(n); }
  desattack::StateSet states(std::initializer_list<const char*> names) const {
    desattack::StateSet out;
    for (const char* n : names) out.insert(g.state(n));
    return out;
  }
  desattack::Observation obs(const std::string& text) const { return desattack::parse_trace(g.alphabet(), text); }
  desattack::StateSet secret() const { return g.secret_initial(); }
};

/// q̃ written as "(x0,x)" names.
inline desattack::StateSet pairs(const desattack::AugmentedPlant& aug,
                                 std::initializer_list<std::pair<const char*, const char*>> ps) {
  desattack::StateSet out;
  for (auto [a, b] : ps) out.insert(aug.base.state(std::string("(") + a + "," + b + ")"));
  return out;
}

}  // namespace testing_support
