#pragma once

#include <string>

#include "hypcells/group.hpp"

#ifndef HYPCELLS_CONFIG_DIR
#define HYPCELLS_CONFIG_DIR "configs"
#endif

namespace testing {

inline const hypcells::CoxeterGroup& w237() {
  static const hypcells::CoxeterGroup g(hypcells::Presentation::load(std::string(HYPCELLS_CONFIG_DIR) + "/w237.json"));
  return g;
}

inline const hypcells::CoxeterGroup& w2224() {
  static const hypcells::CoxeterGroup g(hypcells::Presentation::load(std::string(HYPCELLS_CONFIG_DIR) + "/w2224.json"));
  return g;
}

}  // namespace testing
