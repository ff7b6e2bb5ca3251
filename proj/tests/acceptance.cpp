#include <iostream>

#include "quatforms/verify.hpp"

int main() {
  bool all = true;
  for (int id = 1; id <= quatforms::kCriterionCount; ++id) {
    auto r = quatforms::run_criterion(id);
    std::cout << quatforms::format_line(r) << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
