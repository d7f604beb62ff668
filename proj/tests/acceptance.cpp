#include <cstdio>

#include "monocube/parallel.hpp"
#include "monocube/verify_suite.hpp"

int main() {
  monocube::par::init_threads_from_env();
  bool all = true;
  for (int id = 1; id <= 12; ++id) {
    const auto c = monocube::run_criterion(id);
    std::printf("[%s] criterion %d: %s (%s)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str());
    std::fflush(stdout);
    all = all && c.pass;
  }
  return all ? 0 : 1;
}
