#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "ncdomain/selftest.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  bool ok = ncdomain::print_acceptance(ncdomain::run_acceptance(seed), std::cout);
  return ok ? 0 : 1;
}
