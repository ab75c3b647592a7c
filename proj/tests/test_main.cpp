#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "billiard_knots/numeric.hpp"

int main(int argc, char** argv) {
  bk::PrecisionScope precision(bk::kDefaultPrecisionBits);
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  return context.run();
}
