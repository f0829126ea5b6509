#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gridpoly/adversary.hpp"

using namespace gridpoly;

TEST_CASE("ratio limit closed form") {
    CHECK(ratio_limit(1) == Rational(7, 6));
    CHECK(ratio_limit(2) == Rational(27, 23));
    CHECK(ratio_limit(3) == Rational(80, 68));
}
