#include <doctest.h>

#include "besselmu/grid.hpp"
#include "besselmu/model.hpp"

using namespace besselmu;

TEST_CASE("axis specs")
{
    auto a = parse_axis("lin:0:1:5");
    REQUIRE(a.size() == 5);
    CHECK(a[0] == 0.0);
    CHECK(a[2] == doctest::Approx(0.5));
    CHECK(a[4] == 1.0);
    a = parse_axis("log:1e-3:10:5");
    REQUIRE(a.size() == 5);
    CHECK(a[0] == doctest::Approx(1e-3));
    CHECK(a[1] == doctest::Approx(1e-2));
    CHECK(a[4] == doctest::Approx(10.0));
    CHECK(parse_axis("0.1,0.5,2") == std::vector<double>{0.1, 0.5, 2.0});
    CHECK(parse_axis("3") == std::vector<double>{3.0});
    CHECK(parse_axis("lin:2:2:1") == std::vector<double>{2.0});
}

TEST_CASE("malformed axes")
{
    for (const char* bad : {"", "lin:0:1", "log:0:1:3", "log:-1:1:3", "lin:0:1:0", "cubic:0:1:3", "a,b", "1,,2",
                            "lin:0:x:3"})
        CHECK_THROWS_AS(parse_axis(bad), GridError);
}

TEST_CASE("grid specs")
{
    auto g = parse_grid("t=log:1e-3:0.25:10;x=lin:0.1:0.9:9;mu=0.1,1");
    CHECK(g.size() == 3);
    CHECK(g["t"].size() == 10);
    CHECK(g["x"].size() == 9);
    CHECK(g["mu"].size() == 2);
    CHECK(parse_grid("default").empty());
    CHECK(parse_grid("").empty());
    CHECK_THROWS_AS(parse_grid("t"), GridError);
    CHECK_THROWS_AS(parse_grid("t=1;t=2"), GridError);
}
