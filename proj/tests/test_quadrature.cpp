#include "reinsure/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace reinsure;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const auto& rule = gauss_legendre(8);
    double sum = 0.0;
    for (double w : rule.weights) {
        sum += w;
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    const double got = gauss_legendre_integrate([](double x) { return std::pow(x, 15); }, 0, 1, 8);
    CHECK(got == doctest::Approx(1.0 / 16).epsilon(1e-14));
}

TEST_CASE("adaptive Simpson reaches its tolerance") {
    const double got = adaptive_simpson([](double x) { return std::exp(-x); }, 0, 10, 1e-12);
    CHECK(got == doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-11));
}

TEST_CASE("split Simpson ignores the value at a jump") {
    const std::vector<double> splits = {1.0};
    auto step = [](double x) { return x < 1.0 ? 0.0 : (x == 1.0 ? 1e9 : 2.0); };
    CHECK(adaptive_simpson_split(step, 0, 3, splits, 1e-12) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("golden section finds an interior maximum") {
    const double x = golden_section_max([](double t) { return -(t - 3.25) * (t - 3.25); }, 0, 10,
                                        1e-10);
    CHECK(x == doctest::Approx(3.25).epsilon(1e-8));
}

TEST_CASE("bracket_roots finds every sign change") {
    const auto roots = bracket_roots([](double x) { return std::sin(x); }, 0.5, 10.0);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(M_PI));
    CHECK(roots[2] == doctest::Approx(3 * M_PI));
}
