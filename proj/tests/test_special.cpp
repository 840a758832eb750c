#include "doctest.h"

#include <cmath>

#include "invctl/errors.hpp"
#include "invctl/special.hpp"
#include "oracles.hpp"

using namespace invctl;

TEST_CASE("gamma_p matches an independent implementation across regimes") {
    const double shapes[] = {0.3, 1.0, 2.5, 10.0, 20.0, 57.3, 200.0, 1000.0, 5000.0};
    const double scales[] = {0.0, 0.01, 0.3, 0.8, 1.0, 1.2, 2.0, 5.0};
    for (double a : shapes) {
        for (double s : scales) {
            const double x = s * a;
            CAPTURE(a);
            CAPTURE(x);
            const double ref = x == 0.0 ? 0.0 : oracle::gamma_p(a, x);
            CHECK(std::fabs(special::gamma_p(a, x) - ref) <= 1e-10);
            CHECK(std::fabs(special::gamma_p(a, x) + special::gamma_q(a, x) - 1.0) <= 1e-14);
        }
    }
}

TEST_CASE("gamma_p frozen reference values") {
    // 40-digit references.
    CHECK(special::gamma_p(10.0, 10.0) == doctest::Approx(0.5420702855281477916).epsilon(1e-13));
    CHECK(special::gamma_p(1.0, 1.0) == doctest::Approx(0.6321205588285576784).epsilon(1e-14));
    CHECK(special::gamma_p(2.5, 2.1) == doctest::Approx(0.4790050465685950121).epsilon(1e-13));
}

TEST_CASE("gamma_p edge cases") {
    CHECK(special::gamma_p(3.0, 0.0) == 0.0);
    CHECK(special::gamma_p(3.0, INFINITY) == 1.0);
    CHECK(special::gamma_q(3.0, 0.0) == 1.0);
    CHECK_THROWS_AS(special::gamma_p(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(special::gamma_p(1.0, -1.0), DomainError);
}

TEST_CASE("adaptive Gauss-Kronrod integrates smooth and peaked integrands") {
    auto r = special::integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));

    const double shape = 50.0, rate = 10.0;
    auto dens = [&](double s) { return oracle::gamma_density(shape, rate, s); };
    auto g = special::integrate(dens, 0.0, 30.0, 1e-13, 1e-13);
    CHECK(g.value == doctest::Approx(1.0).epsilon(1e-11));

    auto rev = special::integrate([](double x) { return x * x; }, 1.0, 0.0);
    CHECK(rev.value == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(special::integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}
