#include <doctest.h>

#include "dense_reference.hpp"
#include "qws/state.hpp"

using namespace qws;

TEST_CASE("uniform state amplitudes and norm") {
    SUBCASE("L=2: all 16 amplitudes are 1/4") {
        const WalkerState s = uniform_state(GridGeometry(2));
        REQUIRE(s.amplitudes.size() == 16);
        for (const auto& a : s.amplitudes) {
            CHECK(a.real() == doctest::Approx(0.25).epsilon(1e-15));
            CHECK(a.imag() == 0.0);
        }
        CHECK(norm(s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("L=100: amplitude 1/200, unit norm, p = 1/N everywhere") {
        const WalkerState s = uniform_state(GridGeometry(100));
        CHECK(s.amplitudes[12345].real() == doctest::Approx(1.0 / 200.0).epsilon(1e-15));
        CHECK(norm(s) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(success_probability(s, {50, 50}) == doctest::Approx(1e-4).epsilon(1e-12));
        CHECK(success_probability(s, {0, 99}) == doctest::Approx(1e-4).epsilon(1e-12));
    }
    SUBCASE("rejects L < 2") {
        CHECK_THROWS_AS(GridGeometry(1), std::invalid_argument);
        CHECK_THROWS_AS(GridGeometry(0), std::invalid_argument);
        CHECK_THROWS_AS(GridGeometry(-3), std::invalid_argument);
    }
}

TEST_CASE("position distribution") {
    SUBCASE("uniform case") {
        const auto dist = position_distribution(uniform_state(GridGeometry(100)));
        double sum = 0.0;
        for (double p : dist.probabilities) {
            CHECK(p == doctest::Approx(1e-4).epsilon(1e-12));
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
    SUBCASE("single basis vector") {
        const auto dist = position_distribution(basis_state(GridGeometry(10), 0, 0, 3, 7));
        CHECK(dist.at(3, 7) == 1.0);
        CHECK(dist.at(7, 3) == 0.0);
        CHECK(dist.at(0, 0) == 0.0);
    }
    SUBCASE("coin trace-out: equal superposition on one vertex") {
        WalkerState s(GridGeometry(4));
        const double r = 1.0 / std::sqrt(2.0);
        s.at(0, 0, 0, 0) = r;
        s.at(1, 1, 0, 0) = r;
        const auto dist = position_distribution(s);
        CHECK(dist.at(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("Born rule completeness for random unit states") {
        const GridGeometry g(9);
        for (unsigned seed = 1; seed <= 20; ++seed) {
            const auto dist = position_distribution(testref::random_unit_state(g, seed));
            double sum = 0.0;
            for (double p : dist.probabilities) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0 + 1e-12);
                sum += p;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("success probability") {
    const GridGeometry g(100);
    CHECK(success_probability(basis_state(g, 1, 0, 50, 50), {50, 50}) == 1.0);
    CHECK_THROWS_AS(success_probability(uniform_state(g), Vertex{100, 0}), std::out_of_range);
    CHECK_THROWS_AS(success_probability(uniform_state(g), Vertex{0, -1}), std::out_of_range);
}

TEST_CASE("norm and inner product") {
    const GridGeometry g(6);
    CHECK(norm(uniform_state(g)) == doctest::Approx(1.0).epsilon(1e-12));

    const WalkerState psi = testref::random_unit_state(g, 7);
    const cdouble self = inner_product(psi, psi);
    CHECK(self.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(self.imag()) <= 1e-12);

    CHECK(inner_product(basis_state(g, 0, 0, 0, 0), basis_state(g, 0, 1, 0, 0)) ==
          cdouble{0.0, 0.0});
    CHECK(inner_product(basis_state(g, 0, 0, 1, 2), basis_state(g, 0, 0, 2, 1)) ==
          cdouble{0.0, 0.0});

    CHECK_THROWS_AS(inner_product(uniform_state(GridGeometry(4)), uniform_state(GridGeometry(5))),
                    std::invalid_argument);
}

TEST_CASE("amplitude indexing round-trips") {
    const GridGeometry g(5);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            for (int x = 0; x < g.side_length; ++x)
                for (int y = 0; y < g.side_length; ++y) {
                    const auto b = decode_amplitude_index(g, amplitude_index(g, j, k, x, y));
                    REQUIRE(b == BasisState{j, k, x, y});
                }
}
