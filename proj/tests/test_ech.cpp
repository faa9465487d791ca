#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "reeb/ech.hpp"

using namespace reeb;

namespace {

RegistryPtr plain_registry() { return BasisRegistry::create({}); }

RegistryPtr symbol_registry() {
    return BasisRegistry::create({{"s", "1.4142135623730951", 15}});
}

QLinearValue rat(long long num, long long den, const RegistryPtr& reg) {
    return QLinearValue::rational(Rational(num, den), reg);
}

std::vector<Rational> rational_values(const std::vector<QLinearValue>& values) {
    std::vector<Rational> out;
    for (const QLinearValue& v : values) out.push_back(*v.as_rational());
    return out;
}

}  // namespace

TEST_CASE("orbit sets enforce their construction constraints") {
    auto reg = symbol_registry();
    QLinearValue s = QLinearValue::basis_symbol("s", reg);

    OrbitSet os({{2, rat(1, 1, reg), false}, {1, rat(2, 1, reg), false}});
    CHECK(orbit_set_action(os, reg).as_rational() == Rational(4));

    CHECK(orbit_set_action(OrbitSet({}), reg).is_zero());
    CHECK(orbit_set_action(OrbitSet({{3, s, false}}), reg) == s.scaled(Rational(3)));

    CHECK_THROWS_AS(OrbitSet({{0, rat(1, 1, reg), false}}), InvalidOrbitSet);
    CHECK_THROWS_AS(OrbitSet({{2, rat(1, 1, reg), true}}), InvalidOrbitSet);
    CHECK_THROWS_AS(OrbitSet({{1, rat(0, 1, reg), false}}), InvalidOrbitSet);
    CHECK_THROWS_AS(OrbitSet({{1, rat(1, 1, reg), false}, {2, rat(1, 1, reg), false}}),
                    InvalidOrbitSet);
    CHECK_NOTHROW(OrbitSet({{1, s, true}, {5, rat(3, 2, reg), false}}));
}

TEST_CASE("filtered generator counts") {
    auto reg = symbol_registry();
    QLinearValue one = rat(1, 1, reg);
    QLinearValue two = rat(2, 1, reg);
    QLinearValue s = QLinearValue::basis_symbol("s", reg);

    CHECK(filtered_generator_count(one, one, two) == 6);
    CHECK(filtered_generator_count(one, two, rat(4, 1, reg)) == 9);
    CHECK(filtered_generator_count(one, s, one) == 2);
    CHECK(filtered_generator_count(one, one, rat(0, 1, reg)) == 1);

    CHECK_THROWS_AS(filtered_generator_count(one, one, rat(-1, 1, reg)), PreconditionViolated);
    CHECK_THROWS_AS(filtered_generator_count(rat(0, 1, reg), one, one), PreconditionViolated);
}

TEST_CASE("spectrum values at small indices") {
    auto reg = symbol_registry();
    QLinearValue one = rat(1, 1, reg);
    QLinearValue s = QLinearValue::basis_symbol("s", reg);

    CHECK(rational_values(ech_spectrum_values(one, one, 5)) ==
          std::vector<Rational>{0, 1, 1, 2, 2, 2});
    CHECK(rational_values(ech_spectrum_values(one, rat(2, 1, reg), 8)) ==
          std::vector<Rational>{0, 1, 2, 2, 3, 3, 4, 4, 4});

    auto values = ech_spectrum_values(one, s, 3);
    REQUIRE(values.size() == 4);
    CHECK(values[0].is_zero());
    CHECK(values[1] == one);
    CHECK(values[2] == s);
    CHECK(values[3].as_rational() == Rational(2));
}

TEST_CASE("lattice terms decompose each value") {
    auto reg = plain_registry();
    EchSpectrum spectrum(rat(2, 1, reg), rat(3, 1, reg));
    for (std::size_t k = 0; k <= 300; ++k) {
        auto [m, n] = spectrum.term(k);
        QLinearValue recombined =
            rat(2, 1, reg).scaled(Rational(m)) + rat(3, 1, reg).scaled(Rational(n));
        CHECK(recombined == spectrum.value(k));
    }
}

TEST_CASE("spectrum is nondecreasing and dual to the filtered count") {
    auto reg = plain_registry();
    std::vector<std::pair<Rational, Rational>> axes = {
        {Rational(1), Rational(1)},
        {Rational(1), Rational(2)},
        {Rational(2), Rational(3)},
        {Rational(3, 2), Rational(5, 2)},
        {Rational(1, 3), Rational(1, 2)},
    };
    for (const auto& [qa, qb] : axes) {
        QLinearValue a = QLinearValue::rational(qa, reg);
        QLinearValue b = QLinearValue::rational(qb, reg);
        EchSpectrum spectrum(a, b);
        for (std::size_t k = 0; k <= 250; ++k) {
            if (k > 0) CHECK(compare(spectrum.value(k - 1), spectrum.value(k)) != Ordering::Greater);
            // Dual characterization: at least k+1 generators live at or below
            // N_k, and when N_k strictly increases past N_{k-1} exactly k
            // generators sit at or below N_{k-1}.
            CHECK(filtered_generator_count(a, b, spectrum.value(k)) >= k + 1);
            if (k > 0 && !(spectrum.value(k) == spectrum.value(k - 1)))
                CHECK(filtered_generator_count(a, b, spectrum.value(k - 1)) == k);
        }
    }
}

TEST_CASE("symbolic spectra stay nondecreasing and collision-free") {
    auto reg = symbol_registry();
    QLinearValue one = rat(1, 1, reg);
    QLinearValue s = QLinearValue::basis_symbol("s", reg);
    EchSpectrum spectrum(one, s);
    for (std::size_t k = 1; k <= 400; ++k) {
        CHECK(compare(spectrum.value(k - 1), spectrum.value(k)) == Ordering::Less);
    }
}

TEST_CASE("gap collisions detect rational dependence") {
    auto reg = symbol_registry();
    QLinearValue one = rat(1, 1, reg);

    auto k = first_gap_collision(one, one, 10);
    REQUIRE(k.has_value());
    CHECK(*k == 1);

    k = first_gap_collision(one, rat(2, 1, reg), 10);
    REQUIRE(k.has_value());
    CHECK(*k == 2);

    k = first_gap_collision(rat(2, 1, reg), rat(3, 1, reg), 40);
    REQUIRE(k.has_value());
    CHECK(*k == 5);

    CHECK(!first_gap_collision(one, QLinearValue::basis_symbol("s", reg), 500).has_value());

    // The collision arrives no later than the lcm bound pq + p + q.
    for (long long p = 1; p <= 8; ++p)
        for (long long q = p; q <= 8; ++q) {
            if (std::gcd(p, q) != 1) continue;
            CHECK(first_gap_collision(rat(p, 1, reg), rat(q, 1, reg),
                                      static_cast<std::size_t>(p * q + p + q))
                      .has_value());
        }
}

TEST_CASE("sublinearity profile at desk scale") {
    auto reg = plain_registry();
    QLinearValue one = rat(1, 1, reg);

    auto profile = sublinearity_profile(one, one, {1});
    REQUIRE(profile.size() == 1);
    CHECK(profile[0].ratio.lo == Rational(1));
    CHECK(profile[0].ratio.hi == Rational(1));

    profile = sublinearity_profile(one, one, {100, 1000});
    CHECK(profile[0].ratio.lo == Rational(13, 100));
    CHECK(profile[1].ratio.lo == Rational(44, 1000));
    CHECK(profile[1].ratio.hi < profile[0].ratio.lo);

    CHECK_THROWS_AS(sublinearity_profile(one, one, {5, 5}), PreconditionViolated);
    CHECK_THROWS_AS(sublinearity_profile(one, one, {0}), PreconditionViolated);
}

TEST_CASE("volume ratio diagnostic") {
    auto reg = symbol_registry();
    QLinearValue one = rat(1, 1, reg);

    RationalInterval ratio = volume_asymptotic_ratio(one, one, 1);
    CHECK(ratio.lo == Rational(1, 2));
    CHECK(ratio.hi == Rational(1, 2));

    // Exact at rational axes: N_100(1,1) = 13.
    ratio = volume_asymptotic_ratio(one, one, 100);
    CHECK(ratio.lo == Rational(13 * 13, 200));
    CHECK(ratio.hi == ratio.lo);

    // Symbolic axes produce a genuine enclosure containing the true ratio.
    QLinearValue s = QLinearValue::basis_symbol("s", reg);
    ratio = volume_asymptotic_ratio(one, s, 50);
    CHECK(ratio.lo > 0);
    CHECK(ratio.lo < ratio.hi);
    CHECK(ratio.lo < 1);
}
