#include "effdiff/seeding.hpp"

#include <doctest.h>

#include <set>

using namespace effdiff;

TEST_CASE("trial seeds are deterministic and distinct") {
    CHECK(trial_seed(42, 0) == trial_seed(42, 0));
    CHECK(trial_seed(42, 0) != trial_seed(42, 1));
    CHECK(trial_seed(42, 5) != trial_seed(43, 5));
}

TEST_CASE("no collisions across 10^4 derived seeds") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(trial_seed(123456789, i));
    CHECK(seen.size() == 10000);
}

TEST_CASE("uniform stream is reproducible and in range") {
    RandomStream a(99), b(99);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
