#include "doctest.h"

#include "brokeneyes/error.hpp"
#include "brokeneyes/rng.hpp"

using namespace brokeneyes;

TEST_CASE("derive_seed")
{
    CHECK(derive_seed(0, "") == 0xcbf29ce484222325ULL);
    CHECK(derive_seed(0, "a") == 0xaf63dc4c8601ec8cULL);
    CHECK(derive_seed(12345, "dir/img.png") == derive_seed(12345, "dir/img.png"));
    CHECK(derive_seed(7, "a") == (7ULL ^ 0xaf63dc4c8601ec8cULL));
}

TEST_CASE("splitmix64 reference stream")
{
    Rng64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("uniform maps the top 53 bits")
{
    Rng64 rng(0);
    CHECK(rng.uniform(0.0, 1.0) == doctest::Approx(0.8833108082136426).epsilon(1e-15));

    Rng64 degenerate(99);
    CHECK(degenerate.uniform(5.0, 5.0) == 5.0);
    CHECK(degenerate.state() != 99); // still advances

    Rng64 bad(1);
    CHECK_THROWS_AS(bad.uniform(2.0, 1.0), Error);
    try {
        bad.uniform(2.0, 1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidRange);
    }
}

TEST_CASE("equal seeds give equal sequences")
{
    Rng64 a(0xDEADBEEF);
    Rng64 b(0xDEADBEEF);
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform(-3.0, 11.0);
        CHECK(x == b.uniform(-3.0, 11.0));
        CHECK(x >= -3.0);
        CHECK(x < 11.0);
    }
}

TEST_CASE("below stays in range")
{
    Rng64 rng(3);
    for (std::uint64_t n : {1ULL, 2ULL, 7ULL, 1000ULL}) {
        for (int i = 0; i < 200; ++i) CHECK(rng.below(n) < n);
    }
    CHECK_THROWS_AS(rng.below(0), Error);
}
