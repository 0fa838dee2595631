#include <doctest.h>

#include "kolchin/bounds.hpp"
#include "kolchin/errors.hpp"

using namespace kolchin;

namespace {

mpz_class pow2(unsigned long e)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
    return p;
}

} // namespace

TEST_CASE("ackermann")
{
    CHECK(ackermann(0, 5) == 6);
    CHECK(ackermann(1, 3) == 5);
    CHECK(ackermann(2, 4) == 11);
    CHECK(ackermann(3, 3) == 61);
    CHECK(ackermann(4, 0) == 13);
    CHECK(ackermann(4, 1) == 65533);
    CHECK(ackermann(4, 2) == pow2(65536) - 3);
    CHECK_THROWS_AS(ackermann(4, 3), ResourceLimit);
    CHECK_THROWS_AS(ackermann(3, mpz_class("1000000000")), ResourceLimit);
}

TEST_CASE("ackermann shortcuts match the plain recursion")
{
    for (std::uint64_t i = 0; i <= 3; ++i)
        for (unsigned long x = 0; x <= 6; ++x)
            CHECK(ackermann(i, x) == ackermann_unshortcut(i, x));
    CHECK(ackermann(4, 0) == ackermann_unshortcut(4, 0));
    CHECK_THROWS_AS(ackermann_unshortcut(4, 2, 1000), ResourceLimit);
}

TEST_CASE("characteristic_order_bound examples and closed forms")
{
    CHECK(characteristic_order_bound(5, 1, 7) == 5);
    CHECK(characteristic_order_bound(3, 2, 2) == 12);
    CHECK(characteristic_order_bound(2, 3, 1) == 9);
    CHECK(characteristic_order_bound(0, 3, 4) == 0);
    for (std::uint64_t r = 0; r <= 12; ++r) {
        for (std::uint64_t n = 1; n <= 4; ++n) {
            CHECK(characteristic_order_bound(r, 1, n) == r);
            CHECK(characteristic_order_bound(r, 2, n) == pow2(n) * r);
        }
        CHECK(characteristic_order_bound(r, 3, 1) == 3 * (pow2(r) - 1));
    }
    CHECK_THROWS_AS(characteristic_order_bound(1, 0, 1), DomainError);
    CHECK_THROWS_AS(characteristic_order_bound(1, 1, 0), DomainError);
}

TEST_CASE("characteristic_order_bound is monotone in r")
{
    for (std::uint64_t m = 1; m <= 3; ++m)
        for (std::uint64_t n = 1; n <= 2; ++n)
            for (std::uint64_t r = 0; r < 5; ++r)
                CHECK(characteristic_order_bound(r, m, n) <= characteristic_order_bound(r + 1, m, n));
}

TEST_CASE("s0")
{
    CHECK(s0(4, 1, 3) == 3);
    CHECK(s0(1, 2, 1) == 10);
    CHECK(s0(0, 2, 2) == 0);
    CHECK(s0(2, 2, 1) == 38);
    for (std::uint64_t r = 1; r <= 20; ++r)
        CHECK(s0(r, 1, 2) == r - 1);
}

TEST_CASE("s1")
{
    const BoundReport a = s1(1, 1, 1);
    CHECK(a.C == 1);
    CHECK(a.D == 1);
    CHECK(a.s1 == 5);
    CHECK(a.coeff_bound == 1);

    const BoundReport b = s1(1, 2, 1);
    CHECK(b.C == 2);
    CHECK(b.D == 6);
    CHECK(b.s0 == 10);
    CHECK(b.s1 == 577);
    CHECK(b.coeff_bound == 36);

    const BoundReport z = s1(0, 3, 2);
    CHECK(z.D == 0);
    CHECK(z.s1 == 1);
    CHECK(z.coeff_bound == 0);

    const BoundReport c = bounds(BoundInputs{1, 2, 2, 5});
    CHECK(c.coeff_bound == 800);
    CHECK(c.s1 == 12801);
}

TEST_CASE("s1 >= s0")
{
    for (std::uint64_t m = 1; m <= 3; ++m)
        for (std::uint64_t n = 1; n <= 3; ++n)
            for (std::uint64_t r = 0; r <= 4; ++r) {
                try {
                    const BoundReport rep = s1(r, m, n);
                    CHECK(rep.s1 >= rep.s0);
                } catch (const ResourceLimit&) {
                    // too large to write down; nothing to compare
                }
            }
}

TEST_CASE("non-elementary growth hits the cap")
{
    CHECK_THROWS_AS(characteristic_order_bound(3, 4, 2), ResourceLimit);
    Limits tight;
    tight.bound_digits_cap = 10;
    CHECK_THROWS_AS(s1(3, 3, 2, tight), ResourceLimit);
}
