#include "doctest.h"
#include "trishoot/rational.hpp"

using namespace trishoot;

TEST_CASE("rat_parse accepts fractions, integers, decimals") {
    CHECK(*rat_parse("3/4") == Rat(3, 4));
    CHECK(*rat_parse("-3/4") == Rat(-3, 4));
    CHECK(*rat_parse("42") == Rat(42));
    CHECK(*rat_parse("-0") == Rat(0));
    CHECK(*rat_parse("0.25") == Rat(1, 4));
    CHECK(*rat_parse("-1.25") == Rat(-5, 4));
    CHECK(*rat_parse("3.") == Rat(3));
    CHECK(*rat_parse(".5") == Rat(1, 2));
    CHECK(*rat_parse("6/4") == Rat(3, 2));  // canonicalized
}

TEST_CASE("rat_parse rejects malformed input") {
    CHECK(!rat_parse(""));
    CHECK(!rat_parse("1/0"));
    CHECK(!rat_parse("abc"));
    CHECK(!rat_parse("1.2.3"));
    CHECK(!rat_parse("1/2/3"));
    CHECK(!rat_parse("--1"));
    CHECK(!rat_parse("1e3"));
    CHECK(!rat_parse("."));
    CHECK(!rat_parse("/3"));
}

TEST_CASE("rat_str round-trips") {
    for (const char* s : {"0", "7", "-7", "3/4", "-22/7", "123456789123456789/2"}) {
        Rat q = *rat_parse(s);
        CHECK(rat_str(q) == s);
        CHECK(*rat_parse(rat_str(q)) == q);
    }
}

TEST_CASE("rat_decimal_or_fraction picks exact decimals when possible") {
    CHECK(rat_decimal_or_fraction(Rat(1, 4)) == "0.25");
    CHECK(rat_decimal_or_fraction(Rat(-1, 8)) == "-0.125");
    CHECK(rat_decimal_or_fraction(Rat(3, 10)) == "0.3");
    CHECK(rat_decimal_or_fraction(Rat(5)) == "5");
    CHECK(rat_decimal_or_fraction(Rat(1, 3)) == "1/3");
    CHECK(rat_decimal_or_fraction(Rat(7, 12)) == "7/12");
}

TEST_CASE("isqrt_ulong is the floor square root") {
    CHECK(isqrt_ulong(0) == 0);
    CHECK(isqrt_ulong(1) == 1);
    CHECK(isqrt_ulong(3) == 1);
    CHECK(isqrt_ulong(4) == 2);
    CHECK(isqrt_ulong(99) == 9);
    CHECK(isqrt_ulong(100) == 10);
    CHECK(isqrt_ulong(1000000) == 1000);
    for (unsigned long n = 0; n < 5000; n++) {
        unsigned long r = isqrt_ulong(n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
}

TEST_CASE("to_double approximation error stays within the advertised bound") {
    Rat q(1, 3);
    double d = to_double(q);
    Rat err = rat_abs(Rat(Rat(d) - q));
    CHECK(err <= rat_abs(q) * Rat("223/1000000000000000000"));  // 2.23e-16
}

TEST_CASE("fnv1a digest is order-sensitive and stable") {
    Fnv1a a, b;
    a.add("hello");
    b.add("olleh");
    CHECK(a.h != b.h);

    Fnv1a empty;
    CHECK(empty.h == 14695981039346656037ull);

    // Known vector: FNV-1a 64 of "a" is 0xaf63dc4c8601ec8c.
    Fnv1a one;
    one.add("a");
    CHECK(one.h == 0xaf63dc4c8601ec8cull);

    Fnv1a u1, u2;
    u1.add_u64(0x0102030405060708ull);
    for (unsigned char c : {0x08, 0x07, 0x06, 0x05, 0x04, 0x03, 0x02, 0x01}) u2.add_byte(c);
    CHECK(u1.h == u2.h);
}
