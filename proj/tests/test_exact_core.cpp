#include "wallislab/decimal.hpp"
#include "wallislab/interval.hpp"
#include "wallislab/pi.hpp"
#include "wallislab/pi_scalar.hpp"
#include "wallislab/rational.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace wallislab;

namespace {

// 50-digit brackets of the reference constants (truncation below, +1 ulp above)
RatInterval known_pi() {
    return {decimal_to_rational("3.14159265358979323846264338327950288419716939937510"),
            decimal_to_rational("3.14159265358979323846264338327950288419716939937511")};
}
RatInterval known_sqrt_pi() {
    return {decimal_to_rational("1.77245385090551602729816748334114518279754945612238"),
            decimal_to_rational("1.77245385090551602729816748334114518279754945612239")};
}

BigRational rand_rational(std::mt19937& rng, int max_abs = 40) {
    std::uniform_int_distribution<int> num(-max_abs, max_abs);
    std::uniform_int_distribution<int> den(1, max_abs);
    return {BigInt(num(rng)), BigInt(den(rng))};
}

}  // namespace

TEST_CASE("BigRational stores reduced canonical form") {
    REQUIRE(BigRational(2, 4) == BigRational(1, 2));
    REQUIRE(BigRational(-2, -4) == BigRational(1, 2));
    REQUIRE(BigRational(1, -2) == BigRational(-1, 2));
    REQUIRE(BigRational(0, 7).denominator() == 1);
    REQUIRE(BigRational(6, 3).to_string() == "2");
    REQUIRE(BigRational(-10, 15).to_string() == "-2/3");
    REQUIRE_THROWS_AS(BigRational(1, 0), std::domain_error);
}

TEST_CASE("BigRational arithmetic agrees with direct cross-multiplication") {
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<int> num(-30, 30);
    std::uniform_int_distribution<int> den(1, 30);
    for (int i = 0; i < 1000; ++i) {
        long long a = num(rng), c = num(rng);
        long long b = den(rng), d = den(rng);
        BigRational x(a, b), y(c, d);
        REQUIRE(x + y == BigRational(a * d + c * b, b * d));
        REQUIRE(x - y == BigRational(a * d - c * b, b * d));
        REQUIRE(x * y == BigRational(a * c, b * d));
        if (c != 0) REQUIRE(x / y == BigRational(a * d, b * c));
        REQUIRE(boost::multiprecision::gcd(boost::multiprecision::abs((x * y).numerator()),
                                           (x * y).denominator()) == 1);
    }
}

TEST_CASE("mul_ratio fast path matches general multiplication") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint64_t> f(1, 5000);
    BigRational slow(1), fast(1);
    for (int i = 0; i < 300; ++i) {
        std::uint64_t n = f(rng), d = f(rng);
        slow *= BigRational(BigInt(n), BigInt(d));
        fast.mul_ratio(n, d);
        REQUIRE(slow == fast);
    }
}

TEST_CASE("BigRational error paths and accessors") {
    BigRational half(1, 2);
    REQUIRE_THROWS_AS(half / BigRational(0), std::domain_error);
    REQUIRE_THROWS_AS(BigRational(0).reciprocal(), std::domain_error);
    REQUIRE(half.pow(0) == BigRational(1));
    REQUIRE(half.pow(3) == BigRational(1, 8));
    REQUIRE((-half).abs() == half);
    REQUIRE(BigRational(-3, 2).sign() == -1);
    REQUIRE(BigRational(2, 3) < BigRational(3, 4));
    REQUIRE(BigRational(-1, 2) < BigRational(1, 3));
}

TEST_CASE("decimal rendering truncates toward zero") {
    REQUIRE(to_decimal_string(BigRational(1, 3), 5) == "0.33333");
    REQUIRE(to_decimal_string(BigRational(-1, 3), 5) == "-0.33333");
    REQUIRE(to_decimal_string(BigRational(2, 3), 4) == "0.6666");  // no rounding up
    REQUIRE(to_decimal_string(BigRational(355, 113), 4) == "3.1415");
    REQUIRE(to_decimal_string(BigRational(2), 3) == "2.000");
    REQUIRE(to_decimal_string(BigRational(5), 0) == "5");
    REQUIRE(to_decimal_string(BigRational(-1, 10000), 3) == "0.000");  // sign dropped at zero
    REQUIRE(truncate_toward_zero(BigRational(-7, 3), 1) == BigRational(-23, 10));
}

TEST_CASE("decimal parsing round-trips") {
    REQUIRE(decimal_to_rational("3.25") == BigRational(13, 4));
    REQUIRE(decimal_to_rational("-0.5") == BigRational(-1, 2));
    REQUIRE(decimal_to_rational("42") == BigRational(42));
    REQUIRE_THROWS_AS(decimal_to_rational(""), std::invalid_argument);
    REQUIRE_THROWS_AS(decimal_to_rational("1.2.3"), std::invalid_argument);
    REQUIRE_THROWS_AS(decimal_to_rational("1e5"), std::invalid_argument);
    std::mt19937 rng(99);
    for (int i = 0; i < 200; ++i) {
        BigRational x = rand_rational(rng);
        std::string s = to_decimal_string(x, 6);
        BigRational back = decimal_to_rational(s);
        REQUIRE((x - back).abs() <= BigRational(1, 1000000));
    }
}

TEST_CASE("interval arithmetic is outward-conservative") {
    std::mt19937 rng(123);
    for (int i = 0; i < 300; ++i) {
        BigRational a = rand_rational(rng), b = rand_rational(rng);
        BigRational c = rand_rational(rng), d = rand_rational(rng);
        RatInterval x(std::min(a, b), std::max(a, b));
        RatInterval y(std::min(c, d), std::max(c, d));
        // member points: endpoints and midpoint
        for (const BigRational& p : {x.lo(), x.midpoint(), x.hi()}) {
            for (const BigRational& q : {y.lo(), y.midpoint(), y.hi()}) {
                REQUIRE((x + y).contains(p + q));
                REQUIRE((x - y).contains(p - q));
                REQUIRE((x * y).contains(p * q));
            }
        }
        REQUIRE(x.pow(3).contains(x.midpoint().pow(3)));
    }
    REQUIRE_THROWS_AS(RatInterval(BigRational(1), BigRational(0)), std::invalid_argument);
    REQUIRE_THROWS_AS(RatInterval(BigRational(-1), BigRational(1)).reciprocal(), std::domain_error);
}

TEST_CASE("sqrt_outward brackets the true square root") {
    std::mt19937 rng(321);
    std::uniform_int_distribution<int> num(0, 5000);
    std::uniform_int_distribution<int> den(1, 500);
    for (int i = 0; i < 200; ++i) {
        BigRational lo(num(rng), den(rng));
        BigRational hi = lo + BigRational(num(rng), den(rng));
        RatInterval root = sqrt_outward(RatInterval(lo, hi), 12);
        REQUIRE(root.lo().pow(2) <= lo);
        REQUIRE(root.hi().pow(2) >= hi);
        // tightness: widening either endpoint by 2*10^-12 overshoots
        REQUIRE((root.lo() + BigRational(2, BigInt(1000000000000))).pow(2) >= lo);
    }
    REQUIRE_THROWS_AS(sqrt_outward(RatInterval(BigRational(-1), BigRational(1)), 5),
                      std::domain_error);
}

TEST_CASE("pi enclosure meets its width contract") {
    auto e1 = pi_enclosure(1);
    REQUIRE(e1.interval.lo() >= BigRational(31, 10));
    REQUIRE(e1.interval.hi() <= BigRational(16, 5));
    REQUIRE(e1.interval.contains(known_pi()));

    auto e10 = pi_enclosure(10);
    REQUIRE(e10.interval.contains(known_pi()));
    REQUIRE(e10.interval.width() <= BigRational(1, boost::multiprecision::pow(BigInt(10), 10)));

    REQUIRE_THROWS_AS(pi_enclosure(0), std::domain_error);
    REQUIRE_THROWS_AS(pi_enclosure(1001), std::domain_error);
}

TEST_CASE("pi enclosures at different digits all intersect") {
    std::vector<PiEnclosure> encs;
    for (unsigned d : {1u, 2u, 4u, 8u, 16u, 25u, 40u}) encs.push_back(pi_enclosure(d));
    for (const auto& a : encs)
        for (const auto& b : encs) REQUIRE(a.interval.intersects(b.interval));
}

TEST_CASE("sqrt(pi) enclosure squared contains pi") {
    for (unsigned d : {3u, 10u, 20u}) {
        RatInterval s = sqrt_pi_interval(pi_enclosure(d));
        REQUIRE(s.contains(known_sqrt_pi()));
        REQUIRE((s * s).contains(known_pi()));
    }
}

TEST_CASE("PiScalar algebra") {
    PiScalar half_pi(BigRational(1, 2), 2);
    PiScalar e0(BigRational(1, 2), 1);
    SECTION("multiplication adds powers exactly") {
        PiScalar p = half_pi * e0;
        REQUIRE(p.half_pi_power() == 3);
        REQUIRE(p.coeff() == BigRational(1, 4));
    }
    SECTION("addition requires equal powers") {
        REQUIRE((half_pi + half_pi).coeff() == BigRational(1));
        REQUIRE_THROWS_AS(half_pi + e0, std::domain_error);
    }
    SECTION("canonical zero is power-compatible") {
        PiScalar zero(BigRational(0), 5);
        REQUIRE(zero.half_pi_power() == 0);
        REQUIRE(zero + half_pi == half_pi);
        REQUIRE(half_pi - half_pi == PiScalar());
    }
    SECTION("rendering") {
        REQUIRE(half_pi.to_string() == "1/2·π");
        REQUIRE(PiScalar(BigRational(3, 8), 1).to_string() == "3/8·√π");
        REQUIRE(PiScalar(BigRational(9, 64), 4).to_string() == "9/64·π^2");
        REQUIRE(PiScalar(BigRational(5, 4), 3).to_string() == "5/4·π^(3/2)");
        REQUIRE(PiScalar().to_string() == "0");
        REQUIRE(PiScalar::rational(BigRational(2, 3)).to_string() == "2/3");
    }
}

TEST_CASE("scalar_to_interval reference cases") {
    auto enc5 = pi_enclosure(5);
    RatInterval hp = scalar_to_interval(PiScalar(BigRational(1, 2), 2), enc5);
    REQUIRE(hp.contains(decimal_to_rational("1.5707963")));
    REQUIRE(hp.width() <= BigRational(1, 100000));

    RatInterval one = scalar_to_interval(PiScalar::rational(BigRational(1)), enc5);
    REQUIRE(one.lo() == BigRational(1));
    REQUIRE(one.hi() == BigRational(1));

    RatInterval sp2 = scalar_to_interval(PiScalar(BigRational(1, 2), 1), pi_enclosure(10));
    REQUIRE(sp2.contains(decimal_to_rational("0.8862269254527580136")));
}

TEST_CASE("scalar_compare reference cases") {
    PiScalar half_pi(BigRational(1, 2), 2);
    REQUIRE(scalar_compare(half_pi, half_pi, pi_enclosure(1)) == Order::Equal);
    REQUIRE(scalar_compare(PiScalar::rational(BigRational(1)), half_pi, pi_enclosure(3)) ==
            Order::Less);
    PiScalar near = PiScalar::rational(BigRational(355, 226));
    REQUIRE(scalar_compare(near, half_pi, pi_enclosure(2)) == Order::Undecided);
    REQUIRE(scalar_compare(near, half_pi, pi_enclosure(7)) == Order::Greater);
    // equal powers decide exactly even with the coarsest enclosure
    REQUIRE(scalar_compare(PiScalar(BigRational(1, 3), 2), half_pi, pi_enclosure(1)) == Order::Less);
    REQUIRE(scalar_compare(PiScalar(), PiScalar(BigRational(-1), 2), pi_enclosure(1)) ==
            Order::Greater);
}

TEST_CASE("scalar interval consistency under products and sums") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<unsigned> kdist(0, 3);
    auto enc = pi_enclosure(8);
    for (int i = 0; i < 1000; ++i) {
        BigRational cx = rand_rational(rng, 12);
        BigRational cy = rand_rational(rng, 12);
        PiScalar x(cx, kdist(rng));
        PiScalar y(cy, kdist(rng));
        RatInterval ix = scalar_to_interval(x, enc);
        RatInterval iy = scalar_to_interval(y, enc);
        REQUIRE(scalar_to_interval(x * y, enc).intersects(ix * iy));
        if (x.half_pi_power() == y.half_pi_power() || x.is_zero() || y.is_zero()) {
            // outward addition: the exact sum's interval sits inside ix + iy
            REQUIRE((ix + iy).contains(scalar_to_interval(x + y, enc)));
        }
    }
}
