#include <catch2/catch_amalgamated.hpp>

#include <cstring>

#include "parasol/interval.hpp"
#include "support/expr_trees.hpp"
#include "support/mp.hpp"

using namespace parasol;

namespace {
bool contains_mp(const Interval& iv, const mp::Real& x) {
    return mp::Real(iv.lo()) <= x && x <= mp::Real(iv.hi());
}
double ulp_gap(double lo, double hi) {
    double w = hi - lo;
    return w / std::max(std::fabs(lo), 1e-300) / 0x1p-52;
}
} // namespace

TEST_CASE("exact endpoint arithmetic stays exact") {
    Interval a(1.0, 2.0), b(3.0, 4.0);
    Interval s = a + b;
    CHECK(s.lo() == 4.0);
    CHECK(s.hi() == 6.0);

    Interval m = Interval(-1.0, 1.0) * Interval(-1.0, 1.0);
    CHECK(m.lo() <= -1.0);
    CHECK(m.hi() >= 1.0);
    CHECK(m.contains(Interval(-1.0, 1.0)));
}

TEST_CASE("division is one-ulp tight and rigorous") {
    Interval q = Interval(1.0) / Interval(3.0);
    CHECK(contains_mp(q, mp::Real::ratio(1, 3)));
    CHECK(ulp_gap(q.lo(), q.hi()) <= 2.0);

    CHECK_THROWS_AS(Interval(1.0) / Interval(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Interval(1.0) / Interval(0.0, 2.0), DomainError);
}

TEST_CASE("sqrt and exp enclosures") {
    Interval s = sqrt(Interval(4.0, 9.0));
    CHECK(s.lo() == 2.0);
    CHECK(s.hi() == 3.0);
    CHECK_THROWS_AS(sqrt(Interval(-1.0, 1.0)), DomainError);

    Interval e0 = exp(Interval(0.0));
    CHECK(e0.contains(1.0));
    CHECK(ulp_gap(e0.lo(), e0.hi()) <= 2.0);

    Interval e1 = exp(Interval(1.0));
    CHECK(contains_mp(e1, exp(mp::Real(1))));
    CHECK(ulp_gap(e1.lo(), e1.hi()) <= 32.0);

    Interval big = exp(Interval(-3.0, 2.0));
    CHECK(big.lo() <= exp(Interval(-3.0)).lo());
    CHECK(big.hi() >= exp(Interval(2.0)).hi());
}

TEST_CASE("hull, mag, from_ratio") {
    CHECK(hull(Interval(0.0, 1.0), Interval(2.0, 3.0)) == Interval(0.0, 3.0));
    CHECK(mag(Interval(-3.0, 2.0)) == 3.0);

    Interval r = from_ratio(1, 10);
    CHECK(contains_mp(r, mp::Real::ratio(1, 10)));
    CHECK(ulp_gap(r.lo(), r.hi()) <= 1.0);
    CHECK_THROWS_AS(from_ratio(1, 0), DomainError);
}

TEST_CASE("interval constants enclose their high-precision values") {
    CHECK(contains_mp(constants::pi(), mp::Real::pi()));
    CHECK(contains_mp(constants::ln2(), mp::Real::ln2()));
}

TEST_CASE("containment of random expression trees (unit sample)") {
    CHECK(trees::containment_violations(20260810u, 4000, 5) == 0);
}

TEST_CASE("width never shrinks under addition") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        double a1 = u(rng), a2 = u(rng), b1 = u(rng), b2 = u(rng);
        Interval a(std::min(a1, a2), std::max(a1, a2));
        Interval b(std::min(b1, b2), std::max(b1, b2));
        CHECK((a + b).width() >= a.width());
    }
}

TEST_CASE("operations are deterministic") {
    Interval x = from_ratio(355, 113);
    Interval y = exp(sqrt(x / Interval(7.0)) - Interval(0.25));
    Interval z = exp(sqrt(x / Interval(7.0)) - Interval(0.25));
    CHECK(std::memcmp(&y, &z, sizeof y) == 0);
}

TEST_CASE("invalid intervals are rejected, unbounded ones work") {
    CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(Interval(std::nan("")), DomainError);
    Interval unbounded(-rnd::kInf, 3.0);
    CHECK(unbounded.lo() == -rnd::kInf);
    Interval prod = unbounded * Interval(0.0, 2.0);
    CHECK(prod.lo() == -rnd::kInf);
    CHECK(prod.hi() >= 6.0);
}

TEST_CASE("sqr is tighter than self-multiplication across zero") {
    Interval x(-1.0, 1.0);
    CHECK(sqr(x).lo() == 0.0);
    CHECK(sqr(x).hi() == 1.0);
    CHECK(pow_int(Interval(-2.0, 3.0), 2).lo() == 0.0);
    CHECK(pow_int(Interval(2.0), 10).contains(1024.0));
}
