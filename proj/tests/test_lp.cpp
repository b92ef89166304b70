#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spt/lp.hpp"
#include "spt/rng.hpp"

using namespace spt;
using namespace spt::lp;

namespace {

Problem make(const RMatrix& a, std::vector<Rational> b, std::vector<Sense> s,
             std::vector<Rational> c, bool maximize = false) {
    Problem p;
    p.a = a;
    p.b = std::move(b);
    p.sense = std::move(s);
    p.c = std::move(c);
    p.maximize = maximize;
    return p;
}

// feasibility and complementary-slackness-free optimality via weak duality:
// the dual value must equal the primal objective
void check_optimal(const Problem& p, const Solution& s) {
    REQUIRE(s.status == Status::Optimal);
    const std::size_t q = p.a.rows(), n = p.a.cols();
    std::vector<bool> free_var = p.free_var;
    if (free_var.empty()) free_var.assign(n, false);

    for (std::size_t i = 0; i < q; ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += p.a(i, j) * s.x[j];
        switch (p.sense[i]) {
            case Sense::LE: CHECK(lhs <= p.b[i]); break;
            case Sense::GE: CHECK(lhs >= p.b[i]); break;
            case Sense::EQ: CHECK(lhs == p.b[i]); break;
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!free_var[j]) CHECK(sgn(s.x[j]) >= 0);

    // dual feasibility in the documented sign convention, and strong duality
    int dir = p.maximize ? -1 : 1;
    Rational ytb = 0;
    for (std::size_t i = 0; i < q; ++i) {
        ytb += s.dual[i] * p.b[i];
        if (p.sense[i] == Sense::GE) CHECK(dir * sgn(s.dual[i]) >= 0);
        if (p.sense[i] == Sense::LE) CHECK(dir * sgn(s.dual[i]) <= 0);
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rational red = p.c[j];
        for (std::size_t i = 0; i < q; ++i) red -= s.dual[i] * p.a(i, j);
        if (free_var[j])
            CHECK(sgn(red) == 0);
        else
            CHECK(dir * sgn(red) >= 0);
    }
    CHECK(ytb == s.objective);
}

void check_infeasible(const Problem& p, const Solution& s) {
    REQUIRE(s.status == Status::Infeasible);
    const std::size_t q = p.a.rows(), n = p.a.cols();
    std::vector<bool> free_var = p.free_var;
    if (free_var.empty()) free_var.assign(n, false);

    Rational ftb = 0;
    for (std::size_t i = 0; i < q; ++i) {
        ftb += s.farkas[i] * p.b[i];
        if (p.sense[i] == Sense::GE) CHECK(sgn(s.farkas[i]) >= 0);
        if (p.sense[i] == Sense::LE) CHECK(sgn(s.farkas[i]) <= 0);
    }
    CHECK(sgn(ftb) > 0);
    for (std::size_t j = 0; j < n; ++j) {
        Rational fa = 0;
        for (std::size_t i = 0; i < q; ++i) fa += s.farkas[i] * p.a(i, j);
        if (free_var[j])
            CHECK(sgn(fa) == 0);
        else
            CHECK(sgn(fa) <= 0);
    }
}

}  // namespace

TEST_CASE("basic minimize") {
    // min x + y s.t. x + y >= 2, x >= 0, y >= 0
    auto p = make(RMatrix{{1, 1}}, {Rational(2)}, {Sense::GE}, {Rational(1), Rational(1)});
    auto s = solve(p);
    check_optimal(p, s);
    CHECK(s.objective == Rational(2));
}

TEST_CASE("basic maximize with mixed rows") {
    // max 3x + 2y s.t. x + y <= 4, x - y = 1
    auto p = make(RMatrix{{1, 1}, {1, -1}}, {Rational(4), Rational(1)},
                  {Sense::LE, Sense::EQ}, {Rational(3), Rational(2)}, true);
    auto s = solve(p);
    check_optimal(p, s);
    CHECK(s.objective == rat(21, 2));  // x = 5/2, y = 3/2
}

TEST_CASE("free variables") {
    // min t s.t. t >= -5 (t free): optimum -5
    Problem p = make(RMatrix{{1}}, {Rational(-5)}, {Sense::GE}, {Rational(1)});
    p.free_var = {true};
    auto s = solve(p);
    check_optimal(p, s);
    CHECK(s.objective == Rational(-5));
}

TEST_CASE("unbounded") {
    // max x s.t. -x <= 1
    auto p = make(RMatrix{{-1}}, {Rational(1)}, {Sense::LE}, {Rational(1)}, true);
    CHECK(solve(p).status == Status::Unbounded);
}

TEST_CASE("infeasible with Farkas certificate") {
    // x >= 2 and x <= 1
    auto p = make(RMatrix{{1}, {1}}, {Rational(2), Rational(1)}, {Sense::GE, Sense::LE},
                  {Rational(0)});
    auto s = solve(p);
    check_infeasible(p, s);

    // equality system without nonnegative solution: x + y = -1
    auto p2 = make(RMatrix{{1, 1}}, {Rational(-1)}, {Sense::EQ}, {Rational(0), Rational(0)});
    check_infeasible(p2, solve(p2));
}

TEST_CASE("degenerate problem that cycles under Dantzig's rule") {
    // Beale's example; Bland's rule must terminate at objective -1/20
    RMatrix a{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}};
    a(0, 0) = rat(1, 4), a(0, 1) = Rational(-60), a(0, 2) = rat(-1, 25), a(0, 3) = Rational(9);
    a(1, 0) = rat(1, 2), a(1, 1) = Rational(-90), a(1, 2) = rat(-1, 50), a(1, 3) = Rational(3);
    auto p = make(a, {Rational(0), Rational(0), Rational(1)}, {Sense::LE, Sense::LE, Sense::LE},
                  {rat(-3, 4), Rational(150), rat(-1, 50), Rational(6)});
    auto s = solve(p);
    check_optimal(p, s);
    CHECK(s.objective == rat(-1, 20));
}

TEST_CASE("redundant equality rows") {
    // x + y = 2 stated twice, min x
    auto p = make(RMatrix{{1, 1}, {1, 1}}, {Rational(2), Rational(2)},
                  {Sense::EQ, Sense::EQ}, {Rational(1), Rational(0)});
    auto s = solve(p);
    check_optimal(p, s);
    CHECK(s.objective == Rational(0));
}

TEST_CASE("strict feasibility: witness branch") {
    auto r = strict_feasibility(RMatrix::identity(3));
    REQUIRE(is_strict(r));
    auto& w = std::get<StrictWitness>(r);
    for (std::size_t i = 0; i < 3; ++i) CHECK(sgn(w.lambda(i, 0)) > 0);

    // wide matrix with a mixed-sign strict solution
    RMatrix m{{2, -1}, {-1, 2}};
    auto r2 = strict_feasibility(m);
    REQUIRE(is_strict(r2));
    RMatrix img = m * std::get<StrictWitness>(r2).lambda;
    for (std::size_t i = 0; i < 2; ++i) CHECK(sgn(img(i, 0)) > 0);
}

TEST_CASE("strict feasibility: Farkas branch") {
    RMatrix m{{1, -1}, {-1, 1}};
    auto r = strict_feasibility(m);
    REQUIRE(!is_strict(r));
    auto& f = std::get<FarkasWitness>(r);
    bool nonzero = false;
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(sgn(f.y(i, 0)) >= 0);
        if (sgn(f.y(i, 0)) > 0) nonzero = true;
    }
    CHECK(nonzero);
    RMatrix mty = m.transpose() * f.y;
    for (std::size_t j = 0; j < 2; ++j) CHECK(sgn(mty(j, 0)) <= 0);

    // degenerate margin counts as infeasible: M = [[1, -1]] has max margin 0
    // on the simplex only with lambda on the boundary? no: lambda=(1,0) gives 1.
    // A genuinely degenerate one: M = [[0]]
    CHECK(!is_strict(strict_feasibility(RMatrix{{0}})));
}

TEST_CASE("strict feasibility exclusivity on random instances") {
    Rng rng(31);
    for (int k = 0; k < 200; ++k) {
        std::size_t q = 1 + rng.next_below(4), p = 1 + rng.next_below(4);
        RMatrix m = rng.next_matrix(q, p, -5, 5, 5);
        auto r = strict_feasibility(m);
        if (is_strict(r)) {
            auto& w = std::get<StrictWitness>(r);
            RMatrix img = m * w.lambda;
            for (std::size_t j = 0; j < p; ++j) CHECK(sgn(w.lambda(j, 0)) > 0);
            for (std::size_t i = 0; i < q; ++i) CHECK(sgn(img(i, 0)) > 0);
        } else {
            auto& f = std::get<FarkasWitness>(r);
            CHECK(!f.y.is_zero());
            CHECK(f.y.is_nonnegative());
            CHECK((-(m.transpose() * f.y)).is_nonnegative());
        }
    }
}

TEST_CASE("nonneg_solution") {
    // I Z = F has the obvious nonnegative solution
    RMatrix f{{1, 2}, {3, 4}};
    auto z = nonneg_solution(RMatrix::identity(2), f);
    REQUIRE(z.has_value());
    CHECK(*z == f);

    // x - y = 1 has one; x + y = -1 has none
    CHECK(nonneg_solution(RMatrix{{1, -1}}, RMatrix{{1}}).has_value());
    CHECK(!nonneg_solution(RMatrix{{1, 1}}, RMatrix{{-1}}).has_value());

    auto z2 = nonneg_solution(RMatrix{{1, -1}}, RMatrix{{1}});
    RMatrix check = RMatrix{{1, -1}} * *z2;
    CHECK(check(0, 0) == Rational(1));
    CHECK(z2->is_nonnegative());
}

TEST_CASE("random duality: optimal value matches dual value") {
    Rng rng(77);
    int optimal_seen = 0;
    for (int k = 0; k < 150; ++k) {
        std::size_t q = 1 + rng.next_below(3), n = 1 + rng.next_below(3);
        Problem p;
        p.a = rng.next_matrix(q, n, -4, 4, 3);
        p.b.resize(q);
        p.sense.resize(q);
        for (std::size_t i = 0; i < q; ++i) {
            p.b[i] = rng.next_rational(-4, 4, 3);
            p.sense[i] = static_cast<Sense>(rng.next_below(3));
        }
        p.c.resize(n);
        p.free_var.assign(n, false);
        for (std::size_t j = 0; j < n; ++j) {
            p.c[j] = rng.next_rational(-4, 4, 3);
            if (rng.next_below(4) == 0) p.free_var[j] = true;
        }
        p.maximize = rng.next_below(2) == 1;
        auto s = solve(p);
        if (s.status == Status::Optimal) {
            check_optimal(p, s);
            ++optimal_seen;
        } else if (s.status == Status::Infeasible) {
            check_infeasible(p, s);
        }
    }
    CHECK(optimal_seen > 20);  // the sweep actually exercises the optimal path
}
