// Acceptance gate: one pass/fail line per criterion, nonzero exit if any fail.
// Every check here is property-based or runs against an independent oracle.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "spt/cones.hpp"
#include "spt/patterns.hpp"
#include "spt/preservers.hpp"
#include "spt/rng.hpp"
#include "spt/semipos.hpp"

using namespace spt;

namespace {

int failures = 0;

void criterion(int number, const char* title, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (error.empty()) {
        std::printf("criterion %2d PASS  %-58s (%.1fs)\n", number, title, secs);
    } else {
        std::printf("criterion %2d FAIL  %-58s %s\n", number, title, error.c_str());
        ++failures;
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

// diagonally dominant Z-matrix; its inverse is nonnegative
RMatrix random_m_matrix(Rng& rng, std::size_t n) {
    RMatrix b(n, n);
    for (auto i = 0u; i < n; ++i)
        for (auto j = 0u; j < n; ++j)
            if (i != j) b(i, j) = -rng.next_positive_rational(3, 3);
    for (auto i = 0u; i < n; ++i) {
        Rational s = 1;
        for (auto j = 0u; j < n; ++j)
            if (j != i) s -= b(i, j);
        b(i, i) = s;
    }
    return b;
}

RMatrix random_row_positive(Rng& rng, std::size_t m) {
    RMatrix x(m, m);
    for (auto i = 0u; i < m; ++i)
        for (auto j = 0u; j < m; ++j)
            x(i, j) = rng.next_below(2) ? rng.next_positive_rational(4, 3) : Rational(0);
    for (auto i = 0u; i < m; ++i) x(i, rng.next_below(m)) = rng.next_positive_rational(4, 3);
    return x;
}

RMatrix random_monomial(Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (auto i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);
    RMatrix x = RMatrix::zero(n, n);
    for (auto i = 0u; i < n; ++i) x(i, perm[i]) = rng.next_positive_rational(4, 3);
    return x;
}

RMatrix random_invertible(Rng& rng, std::size_t n) {
    for (;;) {
        RMatrix t = rng.next_matrix(n, n, -3, 3, 2);
        if (inverse(t)) return t;
    }
}

PolyCone random_proper_cone(Rng& rng, std::size_t dim, std::size_t gens) {
    for (;;) {
        RMatrix g = rng.next_matrix(dim, gens, -3, 3, 2);
        bool zero_col = false;
        for (auto j = 0u; j < gens; ++j) {
            bool all = true;
            for (auto i = 0u; i < dim; ++i)
                if (sgn(g(i, j)) != 0) all = false;
            zero_col |= all;
        }
        if (zero_col) continue;
        auto k = PolyCone::from_generators(g);
        std::string reason;
        if (k.is_proper(reason)) return k;
    }
}

bool fully_indec_by_definition(const RMatrix& a) {
    const std::size_t n = a.rows();
    // 1x1 convention: the zero matrix counts as reducible
    if (n == 1) return sgn(a(0, 0)) != 0;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        RMatrix pa(n, n);
        for (auto i = 0u; i < n; ++i)
            for (auto j = 0u; j < n; ++j) pa(i, j) = a(perm[i], j);
        if (is_reducible(pa)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

void verify_sp_verdict(const RMatrix& a, const SPVerdict& v) {
    if (v.semipositive) {
        require(v.witness.is_positive() && (a * v.witness).is_positive(), "witness invalid");
        require(v.certificate.empty(), "both witness and certificate present");
    } else {
        require(v.certificate.is_nonnegative() && !v.certificate.is_zero() &&
                    (-(a.transpose() * v.certificate)).is_nonnegative(),
                "certificate invalid");
        require(v.witness.empty(), "both witness and certificate present");
    }
}

}  // namespace

int main() {
    criterion(1, "alternative exclusivity on 10,000 random instances", [] {
        Rng rng(1001);
        for (int k = 0; k < 10000; ++k) {
            std::size_t m = 1 + rng.next_below(6), n = 1 + rng.next_below(6);
            RMatrix a = rng.next_matrix(m, n, -9, 9, 9);
            verify_sp_verdict(a, classify_sp(a));
        }
    });

    criterion(2, "2x2 closed form vs LP on the exhaustive 625 grid", [] {
        for (long a11 = -2; a11 <= 2; ++a11)
            for (long a12 = -2; a12 <= 2; ++a12)
                for (long a21 = -2; a21 <= 2; ++a21)
                    for (long a22 = -2; a22 <= 2; ++a22) {
                        RMatrix a{{a11, a12}, {a21, a22}};
                        require(sp_2x2_closed_form(a) == classify_sp(a).semipositive,
                                "closed form disagrees with LP");
                    }
    });

    criterion(3, "row-submatrix criterion vs classify_sp, 500 instances", [] {
        Rng rng(1003);
        for (int k = 0; k < 500; ++k) {
            std::size_t n = 2 + rng.next_below(2), m = n + rng.next_below(7 - n);
            RMatrix a = rng.next_matrix(m, n, -4, 4, 3);
            require(sp_via_row_submatrices(a) == classify_sp(a).semipositive,
                    "submatrix criterion disagrees");
        }
    });

    criterion(4, "row-positive/inverse-nonneg (and monomial/MSP) transport", [] {
        Rng rng(1004);
        auto o = [](std::size_t d) { return PolyCone::orthant(d); };
        for (int k = 0; k < 200; ++k) {
            std::size_t n = 2 + rng.next_below(3), m = n + rng.next_below(2);
            RMatrix x = random_row_positive(rng, m);
            RMatrix y = random_m_matrix(rng, n);  // inverse-nonnegative
            auto yinv = inverse(y);
            require(yinv && yinv->is_nonnegative(), "M-matrix inverse not nonnegative");
            for (int t = 0; t < 20; ++t) {
                RMatrix a = sample_sp(m, n, o(n), o(m), rng.next_u64());
                require(classify_sp(x * a * y).semipositive, "X A Y lost semipositivity");
            }
        }
        for (int k = 0; k < 200; ++k) {
            std::size_t n = 2 + rng.next_below(3);
            RMatrix x = random_monomial(rng, n);
            RMatrix y = random_m_matrix(rng, n);
            int kept = 0;
            while (kept < 20) {
                RMatrix c = random_m_matrix(rng, n);  // inverse-nonnegative, hence MSP
                if (classify_msp(c).kind != SPClass::Kind::MinimallySemipositive) continue;
                require(classify_msp(x * c * y).kind ==
                            SPClass::Kind::MinimallySemipositive,
                        "X A Y lost minimality");
                ++kept;
            }
        }
    });

    criterion(5, "transpose map refuted on M_2 and M_3 within 1,000 trials", [] {
        for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
            auto o = PolyCone::orthant(n);
            LinearMap l = transpose_map(n);
            auto ce = falsify_preserver(l, o, o, 1000, 0);
            require(ce.has_value(), "no counterexample found");
            require(classify_sp(ce->a).semipositive && !classify_sp(apply(l, ce->a)).semipositive,
                    "counterexample does not verify");
        }
    });

    criterion(6, "Kronecker factorization round trip and rejection", [] {
        Rng rng(1006);
        for (int k = 0; k < 100; ++k) {
            std::size_t m = 1 + rng.next_below(4), n = 1 + rng.next_below(4);
            RMatrix x = rng.next_matrix(m, m, -4, 4, 3), y = rng.next_matrix(n, n, -4, 4, 3);
            // stay inside recover_xy's probe regime: first column of X and
            // the (0,0) entry of Y nonzero
            if (sgn(x(0, 0)) == 0) x(0, 0) = rng.next_positive_rational(4, 3);
            if (sgn(y(0, 0)) == 0) y(0, 0) = rng.next_positive_rational(4, 3);
            LinearMap l = from_xay(x, y);
            auto f = kronecker_factor(l);
            require(f.has_value(), "factorization missed a Kronecker map");
            require(l.mat == kron(f->y.transpose(), f->x), "factorization does not rebuild");
            auto g = recover_xy(l);
            require(g.has_value(), "entry recovery missed a Kronecker map");
            require(g->x == f->x && g->y == f->y && g->sign == f->sign,
                    "recover_xy disagrees with kronecker_factor");
        }
        for (int k = 0; k < 100; ++k) {
            std::size_t m = 2 + rng.next_below(3), n = 2 + rng.next_below(3);
            LinearMap l = from_xay(rng.next_matrix(m, m, -4, 4, 3), rng.next_matrix(n, n, -4, 4, 3));
            LinearMap p = from_xay(rng.next_matrix(m, m, -4, 4, 3), rng.next_matrix(n, n, -4, 4, 3));
            LinearMap s{m, n, l.mat + p.mat};
            if (rank(kronecker_rearrange(s)) <= 1) {
                --k;
                continue;
            }
            require(!kronecker_factor(s), "factored a non-Kronecker map");
            require(!recover_xy(s), "recovered factors of a non-Kronecker map");
        }
    });

    criterion(7, "conjugation transport over random simplicial cone pairs", [] {
        Rng rng(1007);
        for (int k = 0; k < 200; ++k) {
            std::size_t n = 2 + rng.next_below(3), m = 2 + rng.next_below(3);
            RMatrix s = random_invertible(rng, n), t = random_invertible(rng, m);
            auto k1 = PolyCone::from_generators(s), k2 = PolyCone::from_generators(t);
            auto on = PolyCone::orthant(n), om = PolyCone::orthant(m);

            RMatrix b = rng.next_matrix(m, n, -4, 4, 3);
            RMatrix a = conjugate_sp(b, t, s, k1, k2);
            require(classify_sp(b, on, om).semipositive == classify_sp(a, k1, k2).semipositive,
                    "verdict changed under forward conjugation");
            RMatrix back = conjugate_back(a, *inverse(t), *inverse(s), k1, k2);
            require(back == b, "round trip is not the identity");

            RMatrix a2 = rng.next_matrix(m, n, -4, 4, 3);
            RMatrix b2 = conjugate_back(a2, *inverse(t), *inverse(s), k1, k2);
            require(classify_sp(a2, k1, k2).semipositive == classify_sp(b2, on, om).semipositive,
                    "verdict changed under backward conjugation");
        }
    });

    criterion(8, "basis postconditions for four shapes, orthants and cones", [] {
        Rng rng(1008);
        const std::size_t shapes[4][2] = {{2, 2}, {3, 2}, {3, 3}, {4, 3}};
        for (auto [m, n] : shapes) {
            std::vector<std::pair<PolyCone, PolyCone>> pairs;
            pairs.emplace_back(PolyCone::orthant(n), PolyCone::orthant(m));
            pairs.emplace_back(PolyCone::from_generators(random_invertible(rng, n)),
                               PolyCone::from_generators(random_invertible(rng, m)));
            for (const auto& [k1, k2] : pairs) {
                for (bool sp : {true, false}) {
                    auto basis = sp ? sp_basis(m, n, k1, k2) : msp_basis(m, n, k1, k2);
                    require(basis.size() == m * n, "wrong basis size");
                    RMatrix stacked(m * n, m * n);
                    for (auto j = 0u; j < basis.size(); ++j) {
                        RMatrix v = vec(basis[j]);
                        for (auto i = 0u; i < m * n; ++i) stacked(i, j) = v(i, 0);
                        if (sp)
                            require(classify_sp(basis[j], k1, k2).semipositive,
                                    "basis element not semipositive");
                        else
                            require(classify_msp(basis[j], k1, k2).kind ==
                                        SPClass::Kind::MinimallySemipositive,
                                    "basis element not minimally semipositive");
                    }
                    require(rank(stacked) == m * n, "basis not full rank");
                }
            }
        }
    });

    criterion(9, "sum and difference decompositions on 200 random matrices", [] {
        Rng rng(1009);
        const std::size_t shapes[4][2] = {{2, 2}, {3, 2}, {3, 3}, {4, 3}};
        for (int k = 0; k < 200; ++k) {
            auto [m, n] = shapes[rng.next_below(4)];
            RMatrix a = rng.next_matrix(m, n, -5, 5, 4);
            auto k1 = PolyCone::orthant(n), k2 = PolyCone::orthant(m);

            auto [b, c] = decompose_sum_sp(a, k1, k2);
            require(b + c == a, "sum does not reassemble");
            require(classify_sp(b, k1, k2).semipositive && classify_sp(c, k1, k2).semipositive,
                    "sum part not semipositive");

            auto [c1, c2] = decompose_diff_msp(a, k1, k2);
            require(c1 - c2 == a, "difference does not reassemble");
            require(classify_msp(c1, k1, k2).kind == SPClass::Kind::MinimallySemipositive &&
                        classify_msp(c2, k1, k2).kind == SPClass::Kind::MinimallySemipositive,
                    "difference part not minimally semipositive");
        }
    });

    criterion(10, "full indecomposability vs all-permutations definition", [] {
        for (std::size_t n = 1; n <= 4; ++n)
            for (std::size_t bits = 0; bits < (std::size_t{1} << (n * n)); ++bits) {
                RMatrix a(n, n);
                for (auto i = 0u; i < n; ++i)
                    for (auto j = 0u; j < n; ++j)
                        if (bits >> (i * n + j) & 1) a(i, j) = 1;
                require(is_fully_indecomposable(a) == fully_indec_by_definition(a),
                        "disagrees with definition (exhaustive)");
            }
        Rng rng(1010);
        for (int k = 0; k < 1000; ++k) {
            RMatrix a(5, 5);
            for (auto i = 0u; i < 5u; ++i)
                for (auto j = 0u; j < 5u; ++j) a(i, j) = rng.next_below(2);
            require(is_fully_indecomposable(a) == fully_indec_by_definition(a),
                    "disagrees with definition (random n=5)");
        }
    });

    criterion(11, "onto-preserver check vs the monomial characterization", [] {
        Rng rng(1011);
        for (int k = 0; k < 500; ++k) {
            std::size_t n = 2 + rng.next_below(3);
            auto pick = [&](bool force_monomial) {
                RMatrix z = force_monomial ? random_monomial(rng, n)
                                           : rng.next_matrix(n, n, -3, 3, 2);
                if (rng.next_below(4) == 0) z = -z;
                return z;
            };
            bool plant = rng.next_below(2);
            RMatrix x = pick(plant), y = pick(plant && rng.next_below(4) != 0);
            auto o = PolyCone::orthant(n);
            bool expected = (is_monomial(x) && is_monomial(y)) ||
                            (is_monomial(-x) && is_monomial(-y));
            require(check_onto_xay(x, y, o, o) == expected,
                    "disagrees with the monomial characterization");
        }
    });

    criterion(12, "nonneg-map duality transport on 500 instances", [] {
        Rng rng(1012);
        int done = 0;
        while (done < 500) {
            std::size_t n = 2 + rng.next_below(3), m = 2 + rng.next_below(3);
            auto k1 = random_proper_cone(rng, n, n + rng.next_below(2));
            auto k2 = random_proper_cone(rng, m, m + rng.next_below(2));
            RMatrix a;
            if (rng.next_below(2)) {
                // planted nonnegative map: nonneg combinations of y z^T with
                // y in K2 and z in K1*
                RMatrix d1 = k1.dual().generators(), g2 = k2.generators();
                RMatrix c(g2.cols(), d1.cols());
                for (auto i = 0u; i < c.rows(); ++i)
                    for (auto j = 0u; j < c.cols(); ++j)
                        c(i, j) = rng.next_below(2) ? rng.next_positive_rational(3, 2)
                                                    : Rational(0);
                a = g2 * c * d1.transpose();
            } else {
                a = rng.next_matrix(m, n, -3, 3, 2);
            }
            if (!is_nonneg_map(a, k1, k2)) continue;
            require(is_nonneg_map(a.transpose(), k2.dual(), k1.dual()),
                    "transpose not nonnegative on the dual pair");
            ++done;
        }
    });

    std::printf("%s\n", failures == 0 ? "all criteria passed" : "FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
