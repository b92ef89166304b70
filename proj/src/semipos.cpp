#include "spt/semipos.hpp"

#include <algorithm>
#include <stdexcept>

#include "spt/rng.hpp"

namespace spt {

namespace {

void require_proper(const PolyCone& k, const char* what) {
    std::string reason;
    if (!k.is_proper(reason))
        throw std::invalid_argument(std::string(what) + ": cone is " + reason);
}

void require_shape(const RMatrix& a, const PolyCone& k1, const PolyCone& k2) {
    if (a.cols() != k1.dim() || a.rows() != k2.dim())
        throw std::invalid_argument("matrix shape does not match cone dimensions");
}

bool is_orthant(const PolyCone& k) { return k.same_cone(PolyCone::orthant(k.dim())); }

RMatrix ones(std::size_t r, std::size_t c) {
    RMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = 1;
    return m;
}

RMatrix unit(std::size_t r, std::size_t c, std::size_t i, std::size_t j) {
    RMatrix m(r, c);
    m(i, j) = 1;
    return m;
}

// Exact post-verification; a failed check is a solver bug, not user error.
void verify_verdict(const SPVerdict& v, const RMatrix& a, const PolyCone& k1,
                    const PolyCone& k2) {
    if (v.semipositive) {
        if (!k1.contains_interior(v.witness) || !k2.contains_interior(a * v.witness))
            throw std::logic_error("semipositivity witness failed verification");
    } else {
        const RMatrix& y = v.certificate;
        if (y.is_zero()) throw std::logic_error("zero certificate");
        if (!(k2.generators().transpose() * y).is_nonnegative())
            throw std::logic_error("certificate not in dual cone");
        if (!(k1.generators().transpose() * (-(a.transpose() * y))).is_nonnegative())
            throw std::logic_error("certificate image not in dual cone");
    }
}

std::size_t rank_of_stacked(const std::vector<RMatrix>& mats) {
    RMatrix stacked(mats.size(), mats.front().rows() * mats.front().cols());
    for (std::size_t k = 0; k < mats.size(); ++k) {
        RMatrix v = vec(mats[k]);
        for (std::size_t i = 0; i < v.rows(); ++i) stacked(k, i) = v(i, 0);
    }
    return rank(stacked);
}

}  // namespace

SPVerdict classify_sp(const RMatrix& a, const PolyCone& k1, const PolyCone& k2) {
    require_proper(k1, "classify_sp");
    require_proper(k2, "classify_sp");
    require_shape(a, k1, k2);

    // reduce to orthant coordinates: M lambda > 0 strictly, lambda > 0
    RMatrix m = k2.facets() * a * k1.generators();
    lp::StrictResult r = lp::strict_feasibility(m);

    SPVerdict v;
    if (auto* s = std::get_if<lp::StrictWitness>(&r)) {
        v.semipositive = true;
        v.witness = k1.generators() * s->lambda;
    } else {
        v.semipositive = false;
        v.certificate = k2.facets().transpose() * std::get<lp::FarkasWitness>(r).y;
    }
    verify_verdict(v, a, k1, k2);
    return v;
}

SPVerdict classify_sp(const RMatrix& a) {
    return classify_sp(a, PolyCone::orthant(a.cols()), PolyCone::orthant(a.rows()));
}

SPClass classify_msp(const RMatrix& a, const PolyCone& k1, const PolyCone& k2) {
    if (a.rows() < a.cols())
        throw std::invalid_argument("classify_msp needs m >= n");
    SPVerdict sp = classify_sp(a, k1, k2);
    if (!sp.semipositive) {
        SPClass c;
        c.kind = SPClass::Kind::NotSemipositive;
        c.certificate = sp.certificate;
        return c;
    }

    const std::size_t n = a.cols(), mm = a.rows();
    const RMatrix& g1 = k1.generators();
    const RMatrix& g2 = k2.generators();
    const RMatrix& f1 = k1.facets();
    const RMatrix& f2 = k2.facets();

    auto accept = [&](const RMatrix& b) -> std::optional<SPClass> {
        if (!(b * a == RMatrix::identity(n))) return std::nullopt;
        if (!is_nonneg_map(b, k2, k1)) return std::nullopt;
        SPClass c;
        c.kind = SPClass::Kind::MinimallySemipositive;
        c.left_inverse = b;
        return c;
    };

    // cheap first pass: B = G1 Z F2 with Z >= 0
    {
        RMatrix e = kron((f2 * a).transpose(), g1);
        if (auto z = lp::nonneg_solution(e, vec(RMatrix::identity(n)))) {
            RMatrix b = g1 * unvec(*z, g1.cols(), f2.rows()) * f2;
            if (auto c = accept(b)) return *c;
        }
    }

    // complete fallback: feasibility of { B : B A = I, F1 B G2 >= 0 } in the
    // free entries of B
    {
        lp::Problem prob;
        RMatrix eq = kron(a.transpose(), RMatrix::identity(n));  // vec(BA)
        RMatrix ge = kron(g2.transpose(), f1);                   // vec(F1 B G2)
        prob.a = RMatrix::vcat(eq, ge);
        RMatrix rhs_eq = vec(RMatrix::identity(n));
        prob.b.resize(prob.a.rows());
        for (std::size_t i = 0; i < eq.rows(); ++i) prob.b[i] = rhs_eq(i, 0);
        prob.sense.assign(prob.a.rows(), lp::Sense::GE);
        for (std::size_t i = 0; i < eq.rows(); ++i) prob.sense[i] = lp::Sense::EQ;
        prob.c.assign(prob.a.cols(), Rational(0));
        prob.free_var.assign(prob.a.cols(), true);
        lp::Solution sol = lp::solve(prob);
        if (sol.status == lp::Status::Optimal) {
            RMatrix bvec(n * mm, 1);
            for (std::size_t i = 0; i < n * mm; ++i) bvec(i, 0) = sol.x[i];
            if (auto c = accept(unvec(bvec, n, mm))) return *c;
            throw std::logic_error("left-inverse feasibility point failed verification");
        }
    }

    SPClass c;
    c.kind = SPClass::Kind::RedundantlySemipositive;
    return c;
}

SPClass classify_msp(const RMatrix& a) {
    return classify_msp(a, PolyCone::orthant(a.cols()), PolyCone::orthant(a.rows()));
}

bool cross_check_msp_by_deletion(const RMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw std::invalid_argument("needs m >= n");
    if (n > 6) throw CapacityError("deletion oracle capacity is n <= 6");
    if (!classify_sp(a).semipositive) return false;

    std::vector<std::size_t> all_rows(m);
    for (std::size_t i = 0; i < m; ++i) all_rows[i] = i;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1) cols.push_back(j);
        if (classify_sp(a.submatrix(all_rows, cols)).semipositive) return false;
    }
    return true;
}

SPVerdict is_left_sp(const RMatrix& a, const PolyCone& k1, const PolyCone& k2, bool strict) {
    require_proper(k1, "is_left_sp");
    require_proper(k2, "is_left_sp");
    require_shape(a, k1, k2);
    PolyCone d1 = k1.dual(), d2 = k2.dual();
    SPVerdict v = classify_sp(a.transpose(), d2, d1);
    if (v.semipositive && !strict) {
        // displayed definition only needs x in K2*, which the interior
        // witness satisfies; re-verify against the weaker predicate
        if (!d2.contains(v.witness) || !d1.contains_interior(a.transpose() * v.witness))
            throw std::logic_error("left-sp witness failed verification");
    }
    return v;
}

bool sp_2x2_closed_form(const RMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2)
        throw std::invalid_argument("sp_2x2_closed_form needs a 2x2 matrix");
    for (std::size_t j = 0; j < 2; ++j)
        if (sgn(a(0, j)) > 0 && sgn(a(1, j)) > 0) return true;
    const Rational det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    // [[a,-b],[-c,d]] with a,d > 0, b,c >= 0, ad - bc > 0
    if (sgn(a(0, 0)) > 0 && sgn(a(1, 1)) > 0 && sgn(a(0, 1)) <= 0 && sgn(a(1, 0)) <= 0 &&
        sgn(det) > 0)
        return true;
    // [[-b,a],[d,-c]] with the same conditions on a, b, c, d
    if (sgn(a(0, 1)) > 0 && sgn(a(1, 0)) > 0 && sgn(a(0, 0)) <= 0 && sgn(a(1, 1)) <= 0 &&
        sgn(det) < 0)
        return true;
    return false;
}

bool sp_via_row_submatrices(const RMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw std::invalid_argument("needs m >= n");
    std::vector<std::size_t> all_cols(n);
    for (std::size_t j = 0; j < n; ++j) all_cols[j] = j;

    std::vector<std::size_t> pick(n);
    std::size_t count = 0;
    // iterate over all n-subsets of rows
    for (std::size_t j = 0; j < n; ++j) pick[j] = j;
    for (;;) {
        if (++count > 5000) throw CapacityError("C(m,n) beyond submatrix-criterion capacity");
        if (!classify_sp(a.submatrix(pick, all_cols)).semipositive) return false;
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return true;
}

RMatrix conjugate_sp(const RMatrix& b, const RMatrix& s1, const RMatrix& s2,
                     const PolyCone& k1, const PolyCone& k2) {
    auto s2inv = inverse(s2);
    if (!s2inv) throw std::invalid_argument("conjugate_sp: S2 singular");
    PolyCone om = PolyCone::orthant(k2.dim()), on = PolyCone::orthant(k1.dim());
    if (!maps_interior_to_interior(s1, om, k2))
        throw std::invalid_argument("conjugate_sp: S1 not interior-to-interior into K2");
    if (!is_nonneg_map(s2, on, k1))
        throw std::invalid_argument("conjugate_sp: S2 not (orthant,K1)-nonnegative");
    return s1 * b * *s2inv;
}

RMatrix conjugate_back(const RMatrix& a, const RMatrix& q1, const RMatrix& q2,
                       const PolyCone& k1, const PolyCone& k2) {
    auto q2inv = inverse(q2);
    if (!q2inv) throw std::invalid_argument("conjugate_back: Q2 singular");
    PolyCone om = PolyCone::orthant(k2.dim()), on = PolyCone::orthant(k1.dim());
    if (!maps_interior_to_interior(q1, k2, om))
        throw std::invalid_argument("conjugate_back: Q1 not interior-to-interior onto orthant");
    if (!is_nonneg_map(q2, k1, on))
        throw std::invalid_argument("conjugate_back: Q2 not (K1,orthant)-nonnegative");
    return q1 * a * *q2inv;
}

std::vector<RMatrix> sp_basis(std::size_t m, std::size_t n, const PolyCone& k1,
                              const PolyCone& k2) {
    require_proper(k1, "sp_basis");
    require_proper(k2, "sp_basis");

    std::vector<RMatrix> basis;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) basis.push_back(ones(m, n) + unit(m, n, i, j));

    if (!is_orthant(k1) || !is_orthant(k2)) {
        RMatrix t = extend_to_simplicial(k2, k2.interior_point());
        RMatrix s = extend_to_simplicial(k1, k1.interior_point());
        RMatrix sinv = *inverse(s);
        for (auto& b : basis) b = t * b * sinv;
    }

    for (const auto& b : basis)
        if (!classify_sp(b, k1, k2).semipositive)
            throw std::logic_error("sp_basis element failed re-verification");
    if (rank_of_stacked(basis) != m * n)
        throw std::logic_error("sp_basis is rank-deficient");
    return basis;
}

namespace {

// Orthant MSP basis. Square: {I + E_kk/2} and {I - E_kl/2}. Rectangular:
// the same square family over an all-ones bottom block, plus bottom-block
// perturbations of [I; ones].
std::vector<RMatrix> msp_basis_orthant(std::size_t m, std::size_t n) {
    std::vector<RMatrix> square;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            RMatrix s = RMatrix::identity(n);
            s(k, l) += (k == l ? Rational(1, 2) : Rational(-1, 2));
            square.push_back(std::move(s));
        }
    if (m == n) return square;

    std::vector<RMatrix> basis;
    for (const auto& s : square) basis.push_back(RMatrix::vcat(s, ones(m - n, n)));
    for (std::size_t r = 0; r < m - n; ++r)
        for (std::size_t j = 0; j < n; ++j) {
            RMatrix bottom = ones(m - n, n);
            bottom(r, j) += Rational(1, 2);
            basis.push_back(RMatrix::vcat(RMatrix::identity(n), bottom));
        }
    return basis;
}

}  // namespace

std::vector<RMatrix> msp_basis(std::size_t m, std::size_t n, const PolyCone& k1,
                               const PolyCone& k2) {
    require_proper(k1, "msp_basis");
    require_proper(k2, "msp_basis");
    if (m < n) throw std::invalid_argument("msp_basis needs m >= n");
    if (m > n && !k2.is_simplicial())
        throw std::invalid_argument("msp_basis with m > n needs simplicial K2");

    std::vector<RMatrix> basis = msp_basis_orthant(m, n);

    if (!is_orthant(k1) || !is_orthant(k2)) {
        RMatrix s = extend_to_simplicial(k1, k1.interior_point());
        RMatrix sinv = *inverse(s);
        if (m > n) {
            RMatrix t = k2.generators();  // simplicial: T(orthant) = K2
            for (auto& b : basis) b = t * b * sinv;
        } else {
            RMatrix t = extend_to_simplicial(k2.dual(), k2.dual().interior_point());
            RMatrix tinv = *inverse(t.transpose());
            for (auto& b : basis) b = tinv * b * sinv;
        }
    }

    for (const auto& b : basis)
        if (classify_msp(b, k1, k2).kind != SPClass::Kind::MinimallySemipositive)
            throw std::logic_error("msp_basis element failed re-verification");
    if (rank_of_stacked(basis) != m * n)
        throw std::logic_error("msp_basis is rank-deficient");
    return basis;
}

namespace {

std::pair<RMatrix, RMatrix> decompose_sum_sp_orthant(const RMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    Rational t = 1;
    for (std::size_t i = 0; i < m; ++i)
        if (sgn(a(i, 0)) < 0 && 1 - a(i, 0) > t) t = 1 - a(i, 0);

    for (int attempt = 0; attempt < 64; ++attempt, t *= 2) {
        RMatrix c(m, n);
        for (std::size_t i = 0; i < m; ++i) {
            c(i, 0) = -t;
            c(i, 1) = 1;
        }
        RMatrix b = a - c;
        if (classify_sp(b).semipositive && classify_sp(c).semipositive) return {b, c};
    }
    throw std::logic_error("sum decomposition failed to verify");
}

}  // namespace

std::pair<RMatrix, RMatrix> decompose_sum_sp(const RMatrix& a, const PolyCone& k1,
                                             const PolyCone& k2) {
    require_proper(k1, "decompose_sum_sp");
    require_proper(k2, "decompose_sum_sp");
    require_shape(a, k1, k2);
    if (a.cols() < 2)
        throw std::invalid_argument("sum decomposition needs n >= 2");

    if (is_orthant(k1) && is_orthant(k2)) return decompose_sum_sp_orthant(a);

    RMatrix s1 = extend_to_simplicial(k2, k2.interior_point());
    RMatrix s2 = extend_to_simplicial(k1, k1.interior_point());
    RMatrix s1inv = *inverse(s1), s2inv = *inverse(s2);
    auto [b0, c0] = decompose_sum_sp_orthant(s1inv * a * s2);
    RMatrix b = s1 * b0 * s2inv, c = s1 * c0 * s2inv;
    if (!classify_sp(b, k1, k2).semipositive || !classify_sp(c, k1, k2).semipositive)
        throw std::logic_error("transported sum decomposition failed to verify");
    return {b, c};
}

namespace {

std::pair<RMatrix, RMatrix> decompose_diff_msp_orthant(const RMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    RMatrix w = *inverse(RMatrix::identity(n) + ones(n, n));
    if (m > n) w = RMatrix::vcat(w, ones(m - n, n));

    Rational t = 1;
    for (int attempt = 0; attempt < 64; ++attempt, t *= 2) {
        RMatrix c2 = w * t;
        RMatrix c1 = a + c2;
        if (classify_msp(c1).kind == SPClass::Kind::MinimallySemipositive &&
            classify_msp(c2).kind == SPClass::Kind::MinimallySemipositive)
            return {c1, c2};
    }
    throw std::logic_error("difference decomposition failed to verify");
}

}  // namespace

std::pair<RMatrix, RMatrix> decompose_diff_msp(const RMatrix& a, const PolyCone& k1,
                                               const PolyCone& k2) {
    require_proper(k1, "decompose_diff_msp");
    require_proper(k2, "decompose_diff_msp");
    require_shape(a, k1, k2);
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw std::invalid_argument("decompose_diff_msp needs m >= n");
    if (m > n && !k2.is_simplicial())
        throw std::invalid_argument("decompose_diff_msp with m > n needs simplicial K2");

    if (is_orthant(k1) && is_orthant(k2)) return decompose_diff_msp_orthant(a);

    RMatrix s = extend_to_simplicial(k1, k1.interior_point());
    RMatrix sinv = *inverse(s);
    RMatrix t, tinv;  // the K2-side transport and its inverse image map
    if (m > n) {
        t = k2.generators();
        tinv = *inverse(t);
    } else {
        RMatrix tt = extend_to_simplicial(k2.dual(), k2.dual().interior_point());
        t = *inverse(tt.transpose());
        tinv = tt.transpose();
    }
    auto [c10, c20] = decompose_diff_msp_orthant(tinv * a * s);
    RMatrix c1 = t * c10 * sinv, c2 = t * c20 * sinv;
    if (classify_msp(c1, k1, k2).kind != SPClass::Kind::MinimallySemipositive ||
        classify_msp(c2, k1, k2).kind != SPClass::Kind::MinimallySemipositive)
        throw std::logic_error("transported difference decomposition failed to verify");
    return {c1, c2};
}

RMatrix sample_sp(std::size_t m, std::size_t n, const PolyCone& k1, const PolyCone& k2,
                  std::uint64_t seed) {
    require_proper(k1, "sample_sp");
    require_proper(k2, "sample_sp");
    if (k1.dim() != n || k2.dim() != m)
        throw std::invalid_argument("sample_sp: cone dimensions disagree with shape");
    Rng rng(seed);

    if (is_orthant(k1) && is_orthant(k2)) {
        RMatrix x(n, 1);
        for (std::size_t j = 0; j < n; ++j) x(j, 0) = rng.next_positive_rational();
        Rational xtx = 0;
        for (std::size_t j = 0; j < n; ++j) xtx += x(j, 0) * x(j, 0);
        RMatrix a(m, n);
        for (std::size_t i = 0; i < m; ++i) {
            Rational si = rng.next_positive_rational();
            std::vector<Rational> r(n);
            Rational rx = 0;
            for (std::size_t j = 0; j < n; ++j) {
                r[j] = rng.next_rational();
                rx += r[j] * x(j, 0);
            }
            Rational scale = (rx - si) / xtx;
            for (std::size_t j = 0; j < n; ++j) a(i, j) = r[j] - scale * x(j, 0);
        }
        SPVerdict v = classify_sp(a);
        if (!v.semipositive) throw std::logic_error("sample_sp produced a non-SP matrix");
        return a;
    }

    // general cones: push a random matrix toward an interior-mapping one
    RMatrix x(n, 1);
    for (std::size_t j = 0; j < k1.generators().cols(); ++j) {
        Rational cj = rng.next_positive_rational();
        for (std::size_t i = 0; i < n; ++i) x(i, 0) += cj * k1.generators()(i, j);
    }
    Rational xtx = 0;
    for (std::size_t i = 0; i < n; ++i) xtx += x(i, 0) * x(i, 0);
    RMatrix b = rng.next_matrix(m, n);
    RMatrix z = k2.interior_point();
    RMatrix u = k2.facets() * (b * x);
    RMatrix w = k2.facets() * z;
    Rational c = 1;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        if (sgn(u(i, 0)) >= 0) continue;
        Rational need = 1 - u(i, 0) / w(i, 0);
        if (need > c) c = need;
    }
    RMatrix a = b + (z * x.transpose()) * (c / xtx);
    SPVerdict v = classify_sp(a, k1, k2);
    if (!v.semipositive) throw std::logic_error("sample_sp produced a non-SP matrix");
    return a;
}

}  // namespace spt
