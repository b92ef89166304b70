#include "spt/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace spt::lp {

namespace {

// Simplex tableau for min c^T x, A x = b, x >= 0, b >= 0. The basis columns
// are kept as identity columns of `t` across phases, so a second objective
// can resume from the first phase's basis.
struct Tableau {
    RMatrix t;
    std::vector<Rational> rhs;
    std::vector<std::size_t> basis;

    void pivot(std::size_t leave, std::size_t enter) {
        const std::size_t m = t.rows(), n = t.cols();
        Rational piv = 1 / t(leave, enter);
        for (std::size_t j = 0; j < n; ++j) t(leave, j) *= piv;
        rhs[leave] *= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || sgn(t(i, enter)) == 0) continue;
            Rational f = t(i, enter);
            for (std::size_t j = 0; j < n; ++j) t(i, j) -= f * t(leave, j);
            rhs[i] -= f * rhs[leave];
        }
        basis[leave] = enter;
    }

    // Bland's rule for both entering and leaving variables, so no cycling.
    // Columns >= n_enterable may never enter (phase-2 artificials). Returns
    // false when the objective is unbounded below.
    bool iterate(const std::vector<Rational>& c, std::size_t n_enterable) {
        const std::size_t m = t.rows();
        for (;;) {
            std::size_t enter = n_enterable;
            for (std::size_t j = 0; j < n_enterable && enter == n_enterable; ++j) {
                Rational d = c[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (sgn(t(i, j)) != 0) d -= c[basis[i]] * t(i, j);
                if (sgn(d) < 0) enter = j;
            }
            if (enter == n_enterable) return true;

            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (sgn(t(i, enter)) <= 0) continue;
                Rational ratio = rhs[i] / t(i, enter);
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave]))
                    leave = i, best = ratio;
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    }

    std::vector<Rational> solution() const {
        std::vector<Rational> x(t.cols(), Rational(0));
        for (std::size_t i = 0; i < t.rows(); ++i) x[basis[i]] = rhs[i];
        return x;
    }
};

// y with y^T B = c_B^T for the basis, in the original column coordinates.
std::vector<Rational> basis_duals(const RMatrix& a, const std::vector<Rational>& c,
                                  const std::vector<std::size_t>& basis) {
    const std::size_t m = a.rows();
    RMatrix bt(m, m);
    RMatrix cb(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < m; ++r) bt(i, r) = a(r, basis[i]);
        cb(i, 0) = c[basis[i]];
    }
    auto inv = inverse(bt);
    assert(inv.has_value());  // basis columns are independent by construction
    RMatrix y = *inv * cb;
    std::vector<Rational> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = y(i, 0);
    return out;
}

}  // namespace

Solution solve(const Problem& p) {
    const std::size_t q = p.a.rows(), nv = p.a.cols();
    if (p.b.size() != q || p.sense.size() != q || p.c.size() != nv)
        throw std::invalid_argument("lp: inconsistent problem dimensions");
    std::vector<bool> free_var = p.free_var;
    if (free_var.empty()) free_var.assign(nv, false);
    if (free_var.size() != nv) throw std::invalid_argument("lp: free_var size");

    // Normalize rows to b >= 0 (flipping sense), split free variables,
    // append slack/surplus columns, then artificials for rows lacking an
    // identity column.
    std::vector<int> flip(q, 1);
    std::vector<Sense> sense = p.sense;
    std::vector<Rational> b = p.b;
    for (std::size_t i = 0; i < q; ++i) {
        if (sgn(b[i]) < 0) {
            flip[i] = -1;
            b[i] = -b[i];
            if (sense[i] == Sense::LE)
                sense[i] = Sense::GE;
            else if (sense[i] == Sense::GE)
                sense[i] = Sense::LE;
        }
    }

    // column layout: [var parts][slack/surplus][artificials]
    std::vector<std::size_t> var_col(nv);  // first column of variable j
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        var_col[j] = ncols;
        ncols += free_var[j] ? 2 : 1;
    }
    std::vector<std::size_t> slack_col(q, SIZE_MAX);
    for (std::size_t i = 0; i < q; ++i)
        if (sense[i] != Sense::EQ) slack_col[i] = ncols++;
    const std::size_t art_base = ncols;
    std::vector<std::size_t> art_col(q, SIZE_MAX);
    for (std::size_t i = 0; i < q; ++i)
        if (sense[i] != Sense::LE) art_col[i] = ncols++;

    RMatrix a(q, ncols);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            Rational v = p.a(i, j);
            if (flip[i] < 0) v = -v;
            if (sgn(v) == 0) continue;
            a(i, var_col[j]) = v;
            if (free_var[j]) a(i, var_col[j] + 1) = -v;
        }
        if (slack_col[i] != SIZE_MAX) a(i, slack_col[i]) = sense[i] == Sense::LE ? 1 : -1;
        if (art_col[i] != SIZE_MAX) a(i, art_col[i]) = 1;
    }

    Tableau tab;
    tab.t = a;
    tab.rhs = b;
    tab.basis.resize(q);
    for (std::size_t i = 0; i < q; ++i)
        tab.basis[i] = art_col[i] != SIZE_MAX ? art_col[i] : slack_col[i];

    Solution out;

    // phase 1: minimize the artificials
    if (art_base < ncols) {
        std::vector<Rational> c1(ncols, Rational(0));
        for (std::size_t j = art_base; j < ncols; ++j) c1[j] = 1;
        bool bounded = tab.iterate(c1, ncols);
        assert(bounded);
        (void)bounded;
        Rational obj1 = 0;
        for (std::size_t i = 0; i < q; ++i)
            if (tab.basis[i] >= art_base) obj1 += tab.rhs[i];
        if (sgn(obj1) > 0) {
            auto g = basis_duals(a, c1, tab.basis);
            out.status = Status::Infeasible;
            out.farkas.resize(q);
            for (std::size_t i = 0; i < q; ++i)
                out.farkas[i] = flip[i] < 0 ? -g[i] : g[i];
            return out;
        }
        // drive basic artificials (all at value 0) out of the basis with
        // degenerate pivots; a row with no eligible column is redundant and
        // can never change its (zero) artificial again
        for (std::size_t i = 0; i < q; ++i) {
            if (tab.basis[i] < art_base) continue;
            for (std::size_t j = 0; j < art_base; ++j)
                if (sgn(tab.t(i, j)) != 0) {
                    tab.pivot(i, j);
                    break;
                }
        }
    }

    // phase 2: original objective; artificials may never re-enter
    std::vector<Rational> c2(ncols, Rational(0));
    for (std::size_t j = 0; j < nv; ++j) {
        Rational cj = p.maximize ? -p.c[j] : p.c[j];
        c2[var_col[j]] = cj;
        if (free_var[j]) c2[var_col[j] + 1] = -cj;
    }
    if (!tab.iterate(c2, art_base)) {
        out.status = Status::Unbounded;
        return out;
    }

    std::vector<Rational> xs = tab.solution();
    out.status = Status::Optimal;
    out.x.resize(nv);
    out.objective = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        out.x[j] = xs[var_col[j]];
        if (free_var[j]) out.x[j] -= xs[var_col[j] + 1];
        out.objective += p.c[j] * out.x[j];
    }
    auto y = basis_duals(a, c2, tab.basis);
    out.dual.resize(q);
    for (std::size_t i = 0; i < q; ++i) {
        Rational yi = flip[i] < 0 ? -y[i] : y[i];
        out.dual[i] = p.maximize ? -yi : yi;
    }
    return out;
}

StrictResult strict_feasibility(const RMatrix& m) {
    const std::size_t q = m.rows(), p = m.cols();

    // max t  s.t.  M lambda - t 1 >= 0,  1^T lambda <= 1,  t <= 1,
    //              lambda >= 0, t free.
    Problem prob;
    prob.a = RMatrix(q + 2, p + 1);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < p; ++j) prob.a(i, j) = m(i, j);
        prob.a(i, p) = -1;
    }
    for (std::size_t j = 0; j < p; ++j) prob.a(q, j) = 1;
    prob.a(q + 1, p) = 1;
    prob.b.assign(q + 2, Rational(0));
    prob.b[q] = 1;
    prob.b[q + 1] = 1;
    prob.sense.assign(q + 2, Sense::GE);
    prob.sense[q] = Sense::LE;
    prob.sense[q + 1] = Sense::LE;
    prob.c.assign(p + 1, Rational(0));
    prob.c[p] = 1;
    prob.free_var.assign(p + 1, false);
    prob.free_var[p] = true;
    prob.maximize = true;

    Solution sol = solve(prob);
    assert(sol.status == Status::Optimal);  // lambda = 0, t = 0 is feasible

    if (sgn(sol.objective) > 0) {
        // The LP only guarantees lambda >= 0; push into the interior by a
        // margin small enough to keep M lambda strictly positive.
        Rational max_row_sum = 0;
        for (std::size_t i = 0; i < q; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < p; ++j) s += abs(m(i, j));
            if (s > max_row_sum) max_row_sum = s;
        }
        Rational delta = sol.objective / (2 * (1 + max_row_sum));
        RMatrix lambda(p, 1);
        for (std::size_t j = 0; j < p; ++j) lambda(j, 0) = sol.x[j] + delta;
        RMatrix img = m * lambda;
        for (std::size_t j = 0; j < p; ++j)
            if (sgn(lambda(j, 0)) <= 0) throw std::logic_error("witness not strict");
        for (std::size_t i = 0; i < q; ++i)
            if (sgn(img(i, 0)) <= 0) throw std::logic_error("witness image not strict");
        return StrictWitness{std::move(lambda)};
    }

    // Optimum t = 0: the duals of the M-rows are the Farkas vector.
    // With maximize convention those duals are <= 0 on GE rows; negate.
    RMatrix y(q, 1);
    bool nonzero = false;
    for (std::size_t i = 0; i < q; ++i) {
        y(i, 0) = -sol.dual[i];
        if (sgn(y(i, 0)) < 0) throw std::logic_error("farkas sign");
        if (sgn(y(i, 0)) > 0) nonzero = true;
    }
    if (!nonzero) throw std::logic_error("farkas zero");
    RMatrix mty = m.transpose() * y;
    for (std::size_t j = 0; j < p; ++j)
        if (sgn(mty(j, 0)) > 0) throw std::logic_error("farkas not certifying");
    return FarkasWitness{std::move(y)};
}

bool is_strict(const StrictResult& r) { return std::holds_alternative<StrictWitness>(r); }

std::optional<RMatrix> nonneg_solution(const RMatrix& e, const RMatrix& f) {
    if (e.rows() != f.rows()) throw std::invalid_argument("nonneg_solution shape mismatch");
    RMatrix z(e.cols(), f.cols());
    for (std::size_t col = 0; col < f.cols(); ++col) {
        Problem prob;
        prob.a = e;
        prob.b.resize(e.rows());
        for (std::size_t i = 0; i < e.rows(); ++i) prob.b[i] = f(i, col);
        prob.sense.assign(e.rows(), Sense::EQ);
        prob.c.assign(e.cols(), Rational(0));
        Solution sol = solve(prob);
        if (sol.status != Status::Optimal) return std::nullopt;
        for (std::size_t j = 0; j < e.cols(); ++j) z(j, col) = sol.x[j];
    }
    return z;
}

}  // namespace spt::lp
