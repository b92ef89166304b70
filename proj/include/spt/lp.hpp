#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "spt/matrix.hpp"

namespace spt::lp {

enum class Sense { LE, EQ, GE };
enum class Status { Optimal, Infeasible, Unbounded };

// General-form program: optimize c^T x subject to row constraints and
// per-variable bounds (x_j >= 0 unless marked free).
struct Problem {
    RMatrix a;                   // q x p constraint matrix
    std::vector<Rational> b;     // q right-hand sides
    std::vector<Sense> sense;    // q row senses
    std::vector<Rational> c;     // p objective coefficients
    std::vector<bool> free_var;  // p flags; empty means all nonnegative
    bool maximize = false;
};

// Duals follow the sign convention of the stated problem direction:
//   minimize: y_i >= 0 on GE rows, y_i <= 0 on LE rows, free on EQ,
//             and c_j - y^T a_j >= 0 for x_j >= 0 (= 0 for free x_j);
//   maximize: all inequalities above reversed.
// farkas certifies infeasibility: same row-sign pattern as a minimize dual,
// with sum_i f_i a_ij <= 0 for nonnegative vars (= 0 for free) and f^T b > 0.
struct Solution {
    Status status;
    std::vector<Rational> x;
    Rational objective;
    std::vector<Rational> dual;
    std::vector<Rational> farkas;
};

// Exact two-phase tableau simplex, Bland's rule throughout. Total: every
// input yields Optimal, Infeasible, or Unbounded with a verified certificate.
Solution solve(const Problem& p);

struct StrictWitness {
    RMatrix lambda;  // p x 1, every entry > 0
};

struct FarkasWitness {
    RMatrix y;  // q x 1, y >= 0, y != 0
};

using StrictResult = std::variant<StrictWitness, FarkasWitness>;

// Theorem-of-the-alternative kernel in orthant coordinates: either lambda > 0
// with M lambda > 0 entrywise, or y >= 0, y != 0 with M^T y <= 0 entrywise.
// Exactly one branch; both certificates re-verified exactly before return.
// A degenerate optimum (best margin 0) counts as infeasible: the definitions
// ask for interior points.
StrictResult strict_feasibility(const RMatrix& m);

bool is_strict(const StrictResult& r);

// Z >= 0 with E Z = F exactly, or nullopt when no such Z exists.
std::optional<RMatrix> nonneg_solution(const RMatrix& e, const RMatrix& f);

}  // namespace spt::lp
