#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spt/cones.hpp"
#include "spt/matrix.hpp"
#include "spt/semipos.hpp"

namespace spt {

// Linear operator on M_{m,n} in column-stacked coordinates: apply(L, A) =
// unvec(mat * vec(A)). Immutable once built.
struct LinearMap {
    std::size_t m = 0, n = 0;
    RMatrix mat;  // mn x mn
};

// A |-> X A Y, i.e. mat = kron(Y^T, X).
LinearMap from_xay(const RMatrix& x, const RMatrix& y);

// A |-> A^T on M_n.
LinearMap transpose_map(std::size_t n);

RMatrix apply(const LinearMap& l, const RMatrix& a);

// First line "shape m n", then mn rows of mn entries each.
LinearMap parse_map(const std::string& text);
LinearMap load_map(const std::string& path);
std::string format_map(const LinearMap& l);

// Kronecker factorization result. mat = kron(y^T, x) exactly; the first
// nonzero entry of vec(x) is normalized to 1, and `sign` records the sign of
// the first nonzero entry of y, distinguishing the two equivalent branches
// (x, y) and (-x, -y).
struct XYFactor {
    RMatrix x;  // m x m
    RMatrix y;  // n x n
    int sign = 1;
};

// Rank-one rearrangement of mat: R is m^2 x n^2 with
//   R[s*m + r, t*n + j] = mat[j*m + r, t*m + s],
// the coefficient of A(s,t) in apply(L, A)(r,j). L has the X A Y form
// exactly when R = vec(X) * (row-major vec of Y)^T, i.e. rank(R) <= 1.
RMatrix kronecker_rearrange(const LinearMap& l);

std::optional<XYFactor> kronecker_factor(const LinearMap& l);

// Constructive recovery from the images of E_{s,0} and E_{0,t}: succeeds only
// if the candidate pair reconstructs mat exactly. Output canonicalized like
// kronecker_factor.
std::optional<XYFactor> recover_xy(const LinearMap& l);

// Necessary condition on orthants: every A_i = x e_i^T with x interior must
// map to a matrix of rank one. x ranges over the all-ones vector plus
// `witness_samples` random positive vectors drawn from `seed`.
struct RankOneResult {
    bool pass = true;
    RMatrix failing;  // a violating A_i when !pass
};
RankOneResult rank_one_image_test(const LinearMap& l, const PolyCone& k1, const PolyCone& k2,
                                  std::size_t witness_samples, std::uint64_t seed = 0);

// Into/onto predicates for the factored forms, sign disjunction included.
// On orthant pairs each one self-tests against its entrywise characterization
// (row positive / inverse nonnegative / monomial) and throws on disagreement.
bool check_into_xay(const RMatrix& x, const RMatrix& y, const PolyCone& k1, const PolyCone& k2);
bool check_onto_xay(const RMatrix& x, const RMatrix& y, const PolyCone& k1, const PolyCone& k2);
bool check_msp_into_xay(const RMatrix& x, const RMatrix& y, const PolyCone& k1,
                        const PolyCone& k2);
bool check_msp_onto_xay(const RMatrix& x, const RMatrix& y, const PolyCone& k1,
                        const PolyCone& k2);

// A |-> Q1 L(S1 A S2^{-1}) Q2^{-1}: mat' = kron(Q2^{-T}, Q1) mat kron(S2^{-T}, S1).
// Transform hypotheses (interior-to-interior, nonnegativity, invertibility)
// validated against the cone pair; invalid_argument on violation.
LinearMap conjugate_preserver(const LinearMap& l, const RMatrix& q1, const RMatrix& q2,
                              const RMatrix& s1, const RMatrix& s2, const PolyCone& k1,
                              const PolyCone& k2);

struct Counterexample {
    std::size_t trial;
    RMatrix a;            // semipositive input
    RMatrix witness;      // interior witness for a
    RMatrix certificate;  // Farkas certificate for apply(L, a)
};

// Deterministic randomized falsification: trial i draws its own sub-seed, so
// the outcome is independent of scheduling; with several failures the one
// with the smallest trial index is reported. Sound but incomplete.
std::optional<Counterexample> falsify_preserver(const LinearMap& l, const PolyCone& k1,
                                                const PolyCone& k2, std::size_t trials,
                                                std::uint64_t seed);

struct PreserverReport {
    enum class Verdict { Counterexample, StandardForm, Inconclusive };
    bool invertible = false;
    std::optional<Counterexample> counterexample;
    RankOneResult rank_one;
    std::optional<XYFactor> factorization;
    // m = n only: factorization of A |-> L(A^T), the transpose-composed form.
    std::optional<XYFactor> transpose_factorization;
    bool into_sp = false, onto_sp = false;
    bool into_msp = false, onto_msp = false;
    Verdict verdict = Verdict::Inconclusive;
};

// Evidence pipeline: invertibility, falsification within `budget` trials,
// rank-one images, factorization, and the into/onto checks on the factors.
// StandardForm needs every stage affirmative; a found counterexample wins;
// anything else is Inconclusive. Never asserts more than it verified.
PreserverReport analyze_preserver(const LinearMap& l, const PolyCone& k1, const PolyCone& k2,
                                  std::size_t budget, std::uint64_t seed = 0);

}  // namespace spt
