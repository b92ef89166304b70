#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spt/cones.hpp"
#include "spt/lp.hpp"
#include "spt/matrix.hpp"

namespace spt {

// Outcome of the alternative for A over a proper cone pair: either an
// interior witness (x in K1 interior, Ax in K2 interior) or an excluding
// certificate (0 != y in K2*, -A^T y in K1*). Both are re-verified exactly
// before being returned.
struct SPVerdict {
    bool semipositive;
    RMatrix witness;      // x (n x 1) when semipositive
    RMatrix certificate;  // y (m x 1) otherwise
};

struct SPClass {
    enum class Kind { MinimallySemipositive, RedundantlySemipositive, NotSemipositive };
    Kind kind;
    RMatrix left_inverse;  // (K2,K1)-nonnegative B with B A = I, when minimal
    RMatrix certificate;   // when not semipositive
};

SPVerdict classify_sp(const RMatrix& a, const PolyCone& k1, const PolyCone& k2);

// Orthant convenience overload.
SPVerdict classify_sp(const RMatrix& a);

SPClass classify_msp(const RMatrix& a, const PolyCone& k1, const PolyCone& k2);
SPClass classify_msp(const RMatrix& a);

// Column-deletion oracle on orthants: semipositive with no semipositive
// proper column-deleted submatrix. Validates classify_msp; n <= 6.
bool cross_check_msp_by_deletion(const RMatrix& a);

// Left semipositivity: x in K2* with A^T x interior to K1*. `strict` asks
// for x interior to K2* as well (the mirrored variant).
SPVerdict is_left_sp(const RMatrix& a, const PolyCone& k1, const PolyCone& k2,
                     bool strict = false);

// Closed-form 2x2 orthant test: positive column, or one of the two
// sign-checkerboard forms with positive diagonal product margin. No LP.
bool sp_2x2_closed_form(const RMatrix& a);

// m x n orthant semipositivity via the n-row submatrix criterion; every
// C(m,n) submatrix decided by LP. Capacity C(m,n) <= 5000.
bool sp_via_row_submatrices(const RMatrix& a);

// Conjugation transport A -> Q1 A Q2^{-1} (cones -> orthants) and
// B -> S1 B S2^{-1} (orthants -> cones); hypotheses validated.
RMatrix conjugate_sp(const RMatrix& b, const RMatrix& s1, const RMatrix& s2,
                     const PolyCone& k1, const PolyCone& k2);
RMatrix conjugate_back(const RMatrix& a, const RMatrix& q1, const RMatrix& q2,
                       const PolyCone& k1, const PolyCone& k2);

// Bases of M_{m,n} drawn from S(K1,K2) / MS(K1,K2); mn elements, full
// stacked-vec rank, every element re-verified before return.
std::vector<RMatrix> sp_basis(std::size_t m, std::size_t n, const PolyCone& k1,
                              const PolyCone& k2);
std::vector<RMatrix> msp_basis(std::size_t m, std::size_t n, const PolyCone& k1,
                               const PolyCone& k2);

// A = B + C with both parts semipositive (needs n >= 2).
std::pair<RMatrix, RMatrix> decompose_sum_sp(const RMatrix& a, const PolyCone& k1,
                                             const PolyCone& k2);

// A = C1 - C2 with both parts minimally semipositive (K2 simplicial if m > n).
std::pair<RMatrix, RMatrix> decompose_diff_msp(const RMatrix& a, const PolyCone& k1,
                                               const PolyCone& k2);

// Deterministic semipositive sample; verified before return.
RMatrix sample_sp(std::size_t m, std::size_t n, const PolyCone& k1, const PolyCone& k2,
                  std::uint64_t seed);

}  // namespace spt
