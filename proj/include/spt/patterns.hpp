#pragma once

#include <cstddef>
#include <vector>

#include "spt/matrix.hpp"

namespace spt {

// Nonnegative with a nonzero entry in every row.
bool is_row_positive(const RMatrix& a);

// Nonnegative square with exactly one nonzero entry per row and per column
// (permutation times positive diagonal).
bool is_monomial(const RMatrix& a);

// Permutation similar to a 2x2 block upper triangular form, decided by
// strong connectivity of the off-diagonal support digraph.
bool is_reducible(const RMatrix& a);

// No k x (n-k) zero submatrix under independent row/column permutations;
// equivalently PA irreducible for every permutation P. Decided by bipartite
// matching (each one-row-one-column minor must keep a perfect matching).
bool is_fully_indecomposable(const RMatrix& a);

enum class BlockKind { FullyIndecomposable, ZeroOneByOne };

// Permutation equivalence A[row_perm, col_perm] = block upper triangular with
// diagonal blocks that are fully indecomposable or 1x1 zero.
struct BlockForm {
    std::vector<std::size_t> row_perm;  // permuted(i, j) = A(row_perm[i], col_perm[j])
    std::vector<std::size_t> col_perm;
    std::vector<std::size_t> block_sizes;  // along the diagonal, in order
    std::vector<BlockKind> block_kinds;
    RMatrix permuted;  // the block upper triangular matrix itself
};

BlockForm block_triangularize(const RMatrix& a);

// Structural inverse-nonnegativity conditions on the block form: every fully
// indecomposable diagonal block inverse-nonnegative (numeric check), and no
// off-diagonal row/column strip nonnegative-and-nonzero.
bool check_pattern_inv_nonneg(const RMatrix& a);

}  // namespace spt
