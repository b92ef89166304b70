#include "spt/patterns.hpp"

#include <algorithm>
#include <stdexcept>

namespace spt {

namespace {

void require_square(const RMatrix& a, const char* what) {
    if (a.rows() != a.cols()) throw std::invalid_argument(std::string(what) + ": non-square");
}

// Kuhn's augmenting-path matching on the support bipartite graph, with row
// `skip_row` and column `skip_col` removed (pass n to keep everything).
std::size_t support_matching(const RMatrix& a, std::size_t skip_row, std::size_t skip_col) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> match_col(a.cols(), SIZE_MAX);
    std::vector<bool> visited;

    auto augment = [&](auto&& self, std::size_t r) -> bool {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (c == skip_col || visited[c] || sgn(a(r, c)) == 0) continue;
            visited[c] = true;
            if (match_col[c] == SIZE_MAX || self(self, match_col[c])) {
                match_col[c] = r;
                return true;
            }
        }
        return false;
    };

    std::size_t size = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (r == skip_row) continue;
        visited.assign(a.cols(), false);
        if (augment(augment, r)) ++size;
    }
    return size;
}

}  // namespace

bool is_row_positive(const RMatrix& a) {
    if (!a.is_nonnegative()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool nonzero = false;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) > 0) {
                nonzero = true;
                break;
            }
        if (!nonzero) return false;
    }
    return true;
}

bool is_monomial(const RMatrix& a) {
    require_square(a, "is_monomial");
    if (!a.is_nonnegative()) return false;
    const std::size_t n = a.rows();
    std::vector<std::size_t> row_count(n, 0), col_count(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(a(i, j)) != 0) ++row_count[i], ++col_count[j];
    for (std::size_t i = 0; i < n; ++i)
        if (row_count[i] != 1 || col_count[i] != 1) return false;
    return true;
}

bool is_reducible(const RMatrix& a) {
    require_square(a, "is_reducible");
    const std::size_t n = a.rows();
    if (n == 1) return false;

    // strongly connected off-diagonal support digraph <=> irreducible
    auto reach = [&](bool transposed) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (v == u || seen[v]) continue;
                const Rational& e = transposed ? a(v, u) : a(u, v);
                if (sgn(e) != 0) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        return seen;
    };
    auto fwd = reach(false), bwd = reach(true);
    for (std::size_t v = 0; v < n; ++v)
        if (!fwd[v] || !bwd[v]) return true;
    return false;
}

bool is_fully_indecomposable(const RMatrix& a) {
    require_square(a, "is_fully_indecomposable");
    const std::size_t n = a.rows();
    if (n == 1) return sgn(a(0, 0)) != 0;
    if (support_matching(a, n, n) != n) return false;
    // every one-row-one-column minor must keep a perfect matching
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (support_matching(a, i, j) != n - 1) return false;
    return true;
}

namespace {

// Split one partially decomposable block: the lowest row subset S (by mask
// order) whose column support N(S) has |N(S)| <= |S| yields the zero block
// A[S, complement-of-N(S)].
void decompose(const RMatrix& a, std::vector<std::size_t> rows, std::vector<std::size_t> cols,
               BlockForm& out) {
    const std::size_t n = rows.size();
    RMatrix sub(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sub(i, j) = a(rows[i], cols[j]);

    if (n == 1 || is_fully_indecomposable(sub)) {
        out.row_perm.insert(out.row_perm.end(), rows.begin(), rows.end());
        out.col_perm.insert(out.col_perm.end(), cols.begin(), cols.end());
        out.block_sizes.push_back(n);
        out.block_kinds.push_back(n == 1 && sgn(sub(0, 0)) == 0 ? BlockKind::ZeroOneByOne
                                                                : BlockKind::FullyIndecomposable);
        return;
    }

    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
        std::vector<bool> col_hit(n, false);
        std::size_t s_size = 0, hit = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            ++s_size;
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(sub(i, j)) != 0 && !col_hit[j]) col_hit[j] = true, ++hit;
        }
        if (hit > s_size) continue;

        // rows S go bottom-right, untouched columns T (first n - |S|) go left
        std::vector<std::size_t> s_rows, other_rows, t_cols, other_cols;
        for (std::size_t i = 0; i < n; ++i)
            (mask >> i & 1 ? s_rows : other_rows).push_back(i);
        for (std::size_t j = 0; j < n && t_cols.size() < n - s_size; ++j)
            if (!col_hit[j]) t_cols.push_back(j);
        for (std::size_t j = 0; j < n; ++j)
            if (std::find(t_cols.begin(), t_cols.end(), j) == t_cols.end())
                other_cols.push_back(j);

        auto remap = [](const std::vector<std::size_t>& base, const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> r;
            for (auto i : idx) r.push_back(base[i]);
            return r;
        };
        decompose(a, remap(rows, other_rows), remap(cols, t_cols), out);
        decompose(a, remap(rows, s_rows), remap(cols, other_cols), out);
        return;
    }
    throw std::logic_error("partially decomposable block without a deficient row subset");
}

}  // namespace

BlockForm block_triangularize(const RMatrix& a) {
    require_square(a, "block_triangularize");
    if (a.rows() > 16) throw std::invalid_argument("block_triangularize: capacity is n <= 16");
    const std::size_t n = a.rows();
    BlockForm out;
    std::vector<std::size_t> rows(n), cols(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = cols[i] = i;
    decompose(a, rows, cols, out);
    out.permuted = RMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.permuted(i, j) = a(out.row_perm[i], out.col_perm[j]);
    return out;
}

bool check_pattern_inv_nonneg(const RMatrix& a) {
    require_square(a, "check_pattern_inv_nonneg");
    BlockForm bf = block_triangularize(a);
    const std::size_t k = bf.block_sizes.size();
    std::vector<std::size_t> start(k, 0);
    for (std::size_t b = 1; b < k; ++b) start[b] = start[b - 1] + bf.block_sizes[b - 1];

    for (std::size_t b = 0; b < k; ++b) {
        if (bf.block_kinds[b] != BlockKind::FullyIndecomposable) return false;
        std::vector<std::size_t> idx(bf.block_sizes[b]);
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = start[b] + i;
        auto inv = inverse(bf.permuted.submatrix(idx, idx));
        if (!inv || !inv->is_nonnegative()) return false;
    }

    // no off-diagonal row strip [B_{i,i+1} .. B_{ij}] or column strip
    // [B_{ij}; ..; B_{j-1,j}] may be nonnegative and nonzero
    auto strip = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
        std::vector<std::size_t> ri, ci;
        for (std::size_t i = r0; i < r1; ++i) ri.push_back(i);
        for (std::size_t j = c0; j < c1; ++j) ci.push_back(j);
        return bf.permuted.submatrix(ri, ci);
    };
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            RMatrix row_strip = strip(start[i], start[i] + bf.block_sizes[i], start[i + 1],
                                      start[j] + bf.block_sizes[j]);
            if (row_strip.is_nonnegative() && !row_strip.is_zero()) return false;
            RMatrix col_strip = strip(start[i], start[j - 1] + bf.block_sizes[j - 1], start[j],
                                      start[j] + bf.block_sizes[j]);
            if (col_strip.is_nonnegative() && !col_strip.is_zero()) return false;
        }
    return true;
}

}  // namespace spt
