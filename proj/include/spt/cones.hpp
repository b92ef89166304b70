#pragma once

#include <memory>
#include <string>

#include "spt/lp.hpp"
#include "spt/matrix.hpp"

namespace spt {

// Polyhedral convex cone K = { G lambda : lambda >= 0 } in R^n. Generators
// are reduced to extreme rays and canonically normalized at construction
// (first nonzero coordinate scaled to +-1, columns sorted lexicographically),
// so cone equality and ray matching are plain comparisons. The facet
// representation (inner normals F with K = { x : F x >= 0 }) is computed on
// first use and cached; copies share the cache.
class PolyCone {
public:
    // Columns of g generate the cone; zero columns are rejected.
    static PolyCone from_generators(const RMatrix& g);
    static PolyCone orthant(std::size_t n);

    std::size_t dim() const { return gens_.rows(); }
    const RMatrix& generators() const { return gens_; }

    // Minimal inner facet normals, one per row. For cones that are not
    // full-dimensional the rows include +-pairs spanning the orthogonal
    // complement, so F x >= 0 still characterizes membership exactly.
    const RMatrix& facets() const;

    bool is_pointed() const;
    bool is_full_dimensional() const;
    bool is_proper() const;
    // As is_proper, with a short diagnostic when improper.
    bool is_proper(std::string& reason) const;
    bool is_simplicial() const;

    bool contains(const RMatrix& x) const;
    bool contains_interior(const RMatrix& x) const;

    PolyCone dual() const;

    // First line "dim n", then one generator per line (shared entry format).
    static PolyCone load(const std::string& path);
    static PolyCone parse(const std::string& text);
    std::string format() const;

    bool same_cone(const PolyCone& o) const;

    // Interior point: the sum of all generators (proper cones only).
    RMatrix interior_point() const;

private:
    PolyCone() = default;
    RMatrix gens_;  // n x p, canonical extreme rays
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

// Facet enumeration capacity (ambient dimension / generator count); beyond
// this the constructor throws CapacityError.
inline constexpr std::size_t kMaxConeDim = 8;
inline constexpr std::size_t kMaxConeGenerators = 24;

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A(K1) subseteq K2, decided by the finite facet x generator sign table.
bool is_nonneg_map(const RMatrix& a, const PolyCone& k1, const PolyCone& k2);

// A(K1 interior) subseteq K2 interior, for a (K1,K2)-nonnegative A.
bool maps_interior_to_interior(const RMatrix& a, const PolyCone& k1, const PolyCone& k2);

bool is_k_inverse_nonnegative(const RMatrix& y, const PolyCone& k);

// X invertible and X permutes the extreme rays of K up to positive scaling.
bool is_automorphism(const RMatrix& x, const PolyCone& k);

// Invertible T whose columns lie in K with first column v (v in K, v != 0);
// greedy completion scanning generators in canonical order.
RMatrix extend_to_simplicial(const PolyCone& k, const RMatrix& v);

}  // namespace spt
