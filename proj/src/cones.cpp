#include "spt/cones.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <mutex>
#include <sstream>

#include "spt/matrix_io.hpp"

namespace spt {

namespace {

using Vec = std::vector<Rational>;

Vec column(const RMatrix& m, std::size_t j) {
    Vec v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

// Positive scaling so the first nonzero coordinate becomes +-1.
void canonicalize_ray(Vec& v) {
    for (const auto& x : v) {
        if (sgn(x) != 0) {
            Rational s = 1 / abs(x);
            for (auto& y : v) y *= s;
            return;
        }
    }
}

bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

RMatrix from_columns(std::size_t n, const std::vector<Vec>& cols) {
    RMatrix m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
}

struct DDResult {
    std::vector<Vec> rays;
    std::vector<Vec> lineality;
};

// Extreme rays of {y : A y >= 0} for A with full column rank d (pointed case).
// Incremental double description with the algebraic adjacency test.
std::vector<Vec> pointed_dd(const RMatrix& a) {
    const std::size_t q = a.rows(), d = a.cols();

    // initial simplicial cone from the first d independent rows
    std::vector<std::size_t> base;
    {
        RMatrix acc(0, d);
        for (std::size_t i = 0; i < q && base.size() < d; ++i) {
            RMatrix cand = RMatrix::vcat(acc, a.row(i));
            if (rank(cand) > base.size()) {
                acc = cand;
                base.push_back(i);
            }
        }
        assert(base.size() == d);
    }
    std::vector<bool> processed(q, false);
    for (auto i : base) processed[i] = true;

    RMatrix binv = *inverse(a.submatrix(base, [&] {
        std::vector<std::size_t> all(d);
        for (std::size_t j = 0; j < d; ++j) all[j] = j;
        return all;
    }()));
    std::vector<Vec> rays;
    for (std::size_t j = 0; j < d; ++j) rays.push_back(column(binv, j));

    auto tight_set = [&](const Vec& r) {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < q; ++i) {
            if (!processed[i]) continue;
            Rational dot = 0;
            for (std::size_t j = 0; j < d; ++j) dot += a(i, j) * r[j];
            if (sgn(dot) == 0) t.push_back(i);
        }
        return t;
    };

    for (std::size_t i = 0; i < q; ++i) {
        if (processed[i]) continue;
        std::vector<Rational> s(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) {
            s[k] = 0;
            for (std::size_t j = 0; j < d; ++j) s[k] += a(i, j) * rays[k][j];
        }
        std::vector<std::size_t> pos, neg;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (sgn(s[k]) > 0) pos.push_back(k);
            if (sgn(s[k]) < 0) neg.push_back(k);
        }
        processed[i] = true;
        if (neg.empty()) continue;

        std::vector<std::vector<std::size_t>> tights(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) tights[k] = tight_set(rays[k]);

        std::vector<Vec> next;
        for (std::size_t k = 0; k < rays.size(); ++k)
            if (sgn(s[k]) >= 0) next.push_back(rays[k]);
        for (auto kp : pos)
            for (auto kn : neg) {
                std::vector<std::size_t> common;
                std::set_intersection(tights[kp].begin(), tights[kp].end(),
                                      tights[kn].begin(), tights[kn].end(),
                                      std::back_inserter(common));
                // adjacent iff the shared tight rows have rank d - 2
                if (common.size() < d - 2) continue;
                std::vector<std::size_t> all_cols(d);
                for (std::size_t j = 0; j < d; ++j) all_cols[j] = j;
                if (rank(a.submatrix(common, all_cols)) != d - 2) continue;
                Vec nr(d);
                for (std::size_t j = 0; j < d; ++j)
                    nr[j] = s[kp] * rays[kn][j] - s[kn] * rays[kp][j];
                canonicalize_ray(nr);
                next.push_back(std::move(nr));
            }
        // dedupe
        std::sort(next.begin(), next.end(), lex_less);
        next.erase(std::unique(next.begin(), next.end()), next.end());
        rays = std::move(next);
    }

    for (auto& r : rays) canonicalize_ray(r);
    std::sort(rays.begin(), rays.end(), lex_less);
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

// V-description of {y : H y >= 0}: extreme rays plus a lineality basis.
DDResult dual_description(const RMatrix& h) {
    const std::size_t n = h.cols();
    DDResult out;
    RMatrix null = nullspace(h);
    for (std::size_t j = 0; j < null.cols(); ++j) out.lineality.push_back(column(null, j));

    const std::size_t d = n - null.cols();
    if (d == 0) return out;  // whole space

    // complement of the lineality: a basis of the row space of H
    std::vector<std::size_t> rows_basis;
    {
        RMatrix acc(0, n);
        for (std::size_t i = 0; i < h.rows() && rows_basis.size() < d; ++i) {
            RMatrix cand = RMatrix::vcat(acc, h.row(i));
            if (rank(cand) > rows_basis.size()) {
                acc = cand;
                rows_basis.push_back(i);
            }
        }
    }
    RMatrix c(n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < n; ++i) c(i, j) = h(rows_basis[j], i);

    RMatrix hc = h * c;  // q x d, full column rank: pointed quotient system
    auto urays = pointed_dd(hc);
    for (const auto& u : urays) {
        Vec r(n, Rational(0));
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < n; ++i) r[i] += c(i, j) * u[j];
        canonicalize_ray(r);
        out.rays.push_back(std::move(r));
    }
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    return out;
}

}  // namespace

struct PolyCone::Cache {
    std::mutex mu;
    std::optional<RMatrix> facets;
    std::optional<bool> pointed;
};

PolyCone PolyCone::from_generators(const RMatrix& g) {
    if (g.cols() == 0 || g.rows() == 0) throw std::invalid_argument("cone needs generators");
    if (g.rows() > kMaxConeDim)
        throw CapacityError("cone dimension beyond facet-enumeration capacity");
    if (g.cols() > kMaxConeGenerators)
        throw CapacityError("too many generators for facet enumeration");

    std::vector<Vec> cols;
    for (std::size_t j = 0; j < g.cols(); ++j) {
        Vec v = column(g, j);
        bool zero = std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
        if (zero) throw std::invalid_argument("zero generator column");
        canonicalize_ray(v);
        cols.push_back(std::move(v));
    }
    std::sort(cols.begin(), cols.end(), lex_less);
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

    // drop generators that are nonnegative combinations of the others
    for (std::size_t j = 0; j < cols.size() && cols.size() > 1;) {
        std::vector<Vec> others;
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (k != j) others.push_back(cols[k]);
        RMatrix e = from_columns(g.rows(), others);
        RMatrix f(g.rows(), 1);
        for (std::size_t i = 0; i < g.rows(); ++i) f(i, 0) = cols[j][i];
        if (lp::nonneg_solution(e, f))
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(j));
        else
            ++j;
    }

    PolyCone k;
    k.gens_ = from_columns(g.rows(), cols);
    k.cache_ = std::make_shared<Cache>();
    return k;
}

PolyCone PolyCone::orthant(std::size_t n) { return from_generators(RMatrix::identity(n)); }

const RMatrix& PolyCone::facets() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->facets) {
        DDResult dd = dual_description(gens_.transpose());
        std::vector<Vec> rows = dd.rays;
        for (const auto& l : dd.lineality) {
            rows.push_back(l);
            Vec neg(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
            canonicalize_ray(neg);
            rows.push_back(std::move(neg));
        }
        std::sort(rows.begin(), rows.end(), lex_less);
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        RMatrix f(rows.size(), dim());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) f(i, j) = rows[i][j];
        cache_->facets = std::move(f);
    }
    return *cache_->facets;
}

bool PolyCone::is_pointed() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->pointed) {
        // a line exists iff some nonzero nu >= 0 has G nu = 0
        RMatrix e = RMatrix::vcat(gens_, RMatrix(1, gens_.cols()));
        for (std::size_t j = 0; j < gens_.cols(); ++j) e(dim(), j) = 1;
        RMatrix f(dim() + 1, 1);
        f(dim(), 0) = 1;
        cache_->pointed = !lp::nonneg_solution(e, f).has_value();
    }
    return *cache_->pointed;
}

bool PolyCone::is_full_dimensional() const { return rank(gens_) == dim(); }

bool PolyCone::is_proper() const { return is_pointed() && is_full_dimensional(); }

bool PolyCone::is_proper(std::string& reason) const {
    if (!is_pointed()) {
        reason = "not pointed (contains a line)";
        return false;
    }
    if (!is_full_dimensional()) {
        reason = "not full-dimensional";
        return false;
    }
    reason.clear();
    return true;
}

bool PolyCone::is_simplicial() const {
    return is_proper() && gens_.cols() == dim();
}

bool PolyCone::contains(const RMatrix& x) const {
    if (x.rows() != dim() || x.cols() != 1)
        throw std::invalid_argument("cone membership: dimension mismatch");
    RMatrix fx = facets() * x;
    for (std::size_t i = 0; i < fx.rows(); ++i)
        if (sgn(fx(i, 0)) < 0) return false;
    return true;
}

bool PolyCone::contains_interior(const RMatrix& x) const {
    if (x.rows() != dim() || x.cols() != 1)
        throw std::invalid_argument("cone membership: dimension mismatch");
    if (!is_proper()) throw std::invalid_argument("interior test needs a proper cone");
    RMatrix fx = facets() * x;
    for (std::size_t i = 0; i < fx.rows(); ++i)
        if (sgn(fx(i, 0)) <= 0) return false;
    return true;
}

PolyCone PolyCone::dual() const {
    return from_generators(facets().transpose());
}

PolyCone PolyCone::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

PolyCone PolyCone::parse(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    std::size_t n = 0;
    if (!(in >> word) || word != "dim" || !(in >> n) || n == 0)
        throw std::invalid_argument("cone file must start with 'dim n'");
    std::string rest;
    std::getline(in, rest);
    std::stringstream body;
    body << in.rdbuf();
    RMatrix rows = parse_matrix(body.str());
    if (rows.cols() != n) throw std::invalid_argument("generator length != dim");
    return from_generators(rows.transpose());
}

std::string PolyCone::format() const {
    std::ostringstream out;
    out << "dim " << dim() << '\n' << format_matrix(gens_.transpose());
    return out.str();
}

bool PolyCone::same_cone(const PolyCone& o) const { return gens_ == o.gens_; }

RMatrix PolyCone::interior_point() const {
    RMatrix x(dim(), 1);
    for (std::size_t j = 0; j < gens_.cols(); ++j)
        for (std::size_t i = 0; i < dim(); ++i) x(i, 0) += gens_(i, j);
    return x;
}

bool is_nonneg_map(const RMatrix& a, const PolyCone& k1, const PolyCone& k2) {
    if (a.cols() != k1.dim() || a.rows() != k2.dim())
        throw std::invalid_argument("is_nonneg_map: shape mismatch");
    return (k2.facets() * a * k1.generators()).is_nonnegative();
}

bool maps_interior_to_interior(const RMatrix& a, const PolyCone& k1, const PolyCone& k2) {
    if (!k1.is_proper() || !k2.is_proper())
        throw std::invalid_argument("maps_interior_to_interior needs proper cones");
    if (!is_nonneg_map(a, k1, k2)) return false;
    // nonnegative product table: interior goes to interior iff no facet of K2
    // annihilates the whole image, i.e. no zero row
    RMatrix p = k2.facets() * a * k1.generators();
    for (std::size_t i = 0; i < p.rows(); ++i) {
        bool all_zero = true;
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (sgn(p(i, j)) != 0) {
                all_zero = false;
                break;
            }
        if (all_zero) return false;
    }
    return k2.contains_interior(a * k1.interior_point());
}

bool is_k_inverse_nonnegative(const RMatrix& y, const PolyCone& k) {
    if (y.rows() != y.cols() || y.rows() != k.dim()) return false;
    auto inv = inverse(y);
    if (!inv) return false;
    return is_nonneg_map(*inv, k, k);
}

bool is_automorphism(const RMatrix& x, const PolyCone& k) {
    if (x.rows() != x.cols() || x.rows() != k.dim()) return false;
    if (!inverse(x)) return false;
    const RMatrix& g = k.generators();
    const std::size_t p = g.cols();
    std::vector<Vec> target;
    for (std::size_t j = 0; j < p; ++j) target.push_back(column(g, j));

    std::vector<bool> used(p, false);
    RMatrix img = x * g;
    for (std::size_t j = 0; j < p; ++j) {
        Vec v = column(img, j);
        bool zero = std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
        if (zero) return false;
        // positive scaling must land exactly on an unused extreme ray
        Vec w = v;
        canonicalize_ray(w);
        // canonical form uses |first nonzero| = 1, which is a positive scale
        bool matched = false;
        for (std::size_t t = 0; t < p && !matched; ++t) {
            if (used[t]) continue;
            if (w == target[t]) {
                used[t] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

RMatrix extend_to_simplicial(const PolyCone& k, const RMatrix& v) {
    if (v.rows() != k.dim() || v.cols() != 1)
        throw std::invalid_argument("extend_to_simplicial: bad vector shape");
    if (v.is_zero()) throw std::invalid_argument("extend_to_simplicial: v = 0");
    if (!k.contains(v)) throw std::invalid_argument("extend_to_simplicial: v not in cone");

    const std::size_t n = k.dim();
    RMatrix t = v;
    for (std::size_t j = 0; j < k.generators().cols() && t.cols() < n; ++j) {
        RMatrix cand = RMatrix::hcat(t, k.generators().col(j));
        if (rank(cand) > t.cols()) t = cand;
    }
    if (t.cols() < n || !inverse(t))
        throw std::invalid_argument("extend_to_simplicial: cone not full-dimensional");
    return t;
}

}  // namespace spt
