#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spt/cones.hpp"
#include "spt/matrix_io.hpp"
#include "spt/patterns.hpp"
#include "spt/preservers.hpp"
#include "spt/semipos.hpp"

using nlohmann::json;
using namespace spt;

namespace {

constexpr const char* kVersion = "1.0.0";

json rat_json(const Rational& r) { return to_string(r); }

json vec_json(const RMatrix& v) {
    json out = json::array();
    for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(rat_json(v(i, 0)));
    return out;
}

json mat_json(const RMatrix& a) {
    json out = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(rat_json(a(i, j)));
        out.push_back(row);
    }
    return out;
}

struct ConeFlags {
    std::string cone1, cone2;

    PolyCone k1(std::size_t n) const {
        return cone1.empty() ? PolyCone::orthant(n) : PolyCone::load(cone1);
    }
    PolyCone k2(std::size_t m) const {
        return cone2.empty() ? PolyCone::orthant(m) : PolyCone::load(cone2);
    }
};

void add_cone_flags(CLI::App* cmd, ConeFlags& flags) {
    cmd->add_option("--cone1", flags.cone1, "domain cone file (default: orthant)");
    cmd->add_option("--cone2", flags.cone2, "codomain cone file (default: orthant)");
}

// "exit" is internal routing, not part of the output schema.
int emit(json doc) {
    int code = doc.value("exit", 0);
    doc.erase("exit");
    std::cout << doc.dump(2) << '\n';
    return code;
}

// Every certificate printed is re-verified here, independently of the
// library's internal checks; a failure is a bug worth a loud stop.
void gate(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("self-check failed: ") + what);
}

json check_sp_doc(const RMatrix& a, const PolyCone& k1, const PolyCone& k2) {
    SPVerdict v = classify_sp(a, k1, k2);
    json doc;
    if (v.semipositive) {
        gate(k1.contains_interior(v.witness) && k2.contains_interior(a * v.witness),
             "sp witness");
        doc["verdict"] = "semipositive";
        doc["witness"] = vec_json(v.witness);
        doc["exit"] = 0;
    } else {
        gate(!v.certificate.is_zero() &&
                 (k2.generators().transpose() * v.certificate).is_nonnegative() &&
                 (k1.generators().transpose() * -(a.transpose() * v.certificate))
                     .is_nonnegative(),
             "sp certificate");
        doc["verdict"] = "not semipositive";
        doc["certificate"] = vec_json(v.certificate);
        doc["exit"] = 1;
    }
    return doc;
}

json check_msp_doc(const RMatrix& a, const PolyCone& k1, const PolyCone& k2) {
    SPClass c = classify_msp(a, k1, k2);
    json doc;
    switch (c.kind) {
        case SPClass::Kind::MinimallySemipositive:
            gate(c.left_inverse * a == RMatrix::identity(a.cols()) &&
                     is_nonneg_map(c.left_inverse, k2, k1),
                 "msp left inverse");
            doc["verdict"] = "minimally semipositive";
            doc["left_inverse"] = mat_json(c.left_inverse);
            doc["exit"] = 0;
            break;
        case SPClass::Kind::RedundantlySemipositive:
            doc["verdict"] = "redundantly semipositive";
            doc["exit"] = 1;
            break;
        case SPClass::Kind::NotSemipositive:
            doc["verdict"] = "not semipositive";
            doc["certificate"] = vec_json(c.certificate);
            doc["exit"] = 1;
            break;
    }
    return doc;
}

json check_lsp_doc(const RMatrix& a, const PolyCone& k1, const PolyCone& k2) {
    SPVerdict v = is_left_sp(a, k1, k2);
    json doc;
    if (v.semipositive) {
        gate(k2.dual().contains(v.witness) &&
                 k1.dual().contains_interior(a.transpose() * v.witness),
             "lsp witness");
        doc["verdict"] = "left semipositive";
        doc["witness"] = vec_json(v.witness);
        doc["exit"] = 0;
    } else {
        gate(!v.certificate.is_zero() && k1.contains(v.certificate) &&
                 k2.contains(-(a * v.certificate)),
             "lsp certificate");
        doc["verdict"] = "not left semipositive";
        doc["certificate"] = vec_json(v.certificate);
        doc["exit"] = 1;
    }
    return doc;
}

json factor_json(const XYFactor& f) {
    json out;
    out["X"] = mat_json(f.x);
    out["Y"] = mat_json(f.y);
    out["sign"] = f.sign;
    return out;
}

json counterexample_json(const Counterexample& ce) {
    json out;
    out["trial"] = ce.trial;
    out["A"] = mat_json(ce.a);
    out["witness"] = vec_json(ce.witness);
    out["certificate"] = vec_json(ce.certificate);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact semipositivity toolkit"};
    app.require_subcommand(1);

    ConeFlags cones;
    std::string matrix_file, cone_file, point_file, map_file;
    std::size_t m = 0, n = 0, trials = 200;
    std::uint64_t seed = 0;

    auto* check = app.add_subcommand("check", "semipositivity predicates");
    check->require_subcommand(1);
    for (const char* name : {"sp", "msp", "lsp"}) {
        auto* sub = check->add_subcommand(name);
        sub->add_option("matrix", matrix_file, "matrix file")->required();
        add_cone_flags(sub, cones);
    }

    auto* cone = app.add_subcommand("cone", "cone queries");
    cone->require_subcommand(1);
    for (const char* name : {"dual", "facets", "proper", "member"}) {
        auto* sub = cone->add_subcommand(name);
        sub->add_option("cone", cone_file, "cone file")->required();
        if (std::string(name) == "member")
            sub->add_option("point", point_file, "point file (one column)")->required();
    }

    auto* basis = app.add_subcommand("basis", "semipositive bases of M_{m,n}");
    basis->require_subcommand(1);
    for (const char* name : {"sp", "msp"}) {
        auto* sub = basis->add_subcommand(name);
        sub->add_option("m", m)->required();
        sub->add_option("n", n)->required();
        add_cone_flags(sub, cones);
    }

    auto* decompose = app.add_subcommand("decompose", "sum/difference decompositions");
    decompose->require_subcommand(1);
    for (const char* name : {"sum", "diff"}) {
        auto* sub = decompose->add_subcommand(name);
        sub->add_option("matrix", matrix_file)->required();
        add_cone_flags(sub, cones);
    }

    auto* preserver = app.add_subcommand("preserver", "linear maps on M_{m,n}");
    preserver->require_subcommand(1);
    for (const char* name : {"check", "factor", "analyze"}) {
        auto* sub = preserver->add_subcommand(name);
        sub->add_option("map", map_file, "linear map file")->required();
        sub->add_option("--trials", trials, "falsification budget");
        sub->add_option("--seed", seed, "random seed");
        add_cone_flags(sub, cones);
    }

    auto* pattern = app.add_subcommand("pattern", "sign-pattern predicates");
    pattern->require_subcommand(1);
    for (const char* name : {"full-indec", "blocks", "monomial", "rowpos"}) {
        auto* sub = pattern->add_subcommand(name);
        sub->add_option("matrix", matrix_file)->required();
    }

    auto* sample = app.add_subcommand("sample", "deterministic instance generators");
    auto* sample_sp_cmd = sample->add_subcommand("sp");
    sample_sp_cmd->add_option("m", m)->required();
    sample_sp_cmd->add_option("n", n)->required();
    sample_sp_cmd->add_option("--seed", seed, "random seed");
    add_cone_flags(sample_sp_cmd, cones);
    sample->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    json doc;
    std::string echo;
    for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);
    doc["command"] = echo;
    doc["version"] = kVersion;

    try {
        if (check->parsed()) {
            RMatrix a = load_matrix(matrix_file);
            PolyCone k1 = cones.k1(a.cols()), k2 = cones.k2(a.rows());
            json r;
            if (check->get_subcommand("sp")->parsed()) r = check_sp_doc(a, k1, k2);
            if (check->get_subcommand("msp")->parsed()) r = check_msp_doc(a, k1, k2);
            if (check->get_subcommand("lsp")->parsed()) r = check_lsp_doc(a, k1, k2);
            doc.update(r);
        } else if (cone->parsed()) {
            PolyCone k = PolyCone::load(cone_file);
            if (cone->get_subcommand("dual")->parsed()) {
                doc["verdict"] = "dual computed";
                doc["generators"] = mat_json(k.dual().generators());
                doc["exit"] = 0;
            } else if (cone->get_subcommand("facets")->parsed()) {
                doc["verdict"] = "facets computed";
                doc["facets"] = mat_json(k.facets());
                doc["exit"] = 0;
            } else if (cone->get_subcommand("proper")->parsed()) {
                std::string reason;
                bool ok = k.is_proper(reason);
                doc["verdict"] = ok ? "proper" : "not proper: " + reason;
                doc["exit"] = ok ? 0 : 1;
            } else {
                RMatrix x = load_matrix(point_file);
                if (x.cols() != 1) throw std::invalid_argument("point must be one column");
                bool ok = k.contains(x);
                doc["verdict"] = ok ? "member" : "not a member";
                doc["interior"] = ok && k.contains_interior(x);
                doc["exit"] = ok ? 0 : 1;
            }
        } else if (basis->parsed()) {
            PolyCone k1 = cones.k1(n), k2 = cones.k2(m);
            bool sp = basis->get_subcommand("sp")->parsed();
            auto b = sp ? sp_basis(m, n, k1, k2) : msp_basis(m, n, k1, k2);
            doc["verdict"] = sp ? "sp basis" : "msp basis";
            json elems = json::array();
            for (const auto& e : b) elems.push_back(mat_json(e));
            doc["basis"] = elems;
            doc["exit"] = 0;
        } else if (decompose->parsed()) {
            RMatrix a = load_matrix(matrix_file);
            PolyCone k1 = cones.k1(a.cols()), k2 = cones.k2(a.rows());
            if (decompose->get_subcommand("sum")->parsed()) {
                auto [b, c] = decompose_sum_sp(a, k1, k2);
                gate(b + c == a && classify_sp(b, k1, k2).semipositive &&
                         classify_sp(c, k1, k2).semipositive,
                     "sum decomposition");
                doc["verdict"] = "A = B + C with both semipositive";
                doc["B"] = mat_json(b);
                doc["C"] = mat_json(c);
            } else {
                auto [c1, c2] = decompose_diff_msp(a, k1, k2);
                gate(c1 - c2 == a &&
                         classify_msp(c1, k1, k2).kind ==
                             SPClass::Kind::MinimallySemipositive &&
                         classify_msp(c2, k1, k2).kind ==
                             SPClass::Kind::MinimallySemipositive,
                     "difference decomposition");
                doc["verdict"] = "A = C1 - C2 with both minimally semipositive";
                doc["C1"] = mat_json(c1);
                doc["C2"] = mat_json(c2);
            }
            doc["exit"] = 0;
        } else if (preserver->parsed()) {
            LinearMap l = load_map(map_file);
            PolyCone k1 = cones.k1(l.n), k2 = cones.k2(l.m);
            doc["seed"] = seed;
            if (preserver->get_subcommand("check")->parsed()) {
                auto ce = falsify_preserver(l, k1, k2, trials, seed);
                if (ce) {
                    gate(classify_sp(ce->a, k1, k2).semipositive &&
                             !classify_sp(apply(l, ce->a), k1, k2).semipositive,
                         "preserver counterexample");
                    doc["verdict"] = "counterexample found";
                    doc["counterexample"] = counterexample_json(*ce);
                    doc["exit"] = 1;
                } else {
                    doc["verdict"] = "no counterexample found";
                    doc["trials"] = trials;
                    doc["exit"] = 0;
                }
            } else if (preserver->get_subcommand("factor")->parsed()) {
                auto f = kronecker_factor(l);
                if (f) {
                    gate(l.mat == kron(f->y.transpose(), f->x), "kronecker factor");
                    doc["verdict"] = "Kronecker form X A Y";
                    doc["factorization"] = factor_json(*f);
                    doc["exit"] = 0;
                } else {
                    doc["verdict"] = "no Kronecker form";
                    doc["exit"] = 1;
                }
            } else {
                PreserverReport rep = analyze_preserver(l, k1, k2, trials, seed);
                doc["invertible"] = rep.invertible;
                doc["rank_one_images"] = rep.rank_one.pass;
                if (rep.counterexample)
                    doc["counterexample"] = counterexample_json(*rep.counterexample);
                if (rep.factorization) {
                    doc["factorization"] = factor_json(*rep.factorization);
                    doc["into_sp"] = rep.into_sp;
                    doc["onto_sp"] = rep.onto_sp;
                    doc["into_msp"] = rep.into_msp;
                    doc["onto_msp"] = rep.onto_msp;
                }
                if (rep.transpose_factorization)
                    doc["transpose_factorization"] = factor_json(*rep.transpose_factorization);
                switch (rep.verdict) {
                    case PreserverReport::Verdict::StandardForm:
                        doc["verdict"] = "standard form";
                        doc["exit"] = 0;
                        break;
                    case PreserverReport::Verdict::Counterexample:
                        doc["verdict"] = "counterexample";
                        doc["exit"] = 1;
                        break;
                    case PreserverReport::Verdict::Inconclusive:
                        doc["verdict"] = "inconclusive";
                        doc["exit"] = 1;
                        break;
                }
            }
        } else if (pattern->parsed()) {
            RMatrix a = load_matrix(matrix_file);
            if (pattern->get_subcommand("full-indec")->parsed()) {
                bool ok = is_fully_indecomposable(a);
                doc["verdict"] = ok ? "fully indecomposable" : "partly decomposable";
                doc["exit"] = ok ? 0 : 1;
            } else if (pattern->get_subcommand("blocks")->parsed()) {
                BlockForm bf = block_triangularize(a);
                doc["verdict"] = "block triangular form";
                doc["row_perm"] = bf.row_perm;
                doc["col_perm"] = bf.col_perm;
                doc["block_sizes"] = bf.block_sizes;
                doc["permuted"] = mat_json(bf.permuted);
                doc["pattern_inverse_nonnegative"] = check_pattern_inv_nonneg(a);
                doc["exit"] = 0;
            } else if (pattern->get_subcommand("monomial")->parsed()) {
                bool ok = is_monomial(a);
                doc["verdict"] = ok ? "monomial" : "not monomial";
                doc["exit"] = ok ? 0 : 1;
            } else {
                bool ok = is_row_positive(a);
                doc["verdict"] = ok ? "row positive" : "not row positive";
                doc["exit"] = ok ? 0 : 1;
            }
        } else if (sample->parsed()) {
            PolyCone k1 = cones.k1(n), k2 = cones.k2(m);
            RMatrix a = sample_sp(m, n, k1, k2, seed);
            gate(classify_sp(a, k1, k2).semipositive, "sampled matrix");
            doc["verdict"] = "semipositive sample";
            doc["seed"] = seed;
            doc["matrix"] = mat_json(a);
            doc["exit"] = 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cout << json{{"error", e.what()}}.dump(2) << '\n';
        return 2;
    }

    return emit(doc);
}
