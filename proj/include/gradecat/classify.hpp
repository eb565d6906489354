#pragma once

#include "gradecat/automorphisms.hpp"
#include "gradecat/catalog.hpp"
#include "gradecat/graded_matrix.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradecat {

// Requested algebra lies outside what the catalog is known to cover.
class CoverageError : public std::runtime_error {
public:
    explicit CoverageError(const std::string& what) : std::runtime_error("insufficient catalog: " + what) {}
};

// Accepts "M4C", "M(4,C)", "H", "R", "C".
inline MatrixAlgebraName parse_algebra_name(const std::string& s) {
    static const std::regex compact("M([1-9][0-9]*)([RCH])"), paren("M\\(([1-9][0-9]*),([RCH])\\)");
    std::smatch m;
    if (s.size() == 1 && (s[0] == 'R' || s[0] == 'C' || s[0] == 'H')) return {1, s[0]};
    if (std::regex_match(s, m, compact) || std::regex_match(s, m, paren))
        return {std::stoi(m[1].str()), m[2].str()[0]};
    throw std::invalid_argument("cannot parse algebra name '" + s + "' (expected e.g. M4C, M(2,R), H)");
}

inline const std::vector<MatrixAlgebraName>& covered_algebras() {
    static const std::vector<MatrixAlgebraName> v{{2, 'R'}, {1, 'H'}, {2, 'C'}, {3, 'C'}, {4, 'C'}};
    return v;
}

inline std::string algebra_code(const MatrixAlgebraName& a) {
    return a.n == 1 ? std::string(1, a.field) : "M" + std::to_string(a.n) + a.field;
}

struct ClassificationRow {
    std::size_t k = 1;
    std::string type;
    AbelianGroup support;
    AbelianGroup universal;
    std::size_t components = 0;
    GroupDescriptor weyl = GroupDescriptor::trivial();
    GroupName weyl_name;               // identified from the explicit permutation group
    std::uint64_t weyl_order = 1;      // order of the explicit group
    std::uint64_t weyl_division_order = 1;
    GroupDescriptor stabilizer = GroupDescriptor::trivial();
    GroupDescriptor diagonal = GroupDescriptor::trivial();
    std::vector<std::string> flags;

    std::string ref() const { return type + ":" + support.ascii(); }
};

namespace detail {

// Z_2^a x Z_4^b and Z_n^2, enough for every catalog entry up to real dimension 2*max_n^2.
inline std::vector<AbelianGroup> candidate_supports(int max_n) {
    std::vector<AbelianGroup> out;
    const int max_log = 2 * (32 - __builtin_clz(static_cast<unsigned>(max_n))) + 1;
    for (int a = 0; a <= max_log; ++a)
        for (int b = 0; a + 2 * b <= max_log; ++b) {
            std::vector<std::int64_t> orders(a, 2);
            orders.insert(orders.end(), b, 4);
            out.push_back(AbelianGroup::from_orders(0, orders));
        }
    for (int n = 3; n <= max_n; ++n) out.push_back(AbelianGroup::from_orders(0, {n, n}));
    std::vector<AbelianGroup> dedup;
    for (auto& g : out)
        if (std::find(dedup.begin(), dedup.end(), g) == dedup.end()) dedup.push_back(g);
    return dedup;
}

// D_e is R, C or H according to the first digit of the type tag.
inline std::uint64_t identity_component_dim(const std::string& type) {
    return type[0] == '1' ? 1 : type[0] == '2' ? 2 : 4;
}

inline StructureConstantAlgebra division_sca(const AnyDivisionAlgebra& any) {
    return std::visit(
        [](const auto& d) { return GradedMatrixAlgebra(d, make_standard_params(1, d.support())).to_structure_algebra(); },
        any);
}

// The center of M_k(D) is that of D; the grading is a grading of the complex
// algebra when the center is 2-dimensional and sits in the identity component.
inline bool is_complex_grading(const AnyDivisionAlgebra& any) {
    auto a = division_sca(any);
    auto z = a.center();
    if (z.size() != 2) return false;
    for (auto& v : z) {
        auto deg = a.homogeneous_degree(v);
        if (!deg || !deg->is_zero()) return false;
    }
    return true;
}

template <class C>
ClassificationRow make_row(const DivisionAlgebra<C>& d, std::size_t k, bool complex) {
    GradedMatrixAlgebra<C> r(d, make_standard_params(k, d.support()));
    ClassificationRow row;
    row.k = k;
    row.type = require_tag(AnyDivisionAlgebra(d)).type;
    row.support = d.support();
    row.universal = r.universal_group().group;
    row.components = r.components().size();
    auto w0 = weyl_division(d);
    row.weyl_division_order = w0.order();
    row.weyl = weyl_descriptor(r, w0);
    auto explicit_group = weyl_group_explicit(r, w0);
    row.weyl_order = explicit_group.order();
    row.weyl_name = identify_group(explicit_group);
    row.stabilizer = stab_descriptor(r);
    row.diagonal = diag_descriptor(r);
    if (complex) row.flags.push_back("complex grading");
    return row;
}

}  // namespace detail

// Fine gradings of M_n(F) up to equivalence: one row per (k, fine catalog
// division grading D) with M_k(D) = M_n(F). Rows sorted by k descending, then
// type tag, then support.
inline std::vector<ClassificationRow> classify(const MatrixAlgebraName& alg) {
    const auto& cov = covered_algebras();
    if (std::find(cov.begin(), cov.end(), alg) == cov.end()) throw CoverageError(alg.str() + " is not covered");
    std::vector<std::pair<std::size_t, AnyDivisionAlgebra>> found;
    const auto supports = detail::candidate_supports(alg.n);
    for (int k = alg.n; k >= 1; --k) {
        if (alg.n % k != 0) continue;
        const int m = alg.n / k;
        const std::uint64_t block_dim =
            static_cast<std::uint64_t>(m * m) * (alg.field == 'R' ? 1 : alg.field == 'C' ? 2 : 4);
        for (const char* type : catalog_types())
            for (auto& t : supports) {
                // dim D = |T| dim D_e must equal the real dimension of M_m(F)
                if (t.order() * detail::identity_component_dim(type) != block_dim) continue;
                std::optional<AnyDivisionAlgebra> d;
                try {
                    d = canonical(type, t);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                if (dim_e_of(*d) != detail::identity_component_dim(type))
                    throw std::logic_error("catalog entry " + require_tag(*d).ref() + " has unexpected D_e");
                if (!(underlying_algebra(require_tag(*d)) == MatrixAlgebraName{alg.n / k, alg.field})) continue;
                if (!is_fine_division(*d)) continue;
                bool dup = false;
                for (auto& [kk, e] : found) dup = dup || (kk == static_cast<std::size_t>(k) && equivalent(e, *d));
                if (!dup) found.emplace_back(static_cast<std::size_t>(k), std::move(*d));
            }
    }
    std::vector<ClassificationRow> rows;
    for (auto& [k, any] : found) {
        bool complex = detail::is_complex_grading(any);
        rows.push_back(std::visit([&](const auto& d) { return detail::make_row(d, k, complex); }, any));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ClassificationRow& a, const ClassificationRow& b) {
        if (a.k != b.k) return a.k > b.k;
        if (a.type != b.type) return a.type < b.type;
        return a.support.order() < b.support.order();
    });
    return rows;
}

inline std::vector<ClassificationRow> classify(const std::string& name) { return classify(parse_algebra_name(name)); }

}  // namespace gradecat
