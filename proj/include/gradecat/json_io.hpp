#pragma once

#include "gradecat/catalog.hpp"
#include "gradecat/classify.hpp"
#include "gradecat/graded_matrix.hpp"
#include "gradecat/verify.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace gradecat {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchema = 1;

inline Json to_json(const AbelianGroup& g) {
    return Json{{"free_rank", g.free_rank()}, {"torsion", g.torsion()}, {"pretty", g.pretty()}};
}

inline AbelianGroup group_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("group spec must be an object {free_rank, torsion}");
    int r = j.value("free_rank", 0);
    auto t = j.value("torsion", std::vector<std::int64_t>{});
    if (r < 0) throw std::invalid_argument("free_rank must be non-negative");
    for (auto m : t)
        if (m < 1) throw std::invalid_argument("torsion orders must be positive");
    return AbelianGroup::from_orders(r, t);
}

inline Json to_json(const GroupDescriptor& d) {
    Json j{{"pretty", d.pretty()}, {"sexpr", d.sexpr()}, {"finite", d.is_finite()}, {"finite_order", d.finite_order()}};
    return j;
}

inline Json to_json(const ClassificationRow& r) {
    return Json{{"k", r.k},
                {"type", r.type},
                {"T", to_json(r.support)},
                {"division_grading", r.ref()},
                {"universal_group", to_json(r.universal)},
                {"components", r.components},
                {"weyl", {{"name", r.weyl_name.tag},
                          {"order", r.weyl_order},
                          {"division_order", r.weyl_division_order},
                          {"descriptor", to_json(r.weyl)}}},
                {"stabilizer", to_json(r.stabilizer)},
                {"diagonal", to_json(r.diagonal)},
                {"flags", r.flags}};
}

inline Json classification_json(const MatrixAlgebraName& alg, const std::vector<ClassificationRow>& rows) {
    Json arr = Json::array();
    for (auto& r : rows) arr.push_back(to_json(r));
    return Json{{"schema", kJsonSchema}, {"algebra", algebra_code(alg)}, {"name", alg.str()}, {"rows", arr}};
}

inline Json to_json(const VerifyReport& rep) {
    Json checks = Json::array();
    for (auto& c : rep.checks)
        checks.push_back({{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return Json{{"schema", kJsonSchema}, {"passed", rep.passed()}, {"failures", rep.failures()}, {"checks", checks}};
}

namespace detail {

// Display width in terminal columns; every non-ASCII glyph used here is one column.
inline std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

inline std::string pad(const std::string& s, std::size_t w) { return s + std::string(w - display_width(s), ' '); }

}  // namespace detail

inline std::string classification_table(const MatrixAlgebraName& alg, const std::vector<ClassificationRow>& rows) {
    std::vector<std::vector<std::string>> cells{
        {"#", "k", "D", "universal group", "Weyl", "|W|", "stabilizer", "diagonal", "flags"}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        std::string flags;
        for (auto& f : r.flags) flags += (flags.empty() ? "" : ", ") + f;
        cells.push_back({std::to_string(i + 1), std::to_string(r.k), r.ref(), r.universal.pretty(),
                         r.weyl_name.tag == "other(" + std::to_string(r.weyl_order) + ")" ? r.weyl.pretty()
                                                                                           : r.weyl_name.tag,
                         std::to_string(r.weyl_order), r.stabilizer.pretty(), r.diagonal.pretty(), flags});
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], detail::display_width(row[c]));
    std::ostringstream os;
    os << "Fine gradings on " << alg.str() << ": " << rows.size() << (rows.size() == 1 ? " row" : " rows") << "\n";
    for (auto& row : cells) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) line += (c ? "  " : "") + detail::pad(row[c], width[c]);
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << "\n";
    }
    return os.str();
}

// {"D": "1-c:Z2", "gamma": [[...], ...], "G": {"free_rank": r, "torsion": [...]},
//  "embed": [[...], ...] (optional: images of the generators of T)}
struct MatrixSpec {
    AnyDivisionAlgebra d;
    GradingParams params;
};

inline MatrixSpec matrix_spec_from_json(const Json& j) {
    if (!j.contains("D") || !j.contains("gamma") || !j.contains("G"))
        throw std::invalid_argument("algebra spec needs keys D, gamma and G");
    auto d = canonical(j.at("D").get<std::string>());
    const auto& t = support_of(d);
    auto g = group_from_json(j.at("G"));
    auto element = [&](const Json& v) {
        auto coords = v.get<std::vector<std::int64_t>>();
        if (coords.size() != g.num_coords())
            throw std::invalid_argument("element " + v.dump() + " needs " + std::to_string(g.num_coords()) + " coordinates");
        return g.element(coords);
    };
    std::vector<GroupElement> embed;
    if (j.contains("embed")) {
        for (auto& v : j.at("embed")) embed.push_back(element(v));
    } else {
        // T sits on the last torsion coordinates of G
        if (g.torsion().size() < t.torsion().size())
            throw std::invalid_argument("G has too few torsion factors to contain T; give \"embed\"");
        const std::size_t off = g.num_coords() - t.num_coords();
        for (std::size_t i = 0; i < t.num_coords(); ++i) embed.push_back(g.generator(off + i));
    }
    std::vector<GroupElement> gamma;
    for (auto& v : j.at("gamma")) gamma.push_back(element(v));
    return {d, GradingParams(g, t, GroupHomomorphism(t, g, embed), gamma)};
}

struct UniversalResult {
    AbelianGroup universal;
    std::size_t components = 0;
    bool fine_condition = false;
    std::string fine_witness;
    std::optional<AbelianGroup> expected;  // Z^{k-1} x T when the fine condition holds
    std::optional<std::size_t> expected_components;
    bool passed() const {
        return !expected || (universal == *expected && components == *expected_components);
    }
};

inline UniversalResult universal_from_spec(const MatrixSpec& s) {
    return std::visit(
        [&](const auto& d) {
            GradedMatrixAlgebra r(d, s.params);
            UniversalResult u;
            u.universal = r.universal_group().group;
            u.components = r.components().size();
            auto fc = r.fine_condition();
            u.fine_condition = fc.ok;
            if (fc.witness) u.fine_witness = fc.witness->str();
            if (fc.ok) {
                const std::size_t k = r.k();
                u.expected = AbelianGroup(static_cast<int>(k - 1), d.support().torsion());
                u.expected_components = (k * k - k + 1) * d.support().order();
            }
            return u;
        },
        s.d);
}

inline Json to_json(const UniversalResult& u) {
    Json j{{"schema", kJsonSchema},
           {"universal_group", to_json(u.universal)},
           {"components", u.components},
           {"fine_condition", u.fine_condition},
           {"passed", u.passed()}};
    if (!u.fine_witness.empty()) j["fine_condition_witness"] = u.fine_witness;
    if (u.expected) {
        j["expected_universal_group"] = to_json(*u.expected);
        j["expected_components"] = *u.expected_components;
    }
    return j;
}

}  // namespace gradecat
