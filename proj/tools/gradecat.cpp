#include "gradecat/classify.hpp"
#include "gradecat/json_io.hpp"
#include "gradecat/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace gradecat;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

int run_classify(const std::string& algebra, const std::string& format) {
    auto alg = parse_algebra_name(algebra);
    auto rows = classify(alg);
    if (format == "json") std::cout << classification_json(alg, rows).dump(2) << "\n";
    else std::cout << classification_table(alg, rows);
    return kPass;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& format) {
    auto rep = verify(suite, seed);
    if (format == "json") {
        std::cout << to_json(rep).dump(2) << "\n";
    } else {
        for (auto& c : rep.checks)
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.name
                      << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        std::cout << rep.checks.size() - rep.failures() << "/" << rep.checks.size() << " checks passed\n";
    }
    return rep.passed() ? kPass : kCheckFailure;
}

int run_universal(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("spec file is not valid JSON: ") + e.what());
    }
    auto res = universal_from_spec(matrix_spec_from_json(j));
    if (format == "json") {
        std::cout << to_json(res).dump(2) << "\n";
    } else {
        std::cout << "universal group: " << res.universal.pretty() << "\n"
                  << "homogeneous components: " << res.components << "\n"
                  << "fine condition: " << (res.fine_condition ? "yes" : "no (" + res.fine_witness + ")") << "\n";
        if (res.expected)
            std::cout << "expected Z^(k-1) x T: " << res.expected->pretty() << ", " << *res.expected_components
                      << " components: " << (res.passed() ? "PASS" : "FAIL") << "\n";
    }
    return res.passed() ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fine gradings on real matrix algebras and their automorphism groups"};
    app.require_subcommand(1);

    std::string format = "table";
    auto* classify_cmd = app.add_subcommand("classify", "list fine gradings up to equivalence");
    std::string algebra;
    classify_cmd->add_option("--algebra", algebra, "M2R, H, M2C, M3C or M4C")->required();
    classify_cmd->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::vector<std::string> suites = verify_suites();
    suites.push_back("all");
    verify_cmd->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suites));
    verify_cmd->add_option("--seed", seed, "seed for sampled checks");
    verify_cmd->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

    auto* universal_cmd = app.add_subcommand("universal", "universal group of a graded matrix algebra spec");
    std::string spec_path;
    universal_cmd->add_option("--spec", spec_path, "JSON spec {D, gamma, G}")->required();
    universal_cmd->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*classify_cmd) return run_classify(algebra, format);
        if (*verify_cmd) return run_verify(suite, seed, format);
        if (*universal_cmd) return run_universal(spec_path, format);
    } catch (const CoverageError& e) {
        std::cerr << "gradecat: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gradecat: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "gradecat: internal error: " << e.what() << "\n";
        return kCheckFailure;
    }
    return kUsage;
}
