#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dorfman/brackets.hpp"
#include "dorfman/geometry.hpp"
#include "dorfman/parser.hpp"
#include "dorfman/unshuffles.hpp"
#include "dorfman/verify.hpp"

namespace {

using namespace dorfman;

constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;

std::optional<std::uint64_t> env_seed() {
    if (const char* s = std::getenv("DORFMAN_SEED")) {
        try {
            return std::stoull(s);
        } catch (...) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

void split_section_specs(const std::vector<std::string>& raw, VerificationJob& job) {
    for (const auto& entry : raw) {
        std::size_t start = 0;
        while (start <= entry.size()) {
            const auto semi = entry.find(';', start);
            std::string piece = entry.substr(
                start, semi == std::string::npos ? std::string::npos : semi - start);
            const auto a = piece.find_first_not_of(" \t");
            if (a != std::string::npos) {
                piece = piece.substr(a, piece.find_last_not_of(" \t") - a + 1);
                if (piece.rfind("random:", 0) == 0)
                    job.random_sections += static_cast<unsigned>(std::stoul(piece.substr(7)));
                else
                    job.section_exprs.push_back(piece);
            }
            if (semi == std::string::npos) break;
            start = semi + 1;
        }
    }
}

int run_verify(const VerificationJob& job, bool json_out) {
    const auto report = run_verification(job);
    if (json_out)
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << report.to_text();
    return report.all_pass() ? 0 : kExitFail;
}

int run_unshuffles(unsigned max_k, bool json_out) {
    bool all_equal = true;
    nlohmann::json rows = nlohmann::json::array();
    if (!json_out)
        std::cout << "  k  j  count(=C(k-1,j-1))  brute  closed\n";
    for (unsigned k = 1; k <= max_k; ++k) {
        for (unsigned j = 1; j <= k; ++j) {
            const auto total = enumerate_unshuffles(k, j).size();
            const long long brute = signed_count_brute_force(k, j);
            const long long closed = signed_count_closed_form(k, j);
            all_equal = all_equal && brute == closed &&
                        Integer(total) == binomial(k - 1, j - 1);
            if (json_out)
                rows.push_back({{"k", k}, {"j", j}, {"count", total},
                                {"brute", brute}, {"closed", closed}});
            else
                std::cout << "  " << k << "  " << j << "  " << total << "  " << brute << "  "
                          << closed << (brute == closed ? "" : "   <-- MISMATCH") << "\n";
        }
    }
    if (json_out) {
        nlohmann::json j = {{"max_k", max_k}, {"all_equal", all_equal}, {"rows", rows}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (all_equal ? "all counts agree\n" : "MISMATCH FOUND\n");
    }
    return all_equal ? 0 : kExitFail;
}

int run_example(const VerificationJob& base, bool json_out) {
    const ResolvedJob rj = resolve_job(base);
    const auto parity = rj.theta.parity();
    const SuperPolynomial square = poisson_bracket(rj.theta, rj.theta);

    nlohmann::json j;
    j["preset"] = base.preset;
    j["dim"] = base.dim;
    j["theta"] = rj.theta.str();
    j["theta_parity"] = parity ? (*parity == Parity::odd ? "odd" : "even") : "mixed";
    j["homological"] = square.is_zero();
    nlohmann::json weights = nlohmann::json::array();
    for (unsigned w = 0; w <= rj.theta.max_weight(); ++w) {
        const auto comp = rj.theta.weight_component(w);
        if (!comp.is_zero()) weights.push_back({{"weight", w}, {"value", comp.str()}});
    }
    j["weight_components"] = weights;
    if (rj.multivector) j["multivector"] = rj.multivector->value().str();

    // a small demo table: binary brackets of coordinate sections
    HamiltonianDerivation d(rj.theta);
    nlohmann::json demo = nlohmann::json::array();
    for (unsigned a = 1; a <= std::min(2u, base.dim); ++a) {
        SectionExpr x_a(SuperPolynomial::coordinate(rj.chart, CoordKind::fiber_odd_2, a));
        SectionExpr dx_a(SuperPolynomial::coordinate(rj.chart, CoordKind::fiber_odd_1, a));
        SectionExpr xdx(SuperPolynomial::coordinate(rj.chart, CoordKind::base, a) *
                        SuperPolynomial::coordinate(rj.chart, CoordKind::fiber_odd_1, a));
        demo.push_back({{"expr", "d2(pi" + std::to_string(a) + ", x" + std::to_string(a) +
                                     "*xi" + std::to_string(a) + ")"},
                        {"value", dorfman_bracket(d, {x_a, xdx}).chi().str()}});
        demo.push_back({{"expr", "g(pi" + std::to_string(a) + ", xi" + std::to_string(a) + ")"},
                        {"value", pairing_g(x_a, dx_a).str()}});
    }
    j["demo"] = demo;

    if (json_out) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "preset: " << base.preset << " (dim " << base.dim << ")\n"
                  << "theta = " << j["theta"].get<std::string>() << "\n"
                  << "parity: " << j["theta_parity"].get<std::string>()
                  << ", homological: " << (square.is_zero() ? "yes" : "no") << "\n";
        for (const auto& w : weights)
            std::cout << "  weight " << w["weight"] << ": " << w["value"].get<std::string>()
                      << "\n";
        for (const auto& line : demo)
            std::cout << "  " << line["expr"].get<std::string>() << " = "
                      << line["value"].get<std::string>() << "\n";
    }
    return 0;
}

int run_bracket(const VerificationJob& base, const std::string& op,
                const std::string& function_expr, bool json_out) {
    ResolvedJob rj = resolve_job(base);
    if (rj.sections.empty() && op != "defect")
        throw InvariantError("bracket evaluation needs sections");
    HamiltonianDerivation d(rj.theta);

    SuperPolynomial value(rj.chart);
    std::string described;
    if (op == "dorfman") {
        value = dorfman_bracket(d, rj.sections).chi();
        described = "d_" + std::to_string(rj.sections.size());
    } else if (op == "courant") {
        value = courant(d, rj.sections).chi();
        described = "courant_" + std::to_string(rj.sections.size());
    } else if (op == "defect") {
        if (function_expr.empty())
            throw InvariantError("the defect map needs --function");
        const SuperPolynomial f = parse_expression(rj.chart, function_expr);
        value = defect_map(d, rj.sections, f).chi();
        described = "D_" + std::to_string(rj.sections.size() + 2);
    } else {
        throw InvariantError("unknown operation '" + op + "'");
    }

    if (json_out) {
        nlohmann::json j = {{"op", described},
                            {"value", value.str()},
                            {"terms", value.term_count()},
                            {"weight_1", value.is_weight_homogeneous(1)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << described << " = " << value.str() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact derived-bracket kernel for symplectic 2-manifolds"};
    app.require_subcommand(1);

    VerificationJob job;
    std::vector<std::string> section_specs;
    std::vector<std::string> check_names;
    std::string format = "text";
    std::string op = "dorfman";
    std::string function_expr;
    unsigned max_k = 12;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--dim", job.dim, "chart dimension")->capture_default_str();
        sub->add_option("--preset", job.preset, "delta | bivector | trivector | custom");
        sub->add_option("--theta", job.theta_expr, "theta expression (even chart grammar)");
        sub->add_option("--multivector", job.multivector_expr,
                        "multivector expression (odd chart grammar)");
        sub->add_option("--format", format, "text | json");
    };

    auto* verify = app.add_subcommand("verify", "run verification checks");
    add_common(verify);
    verify->add_option("--sections", section_specs,
                       "section expressions or random:<count>, ';'-separable");
    verify->add_option("--seed", [&job](const std::vector<std::string>& v) {
        job.seed = std::stoull(v.front());
        return true;
    }, "seed for random sections (fallback: DORFMAN_SEED)");
    verify->add_option("--max-arity", job.max_arity, "largest bracket arity to sweep")
        ->capture_default_str();
    verify->add_option("--check", check_names,
                       "homological | loday | theorem | defect | proposition | polarisation");

    auto* unshuffles = app.add_subcommand("unshuffles", "signed unshuffle count table");
    unshuffles->add_option("--max-k", max_k, "largest k")->capture_default_str();
    unshuffles->add_option("--format", format, "text | json");

    auto* example = app.add_subcommand("example", "describe a preset structure");
    add_common(example);

    auto* bracket = app.add_subcommand("bracket", "evaluate one bracket expression");
    add_common(bracket);
    bracket->add_option("--op", op, "dorfman | courant | defect")->capture_default_str();
    bracket->add_option("--sections", section_specs, "section expressions, ';'-separable");
    bracket->add_option("--seed", [&job](const std::vector<std::string>& v) {
        job.seed = std::stoull(v.front());
        return true;
    }, "seed for random sections");
    bracket->add_option("--function", function_expr, "base function for the defect map");

    CLI11_PARSE(app, argc, argv);

    if (!job.seed) job.seed = env_seed();
    if (job.preset == "custom" && job.theta_expr.empty() && job.multivector_expr.empty())
        job.preset = "delta";  // friendliest default when nothing custom was given
    const bool json_out = format == "json";

    try {
        split_section_specs(section_specs, job);
        if (verify->parsed()) {
            for (const auto& name : check_names) {
                const auto kind = parse_check_name(name);
                if (!kind) throw InvariantError("unknown check '" + name + "'");
                job.checks.push_back(*kind);
            }
            if (job.checks.empty())
                job.checks = {CheckKind::homological, CheckKind::loday};
            if (job.max_arity > 5)
                std::cerr << "note: arity sweeps above 5 grow combinatorially and may be slow\n";
            return run_verify(job, json_out);
        }
        if (unshuffles->parsed()) return run_unshuffles(max_k, json_out);
        if (example->parsed()) return run_example(job, json_out);
        if (bracket->parsed()) return run_bracket(job, op, function_expr, json_out);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ChartError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return 0;
}
