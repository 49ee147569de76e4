#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dorfman/brackets.hpp"
#include "dorfman/geometry.hpp"
#include "dorfman/parser.hpp"
#include "dorfman/sampling.hpp"

namespace dorfman {

enum class CheckKind { homological, loday, theorem, defect, proposition, polarisation };

inline const char* check_name(CheckKind k) {
    switch (k) {
        case CheckKind::homological: return "homological";
        case CheckKind::loday: return "loday";
        case CheckKind::theorem: return "theorem";
        case CheckKind::defect: return "defect";
        case CheckKind::proposition: return "proposition";
        case CheckKind::polarisation: return "polarisation";
    }
    return "?";
}

inline std::optional<CheckKind> parse_check_name(const std::string& s) {
    for (CheckKind k : {CheckKind::homological, CheckKind::loday, CheckKind::theorem,
                        CheckKind::defect, CheckKind::proposition, CheckKind::polarisation})
        if (s == check_name(k)) return k;
    return std::nullopt;
}

struct VerificationJob {
    unsigned dim = 1;
    std::string preset = "custom";  // delta | bivector | trivector | custom
    std::string theta_expr;         // custom theta (even chart grammar)
    std::string multivector_expr;   // custom P (odd chart grammar), optional
    std::vector<std::string> section_exprs;
    unsigned random_sections = 0;
    std::optional<std::uint64_t> seed;
    unsigned max_arity = 3;
    std::vector<CheckKind> checks;
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::size_t residual_terms = 0;  // nonzero monomials in the first failing residual
    std::optional<std::string> witness;
};

struct VerificationReport {
    VerificationJob job;
    std::string theta_printed;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["job"] = {{"dim", job.dim},
                    {"preset", job.preset},
                    {"theta", theta_printed},
                    {"sections", job.section_exprs},
                    {"random_sections", job.random_sections},
                    {"max_arity", job.max_arity}};
        if (job.seed) j["job"]["seed"] = *job.seed;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json e = {{"name", c.name},
                                {"pass", c.pass},
                                {"residual_terms", c.residual_terms}};
            if (c.witness) e["witness"] = *c.witness;
            j["checks"].push_back(e);
        }
        j["versions"] = {{"dorfman", "1.0.0"}, {"report", 1}};
        return j;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "theta = " << theta_printed << "\n";
        for (const auto& c : checks) {
            os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
               << " (residual terms: " << c.residual_terms << ")";
            if (c.witness) os << "\n       witness: " << *c.witness;
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

inline std::string leading_term(const SuperPolynomial& f) {
    if (f.is_zero()) return "0";
    const auto& [m, c] = *f.terms().begin();
    SuperPolynomial one(f.chart());
    one.add_term(m, c);
    return one.str();
}

inline std::string tuple_witness(const std::vector<SectionExpr>& args,
                                 const SuperPolynomial& residual) {
    std::ostringstream os;
    os << "args = [";
    for (std::size_t t = 0; t < args.size(); ++t)
        os << (t ? "; " : "") << args[t].chi().str();
    os << "], leading residual term = " << leading_term(residual);
    return os.str();
}

}  // namespace detail

/// Resolved inputs for one verification run.
struct ResolvedJob {
    ChartPtr chart;
    SuperPolynomial theta;
    std::optional<Multivector> multivector;
    std::vector<SectionExpr> sections;

    ResolvedJob(ChartPtr c, SuperPolynomial t) : chart(std::move(c)), theta(std::move(t)) {}
};

inline ResolvedJob resolve_job(const VerificationJob& job) {
    auto chart = Chart::symplectic(job.dim);
    auto odd = Chart::odd_cotangent(job.dim);

    std::optional<Multivector> p;
    SuperPolynomial theta(chart);
    if (job.preset == "delta") {
        theta = delta_hamiltonian(chart);
    } else if (job.preset == "bivector") {
        if (job.dim < 2) throw InvariantError("the bivector preset needs dim >= 2");
        p = Multivector(parse_expression(odd, "xs1*xs2 + x1*xs1*xs2 + x1*x2*xs1*xs2"));
        theta = delta_hamiltonian(chart) + lift_multivector(*p, chart);
    } else if (job.preset == "trivector") {
        if (job.dim < 3) throw InvariantError("the trivector preset needs dim >= 3");
        p = Multivector(parse_expression(odd, "xs1*xs2*xs3"));
        theta = delta_hamiltonian(chart) + lift_multivector(*p, chart);
    } else if (job.preset == "custom") {
        if (job.theta_expr.empty() && job.multivector_expr.empty())
            throw InvariantError("custom preset needs --theta or --multivector");
        if (!job.multivector_expr.empty()) {
            p = Multivector(parse_expression(odd, job.multivector_expr));
            theta = delta_hamiltonian(chart) + lift_multivector(*p, chart);
        }
        if (!job.theta_expr.empty()) theta += parse_expression(chart, job.theta_expr);
    } else {
        throw InvariantError("unknown preset '" + job.preset + "'");
    }

    ResolvedJob resolved(chart, std::move(theta));
    resolved.multivector = std::move(p);

    for (const auto& s : job.section_exprs)
        resolved.sections.push_back(SectionExpr(parse_expression(chart, s)));
    if (job.random_sections > 0) {
        if (!job.seed)
            throw InvariantError("random sections need a seed (--seed or DORFMAN_SEED)");
        Sampler sampler(*job.seed);
        for (unsigned t = 0; t < job.random_sections; ++t)
            resolved.sections.push_back(sampler.section(chart));
    }
    return resolved;
}

/// Runs the requested checks.  Tuples are drawn as cyclic windows over the
/// section pool in a fixed order, so a given job is fully deterministic and
/// the first failure reported is the smallest failing tuple in that order.
inline VerificationReport run_verification(const VerificationJob& job) {
    if (job.max_arity < 1) throw InvariantError("max arity must be at least 1");
    ResolvedJob rj = resolve_job(job);

    const bool needs_loday_machinery = [&] {
        for (CheckKind k : job.checks)
            if (k != CheckKind::proposition) return true;
        return false;
    }();
    if (needs_loday_machinery && rj.theta.parity() != Parity::odd)
        throw InvariantError("the requested checks need an odd theta");

    HamiltonianDerivation d(rj.theta);  // enforces P theta = 0

    VerificationReport report;
    report.job = job;
    report.theta_printed = rj.theta.str();

    auto windows = [&](std::size_t n) {
        std::vector<std::vector<SectionExpr>> out;
        const std::size_t pool = rj.sections.size();
        for (std::size_t s = 0; s < pool; ++s) {
            std::vector<SectionExpr> w;
            for (std::size_t t = 0; t < n; ++t) w.push_back(rj.sections[(s + t) % pool]);
            out.push_back(std::move(w));
        }
        return out;
    };

    for (CheckKind kind : job.checks) {
        CheckResult result;
        result.name = check_name(kind);
        const bool needs_sections =
            kind != CheckKind::homological && kind != CheckKind::proposition;
        if (needs_sections && rj.sections.empty())
            throw InvariantError(std::string("check '") + result.name + "' needs sections");

        switch (kind) {
            case CheckKind::homological: {
                const SuperPolynomial sq = poisson_bracket(rj.theta, rj.theta);
                result.pass = sq.is_zero();
                result.residual_terms = sq.term_count();
                if (!result.pass)
                    result.witness = "[theta,theta] leading term = " + detail::leading_term(sq);
                break;
            }
            case CheckKind::loday: {
                for (std::size_t n = 1; n <= job.max_arity && result.pass; ++n)
                    for (auto& args : windows(n)) {
                        const auto rep = loday_identity(d, args);
                        if (!rep.residual.is_zero()) {
                            result.pass = false;
                            result.residual_terms = rep.residual.term_count();
                            result.witness = detail::tuple_witness(args, rep.residual);
                            break;
                        }
                    }
                break;
            }
            case CheckKind::theorem: {
                for (std::size_t n = 1; n <= job.max_arity && result.pass; ++n)
                    for (auto& args : windows(n)) {
                        const auto rep = loday_identity(d, args);
                        const SuperPolynomial sum = rep.residual + rep.q_squared_bracket;
                        if (!sum.is_zero()) {
                            result.pass = false;
                            result.residual_terms = sum.term_count();
                            result.witness = detail::tuple_witness(args, sum);
                            break;
                        }
                    }
                break;
            }
            case CheckKind::defect: {
                for (std::size_t k = 2; k <= std::max(2u, job.max_arity) && result.pass; ++k)
                    for (auto& args : windows(k)) {
                        for (std::size_t i = 1; i < k && result.pass; ++i)
                            if (!symmetry_defect_check(d, args, i)) {
                                result.pass = false;
                                result.residual_terms = 1;
                                std::ostringstream os;
                                os << "swap position " << i << ", "
                                   << detail::tuple_witness(args, SuperPolynomial::zero(rj.chart));
                                result.witness = os.str();
                            }
                        if (!result.pass) break;
                    }
                break;
            }
            case CheckKind::polarisation: {
                for (std::size_t n = 1; n <= job.max_arity && result.pass; ++n)
                    for (const auto& u : rj.sections) {
                        const SuperPolynomial lhs = polarised_loday(d, u, n);
                        const SuperPolynomial rhs =
                            loday_identity(d, std::vector<SectionExpr>(n, u)).residual;
                        const SuperPolynomial diff = lhs - rhs;
                        if (!diff.is_zero()) {
                            result.pass = false;
                            result.residual_terms = diff.term_count();
                            result.witness = detail::tuple_witness({u}, diff);
                            break;
                        }
                    }
                break;
            }
            case CheckKind::proposition: {
                if (!rj.multivector)
                    throw InvariantError(
                        "the proposition check needs a multivector preset or --multivector");
                Sampler sampler(job.seed.value_or(1));
                for (unsigned arity = 1; arity <= job.max_arity && result.pass; ++arity) {
                    for (unsigned mask = 0; mask < (1u << arity) && result.pass; ++mask) {
                        std::vector<FormOrField> args;
                        for (unsigned t = 0; t < arity; ++t) {
                            SuperPolynomial chi(rj.chart);
                            for (unsigned a = 1; a <= rj.chart->dim(); ++a)
                                chi += sampler.base_polynomial(rj.chart) *
                                       SuperPolynomial::coordinate(
                                           rj.chart,
                                           (mask >> t) & 1 ? CoordKind::fiber_odd_2
                                                           : CoordKind::fiber_odd_1,
                                           a);
                            if (chi.is_zero())
                                chi = SuperPolynomial::coordinate(
                                    rj.chart,
                                    (mask >> t) & 1 ? CoordKind::fiber_odd_2
                                                    : CoordKind::fiber_odd_1,
                                    1);
                            args.push_back((mask >> t) & 1 ? FormOrField::field(chi)
                                                           : FormOrField::form(chi));
                        }
                        const auto oracle = proposition_oracle(*rj.multivector, rj.chart, args);
                        std::vector<SectionExpr> sections;
                        for (const auto& a : args) sections.push_back(SectionExpr(a.chi()));
                        const SuperPolynomial diff =
                            dorfman_bracket(d, sections).chi() - oracle.chi;
                        if (!diff.is_zero()) {
                            result.pass = false;
                            result.residual_terms = diff.term_count();
                            result.witness = detail::tuple_witness(sections, diff);
                        }
                    }
                }
                break;
            }
        }
        report.checks.push_back(std::move(result));
    }
    return report;
}

}  // namespace dorfman
