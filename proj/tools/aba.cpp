// Command-line driver: solve, entail, learn, to-lp, check, replay.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "aba/frontend.hpp"
#include "aba/lp_bridge.hpp"
#include "aba/semantics.hpp"
#include "aba/strategy.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct UsageError : aba::Error {
    using aba::Error::Error;
};

template <class F>
auto located(const std::string& path, F&& parse) {
    const aba::SourceDocument doc = aba::load_document(path);
    try {
        return parse(doc.text);
    } catch (const aba::ParseError& e) {
        const auto& d = e.diagnostic();
        throw aba::Error(path + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message);
    }
}

aba::Framework load_framework(const std::string& path) {
    return located(path, [](const std::string& t) { return aba::parse_framework(t); });
}

aba::SemanticsConfig semantics_config() {
    aba::SemanticsConfig c;
    if (const char* env = std::getenv("ABA_BUDGET")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (!*env || *end) throw UsageError(std::string("ABA_BUDGET must be a non-negative integer, got '") + env + "'");
        c.assumption_budget = v;
    }
    return c;
}

aba::Mode parse_mode(const std::string& s) {
    auto m = aba::mode_from_string(s);
    if (!m) throw UsageError("unknown mode '" + s + "' (credulous or sceptical)");
    return *m;
}

std::string join(const aba::AtomSet& atoms) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : atoms) {
        if (!first) out += ", ";
        out += aba::to_string(a);
        first = false;
    }
    return out + "}";
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw aba::Error("cannot write " + path);
}

int cmd_solve(const std::string& path, bool enumerate) {
    const auto fw = load_framework(path);
    const auto exts = aba::stable_extensions(fw, semantics_config());
    std::cout << "extensions: " << exts.size() << "\n";
    if (enumerate) {
        for (std::size_t i = 0; i < exts.size(); ++i) {
            std::cout << "extension " << i + 1 << "\n";
            std::cout << "  assumptions: " << join(exts[i].assumptions) << "\n";
            std::cout << "  claims: " << join(exts[i].claims) << "\n";
        }
    }
    aba::AtomSet common;
    if (!exts.empty()) {
        common = exts.front().claims;
        for (const auto& e : exts) {
            aba::AtomSet keep;
            for (const auto& a : common)
                if (e.claims.count(a)) keep.insert(a);
            common = std::move(keep);
        }
    }
    std::cout << "sceptical: " << join(common) << "\n";
    return 0;
}

int cmd_entail(const std::string& path, const std::string& atom, const std::string& mode) {
    const auto fw = load_framework(path);
    const auto m = parse_mode(mode);
    const bool yes = aba::entails(fw, aba::parse_ground_atom(atom), m, semantics_config());
    std::cout << (yes ? "true" : "false") << "\n";
    return yes ? 0 : 1;
}

struct LearnOptions {
    std::string framework, examples, mode = "credulous", policy = "rote_fallback", trace, output;
    bool reuse = false;
    std::size_t max_iters = 10;
};

int cmd_learn(const LearnOptions& o) {
    aba::LearningProblem problem{load_framework(o.framework),
                                 located(o.examples, [](const std::string& t) { return aba::parse_examples(t); })};
    aba::StrategyConfig config;
    config.mode = parse_mode(o.mode);
    config.allow_assumption_reuse = o.reuse;
    config.max_iterations = o.max_iters;
    auto policy = aba::divergence_policy_from_string(o.policy);
    if (!policy) throw UsageError("unknown divergence policy '" + o.policy + "'");
    config.divergence_policy = *policy;
    config.semantics = semantics_config();

    const auto result = aba::learn(problem, config);
    emit(aba::serialize(result.framework), o.output);
    if (!o.trace.empty()) aba::write_trace(result.trace, o.trace, aba::to_string(result.status));

    const auto& g = result.goal_report;
    std::cerr << "status: " << aba::to_string(result.status) << "\n"
              << "goal (" << aba::to_string(g.mode) << "): existence=" << g.existence
              << " completeness=" << g.completeness << " consistency=" << g.consistency
              << " extensions=" << g.extension_count << "\n";
    if (!result.message.empty()) std::cerr << "note: " << result.message << "\n";
    return result.status == aba::LearnStatus::Converged ? 0 : 1;
}

int cmd_to_lp(const std::string& path) {
    std::cout << aba::to_text(aba::to_logic_program(load_framework(path)));
    return 0;
}

int cmd_check(const std::string& path) {
    aba::Framework fw;
    try {
        fw = load_framework(path);
    } catch (const aba::ValidationError& e) {
        std::cout << "invalid\n";
        for (const auto& m : e.messages()) std::cout << "  " << m << "\n";
        return 1;
    }
    std::cout << "valid: " << fw.rules().size() << " rules, " << fw.assumptions().size() << " assumption schemata, "
              << fw.universe().size() << " constants\n";
    const auto report = aba::cross_check(fw, semantics_config());
    std::cout << "cross-check: " << (report.match ? "match" : "mismatch") << " (" << report.extension_count
              << " extensions, " << report.model_count << " stable models)\n";
    if (!report.match) std::cout << "  " << report.detail << "\n";
    return report.match ? 0 : 1;
}

int cmd_replay(const std::string& path, const std::string& trace, const std::string& output) {
    const auto fw = aba::replay(load_framework(path), aba::read_trace(trace));
    emit(aba::serialize(fw), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Assumption-based argumentation: semantics and learning"};
    app.require_subcommand(1);

    std::string fw_path, atom, mode = "credulous", trace_path, output;
    bool enumerate = false;
    LearnOptions lo;

    auto* solve = app.add_subcommand("solve", "Print the stable extensions");
    solve->add_option("framework", fw_path, "Framework file")->required();
    solve->add_flag("--enumerate", enumerate, "Print every extension");

    auto* entail = app.add_subcommand("entail", "Exit 0 iff the atom is entailed");
    entail->add_option("framework", fw_path, "Framework file")->required();
    entail->add_option("atom", atom, "Ground atom")->required();
    entail->add_option("--mode", mode, "credulous or sceptical");

    auto* learn = app.add_subcommand("learn", "Learn a framework from examples");
    learn->add_option("framework", lo.framework, "Background framework")->required();
    learn->add_option("examples", lo.examples, "Examples file")->required();
    learn->add_option("--mode", lo.mode, "credulous or sceptical");
    learn->add_flag("--reuse-assumptions", lo.reuse, "Allow reusing introduced assumptions");
    learn->add_option("--max-iters", lo.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
    learn->add_option("--divergence-policy", lo.policy, "rote_fallback or reuse");
    learn->add_option("--trace", lo.trace, "Write the trace here");
    learn->add_option("-o,--output", lo.output, "Write the framework here");

    auto* to_lp = app.add_subcommand("to-lp", "Print the mapped logic program");
    to_lp->add_option("framework", fw_path, "Framework file")->required();

    auto* check = app.add_subcommand("check", "Validate and compare with the logic program");
    check->add_option("framework", fw_path, "Framework file")->required();

    auto* replay = app.add_subcommand("replay", "Apply a trace to a framework");
    replay->add_option("framework", fw_path, "Background framework")->required();
    replay->add_option("trace", trace_path, "Trace file")->required();
    replay->add_option("-o,--output", output, "Write the framework here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*solve) return cmd_solve(fw_path, enumerate);
        if (*entail) return cmd_entail(fw_path, atom, mode);
        if (*learn) return cmd_learn(lo);
        if (*to_lp) return cmd_to_lp(fw_path);
        if (*check) return cmd_check(fw_path);
        if (*replay) return cmd_replay(fw_path, trace_path, output);
    } catch (const aba::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const aba::ValidationError& e) {
        std::cerr << "invalid framework: " << e.what() << "\n";
        for (const auto& m : e.messages()) std::cerr << "  " << m << "\n";
        return kUsage;
    } catch (const aba::ParseError& e) {
        std::cerr << e.diagnostic().line << ":" << e.diagnostic().column << ": " << e.diagnostic().message << "\n";
        return kUsage;
    } catch (const aba::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
