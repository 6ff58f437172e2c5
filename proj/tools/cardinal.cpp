// Command-line front end: parsing, bounded consistency checking, the
// inter-formalism translations, gadget generation, brute-force tiling and
// concept evaluation, wired into one tool.
//
// Exit codes: 0 = consistent (or: tiling found / success), 1 = no model up to
// the bound (or: no tiling), 2 = error, timeout or bad usage.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "cardinal/cardinal.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cardinal::Error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_check(const std::string& path, std::size_t bound, bool una, double deadline_secs,
              const std::vector<std::string>& extra_individuals) {
    auto box = cardinal::parse_tbox_file(read_file(path));

    cardinal::SearchOptions opts;
    opts.max_domain_size = bound;
    opts.unique_name_assumption = una;
    if (deadline_secs > 0)
        opts.deadline = std::chrono::milliseconds(static_cast<long long>(deadline_secs * 1000));
    if (!extra_individuals.empty()) {
        cardinal::Signature sig = std::holds_alternative<cardinal::TcBox>(box)
                                      ? cardinal::signature_of(std::get<cardinal::TcBox>(box))
                                      : cardinal::signature_of(std::get<cardinal::TiBox>(box));
        sig.individuals.insert(extra_individuals.begin(), extra_individuals.end());
        sig.check_disjoint();
        opts.signature = std::move(sig);
    }

    cardinal::Verdict verdict =
        std::holds_alternative<cardinal::TcBox>(box)
            ? cardinal::find_model(std::get<cardinal::TcBox>(box), opts)
            : cardinal::find_model(std::get<cardinal::TiBox>(box), opts);

    if (verdict.consistent()) {
        std::cout << "consistent\n" << cardinal::render(verdict.witness());
        return 0;
    }
    std::cout << "no model up to " << verdict.exhausted_bound() << "\n";
    return 1;
}

int run_translate(const std::string& path, const std::string& target) {
    auto box = cardinal::parse_tbox_file(read_file(path));
    const bool is_card = std::holds_alternative<cardinal::TcBox>(box);

    if (target == "c2") {
        if (!is_card) throw cardinal::Error("c2 translation expects a cardinality TBox");
        const auto& t = std::get<cardinal::TcBox>(box);
        if (!cardinal::signature_of(t).individuals.empty())
            throw cardinal::Error("c2 translation is defined for nominal-free TBoxes only");
        std::cout << cardinal::render(cardinal::to_c2(t)) << "\n";
        return 0;
    }
    if (target == "nominals") {
        if (!is_card) throw cardinal::Error("nominal translation expects a cardinality TBox");
        const auto& t = std::get<cardinal::TcBox>(box);
        if (!cardinal::signature_of(t).individuals.empty())
            std::cerr << "warning: input already contains nominals; translation proceeds\n";
        auto [tibox, ledger] = cardinal::cardinalities_to_nominals(t);
        for (const auto& [index, names] : ledger.entries) {
            std::cout << "# restriction " << index << " ("
                      << cardinal::render(t.restrictions()[index]) << "): ";
            if (names.empty()) {
                std::cout << "no fresh nominals\n";
            } else {
                bool first = true;
                for (const auto& name : names) {
                    if (!first) std::cout << ' ';
                    std::cout << name;
                    first = false;
                }
                std::cout << "\n";
            }
        }
        std::cout << cardinal::render(tibox);
        return 0;
    }
    if (target == "cardinalities") {
        if (is_card) throw cardinal::Error("cardinality translation expects a gci TBox");
        const auto& t = std::get<cardinal::TiBox>(box);
        for (const auto& o : cardinal::signature_of(t).individuals)
            std::cout << "# nominal " << o << " becomes singleton concept A_" << o << "\n";
        std::cout << cardinal::render(cardinal::nominals_to_cardinalities(t));
        return 0;
    }
    if (target == "internalise") {
        if (is_card) throw cardinal::Error("internalisation expects a gci TBox");
        const auto& t = std::get<cardinal::TiBox>(box);
        std::cout << "# spy role " << cardinal::kSpyRole << ", spy point nominal "
                  << cardinal::kSpyNominal << "\n";
        std::cout << cardinal::render(cardinal::internalise(t)) << "\n";
        return 0;
    }
    throw cardinal::Error("unknown translation target: " + target);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cardinal: reductions between cardinality restrictions, nominals and "
                 "two-variable counting logic"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed,
                   "seed for randomised strategies (reserved; the bundled strategies are "
                   "deterministic and ignore it)");

    // parse
    std::string parse_path;
    auto* cmd_parse = app.add_subcommand("parse", "parse a TBox file and print its canonical form");
    cmd_parse->add_option("file", parse_path, "TBox file")->required();

    // check
    std::string check_path;
    std::size_t bound = 4;
    bool una = false;
    double deadline_secs = 0;
    std::vector<std::string> extra_individuals;
    auto* cmd_check = app.add_subcommand("check", "search for a model of a TBox");
    cmd_check->add_option("file", check_path, "TBox file")->required();
    cmd_check->add_option("--bound", bound, "largest domain size to try")->default_val(4);
    cmd_check->add_flag("--una", una, "assume distinct individual names denote distinct elements");
    cmd_check->add_option("--deadline", deadline_secs, "wall-clock budget in seconds");
    cmd_check->add_option("--individual", extra_individuals,
                          "extra individual name in scope (repeatable)");

    // translate
    std::string translate_path, target;
    auto* cmd_translate = app.add_subcommand("translate", "translate a TBox to another formalism");
    cmd_translate->add_option("file", translate_path, "TBox file")->required();
    cmd_translate->add_option("--to", target, "target: c2 | nominals | cardinalities | internalise")
        ->required()
        ->check(CLI::IsMember({"c2", "nominals", "cardinalities", "internalise"}));

    // generate
    auto* cmd_generate = app.add_subcommand("generate", "emit a gadget TBox");
    cmd_generate->require_subcommand(1);
    std::size_t torus_n = 1;
    std::string torus_style = "card";
    auto* gen_torus = cmd_generate->add_subcommand("torus", "the 2^n x 2^n torus TBox");
    gen_torus->add_option("--n", torus_n, "torus exponent")->required();
    gen_torus->add_option("--style", torus_style, "card (cardinality TBox) or gci (nominal TBox)")
        ->check(CLI::IsMember({"card", "gci"}));
    std::string domino_spec_path;
    std::size_t domino_n = 1;
    auto* gen_domino = cmd_generate->add_subcommand("domino", "the tiling reduction TBox");
    gen_domino->add_option("--spec", domino_spec_path, "domino spec file")->required();
    gen_domino->add_option("--n", domino_n, "torus exponent")->required();

    // tile
    std::string tile_spec_path;
    std::size_t tile_s = 2, tile_t = 2;
    auto* cmd_tile = app.add_subcommand("tile", "tile a torus by exhaustive search");
    cmd_tile->add_option("--spec", tile_spec_path, "domino spec file")->required();
    cmd_tile->add_option("--s", tile_s, "torus width")->required();
    cmd_tile->add_option("--t", tile_t, "torus height")->required();

    // eval
    std::string eval_model_path, eval_concept;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a concept on an interpretation");
    cmd_eval->add_option("--model", eval_model_path, "interpretation file")->required();
    cmd_eval->add_option("concept", eval_concept, "concept expression")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_parse->parsed()) {
            auto box = cardinal::parse_tbox_file(read_file(parse_path));
            std::visit([](const auto& b) { std::cout << cardinal::render(b); }, box);
            return 0;
        }
        if (cmd_check->parsed())
            return run_check(check_path, bound, una, deadline_secs, extra_individuals);
        if (cmd_translate->parsed()) return run_translate(translate_path, target);
        if (gen_torus->parsed()) {
            if (torus_style == "card")
                std::cout << cardinal::render(cardinal::torus_tcbox(torus_n));
            else
                std::cout << cardinal::render(cardinal::torus_tibox(torus_n));
            return 0;
        }
        if (gen_domino->parsed()) {
            cardinal::DominoSpec spec = cardinal::parse_domino_spec(read_file(domino_spec_path));
            std::cout << cardinal::render(
                cardinal::domino_tcbox(domino_n, spec.system, spec.initial));
            return 0;
        }
        if (cmd_tile->parsed()) {
            cardinal::DominoSpec spec = cardinal::parse_domino_spec(read_file(tile_spec_path));
            auto tiling = cardinal::tile_torus(spec.system, tile_s, tile_t, spec.initial);
            if (!tiling) {
                std::cout << "no tiling\n";
                return 1;
            }
            std::cout << cardinal::render(*tiling);
            return 0;
        }
        if (cmd_eval->parsed()) {
            cardinal::Interpretation model =
                cardinal::parse_interpretation(read_file(eval_model_path));
            cardinal::Concept c = cardinal::parse_concept(eval_concept);
            auto ext = cardinal::extension(model, c);
            std::cout << '{';
            bool first = true;
            for (cardinal::Element e : ext) {
                if (!first) std::cout << ',';
                std::cout << e;
                first = false;
            }
            std::cout << "}\n";
            return 0;
        }
    } catch (const cardinal::DeadlineExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
