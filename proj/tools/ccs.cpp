// ccs - command line front end for the .ccs problem format.
//
// Subcommands: check, solve, analyze, refine, bell. Exit codes: 0 on
// success, 1 when the engine answers in the negative (diagnostics,
// unsolvable, transfer failure), 2 on usage errors (unreadable files,
// unknown names, out-of-range arguments).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cogcat/cogcat.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string diagnostic_line(const std::string& file, const cogcat::dsl::diagnostic& d) {
    std::string line = file + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) +
                       ": " + (d.sev == cogcat::dsl::severity::error ? "error" : "warning") +
                       ": " + d.message;
    if (!d.declaration.empty()) line += " [" + d.declaration + "]";
    return line;
}

json diagnostics_json(const std::vector<cogcat::dsl::diagnostic>& diags) {
    json out = json::array();
    for (const auto& d : diags) {
        out.push_back({{"severity", d.sev == cogcat::dsl::severity::error ? "error" : "warning"},
                       {"line", d.line},
                       {"column", d.column},
                       {"message", d.message},
                       {"declaration", d.declaration}});
    }
    return out;
}

/// Parses the file; on diagnostics prints them (or JSON) and returns
/// nullopt so the caller can exit with a domain failure.
std::optional<cogcat::dsl::model> load_model(const std::string& path, bool as_json) {
    const std::string text = read_file(path);
    auto result = cogcat::dsl::parse(text);
    if (result.ok() && result.diagnostics.empty()) return std::move(result.parsed);
    if (as_json) {
        json out{{"command", "load"},
                 {"file", path},
                 {"ok", result.ok()},
                 {"diagnostics", diagnostics_json(result.diagnostics)}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& d : result.diagnostics)
            std::cout << diagnostic_line(path, d) << "\n";
    }
    if (result.ok()) return std::move(result.parsed); // warnings only
    return std::nullopt;
}

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    std::string current;
    for (char c : list) {
        if (c == ',') {
            if (!current.empty()) out.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) out.push_back(current);
    return out;
}

const cogcat::generator& find_generator(const cogcat::dsl::compiled_model& cm,
                                        const std::string& name) {
    auto it = cm.generators.find(name);
    if (it == cm.generators.end()) throw usage_error("unknown generator '" + name + "'");
    return it->second;
}

cogcat::generator_set named_set(const cogcat::dsl::compiled_model& cm,
                                const std::vector<std::string>& names) {
    if (names.empty()) throw usage_error("empty generator list");
    const auto& first = find_generator(cm, names.front());
    cogcat::generator_set out(first.over());
    for (const auto& name : names) out.add(find_generator(cm, name));
    return out;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int cmd_check(const std::string& file, bool as_json) {
    const std::string text = read_file(file);
    auto result = cogcat::dsl::parse(text);
    const std::size_t decl_count = result.ok() ? result.parsed->decls.size() : 0;
    if (as_json) {
        json out{{"command", "check"},
                 {"file", file},
                 {"ok", result.ok()},
                 {"declarations", decl_count},
                 {"diagnostics", diagnostics_json(result.diagnostics)}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& d : result.diagnostics)
            std::cout << diagnostic_line(file, d) << "\n";
        if (result.ok() && result.diagnostics.empty())
            std::cout << file << ": ok (" << decl_count << " declarations)\n";
    }
    return result.ok() && result.diagnostics.empty() ? exit_ok : exit_domain;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int report_plan(const cogcat::plan& p, const cogcat::problem& prob,
                const cogcat::evaluator* quotient_view, bool as_json, json header) {
    const cogcat::category& cat = prob.over();
    json traces = json::array();
    std::vector<std::string> trace_lines;
    for (std::size_t ord : prob.outset()) {
        auto trace = cogcat::execution_trace(p, cat.at(ord));
        std::vector<std::string> labels;
        for (const auto& s : trace) labels.push_back(s.label());
        std::string line = "  trace " + labels.front() + ": " + join(labels, " -> ");
        if (quotient_view) line += "  [block " + quotient_view->evaluate(trace.back()).label() + "]";
        trace_lines.push_back(std::move(line));
        json t{{"from", labels.front()}, {"states", labels}};
        if (quotient_view) t["final_block"] = quotient_view->evaluate(trace.back()).label();
        traces.push_back(std::move(t));
    }
    if (as_json) {
        header["solvable"] = true;
        header["plan"] = p.step_names();
        header["length"] = p.steps.size();
        header["traces"] = std::move(traces);
        std::cout << header.dump(2) << "\n";
    } else {
        if (p.steps.empty())
            std::cout << "plan (empty): the outset already satisfies the goal\n";
        else
            std::cout << "plan (" << p.steps.size()
                      << (p.steps.size() == 1 ? " step): " : " steps): ")
                      << join(p.step_names(), " ") << "\n";
        for (const auto& line : trace_lines) std::cout << line << "\n";
    }
    return exit_ok;
}

int report_unsolvable(const cogcat::unsolvable& u, bool as_json, json header) {
    if (as_json) {
        header["solvable"] = false;
        header["depth_searched"] = u.depth_searched;
        header["definitive"] = !u.truncated;
        std::cout << header.dump(2) << "\n";
    } else {
        std::cout << "UNSOLVABLE ("
                  << (u.truncated ? "depth limit " + std::to_string(u.depth_searched) +
                                        " reached; inconclusive"
                                  : "search exhausted at depth " +
                                        std::to_string(u.depth_searched) + "; definitive")
                  << ")\n";
    }
    return exit_domain;
}

int report_transfer_failure(const cogcat::transfer_failure& f, const cogcat::evaluator& e,
                            const cogcat::dsl::compiled_model& cm, bool as_json, json header) {
    json items = json::array();
    std::vector<std::string> lines;
    for (const auto& item : f.conflicts) {
        const auto& c = item.conflict;
        const auto& g = find_generator(cm, item.generator_name);
        const std::string first_block = e.evaluate(g.apply(c.first_witness)).label();
        const std::string second_block = e.evaluate(g.apply(c.second_witness)).label();
        lines.push_back("  generator '" + item.generator_name + "' conflicts in block '" +
                        c.block_label + "': " + c.first_witness.label() + " lands in '" +
                        first_block + "', " + c.second_witness.label() + " lands in '" +
                        second_block + "' (" + std::to_string(c.conflicting_blocks) +
                        " conflicting blocks)");
        items.push_back({{"generator", item.generator_name},
                         {"block", c.block_label},
                         {"witnesses", {c.first_witness.label(), c.second_witness.label()}},
                         {"witness_blocks", {first_block, second_block}},
                         {"conflicting_blocks", c.conflicting_blocks}});
    }
    if (as_json) {
        header["solvable"] = false;
        header["transfer_failure"] = std::move(items);
        std::cout << header.dump(2) << "\n";
    } else {
        std::cout << "TRANSFER FAILURE: " << f.conflicts.size()
                  << " generator(s) do not transfer\n";
        for (const auto& line : lines) std::cout << line << "\n";
    }
    return exit_domain;
}

int cmd_solve(const std::string& file, const std::string& problem_name,
              std::optional<std::size_t> max_depth, const std::string& quotient_name,
              bool as_json) {
    auto model = load_model(file, as_json);
    if (!model) return exit_domain;
    auto cm = cogcat::dsl::compile(*model);

    auto it = cm.problems.find(problem_name);
    if (it == cm.problems.end()) throw usage_error("unknown problem '" + problem_name + "'");
    const cogcat::problem& prob = it->second;
    const std::size_t depth = max_depth.value_or(cogcat::default_max_depth(prob.over()));

    json header{{"command", "solve"}, {"file", file}, {"problem", problem_name}};

    if (quotient_name.empty()) {
        if (!as_json)
            std::cout << "problem '" << problem_name << "' over '" << prob.over().name()
                      << "'\n";
        auto result = cogcat::solve(prob, depth);
        if (auto* p = std::get_if<cogcat::plan>(&result))
            return report_plan(*p, prob, nullptr, as_json, std::move(header));
        return report_unsolvable(std::get<cogcat::unsolvable>(result), as_json,
                                 std::move(header));
    }

    auto eit = cm.evaluators.find(quotient_name);
    if (eit == cm.evaluators.end())
        throw usage_error("unknown evaluator '" + quotient_name + "'");
    const cogcat::evaluator& ev = eit->second;
    if (ev.source() != prob.over())
        throw usage_error("evaluator '" + quotient_name + "' is not over the problem category");

    auto block_for = [&](const std::vector<std::size_t>& ordinals, const char* what) {
        const cogcat::partition& groups = ev.groups();
        for (std::size_t b = 0; b < groups.block_count(); ++b)
            if (groups.block(b) == ordinals) return ev.quotient().at(b);
        throw usage_error(std::string(what) + " of problem '" + problem_name +
                          "' is not exactly one block of evaluator '" + quotient_name + "'");
    };
    const cogcat::state v_o = block_for(prob.outset(), "outset");
    const cogcat::state v_t = block_for(prob.goal(), "goal");

    header["quotient"] = quotient_name;
    header["outset_block"] = v_o.label();
    header["goal_block"] = v_t.label();
    if (!as_json)
        std::cout << "problem '" << problem_name << "' via evaluator '" << quotient_name
                  << "': " << v_o.label() << " -> " << v_t.label() << "\n";

    auto result = cogcat::solve_on_quotient(ev, v_o, v_t, prob.available(), depth);
    if (auto* p = std::get_if<cogcat::plan>(&result))
        return report_plan(*p, prob, &ev, as_json, std::move(header));
    if (auto* u = std::get_if<cogcat::unsolvable>(&result))
        return report_unsolvable(*u, as_json, std::move(header));
    return report_transfer_failure(std::get<cogcat::transfer_failure>(result), ev, cm, as_json,
                                   std::move(header));
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& file, const std::string& omnipotent_list,
                const std::string& reduced_list, const std::string& canonical_cat,
                const std::string& purposeful_gen,
                const std::vector<std::string>& controllable_args, bool as_json) {
    auto model = load_model(file, as_json);
    if (!model) return exit_domain;
    auto cm = cogcat::dsl::compile(*model);

    if (omnipotent_list.empty() && reduced_list.empty() && canonical_cat.empty() &&
        purposeful_gen.empty() && controllable_args.empty())
        throw usage_error("analyze: nothing requested (use --omnipotent, --reduced, "
                          "--canonical, --purposeful or --controllable)");

    json results = json::object();
    std::vector<std::string> lines;

    if (!omnipotent_list.empty()) {
        auto names = split_names(omnipotent_list);
        auto set = named_set(cm, names);
        const bool value = cogcat::is_omnipotent(set);
        lines.push_back("omnipotent {" + join(names, ", ") + "} over '" + set.over().name() +
                        "': " + (value ? "yes" : "no"));
        results["omnipotent"] = {{"generators", names}, {"value", value}};
    }
    if (!reduced_list.empty()) {
        auto names = split_names(reduced_list);
        auto set = named_set(cm, names);
        const bool value = cogcat::is_reduced(set);
        lines.push_back("reduced {" + join(names, ", ") + "} over '" + set.over().name() +
                        "': " + (value ? "yes" : "no"));
        results["reduced"] = {{"generators", names}, {"value", value}};
    }
    if (!purposeful_gen.empty()) {
        const auto& g = find_generator(cm, purposeful_gen);
        auto target = cogcat::is_purposeful(g);
        lines.push_back("purposeful '" + purposeful_gen + "': " +
                        (target ? "yes (target '" + target->label() + "')" : "no"));
        results["purposeful"] = {{"generator", purposeful_gen},
                                 {"value", target.has_value()}};
        if (target) results["purposeful"]["target"] = target->label();
    }
    if (!controllable_args.empty()) {
        const std::string& eval_name = controllable_args.at(0);
        auto eit = cm.evaluators.find(eval_name);
        if (eit == cm.evaluators.end())
            throw usage_error("unknown evaluator '" + eval_name + "'");
        auto names = split_names(controllable_args.at(1));
        auto set = named_set(cm, names);
        const cogcat::evaluator& ev = eit->second;
        if (set.over() != ev.source())
            throw usage_error("generators are not over the source category of evaluator '" +
                              eval_name + "'");
        std::string detail;
        bool value = true;
        for (const auto& g : set) {
            auto transferred = cogcat::transfer_generator(ev, g);
            if (auto* c = std::get_if<cogcat::transfer_conflict>(&transferred)) {
                value = false;
                detail = "conflict in block '" + c->block_label + "' for generator '" +
                         g.name() + "'";
                break;
            }
        }
        if (value && !cogcat::is_controllable(ev, set)) {
            value = false;
            detail = "transferred set is not omnipotent over the quotient";
        }
        lines.push_back("controllable '" + eval_name + "' by {" + join(names, ", ") + "}: " +
                        (value ? "yes" : "no (" + detail + ")"));
        results["controllable"] = {{"evaluator", eval_name},
                                   {"generators", names},
                                   {"value", value}};
        if (!value) results["controllable"]["reason"] = detail;
    }
    std::string canonical_text;
    if (!canonical_cat.empty()) {
        auto cit = cm.categories.find(canonical_cat);
        if (cit == cm.categories.end())
            throw usage_error("unknown category '" + canonical_cat + "'");
        auto canon = cogcat::canonical_set(cit->second);
        cogcat::dsl::model decls;
        for (const auto& g : canon) {
            cogcat::dsl::generator_decl gd;
            gd.name = cogcat::dsl::name_ref(g.name());
            gd.over = cogcat::dsl::name_ref(canonical_cat);
            for (std::size_t i = 0; i < g.table().size(); ++i)
                gd.mappings.emplace_back(cogcat::dsl::name_ref(cit->second.label(i)),
                                         cogcat::dsl::name_ref(cit->second.label(g.table()[i])));
            decls.decls.push_back(std::move(gd));
        }
        canonical_text = cogcat::dsl::print(decls);
        lines.push_back("canonical set of '" + canonical_cat + "' (" +
                        std::to_string(canon.size()) + " generators):");
        results["canonical"] = {{"category", canonical_cat},
                                {"size", canon.size()},
                                {"declarations", canonical_text}};
    }

    if (as_json) {
        json out{{"command", "analyze"}, {"file", file}, {"results", std::move(results)}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& line : lines) std::cout << line << "\n";
        if (!canonical_text.empty()) std::cout << canonical_text;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// refine
// ---------------------------------------------------------------------------

cogcat::dsl::model refinement_to_model(const cogcat::refinement& r) {
    cogcat::dsl::model m;

    cogcat::dsl::category_decl cd;
    cd.name = cogcat::dsl::name_ref(r.refined.name());
    for (std::size_t i = 0; i < r.refined.size(); ++i)
        cd.states.emplace_back(r.refined.label(i));
    m.decls.push_back(std::move(cd));

    cogcat::dsl::generator_decl gd;
    gd.name = cogcat::dsl::name_ref(r.gen.name());
    gd.over = cogcat::dsl::name_ref(r.refined.name());
    for (std::size_t i = 0; i < r.refined.size(); ++i)
        gd.mappings.emplace_back(cogcat::dsl::name_ref(r.refined.label(i)),
                                 cogcat::dsl::name_ref(r.refined.label(r.gen.table()[i])));
    m.decls.push_back(std::move(gd));

    cogcat::dsl::evaluator_decl ed;
    ed.name = cogcat::dsl::name_ref(r.gen.name() + "_collapse");
    ed.over = cogcat::dsl::name_ref(r.refined.name());
    const cogcat::partition& groups = r.collapse.groups();
    for (std::size_t b = 0; b < groups.block_count(); ++b) {
        cogcat::dsl::evaluator_block block;
        block.label = cogcat::dsl::name_ref(groups.label(b));
        for (std::size_t ord : groups.block(b))
            block.members.emplace_back(r.refined.label(ord));
        ed.blocks.push_back(std::move(block));
    }
    m.decls.push_back(std::move(ed));
    return m;
}

int cmd_refine(const std::string& file, const std::string& relation_name,
               const std::string& out_path, bool as_json) {
    auto model = load_model(file, as_json);
    if (!model) return exit_domain;
    auto cm = cogcat::dsl::compile(*model);

    auto it = cm.relations.find(relation_name);
    if (it == cm.relations.end()) throw usage_error("unknown relation '" + relation_name + "'");
    const cogcat::outcome_relation& rel = it->second;

    auto refined = cogcat::refine(rel);
    auto report = cogcat::verify_roundtrip(rel, refined);

    std::vector<std::string> multi_valued;
    for (std::size_t x = 0; x < rel.over().size(); ++x)
        if (!report.single_valued[x]) multi_valued.push_back(rel.over().label(x));

    const std::string text = cogcat::dsl::print(refinement_to_model(refined));

    if (!report.ok) {
        // Should be unreachable; guards regressions in refine().
        if (as_json) {
            json out{{"command", "refine"},
                     {"file", file},
                     {"relation", relation_name},
                     {"roundtrip", false}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "refinement of '" << relation_name
                      << "' FAILED the round-trip verification\n";
        }
        return exit_domain;
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw usage_error("cannot write file '" + out_path + "'");
        out << text;
    }

    if (as_json) {
        json out{{"command", "refine"},
                 {"file", file},
                 {"relation", relation_name},
                 {"refined_category", refined.refined.name()},
                 {"refined_states", refined.refined.size()},
                 {"roundtrip", true},
                 {"single_valued_everywhere", report.single_valued_everywhere()},
                 {"multi_valued_at", multi_valued},
                 {"ccs", text}};
        if (!out_path.empty()) out["output"] = out_path;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cerr << "relation '" << relation_name << "' over '" << rel.over().name() << "': "
                  << refined.refined.size() << " refined states\n";
        std::cerr << "roundtrip: ok"
                  << (multi_valued.empty()
                          ? std::string("; collapse is single-valued everywhere")
                          : "; collapse not single-valued at: " + join(multi_valued, ", "))
                  << "\n";
        if (out_path.empty())
            std::cout << text;
        else
            std::cerr << "wrote '" << out_path << "'\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// bell
// ---------------------------------------------------------------------------

int cmd_bell(long long n, bool as_json) {
    if (n < 0 || n > 500) throw usage_error("bell: n must be between 0 and 500");
    auto value = cogcat::bell_number(static_cast<std::size_t>(n));
    if (as_json) {
        json out{{"command", "bell"}, {"n", n}, {"value", value.to_string()}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << value.to_string() << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cognitive category toolkit"};
    app.require_subcommand(1);
    bool as_json = false;

    std::string file;
    std::string problem_name;
    std::string quotient_name;
    std::optional<std::size_t> max_depth;
    std::string omnipotent_list;
    std::string reduced_list;
    std::string canonical_cat;
    std::string purposeful_gen;
    std::vector<std::string> controllable_args;
    std::string relation_name;
    std::string out_path;
    long long bell_n = 0;

    auto* check = app.add_subcommand("check", "parse and validate a .ccs file");
    check->add_option("file", file, "input .ccs file")->required();

    auto* solve = app.add_subcommand("solve", "solve a declared problem");
    solve->add_option("file", file, "input .ccs file")->required();
    solve->add_option("problem", problem_name, "problem name")->required();
    solve->add_option("--max-depth", max_depth, "search depth bound (default 2^n)");
    solve->add_option("--quotient", quotient_name,
                      "solve on the quotient of this evaluator; the problem outset and goal "
                      "must each be exactly one block");

    auto* analyze = app.add_subcommand("analyze", "evaluate generator/evaluator predicates");
    analyze->add_option("file", file, "input .ccs file")->required();
    analyze->add_option("--omnipotent", omnipotent_list, "comma-separated generator names");
    analyze->add_option("--reduced", reduced_list, "comma-separated generator names");
    analyze->add_option("--canonical", canonical_cat, "category name");
    analyze->add_option("--purposeful", purposeful_gen, "generator name");
    analyze->add_option("--controllable", controllable_args,
                        "evaluator name followed by comma-separated generator names")
        ->expected(2);

    auto* refine = app.add_subcommand("refine", "split hidden states of a relation");
    refine->add_option("file", file, "input .ccs file")->required();
    refine->add_option("relation", relation_name, "relation name")->required();
    refine->add_option("--out", out_path, "write the refined .ccs here (default: stdout)");

    auto* bell = app.add_subcommand("bell", "print the exact Bell number B_n");
    bell->add_option("n", bell_n, "index (0..500)")->required();

    for (auto* sub : {check, solve, analyze, refine, bell})
        sub->add_flag("--json", as_json, "emit one machine-readable JSON document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (check->parsed()) return cmd_check(file, as_json);
        if (solve->parsed())
            return cmd_solve(file, problem_name, max_depth, quotient_name, as_json);
        if (analyze->parsed())
            return cmd_analyze(file, omnipotent_list, reduced_list, canonical_cat,
                               purposeful_gen, controllable_args, as_json);
        if (refine->parsed()) return cmd_refine(file, relation_name, out_path, as_json);
        if (bell->parsed()) return cmd_bell(bell_n, as_json);
    } catch (const usage_error& e) {
        std::cerr << "ccs: " << e.what() << "\n";
        return exit_usage;
    } catch (const cogcat::error& e) {
        std::cerr << "ccs: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_usage;
}
