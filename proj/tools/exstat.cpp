#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "exst/modelfile.hpp"
#include "exst/proctools.hpp"
#include "exst/report.hpp"

using namespace exst;

namespace {

struct ModelOpts {
    std::string file, builtin, group;
    std::optional<int> p;
};

void add_model_opts(CLI::App* cmd, ModelOpts& o) {
    cmd->add_option("--model", o.file, "model description file");
    cmd->add_option("--builtin", o.builtin,
                    "builtin name, e.g. centered-triangle, polygon:6, points:3");
    cmd->add_option("--group", o.group, "coefficient group literal, e.g. Z2 or Z2xZ2");
    cmd->add_option("--p", o.p, "excitation dimension (builtin default otherwise)");
}

ExcitationModel resolve_model(const ModelOpts& o) {
    if (!o.file.empty()) return load_model_file(o.file);
    if (o.builtin.empty())
        throw ParseError("specify --model FILE or --builtin NAME --group LITERAL");
    if (o.group.empty()) throw ParseError("--builtin requires --group");
    return builtin_model(o.builtin, parse_group_literal(o.group), o.p);
}

std::string model_desc(const ModelOpts& o) {
    if (!o.file.empty()) return "file:" + o.file;
    std::string d = "builtin:" + o.builtin + " group=" + o.group;
    if (o.p) d += " p=" + std::to_string(*o.p);
    return d;
}

struct ExprOpts {
    std::string file, process, at;
};

void add_expr_opts(CLI::App* cmd, ExprOpts& o, const std::string& process_flag = "--process") {
    cmd->add_option("--expr", o.file, "expression file (<coeff> <label> @ <config> lines)");
    cmd->add_option(process_flag, o.process, "process word, e.g. \"[U3,U2^2]\"");
    cmd->add_option("--at", o.at, "start configuration for the process (default zero)");
}

Expression resolve_expr(const ExcitationModel& m, const ExprOpts& o) {
    if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) throw ParseError("cannot open expression file '" + o.file + "'");
        return read_expression(m, in);
    }
    if (o.process.empty()) throw ParseError("specify --expr FILE or a process word");
    int a = o.at.empty() ? 0 : parse_config_text(m, o.at);
    return expand_theta(m, parse_process(m, o.process), a).expression;
}

void write_to(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write to '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistics of invertible excitations on finite models"};
    app.require_subcommand(1);

    ModelOpts mo;
    ExprOpts eo;

    CLI::App* compute = app.add_subcommand("compute", "compute T and T_f for a model");
    add_model_opts(compute, mo);
    std::string out_prefix;
    compute->add_option("--out", out_prefix,
                        "write T generator expressions to <prefix>.<i>.txt");

    CLI::App* order = app.add_subcommand(
        "order", "order of an expression: 0 = not invertible, 1 = identity, n = order n");
    add_model_opts(order, mo);
    add_expr_opts(order, eo);

    CLI::App* simplify = app.add_subcommand("simplify", "random norm descent on an expression");
    add_model_opts(simplify, mo);
    add_expr_opts(simplify, eo);
    SimplifyOptions so;
    std::string simplify_out;
    simplify->add_option("--tries", so.tries, "attempts per restart");
    simplify->add_option("--restarts", so.restarts, "independent descents");
    simplify->add_option("--seed", so.seed, "random seed");
    simplify->add_option("--plateau", so.plateau_probability,
                         "probability of accepting equal-norm moves");
    simplify->add_option("--out", simplify_out, "write the simplified expression here");

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "find a process word realizing an expression");
    add_model_opts(reconstruct, mo);
    add_expr_opts(reconstruct, eo);
    std::string base_cfg;
    reconstruct->add_option("--base", base_cfg, "base configuration (default zero)");

    CLI::App* draw = app.add_subcommand("draw", "emit an expression as a DOT graph");
    add_model_opts(draw, mo);
    add_expr_opts(draw, eo);
    std::string draw_out;
    draw->add_option("--out", draw_out, "DOT output file (stdout otherwise)");

    CLI::App* impose =
        app.add_subcommand("impose", "declare processes trivial and report modified orders");
    add_model_opts(impose, mo);
    std::vector<std::string> imposed_words;
    impose->add_option("--process", imposed_words, "process word to impose (repeatable)")
        ->required();
    ExprOpts target;
    impose->add_option("--expr", target.file, "target expression file");
    impose->add_option("--target-process", target.process, "target process word");
    impose->add_option("--at", target.at, "start configuration for --target-process");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) {
            ExcitationModel m = resolve_model(mo);
            StatisticsEngine eng(m);
            bool want_gens = !out_prefix.empty();
            StatisticsResult r = eng.compute_T(want_gens);
            std::cout << statistics_report(model_desc(mo), r);
            for (std::size_t i = 0; i < r.generators.size(); ++i) {
                std::string path = out_prefix + "." + std::to_string(i + 1) + ".txt";
                std::ostringstream text;
                write_expression(m, r.generators[i], text);
                write_to(path, text.str());
                std::cout << "generator_" << i + 1 << ": " << path << '\n';
            }
        } else if (order->parsed()) {
            ExcitationModel m = resolve_model(mo);
            StatisticsEngine eng(m);
            std::cout << eng.order_of_expression(resolve_expr(m, eo)) << '\n';
        } else if (simplify->parsed()) {
            ExcitationModel m = resolve_model(mo);
            StatisticsEngine eng(m);
            Expression e = resolve_expr(m, eo);
            Expression best = simplify_randomly(eng, e, so);
            std::cout << "norm_before: " << norm1(e) << '\n';
            std::cout << "norm_after: " << norm1(best) << '\n';
            std::ostringstream text;
            write_expression(m, best, text);
            if (simplify_out.empty())
                std::cout << text.str();
            else
                write_to(simplify_out, text.str());
        } else if (reconstruct->parsed()) {
            ExcitationModel m = resolve_model(mo);
            int base = base_cfg.empty() ? 0 : parse_config_text(m, base_cfg);
            ProcessWord w = reconstruct_process(m, resolve_expr(m, eo), base);
            std::cout << "length: " << w.length() << '\n';
            std::cout << process_text(m, w) << '\n';
        } else if (draw->parsed()) {
            ExcitationModel m = resolve_model(mo);
            std::string dot = emit_dot(m, resolve_expr(m, eo));
            if (draw_out.empty())
                std::cout << dot;
            else
                write_to(draw_out, dot);
        } else if (impose->parsed()) {
            ExcitationModel m = resolve_model(mo);
            std::vector<ProcessWord> words;
            for (const std::string& w : imposed_words) words.push_back(parse_process(m, w));
            StatisticsEngine ext(m, words);
            if (!target.file.empty() || !target.process.empty()) {
                std::cout << "modified_order: "
                          << ext.order_of_expression(resolve_expr(m, target)) << '\n';
            } else {
                StatisticsEngine base(m);
                StatisticsResult r = base.compute_T(true);
                for (std::size_t i = 0; i < r.generators.size(); ++i)
                    std::cout << "generator_" << i + 1
                              << " order=" << base.order_of_expression(r.generators[i])
                              << " modified_order="
                              << ext.order_of_expression(r.generators[i]) << '\n';
            }
        }
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
