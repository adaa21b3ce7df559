#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwm/closures.hpp"
#include "hwm/crosswords.hpp"
#include "hwm/encodings.hpp"
#include "hwm/engines.hpp"
#include "hwm/error.hpp"
#include "hwm/json_io.hpp"
#include "hwm/selftest.hpp"
#include "hwm/tiling.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw hwm::Error(hwm::ErrorCode::SchemaError, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw hwm::Error(hwm::ErrorCode::SchemaError, "cannot write '" + path + "'");
    out << bytes;
}

std::string display_value(hwm::Complex v, double tolerance) {
    std::ostringstream out;
    out.precision(12);
    if (std::abs(v.imag()) <= tolerance * std::max(1.0, std::abs(v))) {
        out << v.real();
    } else {
        out << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    }
    return out.str();
}

json complex_json(hwm::Complex v) { return json{{"im", v.imag()}, {"re", v.real()}}; }

std::uint64_t seed_from_env(std::uint64_t fallback) {
    if (const char* env = std::getenv("HWM_SEED")) return std::strtoull(env, nullptr, 10);
    return fallback;
}

struct CommonOptions {
    hwm::RunConfig config;

    void attach(CLI::App* cmd) {
        cmd->add_option("--budget", config.term_budget, "max enumerated terms");
        cmd->add_option("--intermediate-budget", config.intermediate_budget,
                        "max intermediate tensor entries");
        cmd->add_option("--tolerance", config.tolerance, "comparison tolerance");
        cmd->add_option("--workers", config.workers, "parallel workers");
        cmd->add_option("--seed", config.seed, "rng seed (HWM_SEED overrides)");
    }

    hwm::RunConfig resolved() const {
        hwm::RunConfig out = config;
        out.seed = seed_from_env(out.seed);
        return out;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergraph weighted models: evaluation, encodings, closures, tilings"};
    app.require_subcommand(1);

    std::string model_path, graph_path, template_path, input_text, output_path;
    std::string a_path, b_path, engine_name = "auto";
    std::vector<std::string> file_args;
    double tiling_value = 1.0;
    int bench_iterations = 10;
    CommonOptions common;

    // validate -------------------------------------------------------------
    auto* cmd_validate = app.add_subcommand("validate", "check a graph or model document");
    cmd_validate->add_option("file", graph_path, "document path")->required();

    // eval -----------------------------------------------------------------
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a model on a graph");
    cmd_eval->add_option("--model", model_path, "model JSON")->required();
    cmd_eval->add_option("--graph", graph_path, "graph JSON")->required();
    cmd_eval->add_option("--engine", engine_name, "auto|naive|support|factored|gamma_id");
    cmd_eval->add_option("-o,--output", output_path, "output path (default stdout)");
    common.attach(cmd_eval);

    // encode ---------------------------------------------------------------
    auto* cmd_encode = app.add_subcommand("encode", "encode text into a hypergraph");
    cmd_encode->require_subcommand(1);
    std::map<std::string, CLI::App*> encoders;
    for (const char* kind : {"string", "bare", "tree", "circular", "rooted", "anbn",
                             "crossword"}) {
        auto* sub = cmd_encode->add_subcommand(kind);
        sub->add_option("--input", input_text,
                        kind == std::string("crossword") ? "crossword file (or -)"
                                                         : "input text")
            ->required();
        sub->add_option("-o,--output", output_path, "output path (default stdout)");
        encoders[kind] = sub;
    }

    // lift -----------------------------------------------------------------
    auto* cmd_lift = app.add_subcommand("lift", "lift a linear representation into a model");
    cmd_lift->require_subcommand(1);
    std::map<std::string, CLI::App*> lifts;
    for (const char* kind : {"string", "bare", "tree", "circular", "rooted"}) {
        auto* sub = cmd_lift->add_subcommand(kind);
        sub->add_option("--rep", model_path, "representation JSON")->required();
        sub->add_option("-o,--output", output_path, "output path (default stdout)");
        if (kind == std::string("bare")) common.attach(sub);
        lifts[kind] = sub;
    }

    // closures ----------------------------------------------------------------
    auto* cmd_sum = app.add_subcommand("sum", "block-diagonal sum of two models");
    cmd_sum->add_option("a", a_path)->required();
    cmd_sum->add_option("b", b_path)->required();
    cmd_sum->add_option("-o,--output", output_path, "output path (default stdout)");

    auto* cmd_hadamard = app.add_subcommand("hadamard", "Kronecker product of two models");
    cmd_hadamard->add_option("a", a_path)->required();
    cmd_hadamard->add_option("b", b_path)->required();
    cmd_hadamard->add_option("-o,--output", output_path, "output path (default stdout)");

    auto* cmd_normalize =
        app.add_subcommand("normalize", "identity-product form of a real model");
    cmd_normalize->add_option("a", a_path)->required();
    cmd_normalize->add_option("-o,--output", output_path, "output path (default stdout)");
    common.attach(cmd_normalize);

    // crossword ---------------------------------------------------------------
    auto* cmd_crossword = app.add_subcommand("crossword", "crossword model constructions");
    cmd_crossword->require_subcommand(1);
    auto* cw_combine = cmd_crossword->add_subcommand("combine");
    cw_combine->add_option("--a", a_path, "horizontal model JSON")->required();
    cw_combine->add_option("--b", b_path, "vertical model JSON")->required();
    cw_combine->add_option("-o,--output", output_path, "output path (default stdout)");
    auto* cw_rowcol = cmd_crossword->add_subcommand("rowcol");
    cw_rowcol->add_option("--a", a_path, "row representation JSON")->required();
    cw_rowcol->add_option("--b", b_path, "column representation JSON")->required();
    cw_rowcol->add_option("-o,--output", output_path, "output path (default stdout)");
    common.attach(cw_rowcol);

    // tiling --------------------------------------------------------------------
    auto* cmd_tiling = app.add_subcommand("tiling", "tiling detection and models");
    cmd_tiling->require_subcommand(1);
    auto* tiling_build = cmd_tiling->add_subcommand("build", "tiling-indicator model");
    tiling_build->add_option("template", template_path, "template graph JSON")->required();
    auto* value_opt =
        tiling_build->add_option("--value", tiling_value, "rescale the self-value to this");
    tiling_build->add_option("-o,--output", output_path, "output path (default stdout)");
    auto* tiling_check = cmd_tiling->add_subcommand("check", "is G a tiling of the template?");
    tiling_check->add_option("graph", graph_path)->required();
    tiling_check->add_option("template", template_path)->required();
    auto* tiling_count = cmd_tiling->add_subcommand("count", "number of tiling maps");
    tiling_count->add_option("graph", graph_path)->required();
    tiling_count->add_option("template", template_path)->required();
    auto* tiling_free = cmd_tiling->add_subcommand("free", "is the family tiling-free?");
    tiling_free->add_option("files", file_args, "graph JSON files")->required();

    // selftest / bench ---------------------------------------------------------
    auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance criteria");
    common.attach(cmd_selftest);

    auto* cmd_bench = app.add_subcommand("bench", "time an evaluation");
    cmd_bench->add_option("--model", model_path)->required();
    cmd_bench->add_option("--graph", graph_path)->required();
    cmd_bench->add_option("--engine", engine_name, "auto|naive|support|factored|gamma_id");
    cmd_bench->add_option("--iterations", bench_iterations, "repetitions");
    common.attach(cmd_bench);

    CLI11_PARSE(app, argc, argv);

    try {
        const hwm::RunConfig config = common.resolved();

        if (cmd_validate->parsed()) {
            const std::string bytes = read_file(graph_path);
            json probe = json::parse(bytes, nullptr, false);
            const bool is_model = probe.is_object() && probe.contains("tensors");
            if (is_model) {
                hwm::parse_model(bytes);
                std::cout << "model: ok\n";
            } else {
                hwm::parse_graph(bytes);
                std::cout << "graph: ok\n";
            }
            return 0;
        }

        if (cmd_eval->parsed() || cmd_bench->parsed()) {
            hwm::HWM model = hwm::parse_model(read_file(model_path));
            hwm::Hypergraph graph = hwm::parse_graph(read_file(graph_path));
            hwm::Engine engine = hwm::engine_from_name(engine_name);
            if (cmd_eval->parsed()) {
                hwm::EvalResult result = hwm::eval(model, graph, engine, config);
                json out{{"engine", hwm::engine_name(result.engine)},
                         {"terms", result.terms},
                         {"value", complex_json(result.value)},
                         {"display", display_value(result.value, config.tolerance)}};
                write_output(output_path, out.dump(2) + "\n");
            } else {
                auto start = std::chrono::steady_clock::now();
                hwm::EvalResult result{};
                for (int i = 0; i < bench_iterations; ++i)
                    result = hwm::eval(model, graph, engine, config);
                double seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
                json out{{"engine", hwm::engine_name(result.engine)},
                         {"iterations", bench_iterations},
                         {"seconds_per_eval", seconds / bench_iterations},
                         {"terms", result.terms},
                         {"value", complex_json(result.value)}};
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }

        if (cmd_encode->parsed()) {
            hwm::Hypergraph g;
            if (encoders["string"]->parsed()) {
                g = hwm::encode_string(hwm::word_from_chars(input_text));
            } else if (encoders["bare"]->parsed()) {
                g = hwm::encode_string_bare(hwm::word_from_chars(input_text));
            } else if (encoders["tree"]->parsed()) {
                g = hwm::encode_tree(hwm::parse_tree(input_text));
            } else if (encoders["circular"]->parsed()) {
                g = hwm::encode_circular(hwm::word_from_chars(input_text));
            } else if (encoders["rooted"]->parsed()) {
                g = hwm::encode_rooted_circular(hwm::word_from_chars(input_text));
            } else if (encoders["anbn"]->parsed()) {
                g = hwm::encode_anbn_graph(hwm::word_from_chars(input_text));
            } else {
                g = hwm::encode_crossword(hwm::parse_crossword(read_file(input_text)));
            }
            hwm::validate_hypergraph(g);
            write_output(output_path, hwm::emit_graph(g));
            return 0;
        }

        if (cmd_lift->parsed()) {
            hwm::HWM m;
            const std::string bytes = read_file(model_path);
            if (lifts["string"]->parsed()) {
                m = hwm::lift_string_series(hwm::parse_string_rep(bytes));
            } else if (lifts["bare"]->parsed()) {
                m = hwm::lift_string_series_iota_eq_tau(hwm::parse_string_rep(bytes),
                                                        config.seed);
            } else if (lifts["tree"]->parsed()) {
                m = hwm::lift_tree_series(hwm::parse_tree_rep(bytes));
            } else if (lifts["circular"]->parsed()) {
                m = hwm::circular_trace_hwm(hwm::parse_matrix_family(bytes));
            } else {
                m = hwm::rooted_circular_hwm(hwm::parse_rooted_rep(bytes));
            }
            write_output(output_path, hwm::emit_model(m));
            return 0;
        }

        if (cmd_sum->parsed()) {
            hwm::HWM a = hwm::parse_model(read_file(a_path));
            hwm::HWM b = hwm::parse_model(read_file(b_path));
            std::cerr << "note: the sum model computes r_A + r_B on connected graphs; "
                         "on a disconnected graph the value is not the sum\n";
            write_output(output_path, hwm::emit_model(hwm::hwm_sum(a, b)));
            return 0;
        }
        if (cmd_hadamard->parsed()) {
            hwm::HWM a = hwm::parse_model(read_file(a_path));
            hwm::HWM b = hwm::parse_model(read_file(b_path));
            write_output(output_path, hwm::emit_model(hwm::hwm_hadamard(a, b)));
            return 0;
        }
        if (cmd_normalize->parsed()) {
            hwm::HWM a = hwm::parse_model(read_file(a_path));
            write_output(output_path,
                         hwm::emit_model(hwm::normalize_closed_graph(a, config.tolerance)));
            return 0;
        }

        if (cmd_crossword->parsed()) {
            if (cw_combine->parsed()) {
                hwm::HWM a = hwm::parse_model(read_file(a_path));
                hwm::HWM b = hwm::parse_model(read_file(b_path));
                write_output(output_path, hwm::emit_model(hwm::crossword_combine_hwm(a, b)));
            } else {
                hwm::StringLinearRep a = hwm::parse_string_rep(read_file(a_path));
                hwm::StringLinearRep b = hwm::parse_string_rep(read_file(b_path));
                write_output(output_path,
                             hwm::emit_model(hwm::crossword_row_col_hwm(a, b, config.seed)));
            }
            return 0;
        }

        if (cmd_tiling->parsed()) {
            if (tiling_build->parsed()) {
                hwm::Hypergraph t = hwm::parse_graph(read_file(template_path));
                hwm::HWM m = value_opt->count()
                                 ? hwm::scaled_tiling_hwm(t, hwm::Complex(tiling_value), config)
                                 : hwm::tiling_hwm(t);
                write_output(output_path, hwm::emit_model(m));
            } else if (tiling_check->parsed() || tiling_count->parsed()) {
                hwm::Hypergraph g = hwm::parse_graph(read_file(graph_path));
                hwm::Hypergraph t = hwm::parse_graph(read_file(template_path));
                hwm::TilingReport report = hwm::find_tilings(g, t);
                json out{{"count", report.maps.size()},
                         {"is_tiling", !report.maps.empty()}};
                if (!report.maps.empty()) {
                    out["fiber_sizes"] = report.fiber_sizes;
                    out["first_map"] = report.maps.front().f;
                }
                std::cout << out.dump(2) << "\n";
            } else {
                std::vector<hwm::Hypergraph> family;
                for (const auto& path : file_args)
                    family.push_back(hwm::parse_graph(read_file(path)));
                hwm::TilingFreeReport report = hwm::is_tiling_free(family);
                json out{{"tiling_free", report.tiling_free}};
                if (report.witness) {
                    out["witness"] = {{"tiled", report.witness->tiled_index},
                                      {"template", report.witness->template_index},
                                      {"map", report.witness->map.f}};
                }
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }

        if (cmd_selftest->parsed()) {
            hwm::RunConfig selftest_config = config;
            if (cmd_selftest->count("--workers") == 0)
                selftest_config.workers = std::max(
                    1, std::min(4, static_cast<int>(std::thread::hardware_concurrency())));
            hwm::SelftestReport report = hwm::run_selftest(selftest_config);
            return hwm::print_selftest_report(report, std::cout) ? 0 : 1;
        }
    } catch (const hwm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    }
    return 0;
}
