// Command-line front end: analyze matrices and matrix pairs, generate test
// instances from block descriptors, and re-check previously written reports.
//
// Exit codes: 0 success, 1 verification mismatch or internal failure,
// 2 malformed input data, 3 dimension mismatch, 4 tolerance breakdown.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "staircase/staircase.hpp"

namespace {

struct ReportOptions {
    double tol = 1e-10;
    std::string format = "text";
    bool emit_transforms = false;
    std::string output;
};

void add_report_options(CLI::App* cmd, ReportOptions& o) {
    cmd->add_option("--tol", o.tol, "Relative rank tolerance")->capture_default_str();
    cmd->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    cmd->add_flag("--emit-transforms", o.emit_transforms,
                  "Include the accumulated transform matrices in the report");
    cmd->add_option("-o,--output", o.output, "Write the report to this file instead of stdout");
}

void emit_report(const staircase::AnalysisReport& rep, const ReportOptions& o) {
    std::ostringstream body;
    if (o.format == "structured") {
        const nlohmann::json j = rep;
        body << j.dump(2) << '\n';
    } else {
        staircase::render_text(body, rep);
    }
    if (o.output.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(o.output);
        if (!f) throw staircase::Error("cannot open output file: " + o.output);
        f << body.str();
        if (!f) throw staircase::Error("write failed: " + o.output);
    }
}

bool close_enough(double a, double b) {
    return std::abs(a - b) <= 1e-12 + 1e-6 * std::max(std::abs(a), std::abs(b));
}

template <typename T>
bool check_match(const char* what, const T& expected, const T& actual, int& failures) {
    if (expected == actual) return true;
    std::cerr << "verify: mismatch in " << what << '\n';
    ++failures;
    return false;
}

bool check_close(const char* what, double expected, double actual, int& failures) {
    if (close_enough(expected, actual)) return true;
    std::cerr << "verify: " << what << " differs (report " << expected << ", recomputed "
              << actual << ")\n";
    ++failures;
    return false;
}

int run_verify(const std::string& report_path, const std::vector<std::string>& inputs) {
    std::ifstream f(report_path);
    if (!f) throw staircase::ParseError("cannot open file: " + report_path);
    staircase::AnalysisReport expected;
    try {
        expected = nlohmann::json::parse(f).get<staircase::AnalysisReport>();
    } catch (const nlohmann::json::exception& e) {
        throw staircase::ParseError(std::string("report: ") + e.what());
    }

    staircase::AnalysisReport actual;
    if (expected.kind == staircase::ProblemKind::consimilarity) {
        if (inputs.size() != 1)
            throw staircase::ParseError("verify: consimilarity reports take one input matrix");
        actual = staircase::analyze_consim(staircase::read_matrix_file(inputs[0]),
                                           expected.tolerance_used);
    } else {
        if (inputs.size() != 2)
            throw staircase::ParseError("verify: pair reports take two input matrices");
        actual = staircase::analyze_pair(
            staircase::MatrixPair(staircase::read_matrix_file(inputs[0]),
                                  staircase::read_matrix_file(inputs[1])),
            expected.tolerance_used);
    }

    int failures = 0;
    check_match("r_seq", expected.r_seq, actual.r_seq, failures);
    check_match("jordan_multiplicities", expected.jordan_multiplicities,
                actual.jordan_multiplicities, failures);
    check_match("kl_first", expected.kl_first, actual.kl_first, failures);
    check_match("kl_second", expected.kl_second, actual.kl_second, failures);
    check_match("fg", expected.fg, actual.fg, failures);
    check_match("ji", expected.ji, actual.ji, failures);
    check_match("fgt", expected.fgt, actual.fgt, failures);
    check_match("ij", expected.ij, actual.ij, failures);
    check_match("regular_rows", expected.regular_rows, actual.regular_rows, failures);
    check_match("regular_cols", expected.regular_cols, actual.regular_cols, failures);
    check_close("residual", expected.residual, actual.residual, failures);
    check_close("transform unitarity defect", expected.transform_unitarity_defect,
                actual.transform_unitarity_defect, failures);
    if (failures > 0) {
        std::cerr << "verify: " << failures << " mismatch(es)\n";
        return 1;
    }
    std::cout << "verify: report is consistent with the input\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularizing decompositions of complex matrices (consimilarity) and "
                 "matrix pairs (mixed equivalence) by unitary staircase deflation"};
    app.require_subcommand(1);
    int verify_exit = 0;

    // analyze-consim
    auto* ac = app.add_subcommand("analyze-consim",
                                  "Decompose a square matrix under consimilarity");
    std::string ac_input;
    ReportOptions ac_opt;
    ac->add_option("input", ac_input, "Matrix file (native or Matrix Market array)")
        ->required();
    add_report_options(ac, ac_opt);
    ac->callback([&] {
        const staircase::ComplexMatrix a = staircase::read_matrix_file(ac_input);
        emit_report(staircase::analyze_consim(a, staircase::Tolerance::relative(ac_opt.tol),
                                              ac_opt.emit_transforms),
                    ac_opt);
    });

    // analyze-pair
    auto* ap = app.add_subcommand("analyze-pair",
                                  "Decompose a matrix pair under mixed equivalence");
    std::string ap_first, ap_second;
    ReportOptions ap_opt;
    ap->add_option("first", ap_first, "First matrix file")->required();
    ap->add_option("second", ap_second, "Second matrix file")->required();
    add_report_options(ap, ap_opt);
    ap->callback([&] {
        const staircase::MatrixPair p(staircase::read_matrix_file(ap_first),
                                      staircase::read_matrix_file(ap_second));
        emit_report(staircase::analyze_pair(p, staircase::Tolerance::relative(ap_opt.tol),
                                            ap_opt.emit_transforms),
                    ap_opt);
    });

    // generate
    auto* gen = app.add_subcommand(
        "generate", "Assemble (and optionally scramble) an instance from a block descriptor");
    std::string gen_descriptor;
    std::vector<std::string> gen_outputs;
    std::uint64_t gen_seed = 0;
    std::string gen_scramble = "none";
    double gen_cond = 10.0;
    gen->add_option("descriptor", gen_descriptor, "Descriptor JSON file")->required();
    gen->add_option("outputs", gen_outputs,
                    "Output matrix file(s): one for consimilarity, two for pairs")
        ->required()
        ->expected(1, 2);
    gen->add_option("--seed", gen_seed, "Scramble seed")->capture_default_str();
    gen->add_option("--scramble", gen_scramble, "Transform class")
        ->check(CLI::IsMember({"none", "unitary", "general"}))
        ->capture_default_str();
    gen->add_option("--cond", gen_cond, "Condition bound for general transforms")
        ->capture_default_str();
    gen->callback([&] {
        const staircase::DecompositionDescriptor d =
            staircase::read_descriptor(gen_descriptor);
        staircase::testgen::ScrambleSpec spec;
        spec.seed = gen_seed;
        spec.transform_kind = gen_scramble == "general"
                                  ? staircase::testgen::TransformKind::general
                                  : staircase::testgen::TransformKind::unitary;
        spec.condition_bound = gen_cond;
        if (d.kind == staircase::ProblemKind::consimilarity) {
            if (gen_outputs.size() != 1)
                throw staircase::ParseError(
                    "generate: consimilarity descriptors write one matrix file");
            staircase::ComplexMatrix a = staircase::assemble_matrix(d);
            if (gen_scramble != "none") a = staircase::testgen::scramble_consim(a, spec);
            staircase::write_matrix_file(gen_outputs[0], a);
        } else {
            if (gen_outputs.size() != 2)
                throw staircase::ParseError("generate: pair descriptors write two matrix files");
            staircase::MatrixPair p = staircase::assemble_pair(d);
            if (gen_scramble != "none") p = staircase::testgen::scramble_pair(p, spec);
            staircase::write_matrix_file(gen_outputs[0], p.first);
            staircase::write_matrix_file(gen_outputs[1], p.second);
        }
    });

    // verify
    auto* ver = app.add_subcommand(
        "verify", "Re-run an analysis and check it against a structured report");
    std::string ver_report;
    std::vector<std::string> ver_inputs;
    ver->add_option("report", ver_report, "Structured report JSON file")->required();
    ver->add_option("inputs", ver_inputs, "Input matrix file(s)")->required()->expected(1, 2);
    ver->callback([&] { verify_exit = run_verify(ver_report, ver_inputs); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const staircase::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const staircase::InvalidValueError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const staircase::DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const staircase::ToleranceBreakdown& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return verify_exit;
}
