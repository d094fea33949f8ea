// Command-line front end: every operation of the engine behind one binary.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tmfres/bar.hpp"
#include "tmfres/brown_gitler.hpp"
#include "tmfres/decomposition.hpp"
#include "tmfres/resolution.hpp"
#include "tmfres/verify.hpp"

using namespace tmfres;

namespace {

RingId ring_from_flag(const std::string& r)
{
    if (r == "R")
        return RingId::R;
    if (r == "Rp" || r == "R'")
        return RingId::RPrime;
    throw CLI::ValidationError("--ring must be R or Rp");
}

Locality locality_from_flag(const std::string& l)
{
    if (l == "v2")
        return Locality::V2;
    if (l == "g")
        return Locality::G;
    throw CLI::ValidationError("--locality must be v2 or g");
}

std::string element_json(const RingElement& e)
{
    std::ostringstream os;
    os << "{\"ring\":\"" << ring_name(e.ring()) << "\",\"terms\":[";
    bool first = true;
    for (auto& [m, c] : serialize_terms(e)) {
        if (!first)
            os << ',';
        first = false;
        os << "{\"gen\":\"" << gen_name(m.gen) << "\",\"s\":" << m.s_exp
           << ",\"t\":" << m.t_exp << ",\"c\":" << c << '}';
    }
    os << "]}";
    return os.str();
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError(errc::parse_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// module arguments: a Bruner file path, or std:NAME[^shift] with NAME from
// bo<j>, tmf<j>, a2a1, m1, dualbo1, bo1sq, regular, f2.
CompiledModule load_module(const std::string& arg)
{
    if (arg.rfind("std:", 0) != 0)
        return CompiledModule(parse_bruner(slurp(arg)));
    std::string name = arg.substr(4);
    int shift = 0;
    if (auto caret = name.find('^'); caret != std::string::npos) {
        shift = std::stoi(name.substr(caret + 1));
        name = name.substr(0, caret);
    }
    CompiledModule m;
    if (name == "f2")
        m = build_standard(StandardModule::BO, 0);
    else if (name.rfind("bo", 0) == 0 && name != "bo1sq")
        m = build_standard(StandardModule::BO, unsigned(std::stoul(name.substr(2))));
    else if (name.rfind("tmf", 0) == 0)
        m = build_standard(StandardModule::TMF, unsigned(std::stoul(name.substr(3))));
    else if (name == "a2a1")
        m = build_standard(StandardModule::A2modA1);
    else if (name == "m1")
        m = build_standard(StandardModule::M1);
    else if (name == "dualbo1")
        m = build_standard(StandardModule::DualBO1);
    else if (name == "bo1sq") {
        CompiledModule bo1 = build_standard(StandardModule::BO, 1);
        m = tensor(bo1, bo1);
    } else if (name == "regular")
        m = build_standard(StandardModule::Regular);
    else
        throw DomainError(errc::parse_error, "unknown builtin module " + arg);
    return shift ? suspend(m, shift) : m;
}

void print_report(const DecompositionReport& r, const std::string& format)
{
    if (format == "json") {
        std::cout << report_to_json(r) << "\n";
        return;
    }
    std::cout << r.source << " (" << locality_name(r.locality) << "):\n";
    for (auto& s : r.summands) {
        std::cout << "  ";
        if (s.multiplicity != 1)
            std::cout << s.multiplicity << " x ";
        std::cout << "Sigma^{" << s.internal_shift << "," << s.filtration_shift << "} "
                  << kind_name(s.kind) << "\n";
    }
    if (r.summands.empty())
        std::cout << "  0\n";
}

int run_verify(const std::string& data, bool tables, bool remark54, bool appendix,
               bool oracle, bool all)
{
    std::vector<CheckResult> results;
    auto append = [&](std::vector<CheckResult> v) {
        for (auto& r : v)
            results.push_back(std::move(r));
    };
    if (all || (!tables && !remark54 && !appendix && !oracle)) {
        append(verify_all(data));
    } else {
        if (tables)
            append(verify_tables(data));
        if (remark54) {
            append(verify_remark54());
            append(verify_series_oracle());
            append(verify_structural());
            append(verify_duality());
        }
        if (appendix)
            append(verify_appendix(data));
        if (oracle) {
            append(verify_ext_oracle(14, 12));
            append(verify_census(64));
        }
    }
    int failures = 0;
    for (auto& r : results) {
        std::printf("%-4s %s (%.2fs)\n", r.pass ? "ok" : "FAIL", r.name.c_str(), r.seconds);
        if (!r.detail.empty())
            std::printf("%s", r.detail.c_str());
        if (!r.pass)
            ++failures;
    }
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact decompositions of the localized algebraic tmf resolution"};
    app.require_subcommand(1);

    std::string format = "text", ring_flag = "R", locality_flag = "v2";
    std::string data_dir = default_data_dir();

    // reduce
    auto* reduce = app.add_subcommand("reduce", "normalize a ring expression");
    std::string expr;
    reduce->add_option("expr", expr, "expression, e.g. \"x^3\"")->required();
    reduce->add_option("--ring", ring_flag, "R or Rp");
    reduce->add_option("--format", format, "text or json");

    // bgpoly
    auto* bgpoly = app.add_subcommand("bgpoly", "Brown-Gitler polynomial f_j");
    unsigned bg_j = 0;
    bool glocal = false;
    bgpoly->add_option("j", bg_j, "index")->required();
    bgpoly->add_flag("--glocal", glocal, "compute f'_j in R'");
    bgpoly->add_option("--format", format, "text or json");

    // powers
    auto* powers = app.add_subcommand("powers", "reduced x^k table");
    unsigned kmax = 3;
    powers->add_option("kmax", kmax, "largest power")->required();

    // decompose
    auto* decompose = app.add_subcommand("decompose", "summand decomposition");
    long bo_j = -1, power_k = -1;
    decompose->add_option("--bo", bo_j, "decompose bo_j");
    decompose->add_option("--power", power_k, "decompose bo_1^k");
    decompose->add_option("--locality", locality_flag, "v2 or g");
    decompose->add_option("--format", format, "text or json");

    // tmfbar
    auto* tmfbar = app.add_subcommand("tmfbar", "weight summands of tmfbar^n");
    unsigned tb_n = 1, tb_jmax = 1;
    tmfbar->add_option("n", tb_n, "tensor power")->required();
    tmfbar->add_option("--jmax", tb_jmax, "largest weight/8")->required();
    tmfbar->add_option("--locality", locality_flag, "v2 or g");
    tmfbar->add_option("--format", format, "text or json");

    // dual
    auto* dual_cmd = app.add_subcommand("dual", "dualize an element or report");
    std::string dual_what;
    dual_cmd->add_option("what", dual_what, "element or report")->required();
    std::string dual_expr;
    dual_cmd->add_option("expr", dual_expr, "expression (element mode)");
    long dual_bo = -1, dual_power = -1;
    dual_cmd->add_option("--bo", dual_bo, "report of bo_j");
    dual_cmd->add_option("--power", dual_power, "report of bo_1^k");
    dual_cmd->add_option("--ring", ring_flag, "R or Rp");
    dual_cmd->add_option("--locality", locality_flag, "v2 or g");
    dual_cmd->add_option("--format", format, "text or json");

    // module
    auto* module_cmd = app.add_subcommand("module", "Steenrod module operations");
    std::string mod_op;
    std::vector<std::string> mod_files;
    std::string margolis_flag = "Q0";
    module_cmd->add_option("op", mod_op, "parse|validate|tensor|margolis|ses|iso")
        ->required();
    module_cmd->add_option("files", mod_files, "module files or std:NAME[^shift]");
    module_cmd->add_option("--op-name", margolis_flag, "Q0|Q1|Q2|P21")
        ->group("margolis");
    module_cmd->add_option("--margolis-op", margolis_flag, "Q0|Q1|Q2|P21");

    // ext
    auto* ext_cmd = app.add_subcommand("ext", "minimal-resolution Ext chart");
    std::string ext_file;
    int smax = 8, tmax = 20;
    std::string chart_out;
    ext_cmd->add_option("module", ext_file, "module file or std:NAME")->required();
    ext_cmd->add_option("--smax", smax, "top filtration")->required();
    ext_cmd->add_option("--tmax", tmax, "top internal degree")->required();
    ext_cmd->add_option("--chart", chart_out, "write chart to this file");
    ext_cmd->add_option("--format", format, "text, csv or svg");
    bool ext_dump = false;
    ext_cmd->add_flag("--dump", ext_dump, "print the resolution differentials");
    bool ext_bar = false;
    ext_cmd->add_flag("--bar-oracle", ext_bar, "cross-check against the bar complex");

    // census
    auto* census_cmd = app.add_subcommand("census", "g-local census of tmf^n");
    unsigned census_n = 1;
    int weight_max = 64;
    census_cmd->add_option("--n", census_n, "tensor power")->required();
    census_cmd->add_option("--weight-max", weight_max, "largest weight")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "paper-reproduction suite");
    bool v_tables = false, v_remark = false, v_appendix = false, v_oracle = false,
         v_all = false;
    verify_cmd->add_flag("--tables", v_tables, "x^k and f_j tables");
    verify_cmd->add_flag("--remark54", v_remark, "splittings, series, duality");
    verify_cmd->add_flag("--appendix", v_appendix, "module fixtures and idempotents");
    verify_cmd->add_flag("--oracle", v_oracle, "resolver vs bar complex (small windows)");
    verify_cmd->add_flag("--all", v_all, "everything at acceptance windows");
    verify_cmd->add_option("--data-dir", data_dir, "repo root with tables/ and fixtures/");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(reduce)) {
            RingElement e = normalize(parse_element(expr), ring_from_flag(ring_flag));
            std::cout << (format == "json" ? element_json(e) : format_element(e)) << "\n";
        } else if (app.got_subcommand(bgpoly)) {
            RingElement f = glocal ? bg_poly_gloc(bg_j) : bg_poly(bg_j);
            std::cout << (format == "json" ? element_json(f) : format_element(f)) << "\n";
        } else if (app.got_subcommand(powers)) {
            if (kmax < 3)
                throw DomainError(errc::window_too_small, "kmax must be at least 3");
            for (auto& [k, e] : power_table(kmax))
                std::cout << "x^" << k << " = " << format_element(e) << "\n";
        } else if (app.got_subcommand(decompose)) {
            Locality loc = locality_from_flag(locality_flag);
            if ((bo_j < 0) == (power_k < 0))
                throw DomainError(errc::parse_error, "need exactly one of --bo or --power");
            DecompositionReport r = bo_j >= 0 ? decompose_bo(unsigned(bo_j), loc)
                                              : decompose_power(unsigned(power_k), loc);
            print_report(r, format);
        } else if (app.got_subcommand(tmfbar)) {
            Locality loc = locality_from_flag(locality_flag);
            for (auto& [j, r] : tmfbar_series(tb_n, tb_jmax, loc))
                print_report(r, format);
        } else if (app.got_subcommand(dual_cmd)) {
            if (dual_what == "element") {
                if (dual_expr.empty())
                    throw DomainError(errc::parse_error, "dual element needs an expression");
                RingElement e =
                    dualize(normalize(parse_element(dual_expr), ring_from_flag(ring_flag)));
                std::cout << (format == "json" ? element_json(e) : format_element(e))
                          << "\n";
            } else if (dual_what == "report") {
                Locality loc = locality_from_flag(locality_flag);
                if ((dual_bo < 0) == (dual_power < 0))
                    throw DomainError(errc::parse_error,
                                      "need exactly one of --bo or --power");
                DecompositionReport r = dual_bo >= 0
                                            ? decompose_bo(unsigned(dual_bo), loc)
                                            : decompose_power(unsigned(dual_power), loc);
                print_report(dualize_report(r), format);
            } else {
                throw DomainError(errc::parse_error, "dual expects 'element' or 'report'");
            }
        } else if (app.got_subcommand(module_cmd)) {
            if (mod_op == "parse") {
                for (auto& f : mod_files)
                    std::cout << emit_bruner(load_module(f));
            } else if (mod_op == "validate") {
                bool all_valid = true;
                for (auto& f : mod_files) {
                    if (f.rfind("std:", 0) == 0) {
                        std::cout << f << ": builtin, valid by construction\n";
                        continue;
                    }
                    auto rep = validate_module(parse_bruner(slurp(f)));
                    std::cout << f << ": " << (rep.valid ? "valid" : "INVALID") << "\n";
                    for (auto& v : rep.violations)
                        std::cout << "  " << v << "\n";
                    all_valid = all_valid && rep.valid;
                }
                return all_valid ? 0 : 1;
            } else if (mod_op == "tensor") {
                if (mod_files.size() != 2)
                    throw DomainError(errc::parse_error, "tensor needs two modules");
                std::cout << emit_bruner(tensor(load_module(mod_files[0]),
                                                load_module(mod_files[1])));
            } else if (mod_op == "margolis") {
                if (mod_files.size() != 1)
                    throw DomainError(errc::parse_error, "margolis needs one module");
                MargolisOp op = margolis_flag == "Q0"   ? MargolisOp::Q0
                                : margolis_flag == "Q1" ? MargolisOp::Q1
                                : margolis_flag == "Q2" ? MargolisOp::Q2
                                                        : MargolisOp::P21;
                for (auto& [d, k] : margolis_homology(load_module(mod_files[0]), op))
                    std::cout << d << " " << k << "\n";
            } else if (mod_op == "ses") {
                if (mod_files.size() != 3)
                    throw DomainError(errc::parse_error, "ses needs three modules");
                auto rep = find_ses(load_module(mod_files[0]), load_module(mod_files[1]),
                                    load_module(mod_files[2]));
                if (rep.found) {
                    std::cout << "found\n";
                } else {
                    std::cout << "not found\n" << rep.detail;
                    return 1;
                }
            } else if (mod_op == "iso") {
                if (mod_files.size() != 2)
                    throw DomainError(errc::parse_error, "iso needs two modules");
                bool ok = iso_test(load_module(mod_files[0]), load_module(mod_files[1]))
                              .has_value();
                std::cout << (ok ? "isomorphic" : "not isomorphic") << "\n";
                return ok ? 0 : 1;
            } else {
                throw DomainError(errc::parse_error, "unknown module op " + mod_op);
            }
        } else if (app.got_subcommand(ext_cmd)) {
            CompiledModule m = load_module(ext_file);
            MinimalResolution res(m, smax, tmax);
            ExtChart chart = res.chart();
            if (ext_bar) {
                auto bar = bar_oracle(m, tmax);
                for (int s = 0; s <= tmax; ++s)
                    for (int t = 0; t <= tmax; ++t) {
                        auto it = bar.find({s, t});
                        int want = it == bar.end() ? 0 : it->second;
                        if (s <= smax && chart.dim(s, t) != want)
                            throw DomainError(errc::not_exterior,
                                              "bar oracle disagrees at s=" +
                                                  std::to_string(s) +
                                                  " t=" + std::to_string(t));
                    }
                std::cout << "bar oracle agrees on the window\n";
            }
            ChartFormat fmt = format == "csv"   ? ChartFormat::Csv
                              : format == "svg" ? ChartFormat::Svg
                                                : ChartFormat::Text;
            std::string doc = chart_emit(chart, fmt);
            if (!chart_out.empty()) {
                std::ofstream out(chart_out);
                out << doc;
            } else {
                std::cout << doc;
            }
            if (ext_dump)
                std::cout << resolution_dump(res);
        } else if (app.got_subcommand(census_cmd)) {
            Window w{-40, 100, 0, 12, 24, 2};
            std::cout << series_to_csv(census_bbt(census_n, w, weight_max));
        } else if (app.got_subcommand(verify_cmd)) {
            return run_verify(data_dir, v_tables, v_remark, v_appendix, v_oracle, v_all);
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
