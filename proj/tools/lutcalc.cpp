#include <fnmatch.h>

#include <CLI11.hpp>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "lutcalc/builtins.hpp"
#include "lutcalc/report.hpp"

using namespace lutcalc;

namespace {

struct Globals {
    long long max_cosets = Budget{}.max_cosets;
    int max_depth = Budget{}.max_depth;
    std::string format = "text";
    std::vector<std::string> params;
    long long seed = 0;  // reserved; the engine is deterministic
    unsigned jobs = 1;
    bool timing = false;
};

Budget make_budget(const Globals& g) {
    Budget b;
    b.max_cosets = g.max_cosets;
    b.max_depth = g.max_depth;
    return b;
}

std::map<std::string, long long> parse_overrides(const std::vector<std::string>& kv) {
    std::map<std::string, long long> out;
    for (const auto& s : kv) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad -P '" + s + "', expected key=value");
        out[s.substr(0, eq)] = eval_integer(s.substr(eq + 1), {});
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Overall exit code: any failure wins over unknown.
int combine(int a, int b) {
    if (a == 1 || b == 1) return 1;
    if (a == 2 || b == 2) return 2;
    return 0;
}

int cmd_run(const Globals& g, const std::string& source) {
    auto overrides = parse_overrides(g.params);
    Recipe recipe;
    std::string origin = source;
    if (std::filesystem::is_regular_file(source)) {
        recipe = parse_recipe(read_file(source));
    } else if (find_builtin(source)) {
        recipe = builtin_recipe(source, overrides);
        origin = "builtin";
    } else {
        throw std::runtime_error("'" + source + "' is neither a recipe file nor a built-in recipe");
    }
    RunOptions opt;
    opt.budget = make_budget(g);
    opt.overrides = overrides;
    RunReport rep = run_recipe(recipe, opt);
    if (g.format == "json")
        std::cout << report_json(rep, g.timing).dump(2) << "\n";
    else
        std::cout << report_text(rep);
    return rep.exit_code();
}

int cmd_verify_all(const Globals& g, const std::string& filter) {
    std::vector<const BuiltinRecipe*> chosen;
    for (const auto& b : builtin_recipes())
        if (filter.empty() || fnmatch(filter.c_str(), b.name.c_str(), 0) == 0) chosen.push_back(&b);
    struct Result {
        int code = 1;
        std::string error;
        std::optional<RunReport> report;
        double ms = 0;
    };
    std::vector<Result> results(chosen.size());
    std::atomic<size_t> next{0};
    Budget budget = make_budget(g);
    auto work = [&] {
        for (size_t i = next++; i < chosen.size(); i = next++) {
            auto t0 = std::chrono::steady_clock::now();
            try {
                results[i].report = run_builtin(chosen[i]->name, {}, budget);
                results[i].code = results[i].report->exit_code();
            } catch (const std::exception& e) {
                results[i].error = e.what();
            }
            results[i].ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::max(1u, g.jobs); ++j) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    int code = 0;
    Json doc = Json::array();
    for (size_t i = 0; i < chosen.size(); ++i) {
        const auto& r = results[i];
        code = combine(code, r.code);
        std::string status = r.code == 0 ? "pass" : r.code == 2 ? "unknown" : "fail";
        std::string claim = r.report && r.report->chars.certificate ? claim_name(*r.report->chars.certificate) : "-";
        if (g.format == "json") {
            Json j{{"recipe", chosen[i]->name}, {"status", status}, {"exit_code", r.code}};
            if (g.timing) j["wall_ms"] = static_cast<long long>(r.ms + 0.5);
            if (r.report) j["report"] = report_json(*r.report, g.timing);
            if (!r.error.empty()) j["error"] = r.error;
            doc.push_back(j);
        } else {
            std::printf("%-12s %-8s %9.1f ms  %s\n", chosen[i]->name.c_str(), status.c_str(), r.ms, claim.c_str());
            if (!r.error.empty()) std::cerr << chosen[i]->name << ": " << r.error << "\n";
            if (r.report)
                for (const auto& a : r.report->assertions)
                    if (a.outcome != Outcome::Pass)
                        std::printf("    %s %s %s (observed %s)\n", outcome_name(a.outcome).c_str(), a.kind.c_str(),
                                    a.expected.c_str(), a.detail.c_str());
        }
    }
    if (g.format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        std::printf("%zu recipes, exit %d\n", chosen.size(), code);
    return code;
}

ManifoldModel block_from_id(const std::string& id) {
    static const std::regex call(R"(^([A-Za-z0-9_']+)\((-?[0-9]+)\)$)");
    std::smatch m;
    if (std::regex_match(id, m, call)) return resolve_block(m[1], std::stoll(m[2]));
    return resolve_block(id, std::nullopt);
}

int cmd_show_block(const Globals& g, const std::string& id) {
    ManifoldModel m = block_from_id(id);
    if (g.format == "json")
        std::cout << block_json(m).dump(2) << "\n";
    else
        std::cout << block_text(m);
    return 0;
}

std::vector<long long> parse_ks(const std::string& s) {
    static const std::regex range(R"(^\s*(-?[0-9]+)\s*\.\.\s*(-?[0-9]+)\s*$)");
    std::smatch m;
    std::vector<long long> ks;
    if (std::regex_match(s, m, range)) {
        long long lo = std::stoll(m[1]), hi = std::stoll(m[2]);
        if (lo > hi) throw std::invalid_argument("empty range " + s);
        for (long long k = lo; k <= hi; ++k) ks.push_back(k);
        return ks;
    }
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) ks.push_back(std::stoll(item));
    if (ks.empty()) throw std::invalid_argument("no coefficients in '" + s + "'");
    return ks;
}

// T=K or T=K:d
ScanChoice parse_fixed(const std::string& s) {
    static const std::regex form(R"(^([A-Za-z0-9_']+)=(-?[0-9]+)(?::([ml]))?$)");
    std::smatch m;
    if (!std::regex_match(s, m, form)) throw std::invalid_argument("bad --fixed '" + s + "', expected TORUS=K[:m|l]");
    ScanChoice c{m[1], std::stoll(m[2]), m[3].matched ? m[3].str()[0] : 'm'};
    return c;
}

int cmd_scan(const Globals& g, const std::string& base, const std::string& ks, const std::string& dirs,
             const std::vector<std::string>& tori, const std::vector<std::string>& fixed, bool budget_given) {
    ScanOptions opt;
    opt.base = base;
    opt.ks = parse_ks(ks);
    opt.dirs = dirs;
    for (char d : dirs)
        if (d != 'm' && d != 'l') throw std::invalid_argument("--dirs takes only m and l");
    opt.tori = tori;
    for (const auto& f : fixed) opt.fixed.push_back(parse_fixed(f));
    opt.jobs = g.jobs;
    if (budget_given) {
        opt.budget.max_cosets = g.max_cosets;
        opt.budget.max_depth = g.max_depth;
    }
    auto rows = geography_scan(opt);
    if (g.format == "json") {
        Json doc = Json::array();
        for (const auto& r : rows) doc.push_back(scan_row_json(r));
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "choices\tH1\te\tsigma\tc1sq\tchi_h\tpi1\n";
        for (const auto& r : rows) std::cout << scan_row_text(r) << "\n";
    }
    return 0;
}

int cmd_list(const Globals& g) {
    Json doc = Json::array();
    for (const auto& b : builtin_recipes()) {
        Json ps = Json::array();
        std::string sig;
        for (const auto& p : b.params) {
            Json j{{"name", p.name}, {"default", p.def}};
            if (p.lo) j["range"] = Json::array({*p.lo, *p.hi});
            ps.push_back(j);
            sig += (sig.empty() ? "" : ", ") + p.name + "=" + std::to_string(p.def);
        }
        if (g.format == "json")
            doc.push_back(Json{{"name", b.name}, {"summary", b.summary}, {"params", ps}});
        else
            std::printf("%-12s %-28s %s\n", b.name.c_str(), sig.c_str(), b.summary.c_str());
    }
    if (g.format == "json") std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_fmt(const Globals& g, const std::string& source) {
    Recipe r;
    if (std::filesystem::is_regular_file(source))
        r = parse_recipe(read_file(source));
    else if (find_builtin(source))
        r = builtin_recipe(source, parse_overrides(g.params));
    else
        throw std::runtime_error("'" + source + "' is neither a recipe file nor a built-in recipe");
    std::cout << serialize_recipe(r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lutcalc: surgery calculus and group certificates for 4-manifold constructions"};
    app.require_subcommand(1);
    Globals g;
    auto* cosets_opt = app.add_option("--max-cosets", g.max_cosets, "coset table limit")->check(CLI::PositiveNumber);
    auto* depth_opt = app.add_option("--max-depth", g.max_depth, "derivation depth limit")->check(CLI::NonNegativeNumber);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("-P,--param", g.params, "parameter override key=value");
    app.add_option("--seed", g.seed, "reserved; the engine is deterministic");
    app.add_option("--jobs", g.jobs, "worker threads for verify-all and scan")->check(CLI::PositiveNumber);
    app.add_flag("--timing", g.timing, "include wall time in JSON reports");

    std::string source;
    auto* run = app.add_subcommand("run", "run a recipe file or built-in recipe");
    run->add_option("recipe", source, "recipe file path or built-in name")->required();
    run->fallthrough();

    std::string filter;
    auto* verify = app.add_subcommand("verify-all", "run every built-in recipe at default parameters");
    verify->add_option("--filter", filter, "glob over recipe names");
    verify->fallthrough();

    std::string block_id;
    auto* show = app.add_subcommand("show-block", "dump a block's presentation, tori and characteristic numbers");
    show->add_option("id", block_id, "block id, e.g. Z, W2, Y(3)")->required();
    show->fallthrough();

    std::string base = "Z", ks = "-1..1", dirs = "ml";
    std::vector<std::string> tori, fixed;
    auto* scan = app.add_subcommand("scan", "geography scan over torus surgery coefficients");
    scan->add_option("base", base, "block id");
    scan->add_option("-k", ks, "coefficient range LO..HI or list");
    scan->add_option("--dirs", dirs, "surgery directions to try (m, l)");
    scan->add_option("--tori", tori, "tori to scan")->delimiter(',');
    scan->add_option("--fixed", fixed, "fixed choices TORUS=K[:m|l]")->delimiter(',');
    scan->fallthrough();

    auto* list = app.add_subcommand("list", "list built-in recipes");
    list->fallthrough();

    std::string fmt_source;
    auto* fmt = app.add_subcommand("fmt", "print a recipe in canonical form");
    fmt->add_option("recipe", fmt_source, "recipe file path or built-in name")->required();
    fmt->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*run) return cmd_run(g, source);
        if (*verify) return cmd_verify_all(g, filter);
        if (*show) return cmd_show_block(g, block_id);
        if (*scan) return cmd_scan(g, base, ks, dirs, tori, fixed, cosets_opt->count() + depth_opt->count() > 0);
        if (*list) return cmd_list(g);
        if (*fmt) return cmd_fmt(g, fmt_source);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
