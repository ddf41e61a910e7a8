#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "flagforge/betti.hpp"
#include "flagforge/deform.hpp"
#include "flagforge/error.hpp"
#include "flagforge/gallery.hpp"
#include "flagforge/io.hpp"
#include "flagforge/pfaffian.hpp"
#include "flagforge/rigidity.hpp"

using namespace flagforge;

namespace {

using Clock = std::chrono::steady_clock;

// Shared bookkeeping for one subcommand invocation: the run report and the
// optional path it is written to.
struct Session {
    RunReport report;
    std::string json_out;
    Clock::time_point t0 = Clock::now();

    explicit Session(std::string command) { report.command = std::move(command); }

    void stage(const std::string& name) { report.stages.push_back(name); }

    void digest(std::initializer_list<std::string> parts) {
        std::string all;
        for (const auto& p : parts) {
            all += p;
            all += '\x1f';
        }
        report.inputs_digest = hex64(fnv1a64(all));
    }

    void finish(Json results) {
        report.results = std::move(results);
        report.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (!json_out.empty()) save_json_file(json_out, report.to_json());
    }
};

void emit(const Json& artifact) { std::cout << artifact.dump(2) << "\n"; }

FieldSpec parse_field(const std::string& text) {
    if (text == "q") return FieldSpec{};
    unsigned long long p = 0;
    try {
        p = std::stoull(text);
    } catch (const std::logic_error&) {
        fail("ParseError", "field must be q or a prime number");
    }
    require(p > 0 && p < (1ULL << 31), "ParseError", "prime field modulus out of range");
    FieldSpec f{static_cast<std::uint32_t>(p)};
    validate_field(f);
    return f;
}

std::pair<int, int> parse_window(const std::string& text) {
    auto pos = text.find(':');
    require(pos != std::string::npos && pos > 0 && pos + 1 < text.size(), "ParseError",
            "window must look like j0:j1");
    int a = 0;
    int b = 0;
    try {
        a = std::stoi(text.substr(0, pos));
        b = std::stoi(text.substr(pos + 1));
    } catch (const std::logic_error&) {
        fail("ParseError", "window bounds must be integers");
    }
    require(a <= b, "ParseError", "window start exceeds its end");
    return {a, b};
}

unsigned long long resolve_budget(const CLI::Option* opt, unsigned long long flag_value) {
    if (opt != nullptr && opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("FLAGFORGE_BUDGET")) {
        try {
            return std::stoull(std::string(env));
        } catch (const std::logic_error&) {
            fail("ParseError", "FLAGFORGE_BUDGET must be a nonnegative integer");
        }
    }
    return 1000000ULL;
}

// Complete intersection input, either a JSON file or degrees plus a
// variable count built over the requested field.
struct CiInput {
    std::string in;
    std::vector<int> degrees;
    std::size_t vars = 0;
    std::string field = "q";
};

void add_ci_options(CLI::App* cmd, CiInput& ci) {
    auto* in = cmd->add_option("--in", ci.in, "complete intersection JSON file");
    auto* degs = cmd->add_option("--degrees", ci.degrees, "generator degrees, comma separated")
                     ->delimiter(',');
    cmd->add_option("--vars", ci.vars, "number of variables used with --degrees");
    cmd->add_option("--field", ci.field, "coefficient field: q or a prime");
    in->excludes(degs);
    degs->excludes(in);
}

CompleteIntersection build_ci(const CiInput& in, Session& s) {
    if (!in.in.empty()) {
        Json j = load_json_file(in.in);
        s.digest({s.report.command, j.dump()});
        return ci_from_json(j);
    }
    require(!in.degrees.empty(), "ParseError", "either --in or --degrees is required");
    require(in.vars > 0, "ParseError", "--degrees needs --vars");
    std::string key = in.field + "/" + std::to_string(in.vars);
    for (int d : in.degrees) key += "," + std::to_string(d);
    s.digest({s.report.command, key});
    return make_ci_degrees(parse_field(in.field), in.vars, in.degrees);
}

Json slope_pair_json(const SlopePair& p) {
    return Json{{"i", p.i}, {"k", p.k}, {"i2", p.i2}, {"l", p.l}, {"j", p.j}};
}

void cmd_check(const std::string& in, Session& s) {
    Json j = load_json_file(in);
    s.digest({s.report.command, j.dump()});
    s.stage("parse");
    Json out;
    if (j.contains("maps")) {
        FreeComplex C = complex_from_json(j);
        out = Json{{"type", "complex"},
                   {"length", C.length()},
                   {"total_rank", C.total_rank()},
                   {"valid", true}};
    } else if (j.contains("matrix")) {
        DifferentialModule D = dm_from_json(j);
        out = Json{{"type", "differential-module"},
                   {"degree", D.degree},
                   {"rank", D.mod.rank()},
                   {"flag", D.flag_levels.has_value()},
                   {"valid", true}};
    } else if (j.contains("gens") || j.contains("degrees")) {
        CompleteIntersection ci = ci_from_json(j);
        out = Json{{"type", "complete-intersection"},
                   {"codim", ci.codim()},
                   {"artinian", ci.artinian()},
                   {"valid", true}};
    } else {
        fail("ParseError", "input is neither a complex, a differential module, nor a "
                           "complete intersection");
    }
    s.stage("validate");
    emit(out);
    s.finish(out);
}

void cmd_fold(const std::string& in, int degree, Session& s) {
    Json j = load_json_file(in);
    s.digest({s.report.command, j.dump(), std::to_string(degree)});
    FreeComplex C = complex_from_json(j);
    s.stage("parse");
    DifferentialModule D = fold(C, degree);
    s.stage("fold");
    Json out = dm_to_json(D);
    emit(out);
    s.finish(Json{{"rank", D.mod.rank()}, {"degree", degree}});
}

void cmd_deform(const std::string& in, int degree, const std::string& coords_path, Session& s) {
    Json j = load_json_file(in);
    s.digest({s.report.command, j.dump(), std::to_string(degree), coords_path});
    FreeComplex C = complex_from_json(j);
    s.stage("parse");

    std::vector<std::vector<Scalar>> coords;
    if (!coords_path.empty()) {
        Json cj = load_json_file(coords_path);
        const Json& arr = json_field(cj, "coords");
        require(arr.is_array(), "ParseError", "coords must be an array of arrays");
        FieldSpec f = C.ring()->field;
        for (const Json& row : arr) {
            require(row.is_array(), "ParseError", "coords must be an array of arrays");
            std::vector<Scalar> cs;
            for (const Json& el : row)
                cs.push_back(Scalar::parse(f, el.is_string() ? el.get<std::string>()
                                                             : el.dump()));
            coords.push_back(std::move(cs));
        }
    }

    LiftState state(C, degree);
    int target = std::max<int>(1, static_cast<int>(C.length()));
    while (state.stage() < target) {
        std::size_t step = static_cast<std::size_t>(state.stage()) - 1;
        std::vector<Scalar> cs = step < coords.size() ? coords[step] : std::vector<Scalar>{};
        LiftResult res = lift(state, cs);
        if (std::holds_alternative<Obstructed>(res)) {
            const Obstructed& ob = std::get<Obstructed>(res);
            s.stage("obstructed");
            Json out{{"obstructed", true},
                     {"stage", ob.stage},
                     {"internal_degree", ob.internal_degree},
                     {"certificate", ob.certificate}};
            emit(out);
            s.finish(out);
            return;
        }
        state = std::get<LiftState>(std::move(res));
        s.stage("lift to stage " + std::to_string(state.stage()));
    }
    DifferentialModule D = assemble(state);
    s.stage("assemble");
    emit(dm_to_json(D));
    s.finish(Json{{"obstructed", false}, {"rank", D.mod.rank()}});
}

void cmd_enumerate(const std::string& in, int degree, unsigned long long budget, Session& s) {
    Json j = load_json_file(in);
    s.digest({s.report.command, j.dump(), std::to_string(degree), std::to_string(budget)});
    FreeComplex C = complex_from_json(j);
    s.stage("parse");
    std::vector<FlagClass> classes = enumerate_flags(C, degree, budget);
    s.stage("enumerate");
    Json rows = Json::array();
    for (const FlagClass& cls : classes)
        rows.push_back(Json{{"multiplicity", cls.multiplicity.get_str()},
                            {"flag", dm_to_json(assemble(cls.state))}});
    Json out{{"count", classes.size()}, {"classes", rows}};
    emit(out);
    s.finish(Json{{"count", classes.size()}});
}

void cmd_minimize(const std::string& in, Session& s) {
    Json j = load_json_file(in);
    s.digest({s.report.command, j.dump()});
    DifferentialModule D = dm_from_json(j);
    s.stage("parse");
    auto [M, betti] = minimize(D);
    s.stage("minimize");
    Json by_degree = Json::object();
    for (const auto& [deg, count] : betti.by_degree) by_degree[std::to_string(deg)] = count;
    Json out{{"module", dm_to_json(M)}, {"betti_by_degree", by_degree},
             {"total", betti.total()}};
    emit(out);
    s.finish(Json{{"total", betti.total()}, {"rank_before", D.mod.rank()},
                  {"rank_after", M.mod.rank()}});
}

void cmd_homology(const std::string& in, const std::string& window, Session& s) {
    Json j = load_json_file(in);
    s.digest({s.report.command, j.dump(), window});
    DifferentialModule D = dm_from_json(j);
    s.stage("parse");
    auto [j0, j1] = window.empty() ? default_window(D) : parse_window(window);
    std::map<int, long> h = homology_hilbert(D, j0, j1);
    s.stage("homology");
    Json hilbert = Json::object();
    for (const auto& [deg, dim] : h) hilbert[std::to_string(deg)] = dim;
    Json out{{"window", Json::array({j0, j1})}, {"hilbert", hilbert}};
    emit(out);
    s.finish(out);
}

void cmd_ext_dims(const CiInput& ci_in, const std::string& window, Session& s) {
    CompleteIntersection ci = build_ci(ci_in, s);
    s.stage("parse");
    int total = 0;
    for (int d : ci.degrees) total += d;
    auto [j0, j1] = window.empty() ? std::pair<int, int>{-(total + 2), 2}
                                   : parse_window(window);
    Json rows = Json::array();
    for (int i = 2; i <= static_cast<int>(ci.codim()); ++i)
        for (int j = j0; j <= j1; ++j)
            rows.push_back(Json{{"i", i}, {"j", j}, {"dim", ci_ext_dim(ci, i, j)}});
    s.stage("ext");
    Json out{{"window", Json::array({j0, j1})}, {"rows", rows}};
    emit(out);
    s.finish(Json{{"rows", rows.size()}});
}

void cmd_rigidity_window(const CiInput& ci_in, Session& s) {
    CompleteIntersection ci = build_ci(ci_in, s);
    s.stage("parse");
    auto [lo, hi] = rigidity_window(ci);
    s.stage("window");
    std::cout << "non-rigid interval [" << lo << ", " << hi << "]\n";
    s.finish(Json{{"lo", lo}, {"hi", hi}});
}

void cmd_witness(const CiInput& ci_in, int degree, Session& s) {
    CompleteIntersection ci = build_ci(ci_in, s);
    s.stage("parse");
    WitnessResult w = nonrigidity_witness(ci, degree);
    s.stage("witness");
    Json out{{"index", w.index},
             {"internal_degree", w.j},
             {"monomial", w.monomial.str()},
             {"orientation", "a = d_i + d_{i+1} - j"},
             {"flag", dm_to_json(w.flag)}};
    emit(out);
    s.finish(Json{{"index", w.index}, {"internal_degree", w.j},
                  {"monomial", w.monomial.str()}});
}

void cmd_betti_deficiency(const std::string& in, int degree, bool degree_given,
                          const std::vector<int>& ci_degrees,
                          const std::vector<int>& pure, Session& s) {
    Json out;
    if (!in.empty()) {
        require(degree_given, "ParseError", "--in needs --degree for the slope test");
        Json j = load_json_file(in);
        s.digest({s.report.command, j.dump(), std::to_string(degree)});
        FreeComplex C = complex_from_json(j);
        s.stage("parse");
        BettiTable t = betti_table(C);
        Json pairs = Json::array();
        for (const SlopePair& p : slope_pairs(t, degree)) pairs.push_back(slope_pair_json(p));
        s.stage("slopes");
        out = Json{{"mode", "table"}, {"degree", degree}, {"pairs", pairs},
                   {"deficient_possible", !pairs.empty()}};
    } else if (!ci_degrees.empty()) {
        std::string key;
        for (int d : ci_degrees) key += std::to_string(d) + ",";
        s.digest({s.report.command, "ci", key});
        s.stage("subset scan");
        Json degs = Json::array();
        for (int a : ci_deficiency_degrees(ci_degrees)) degs.push_back(a);
        out = Json{{"mode", "ci"}, {"degrees", degs},
                   {"note", "deficiency possible only at the listed degrees"}};
    } else if (!pure.empty()) {
        std::string key;
        for (int d : pure) key += std::to_string(d) + ",";
        s.digest({s.report.command, "pure", key});
        s.stage("pure scan");
        Json degs = Json::array();
        for (int a : pure_deficiency_degrees(pure)) degs.push_back(a);
        out = Json{{"mode", "pure"}, {"degrees", degs},
                   {"note", "deficiency possible only at the listed degrees"}};
    } else {
        fail("ParseError", "one of --in, --ci-degrees, --pure is required");
    }
    emit(out);
    s.finish(out);
}

void cmd_dim_bounds(const std::string& in, int degree, Session& s) {
    Json j = load_json_file(in);
    s.digest({s.report.command, j.dump(), std::to_string(degree)});
    FreeComplex C = complex_from_json(j);
    s.stage("parse");
    auto [lo, hi] = dim_bounds(C, degree);
    s.stage("bounds");
    Json out{{"lower", lo}, {"upper", hi}};
    emit(out);
    s.finish(out);
}

void cmd_paper_examples(unsigned long long budget, unsigned seed, Session& s) {
    s.digest({s.report.command, std::to_string(budget), std::to_string(seed)});
    GalleryOptions opt;
    opt.budget = budget;
    opt.seed = seed;
    std::vector<CriterionResult> results = run_gallery(opt);
    s.stage("gallery");
    Json rows = Json::array();
    int failed = 0;
    for (const CriterionResult& r : results) {
        std::cout << format_gallery_line(r) << "\n";
        rows.push_back(Json{{"number", r.number}, {"name", r.name},
                            {"passed", r.passed}, {"detail", r.detail}});
        if (!r.passed) ++failed;
    }
    s.finish(Json{{"criteria", rows}, {"failed", failed}});
    if (failed > 0)
        fail("GalleryFailure", std::to_string(failed) + " of " +
                                   std::to_string(results.size()) + " criteria failed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with free flags and graded differential modules"};
    app.require_subcommand(1);

    auto add_json_out = [](CLI::App* cmd, std::shared_ptr<std::string> path) {
        cmd->add_option("--json-out", *path, "write a machine readable run report here");
    };

    {
        auto in = std::make_shared<std::string>();
        auto jo = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("check", "validate a complex, module, or quotient file");
        cmd->add_option("--in", *in, "input JSON file")->required();
        add_json_out(cmd, jo);
        cmd->callback([in, jo] {
            Session s("check");
            s.json_out = *jo;
            cmd_check(*in, s);
        });
    }
    {
        auto in = std::make_shared<std::string>();
        auto jo = std::make_shared<std::string>();
        auto deg = std::make_shared<int>(0);
        auto* cmd = app.add_subcommand("fold", "collapse a complex to a differential module");
        cmd->add_option("--in", *in, "complex JSON file")->required();
        cmd->add_option("--degree", *deg, "flag degree a")->required();
        add_json_out(cmd, jo);
        cmd->callback([in, jo, deg] {
            Session s("fold");
            s.json_out = *jo;
            cmd_fold(*in, *deg, s);
        });
    }
    {
        auto in = std::make_shared<std::string>();
        auto jo = std::make_shared<std::string>();
        auto deg = std::make_shared<int>(0);
        auto coords = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand(
            "deform", "lift a complex to a free flag stage by stage");
        cmd->add_option("--in", *in, "complex JSON file")->required();
        cmd->add_option("--degree", *deg, "flag degree a")->required();
        cmd->add_option("--coords", *coords,
                        "JSON file with cocycle coordinates per lifting step");
        add_json_out(cmd, jo);
        cmd->callback([in, jo, deg, coords] {
            Session s("deform");
            s.json_out = *jo;
            cmd_deform(*in, *deg, *coords, s);
        });
    }
    {
        auto in = std::make_shared<std::string>();
        auto jo = std::make_shared<std::string>();
        auto deg = std::make_shared<int>(0);
        auto budget = std::make_shared<unsigned long long>(0);
        auto* cmd = app.add_subcommand(
            "enumerate", "list stage-wise flag classes over a finite field");
        cmd->add_option("--in", *in, "complex JSON file")->required();
        cmd->add_option("--degree", *deg, "flag degree a")->required();
        CLI::Option* bopt = cmd->add_option("--budget", *budget, "cap on materialized states");
        add_json_out(cmd, jo);
        cmd->callback([in, jo, deg, budget, bopt] {
            Session s("enumerate");
            s.json_out = *jo;
            cmd_enumerate(*in, *deg, resolve_budget(bopt, *budget), s);
        });
    }
    {
        auto in = std::make_shared<std::string>();
        auto jo = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("minimize", "strip scalar units from a differential");
        cmd->add_option("--in", *in, "differential module JSON file")->required();
        add_json_out(cmd, jo);
        cmd->callback([in, jo] {
            Session s("minimize");
            s.json_out = *jo;
            cmd_minimize(*in, s);
        });
    }
    {
        auto in = std::make_shared<std::string>();
        auto jo = std::make_shared<std::string>();
        auto window = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("homology", "homology Hilbert function over a window");
        cmd->add_option("--in", *in, "differential module JSON file")->required();
        cmd->add_option("--window", *window, "degree window j0:j1");
        add_json_out(cmd, jo);
        cmd->callback([in, jo, window] {
            Session s("homology");
            s.json_out = *jo;
            cmd_homology(*in, *window, s);
        });
    }
    {
        auto ci = std::make_shared<CiInput>();
        auto jo = std::make_shared<std::string>();
        auto window = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("ext-dims", "Ext dimension table of a quotient");
        add_ci_options(cmd, *ci);
        cmd->add_option("--window", *window, "internal degree window j0:j1");
        add_json_out(cmd, jo);
        cmd->callback([ci, jo, window] {
            Session s("ext-dims");
            s.json_out = *jo;
            cmd_ext_dims(*ci, *window, s);
        });
    }
    {
        auto ci = std::make_shared<CiInput>();
        auto jo = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("rigidity-window",
                                       "exact non-rigid degree interval of a quotient");
        add_ci_options(cmd, *ci);
        add_json_out(cmd, jo);
        cmd->callback([ci, jo] {
            Session s("rigidity-window");
            s.json_out = *jo;
            cmd_rigidity_window(*ci, s);
        });
    }
    {
        auto ci = std::make_shared<CiInput>();
        auto jo = std::make_shared<std::string>();
        auto deg = std::make_shared<int>(0);
        auto* cmd = app.add_subcommand("witness", "non-rigidity witness flag at a degree");
        add_ci_options(cmd, *ci);
        cmd->add_option("--degree", *deg, "flag degree a")->required();
        add_json_out(cmd, jo);
        cmd->callback([ci, jo, deg] {
            Session s("witness");
            s.json_out = *jo;
            cmd_witness(*ci, *deg, s);
        });
    }
    {
        auto in = std::make_shared<std::string>();
        auto jo = std::make_shared<std::string>();
        auto deg = std::make_shared<int>(0);
        auto ci_degrees = std::make_shared<std::vector<int>>();
        auto pure = std::make_shared<std::vector<int>>();
        auto* cmd = app.add_subcommand("betti-deficiency",
                                       "degrees where a flag could shed generators");
        auto* inopt = cmd->add_option("--in", *in, "minimal complex JSON file");
        CLI::Option* dopt = cmd->add_option("--degree", *deg, "flag degree a for --in");
        auto* ciopt = cmd->add_option("--ci-degrees", *ci_degrees,
                                      "complete intersection degrees, comma separated")
                          ->delimiter(',');
        auto* popt = cmd->add_option("--pure", *pure,
                                     "strictly increasing twist sequence, comma separated")
                         ->delimiter(',');
        inopt->excludes(ciopt)->excludes(popt);
        ciopt->excludes(popt);
        add_json_out(cmd, jo);
        cmd->callback([in, jo, deg, dopt, ci_degrees, pure] {
            Session s("betti-deficiency");
            s.json_out = *jo;
            cmd_betti_deficiency(*in, *deg, dopt->count() > 0, *ci_degrees, *pure, s);
        });
    }
    {
        auto in = std::make_shared<std::string>();
        auto jo = std::make_shared<std::string>();
        auto deg = std::make_shared<int>(0);
        auto* cmd = app.add_subcommand("dim-bounds",
                                       "bounds on the dimension of the space of flags");
        cmd->add_option("--in", *in, "complex JSON file")->required();
        cmd->add_option("--degree", *deg, "flag degree a")->required();
        add_json_out(cmd, jo);
        cmd->callback([in, jo, deg] {
            Session s("dim-bounds");
            s.json_out = *jo;
            cmd_dim_bounds(*in, *deg, s);
        });
    }
    {
        auto jo = std::make_shared<std::string>();
        auto budget = std::make_shared<unsigned long long>(0);
        auto seed = std::make_shared<unsigned>(20240817);
        auto* cmd = app.add_subcommand("paper-examples", "run the full reproduction gallery");
        CLI::Option* bopt = cmd->add_option("--budget", *budget, "cap on materialized states");
        cmd->add_option("--seed", *seed, "seed for the randomized property checks");
        add_json_out(cmd, jo);
        cmd->callback([jo, budget, seed, bopt] {
            Session s("paper-examples");
            s.json_out = *jo;
            cmd_paper_examples(resolve_budget(bopt, *budget), *seed, s);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
