// planecode: command-line front end. Every invocation prints one JSON run
// record (stdout or --record/--out) and a short summary on stderr.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <iostream>
#include <regex>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "planecode/analyze.hpp"
#include "planecode/construct.hpp"
#include "planecode/error.hpp"
#include "planecode/io.hpp"
#include "planecode/search.hpp"
#include "planecode/suite.hpp"

using namespace planecode;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Outcome {
    json payload = json::object();
    std::string summary;
    bool ok = true;  // false makes the exit status 1 without an error object
};

// Inputs read by the command, hashed for the record.
struct Inputs {
    json hashes = json::object();

    void note(const std::string& name, std::string_view canonical_text) { hashes[name] = hex64(fnv1a64(canonical_text)); }
};

std::vector<std::uint32_t> parse_modulus(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        } catch (const std::exception&) {
            throw UsageError("--modulus expects comma-separated coefficients, low degree first");
        }
    }
    return out;
}

// Also accepts a bare prime power such as "8".
Field field_of(std::string spec, const std::string& modulus) {
    if (spec.find('^') == std::string::npos && !spec.empty() && spec.size() < 10) {
        const auto q = std::stoul(spec);
        std::uint32_t p = 2;
        while (p < q && q % p) ++p;
        std::uint32_t h = 0;
        for (auto r = q; r > 1 && r % p == 0; r /= p) ++h;
        if (q >= 2 && std::pow(double(p), double(h)) == double(q)) spec = fmt::format("{}^{}", p, h);
    }
    if (modulus.empty()) return Field::parse(spec);
    return Field::parse(spec, parse_modulus(modulus));
}

bool is_field_spec(const std::string& s) {
    static const std::regex re(R"(\d+(\^\d+)?)");
    return std::regex_match(s, re);
}

// A field spec such as "3^2" builds PG(2,q); anything else is a plane file.
Plane load_plane(const std::string& arg, const std::string& modulus, Inputs& in) {
    if (is_field_spec(arg)) {
        auto plane = pg2(field_of(arg, modulus));
        in.note("plane", plane_to_text(plane));
        return plane;
    }
    auto text = read_file(arg);
    in.note("plane", text);
    return plane_from_text(text, arg);
}

PartialLinearSpace load_pls(const std::string& arg, Inputs& in) {
    PartialLinearSpace pls = [&] {
        if (arg == "builtin:mk") return cyclic_antipodal(2);
        if (arg == "builtin:ap3") return cyclic_antipodal(3);
        if (arg == "builtin:pg24") return antipodal_from_pg24();
        if (arg.rfind("builtin:", 0) == 0) throw UsageError("unknown builtin '" + arg + "' (mk, ap3, pg24)");
        return pls_from_text(read_file(arg));
    }();
    in.note("pls", pls_to_text(pls));
    return pls;
}

json embedding_json(const Embedding& e) { return {{"points", e.point_map}, {"lines", e.line_map}}; }

json stats_json(const SearchStats& s) {
    return {{"nodes", s.nodes},
            {"prune_point_injective", s.prune_point_injective},
            {"prune_forbidden", s.prune_forbidden},
            {"prune_incidence", s.prune_incidence},
            {"prune_non_incidence", s.prune_non_incidence},
            {"prune_line_injective", s.prune_line_injective},
            {"leaf_rejects", s.leaf_rejects},
            {"wall_seconds", s.wall_seconds}};
}

json constructed_json(const ConstructedWord& w, bool raw) {
    const auto& word = raw ? w.raw : w.word;
    return {{"recipe", w.recipe}, {"ingredients", w.ingredients}, {"dual", w.dual},
            {"weight", word.weight()}, {"raw", raw}, {"word", word_to_json(word)}};
}

json analysis_json(const WordAnalysis& a, const CodeWord& w, const Plane& plane) {
    json colours = json::object();
    for (auto [c, n] : a.colours) colours[std::to_string(c)] = n;
    json checks = json::array();
    for (const auto& c : a.checks) {
        json j = {{"name", c.name}, {"status", to_string(c.status)}};
        if (!c.witness.empty()) j["witness"] = c.witness;
        checks.push_back(j);
    }
    json out = {{"weight", a.weight},
                {"epsilon", a.epsilon},
                {"applicable", a.in_band},
                {"dual", a.dual},
                {"p", a.p},
                {"plane_order", a.plane_order},
                {"colours", colours},
                {"tangents", a.tangents},
                {"mu", a.mu},
                {"mu_neg", a.mu_neg},
                {"canonical_scale", a.canonical_scale},
                {"colour_graph_components", a.graph.components},
                {"checks", checks},
                {"classification", to_string(a.classification)}};
    const bool override_dual = !a.dual;
    try {
        if (a.classification == Classification::Baer) {
            auto e = extract_baer(w, plane, override_dual);
            out["extraction"] = {{"kind", "baer"}, {"subplane_points", e.subplane.points}, {"secant", e.secant}};
        } else if (a.classification == Classification::Antipodal) {
            auto e = extract_antipodal(w, plane, override_dual);
            out["extraction"] = {{"kind", "antipodal"},
                                 {"colours", e.colours},
                                 {"points", {e.parts[0].points, e.parts[1].points}},
                                 {"lines", {e.parts[0].lines, e.parts[1].lines}}};
        }
    } catch (const Error& e) {
        out["extraction"] = {{"error", {{"code", to_string(e.code())}, {"detail", e.detail()}}}};
    }
    return out;
}

// Options of the executed subcommand chain, as given or defaulted.
json echo_config(const CLI::App* app) {
    json out = json::object();
    for (const auto* a = app; a; a = a->get_parent()) {
        for (const auto* opt : a->get_options()) {
            const auto key = opt->get_name();
            if (key.empty() || key == "--help" || key == "--version" || out.contains(key)) continue;
            const auto& res = opt->results();
            if (opt->count() == 0)
                out[key] = opt->get_default_str().empty() ? json(nullptr) : json(opt->get_default_str());
            else if (res.size() == 1)
                out[key] = res[0];
            else
                out[key] = res;
        }
    }
    return out;
}

std::string command_path(const CLI::App* app) {
    std::vector<std::string> parts;
    for (const auto* a = app; a && a->get_parent(); a = a->get_parent()) parts.insert(parts.begin(), a->get_name());
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
    return s;
}

std::string utc_now() {
    const auto t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projective planes, their p-ary codes and antipodal plane embeddings"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::string record_path;
    app.add_option("--threads", threads, "worker threads")->envname("PLANECODE_THREADS")->check(CLI::Range(1u, 256u));
    app.add_option("--seed", seed, "seed for randomized paths")->capture_default_str();
    app.add_option("--record", record_path, "write the run record here instead of stdout");

    Inputs inputs;
    std::function<Outcome()> action;
    CLI::App* selected = nullptr;
    auto bind = [&](CLI::App* sub, std::function<Outcome()> fn) {
        sub->callback([&selected, &action, sub, fn] {
            selected = sub;
            action = fn;
        });
    };

    // plane
    auto* plane_cmd = app.add_subcommand("plane", "build or validate plane files")->require_subcommand(1);
    std::string field_spec, modulus, out_path, plane_arg, file_arg;
    {
        auto* build = plane_cmd->add_subcommand("build", "write PG(2,q) as a plane file");
        build->add_option("--field", field_spec, "field, e.g. 3^2")->required();
        build->add_option("--modulus", modulus, "monic modulus coefficients, low degree first");
        build->add_option("--out", out_path, "plane file to write");
        bind(build, [&] {
            auto plane = pg2(field_of(field_spec, modulus));
            const auto text = plane_to_text(plane);
            Outcome o;
            o.payload = {{"order", plane.order()}, {"points", plane.num_points()}, {"lines", plane.num_lines()},
                         {"modulus", plane.field().modulus()}, {"fnv1a64", hex64(fnv1a64(text))}};
            if (!out_path.empty()) {
                write_file(out_path, text);
                o.payload["file"] = out_path;
            } else {
                o.payload["text"] = text;
            }
            o.summary = fmt::format("PG(2,{}): {} points, {} lines", plane.order(), plane.num_points(), plane.num_lines());
            return o;
        });
        auto* validate = plane_cmd->add_subcommand("validate", "ingest a plane file and check the axioms");
        validate->add_option("--file", file_arg)->required();
        validate->add_option("--out", record_path, "run record file");
        bind(validate, [&] {
            auto plane = load_plane(file_arg, "", inputs);
            Outcome o;
            o.payload = {{"order", plane.order()}, {"points", plane.num_points()}, {"valid", true}};
            o.summary = fmt::format("{}: projective plane of order {}", file_arg, plane.order());
            return o;
        });
    }

    // code
    auto* code_cmd = app.add_subcommand("code", "p-ary code of a plane")->require_subcommand(1);
    std::uint32_t p = 0;
    bool dual_flag = false;
    std::uint64_t budget = 0;
    {
        auto* dim = code_cmd->add_subcommand("dim", "dimension of the code");
        dim->add_option("--plane", plane_arg, "field spec or plane file")->required();
        dim->add_option("--modulus", modulus);
        dim->add_option("--p", p, "prime")->required();
        dim->add_flag("--dual", dual_flag, "dimension of the dual code instead");
        dim->add_option("--out", record_path, "run record file");
        bind(dim, [&] {
            auto plane = load_plane(plane_arg, modulus, inputs);
            auto code = code_of_plane(plane, p);
            const auto d = dual_flag ? plane.num_points() - code.dimension() : code.dimension();
            Outcome o;
            o.payload = {{"dimension", d}};
            o.summary = fmt::format("dim {} = {}", dual_flag ? "C^perp" : "C", d);
            return o;
        });
        auto* mw = code_cmd->add_subcommand("minweight", "exhaustive minimum weight");
        mw->add_option("--plane", plane_arg, "field spec or plane file")->required();
        mw->add_option("--modulus", modulus);
        mw->add_option("--p", p, "prime")->required();
        mw->add_flag("--dual", dual_flag, "enumerate the dual code");
        budget = kDefaultEnumerationBudget;
        mw->add_option("--budget", budget, "maximum number of codewords")->capture_default_str();
        mw->add_option("--out", record_path, "run record file");
        bind(mw, [&] {
            auto plane = load_plane(plane_arg, modulus, inputs);
            auto code = code_of_plane(plane, p);
            if (dual_flag) code = dual_basis(code);
            auto res = enumerate_min_weight(code, budget, threads);
            Outcome o;
            json words = json::array();
            for (const auto& w : res.words) words.push_back(word_to_json(w));
            o.payload = {{"dimension", code.dimension()}, {"min_weight", res.min_weight},
                         {"count", res.words.size()}, {"enumerated", res.enumerated}, {"words", words}};
            o.summary = fmt::format("min weight {} ({} words of {})", res.min_weight, res.words.size(), res.enumerated);
            return o;
        });
    }

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "small-weight dual code words")->require_subcommand(1);
    std::vector<std::uint32_t> line_pair;
    std::optional<std::uint32_t> secant;
    std::uint32_t order = 0;
    bool raw = false;
    auto word_output = [&](const ConstructedWord& w) {
        Outcome o;
        o.payload = constructed_json(w, raw);
        const auto& word = raw ? w.raw : w.word;
        if (!out_path.empty()) {
            write_file(out_path, word_to_text(word));
            o.payload["file"] = out_path;
        }
        o.summary = fmt::format("{}: weight {}, {}", w.recipe, word.weight(), w.dual ? "dual" : "NOT dual");
        return o;
    };
    auto construct_common = [&](CLI::App* sub) {
        sub->add_option("--plane", plane_arg, "field spec or plane file")->required();
        sub->add_option("--modulus", modulus);
        sub->add_option("--out", out_path, "word file to write");
        sub->add_flag("--raw", raw, "emit the word before scalar normalization");
    };
    {
        auto* ld = construct_cmd->add_subcommand("line-diff", "difference of two line indicators");
        construct_common(ld);
        ld->add_option("--lines", line_pair, "two line indices")->required()->expected(2);
        bind(ld, [&] {
            auto plane = load_plane(plane_arg, modulus, inputs);
            return word_output(line_diff(plane, line_pair[0], line_pair[1]));
        });
        auto* bd = construct_cmd->add_subcommand("baer-diff", "subfield Baer subplane minus a secant line");
        construct_common(bd);
        bd->add_option("--secant", secant, "secant line index (default: first secant)");
        bind(bd, [&] {
            auto plane = load_plane(plane_arg, modulus, inputs);
            return word_output(baer_diff(plane, baer_subfield_subplane(plane), secant));
        });
        auto* sd = construct_cmd->add_subcommand("subplane-diff", "difference of two disjoint subplanes found by search");
        construct_common(sd);
        sd->add_option("--order", order, "subplane order")->required();
        bind(sd, [&] {
            auto plane = load_plane(plane_arg, modulus, inputs);
            SubplaneSearchOptions so;
            so.limit = 1;
            auto a = subplane_search(plane, order, so);
            if (a.found.empty()) throw Error(ErrorCode::NotFound, fmt::format("no subplane of order {}", order));
            so.excluded = a.found[0].points;
            auto b = subplane_search(plane, order, so);
            if (b.found.empty())
                throw Error(ErrorCode::NotFound, fmt::format("no subplane of order {} disjoint from the first", order));
            auto o = word_output(subplane_diff(plane, a.found[0], b.found[0]));
            o.payload["subplanes"] = {a.found[0].points, b.found[0].points};
            return o;
        });
        auto* ad = construct_cmd->add_subcommand("antipodal-diff", "difference of two disjoint antipodal embeddings");
        construct_common(ad);
        ad->add_option("--order", order, "antipodal plane order (2 or 3)")->required();
        bind(ad, [&] {
            auto plane = load_plane(plane_arg, modulus, inputs);
            auto ap = validate_antipodal(cyclic_antipodal(order));
            SearchOptions so;
            so.threads = threads;
            auto first = embed_search(ap.base(), plane, so);
            if (first.status != SearchStatus::Found)
                throw Error(ErrorCode::NotFound, fmt::format("first embedding: {}", to_string(first.status)));
            so.forbidden_points = first.embeddings[0].point_map;
            auto second = embed_search(ap.base(), plane, so);
            if (second.status != SearchStatus::Found)
                throw Error(ErrorCode::NotFound, fmt::format("disjoint embedding: {}", to_string(second.status)));
            auto o = word_output(antipodal_diff(plane, ap, first.embeddings[0], ap, second.embeddings[0]));
            o.payload["embeddings"] = {embedding_json(first.embeddings[0]), embedding_json(second.embeddings[0])};
            return o;
        });
    }

    // analyze
    std::string word_arg;
    bool allow_non_dual = false;
    {
        auto* an = app.add_subcommand("analyze", "colour classes, secant profiles and checks for a dual word");
        an->add_option("--word", word_arg, "word file")->required();
        an->add_option("--plane", plane_arg, "field spec or plane file")->required();
        an->add_option("--modulus", modulus);
        an->add_flag("--allow-non-dual", allow_non_dual, "report a non-dual word instead of failing");
        an->add_option("--out", record_path, "run record file");
        bind(an, [&] {
            auto plane = load_plane(plane_arg, modulus, inputs);
            const auto text = read_file(word_arg);
            inputs.note("word", text);
            auto w = word_from_text(text);
            auto a = analyze(w, plane, allow_non_dual);
            Outcome o;
            o.payload = analysis_json(a, w, plane);
            std::uint32_t failed = 0;
            for (const auto& c : a.checks) failed += c.status == CheckStatus::Fail;
            o.ok = failed == 0;
            o.summary = fmt::format("weight {}, epsilon {}, {}, {} failed checks", a.weight, a.epsilon,
                                    to_string(a.classification), failed);
            return o;
        });
    }

    // antipodal
    auto* antipodal_cmd = app.add_subcommand("antipodal", "antipodal plane models")->require_subcommand(1);
    bool from_pg24 = false;
    {
        auto* build = antipodal_cmd->add_subcommand("build", "write a model as a pls file");
        auto* ord = build->add_option("--order", order, "cyclic model of order 2 or 3");
        auto* pg = build->add_flag("--from-pg24", from_pg24, "complement of a Fano subplane in PG(2,4)");
        ord->excludes(pg);
        build->add_option("--out", out_path, "pls file to write");
        bind(build, [&] {
            if (!from_pg24 && order == 0) throw UsageError("antipodal build needs --order or --from-pg24");
            auto pls = from_pg24 ? antipodal_from_pg24() : cyclic_antipodal(order);
            auto ap = validate_antipodal(pls);
            const auto text = pls_to_text(pls);
            Outcome o;
            o.payload = {{"order", ap.order()}, {"points", pls.num_points()}, {"lines", pls.num_lines()},
                         {"fnv1a64", hex64(fnv1a64(text))}};
            if (!out_path.empty()) {
                write_file(out_path, text);
                o.payload["file"] = out_path;
            } else {
                o.payload["text"] = text;
            }
            o.summary = fmt::format("antipodal plane of order {}: {} points", ap.order(), pls.num_points());
            return o;
        });
        auto* validate = antipodal_cmd->add_subcommand("validate", "check a pls file is an antipodal plane");
        validate->add_option("--file", file_arg)->required();
        validate->add_option("--out", record_path, "run record file");
        bind(validate, [&] {
            auto pls = load_pls(file_arg, inputs);
            auto ap = validate_antipodal(pls);
            std::vector<std::uint32_t> perp;
            for (std::uint32_t i = 0; i < pls.num_points(); ++i) perp.push_back(ap.perp_point(i));
            Outcome o;
            o.payload = {{"order", ap.order()}, {"antipodes", perp}};
            o.summary = fmt::format("antipodal plane of order {}", ap.order());
            return o;
        });
    }

    // embed
    std::string pls_arg;
    std::size_t cap = 1;
    std::uint64_t search_budget = SearchOptions{}.budget;
    bool no_normalize = false, certificate = false;
    {
        auto* em = app.add_subcommand("embed", "search for embeddings of a partial linear space");
        em->add_option("--pls", pls_arg, "pls file or builtin:mk | builtin:ap3 | builtin:pg24")->required();
        em->add_option("--plane", plane_arg, "field spec or plane file")->required();
        em->add_option("--modulus", modulus);
        em->add_option("--cap", cap, "stop after this many embeddings")->capture_default_str()->check(CLI::PositiveNumber);
        em->add_option("--budget", search_budget, "maximum placement attempts")->capture_default_str();
        em->add_flag("--no-normalize", no_normalize, "search without fixing a frame");
        em->add_flag("--certificate", certificate, "slope certificate for the first embedding");
        em->add_option("--out", record_path, "run record file");
        bind(em, [&] {
            auto pls = load_pls(pls_arg, inputs);
            auto plane = load_plane(plane_arg, modulus, inputs);
            SearchOptions so;
            so.cap = cap;
            so.budget = search_budget;
            so.normalize = !no_normalize;
            so.threads = threads;
            auto out = embed_search(pls, plane, so);
            json embeddings = json::array();
            for (const auto& e : out.embeddings) embeddings.push_back(embedding_json(e));
            Outcome o;
            o.payload = {{"status", to_string(out.status)}, {"complete", out.complete}, {"normalized", out.normalized},
                         {"embeddings", embeddings}, {"stats", stats_json(out.stats)}};
            if (out.seed) o.payload["seed_points"] = *out.seed;
            if (certificate && !out.embeddings.empty()) {
                auto ap = validate_antipodal(pls);
                auto c = slope_certificate(ap, plane, out.embeddings[0]);
                const auto& f = plane.field();
                json cert = {{"triangle", c.triangle},
                             {"t", {f.to_string(c.t[0]), f.to_string(c.t[1]), f.to_string(c.t[2])}},
                             {"product", f.to_string(c.product)}};
                if (c.line) cert["line"] = *c.line;
                if (c.transversal_product) cert["transversal_product"] = f.to_string(*c.transversal_product);
                o.payload["certificate"] = cert;
            }
            o.ok = out.status != SearchStatus::BudgetExceeded;
            o.summary = fmt::format("{}: {} embedding(s), {} nodes", to_string(out.status), out.embeddings.size(),
                                    out.stats.nodes);
            return o;
        });
    }

    // suite
    SuiteOptions suite_opts;
    std::string suite_plane_file;
    std::vector<std::string> only;
    {
        auto* suite_cmd = app.add_subcommand("suite", "acceptance battery")->require_subcommand(1);
        auto* acc = suite_cmd->add_subcommand("acceptance", "run every acceptance row");
        acc->add_option("--plane-file", suite_plane_file, "plane file for the ingestion row");
        acc->add_option("--budget", suite_opts.search_budget, "embedding search budget")->capture_default_str();
        acc->add_option("--random-words", suite_opts.random_words, "random dual words per plane")->capture_default_str();
        acc->add_option("--only", only, "row ids to run (ingestion, 1..11, experiments)");
        acc->add_option("--out", record_path, "run record file");
        bind(acc, [&] {
            suite_opts.threads = threads;
            suite_opts.seed = seed;
            if (!suite_plane_file.empty()) {
                suite_opts.plane_file = suite_plane_file;
                inputs.note("plane_file", read_file(suite_plane_file));
            }
            suite_opts.only = {only.begin(), only.end()};
            auto report = run_acceptance(suite_opts, [](const SuiteRow& row) {
                std::cerr << format_row(row) << '\n';
            });
            Outcome o;
            o.payload = to_json(report);
            o.ok = report.passed;
            std::uint32_t failed = 0;
            for (const auto& r : report.rows) failed += !r.pass;
            o.summary = report.passed ? fmt::format("all {} rows pass", report.rows.size())
                                      : fmt::format("{} of {} rows FAILED", failed, report.rows.size());
            return o;
        });
    }

    const auto started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    json record = {{"argv", std::vector<std::string>(argv, argv + argc)},
                   {"versions",
                    {{"planecode", kVersion},
                     {"cli11", fmt::format("{}.{}.{}", CLI11_VERSION_MAJOR, CLI11_VERSION_MINOR, CLI11_VERSION_PATCH)},
                     {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                                   NLOHMANN_JSON_VERSION_PATCH)},
                     {"fmt", FMT_VERSION},
                     {"compiler", __VERSION__}}},
                   {"started_at", started}};
    int exit_code = 0;
    auto emit = [&] {
        record["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto text = record.dump(2) + "\n";
        if (record_path.empty()) {
            std::cout << text;
        } else {
            try {
                write_file(record_path, text);
            } catch (const Error& e) {
                std::cerr << e.what() << '\n';
                std::cout << text;
            }
        }
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\nrun with --help for usage\n";
        record["command"] = "";
        record["status"] = "usage-error";
        record["error"] = {{"code", "Usage"}, {"detail", e.what()}};
        emit();
        return 2;
    }

    record["command"] = command_path(selected);
    record["config"] = echo_config(selected);
    record["config"]["--threads"] = std::to_string(threads);
    try {
        auto o = action();
        record["status"] = o.ok ? "ok" : "failed";
        record["payload"] = o.payload;
        std::cerr << o.summary << '\n';
        exit_code = o.ok ? 0 : 1;
    } catch (const UsageError& e) {
        record["status"] = "usage-error";
        record["error"] = {{"code", "Usage"}, {"detail", e.what()}};
        std::cerr << "usage error: " << e.what() << '\n';
        exit_code = 2;
    } catch (const Error& e) {
        record["status"] = "error";
        record["error"] = {{"code", to_string(e.code())}, {"detail", e.detail()}};
        std::cerr << "error: " << e.what() << '\n';
        exit_code = 1;
    }
    record["input_hashes"] = inputs.hashes;
    emit();
    return exit_code;
}
