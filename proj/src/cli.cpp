#include "linepack/cli.hpp"

#include "linepack/catalog.hpp"
#include "linepack/constructions.hpp"
#include "linepack/core_analysis.hpp"
#include "linepack/error.hpp"
#include "linepack/frame_io.hpp"
#include "linepack/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace linepack::cli {

namespace {

struct Options
{
    std::optional<double> tol_eq;
    std::optional<double> tol_neighbor;
    std::optional<double> tol_hull;
    std::optional<double> tol_rank;
    std::string format = "json";
    std::string out_path;

    std::vector<std::string> files;
    std::string file = "-";
    std::optional<std::size_t> index;
    std::string name;
    std::size_t m = 0;
    std::size_t n = 0;
    bool consistency = false;
    bool assume_grassmannian = false;

    ToleranceOverrides overrides() const { return {tol_eq, tol_neighbor, tol_hull, tol_rank}; }
    bool json() const { return format == "json"; }
};

// File tolerances apply first; command-line flags win over them.
UnitVectorSystem load(const std::string& path, const Options& opt, std::istream& in, Tolerances& tol)
{
    std::string text;
    if (path == "-")
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    else
        text = read_input(path);
    const FrameFile f = parse_frame_file_text(text);
    tol = opt.overrides().apply(f.overrides.apply(Tolerances{}));
    return f.to_system(tol);
}

int exit_code_for(ErrorCode code)
{
    if (is_numerical(code) || code == ErrorCode::NotOrthonormal || code == ErrorCode::NotSymmetric)
        return kNumerical;
    return kInput;
}

std::string frame_text(const UnitVectorSystem& x, const std::vector<std::string>& comments)
{
    std::string s;
    for (const auto& c : comments)
        s += "# " + c + "\n";
    return s + write_frame_plain(x);
}

// ---------------------------------------------------------------- analyze

std::string cmd_analyze(const Options& opt, std::istream& in)
{
    const std::vector<std::string> files = opt.files.empty() ? std::vector<std::string>{"-"} : opt.files;
    std::vector<std::string> texts(files.size());
    for (std::size_t k = 0; k < files.size(); ++k)
    {
        if (files[k] == "-")
            texts[k].assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        else
            texts[k] = read_input(files[k]);
    }

    // One task per file; output is assembled afterwards in argument order.
    std::vector<std::string> rendered(files.size());
    std::vector<Json> reports(files.size());
    std::vector<std::exception_ptr> errors(files.size());
#pragma omp parallel for schedule(dynamic) if (files.size() > 1)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(files.size()); ++k)
    {
        try
        {
            const FrameFile f = parse_frame_file_text(texts[k]);
            const Tolerances tol = opt.overrides().apply(f.overrides.apply(Tolerances{}));
            const auto x = f.to_system(tol);
            const auto report = analyze(x, tol);
            if (opt.json())
                reports[k] = to_json(report);
            else
                rendered[k] = render_text(report);
        }
        catch (...)
        {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    if (!opt.json())
    {
        std::string s;
        for (std::size_t k = 0; k < files.size(); ++k)
            s += (files.size() > 1 ? "== " + files[k] + "\n" : std::string()) + rendered[k];
        return s;
    }
    if (files.size() == 1)
        return emit_json(reports[0]);
    Json all = Json::array();
    for (std::size_t k = 0; k < files.size(); ++k)
    {
        Json j;
        j["file"] = files[k];
        j["report"] = std::move(reports[k]);
        all.push_back(std::move(j));
    }
    return emit_json(all);
}

// ---------------------------------------------------------------- core / classify

std::string cmd_core(const Options& opt, std::istream& in)
{
    Tolerances tol;
    const auto x = load(opt.file, opt, in, tol);
    const auto trace = core(x, tol);
    const auto validation = validate_core(x, trace, tol);
    if (!opt.json())
        return render_text(trace, validation);
    Json j;
    j["tolerances"] = to_json(tol);
    j["trace"] = to_json(trace);
    j["validation"] = to_json(validation);
    return emit_json(j);
}

std::string cmd_classify(const Options& opt, std::istream& in)
{
    Tolerances tol;
    const auto x = load(opt.file, opt, in, tol);
    std::vector<VectorVerdict> verdicts;
    if (opt.index)
    {
        if (*opt.index >= x.size())
            throw Error(ErrorCode::Precondition, "index " + std::to_string(*opt.index) + " out of range (m = "
                                                     + std::to_string(x.size()) + ")");
        verdicts.push_back(classify_vector(x, *opt.index, tol));
    }
    else
        verdicts = classify_all(x, tol);

    if (!opt.json())
        return render_text(verdicts);
    Json j;
    j["tolerances"] = to_json(tol);
    if (opt.index)
        j["verdict"] = to_json(verdicts.front());
    else
    {
        Json a = Json::array();
        for (const auto& v : verdicts)
            a.push_back(to_json(v));
        j["verdicts"] = std::move(a);
    }
    return emit_json(j);
}

// ---------------------------------------------------------------- naimark / double / construct

std::string cmd_naimark(const Options& opt, std::istream& in)
{
    Tolerances tol;
    const auto x = load(opt.file, opt, in, tol);
    const auto nc = naimark_complement(x, tol);
    if (!opt.json())
    {
        return frame_text(nc.system, {"naimark complement of " + std::to_string(x.size()) + " vectors in R^"
                                          + std::to_string(x.dim()),
                                      "lambda " + format_number(nc.lambda) + " (multiplicity "
                                          + std::to_string(nc.multiplicity) + ")",
                                      "gram residual " + std::to_string(nc.gram_residual) + ", norm residual "
                                          + std::to_string(nc.norm_residual)});
    }
    Json j = to_json(nc.system);
    Json v;
    v["lambda"] = round_significant(nc.lambda);
    v["multiplicity"] = nc.multiplicity;
    v["gram_residual"] = round_significant(nc.gram_residual);
    v["norm_residual"] = round_significant(nc.norm_residual);
    v["coherence_in"] = round_significant(coherence(x));
    v["coherence_out"] = round_significant(coherence(nc.system));
    v["tolerance"] = 1e-8;
    j["verification"] = std::move(v);
    return emit_json(j);
}

std::string cmd_double(const Options& opt, std::istream& in)
{
    Tolerances tol;
    const auto x = load(opt.file, opt, in, tol);
    const auto d = double_frame(x);
    const std::size_t m = x.size();
    double cross = 0.0;
    const auto g = gram(d);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            cross = std::max(cross, std::abs(g.entries(i, m + j)));
    const auto t_in = tightness(x, tol);
    const auto t_out = tightness(d, tol);

    if (!opt.json())
    {
        return frame_text(d, {"doubled frame of " + std::to_string(m) + " vectors in R^" + std::to_string(x.dim()),
                              "coherence " + format_number(coherence(x)) + " -> " + format_number(g.coherence),
                              "tightness " + std::string(to_string(t_in.kind)) + " -> "
                                  + std::string(to_string(t_out.kind)),
                              "max cross-block |inner product| " + format_number(cross)});
    }
    Json j = to_json(d);
    Json v;
    v["coherence_in"] = round_significant(coherence(x));
    v["coherence_out"] = round_significant(g.coherence);
    v["tightness_in"] = std::string(to_string(t_in.kind));
    v["tightness_out"] = std::string(to_string(t_out.kind));
    v["bound_out"] = t_out.tight() ? Json(round_significant(t_out.bound)) : Json(nullptr);
    v["max_cross_block"] = round_significant(cross);
    v["tolerance"] = round_significant(tol.eq_abs);
    j["verification"] = std::move(v);
    return emit_json(j);
}

std::string cmd_construct(const Options& opt)
{
    const auto x = construct_by_name(opt.name, opt.m, opt.n);
    return opt.json() ? write_frame_json(x) : write_frame_plain(x);
}

// ---------------------------------------------------------------- catalog

std::string cmd_catalog(const Options& opt)
{
    if (opt.consistency)
    {
        const auto c = catalog_consistency(2, 300, 3, 330);
        if (opt.json())
            return emit_json(to_json(c));
        std::ostringstream s;
        s << c.comparisons.size() << " comparisons, " << c.violations << " violations\n";
        for (const auto& cmp : c.comparisons)
            if (!cmp.holds)
                s << "violated: " << cmp.relation << "\n";
        return s.str();
    }
    if (opt.m == 0 || opt.n == 0)
        throw CLI::RequiredError("catalog needs --m and --n (or --consistency)");

    const auto entries = angle_catalog(opt.m, opt.n);
    if (opt.json())
    {
        if (entries.empty())
            return emit_json(Json("unknown"));
        if (entries.size() == 1)
            return emit_json(to_json(entries.front()));
        Json a = Json::array();
        for (const auto& e : entries)
            a.push_back(to_json(e));
        return emit_json(a);
    }
    if (entries.empty())
        return "unknown\n";
    std::string s;
    for (const auto& e : entries)
        s += std::string(e.kind == AngleCatalogEntry::Kind::GrassmannianAlpha ? "alpha" : "mu") + "("
             + std::to_string(e.m) + "," + std::to_string(e.n) + ") = " + format_number(e.value) + "  [" + e.rule
             + "]\n";
    return s;
}

// ---------------------------------------------------------------- check

struct CheckItem
{
    std::string name;
    DiagnosticStatus status = DiagnosticStatus::Skip;
    std::string detail;
    bool grassmannian_only = false; ///< only binding under --assume-grassmannian
};

DiagnosticStatus pass_if(bool ok)
{
    return ok ? DiagnosticStatus::Pass : DiagnosticStatus::Fail;
}

std::vector<CheckItem> check_suite(const UnitVectorSystem& x, const Tolerances& tol, bool assume)
{
    std::vector<CheckItem> items;
    const std::size_t m = x.size();
    const std::size_t n = x.dim();

    double norm_dev = 0.0;
    for (const auto& v : x.vectors())
        norm_dev = std::max(norm_dev, std::abs(norm(v) - 1.0));
    items.push_back({"unit-norms", pass_if(norm_dev <= tol.eq_abs), "max | |x_i| - 1 | = " + format_number(norm_dev)});

    const auto gs = gram(x, kernels::Exec::Serial);
    const auto gp = gram(x, kernels::Exec::Parallel);
    double asym = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            asym = std::max(asym, std::abs(gs.entries(i, j) - gs.entries(j, i)));
    items.push_back({"gram-symmetric", pass_if(asym == 0.0), "max asymmetry " + format_number(asym)});
    const bool same = (gs.entries - gp.entries).max_abs() == 0.0
                      && (frame_operator(x, kernels::Exec::Serial) - frame_operator(x, kernels::Exec::Parallel)).max_abs()
                             == 0.0;
    items.push_back({"serial-parallel-agree", pass_if(same), "gram and frame operator kernels"});

    const auto card = bounds_card(x, tol);
    if (card.welch)
        items.push_back({"welch-bound", pass_if(card.welch_respected),
                         "coherence " + format_number(card.coherence) + " vs welch " + format_number(*card.welch)});
    else
        items.push_back({"welch-bound", DiagnosticStatus::Skip, "m <= n"});

    try
    {
        const auto etf = is_etf(x, tol);
        items.push_back({"etf-welch-agreement", DiagnosticStatus::Pass, etf.etf ? "etf" : "not an etf"});
    }
    catch (const Error& e)
    {
        items.push_back({"etf-welch-agreement", DiagnosticStatus::Fail, e.what()});
    }

    if (spans(x, tol))
    {
        Vec t(n);
        for (std::size_t k = 0; k < n; ++k)
            t[k] = static_cast<double>(k + 1);
        try
        {
            const Vec r = reconstruct(x, t, tol);
            const double err = norm(difference(r, t));
            items.push_back({"reconstruction", pass_if(err <= 1e-8 * norm(t)), "error " + format_number(err)});
        }
        catch (const Error& e)
        {
            items.push_back({"reconstruction", DiagnosticStatus::Fail, e.what()});
        }
    }
    else
        items.push_back({"reconstruction", DiagnosticStatus::Skip, "does not span R^n"});

    // Every isolable verdict carries a witness and a validated replacement.
    const auto verdicts = classify_all(x, tol);
    const auto& g = gs;
    std::size_t bad = 0;
    std::size_t indeterminate = 0;
    std::string first_bad;
    for (const auto& v : verdicts)
    {
        if (v.status == VectorStatus::Indeterminate)
            ++indeterminate;
        if (!is_isolable(v.status) || v.status == VectorStatus::Isolated)
            continue;
        bool ok = v.witness && v.replacement;
        if (ok)
        {
            const Vec& w = *v.witness;
            const Vec& xi = x[v.index];
            ok = std::abs(norm(w) - 1.0) <= 1e-9 && std::abs(dot(w, xi)) <= 1e-9;
            const auto nb = neighbors(g, v.index, g.coherence, tol);
            for (std::size_t k = 0; ok && k < nb.members.size(); ++k)
                ok = nb.signs[k] * dot(w, x[nb.members[k]]) <= tol.hull_abs;
            const double limit = g.coherence - replacement_margin(g.coherence);
            for (std::size_t j = 0; ok && j < m; ++j)
                if (j != v.index)
                    ok = std::abs(dot(*v.replacement, x[j])) < limit;
        }
        if (!ok && bad++ == 0)
            first_bad = "vector " + std::to_string(v.index);
    }
    items.push_back({"isolability-witnesses", pass_if(bad == 0),
                     bad ? first_bad + " has an invalid witness or replacement"
                         : std::to_string(verdicts.size()) + " verdicts checked"});
    if (indeterminate)
        items.push_back({"indeterminate-verdicts", DiagnosticStatus::Ambiguous,
                         std::to_string(indeterminate) + " vector(s) could not be decided"});

    // Statements that hold for Grassmannian inputs only.
    const auto replacement = replace_all_isolable(x, tol);
    items.push_back({"replace-all-coherence", replacement.coherence_check,
                     "coh(X') " + format_number(replacement.coherence_after) + " vs coh(X \\ I(X)) "
                         + format_number(replacement.coherence_rest),
                     true});
    const auto trace = core(x, tol);
    const auto cv = validate_core(x, trace, tol);
    items.push_back({"core-validation", cv.status, cv.message, true});
    const auto drop = drop_one_spanning(x, tol);
    items.push_back({"drop-one-spanning", drop.status, drop.message, true});
    const auto counts = neighbor_count_report(x, tol);
    items.push_back({"neighbor-counts", counts.status, counts.message, true});
    const auto es = eigen_span_diagnostic(x, tol);
    items.push_back({"eigen-span", es.status, es.message, true});
    const auto tg = tight_grassmannian_diagnostic(x, assume, tol);
    items.push_back({"tight-grassmannian", tg.status, tg.message, true});
    const auto np2 = classify_n_plus_2(x, tol);
    DiagnosticStatus np2_status = DiagnosticStatus::Skip;
    if (np2.kind == DichotomyVerdict::Kind::EquiangularSubset || np2.kind == DichotomyVerdict::Kind::FullCore)
        np2_status = DiagnosticStatus::Pass;
    else if (np2.kind == DichotomyVerdict::Kind::Undetermined)
        np2_status = DiagnosticStatus::Ambiguous;
    items.push_back({"n-plus-2-dichotomy", np2_status, std::string(to_string(np2.kind)), true});
    return items;
}

bool binding_failure(const CheckItem& item, bool assume)
{
    return item.status == DiagnosticStatus::Fail && (assume || !item.grassmannian_only);
}

int cmd_check(const Options& opt, std::istream& in, std::string& output)
{
    Tolerances tol;
    const auto x = load(opt.file, opt, in, tol);
    const auto items = check_suite(x, tol, opt.assume_grassmannian);
    bool failed = false;
    for (const auto& item : items)
        failed = failed || binding_failure(item, opt.assume_grassmannian);

    if (opt.json())
    {
        Json j;
        j["tolerances"] = to_json(tol);
        j["assume_grassmannian"] = opt.assume_grassmannian;
        Json a = Json::array();
        for (const auto& item : items)
        {
            Json r;
            r["name"] = item.name;
            r["status"] = std::string(to_string(item.status));
            r["binding"] = opt.assume_grassmannian || !item.grassmannian_only;
            r["detail"] = item.detail;
            a.push_back(std::move(r));
        }
        j["checks"] = std::move(a);
        j["result"] = failed ? "FAIL" : "PASS";
        output = emit_json(j);
    }
    else
    {
        std::ostringstream s;
        for (const auto& item : items)
        {
            std::string label(to_string(item.status));
            if (item.status == DiagnosticStatus::Fail && !binding_failure(item, opt.assume_grassmannian))
                label += " (informational)";
            s << label << "  " << item.name << ": " << item.detail << "\n";
        }
        s << (failed ? "FAIL" : "PASS") << "\n";
        output = s.str();
    }
    return failed ? kCheckFailed : kOk;
}

void emit(const std::string& text, const Options& opt, std::ostream& out)
{
    if (opt.out_path.empty())
    {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::IoError, "cannot write " + opt.out_path);
    f << text;
    if (!f)
        throw Error(ErrorCode::IoError, "write to " + opt.out_path + " failed");
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Coherence, isolability and core analysis for unit-vector systems", "linepack"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    auto positive = CLI::PositiveNumber & CLI::Range(0.0, 1e-2);
    app.add_option("--tol-eq", opt.tol_eq, "equality tolerance (default 1e-9)")->check(positive);
    app.add_option("--tol-neighbor", opt.tol_neighbor, "packing-neighbor tolerance (default 1e-8)")->check(positive);
    app.add_option("--tol-hull", opt.tol_hull, "hull/cone tolerance (default 1e-9)")->check(positive);
    app.add_option("--tol-rank", opt.tol_rank, "relative rank cutoff (default 1e-10)")->check(positive);
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", opt.out_path, "write output to a file instead of stdout");

    auto* analyze_cmd = app.add_subcommand("analyze", "full analysis report");
    analyze_cmd->add_option("files", opt.files, "frame files ('-' for stdin)");
    auto* core_cmd = app.add_subcommand("core", "iterated removal of isolable vectors");
    core_cmd->add_option("file", opt.file, "frame file ('-' for stdin)");
    auto* classify_cmd = app.add_subcommand("classify", "per-vector isolability verdicts");
    classify_cmd->add_option("file", opt.file, "frame file ('-' for stdin)");
    classify_cmd->add_option("--index", opt.index, "classify only this (0-based) vector");
    auto* naimark_cmd = app.add_subcommand("naimark", "Naimark complement");
    naimark_cmd->add_option("file", opt.file, "frame file ('-' for stdin)");
    auto* double_cmd = app.add_subcommand("double", "frame doubling into R^{2n}");
    double_cmd->add_option("file", opt.file, "frame file ('-' for stdin)");
    auto* construct_cmd = app.add_subcommand("construct", "write a built-in frame");
    construct_cmd->add_option("name", opt.name, "circular | six-in-r4 | mub-r2 | simplex")->required();
    construct_cmd->add_option("--m", opt.m, "number of vectors (circular)");
    construct_cmd->add_option("--n", opt.n, "dimension (simplex)");
    auto* catalog_cmd = app.add_subcommand("catalog", "exact packing angles");
    catalog_cmd->add_option("--m", opt.m, "number of vectors");
    catalog_cmd->add_option("--n", opt.n, "dimension");
    catalog_cmd->add_flag("--consistency", opt.consistency, "check catalog inequalities instead");
    auto* check_cmd = app.add_subcommand("check", "invariant suite for one file");
    check_cmd->add_option("file", opt.file, "frame file ('-' for stdin)");
    check_cmd->add_flag("--assume-grassmannian", opt.assume_grassmannian,
                        "treat the input as Grassmannian, making the dependent diagnostics binding");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kOk;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    }
    catch (const CLI::ParseError& e)
    {
        err << "linepack: " << e.what() << "\n";
        return kUsage;
    }

    try
    {
        std::string text;
        int code = kOk;
        if (analyze_cmd->parsed())
            text = cmd_analyze(opt, in);
        else if (core_cmd->parsed())
            text = cmd_core(opt, in);
        else if (classify_cmd->parsed())
            text = cmd_classify(opt, in);
        else if (naimark_cmd->parsed())
            text = cmd_naimark(opt, in);
        else if (double_cmd->parsed())
            text = cmd_double(opt, in);
        else if (construct_cmd->parsed())
            text = cmd_construct(opt);
        else if (catalog_cmd->parsed())
            text = cmd_catalog(opt);
        else if (check_cmd->parsed())
            code = cmd_check(opt, in, text);
        emit(text, opt, out);
        return code;
    }
    catch (const CLI::ParseError& e)
    {
        err << "linepack: " << e.what() << "\n";
        return kUsage;
    }
    catch (const Error& e)
    {
        err << "linepack: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    catch (const std::exception& e)
    {
        err << "linepack: internal error: " << e.what() << "\n";
        return kNumerical;
    }
}

} // namespace linepack::cli
