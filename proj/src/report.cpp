#include "linepack/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace linepack {

double round_significant(double v)
{
    if (v == 0.0 || !std::isfinite(v))
        return v == 0.0 ? 0.0 : v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

namespace {

Json num(double v)
{
    return round_significant(v);
}

Json vec_json(std::span<const double> v)
{
    Json a = Json::array();
    for (double c : v)
        a.push_back(num(c));
    return a;
}

Json index_json(const IndexSet& s)
{
    Json a = Json::array();
    for (std::size_t i : s)
        a.push_back(i);
    return a;
}

Json strings_json(const std::vector<std::string>& s)
{
    Json a = Json::array();
    for (const auto& v : s)
        a.push_back(v);
    return a;
}

Json diag_json(DiagnosticStatus status, const std::string& message)
{
    Json j;
    j["status"] = std::string(to_string(status));
    j["message"] = message;
    return j;
}

} // namespace

AnalysisReport analyze(const UnitVectorSystem& x, const Tolerances& tol, bool presumed_grassmannian)
{
    AnalysisReport r;
    r.tolerances = tol;
    r.m = x.size();
    r.n = x.dim();
    r.input_warnings = x.warnings();
    r.gram = gram(x);
    r.bounds = bounds_card(x, tol);
    r.tightness = tightness(x, tol);
    r.equiangular = equiangularity(x, tol);
    r.etf = is_etf(x, tol);
    r.spectrum = spectrum(x, tol);
    r.verdicts = classify_all(x, tol);
    r.core = core(x, tol);
    r.core_validation = validate_core(x, r.core, tol);
    r.drop_one = drop_one_spanning(x, tol);
    r.neighbor_counts = neighbor_count_report(x, tol);
    r.eigen_span = eigen_span_diagnostic(x, tol);
    r.tight_grassmannian = tight_grassmannian_diagnostic(x, presumed_grassmannian, tol);
    r.n_plus_2 = classify_n_plus_2(x, tol);

    if (r.equiangular.near_threshold)
        r.warnings.emplace_back("equiangularity decided near the neighbor_abs threshold");
    if (!near_ties(r.gram, r.gram.coherence, tol).empty())
        r.warnings.emplace_back("near-ties at the coherence level: neighbor sets are tolerance-sensitive");
    r.warnings.insert(r.warnings.end(), r.core.warnings.begin(), r.core.warnings.end());
    r.warnings.insert(r.warnings.end(), r.n_plus_2.warnings.begin(), r.n_plus_2.warnings.end());
    return r;
}

Json to_json(const Tolerances& tol)
{
    Json j;
    j["eq_abs"] = num(tol.eq_abs);
    j["neighbor_abs"] = num(tol.neighbor_abs);
    j["hull_abs"] = num(tol.hull_abs);
    j["rank_rel"] = num(tol.rank_rel);
    return j;
}

Json to_json(const UnitVectorSystem& x)
{
    Json j;
    j["dim"] = x.dim();
    Json rows = Json::array();
    for (const auto& v : x.vectors())
        rows.push_back(vec_json(v));
    j["vectors"] = std::move(rows);
    if (!x.labels().empty())
        j["labels"] = strings_json(x.labels());
    return j;
}

Json to_json(const BoundsCard& card)
{
    Json j;
    j["m"] = card.m;
    j["n"] = card.n;
    j["coherence"] = num(card.coherence);
    j["welch"] = card.welch ? num(*card.welch) : Json("inapplicable");
    j["orthoplex"] = num(card.orthoplex);
    j["gerzon_max_m"] = card.gerzon_max_m;
    j["meets_welch"] = card.meets_welch;
    j["meets_welch_tolerance"] = num(kWelchEqualityTol);
    j["exceeds_gerzon"] = card.exceeds_gerzon;
    j["welch_respected"] = card.welch_respected;
    return j;
}

Json to_json(const VectorVerdict& v)
{
    Json j;
    j["index"] = v.index;
    j["status"] = std::string(to_string(v.status));
    j["stage"] = v.stage;
    j["coherence"] = num(v.coherence);
    j["neighbor_count"] = v.neighbor_count;
    j["neighbor_span_rank"] = v.neighbor_span_rank;
    j["hull_norm"] = num(v.hull_norm);
    j["witness"] = v.witness ? vec_json(*v.witness) : Json(nullptr);
    j["replacement"] = v.replacement ? vec_json(*v.replacement) : Json(nullptr);
    if (v.certificate)
    {
        Json c;
        c["hull_weights"] = vec_json(v.certificate->hull_weights);
        Json targets = Json::array();
        for (std::size_t k = 0; k < v.certificate->targets.size(); ++k)
        {
            Json t;
            t["target"] = vec_json(v.certificate->targets[k]);
            t["weights"] = vec_json(v.certificate->cone_weights[k]);
            targets.push_back(std::move(t));
        }
        c["cone"] = std::move(targets);
        j["certificate"] = std::move(c);
    }
    else
        j["certificate"] = nullptr;
    j["warnings"] = strings_json(v.warnings);
    return j;
}

Json to_json(const CoreTrace& trace)
{
    Json j;
    j["input_coherence"] = num(trace.input_coherence);
    j["initial_isolable"] = index_json(trace.initial_isolable);
    j["initial_indeterminate"] = index_json(trace.initial_indeterminate);
    Json levels = Json::array();
    for (const auto& l : trace.levels)
    {
        Json lj;
        lj["members"] = index_json(l.members);
        lj["isolable"] = index_json(l.isolable);
        lj["indeterminate"] = index_json(l.indeterminate);
        lj["coherence"] = num(l.coherence);
        levels.push_back(std::move(lj));
    }
    j["levels"] = std::move(levels);
    j["core"] = index_json(trace.core);
    j["core_size"] = trace.core.size();
    j["warnings"] = strings_json(trace.warnings);
    return j;
}

Json to_json(const CoreValidation& v)
{
    Json j = diag_json(v.status, v.message);
    j["size_check"] = std::string(to_string(v.size_check));
    j["span_check"] = std::string(to_string(v.span_check));
    Json ranks = Json::array();
    for (std::size_t r : v.neighbor_ranks)
        ranks.push_back(r);
    j["neighbor_ranks"] = std::move(ranks);
    return j;
}

Json to_json(const AngleCatalogEntry& e)
{
    Json j;
    j["m"] = e.m;
    j["n"] = e.n;
    j["kind"] = std::string(to_string(e.kind));
    j["value"] = num(e.value);
    j["rule"] = e.rule;
    return j;
}

Json to_json(const CatalogConsistency& c)
{
    Json j;
    j["comparisons"] = c.comparisons.size();
    j["violations"] = c.violations;
    Json failed = Json::array();
    for (const auto& cmp : c.comparisons)
        if (!cmp.holds)
            failed.push_back(cmp.relation);
    j["failed"] = std::move(failed);
    return j;
}

Json to_json(const AnalysisReport& r)
{
    Json j;
    j["tolerances"] = to_json(r.tolerances);

    Json input;
    input["m"] = r.m;
    input["n"] = r.n;
    input["warnings"] = strings_json(r.input_warnings);
    j["input"] = std::move(input);

    Json coh;
    coh["value"] = num(r.gram.coherence);
    coh["neighbor_tolerance"] = num(r.tolerances.neighbor_abs);
    j["coherence"] = std::move(coh);

    Json gram = Json::array();
    for (std::size_t i = 0; i < r.gram.entries.rows(); ++i)
        gram.push_back(vec_json(r.gram.entries.row(i)));
    j["gram"] = std::move(gram);

    j["bounds"] = to_json(r.bounds);

    Json tight;
    tight["verdict"] = std::string(to_string(r.tightness.kind));
    tight["bound"] = r.tightness.tight() ? num(r.tightness.bound) : Json(nullptr);
    tight["deviation"] = num(r.tightness.deviation);
    tight["tolerance"] = num(r.tolerances.eq_abs);
    j["tightness"] = std::move(tight);

    Json eq;
    eq["equiangular"] = r.equiangular.equiangular;
    eq["angle"] = num(r.equiangular.angle);
    eq["spread"] = num(r.equiangular.spread);
    eq["near_threshold"] = r.equiangular.near_threshold;
    eq["tolerance"] = num(r.tolerances.neighbor_abs);
    j["equiangular"] = std::move(eq);

    Json etf;
    etf["etf"] = r.etf.etf;
    etf["welch_gap"] = r.etf.welch_gap ? num(*r.etf.welch_gap) : Json(nullptr);
    etf["welch_tolerance"] = num(kWelchEqualityTol);
    j["etf"] = std::move(etf);

    Json spec;
    spec["eigenvalues"] = vec_json(r.spectrum.eigenvalues);
    spec["top_multiplicity"] = r.spectrum.top_multiplicity;
    spec["multiplicity_tolerance"] = num(r.tolerances.eq_abs);
    j["spectrum"] = std::move(spec);

    Json verdicts = Json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back(to_json(v));
    j["verdicts"] = std::move(verdicts);

    j["core"] = to_json(r.core);
    j["core_validation"] = to_json(r.core_validation);

    Json diag;
    Json drop = diag_json(r.drop_one.status, r.drop_one.message);
    drop["failing"] = index_json(r.drop_one.failing);
    drop["rank_tolerance"] = num(r.tolerances.rank_rel);
    diag["drop_one_spanning"] = std::move(drop);

    Json counts = diag_json(r.neighbor_counts.status, r.neighbor_counts.message);
    counts["level"] = num(r.neighbor_counts.level);
    Json cs = Json::array();
    for (std::size_t c : r.neighbor_counts.counts)
        cs.push_back(c);
    counts["counts"] = std::move(cs);
    counts["tolerance"] = num(r.tolerances.neighbor_abs);
    diag["neighbor_counts"] = std::move(counts);

    Json es = diag_json(r.eigen_span.status, r.eigen_span.message);
    es["top_multiplicity"] = r.eigen_span.top_multiplicity;
    Json dists = Json::array();
    for (const auto& d : r.eigen_span.distances)
        dists.push_back(vec_json(d));
    es["distances"] = std::move(dists);
    es["tolerance"] = num(kEigenSpanTol);
    diag["eigen_span"] = std::move(es);

    diag["tight_grassmannian"] = diag_json(r.tight_grassmannian.status, r.tight_grassmannian.message);

    Json np2;
    np2["verdict"] = std::string(to_string(r.n_plus_2.kind));
    np2["indices"] = index_json(r.n_plus_2.indices);
    diag["n_plus_2"] = std::move(np2);
    j["diagnostics"] = std::move(diag);

    j["warnings"] = strings_json(r.warnings);
    return j;
}

std::string emit_json(const Json& j)
{
    return j.dump(2) + "\n";
}

std::string format_number(double v)
{
    if (std::abs(v) < 5e-11)
        return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    std::string s = buf;
    if (s.find('.') != std::string::npos)
    {
        while (s.back() == '0')
            s.pop_back();
        if (s.back() == '.')
            s.pop_back();
    }
    return s;
}

namespace {

std::string join_indices(const IndexSet& s)
{
    std::ostringstream out;
    out << "{";
    for (std::size_t k = 0; k < s.size(); ++k)
        out << (k ? ", " : "") << s[k];
    out << "}";
    return out.str();
}

} // namespace

std::string render_gram(const GramMatrix& g)
{
    std::vector<std::vector<std::string>> cells;
    std::size_t width = 1;
    for (std::size_t i = 0; i < g.entries.rows(); ++i)
    {
        cells.emplace_back();
        for (std::size_t j = 0; j < g.entries.cols(); ++j)
        {
            cells.back().push_back(format_number(g.entries(i, j)));
            width = std::max(width, cells.back().back().size());
        }
    }
    std::ostringstream out;
    for (const auto& row : cells)
    {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "  " : "  ") << std::setw(static_cast<int>(width)) << row[j];
        out << "\n";
    }
    return out.str();
}

std::string render_text(const std::vector<VectorVerdict>& verdicts)
{
    std::ostringstream out;
    out << "  idx  status             stage               nbrs  rank\n";
    for (const auto& v : verdicts)
    {
        out << "  " << std::setw(3) << v.index << "  " << std::left << std::setw(17) << to_string(v.status) << "  "
            << std::setw(18) << v.stage << std::right << "  " << std::setw(4) << v.neighbor_count << "  "
            << std::setw(4) << v.neighbor_span_rank << "\n";
        for (const auto& w : v.warnings)
            out << "       warning: " << w << "\n";
    }
    return out.str();
}

std::string render_text(const CoreTrace& trace, const CoreValidation& validation)
{
    std::ostringstream out;
    out << "input coherence: " << format_number(trace.input_coherence) << "\n";
    out << "I(X): " << join_indices(trace.initial_isolable) << "\n";
    for (std::size_t k = 0; k < trace.levels.size(); ++k)
    {
        const auto& l = trace.levels[k];
        out << "Y_" << k + 1 << " = " << join_indices(l.members) << "  coh " << format_number(l.coherence)
            << "  I(Y_" << k + 1 << ") = " << join_indices(l.isolable) << "\n";
    }
    out << "core (" << trace.core.size() << "): " << join_indices(trace.core) << "\n";
    out << "validation: " << to_string(validation.status) << " - " << validation.message << "\n";
    for (const auto& w : trace.warnings)
        out << "warning: " << w << "\n";
    return out.str();
}

std::string render_text(const AnalysisReport& r)
{
    std::ostringstream out;
    out << "system: m = " << r.m << ", n = " << r.n << "\n";
    out << "tolerances: eq " << r.tolerances.eq_abs << ", neighbor " << r.tolerances.neighbor_abs << ", hull "
        << r.tolerances.hull_abs << ", rank " << r.tolerances.rank_rel << "\n";
    for (const auto& w : r.input_warnings)
        out << "input warning: " << w << "\n";
    out << "coherence: " << format_number(r.gram.coherence) << "\n";
    out << "gram:\n" << render_gram(r.gram);
    out << "bounds: welch " << (r.bounds.welch ? format_number(*r.bounds.welch) : std::string("inapplicable"))
        << ", orthoplex " << format_number(r.bounds.orthoplex) << ", gerzon max m " << r.bounds.gerzon_max_m
        << (r.bounds.meets_welch ? " (meets welch)" : "") << (r.bounds.exceeds_gerzon ? " (exceeds gerzon)" : "")
        << "\n";
    out << "tightness: " << to_string(r.tightness.kind);
    if (r.tightness.tight())
        out << " (A = " << format_number(r.tightness.bound) << ")";
    out << "\n";
    out << "equiangular: " << (r.equiangular.equiangular ? "yes" : "no") << ", etf: " << (r.etf.etf ? "yes" : "no")
        << "\n";
    out << "spectrum:";
    for (double lam : r.spectrum.eigenvalues)
        out << " " << format_number(lam);
    out << " (top multiplicity " << r.spectrum.top_multiplicity << ")\n";
    out << "verdicts:\n" << render_text(r.verdicts);
    out << render_text(r.core, r.core_validation);
    out << "drop-one spanning: " << to_string(r.drop_one.status) << " - " << r.drop_one.message << "\n";
    out << "neighbor counts: " << to_string(r.neighbor_counts.status) << " - " << r.neighbor_counts.message << "\n";
    out << "eigen span: " << to_string(r.eigen_span.status) << " - " << r.eigen_span.message << "\n";
    out << "tight grassmannian: " << to_string(r.tight_grassmannian.status) << " - " << r.tight_grassmannian.message
        << "\n";
    out << "n+2 dichotomy: " << to_string(r.n_plus_2.kind) << "\n";
    for (const auto& w : r.warnings)
        out << "warning: " << w << "\n";
    return out.str();
}

} // namespace linepack
