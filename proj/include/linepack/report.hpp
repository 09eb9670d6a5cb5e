#pragma once

#include "linepack/catalog.hpp"
#include "linepack/constructions.hpp"
#include "linepack/core_analysis.hpp"
#include "linepack/frames.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace linepack {

using Json = nlohmann::ordered_json;

/// Rounds to 15 significant digits so that emitted numbers are stable and
/// short. Zero (including -0) becomes +0.
double round_significant(double v);

struct AnalysisReport
{
    Tolerances tolerances;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<std::string> input_warnings;
    GramMatrix gram;
    BoundsCard bounds;
    TightnessVerdict tightness;
    Equiangularity equiangular;
    EtfVerdict etf;
    SpectralData spectrum;
    std::vector<VectorVerdict> verdicts;
    CoreTrace core;
    CoreValidation core_validation;
    DropOneReport drop_one;
    NeighborCountReport neighbor_counts;
    EigenSpanReport eigen_span;
    DiagnosticReport tight_grassmannian;
    DichotomyVerdict n_plus_2;
    std::vector<std::string> warnings;
};

AnalysisReport analyze(const UnitVectorSystem& x, const Tolerances& tol, bool presumed_grassmannian = false);

Json to_json(const Tolerances& tol);
Json to_json(const UnitVectorSystem& x);
Json to_json(const BoundsCard& card);
Json to_json(const VectorVerdict& v);
Json to_json(const CoreTrace& trace);
Json to_json(const CoreValidation& v);
Json to_json(const AngleCatalogEntry& e);
Json to_json(const CatalogConsistency& c);
Json to_json(const AnalysisReport& r);

/// Two-space indented JSON, trailing newline.
std::string emit_json(const Json& j);

/// Fixed 10-decimal rendering with trailing zeros trimmed; tiny values print
/// as 0.
std::string format_number(double v);

std::string render_text(const AnalysisReport& r);
std::string render_text(const CoreTrace& trace, const CoreValidation& validation);
std::string render_text(const std::vector<VectorVerdict>& verdicts);
std::string render_gram(const GramMatrix& g);

} // namespace linepack
