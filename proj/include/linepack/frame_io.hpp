#pragma once

#include "linepack/frames.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Frame files.
//
// Vectors are stored one per row (the transpose of the usual column-matrix
// presentation of a frame). Two encodings are accepted:
//
//   structured  {"dim": n, "vectors": [[...], ...], "labels": [...],
//                "tolerances": {"eq_abs": ..., ...}}   (labels, tolerances optional)
//   plain       whitespace-separated reals, one vector per line; '#' starts
//               a comment that runs to the end of the line
//
// Input starting with '{' is read as structured, anything else as plain.
namespace linepack {

struct ToleranceOverrides
{
    std::optional<double> eq_abs;
    std::optional<double> neighbor_abs;
    std::optional<double> hull_abs;
    std::optional<double> rank_rel;

    Tolerances apply(Tolerances base) const;
};

struct FrameFile
{
    std::size_t dim = 0;
    std::vector<Vec> vectors;
    std::vector<std::string> labels;
    ToleranceOverrides overrides;

    /// Validates (and renormalizes within 1e-6) into a system.
    UnitVectorSystem to_system(const Tolerances& tol) const;
};

/// Throws ParseError / ShapeError.
FrameFile parse_frame_file_text(std::string_view text);

/// "-" reads standard input. Throws IoError when the file cannot be read.
std::string read_input(const std::string& path);

UnitVectorSystem parse_frame(std::string_view text, const Tolerances& tol = {});

/// Structured encoding, numbers rounded to 15 significant digits.
std::string write_frame_json(const UnitVectorSystem& x);
/// Plain encoding, one vector per line.
std::string write_frame_plain(const UnitVectorSystem& x);

} // namespace linepack
