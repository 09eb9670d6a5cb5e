#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace linepack {

/// Known exact packing angles.
///
/// Grassmannian angles alpha_{m,n} for four congruence families, and the
/// optimal coherence mu_{n+2,n} = (2/n) cos(pi/(n+2)) over unit-norm tight
/// frames of n+2 vectors.
struct AngleCatalogEntry
{
    enum class Kind
    {
        GrassmannianAlpha,
        OneGrassmannianMu,
    };
    std::size_t m = 0;
    std::size_t n = 0;
    Kind kind = Kind::GrassmannianAlpha;
    double value = 0.0;
    std::string rule; ///< e.g. "alpha: n = -2 mod 3, m = n+2"
};

std::string_view to_string(AngleCatalogEntry::Kind kind);

/// Every entry that applies to (m, n); empty when none does or m <= n or
/// n < 2. For m = n+2 with n = 1 mod 3 both an alpha and a mu entry apply.
std::vector<AngleCatalogEntry> angle_catalog(std::size_t m, std::size_t n);

struct CatalogComparison
{
    std::string relation; ///< human-readable, e.g. "alpha(9,7) < alpha(6,4)"
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};

struct CatalogConsistency
{
    std::vector<CatalogComparison> comparisons;
    std::size_t violations = 0;
};

/// Checks every relation derivable between two known catalog values in the
/// range: monotonicity in m (<=), strict decrease along (m+1, n+1) and in n,
/// mu >= alpha, and every value >= the Welch bound.
CatalogConsistency catalog_consistency(std::size_t n_lo, std::size_t n_hi, std::size_t m_lo, std::size_t m_hi);

} // namespace linepack
