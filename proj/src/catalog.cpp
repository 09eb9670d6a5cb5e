#include "linepack/catalog.hpp"
#include "linepack/frames.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace linepack {

std::string_view to_string(AngleCatalogEntry::Kind kind)
{
    return kind == AngleCatalogEntry::Kind::GrassmannianAlpha ? "GrassmannianAlpha" : "OneGrassmannianMu";
}

namespace {

struct CongruenceRule
{
    std::size_t modulus;
    std::size_t neg_residue; ///< n = -neg_residue (mod modulus)
    std::size_t offset;      ///< m = n + offset
    double (*value)(double n);
    const char* name;
};

const CongruenceRule kRules[] = {
    {3, 2, 2, [](double n) { return 3.0 / (2.0 * n + 1.0); }, "alpha: n = -2 mod 3, m = n+2, 3/(2n+1)"},
    {6, 3, 3,
     [](double n) {
         const double r5 = std::sqrt(5.0);
         return 6.0 / ((r5 + 1.0) * n + 3.0 * (r5 - 1.0));
     },
     "alpha: n = -3 mod 6, m = n+3, 6/((sqrt5+1)n+3(sqrt5-1))"},
    {28, 7, 7, [](double n) { return 14.0 / (5.0 * n + 21.0); }, "alpha: n = -7 mod 28, m = n+7, 14/(5n+21)"},
    {276, 23, 23, [](double n) { return 69.0 / (14.0 * n + 253.0); },
     "alpha: n = -23 mod 276, m = n+23, 69/(14n+253)"},
};

std::string label(const AngleCatalogEntry& e)
{
    std::ostringstream s;
    s << (e.kind == AngleCatalogEntry::Kind::GrassmannianAlpha ? "alpha" : "mu") << "(" << e.m << "," << e.n << ")";
    return s.str();
}

} // namespace

std::vector<AngleCatalogEntry> angle_catalog(std::size_t m, std::size_t n)
{
    std::vector<AngleCatalogEntry> out;
    if (n < 2 || m <= n)
        return out;
    const double nd = static_cast<double>(n);
    for (const auto& rule : kRules)
    {
        if ((n + rule.neg_residue) % rule.modulus == 0 && m == n + rule.offset)
            out.push_back({m, n, AngleCatalogEntry::Kind::GrassmannianAlpha, rule.value(nd), rule.name});
    }
    if (m == n + 2)
        out.push_back({m, n, AngleCatalogEntry::Kind::OneGrassmannianMu,
                       2.0 / nd * std::cos(std::numbers::pi / (nd + 2.0)), "mu: m = n+2, (2/n)cos(pi/(n+2))"});
    return out;
}

CatalogConsistency catalog_consistency(std::size_t n_lo, std::size_t n_hi, std::size_t m_lo, std::size_t m_hi)
{
    std::vector<AngleCatalogEntry> alphas, mus;
    for (std::size_t n = std::max<std::size_t>(n_lo, 2); n <= n_hi; ++n)
        for (std::size_t m = std::max(m_lo, n + 1); m <= m_hi; ++m)
            for (auto& e : angle_catalog(m, n))
                (e.kind == AngleCatalogEntry::Kind::GrassmannianAlpha ? alphas : mus).push_back(std::move(e));

    CatalogConsistency out;
    auto record = [&](std::string relation, double lhs, double rhs, bool holds) {
        out.comparisons.push_back({std::move(relation), lhs, rhs, holds});
        if (!holds)
            ++out.violations;
    };

    // (m', n') is reachable from (m, n) by steps (m+1, n+1) [<], (m, n+1) [<]
    // and (m-1, n) [<=] exactly when n' >= n and m' - m <= n' - n; the
    // relation is strict when n' > n.
    for (const auto& a : alphas)
        for (const auto& b : alphas)
        {
            if (&a == &b || b.n < a.n)
                continue;
            const long dm = static_cast<long>(b.m) - static_cast<long>(a.m);
            const long dn = static_cast<long>(b.n) - static_cast<long>(a.n);
            if (dm > dn)
                continue;
            if (dn > 0)
                record(label(b) + " < " + label(a), b.value, a.value, b.value < a.value);
            else
                record(label(b) + " <= " + label(a), b.value, a.value, b.value <= a.value);
        }

    for (const auto& mu : mus)
    {
        const double welch = welch_bound(mu.m, mu.n);
        std::ostringstream w;
        w << label(mu) << " > welch(" << mu.m << "," << mu.n << ")";
        record(w.str(), mu.value, welch, mu.value > welch);
        for (const auto& a : alphas)
            if (a.m == mu.m && a.n == mu.n)
                record(label(mu) + " >= " + label(a), mu.value, a.value, mu.value >= a.value);
    }
    for (const auto& a : alphas)
    {
        const double welch = welch_bound(a.m, a.n);
        std::ostringstream w;
        w << label(a) << " >= welch(" << a.m << "," << a.n << ")";
        record(w.str(), a.value, welch, a.value >= welch - 1e-12);
    }
    return out;
}

} // namespace linepack
