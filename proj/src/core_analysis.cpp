#include "linepack/core_analysis.hpp"
#include "linepack/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <sstream>

namespace linepack {

std::string_view to_string(VectorStatus status)
{
    switch (status)
    {
    case VectorStatus::Isolated: return "Isolated";
    case VectorStatus::DeficientIsolable: return "DeficientIsolable";
    case VectorStatus::Isolable: return "Isolable";
    case VectorStatus::NotIsolable: return "NotIsolable";
    case VectorStatus::Indeterminate: return "Indeterminate";
    }
    return "Unknown";
}

std::string_view to_string(DichotomyVerdict::Kind kind)
{
    switch (kind)
    {
    case DichotomyVerdict::Kind::EquiangularSubset: return "EquiangularSubset";
    case DichotomyVerdict::Kind::FullCore: return "FullCore";
    case DichotomyVerdict::Kind::Inapplicable: return "Inapplicable";
    case DichotomyVerdict::Kind::Undetermined: return "Undetermined";
    }
    return "Unknown";
}

namespace {

Vec project_out(std::span<const double> v, std::span<const double> x)
{
    Vec out(v.begin(), v.end());
    axpy(-dot(x, v), x, out);
    return out;
}

Matrix rows_of(const UnitVectorSystem& x, const IndexSet& idx)
{
    Matrix m(idx.size(), x.dim());
    for (std::size_t r = 0; r < idx.size(); ++r)
        std::copy(x[idx[r]].begin(), x[idx[r]].end(), m.row(r).begin());
    return m;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    for (std::size_t v : a)
        if (std::find(b.begin(), b.end(), v) == b.end())
            out.push_back(v);
    return out;
}

double subset_coherence(const UnitVectorSystem& x, const IndexSet& idx)
{
    return idx.size() < 2 ? 0.0 : coherence(x.subset(idx));
}

} // namespace

Separation separate(std::span<const double> x, std::span<const Vec> signed_neighbors, const Tolerances& tol)
{
    if (signed_neighbors.empty())
        throw Error(ErrorCode::Precondition, "separation needs at least one neighbor");
    std::vector<Vec> projected;
    projected.reserve(signed_neighbors.size());
    for (const auto& v : signed_neighbors)
        projected.push_back(project_out(v, x));

    Separation out;
    const HullPoint hull = min_norm_point(projected, tol);
    out.hull_norm = norm(hull.point);

    if (x.size() == 1)
    {
        // x^perp is {0}: no direction to move in.
        out.stage = "trivial-complement";
        out.certificate = PositiveSpanCertificate{hull.weights, {}, {}};
        return out;
    }

    if (out.hull_norm > tol.hull_abs)
    {
        out.separable = true;
        out.stage = "min-norm";
        out.witness = normalized(project_out(scaled(hull.point, -1.0), x));
        return out;
    }

    Matrix xrow(1, x.size());
    std::copy(x.begin(), x.end(), xrow.row(0).begin());
    const Matrix basis = orthonormal_complement(xrow, tol);

    PositiveSpanCertificate cert;
    cert.hull_weights = hull.weights;
    for (std::size_t j = 0; j < basis.rows(); ++j)
    {
        for (double sign : {1.0, -1.0})
        {
            Vec target = scaled(basis.row(j), sign);
            const ConeResult res = nnls_cone_feasible(projected, target, tol);
            if (const auto* bad = std::get_if<ConeInfeasible>(&res))
            {
                out.separable = true;
                out.stage = "cone";
                out.witness = normalized(project_out(bad->certificate, x));
                return out;
            }
            cert.targets.push_back(std::move(target));
            cert.cone_weights.push_back(std::get<ConeFeasible>(res).weights);
        }
    }
    out.stage = "positive-span";
    out.certificate = std::move(cert);
    return out;
}

Vec perturb_at(std::span<const double> x, std::span<const double> w, double eps)
{
    Vec v(x.begin(), x.end());
    axpy(eps, w, v);
    return normalized(v);
}

Vec perturb_replace_at(const UnitVectorSystem& x, std::size_t i, std::span<const double> w, double alpha,
                       const Tolerances& tol, double eps_cap)
{
    if (i >= x.size())
        throw Error(ErrorCode::Precondition, "vector index out of range");
    if (!(alpha > tol.eq_abs))
        throw Error(ErrorCode::Precondition, "perturbation needs positive coherence");
    if (w.size() != x.dim())
        throw Error(ErrorCode::DimensionMismatch, "witness has wrong dimension");
    if (std::abs(norm(w) - 1.0) > 1e-8 || std::abs(dot(w, x[i])) > 1e-8)
        throw Error(ErrorCode::Precondition, "witness must be a unit vector orthogonal to x_i");

    double delta = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
    {
        if (j == i)
            continue;
        const double a = std::abs(dot(x[i], x[j]));
        if (std::abs(a - alpha) > tol.neighbor_abs)
            delta = std::max(delta, a);
    }
    double eps = std::min(0.5, (alpha - delta) / 2.0);
    if (eps_cap > 0.0)
        eps = std::min(eps, eps_cap);
    if (!(eps > 0.0))
        throw Error(ErrorCode::SearchFailed, "no room between coherence and non-neighbor inner products");

    const double limit = alpha - replacement_margin(alpha);
    for (int halving = 0; halving <= 60; ++halving, eps *= 0.5)
    {
        Vec cand = perturb_at(x[i], w, eps);
        bool ok = true;
        for (std::size_t j = 0; j < x.size() && ok; ++j)
            if (j != i && !(std::abs(dot(cand, x[j])) < limit))
                ok = false;
        if (ok)
            return cand;
    }
    throw Error(ErrorCode::SearchFailed, "60 halvings of eps without beating the coherence");
}

Vec perturb_replace(const UnitVectorSystem& x, std::size_t i, std::span<const double> w, const Tolerances& tol,
                    double eps_cap)
{
    return perturb_replace_at(x, i, w, coherence(x), tol, eps_cap);
}

VectorVerdict classify_vector(const UnitVectorSystem& x, std::size_t i, const Tolerances& tol)
{
    return classify_vector(x, gram(x), i, tol);
}

VectorVerdict classify_vector(const UnitVectorSystem& x, const GramMatrix& g, std::size_t i, const Tolerances& tol)
{
    if (i >= x.size())
        throw Error(ErrorCode::Precondition, "vector index out of range");
    VectorVerdict v;
    v.index = i;
    const double alpha = g.coherence;
    v.coherence = alpha;
    if (!near_ties(g, alpha, tol).empty())
        v.warnings.emplace_back("near-tie at the coherence level: verdict is tolerance-sensitive");

    const NeighborSet nb = neighbors(g, i, alpha, tol);
    v.neighbor_count = nb.members.size();
    if (!nb.members.empty())
        v.neighbor_span_rank = rank_of(rows_of(x, nb.members), tol);

    if (x.size() <= 1 || alpha <= tol.eq_abs)
    {
        v.status = VectorStatus::NotIsolable;
        v.stage = x.size() <= 1 ? "singleton" : "coherence-zero";
        return v;
    }

    if (nb.members.empty())
    {
        v.status = VectorStatus::Isolated;
        v.stage = "isolated";
        v.replacement = x[i];
        return v;
    }

    auto validate = [&](VectorStatus status, Vec witness) {
        try
        {
            v.replacement = perturb_replace_at(x, i, witness, alpha, tol);
            v.status = status;
        }
        catch (const Error& e)
        {
            if (e.code() != ErrorCode::SearchFailed)
                throw;
            v.status = VectorStatus::Indeterminate;
            v.warnings.emplace_back(std::string("constructive check failed: ") + e.what());
        }
        v.witness = std::move(witness);
    };

    if (v.neighbor_span_rank < x.dim())
    {
        v.stage = "deficient";
        const auto split = split_row_space(rows_of(x, nb.members), tol);
        // z in span(neighbors)^perp with <x, z> >= 0: the projection of x
        // when it is nonzero, else any complement vector (then <x, z> = 0).
        Vec z(x.dim(), 0.0);
        for (std::size_t r = 0; r < split.complement.rows(); ++r)
            axpy(dot(split.complement.row(r), x[i]), split.complement.row(r), z);
        if (norm(z) <= 1e-12)
            z = split.complement.row_vec(0);
        z = normalized(z);
        validate(VectorStatus::DeficientIsolable, normalized(project_out(z, x[i])));
        return v;
    }

    std::vector<Vec> signed_nb;
    for (std::size_t k = 0; k < nb.members.size(); ++k)
        signed_nb.push_back(scaled(x[nb.members[k]], static_cast<double>(nb.signs[k])));
    try
    {
        Separation sep = separate(x[i], signed_nb, tol);
        v.hull_norm = sep.hull_norm;
        v.stage = sep.stage;
        if (sep.separable)
            validate(VectorStatus::Isolable, std::move(sep.witness));
        else
        {
            v.status = VectorStatus::NotIsolable;
            v.certificate = std::move(sep.certificate);
        }
    }
    catch (const Error& e)
    {
        if (e.code() != ErrorCode::IterationLimit)
            throw;
        v.status = VectorStatus::Indeterminate;
        v.warnings.emplace_back(std::string("separation test did not converge: ") + e.what());
    }
    return v;
}

std::vector<VectorVerdict> classify_all_serial(const UnitVectorSystem& x, const Tolerances& tol)
{
    const auto g = gram(x, kernels::Exec::Serial);
    std::vector<VectorVerdict> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.push_back(classify_vector(x, g, i, tol));
    return out;
}

std::vector<VectorVerdict> classify_all_parallel(const UnitVectorSystem& x, const Tolerances& tol)
{
    const auto g = gram(x, kernels::Exec::Parallel);
    std::vector<VectorVerdict> out(x.size());
    std::vector<std::exception_ptr> errors(x.size());
    const auto m = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < m; ++i)
    {
        try
        {
            out[i] = classify_vector(x, g, static_cast<std::size_t>(i), tol);
        }
        catch (...)
        {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

std::vector<VectorVerdict> classify_all(const UnitVectorSystem& x, const Tolerances& tol, kernels::Exec exec)
{
    return exec == kernels::Exec::Serial ? classify_all_serial(x, tol) : classify_all_parallel(x, tol);
}

IsolableSet isolable_set(const UnitVectorSystem& x, const Tolerances& tol)
{
    IsolableSet out;
    out.verdicts = classify_all(x, tol);
    for (const auto& v : out.verdicts)
    {
        if (is_isolable(v.status))
            out.isolable.push_back(v.index);
        else if (v.status == VectorStatus::Indeterminate)
        {
            out.indeterminate.push_back(v.index);
            out.warnings.push_back("vector " + std::to_string(v.index)
                                   + " indeterminate; kept and treated as not isolable");
        }
    }
    return out;
}

Replacement replace_all_isolable(const UnitVectorSystem& x, const Tolerances& tol)
{
    Replacement out{.system = x, .replaced = {}, .analysis = isolable_set(x, tol), .coherence_after = 0.0,
                    .coherence_rest = 0.0, .coherence_check = DiagnosticStatus::Skip, .warnings = {}};
    const double alpha = coherence(x);
    UnitVectorSystem current = x;

    for (std::size_t i : out.analysis.isolable)
    {
        const auto& verdict = out.analysis.verdicts[i];
        if (verdict.status == VectorStatus::Isolated)
        {
            out.replaced.push_back(i);
            continue;
        }
        // Stay closer to x_i than the slack each earlier replacement left.
        double cap = 0.0;
        for (std::size_t j : out.replaced)
        {
            const double slack = alpha - std::abs(dot(x[i], current[j]));
            if (slack > 0.0)
                cap = cap == 0.0 ? slack : std::min(cap, slack);
        }
        try
        {
            Vec replacement = perturb_replace_at(current, i, *verdict.witness, alpha, tol, cap);
            current = current.with_replaced(i, std::move(replacement));
            out.replaced.push_back(i);
        }
        catch (const Error& e)
        {
            if (e.code() != ErrorCode::SearchFailed)
                throw;
            out.warnings.push_back("vector " + std::to_string(i) + " not replaced: " + e.what());
        }
    }

    for (std::size_t r : out.replaced)
        for (std::size_t j = 0; j < current.size(); ++j)
            if (j != r && !(std::abs(dot(current[r], current[j])) < alpha))
                out.warnings.push_back("replaced vector " + std::to_string(r) + " is not strictly below coherence");

    IndexSet rest;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (std::find(out.analysis.isolable.begin(), out.analysis.isolable.end(), j) == out.analysis.isolable.end())
            rest.push_back(j);
    out.coherence_after = coherence(current);
    out.coherence_rest = subset_coherence(x, rest);
    out.coherence_check = std::abs(out.coherence_after - out.coherence_rest) <= 1e-9 ? DiagnosticStatus::Pass
                                                                                      : DiagnosticStatus::Fail;
    out.system = std::move(current);
    return out;
}

CoreTrace core(const UnitVectorSystem& x, const Tolerances& tol)
{
    CoreTrace trace;
    trace.input_coherence = coherence(x);

    const auto first = isolable_set(x, tol);
    trace.initial_isolable = first.isolable;
    trace.initial_indeterminate = first.indeterminate;
    trace.warnings = first.warnings;

    IndexSet all(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        all[i] = i;
    IndexSet y = set_difference(all, first.isolable);

    for (std::size_t step = 0; step <= x.size(); ++step)
    {
        if (y.empty())
        {
            trace.warnings.emplace_back(std::string(kNotGrassmannianEvidence)
                                        + ": every vector was removed; the core is empty");
            return trace;
        }
        const UnitVectorSystem sub = x.subset(y);
        const auto iso = isolable_set(sub, tol);

        CoreLevel level;
        level.members = y;
        level.coherence = sub.size() < 2 ? 0.0 : coherence(sub);
        for (std::size_t local : iso.isolable)
            level.isolable.push_back(y[local]);
        for (std::size_t local : iso.indeterminate)
        {
            level.indeterminate.push_back(y[local]);
            trace.warnings.push_back("level " + std::to_string(trace.levels.size() + 1) + ": vector "
                                     + std::to_string(y[local]) + " indeterminate; kept");
        }
        if (std::abs(level.coherence - trace.input_coherence) > tol.eq_abs)
        {
            std::ostringstream msg;
            msg << "level " << trace.levels.size() + 1 << " coherence " << level.coherence
                << " differs from the input coherence " << trace.input_coherence;
            trace.warnings.push_back(msg.str());
        }
        const bool fixed = level.isolable.empty();
        IndexSet next = set_difference(y, level.isolable);
        trace.levels.push_back(std::move(level));
        if (fixed)
        {
            trace.core = y;
            return trace;
        }
        y = std::move(next);
    }
    throw Error(ErrorCode::IterationLimit, "core iteration did not reach a fixed point");
}

CoreValidation validate_core(const UnitVectorSystem& x, const CoreTrace& trace, const Tolerances& tol)
{
    CoreValidation out;
    const double alpha = trace.input_coherence;
    const std::size_t n = x.dim();
    if (trace.core.empty())
    {
        out.status = out.size_check = DiagnosticStatus::Fail;
        out.message = "evidence input is not Grassmannian: empty core";
        return out;
    }
    if (alpha <= tol.eq_abs)
    {
        const bool whole = trace.core.size() == x.size();
        out.status = whole ? DiagnosticStatus::Pass : DiagnosticStatus::Fail;
        out.message = whole ? "coherence zero: the core is the whole system"
                            : "evidence input is not Grassmannian: coherence zero but the core is a proper subset";
        return out;
    }

    out.size_check = trace.core.size() >= n + 1 ? DiagnosticStatus::Pass : DiagnosticStatus::Fail;
    const UnitVectorSystem sub = x.subset(trace.core);
    const auto g = gram(sub);
    bool all_span = true;
    for (std::size_t i = 0; i < sub.size(); ++i)
    {
        const auto nb = neighbors(g, i, alpha, tol);
        IndexSet global;
        for (std::size_t j : nb.members)
            global.push_back(trace.core[j]);
        const std::size_t r = global.empty() ? 0 : rank_of(rows_of(x, global), tol);
        out.neighbor_ranks.push_back(r);
        all_span = all_span && r == n;
    }
    out.span_check = all_span ? DiagnosticStatus::Pass : DiagnosticStatus::Fail;

    if (out.size_check == DiagnosticStatus::Pass && out.span_check == DiagnosticStatus::Pass)
    {
        out.status = DiagnosticStatus::Pass;
        out.message = "core has at least n+1 vectors and every core neighbor set spans R^n";
    }
    else
    {
        out.status = DiagnosticStatus::Fail;
        std::ostringstream msg;
        msg << "evidence input is not Grassmannian:";
        if (out.size_check == DiagnosticStatus::Fail)
            msg << " |core| = " << trace.core.size() << " < n+1 = " << n + 1 << ";";
        if (out.span_check == DiagnosticStatus::Fail)
            msg << " some core neighbor set does not span R^n;";
        out.message = msg.str();
    }
    return out;
}

DichotomyVerdict classify_n_plus_2(const UnitVectorSystem& x, const Tolerances& tol)
{
    DichotomyVerdict out;
    const std::size_t m = x.size(), n = x.dim();
    if (m != n + 2)
    {
        out.kind = DichotomyVerdict::Kind::Inapplicable;
        return out;
    }
    out.trace = core(x, tol);
    const auto& c = out.trace->core;
    const double alpha = out.trace->input_coherence;
    if (c.size() == m)
    {
        out.kind = DichotomyVerdict::Kind::FullCore;
        out.indices = c;
        return out;
    }
    out.kind = DichotomyVerdict::Kind::Undetermined;
    out.indices = c;
    if (c.size() == n + 1)
    {
        bool equi = true;
        for (std::size_t a = 0; a < c.size() && equi; ++a)
            for (std::size_t b = a + 1; b < c.size() && equi; ++b)
                equi = std::abs(std::abs(dot(x[c[a]], x[c[b]])) - alpha) <= tol.neighbor_abs;
        if (equi)
        {
            out.kind = DichotomyVerdict::Kind::EquiangularSubset;
            return out;
        }
        out.warnings.emplace_back(std::string(kNotGrassmannianEvidence)
                                  + ": core of size n+1 is not equiangular at the coherence");
        return out;
    }
    out.warnings.push_back(std::string(kNotGrassmannianEvidence) + ": core size " + std::to_string(c.size())
                           + " is neither m nor n+1");
    return out;
}

DiagnosticReport tight_grassmannian_diagnostic(const UnitVectorSystem& x, bool presumed_grassmannian,
                                               const Tolerances& tol)
{
    const std::size_t m = x.size(), n = x.dim();
    if (m != n + 2 || n <= 2)
        return {DiagnosticStatus::Skip, "applies to m = n+2 with n > 2 only"};
    if (!tightness(x, tol).tight())
        return {DiagnosticStatus::Skip, "not tight"};
    if (presumed_grassmannian)
        return {DiagnosticStatus::Fail,
                "tight system of n+2 vectors in R^n (n > 2) presumed Grassmannian: contradicts non-tightness of such "
                "Grassmannian frames; input is not Grassmannian or tolerances are wrong"};
    return {DiagnosticStatus::Pass, "tight system of n+2 vectors in R^n (n > 2); therefore not Grassmannian"};
}

EigenSpanReport eigen_span_diagnostic(const UnitVectorSystem& x, const Tolerances& tol)
{
    EigenSpanReport out;
    const std::size_t m = x.size(), n = x.dim();
    if (m <= n)
    {
        out.message = "applies to m > n only";
        return out;
    }
    const auto spec = spectrum(x, tol);
    out.top_multiplicity = spec.top_multiplicity;
    const auto g = gram(x);

    std::vector<Matrix> span_bases;
    for (std::size_t i = 0; i < m; ++i)
    {
        IndexSet fx{i};
        const auto nb = neighbors(g, i, g.coherence, tol);
        fx.insert(fx.end(), nb.members.begin(), nb.members.end());
        span_bases.push_back(split_row_space(rows_of(x, fx), tol).range);
    }

    double worst = 0.0;
    for (std::size_t k = 0; k < spec.top_multiplicity; ++k)
    {
        const Vec e = spec.eigenvector(k);
        std::vector<double> dist;
        for (const auto& basis : span_bases)
        {
            Vec proj(n, 0.0);
            for (std::size_t r = 0; r < basis.rows(); ++r)
                axpy(dot(basis.row(r), e), basis.row(r), proj);
            dist.push_back(norm(difference(e, proj)));
            worst = std::max(worst, dist.back());
        }
        out.distances.push_back(std::move(dist));
    }

    if (spec.top_multiplicity > 1)
    {
        out.status = DiagnosticStatus::Ambiguous;
        out.message = "largest eigenvalue has multiplicity " + std::to_string(spec.top_multiplicity)
                      + "; the top eigenvector is not unique";
    }
    else if (worst <= kEigenSpanTol)
    {
        out.status = DiagnosticStatus::Pass;
        out.message = "top eigenvector lies in span F_x for every x";
    }
    else
    {
        out.status = DiagnosticStatus::Fail;
        std::ostringstream msg;
        msg << "top eigenvector is " << worst
            << " from some span F_x: input is not a Grassmannian frame with maximal top eigenvalue";
        out.message = msg.str();
    }
    return out;
}

} // namespace linepack
