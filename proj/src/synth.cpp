#include "tricl/synth.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <set>
#include <string>
#include <thread>
#include <utility>

namespace tricl {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0)
        throw InputError("Rng::below requires n > 0");
    unsigned __int128 product = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(product);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            product = static_cast<unsigned __int128>(next()) * n;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

namespace {

std::vector<std::string> node_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        labels.push_back("v" + std::to_string(i));
    return labels;
}

CountMatrix allocate_uniform(int n, std::int64_t m,
                             const std::vector<std::pair<int, int>>& dyads, Rng& rng) {
    CountMatrix counts = CountMatrix::Zero(n, n);
    for (std::int64_t e = 0; e < m; ++e) {
        const auto& [i, j] = dyads[rng.below(dyads.size())];
        ++counts(i, j);
        ++counts(j, i);
    }
    return counts;
}

CountMatrix generate_random_complete(int n, std::int64_t m, std::uint64_t seed) {
    const std::int64_t all = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (m < all)
        throw InputError("random_complete requires m >= n(n-1)/2 = " + std::to_string(all));
    std::vector<std::pair<int, int>> dyads;
    dyads.reserve(static_cast<std::size_t>(all));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dyads.emplace_back(i, j);
    Rng rng(seed);
    return allocate_uniform(n, m, dyads, rng);
}

CountMatrix generate_triangles(int n, std::int64_t m, int n_tri, std::uint64_t seed) {
    if (n_tri < 1)
        throw InputError("triangles requires n_tri >= 1");
    const std::int64_t triples =
        static_cast<std::int64_t>(n) * (n - 1) * (n - 2) / 6;
    if (n_tri > triples)
        throw InputError("cannot sample " + std::to_string(n_tri) + " distinct triples from " +
                         std::to_string(n) + " nodes");

    Rng rng(seed);
    std::set<std::array<int, 3>> sampled;
    while (static_cast<int>(sampled.size()) < n_tri) {
        std::array<int, 3> tri{};
        tri[0] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        do {
            tri[1] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        } while (tri[1] == tri[0]);
        do {
            tri[2] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        } while (tri[2] == tri[0] || tri[2] == tri[1]);
        std::sort(tri.begin(), tri.end());
        sampled.insert(tri);
    }

    std::set<std::pair<int, int>> allowed_set;
    for (const auto& tri : sampled) {
        allowed_set.emplace(tri[0], tri[1]);
        allowed_set.emplace(tri[0], tri[2]);
        allowed_set.emplace(tri[1], tri[2]);
    }
    std::vector<std::pair<int, int>> allowed(allowed_set.begin(), allowed_set.end());
    if (m < static_cast<std::int64_t>(allowed.size()))
        throw InputError("triangles requires m >= the " + std::to_string(allowed.size()) +
                         " dyads covered by the sampled triangles");
    return allocate_uniform(n, m, allowed, rng);
}

}  // namespace

MultiEdgeNetwork generate(const GeneratorSpec& spec) {
    if (spec.n < 3)
        throw InputError("generator requires n >= 3");
    if (spec.m < 1)
        throw InputError("generator requires m >= 1");

    CountMatrix counts;
    switch (spec.kind) {
        case GeneratorKind::random_complete:
            counts = generate_random_complete(spec.n, spec.m, spec.seed);
            break;
        case GeneratorKind::triangles:
            counts = generate_triangles(spec.n, spec.m, spec.n_tri, spec.seed);
            break;
        case GeneratorKind::mixed: {
            const std::int64_t m_random = spec.m / 2;
            counts = generate_random_complete(spec.n, m_random, spec.seed) +
                     generate_triangles(spec.n, spec.m - m_random, spec.n_tri, spec.seed + 1);
            break;
        }
    }
    return MultiEdgeNetwork::from_counts(node_labels(spec.n), std::move(counts));
}

ReplicationSummary replicate(const GeneratorSpec& spec, int reps, CovariateKind covariate,
                             const GhypeFitOptions& options, int threads) {
    if (reps < 1)
        throw InputError("replicate requires at least one replication");

    struct RepOutcome {
        bool ok = false;
        double coefficient = 0.0;
        double p_value = 1.0;
    };
    std::vector<RepOutcome> outcomes(static_cast<std::size_t>(reps));

    auto run_one = [&](int rep_index) {
        GeneratorSpec rep_spec = spec;
        rep_spec.seed = spec.seed + static_cast<std::uint64_t>(rep_index);
        const MultiEdgeNetwork net = generate(rep_spec);
        const StatisticMatrix stat = covariate == CovariateKind::weighted_sp
                                         ? shared_partners_weighted(net)
                                         : shared_partners_unweighted(net);
        const FitResult fr = fit(net, {stat}, options);
        RepOutcome out;
        out.ok = true;
        out.coefficient = fr.coefficients.at(0).estimate;
        out.p_value = fr.coefficients.at(0).p_value;
        return out;
    };

    const int workers = std::max(1, std::min(threads, reps));
    std::atomic<int> next{1};
    auto worker = [&] {
        for (int rep = next.fetch_add(1); rep <= reps; rep = next.fetch_add(1)) {
            try {
                outcomes[static_cast<std::size_t>(rep - 1)] = run_one(rep);
            } catch (const std::exception&) {
                outcomes[static_cast<std::size_t>(rep - 1)].ok = false;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    ReplicationSummary summary;
    for (int rep = 1; rep <= reps; ++rep) {
        const auto& out = outcomes[static_cast<std::size_t>(rep - 1)];
        if (!out.ok) {
            summary.failed.push_back(rep);
            continue;
        }
        summary.replication.push_back(rep);
        summary.coefficients.push_back(out.coefficient);
        summary.p_values.push_back(out.p_value);
    }
    if (summary.failed.size() * 10 > static_cast<std::size_t>(reps))
        throw ModelError("replication failed on " + std::to_string(summary.failed.size()) +
                         " of " + std::to_string(reps) + " generations (more than 10%)");
    if (summary.coefficients.empty())
        throw ModelError("no successful replications");

    const auto& c = summary.coefficients;
    summary.mean = 0.0;
    summary.min = c.front();
    summary.max = c.front();
    for (double v : c) {
        summary.mean += v;
        summary.min = std::min(summary.min, v);
        summary.max = std::max(summary.max, v);
    }
    summary.mean /= static_cast<double>(c.size());
    double ss = 0.0;
    for (double v : c)
        ss += (v - summary.mean) * (v - summary.mean);
    summary.sd = c.size() > 1 ? std::sqrt(ss / static_cast<double>(c.size() - 1)) : 0.0;
    std::size_t significant = 0;
    for (double p : summary.p_values)
        if (p < 0.001)
            ++significant;
    summary.significant_fraction =
        static_cast<double>(significant) / static_cast<double>(c.size());
    return summary;
}

}  // namespace tricl
