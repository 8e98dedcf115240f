#include "risgeo/outage.hpp"

#include <algorithm>
#include <cmath>

namespace risgeo {

namespace {

constexpr int kMaxIter = 20000;

// Series expansion of P(s, x), effective for x < s + 1. Runs until the sum
// stops changing in double precision; near x ~ s the tail decays slowly and
// a fixed relative cutoff would quit with an O(1e-11) residual.
double gamma_p_series(double s, double x) {
    double ap = s;
    double sum = 1.0 / s;
    double term = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        if (sum + term == sum)
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
        sum += term;
    }
    throw std::runtime_error("incomplete gamma series did not converge");
}

// Modified Lentz continued fraction for Q(s, x), effective for x >= s + 1.
double gamma_q_continued_fraction(double s, double x) {
    constexpr double kFloor = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / kFloor;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFloor) d = kFloor;
        c = b + an / c;
        if (std::fabs(c) < kFloor) c = kFloor;
        d = 1.0 / d;
        const double delta = d * c;
        const double next = h * delta;
        if (next == h)
            return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
        h = next;
    }
    throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

// splitmix64: decorrelates shard streams from a single user seed.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro-style generator is overkill here; a splitmix64 stream already has
// the equidistribution we need for plain Monte Carlo.
struct ShardRng {
    std::uint64_t state;

    ShardRng(std::uint64_t seed, std::uint64_t shard) {
        std::uint64_t mix = seed ^ (0xD1B54A32D192ED03ULL * (shard + 1));
        // warm up so nearby shards decorrelate
        state = mix;
        splitmix64(state);
        splitmix64(state);
    }

    double u01() {  // [0, 1)
        std::uint64_t bits = splitmix64(state);
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

    double rayleigh(double sigma) {
        // scale convention: pdf x / sigma^2 exp(-x^2 / 2 sigma^2), E[X^2] = 2 sigma^2
        return sigma * std::sqrt(-2.0 * std::log1p(-u01()));
    }
};

constexpr std::uint64_t kShardSize = 1u << 16;

}  // namespace

MomentMatch moment_match(const FadingParams& fading, int n_eff) {
    const double sigma = fading.sigma1 * fading.sigma2;
    MomentMatch mm;
    mm.k = kPi * kPi / (16.0 - kPi * kPi);
    mm.delta = 2.0 * kPi / ((16.0 - kPi * kPi) * sigma);
    mm.shape_total = mm.k * n_eff;
    return mm;
}

double reg_lower_incomplete_gamma(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("reg_lower_incomplete_gamma: s must be > 0");
    if (x < 0.0) throw std::domain_error("reg_lower_incomplete_gamma: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return gamma_p_series(s, x);
    return 1.0 - gamma_q_continued_fraction(s, x);
}

double inverse_reg_lower_incomplete_gamma(double s, double p) {
    if (!(p >= 0.0 && p < 1.0))
        throw std::domain_error("inverse_reg_lower_incomplete_gamma: p must be in [0, 1)");
    if (p == 0.0) return 0.0;
    double lo = 0.0;
    double hi = s + 1.0;
    while (reg_lower_incomplete_gamma(s, hi) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (reg_lower_incomplete_gamma(s, mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double outage_probability(const MomentMatch& mm, int n_eff, double mean_snr,
                          double rho_th) {
    if (n_eff < 1) throw std::domain_error("outage_probability: n_eff must be >= 1");
    if (!(mean_snr > 0.0)) throw std::domain_error("outage_probability: mean_snr must be > 0");
    if (rho_th < 0.0) throw std::domain_error("outage_probability: rho_th must be >= 0");
    return reg_lower_incomplete_gamma(mm.k * n_eff,
                                      mm.delta * std::sqrt(rho_th / mean_snr));
}

OutageCurve outage_curve(const MomentMatch& mm, int n_eff, double mean_snr,
                         const std::vector<double>& thresholds) {
    OutageCurve c;
    c.thresholds = thresholds;
    c.probabilities.reserve(thresholds.size());
    for (const double t : thresholds)
        c.probabilities.push_back(outage_probability(mm, n_eff, mean_snr, t));
    return c;
}

OutageCurve monte_carlo_outage_curve(int n_eff, const FadingParams& fading,
                                     double mean_snr,
                                     const std::vector<double>& thresholds,
                                     std::uint64_t samples, std::uint64_t seed) {
    if (n_eff < 1) throw std::domain_error("monte_carlo_outage: n_eff must be >= 1");
    if (!(mean_snr > 0.0))
        throw std::domain_error("monte_carlo_outage: mean_snr must be > 0");

    // Sorted threshold view; counts accumulate into the sorted order and are
    // mapped back at the end.
    std::vector<std::size_t> order(thresholds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return thresholds[a] < thresholds[b];
    });
    std::vector<double> sorted;
    sorted.reserve(order.size());
    for (const std::size_t i : order) sorted.push_back(thresholds[i]);

    std::vector<std::uint64_t> below(sorted.size() + 1, 0);
    const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
    for (std::uint64_t shard = 0; shard < shards; ++shard) {
        ShardRng rng(seed, shard);
        const std::uint64_t begin = shard * kShardSize;
        const std::uint64_t end = std::min(samples, begin + kShardSize);
        for (std::uint64_t i = begin; i < end; ++i) {
            double a = 0.0;
            for (int e = 0; e < n_eff; ++e)
                a += rng.rayleigh(fading.sigma1) * rng.rayleigh(fading.sigma2);
            const double rho = a * a * mean_snr;
            // first threshold >= rho: rho <= th holds from there on
            const auto it = std::lower_bound(sorted.begin(), sorted.end(), rho);
            ++below[static_cast<std::size_t>(it - sorted.begin())];
        }
    }
    // suffix-complement: count of samples with rho <= sorted[j]
    OutageCurve c;
    c.thresholds = thresholds;
    c.probabilities.assign(thresholds.size(), 0.0);
    std::uint64_t cum = 0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cum += below[j];
        c.probabilities[order[j]] =
            static_cast<double>(cum) / static_cast<double>(samples);
    }
    return c;
}

double monte_carlo_outage(int n_eff, const FadingParams& fading, double mean_snr,
                          double rho_th, std::uint64_t samples, std::uint64_t seed) {
    const OutageCurve c =
        monte_carlo_outage_curve(n_eff, fading, mean_snr, {rho_th}, samples, seed);
    return c.probabilities.front();
}

FadingSampleStats sample_fading_stats(const FadingParams& fading,
                                      std::uint64_t samples, std::uint64_t seed) {
    double sum_prod = 0.0, sum_sq = 0.0;
    const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
    for (std::uint64_t shard = 0; shard < shards; ++shard) {
        ShardRng rng(seed, shard);
        const std::uint64_t begin = shard * kShardSize;
        const std::uint64_t end = std::min(samples, begin + kShardSize);
        for (std::uint64_t i = begin; i < end; ++i) {
            const double a = rng.rayleigh(fading.sigma1);
            const double b = rng.rayleigh(fading.sigma2);
            sum_prod += a * b;
            sum_sq += a * a;
        }
    }
    FadingSampleStats st;
    st.mean_product = sum_prod / static_cast<double>(samples);
    st.mean_alpha_sq = sum_sq / static_cast<double>(samples);
    return st;
}

}  // namespace risgeo
