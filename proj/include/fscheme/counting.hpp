#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "fscheme/alphabet.hpp"
#include "fscheme/forests.hpp"
#include "fscheme/rational.hpp"

namespace fscheme {

/// Number of rooted binary trees with l leaves and height <= k, for
/// l = 0..max_leaves (entry 0 is zero). Empty-height trees (k < 0) count 0.
std::vector<BigInt> tree_counts(int k, std::size_t max_leaves);

/// Exact counts over BB(n, k) for all n <= max_n and one height cap k.
///
/// Generating functions in the leaf variable z, T = trees of height <= k:
///   F = 1 / (1 - T)            unmarked forests
///   P = F^2                    (left forest, right forest) pairs
///   M = T P = P - F            marked forests, |BB(n, k)|
/// Every nu-count is a short convolution against P or M, so a query costs
/// O(2^k) big-integer products once the tables exist.
///
/// The table is immutable after construction apart from lazily built
/// auxiliary convolutions, which are guarded; sharing one table between
/// threads is safe.
class CountTable {
public:
    CountTable(int k, std::size_t max_n);

    int height_cap() const noexcept { return k_; }
    std::size_t max_n() const noexcept { return max_n_; }

    const BigInt& trees(std::size_t leaves) const { return trees_.at(leaves); }
    const BigInt& lower_trees(std::size_t leaves) const { return lower_.at(leaves); }
    const BigInt& forests(std::size_t n) const { return forests_.at(n); }
    const BigInt& forest_pairs(std::size_t n) const { return pairs_.at(n); }
    BigInt marked(std::size_t n) const;

    /// Vertices of BB(n, k) that do not accept the letter.
    BigInt nu(std::size_t n, ForestLetter letter) const;
    /// |Y0| inside BB(n, k); zero for k = 0.
    BigInt y0(std::size_t n) const;

private:
    void check(std::size_t n) const;
    // sum_s block[s] * series[n - s]
    static BigInt convolve_at(const std::vector<BigInt>& block, const std::vector<BigInt>& series, std::size_t n);
    // pairs of height < k trees: right-merge acceptance for a marked forest of m leaves
    const BigInt& merge_accepting(std::size_t m) const;
    const std::vector<BigInt>& exact_height_pairs() const;

    int k_;
    std::size_t max_n_;
    std::vector<BigInt> trees_;
    std::vector<BigInt> lower_;
    std::vector<BigInt> lower_pairs_;
    std::vector<BigInt> forests_;
    std::vector<BigInt> pairs_;
    std::vector<BigInt> marked_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::size_t, BigInt> merge_cache_;
    mutable std::vector<BigInt> exact_pairs_;
    mutable bool exact_pairs_ready_ = false;
};

BigInt bb_count(std::size_t n, int k);
std::vector<BigInt> nu_counts(std::size_t n, int k, const GenAlphabet& alphabet);
BigInt y0_count(std::size_t n, int k);

struct DensityRecord {
    std::size_t n = 0;
    int k = 0;
    std::string alphabet;
    std::vector<std::string> letters;
    BigInt size;
    std::vector<BigInt> nu;
    std::vector<Rational> nu_fraction;
    Rational density;
    Rational isoperimetric;
    /// |Y0| / |Y|
    Rational p;
    /// |BB(n-1, k)| / |BB(n, k)|
    Rational xi;
};

DensityRecord density_report(const CountTable& table, std::size_t n, const GenAlphabet& alphabet);

struct XiEstimate {
    std::size_t n = 0;
    int k = 0;
    Rational ratio;
    Rational previous;
    Rational difference;
};

/// Needs n >= 2.
XiEstimate xi_estimate(const CountTable& table, std::size_t n);

/// (delta - 4p) / (1 - p): density after removing Y0 and its x0-edges.
Rational trimmed_formula(const Rational& density, const Rational& p);

struct TrimmedDensity {
    Rational density;
    Rational p;
    Rational trimmed;
    /// 6 - trimmed: isoperimetric constant of the trimmed set over {x0, x1, xb1}.
    Rational iota_bound;
};

/// For BB(n, k) over {x0, x1, xb1}; needs k >= 1.
TrimmedDensity trimmed_density(const CountTable& table, std::size_t n);

struct BoundCheck {
    Rational p0;
    Rational epsilon;
    /// 1 - (p0 - eps) / (1 - p0)
    Rational from_epsilon;
    /// 1 - p0 / (2 (1 - p0))
    Rational closed_form;
};

/// Upper bound on the isoperimetric constant implied by a Y0 fraction above
/// p0, with epsilon = p0 / 2.
BoundCheck isoperimetric_bound(const Rational& p0);

}  // namespace fscheme
