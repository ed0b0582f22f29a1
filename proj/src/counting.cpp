#include "fscheme/counting.hpp"

#include <algorithm>

#include "fscheme/errors.hpp"

namespace fscheme {

std::vector<BigInt> tree_counts(int k, std::size_t max_leaves)
{
    std::vector<BigInt> level(max_leaves + 1, 0);
    if (k < 0) return level;
    if (max_leaves >= 1) level[1] = 1;
    for (int h = 1; h <= k; ++h) {
        std::vector<BigInt> next(max_leaves + 1, 0);
        if (max_leaves >= 1) next[1] = 1;
        // a tree of height <= h - 1 has at most 2^(h-1) leaves
        const std::size_t half = h - 1 >= 62 ? max_leaves : std::min<std::size_t>(max_leaves, std::size_t{1} << (h - 1));
        const std::size_t top = std::min(max_leaves, 2 * half);
        for (std::size_t l = 2; l <= top; ++l) {
            const std::size_t lo = l > half ? l - half : 1;
            const std::size_t hi = std::min(l - 1, half);
            for (std::size_t i = lo; i <= hi; ++i) mpz_addmul(next[l].get_mpz_t(), level[i].get_mpz_t(), level[l - i].get_mpz_t());
        }
        level = std::move(next);
    }
    return level;
}

CountTable::CountTable(int k, std::size_t max_n) : k_(k), max_n_(max_n)
{
    if (k < 0) throw PreconditionError("height cap must be >= 0");
    trees_ = tree_counts(k, max_n);
    lower_ = tree_counts(k - 1, max_n);

    // ordered pairs of trees of height < k, i.e. carets of height <= k
    lower_pairs_.assign(max_n + 1, 0);
    for (std::size_t l = 2; l <= max_n; ++l) lower_pairs_[l] = trees_[l];

    std::size_t width = 0;
    for (std::size_t l = 1; l <= max_n; ++l)
        if (trees_[l] != 0) width = l;

    forests_.assign(max_n + 1, 0);
    pairs_.assign(max_n + 1, 0);
    forests_[0] = 1;
    pairs_[0] = 1;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const std::size_t top = std::min(n, width);
        BigInt& f = forests_[n];
        for (std::size_t l = 1; l <= top; ++l) mpz_addmul(f.get_mpz_t(), trees_[l].get_mpz_t(), forests_[n - l].get_mpz_t());
        // P = F + T P
        BigInt& p = pairs_[n];
        p = f;
        for (std::size_t l = 1; l <= top; ++l) mpz_addmul(p.get_mpz_t(), trees_[l].get_mpz_t(), pairs_[n - l].get_mpz_t());
    }
    marked_.resize(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) marked_[n] = pairs_[n] - forests_[n];
}

void CountTable::check(std::size_t n) const
{
    if (n == 0 || n > max_n_)
        throw PreconditionError("n = " + std::to_string(n) + " outside table range 1.." + std::to_string(max_n_));
}

BigInt CountTable::marked(std::size_t n) const { return marked_.at(n); }

BigInt CountTable::convolve_at(const std::vector<BigInt>& block, const std::vector<BigInt>& series, std::size_t n)
{
    BigInt total = 0;
    const std::size_t top = std::min(n, block.size() - 1);
    for (std::size_t s = 0; s <= top; ++s)
        if (block[s] != 0) mpz_addmul(total.get_mpz_t(), block[s].get_mpz_t(), series[n - s].get_mpz_t());
    return total;
}

const BigInt& CountTable::merge_accepting(std::size_t m) const
{
    // caller holds cache_mutex_
    auto it = merge_cache_.find(m);
    if (it == merge_cache_.end()) it = merge_cache_.emplace(m, convolve_at(lower_pairs_, pairs_, m)).first;
    return it->second;
}

const std::vector<BigInt>& CountTable::exact_height_pairs() const
{
    // caller holds cache_mutex_
    if (exact_pairs_ready_) return exact_pairs_;
    std::vector<BigInt> exact(max_n_ + 1, 0);
    std::size_t lo = max_n_ + 1, hi = 0;
    for (std::size_t l = 1; l <= max_n_; ++l) {
        exact[l] = trees_[l] - lower_[l];
        if (exact[l] != 0) {
            lo = std::min(lo, l);
            hi = l;
        }
    }
    exact_pairs_.assign(max_n_ + 1, 0);
    for (std::size_t a = lo; a <= hi; ++a)
        for (std::size_t b = lo; b <= hi && a + b <= max_n_; ++b)
            mpz_addmul(exact_pairs_[a + b].get_mpz_t(), exact[a].get_mpz_t(), exact[b].get_mpz_t());
    exact_pairs_ready_ = true;
    return exact_pairs_;
}

BigInt CountTable::nu(std::size_t n, ForestLetter letter) const
{
    check(n);
    const BigInt& all = marked_[n];
    switch (letter.generator) {
        case Generator::x0:
            // marker leftmost (x0) or rightmost (x0^-1): one marked forest per forest
            return forests_[n];
        case Generator::x1:
        case Generator::xb1:
            if (!letter.inverse) return pairs_[n - 1];  // marked tree trivial
            return all - convolve_at(lower_pairs_, pairs_, n);
        case Generator::x2: {
            if (!letter.inverse) {
                // accepted: a nontrivial tree directly right of the marker
                return all - convolve_at(lower_pairs_, marked_, n);
            }
            // accepted: marked tree followed by two trees of height < k
            BigInt accepted = 0;
            std::lock_guard lock(cache_mutex_);
            for (std::size_t a = 1; a < n; ++a)
                if (trees_[a] != 0) accepted += trees_[a] * merge_accepting(n - a);
            return all - accepted;
        }
    }
    throw PreconditionError("unsupported letter");
}

BigInt CountTable::y0(std::size_t n) const
{
    check(n);
    if (k_ < 1 || n < 3) return 0;
    std::lock_guard lock(cache_mutex_);
    return convolve_at(exact_height_pairs(), pairs_, n - 1);
}

BigInt bb_count(std::size_t n, int k) { return CountTable(k, n).marked(n); }

std::vector<BigInt> nu_counts(std::size_t n, int k, const GenAlphabet& alphabet)
{
    const CountTable table(k, n);
    std::vector<BigInt> out;
    for (LetterId l = 0; l < alphabet.letter_count(); ++l) {
        ForestLetter letter = ForestLetter::parse(alphabet.base(symbol_of(l)));
        letter.inverse = is_inverse_letter(l);
        out.push_back(table.nu(n, letter));
    }
    return out;
}

BigInt y0_count(std::size_t n, int k)
{
    if (k < 1) return 0;
    return CountTable(k, n).y0(n);
}

DensityRecord density_report(const CountTable& table, std::size_t n, const GenAlphabet& alphabet)
{
    DensityRecord rec;
    rec.n = n;
    rec.k = table.height_cap();
    rec.alphabet = alphabet.spec();
    rec.size = table.marked(n);
    BigInt cheeger = 0;
    for (LetterId l = 0; l < alphabet.letter_count(); ++l) {
        ForestLetter letter = ForestLetter::parse(alphabet.base(symbol_of(l)));
        letter.inverse = is_inverse_letter(l);
        rec.letters.push_back(alphabet.letter_name(l));
        rec.nu.push_back(table.nu(n, letter));
        rec.nu_fraction.push_back(make_ratio(rec.nu.back(), rec.size));
        cheeger += rec.nu.back();
    }
    rec.isoperimetric = make_ratio(cheeger, rec.size);
    rec.density = Rational(static_cast<unsigned long>(alphabet.letter_count())) - rec.isoperimetric;
    rec.p = make_ratio(table.y0(n), rec.size);
    rec.xi = make_ratio(table.marked(n - 1), rec.size);
    return rec;
}

XiEstimate xi_estimate(const CountTable& table, std::size_t n)
{
    if (n < 2) throw PreconditionError("xi estimate needs n >= 2");
    XiEstimate est;
    est.n = n;
    est.k = table.height_cap();
    est.ratio = make_ratio(table.marked(n - 1), table.marked(n));
    est.previous = make_ratio(table.marked(n - 2), table.marked(n - 1));
    est.difference = est.ratio - est.previous;
    return est;
}

Rational trimmed_formula(const Rational& density, const Rational& p)
{
    if (p >= 1) throw PreconditionError("trimmed density needs p < 1");
    Rational out = (density - 4 * p) / (1 - p);
    out.canonicalize();
    return out;
}

TrimmedDensity trimmed_density(const CountTable& table, std::size_t n)
{
    if (table.height_cap() < 1) throw PreconditionError("trimmed density needs k >= 1");
    static const GenAlphabet symmetric = GenAlphabet::parse("x0,x1,xb1");
    const DensityRecord rec = density_report(table, n, symmetric);
    TrimmedDensity out;
    out.density = rec.density;
    out.p = rec.p;
    out.trimmed = trimmed_formula(rec.density, rec.p);
    out.iota_bound = Rational(6) - out.trimmed;
    return out;
}

BoundCheck isoperimetric_bound(const Rational& p0)
{
    BoundCheck out;
    out.p0 = p0;
    out.epsilon = p0 / 2;
    out.from_epsilon = 1 - (p0 - out.epsilon) / (1 - p0);
    out.closed_form = 1 - p0 / (2 * (1 - p0));
    out.epsilon.canonicalize();
    out.from_epsilon.canonicalize();
    out.closed_form.canonicalize();
    return out;
}

}  // namespace fscheme
