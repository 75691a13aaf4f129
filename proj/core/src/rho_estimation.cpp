#include "rotsim/rho_estimation.hpp"

#include "rotsim/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace rotsim {

namespace {

// Small exact fraction used during enumeration; values stay far below 2^31.
struct Frac {
    long num;
    long den;  // > 0, reduced

    static Frac make(long n, long d)
    {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const long g = std::gcd(n, d);
        return {n / g, d / g};
    }
    friend bool operator<(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator==(const Frac& a, const Frac& b) = default;
};

std::vector<Rational> to_rationals(const std::set<Frac>& values, long scale)
{
    std::vector<Rational> out;
    out.reserve(values.size());
    for (const auto& f : values) {
        out.emplace_back(BigInt(f.num), BigInt(f.den) * scale);
    }
    return out;
}

Rational square(const Rational& r) { return r * r; }

// Number of elements of `sorted` that are <= z, and that are < z.
std::pair<std::size_t, std::size_t> rank(const std::vector<Rational>& sorted, const Rational& z)
{
    const auto le = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), z) - sorted.begin());
    const auto lt = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), z) - sorted.begin());
    return {le, lt};
}

}  // namespace

std::vector<Rational> QSets::positive() const
{
    return {nonnegative.begin() + 1, nonnegative.end()};
}

QSets build_qsets(int m, int bits)
{
    if (m != 2 && m != 4) {
        throw SizeError("ratio-set enumeration is limited to M in {2, 4}; got M=" + std::to_string(m));
    }
    const int expected_bits = 2 * std::countr_zero(static_cast<unsigned>(m));
    if (bits != expected_bits) {
        throw ConfigError("ratio sets require b = 2 log2 M = " + std::to_string(expected_bits));
    }
    const long scale = (1L << bits) - 1;
    const long mm = static_cast<long>(m) * m;

    // Numerators over `scale`: a1 - a2 with a_i in S_{M^2} -> even integers.
    std::set<long> diff_nums;
    for (long a1 = -(mm - 1); a1 <= mm - 1; a1 += 2) {
        for (long a2 = -(mm - 1); a2 <= mm - 1; a2 += 2) {
            diff_nums.insert(a1 - a2);
        }
    }
    std::set<long> square_nums;  // over scale^2
    for (long d : diff_nums) {
        square_nums.insert(d * d);
    }
    std::set<long> square_diffs;
    for (long s1 : square_nums) {
        for (long s2 : square_nums) {
            square_diffs.insert(s1 - s2);
        }
    }
    std::set<Frac> ratios;
    for (long top : square_diffs) {
        for (long bottom : square_diffs) {
            if (bottom != 0) {
                ratios.insert(Frac::make(top, bottom));
            }
        }
    }

    QSets out;
    out.m = m;
    out.bits = bits;
    for (long d : diff_nums) {
        out.differences.emplace_back(d, scale);
    }
    for (long s : square_nums) {
        out.squares.emplace_back(BigInt(s), BigInt(scale * scale));
    }
    out.ratios = to_rationals(ratios, 1);
    for (const auto& r : out.ratios) {
        if (r >= 0) {
            out.nonnegative.push_back(r);
        }
    }
    return out;
}

std::vector<Interval> induced_intervals(const std::vector<Rational>& sorted)
{
    if (sorted.empty()) {
        throw ConfigError("induced_intervals: empty set");
    }
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || (i > 0 && !(sorted[i - 1] < sorted[i]))) {
            throw ConfigError("induced_intervals: set must be nonnegative, sorted and distinct");
        }
    }
    std::vector<Interval> out;
    out.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        Interval iv{sorted[i], std::nullopt};
        if (i + 1 < sorted.size()) {
            iv.upper = sorted[i + 1];
        }
        out.push_back(std::move(iv));
    }
    return out;
}

std::vector<Interval> full_partition(const std::vector<Rational>& sorted)
{
    auto out = induced_intervals(sorted);
    if (sorted.front() > 0) {
        out.insert(out.begin(), Interval{Rational(0), sorted.front()});
    }
    return out;
}

std::vector<double> TrainingSequence::as_double() const
{
    std::vector<double> out;
    out.reserve(symbols.size());
    for (const auto& s : symbols) {
        out.push_back(to_double(s));
    }
    return out;
}

std::string TrainingSequence::describe() const
{
    std::ostringstream os;
    switch (kind) {
    case TrainingKind::theorem3:
        os << "theorem3(l=" << symbols.size() << ")";
        break;
    case TrainingKind::sampled_subset:
        os << "subset(l=" << symbols.size() << ")";
        break;
    case TrainingKind::geometric:
        os << "geometric(d=" << ratio << ",l=" << length << ")";
        break;
    case TrainingKind::custom:
        os << "custom(l=" << symbols.size() << ")";
        break;
    }
    return os.str();
}

TrainingSequence sampled_subset_sequence(std::vector<Rational> subset, const QSets* qsets)
{
    if (subset.empty()) {
        throw ConfigError("training subset must be nonempty");
    }
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
        throw ConfigError("training subset elements must be distinct");
    }
    for (const auto& s : subset) {
        if (s <= 0) {
            throw ConfigError("training subset elements must be positive");
        }
        if (qsets != nullptr &&
            !std::binary_search(qsets->nonnegative.begin(), qsets->nonnegative.end(), s)) {
            throw ConfigError("training subset element " + to_string(s) + " is not in the ratio set");
        }
    }
    TrainingSequence t;
    t.kind = TrainingKind::sampled_subset;
    const Rational two_thirds(2, 3);
    for (auto it = subset.rbegin(); it != subset.rend(); ++it) {
        t.symbols.push_back(two_thirds / *it);
    }
    t.subset = std::move(subset);
    return t;
}

TrainingSequence theorem3_sequence(const QSets& qsets)
{
    if (qsets.m != 2 || qsets.bits != 2) {
        throw ConfigError("the optimal training construction is defined for M=2, b=2 only");
    }
    TrainingSequence t = sampled_subset_sequence(qsets.positive(), &qsets);
    t.kind = TrainingKind::theorem3;
    return t;
}

TrainingSequence geometric_sequence(int length, double ratio)
{
    if (length < 1 || !(ratio > 1.0) || !std::isfinite(ratio)) {
        throw ConfigError("geometric training needs l >= 1 and d > 1");
    }
    TrainingSequence t;
    t.kind = TrainingKind::geometric;
    t.ratio = ratio;
    t.length = length;
    const double center = 0.5 * (length + 1);
    for (int k = 1; k <= length; ++k) {
        t.symbols.push_back(exact_rational(std::pow(ratio, static_cast<double>(k) - center)));
    }
    return t;
}

TrainingSequence custom_sequence(std::vector<Rational> symbols)
{
    if (symbols.empty()) {
        throw ConfigError("training sequence must be nonempty");
    }
    for (const auto& s : symbols) {
        if (s <= 0) {
            throw ConfigError("training symbols must be positive");
        }
    }
    TrainingSequence t;
    t.kind = TrainingKind::custom;
    t.symbols = std::move(symbols);
    return t;
}

std::vector<int> training_codes(const TrainingSequence& t, const Quantizer& q, const Rational& rho)
{
    std::vector<int> out;
    out.reserve(t.symbols.size());
    for (const auto& c : t.symbols) {
        out.push_back(q.code(rho * c));
    }
    return out;
}

Interval ml_interval(const TrainingSequence& t, const std::vector<int>& codes, const Quantizer& q)
{
    if (codes.size() != t.symbols.size()) {
        throw ConfigError("ml_interval: output count does not match training length");
    }
    Interval acc{Rational(0), std::nullopt};
    for (std::size_t k = 0; k < codes.size(); ++k) {
        Interval cell = q.cell_of_code(codes[k]);
        const Rational& c = t.symbols[k];
        if (cell.lower) {
            *cell.lower /= c;
        }
        if (cell.upper) {
            *cell.upper /= c;
        }
        acc = acc.intersect(cell);
    }
    if (acc.empty()) {
        throw InfeasibleOutputs("training outputs are inconsistent with every rho >= 0");
    }
    return acc;
}

Interval ml_interval(const TrainingSequence& t, const std::vector<Rational>& outputs, const Quantizer& q)
{
    std::vector<int> codes;
    codes.reserve(outputs.size());
    for (const auto& r : outputs) {
        if (!q.is_level(r)) {
            throw ConfigError("ml_interval: " + to_string(r) + " is not a quantizer level");
        }
        codes.push_back((r * q.scale()).convert_to<int>());
    }
    return ml_interval(t, codes, q);
}

Rational estimate_rho_exact(const Interval& interval)
{
    if (!interval.lower || interval.empty()) {
        throw ConfigError("estimate_rho: interval must be nonempty with a finite infimum");
    }
    if (interval.upper) {
        return (*interval.lower + *interval.upper) / 2;
    }
    return *interval.lower;
}

double estimate_rho(const Interval& interval)
{
    return to_double(estimate_rho_exact(interval));
}

std::vector<FeasibleOutput> enumerate_feasible_outputs(const TrainingSequence& t, const Quantizer& q)
{
    if (t.symbols.empty()) {
        throw ConfigError("training sequence must be nonempty");
    }
    std::vector<Rational> edges;
    for (const auto& b : q.boundaries()) {
        if (b > 0) {
            edges.push_back(b);
        }
    }
    std::vector<Rational> breaks;
    for (const auto& c : t.symbols) {
        if (c <= 0) {
            throw ConfigError("training symbols must be positive");
        }
        for (const auto& e : edges) {
            breaks.push_back(e / c);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<FeasibleOutput> out;
    out.reserve(breaks.size() + 1);
    const auto add = [&](const Rational& rho) {
        auto codes = training_codes(t, q, rho);
        auto iv = ml_interval(t, codes, q);
        out.push_back({std::move(codes), std::move(iv)});
    };
    add(Rational(0));
    for (const auto& b : breaks) {
        add(b);
    }
    return out;
}

std::optional<Theorem1Violation> find_theorem1_violation(double rho, double rho_hat,
                                                         const RotatedConstellation& c,
                                                         const Quantizer& q)
{
    if (!(rho > 0.0) || !(rho_hat > 0.0)) {
        throw ConfigError("check_theorem1: rho and rho_hat must be positive");
    }
    const long scale = q.scale();
    const auto& cand = c.normalized();

    // Integer codes when every projection is a quantizer level (matched
    // constellation); then all metric terms are integers over scale^2.
    std::vector<std::array<long, 2>> codes;
    bool exact = true;
    for (const auto& p : cand) {
        std::array<long, 2> k{};
        for (std::size_t i = 0; i < 2; ++i) {
            const double v = p[i] * static_cast<double>(scale);
            k[i] = std::lround(v);
            exact = exact && std::abs(v - static_cast<double>(k[i])) < 1e-9;
        }
        codes.push_back(k);
    }

    const Rational z_true = square(exact_rational(rho));
    const Rational z_hat = square(exact_rational(rho_hat));
    std::map<std::pair<long, long>, bool> agree_cache;

    // sign(d1 + z d2) agreement between the two weights.
    const auto agree_exact = [&](long d1, long d2) {
        auto [it, inserted] = agree_cache.try_emplace({d1, d2}, true);
        if (inserted) {
            const Rational a = Rational(d1) + z_true * d2;
            const Rational b = Rational(d1) + z_hat * d2;
            it->second = !((a < 0 && b > 0) || (a > 0 && b < 0));
        }
        return it->second;
    };
    const double zt = rho * rho;
    const double zh = rho_hat * rho_hat;

    const std::size_t n = cand.size();
    for (long r1 = -scale; r1 <= scale; r1 += 2) {
        for (long r2 = -scale; r2 <= scale; r2 += 2) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    if (a == b) {
                        continue;
                    }
                    bool ok = true;
                    if (exact) {
                        const auto sq = [](long v) { return v * v; };
                        const long d1 = sq(r1 - codes[a][0]) - sq(r1 - codes[b][0]);
                        const long d2 = sq(r2 - codes[a][1]) - sq(r2 - codes[b][1]);
                        ok = agree_exact(d1, d2);
                    } else {
                        const double x1 = static_cast<double>(r1) / scale;
                        const double x2 = static_cast<double>(r2) / scale;
                        const auto sq = [](double v) { return v * v; };
                        const double d1 = sq(x1 - cand[a][0]) - sq(x1 - cand[b][0]);
                        const double d2 = sq(x2 - cand[a][1]) - sq(x2 - cand[b][1]);
                        ok = (d1 + zt * d2) * (d1 + zh * d2) >= 0.0;
                    }
                    if (!ok) {
                        return Theorem1Violation{{static_cast<double>(r1) / scale, static_cast<double>(r2) / scale},
                                                 c.symbols()[a], c.symbols()[b]};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool check_theorem1(double rho, double rho_hat, const RotatedConstellation& c, const Quantizer& q)
{
    return !find_theorem1_violation(rho, rho_hat, c, q).has_value();
}

bool check_theorem2(double rho, double rho_hat, const QSets& qsets)
{
    if (!(rho > 0.0) || !(rho_hat > 0.0)) {
        throw ConfigError("check_theorem2: rho and rho_hat must be positive");
    }
    const Rational z_true = square(exact_rational(rho));
    const Rational z_hat = square(exact_rational(rho_hat));
    return rank(qsets.nonnegative, z_true) == rank(qsets.nonnegative, z_hat);
}

bool check_sequence_optimality(const TrainingSequence& t, const QSets& qsets, const Quantizer& q)
{
    const auto cells = full_partition(qsets.nonnegative);
    for (const auto& f : enumerate_feasible_outputs(t, q)) {
        const Rational& lo = *f.interval.lower;
        const auto idx = rank(qsets.nonnegative, lo).first;  // cell containing lo
        const Interval& cell = cells[qsets.nonnegative.front() > 0 ? idx : idx - 1];
        if (!f.interval.subset_of(cell)) {
            return false;
        }
    }
    return true;
}

}  // namespace rotsim
