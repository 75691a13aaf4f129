#include "rotsim/constellation.hpp"

#include "rotsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

namespace rotsim {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kMatchTolerance = 1e-12;
constexpr double kBisectionTolerance = 1e-6;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

bool component_admissible(const RotatedConstellation& c, const Quantizer& q, int i)
{
    std::vector<int> codes;
    codes.reserve(c.size());
    for (const auto& p : c.normalized()) {
        codes.push_back(q.code_unchecked(p[static_cast<std::size_t>(i)]));
    }
    std::sort(codes.begin(), codes.end());
    return std::adjacent_find(codes.begin(), codes.end()) == codes.end();
}

}  // namespace

bool is_supported_order(int m)
{
    return m == 2 || m == 4 || m == 8 || m == 16;
}

PamAlphabet make_pam(int m)
{
    if (m < 2 || m % 2 != 0) {
        throw ConfigError("PAM order must be a positive even integer, got " + std::to_string(m));
    }
    PamAlphabet pam{m, {}};
    pam.values.reserve(static_cast<std::size_t>(m));
    for (int v = -(m - 1); v <= m - 1; v += 2) {
        pam.values.push_back(v);
    }
    return pam;
}

double matched_angle(int m)
{
    return std::atan(1.0 / static_cast<double>(m));
}

double algebraic_angle()
{
    return 0.5 * std::atan(2.0);
}

RotatedConstellation::RotatedConstellation(int m, double theta)
    : m_(m), theta_(theta), pam_(make_pam(m))
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    g_ = {{{c, s}, {-s, c}}};

    const std::size_t n = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    symbols_.reserve(n);
    vectors_.reserve(n);
    for (int u1 : pam_.values) {
        for (int u2 : pam_.values) {
            symbols_.push_back({u1, u2});
            vectors_.push_back({g_[0][0] * u1 + g_[0][1] * u2, g_[1][0] * u1 + g_[1][1] * u2});
        }
    }
    for (const auto& x : vectors_) {
        peak_ = std::max({peak_, std::abs(x[0]), std::abs(x[1])});
    }
    normalized_.reserve(n);
    for (const auto& x : vectors_) {
        normalized_.push_back({x[0] / peak_, x[1] / peak_});
    }
    for (std::size_t i = 0; i < 2; ++i) {
        auto& proj = projections_[i];
        proj.reserve(n);
        for (const auto& p : normalized_) {
            proj.push_back(p[i]);
        }
        std::sort(proj.begin(), proj.end());
    }
}

std::size_t RotatedConstellation::index_of(const RealPair& u) const
{
    const auto idx = [this](int v) { return static_cast<std::size_t>((v + m_ - 1) / 2); };
    return idx(u[0]) * static_cast<std::size_t>(m_) + idx(u[1]);
}

double RotatedConstellation::average_power() const noexcept
{
    return 2.0 * (static_cast<double>(m_) * m_ - 1.0) / 3.0;
}

RotatedConstellation build_rotated_constellation(int m, double theta)
{
    if (!is_supported_order(m)) {
        throw ConfigError("M must be one of 2, 4, 8, 16; got " + std::to_string(m));
    }
    if (!(theta >= 0.0 && theta < kQuarterPi)) {
        throw ConfigError("rotation angle must lie in [0, pi/4) rad");
    }
    return RotatedConstellation(m, theta);
}

std::vector<std::array<Rational, 2>> exact_normalized_vectors(int m, long p, long q)
{
    if (q <= 0 || p < 0 || p >= q) {
        throw ConfigError("exact_normalized_vectors: need 0 <= p < q");
    }
    const PamAlphabet pam = make_pam(m);
    std::vector<std::array<long, 2>> raw;
    long peak = 0;
    for (int u1 : pam.values) {
        for (int u2 : pam.values) {
            const long a = q * u1 + p * u2;
            const long b = -p * u1 + q * u2;
            raw.push_back({a, b});
            peak = std::max({peak, std::labs(a), std::labs(b)});
        }
    }
    std::vector<std::array<Rational, 2>> out;
    out.reserve(raw.size());
    for (const auto& r : raw) {
        out.push_back({Rational(r[0], peak), Rational(r[1], peak)});
    }
    return out;
}

bool is_admissible(const RotatedConstellation& c, const Quantizer& q)
{
    return component_admissible(c, q, 0) && component_admissible(c, q, 1);
}

CriteriaReport evaluate_criteria(const RotatedConstellation& c, const Quantizer& q)
{
    CriteriaReport report;
    report.min_bits = static_cast<int>(std::ceil(2.0 * std::log2(static_cast<double>(c.order())) - 1e-12));
    report.min_product_distance = min_product_distance(c);

    std::set<std::pair<int, int>> images;
    for (const auto& p : c.normalized()) {
        images.emplace(q.code_unchecked(p[0]), q.code_unchecked(p[1]));
    }
    report.distinguishable = images.size() == c.size();
    report.admissible = is_admissible(c, q);

    report.matched = is_matched(c, q);
    return report;
}

bool is_matched(const RotatedConstellation& c, const Quantizer& q)
{
    // Fixed points alone are not enough: at b = 1 and theta = 0 every
    // projection is +-1 yet the components collapse.
    return is_admissible(c, q) && std::all_of(c.normalized().begin(), c.normalized().end(), [&](const Vec2& p) {
        return std::abs(q.quantize(p[0]) - p[0]) < kMatchTolerance &&
               std::abs(q.quantize(p[1]) - p[1]) < kMatchTolerance;
    });
}

double min_product_distance(const RotatedConstellation& c)
{
    const auto& xs = c.vectors();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < xs.size(); ++a) {
        for (std::size_t b = a + 1; b < xs.size(); ++b) {
            const double d = std::abs(xs[a][0] - xs[b][0]) * std::abs(xs[a][1] - xs[b][1]);
            best = std::min(best, d);
        }
    }
    return best;
}

std::vector<AngleInterval> admissible_angle_range(int m, int bits, double grid_deg)
{
    if (!is_supported_order(m)) {
        throw ConfigError("M must be one of 2, 4, 8, 16; got " + std::to_string(m));
    }
    if (!(grid_deg > 0.0 && grid_deg <= 0.01)) {
        throw ConfigError("angle grid must be in (0, 0.01] degrees");
    }
    const Quantizer q(bits);
    const auto admissible_at = [&](double rad) { return is_admissible(RotatedConstellation(m, rad), q); };

    // Bisection between an admissible angle `in` and a non-admissible `out`.
    const auto refine = [&](double in, double out) {
        while (std::abs(out - in) > kBisectionTolerance) {
            const double mid = 0.5 * (in + out);
            (admissible_at(mid) ? in : out) = mid;
        }
        return 0.5 * (in + out);
    };

    const auto steps = static_cast<long>(std::ceil(45.0 / grid_deg));
    std::vector<AngleInterval> out;
    std::optional<long> run_start;
    long last_good = -1;
    for (long k = 0; k <= steps; ++k) {
        const double deg = static_cast<double>(k) * grid_deg;
        const bool in_domain = deg < 45.0;
        const bool ok = in_domain && admissible_at(deg_to_rad(deg));
        if (ok) {
            if (!run_start) {
                run_start = k;
            }
            last_good = k;
            continue;
        }
        if (run_start) {
            AngleInterval iv;
            const double lo_rad = deg_to_rad(static_cast<double>(*run_start) * grid_deg);
            const double hi_rad = deg_to_rad(static_cast<double>(last_good) * grid_deg);
            iv.lower_deg = *run_start == 0
                               ? 0.0
                               : rad_to_deg(refine(lo_rad, deg_to_rad(static_cast<double>(*run_start - 1) * grid_deg)));
            if (in_domain) {
                iv.upper_deg = rad_to_deg(refine(hi_rad, deg_to_rad(deg)));
            } else {
                iv.upper_deg = 45.0;
                iv.open_at_upper_limit = true;
            }
            out.push_back(iv);
            run_start.reset();
        }
    }
    return out;
}

}  // namespace rotsim
