#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Points = std::vector<std::vector<double>>;

inline double dist(const std::vector<double>& a, const std::vector<double>& b)
{
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (static_cast<long double>(a[i]) - b[i]) * (static_cast<long double>(a[i]) - b[i]);
    return static_cast<double>(std::sqrt(s));
}

struct Strength {
    double intra = 0, inter = 0, strength = 0;
};

/// Mean intra/inter distances over all 2-subsets, straight from the definition.
inline Strength strength(const Points& pts, const std::vector<std::size_t>& labels)
{
    double in = 0, out = 0;
    std::size_t nin = 0, nout = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j <= i)
                continue;
            if (labels[i] == labels[j]) {
                in += dist(pts[i], pts[j]);
                ++nin;
            } else {
                out += dist(pts[i], pts[j]);
                ++nout;
            }
        }
    Strength s;
    s.intra = nin ? in / nin : 0.0;
    s.inter = nout ? out / nout : 0.0;
    s.strength = s.inter > 0 ? (s.inter - s.intra) / s.inter : 0.0;
    return s;
}

/// Every label sequence with each of 0..k-1 appearing s times (ordered clusters).
inline std::vector<std::vector<std::size_t>> ordered_assignments(std::size_t k, std::size_t s)
{
    std::vector<std::size_t> v;
    for (std::size_t c = 0; c < k; ++c)
        v.insert(v.end(), s, c);
    std::vector<std::vector<std::size_t>> out;
    do {
        out.push_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// Relabel by order of first appearance.
inline std::vector<std::size_t> canonical(const std::vector<std::size_t>& labels)
{
    std::map<std::size_t, std::size_t> remap;
    std::vector<std::size_t> out;
    for (auto l : labels) {
        auto it = remap.try_emplace(l, remap.size()).first;
        out.push_back(it->second);
    }
    return out;
}

/// Best strength over every ordered balanced assignment.
inline double best_strength(const Points& pts, std::size_t k, std::size_t s)
{
    double best = -1e300;
    for (const auto& a : ordered_assignments(k, s))
        best = std::max(best, strength(pts, a).strength);
    return best;
}

inline mpz_class factorial(unsigned long n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

/// n! / (s!)^k via GMP factorials.
inline mpz_class ordered_count(unsigned long n, unsigned long k, unsigned long s)
{
    mpz_class denom = 1;
    for (unsigned long i = 0; i < k; ++i)
        denom *= factorial(s);
    return factorial(n) / denom;
}

/// Purity by explicit intersection counting over cluster/group pairs.
inline std::size_t purity_numerator(const std::vector<std::size_t>& pred,
                                    const std::vector<std::size_t>& gold)
{
    std::size_t kp = 0, kg = 0;
    for (auto p : pred)
        kp = std::max(kp, p + 1);
    for (auto g : gold)
        kg = std::max(kg, g + 1);
    std::size_t total = 0;
    for (std::size_t m = 0; m < kp; ++m) {
        std::size_t best = 0;
        for (std::size_t d = 0; d < kg; ++d) {
            std::size_t inter = 0;
            for (std::size_t i = 0; i < pred.size(); ++i)
                if (pred[i] == m && gold[i] == d)
                    ++inter;
            best = std::max(best, inter);
        }
        total += best;
    }
    return total;
}

/// Intruder = point whose two distances to the others sum highest, first on ties.
inline std::size_t odd_one_out(const std::vector<double>& a, const std::vector<double>& b,
                               const std::vector<double>& c)
{
    const Points p{a, b, c};
    std::size_t best = 0;
    double best_sum = -1;
    for (std::size_t i = 0; i < 3; ++i) {
        double sum = 0;
        for (std::size_t j = 0; j < 3; ++j)
            if (j != i)
                sum += dist(p[i], p[j]);
        if (sum > best_sum + 1e-12) {
            best_sum = sum;
            best = i;
        }
    }
    return best;
}

/// Fleiss kappa through pairwise rater agreement: P_i is the share of
/// agreeing rater pairs on item i, P_e the chance that two random votes match.
inline double fleiss_kappa(const std::vector<std::vector<std::size_t>>& counts)
{
    std::size_t n = 0;
    for (auto c : counts[0])
        n += c;
    const double pairs = n * (n - 1) / 2.0;
    double p_bar = 0;
    std::vector<double> totals(counts[0].size(), 0);
    for (const auto& row : counts) {
        double agree = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            agree += row[j] * (row[j] - 1) / 2.0;
            totals[j] += row[j];
        }
        p_bar += agree / pairs;
    }
    p_bar /= counts.size();
    double all = 0;
    for (double t : totals)
        all += t;
    double p_e = 0;
    for (double t : totals)
        p_e += (t / all) * (t / all);
    if (p_e == 1.0)
        return 1.0;
    return (p_bar - p_e) / (1 - p_e);
}

inline double majority_rate(const std::vector<std::vector<std::size_t>>& counts)
{
    std::size_t hits = 0;
    for (const auto& row : counts) {
        bool two = false;
        for (auto c : row)
            two = two || c >= 2;
        hits += two;
    }
    return static_cast<double>(hits) / counts.size();
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns (eigenvalues descending, eigenvectors as rows).
inline std::pair<std::vector<double>, std::vector<std::vector<double>>>
symmetric_eigen(std::vector<std::vector<double>> a)
{
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += a[p][q] * a[p][q];
        if (off < 1e-30)
            break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300)
                    continue;
                const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x][x] > a[y][y]; });
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    for (auto i : order) {
        values.push_back(a[i][i]);
        std::vector<double> col(n);
        for (std::size_t k = 0; k < n; ++k)
            col[k] = v[k][i];
        vectors.push_back(col);
    }
    return {values, vectors};
}

/// Sample covariance (N - 1 denominator) of row-major points.
inline std::vector<std::vector<double>> covariance(const Points& x)
{
    const std::size_t n = x.size(), d = x[0].size();
    std::vector<double> mean(d, 0.0);
    for (const auto& r : x)
        for (std::size_t j = 0; j < d; ++j)
            mean[j] += r[j] / n;
    std::vector<std::vector<double>> c(d, std::vector<double>(d, 0.0));
    for (const auto& r : x)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                c[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]) / (n - 1);
    return c;
}

} // namespace oracle
