#include "litclust/cluster.hpp"

#include "litclust/error.hpp"

namespace litclust {

namespace {

BigInt binomial(std::size_t n, std::size_t r)
{
    BigInt c = 1;
    for (std::size_t j = 0; j < r; ++j) {
        c *= n - j;
        c /= j + 1; // C(n, j) * (n - j) is divisible by j + 1
    }
    return c;
}

} // namespace

PartitionCount count_partitions(std::size_t n, std::size_t k, std::size_t s)
{
    if (k == 0 || s == 0 || n != k * s)
        fail("count: " + std::to_string(n) + " != " + std::to_string(k) + " * " +
             std::to_string(s));
    // Fill clusters one at a time: prod_i C(n - i*s, s) = n! / (s!)^k.
    PartitionCount out;
    out.ordered = 1;
    for (std::size_t i = 0; i < k; ++i)
        out.ordered *= binomial(n - i * s, s);
    BigInt k_factorial = 1;
    for (std::size_t i = 2; i <= k; ++i)
        k_factorial *= i;
    out.unordered = out.ordered / k_factorial;
    return out;
}

} // namespace litclust
