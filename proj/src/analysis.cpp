#include "qpke/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

__extension__ using WideUnsigned = unsigned __int128;

void check_copies(int copies) {
    if (copies < 2) {
        throw ParameterError("copies-t: T must be at least 2");
    }
}

void check_length(int length) {
    if (length < 1 || length > kMaxCodewordLength) {
        throw ParameterError("codeword-len: s must lie in [1, " +
                             std::to_string(kMaxCodewordLength) + "]");
    }
}

// Integer ceiling of a positive ratio, snapping values within rounding
// distance of an integer onto it so exact boundary cases stay exact.
int ceil_snapped(double value) {
    const double nearest = std::round(value);
    if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, std::abs(value))) {
        return static_cast<int>(nearest);
    }
    return static_cast<int>(std::ceil(value));
}

}  // namespace

SecurityThreshold::SecurityThreshold(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw ParameterError("epsilon: threshold must lie in (0, 1/2)");
    }
}

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    WideUnsigned c = 1;
    for (int i = 1; i <= k; ++i) {
        // c * (n - k + i) / i stays an integer at every step.
        c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (c > std::numeric_limits<std::uint64_t>::max()) {
            throw ParameterError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                 ") overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(c);
}

double p_success_conditional(int copies, int length, int bit) {
    check_copies(copies);
    check_length(length);
    if (bit != 0 && bit != 1) {
        throw ParameterError("plaintext bit must be 0 or 1");
    }
    const double q = 1.0 / static_cast<double>(copies);
    double sum = 0.0;
    for (int alpha = bit; alpha <= length; alpha += 2) {
        const double ways = static_cast<double>(binomial(length, alpha));
        double inner = 0.0;
        for (int gamma = 0; gamma <= alpha; gamma += 2) {
            inner += static_cast<double>(binomial(alpha, gamma)) * std::pow(q, gamma) *
                     std::pow(1.0 - q, alpha - gamma);
        }
        sum += ways * inner;
    }
    return std::ldexp(sum, 1 - length);
}

double p_success_average(int copies, int length) {
    return 0.5 * (p_success_conditional(copies, length, 0) +
                  p_success_conditional(copies, length, 1));
}

double p_success_closed(int copies, int length) {
    check_copies(copies);
    if (length < 1) {
        throw ParameterError("codeword-len: s must be at least 1");
    }
    const double q = 1.0 / static_cast<double>(copies);
    return 0.5 + 0.5 * std::pow(1.0 - q, length);
}

int s_min_tight(int copies, SecurityThreshold threshold) {
    check_copies(copies);
    // Both logs are negative for eps < 1/2 and T >= 2; the absolute value
    // bars only flip their signs.
    const double numerator = 1.0 + std::log2(threshold.epsilon());
    const double denominator =
        std::log2(static_cast<double>(copies - 1) / static_cast<double>(copies));
    const double bound = std::abs(numerator / denominator);
    int s = std::max(1, ceil_snapped(bound));
    // Guards against a snap landing one short of a bound that sits just above
    // an integer.
    while (p_success_closed(copies, s) > 0.5 + threshold.epsilon()) {
        ++s;
    }
    return s;
}

int s_min_simple(int copies, SecurityThreshold threshold) {
    check_copies(copies);
    const double bound =
        static_cast<double>(copies) * std::abs(1.0 + std::log2(threshold.epsilon()));
    return std::max(1, ceil_snapped(bound));
}

SuccessTable success_table(int copies, int max_length) {
    check_copies(copies);
    check_length(max_length);
    SuccessTable table{copies, {}};
    for (int s = 1; s <= max_length; ++s) {
        SuccessRow row;
        row.length = s;
        row.p_success_b0 = p_success_conditional(copies, s, 0);
        row.p_success_b1 = p_success_conditional(copies, s, 1);
        row.p_success = 0.5 * (row.p_success_b0 + row.p_success_b1);
        row.closed_form = p_success_closed(copies, s);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace qpke
