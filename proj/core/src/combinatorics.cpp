#include "mixpois/combinatorics.hpp"

#include <stdexcept>

namespace mixpois {

BigCount binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigCount result = 1;
  for (unsigned i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

std::vector<BigCount> stirling2_row(unsigned s) {
  // {n, j} = j*{n-1, j} + {n-1, j-1}, updated in place from the right.
  std::vector<BigCount> row(s + 1, BigCount(0));
  row[0] = 1;
  for (unsigned n = 1; n <= s; ++n) {
    for (unsigned j = n; j >= 1; --j) {
      row[j] = BigCount(j) * row[j] + row[j - 1];
    }
    row[0] = 0;
  }
  return row;
}

BigCount stirling2(unsigned s, unsigned j) {
  if (j > s) return 0;
  return stirling2_row(s)[j];
}

std::vector<BigCount> assoc_stirling2_row(unsigned s) {
  // S2(n, k) = k*S2(n-1, k) + (n-1)*S2(n-2, k-1): the new element either
  // joins one of the k blocks or forms a pair with one of the n-1 others.
  std::vector<BigCount> prev2(s + 1, BigCount(0));  // row n-2
  std::vector<BigCount> prev1(s + 1, BigCount(0));  // row n-1
  prev2[0] = 1;
  if (s == 0) return prev2;
  // Row n = 1: the single element cannot sit in a block of size >= 2.
  if (s == 1) return prev1;
  for (unsigned n = 2; n <= s; ++n) {
    std::vector<BigCount> row(s + 1, BigCount(0));
    for (unsigned k = 1; k <= n / 2; ++k) {
      row[k] = BigCount(k) * prev1[k] + BigCount(n - 1) * prev2[k - 1];
    }
    prev2 = std::move(prev1);
    prev1 = std::move(row);
  }
  return prev1;
}

BigCount assoc_stirling2(unsigned s, unsigned k) {
  if (k > s) return 0;
  return assoc_stirling2_row(s)[k];
}

BigCount double_factorial_odd(unsigned m) {
  BigCount result = 1;
  for (unsigned i = 1; i <= m; ++i) result *= 2 * i - 1;
  return result;
}

double falling_factorial(double x, unsigned s) {
  double result = 1.0;
  for (unsigned i = 0; i < s; ++i) result *= x - static_cast<double>(i);
  return result;
}

namespace {

// Walks every set partition of {0, ..., s-1} by assigning each element to
// an existing block or a fresh one, then counts the ones with exactly k
// blocks, all of size >= min_size.
void enumerate_rec(unsigned next, unsigned s, unsigned used_blocks,
                   std::vector<unsigned>& block_sizes, unsigned k,
                   unsigned min_size, BigCount& count) {
  if (next == s) {
    if (used_blocks != k) return;
    for (unsigned b = 0; b < used_blocks; ++b) {
      if (block_sizes[b] < min_size) return;
    }
    ++count;
    return;
  }
  for (unsigned b = 0; b < used_blocks; ++b) {
    ++block_sizes[b];
    enumerate_rec(next + 1, s, used_blocks, block_sizes, k, min_size, count);
    --block_sizes[b];
  }
  if (used_blocks < s) {
    block_sizes[used_blocks] = 1;
    enumerate_rec(next + 1, s, used_blocks + 1, block_sizes, k, min_size, count);
  }
}

}  // namespace

BigCount enumerate_partitions_min_block(unsigned s, unsigned k, unsigned min_size) {
  if (s > 14) {
    throw std::invalid_argument(
        "enumerate_partitions_min_block: set size " + std::to_string(s) +
        " exceeds the exhaustive-enumeration limit of 14");
  }
  if (s == 0) return k == 0 ? 1 : 0;
  BigCount count = 0;
  std::vector<unsigned> block_sizes(s, 0);
  enumerate_rec(0, s, 0, block_sizes, k, min_size, count);
  return count;
}

IntPolynomial touchard_poly(unsigned s) {
  return IntPolynomial(stirling2_row(s));
}

IntPolynomial centered_poisson_moment_recurrence(unsigned s) {
  std::vector<IntPolynomial> m(s + 1);
  m[0] = IntPolynomial::constant(1);
  if (s >= 1) m[1] = IntPolynomial();
  for (unsigned n = 2; n <= s; ++n) {
    IntPolynomial sum;
    for (unsigned k = 0; k + 2 <= n; ++k) {
      sum += m[k] * binomial(n - 1, k);
    }
    m[n] = sum.shifted_up(1);
  }
  return m[s];
}

IntPolynomial centered_poisson_moment_closed(unsigned s) {
  return IntPolynomial(assoc_stirling2_row(s));
}

IntPolynomial centered_poisson_moment_touchard(unsigned s) {
  IntPolynomial sum;
  for (unsigned k = 0; k <= s; ++k) {
    IntPolynomial term = touchard_poly(k).shifted_up(s - k);
    term *= binomial(s, k);
    if ((s - k) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

}  // namespace mixpois
