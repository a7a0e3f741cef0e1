#pragma once

#include <vector>

#include "mixpois/big_count.hpp"
#include "mixpois/int_polynomial.hpp"

namespace mixpois {

/// Binomial coefficient C(n, k), exact.
BigCount binomial(unsigned n, unsigned k);

/// Stirling number of the second kind: partitions of an s-set into j
/// nonempty blocks. stirling2(0, 0) = 1.
BigCount stirling2(unsigned s, unsigned j);

/// Row {s, 0}, {s, 1}, ..., {s, s} of the second-kind Stirling triangle.
std::vector<BigCount> stirling2_row(unsigned s);

/// Associated Stirling number of the second kind: partitions of an s-set
/// into exactly k blocks, each of size at least two.
BigCount assoc_stirling2(unsigned s, unsigned k);

std::vector<BigCount> assoc_stirling2_row(unsigned s);

/// Odd double factorial (2m-1)!! = 1*3*5*...*(2m-1); 1 at m = 0.
BigCount double_factorial_odd(unsigned m);

/// Falling factorial x(x-1)...(x-s+1); 1 when s = 0.
double falling_factorial(double x, unsigned s);

/// Exhaustive set-partition count: partitions of an s-set into exactly k
/// blocks, each of size >= min_size. Independent of the recurrences above;
/// intended as a validation oracle. Guarded at s <= 14 (the enumeration
/// visits every set partition).
BigCount enumerate_partitions_min_block(unsigned s, unsigned k, unsigned min_size);

/// Touchard polynomial T_s(x) = sum_l {s, l} x^l. These are the raw moments
/// of a Poisson variable with mean x, as a polynomial in x.
IntPolynomial touchard_poly(unsigned s);

/// Centered Poisson moment E((P - x)^s) for P ~ Poisson(x), as an exact
/// polynomial in x. Built from the order-lowering recurrence
/// m_s(x) = x * sum_{k<=s-2} C(s-1, k) m_k(x), with m_0 = 1, m_1 = 0.
IntPolynomial centered_poisson_moment_recurrence(unsigned s);

/// Same polynomial from the closed form: coefficient of x^k is the
/// associated Stirling number of pair partitions assoc_stirling2(s, k).
IntPolynomial centered_poisson_moment_closed(unsigned s);

/// Same polynomial from the alternating Touchard sum
/// sum_k C(s, k) (-1)^{s-k} T_k(x) x^{s-k}.
IntPolynomial centered_poisson_moment_touchard(unsigned s);

}  // namespace mixpois
