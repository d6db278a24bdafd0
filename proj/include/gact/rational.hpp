#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gact {

using Rational = mpq_class;

/// Barycentric point over the corners of the standard simplex.
using Point = std::vector<Rational>;

/// "p/q" with q >= 1, always including the denominator.
std::string format_rational(const Rational& q);
Rational parse_rational(const std::string& text);

std::string format_point(const Point& p);

/// Exact determinant by Gaussian elimination on a copy.
Rational determinant(std::vector<std::vector<Rational>> m);

/// Solve rows*x = rhs exactly when the system is consistent; rows is m x k with m >= k.
/// Returns false when inconsistent or when the columns are dependent.
bool solve_exact(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& rhs,
                 std::vector<Rational>& x);

}  // namespace gact
