#include "gact/rational.hpp"

#include "gact/errors.hpp"

#include <utility>

namespace gact {

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty rational literal");
  for (char c : text) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
      throw InvalidArgument("bad rational literal '" + text + "'");
  }
  Rational q;
  if (q.set_str(text, 10) != 0) throw InvalidArgument("bad rational literal '" + text + "'");
  if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string format_point(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(p[i]);
  }
  return out + ")";
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

bool solve_exact(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& rhs,
                 std::vector<Rational>& x) {
  const std::size_t m = rows.size();
  if (m == 0) return false;
  const std::size_t k = rows[0].size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = rows[r][c];
    a[r][k] = rhs[r];
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = row;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) return false;
    std::swap(a[pivot], a[row]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[row][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[row][c];
    }
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (a[r][k] != 0) return false;
  x.assign(k, 0);
  for (std::size_t c = 0; c < k; ++c) x[c] = a[c][k] / a[c][c];
  return true;
}

}  // namespace gact
