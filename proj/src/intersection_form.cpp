#include "lk/intersection_form.hpp"

#include "lk/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>

namespace lk {

using boost::multiprecision::cpp_int;
using BigRational = boost::rational<cpp_int>;

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

IntersectionForm build_intersection_form(const Forest& forest) {
  forest.validate_structure();
  IntersectionForm form;
  form.framed = forest.framed_vertices();
  form.order = static_cast<int>(form.framed.size());
  const auto n = form.framed.size();
  std::vector<int> row_of(forest.size(), -1);
  for (std::size_t r = 0; r < n; ++r) row_of[form.framed[r]] = static_cast<int>(r);

  form.entries.assign(n * n, 0);
  form.v0_row.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) form.entries[r * n + r] = *forest.vertex(form.framed[r]).framing;
  const auto v0 = forest.v0();
  for (const auto& [a, b] : forest.edges()) {
    if (a == v0 || b == v0) {
      form.v0_row[static_cast<std::size_t>(row_of[a == v0 ? b : a])] = 1;
      continue;
    }
    const auto ra = static_cast<std::size_t>(row_of[a]), rb = static_cast<std::size_t>(row_of[b]);
    form.entries[ra * n + rb] = form.entries[rb * n + ra] = 1;
  }
  return form;
}

bool is_negative_definite(const IntersectionForm& form) {
  const auto n = static_cast<std::size_t>(form.order);
  std::vector<cpp_int> a(form.entries.begin(), form.entries.end());
  cpp_int previous = 1;
  // After step k the pivot a[k][k] is the leading (k+1)x(k+1) minor.
  for (std::size_t k = 0; k < n; ++k) {
    const cpp_int& minor = a[k * n + k];
    const bool want_negative = (k % 2 == 0);
    if (minor == 0 || (minor < 0) != want_negative) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * minor - a[i * n + k] * a[k * n + j]) / previous;
    }
    previous = minor;
  }
  return true;
}

bool is_negative_definite(const Forest& forest) { return is_negative_definite(build_intersection_form(forest)); }

void require_negative_definite(const Forest& forest) {
  if (!is_negative_definite(forest)) throw DefinitenessError("intersection form is not negative definite");
}

std::int64_t pairing(const IntersectionForm& form, std::span<const std::int64_t> x,
                     std::span<const std::int64_t> y) {
  const auto n = static_cast<std::size_t>(form.order);
  if (x.size() != n || y.size() != n) throw Error("pairing: vector length does not match form order");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += x[i] * form.entries[i * n + j] * y[j];
  return total;
}

namespace {

std::int64_t narrow(const cpp_int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error("intersection form too large for 64-bit lattice arithmetic");
  return static_cast<std::int64_t>(v);
}

}  // namespace

FormInverse invert(const IntersectionForm& form) {
  const auto n = static_cast<std::size_t>(form.order);
  std::vector<BigRational> a(n * 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = BigRational(form.entries[i * n + j]);
    a[i * 2 * n + n + i] = BigRational(1);
  }
  BigRational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p * 2 * n + c].numerator() == 0) ++p;
    if (p == n) throw Error("intersection form is singular");
    if (p != c) {
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a[p * 2 * n + j], a[c * 2 * n + j]);
      det = -det;
    }
    const BigRational pivot = a[c * 2 * n + c];
    det *= pivot;
    for (std::size_t j = 0; j < 2 * n; ++j) a[c * 2 * n + j] /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r * 2 * n + c].numerator() == 0) continue;
      const BigRational factor = a[r * 2 * n + c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r * 2 * n + j] -= factor * a[c * 2 * n + j];
    }
  }
  FormInverse out;
  out.det = narrow(det.numerator());  // det of an integer matrix is an integer
  out.adjugate.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const BigRational entry = a[i * 2 * n + n + j] * det;
      if (entry.denominator() != 1) throw Error("adjugate is not integral");
      out.adjugate[i * n + j] = narrow(entry.numerator());
    }
  }
  return out;
}

SigmaClass sigma_class(const IntersectionForm& form) {
  const auto n = static_cast<std::size_t>(form.order);
  SigmaClass sigma;
  sigma.coeffs.assign(n, Rational(0));
  sigma.pairing_with_v0 = 0;
  if (n == 0) return sigma;
  FormInverse inverse;
  try {
    inverse = invert(form);
  } catch (const Error& e) {
    throw Error(std::string("internal inconsistency while solving for Sigma: ") + e.what());
  }
  // a = -M^{-1} v0_row
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t num = 0;
    for (std::size_t j = 0; j < n; ++j) num -= inverse.adjugate[i * n + j] * form.v0_row[j];
    sigma.coeffs[i] = Rational(num, inverse.det);
  }
  for (std::size_t i = 0; i < n; ++i) sigma.pairing_with_v0 += sigma.coeffs[i] * form.v0_row[i];
  return sigma;
}

SigmaClass sigma_class(const Forest& forest) {
  auto form = build_intersection_form(forest);
  if (!is_negative_definite(form)) throw DefinitenessError("Sigma requires a negative definite form");
  return sigma_class(form);
}

}  // namespace lk
