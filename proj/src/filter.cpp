#include "pfc/filter.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pfc {

PolynomialFilter identity_filter() { return PolynomialFilter{{0.0, 1.0}}; }

PolynomialFilter unit_filter() { return PolynomialFilter{{1.0}}; }

namespace {

// multiplies an ascending coefficient vector by (x - root)
std::vector<double> poly_mul_root(const std::vector<double>& p, double root) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t m = 0; m < p.size(); ++m) {
    out[m + 1] += p[m];
    out[m] -= root * p[m];
  }
  return out;
}

}  // namespace

PolynomialFilter newton_filter(int k, double a) {
  if (k < 1) throw std::invalid_argument("newton_filter: degree must be at least 1");
  if (a == 1.0) throw std::invalid_argument("newton_filter: a = 1 collides with the node at 1");
  if (a > 1.0) throw std::invalid_argument("newton_filter: left endpoint must satisfy a < 1");

  // Hermite data on the confluent node list (a repeated k times, then 1):
  // value and derivatives 1..k-1 vanish at a, value 1 at the node 1. Repeated
  // nodes in the table take the prescribed derivative over the factorial,
  // which is zero throughout the a-block here.
  std::vector<double> nodes(k + 1, a);
  nodes[k] = 1.0;
  std::vector<std::vector<double>> table(k + 1);
  for (int i = 0; i <= k; ++i) {
    table[i].resize(k + 1 - i, 0.0);
    table[i][0] = (i == k) ? 1.0 : 0.0;
  }
  for (int j = 1; j <= k; ++j) {
    for (int i = 0; i + j <= k; ++i) {
      if (nodes[i + j] == nodes[i]) {
        table[i][j] = 0.0;  // prescribed j-th derivative at a over j!
      } else {
        table[i][j] = (table[i + 1][j - 1] - table[i][j - 1]) / (nodes[i + j] - nodes[i]);
      }
    }
  }

  // expand the Newton form to monomial coefficients
  std::vector<double> coeffs{table[0][k]};
  for (int i = k - 1; i >= 0; --i) {
    coeffs = poly_mul_root(coeffs, nodes[i]);
    coeffs[0] += table[0][i];
  }
  return PolynomialFilter{std::move(coeffs)};
}

double eval(const PolynomialFilter& f, double lambda) {
  if (f.coeffs.empty()) throw std::invalid_argument("eval: empty filter");
  double acc = f.coeffs.back();
  for (int i = static_cast<int>(f.coeffs.size()) - 2; i >= 0; --i)
    acc = acc * lambda + f.coeffs[i];
  return acc;
}

std::vector<double> apply_to_spectrum(const PolynomialFilter& f,
                                      const std::vector<double>& eigenvalues) {
  std::vector<double> out(eigenvalues.size());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) out[i] = eval(f, eigenvalues[i]);
  return out;
}

double filtered_factor(const PolynomialFilter& f, const std::vector<double>& spectrum) {
  if (spectrum.empty()) throw std::invalid_argument("filtered_factor: empty spectrum");
  if (std::fabs(spectrum.front() - 1.0) > defaults::stochastic_tol)
    throw std::invalid_argument("filtered_factor: leading eigenvalue must be 1");
  double m = 0.0;
  for (std::size_t i = 1; i < spectrum.size(); ++i)
    m = std::max(m, std::fabs(eval(f, spectrum[i])));
  return m;
}

std::vector<double> matrix_apply(const PolynomialFilter& f, const WeightMatrix& w,
                                 const std::vector<double>& x) {
  if (w.n() != static_cast<int>(x.size()))
    throw std::invalid_argument("matrix_apply: dimension mismatch");
  if (f.coeffs.empty()) throw std::invalid_argument("matrix_apply: empty filter");
  std::vector<double> result(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) result[i] = f.coeffs[0] * x[i];
  std::vector<double> power = x;
  for (int d = 1; d <= f.degree(); ++d) {
    power = w.apply(power);
    const double alpha = f.coeffs[d];
    for (std::size_t i = 0; i < x.size(); ++i) result[i] += alpha * power[i];
  }
  return result;
}

bool is_consensus_preserving(const PolynomialFilter& f, double tol) {
  // compensated sum: high-degree minimax filters on squeezed spectra carry
  // monomial coefficients of magnitude 1e6 and beyond, where a plain sum's
  // own rounding would exceed the tolerance
  double sum = 0.0, comp = 0.0, scale = 0.0;
  for (double c : f.coeffs) {
    const double y = c - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    scale += std::fabs(c);
  }
  // allow the noise floor of representing the sum at this coefficient scale
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  return std::fabs(sum - 1.0) <= tol + floor;
}

std::string filter_to_csv(const PolynomialFilter& f) {
  std::string out = std::to_string(f.degree());
  char buf[40];
  for (double c : f.coeffs) {
    std::snprintf(buf, sizeof buf, ",%.17g", c);
    out += buf;
  }
  return out;
}

PolynomialFilter filter_from_csv(const std::string& line) {
  std::stringstream ss(line);
  std::string field;
  std::vector<double> values;
  while (std::getline(ss, field, ',')) {
    if (field.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    values.push_back(std::stod(field));
  }
  if (values.size() < 2) throw std::invalid_argument("filter_from_csv: malformed line");
  const int k = static_cast<int>(values[0]);
  if (k != static_cast<int>(values.size()) - 2)
    throw std::invalid_argument("filter_from_csv: degree field disagrees with coefficient count");
  return PolynomialFilter{std::vector<double>(values.begin() + 1, values.end())};
}

}  // namespace pfc
