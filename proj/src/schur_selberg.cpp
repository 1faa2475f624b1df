#include "fsrigid/schur_selberg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fsrigid {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("partition part is negative");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

int Partition::size() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  if (parts_.empty()) os << '0';
  os << ')';
  return os.str();
}

std::string TraceWord::to_string() const {
  if (degree() == 0) return "1";
  std::ostringstream os;
  bool first = true;
  auto put = [&](int k, int e) {
    if (e == 0) return;
    if (!first) os << '*';
    first = false;
    os << "tr(U^-" << k << ')';
    if (e > 1) os << '^' << e;
  };
  put(1, a);
  put(2, b);
  put(3, c);
  return os.str();
}

std::vector<TraceWord> all_trace_words() {
  return {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {3, 0, 0}, {1, 1, 0}, {0, 0, 1}};
}

MPoly schur_at_ones(const Partition& lambda) {
  const auto& rows = lambda.parts();
  MPoly result(1);
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < rows[i]; ++j) {
      int arm = rows[i] - j - 1;
      int leg = 0;
      for (int r = i + 1; r < lambda.length() && rows[r] > j; ++r) ++leg;
      MPoly factor = MPoly::m() + MPoly(j - i);
      factor *= make_rational(1, arm + leg + 1);
      result *= factor;
    }
  }
  return result;
}

SchurCombo power_to_schur(const TraceWord& word) {
  if (word.a < 0 || word.b < 0 || word.c < 0) {
    throw std::invalid_argument("negative trace-word exponent");
  }
  if (word.degree() > kMaxTraceDegree) {
    throw UnsupportedDegree("power_to_schur supports degree <= 3, got " +
                            std::to_string(word.degree()));
  }
  using P = Partition;
  const BigRational one = 1;
  if (word == TraceWord{0, 0, 0}) return {{one, P{}}};
  if (word == TraceWord{1, 0, 0}) return {{one, P{1}}};
  if (word == TraceWord{2, 0, 0}) return {{one, P{2}}, {one, P{1, 1}}};
  if (word == TraceWord{0, 1, 0}) return {{one, P{2}}, {-one, P{1, 1}}};
  if (word == TraceWord{3, 0, 0}) return {{one, P{3}}, {BigRational(2), P{2, 1}}, {one, P{1, 1, 1}}};
  if (word == TraceWord{1, 1, 0}) return {{one, P{3}}, {-one, P{1, 1, 1}}};
  // remaining degree-3 word: p_3
  return {{one, P{3}}, {-one, P{2, 1}}, {one, P{1, 1, 1}}};
}

RatFunc kaneko_normalized(const Partition& lambda) {
  // (m+l-i)!/(m-i)! and (n+m-i)!/(n+m+l-i)! are products of l linear factors;
  // rows with l = 0 contribute 1.
  MPoly num = schur_at_ones(lambda);
  MPoly den(1);
  const auto& rows = lambda.parts();
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int k = 1; k <= rows[i - 1]; ++k) {
      num *= linear(1, 0, k - i);
      den *= linear(1, 1, k - i);
    }
  }
  return RatFunc(num, den);
}

MPoly integral_denominator(int degree) {
  MPoly d(1);
  for (int k = -(degree - 1); k <= degree - 1; ++k) d *= linear(1, 1, k);
  return d;
}

RatFunc trace_word_integral(const TraceWord& word) {
  const MPoly target = integral_denominator(word.degree());
  MPoly num;
  for (const auto& [coeff, lambda] : power_to_schur(word)) {
    RatFunc term = kaneko_normalized(lambda);
    MPoly scaled = term.num() * MPoly::exact_div(target, term.den());
    scaled *= coeff;
    num += scaled;
  }
  return RatFunc(num, target);
}

namespace {

mpz_class factorial(int k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

BigRational selberg_normalizer(int m0, int n0) {
  if (m0 < 1 || n0 < m0) throw std::domain_error("selberg_normalizer requires n >= m >= 1");
  BigRational r = 1;
  for (int j = 1; j <= m0; ++j) {
    BigRational f(factorial(j) * factorial(n0 - j) * factorial(m0 - j), factorial(n0 + m0 - j));
    f.canonicalize();
    r *= f;
  }
  return r;
}

BigRational trace_word_value(const TraceWord& word, int m0, int n0) {
  if (m0 < 1 || n0 < m0) throw std::domain_error("integral formula requires n >= m >= 1");
  return trace_word_integral(word).eval(m0, n0);
}

GaussLegendreRule gauss_legendre_unit(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[order - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[order - 1 - i] = 0.5 * w;
  }
  return rule;
}

double power_sum_value(const TraceWord& word, std::span<const double> z) {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  for (double x : z) {
    p1 += x;
    p2 += x * x;
    p3 += x * x * x;
  }
  return std::pow(p1, word.a) * std::pow(p2, word.b) * std::pow(p3, word.c);
}

double selberg_quadrature(const TraceWord& word, int m0, int n0, int order) {
  if (m0 < 1 || m0 > 4) throw std::invalid_argument("selberg_quadrature supports 1 <= m <= 4");
  if (n0 < m0) throw std::domain_error("selberg_quadrature requires n >= m");
  const GaussLegendreRule rule = gauss_legendre_unit(order);
  std::vector<int> idx(m0, 0);
  std::vector<double> z(m0);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int i = 0; i < m0; ++i) {
      z[i] = rule.nodes[idx[i]];
      w *= rule.weights[idx[i]] * std::pow(1.0 - z[i], n0 - m0);
    }
    double vdm = 1.0;
    for (int i = 0; i < m0; ++i) {
      for (int j = i + 1; j < m0; ++j) vdm *= (z[i] - z[j]) * (z[i] - z[j]);
    }
    total += w * vdm * power_sum_value(word, z);
    int k = 0;
    while (k < m0 && ++idx[k] == order) idx[k++] = 0;
    if (k == m0) break;
  }
  return total;
}

}  // namespace fsrigid
