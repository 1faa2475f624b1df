#include "fsrigid/ratfunc.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace fsrigid {

BigRational make_rational(long num, long den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const BigRational& q) { return q.get_str(); }

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(long c) {
  if (c != 0) terms_.emplace(Monomial{0, 0}, BigRational(c));
}

MPoly::MPoly(const BigRational& c) {
  if (c != 0) terms_.emplace(Monomial{0, 0}, c);
}

MPoly MPoly::m() { return monomial(1, 1, 0); }
MPoly MPoly::n() { return monomial(1, 0, 1); }

MPoly MPoly::monomial(BigRational coeff, int deg_m, int deg_n) {
  if (deg_m < 0 || deg_n < 0) throw std::invalid_argument("negative exponent");
  MPoly p;
  p.add_term(Monomial{deg_m, deg_n}, coeff);
  return p;
}

BigRational MPoly::coeff(int deg_m, int deg_n) const {
  auto it = terms_.find(Monomial{deg_m, deg_n});
  return it == terms_.end() ? BigRational(0) : it->second;
}

int MPoly::total_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.total();
}

const std::pair<const Monomial, BigRational>& MPoly::leading() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return *terms_.begin();
}

void MPoly::add_term(const Monomial& mono, const BigRational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      r.add_term(Monomial{ma.deg_m + mb.deg_m, ma.deg_n + mb.deg_n}, ca * cb);
    }
  }
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const BigRational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coef] : terms_) coef *= c;
  return *this;
}

MPoly operator-(MPoly a) {
  for (auto& [mono, c] : a.terms_) c = -c;
  return a;
}

bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

MPoly MPoly::pow(unsigned k) const {
  MPoly result(1);
  MPoly base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

MPoly MPoly::exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw DivisionByZeroFunction("polynomial division by zero");
  const auto& [lead_mono, lead_coeff] = b.leading();
  MPoly quotient;
  MPoly rem = a;
  while (!rem.is_zero()) {
    const auto [rm, rc] = rem.leading();
    if (rm.deg_m < lead_mono.deg_m || rm.deg_n < lead_mono.deg_n) {
      throw std::domain_error("exact_div: divisor does not divide dividend");
    }
    MPoly t = monomial(rc / lead_coeff, rm.deg_m - lead_mono.deg_m,
                       rm.deg_n - lead_mono.deg_n);
    quotient += t;
    rem -= t * b;
  }
  return quotient;
}

namespace {

template <class T>
T ipow(const T& x, int k) {
  T r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

BigRational MPoly::eval(const BigRational& m0, const BigRational& n0) const {
  BigRational acc = 0;
  for (const auto& [mono, c] : terms_) {
    acc += c * ipow(m0, mono.deg_m) * ipow(n0, mono.deg_n);
  }
  return acc;
}

double MPoly::eval(double m0, double n0) const {
  double acc = 0.0;
  for (const auto& [mono, c] : terms_) {
    acc += c.get_d() * ipow(m0, mono.deg_m) * ipow(n0, mono.deg_n);
  }
  return acc;
}

MPoly MPoly::swapped() const {
  MPoly r;
  for (const auto& [mono, c] : terms_) r.add_term(Monomial{mono.deg_n, mono.deg_m}, c);
  return r;
}

MPoly MPoly::at_m(const BigRational& m0) const {
  MPoly r;
  for (const auto& [mono, c] : terms_) {
    BigRational v = c;
    for (int k = 0; k < mono.deg_m; ++k) v *= m0;
    r.add_term(Monomial{0, mono.deg_n}, v);
  }
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (mono.deg_m > 0) os << "*m^" << mono.deg_m;
    if (mono.deg_n > 0) os << "*n^" << mono.deg_n;
  }
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
}

BigRational parse_rational(std::string_view tok) {
  std::string t(trim(tok));
  if (t.empty()) throw ParseError("empty coefficient");
  for (char ch : t) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/' || ch == '+')) {
      throw ParseError("bad coefficient: " + t);
    }
  }
  BigRational q;
  if (q.set_str(t, 10) != 0) throw ParseError("bad coefficient: " + t);
  if (q.get_den() == 0) throw ParseError("zero denominator: " + t);
  q.canonicalize();
  return q;
}

int parse_exponent(std::string_view factor, char var) {
  factor = trim(factor);
  if (factor.size() == 1 && factor[0] == var) return 1;
  if (factor.size() < 3 || factor[0] != var || factor[1] != '^') {
    throw ParseError("bad factor: " + std::string(factor));
  }
  int e = 0;
  for (char ch : factor.substr(2)) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError("bad exponent: " + std::string(factor));
    }
    e = e * 10 + (ch - '0');
  }
  return e;
}

}  // namespace

MPoly MPoly::parse(std::string_view text) {
  text = trim(text);
  if (text == "0") return MPoly();
  MPoly p;
  for (auto term : split(text, " + ")) {
    auto factors = split(trim(term), "*");
    BigRational c = parse_rational(factors[0]);
    int dm = 0;
    int dn = 0;
    for (size_t i = 1; i < factors.size(); ++i) {
      auto f = trim(factors[i]);
      if (!f.empty() && f[0] == 'm') {
        dm += parse_exponent(f, 'm');
      } else if (!f.empty() && f[0] == 'n') {
        dn += parse_exponent(f, 'n');
      } else {
        throw ParseError("unknown variable in: " + std::string(f));
      }
    }
    p.add_term(Monomial{dm, dn}, c);
  }
  return p;
}

MPoly poly_arith(PolyOp op, const MPoly& a, const MPoly& b) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  throw std::invalid_argument("unknown PolyOp");
}

MPoly linear(long cm, long cn, long c0) {
  return MPoly::monomial(cm, 1, 0) + MPoly::monomial(cn, 0, 1) + MPoly(c0);
}

// -------------------------------------------------------------- RatFunc

RatFunc::RatFunc(MPoly num) : num_(std::move(num)), den_(1) {}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZeroFunction("rational function with zero denominator");
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.num_.is_zero()) throw DivisionByZeroFunction("division by the zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  return *this;
}

BigRational RatFunc::eval(long m0, long n0) const {
  return eval(BigRational(m0), BigRational(n0));
}

BigRational RatFunc::eval(const BigRational& m0, const BigRational& n0) const {
  BigRational d = den_.eval(m0, n0);
  if (d == 0) {
    throw PoleError("denominator vanishes at (m, n) = (" + m0.get_str() + ", " +
                    n0.get_str() + ")");
  }
  BigRational v = num_.eval(m0, n0) / d;
  v.canonicalize();
  return v;
}

RatFunc RatFunc::normalized() const {
  mpz_class lcm_den = 1;
  for (const auto& [mono, c] : den_.terms()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  }
  mpz_class content = 0;
  for (const auto& [mono, c] : den_.terms()) {
    mpz_class scaled = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
  }
  BigRational scale(lcm_den, content);
  scale.canonicalize();
  if (den_.leading().second < 0) scale = -scale;
  MPoly num = num_;
  MPoly den = den_;
  num *= scale;
  den *= scale;
  return RatFunc(std::move(num), std::move(den));
}

RatFunc RatFunc::at_m(const BigRational& m0) const {
  MPoly d = den_.at_m(m0);
  if (d.is_zero()) throw PoleError("denominator vanishes identically at m = " + m0.get_str());
  return RatFunc(num_.at_m(m0), std::move(d));
}

std::string RatFunc::to_string() const {
  RatFunc c = normalized();
  return c.num_.to_string() + " / " + c.den_.to_string();
}

RatFunc RatFunc::parse(std::string_view text) {
  size_t pos = text.find(" / ");
  if (pos == std::string_view::npos) return RatFunc(MPoly::parse(text));
  return RatFunc(MPoly::parse(text.substr(0, pos)), MPoly::parse(text.substr(pos + 3)));
}

RatFunc rf_arith(RfOp op, const RatFunc& a, const RatFunc& b) {
  switch (op) {
    case RfOp::add: return a + b;
    case RfOp::sub: return a - b;
    case RfOp::mul: return a * b;
    case RfOp::div: return a / b;
  }
  throw std::invalid_argument("unknown RfOp");
}

bool rf_equal(const RatFunc& a, const RatFunc& b) {
  if (a.den() == b.den()) return a.num() == b.num();
  return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

BigRational rf_eval(const RatFunc& a, long m0, long n0) { return a.eval(m0, n0); }

}  // namespace fsrigid
