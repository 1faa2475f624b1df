#include "fsrigid/trace_expr.hpp"

#include <cmath>
#include <sstream>

namespace fsrigid {

TraceExpr::TraceExpr(MPoly constant) { add(TraceWord{}, constant); }

void TraceExpr::add(const TraceWord& w, const MPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TraceExpr TraceExpr::tr_u(int k) {
  if (k < 1 || k > 3) throw UnsupportedDegree("tr(U^-k) only for k in {1,2,3}");
  TraceExpr e;
  e.add(TraceWord{k == 1 ? 1 : 0, k == 2 ? 1 : 0, k == 3 ? 1 : 0}, MPoly(1));
  return e;
}

TraceExpr TraceExpr::tr_q(int k) { return TraceExpr(MPoly::n() - MPoly::m()) + tr_u(k); }

TraceExpr TraceExpr::f() {
  const MPoly m = MPoly::m();
  return TraceExpr(m * m) - (MPoly::n() + m) * tr_u(1);
}

int TraceExpr::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

TraceExpr& TraceExpr::operator+=(const TraceExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

TraceExpr& TraceExpr::operator-=(const TraceExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

TraceExpr& TraceExpr::operator*=(const MPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

TraceExpr operator*(const TraceExpr& a, const TraceExpr& b) {
  TraceExpr r;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      TraceWord w{wa.a + wb.a, wa.b + wb.b, wa.c + wb.c};
      if (w.degree() > kMaxTraceDegree) {
        throw UnsupportedDegree("trace expression product exceeds degree 3");
      }
      r.add(w, ca * cb);
    }
  }
  return r;
}

double TraceExpr::evaluate(int m0, int n0, const TraceValues& t) const {
  double acc = 0.0;
  for (const auto& [w, c] : terms_) {
    acc += c.eval(static_cast<double>(m0), static_cast<double>(n0)) * std::pow(t[0], w.a) *
           std::pow(t[1], w.b) * std::pow(t[2], w.c);
  }
  return acc;
}

RatFunc TraceExpr::integrate() const {
  const MPoly target = integral_denominator(kMaxTraceDegree);
  MPoly num;
  for (const auto& [w, c] : terms_) {
    RatFunc integral = trace_word_integral(w);
    num += c * integral.num() * MPoly::exact_div(target, integral.den());
  }
  return RatFunc(num, target);
}

std::string TraceExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.to_string() << ")*" << w.to_string();
  }
  return os.str();
}

}  // namespace fsrigid
