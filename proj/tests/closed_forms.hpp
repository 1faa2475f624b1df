#pragma once

// Closed forms for the normalized integrals and the obstruction, used as test oracles.

#include "fsrigid/ratfunc.hpp"
#include "fsrigid/schur_selberg.hpp"

#include <utility>
#include <vector>

namespace closed_forms {

using fsrigid::MPoly;
using fsrigid::RatFunc;
using fsrigid::TraceWord;

inline MPoly m() { return MPoly::m(); }
inline MPoly n() { return MPoly::n(); }
inline MPoly N(long k = 0) { return m() + n() + MPoly(k); }
inline MPoly p(long c) { return MPoly(c); }

inline RatFunc int_tr1() { return RatFunc(m() * m(), N()); }

inline RatFunc int_tr2() {
  return RatFunc(m() * m() * (m() * m() + p(2) * n() * m() - p(1)), N(-1) * N() * N(1));
}

inline RatFunc int_tr1_sq() {
  MPoly q = m().pow(3) + n() * m() * m() - m() + n();
  return RatFunc(m() * m() * q, N(-1) * N() * N(1));
}

inline MPoly den5() { return N(-2) * N(-1) * N() * N(1) * N(2); }

inline RatFunc int_tr3() {
  MPoly q = m().pow(4) + p(4) * m().pow(3) * n() + p(5) * m() * m() * n() * n() - p(5) * m() * m() -
            p(10) * m() * n() + n() * n() + p(4);
  return RatFunc(m() * m() * q, den5());
}

inline RatFunc int_tr2_tr1() {
  MPoly q = m().pow(5) + p(3) * m().pow(4) * n() + p(2) * m().pow(3) * n() * n() - p(5) * m().pow(3) -
            p(5) * m() * m() * n() + p(4) * m() * n() * n() + p(4) * m() - p(4) * n();
  return RatFunc(m() * m() * q, den5());
}

inline RatFunc int_tr1_cube() {
  MPoly q = m().pow(6) + p(2) * m().pow(5) * n() + m().pow(4) * n() * n() - p(5) * m().pow(4) +
            p(3) * m() * m() * n() * n() + p(4) * m() * m() - p(8) * m() * n() + p(2) * n() * n();
  return RatFunc(m() * m() * q, den5());
}

/// The six nontrivial words with their closed forms.
inline std::vector<std::pair<TraceWord, RatFunc>> six_integrals() {
  return {{TraceWord{1, 0, 0}, int_tr1()},     {TraceWord{0, 1, 0}, int_tr2()},
          {TraceWord{2, 0, 0}, int_tr1_sq()},  {TraceWord{0, 0, 1}, int_tr3()},
          {TraceWord{1, 1, 0}, int_tr2_tr1()}, {TraceWord{3, 0, 0}, int_tr1_cube()}};
}

inline RatFunc int_f_cubed() {
  return RatFunc(p(-2) * m() * m() * n() * n() * (n() - m()) * (n() - m()),
                 N(-2) * N(-1) * N(1) * N(2));
}

/// Bracket multiples of int f^3.
inline RatFunc cubic_term() {
  MPoly base = (m() * m() - p(1)) * (n() * n() - p(1));
  MPoly q = m().pow(3) * n().pow(3) - p(4) * m().pow(3) * n() - p(4) * m() * n().pow(3) +
            p(2) * m() * m() * n() * n() + m() * m() + n() * n() + p(7) * m() * n() - p(4);
  return RatFunc(-(base * N().pow(3) * q), n() - m()) * int_f_cubed();
}

inline RatFunc grad_term() {
  MPoly base = (m() * m() - p(1)) * (n() * n() - p(1));
  MPoly q = m().pow(4) * n() * n() + m() * m() * n().pow(4) - p(2) * m().pow(4) - p(2) * n().pow(4) -
            p(4) * m() * m() * n() * n() + p(5) * m() * m() + p(5) * n() * n() - p(4);
  return RatFunc(p(2) * m() * n() * base * N().pow(2) * q, n() - m()) * int_f_cubed();
}

inline RatFunc mixed_term() {
  MPoly base = (m() * m() - p(1)) * (n() * n() - p(1));
  MPoly q = p(2) * m().pow(4) * n().pow(4) - p(4) * m().pow(4) * n() * n() - p(4) * m() * m() * n().pow(4) +
            p(8) * m() * m() * n() * n() + m().pow(4) + n().pow(4) - p(2) * m() * m() - p(2) * n() * n();
  return RatFunc(-(base * N().pow(2) * q), n() - m()) * int_f_cubed();
}

inline RatFunc obstruction_total() {
  MPoly a = m() * m() - p(1);
  MPoly b = n() * n() - p(1);
  return RatFunc(p(4) * a * a * b * b * N().pow(4) * (m() * n() - p(1)), n() - m()) * int_f_cubed();
}

}  // namespace closed_forms
