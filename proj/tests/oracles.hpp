#pragma once

// Independent reference computations for the example system. The maps are
// hand-coded here instead of going through AffineMap, so these oracles share
// no arithmetic code with the library beyond the standard library.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using P = std::pair<double, double>;

inline const double kSqrt3 = std::sqrt(3.0);

inline P f(char letter, P p) {
  const auto [x, y] = p;
  switch (letter) {
    case '1': return {x / 2, y / 2};
    case '2': return {(x + 1) / 2, y / 2};
    case '3': return {(2 * x + 1) / 4, (2 * y + kSqrt3) / 4};
    case '4': return {x, y / 5};
  }
  throw std::invalid_argument("unknown letter");
}

/// f_w(p) with the rightmost letter applied first; w is a string of labels.
inline P apply(const std::string& w, P p) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = f(*it, p);
  return p;
}

/// a_ω for ω = 444…: the y coordinate is driven to 0.
inline P a_omega(P p) { return {p.first, 0.0}; }

/// Fixed point of f_c for a word c containing an I-letter (a contraction):
/// iterate until the sequence stops moving.
inline P fixed_point(const std::string& c) {
  P p{0, 0};
  for (int k = 0; k < 400; ++k) p = oracle::apply(c, p);
  return p;
}

/// a_α for α = prefix·cycle^∞ with an I-letter in the cycle.
inline P periodic_limit(const std::string& prefix, const std::string& cycle) {
  return oracle::apply(prefix, fixed_point(cycle));
}

inline double dist(P a, P b) { return std::hypot(a.first - b.first, a.second - b.second); }

/// Hausdorff distance by exhaustive search.
inline double hausdorff(const std::vector<P>& a, const std::vector<P>& b) {
  auto directed = [](const std::vector<P>& u, const std::vector<P>& v) {
    double worst = 0;
    for (const P& p : u) {
      double best = std::numeric_limits<double>::infinity();
      for (const P& q : v) best = std::min(best, dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// ∪_{|w| = n} f_w(B) over the letters 1..4.
inline std::vector<P> all_words_image(const std::vector<P>& b, int n) {
  std::vector<P> out;
  std::function<void(std::string)> rec = [&](std::string w) {
    if (static_cast<int>(w.size()) == n) {
      for (const P& p : b) out.push_back(oracle::apply(w, p));
      return;
    }
    for (char c : std::string("1234")) rec(w + c);
  };
  rec("");
  return out;
}

}  // namespace oracle
