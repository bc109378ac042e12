#pragma once

// Signed-permutation elements of the classical reflection groups in one-line
// notation, and the exact statistic counters (inversions, descents,
// alternating descents, 3-descents) used by both the enumeration oracles and
// the samplers.

#include <cstddef>
#include <cstdlib>
#include <vector>

#include "polyzero/bigint.hpp"

namespace polyzero {

enum class CoxeterType { A, B, D };

// One-line notation [pi(1),...,pi(N)]; entries signed, absolute values a
// permutation of {1..N}. Type A elements have all entries positive; type D
// elements an even number of negative entries.
using Element = std::vector<int>;

inline bool element_valid(const Element& e, CoxeterType type) {
  std::vector<char> seen(e.size() + 1, 0);
  int negs = 0;
  for (int x : e) {
    int a = std::abs(x);
    if (a < 1 || a > static_cast<int>(e.size()) || seen[a]) return false;
    seen[a] = 1;
    if (x < 0) ++negs;
  }
  if (type == CoxeterType::A && negs != 0) return false;
  if (type == CoxeterType::D && negs % 2 != 0) return false;
  return true;
}

// #{i<j : pi(i) > pi(j)} by merge counting.
inline long inv_plus(const Element& e) {
  std::vector<int> a(e), buf(e.size());
  long count = 0;
  for (std::size_t width = 1; width < a.size(); width *= 2) {
    for (std::size_t lo = 0; lo + width < a.size(); lo += 2 * width) {
      std::size_t mid = lo + width, hi = std::min(lo + 2 * width, a.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi)
        if (a[i] <= a[j]) buf[k++] = a[i++];
        else {
          count += static_cast<long>(mid - i);
          buf[k++] = a[j++];
        }
      while (i < mid) buf[k++] = a[i++];
      while (j < hi) buf[k++] = a[j++];
      for (std::size_t t = lo; t < hi; ++t) a[t] = buf[t];
    }
  }
  return count;
}

// #{i<j : -pi(i) > pi(j)}.
inline long inv_minus(const Element& e) {
  long count = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (-e[i] > e[j]) ++count;
  return count;
}

// #{i : pi(i) < 0}.
inline long inv_circ(const Element& e) {
  long count = 0;
  for (int x : e)
    if (x < 0) ++count;
  return count;
}

inline long inversions(const Element& e, CoxeterType type) {
  switch (type) {
    case CoxeterType::A: return inv_plus(e);
    case CoxeterType::B: return inv_plus(e) + inv_minus(e) + inv_circ(e);
    case CoxeterType::D: return inv_plus(e) + inv_minus(e);
  }
  return 0;
}

// Descents at positions 0 <= i < N with pi(0) = 0 for types A and B and
// pi(0) = -pi(2) for type D.
inline long descents(const Element& e, CoxeterType type) {
  long count = 0;
  int prev = (type == CoxeterType::D) ? -e.at(1) : 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (prev > e[i]) ++count;
    prev = e[i];
  }
  return count;
}

// Positions i with pi(i) > pi(i+1) for odd i, pi(i) < pi(i+1) for even i.
inline long alternating_descents(const Element& e) {
  long count = 0;
  for (std::size_t i = 1; i < e.size(); ++i) {
    bool desc = e[i - 1] > e[i];
    if ((i % 2 == 1) ? desc : !desc) ++count;
  }
  return count;
}

// Consecutive triples forming an odd pattern (132, 213 or 321).
inline long three_descents(const Element& e) {
  long count = 0;
  for (std::size_t i = 0; i + 2 < e.size(); ++i) {
    int x = e[i], y = e[i + 1], z = e[i + 2];
    int inv = (x > y) + (x > z) + (y > z);
    if (inv % 2 == 1) ++count;
  }
  return count;
}

enum class Statistic { inversions, descents, alternating_descents };

inline long count_statistic(const Element& e, Statistic stat, CoxeterType type) {
  switch (stat) {
    case Statistic::inversions: return inversions(e, type);
    case Statistic::descents: return descents(e, type);
    case Statistic::alternating_descents:
      if (type != CoxeterType::A)
        throw error(error::code::incompatible_statistic,
                    "alternating descents are a type A statistic");
      return alternating_descents(e);
  }
  return 0;
}

}  // namespace polyzero
