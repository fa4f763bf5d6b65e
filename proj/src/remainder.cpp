#include "voa/remainder.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "voa/errors.hpp"

namespace voa {

IndexList IndexList::normalize(std::vector<int> raw) {
  IndexList out;
  // Insertion sort, counting transpositions.
  for (std::size_t i = 1; i < raw.size(); ++i) {
    for (std::size_t j = i; j > 0 && raw[j - 1] > raw[j]; --j) {
      std::swap(raw[j - 1], raw[j]);
      out.sign = -out.sign;
    }
  }
  if (std::adjacent_find(raw.begin(), raw.end()) != raw.end()) out.sign = 0;
  out.entries = std::move(raw);
  return out;
}

namespace {

Rational alt(int e) { return Rational(e % 2 ? -1 : 1); }

Rational frac(const Rational& num, int den) { return num / Rational(den); }

void check_inputs(int n, const std::vector<int>& I, const std::vector<int>& J) {
  if (n < 1) throw IndexError("R_n needs n >= 1");
  const auto len = static_cast<std::size_t>(n + 1);
  if (I.size() != len || J.size() != len)
    throw LengthMismatch("R_" + std::to_string(n) + " needs index lists of length " + std::to_string(len));
  long m = 2L * n;
  for (std::size_t t = 0; t < len; ++t) {
    if (I[t] < 0 || J[t] < 0) throw IndexError("index lists must be non-negative");
    m += I[t] + J[t];
  }
  if (m % 2) throw ParityError("|I| + |J| + 2n must be even, got " + std::to_string(m));
}

using Key = std::tuple<int, std::vector<int>, std::vector<int>>;

struct Memo {
  std::mutex mu;
  std::map<Key, Rational> table;
};

Memo& memo() {
  static Memo m;
  return m;
}

Rational rn_sorted(int n, const std::vector<int>& I, const std::vector<int>& J, bool use_memo);

Rational rn_normalized(int n, const std::vector<int>& I, const std::vector<int>& J, bool use_memo) {
  const IndexList ni = IndexList::normalize(I);
  const IndexList nj = IndexList::normalize(J);
  if (ni.sign == 0 || nj.sign == 0) return Rational(0);
  const Rational v = rn_sorted(n, ni.entries, nj.entries, use_memo);
  return ni.sign * nj.sign > 0 ? v : -v;
}

Rational rn_recursion(int n, const std::vector<int>& I, const std::vector<int>& J, bool use_memo) {
  if (n == 1) return r1_closed_form(I, J);
  const int j0 = J[0];
  const std::vector<int> j_rest(J.begin() + 1, J.end());
  Rational total;
  for (int r = 0; r <= n; ++r) {
    const int ir = I[static_cast<std::size_t>(r)];
    std::vector<int> i_rest = I;
    i_rest.erase(i_rest.begin() + r);
    // The recursive values do not depend on the prefactor choice c.
    std::vector<std::pair<int, Rational>> terms;
    for (int kk = 0; kk <= n; ++kk) {
      if (kk == r) continue;
      const int ik = I[static_cast<std::size_t>(kk)];
      std::vector<int> K = i_rest;
      K[static_cast<std::size_t>(kk < r ? kk : kk - 1)] = ik + ir + j0 + 2;
      Rational v = rn_normalized(n - 1, K, j_rest, use_memo);
      if (!v.is_zero()) terms.emplace_back(ik, std::move(v));
    }
    for (int l = 1; l <= n; ++l) {
      const int jl = J[static_cast<std::size_t>(l)];
      std::vector<int> L = j_rest;
      L[static_cast<std::size_t>(l - 1)] = jl + ir + j0 + 2;
      Rational v = rn_normalized(n - 1, i_rest, L, use_memo);
      if (!v.is_zero()) terms.emplace_back(jl, std::move(v));
    }
    for (const int c : {ir, j0}) {
      Rational acc;
      for (const auto& [e, v] : terms) acc += frac(v, e + c + 2);
      total -= alt(r) * alt(c) * acc;
    }
  }
  return total;
}

Rational rn_sorted(int n, const std::vector<int>& I, const std::vector<int>& J, bool use_memo) {
  if (!use_memo) return rn_recursion(n, I, J, false);
  Key key{n, I, J};
  Memo& m = memo();
  {
    std::lock_guard lock(m.mu);
    auto it = m.table.find(key);
    if (it != m.table.end()) return it->second;
  }
  Rational value = rn_recursion(n, I, J, true);
  std::lock_guard lock(m.mu);
  return m.table.try_emplace(std::move(key), std::move(value)).first->second;
}

}  // namespace

Rational r1_closed_form(const std::vector<int>& I, const std::vector<int>& J) {
  if (I.size() != 2 || J.size() != 2) throw LengthMismatch("R_1 needs index lists of length 2");
  const int i0 = I[0], i1 = I[1], j0 = J[0], j1 = J[1];
  if ((i0 + i1 + j0 + j1) % 2) throw ParityError("|I| + |J| + 2 must be even");
  const Rational a = alt(i0);
  return alt(j0) * (frac(a, 2 + i0 + i1) + frac(alt(j1), 2 + i1 + j1)) -
         alt(j1) * (frac(a, 2 + i0 + i1) + frac(alt(j0), 2 + i1 + j0)) +
         alt(i1) * (frac(a, 2 + i0 + j0) + frac(alt(j1), 2 + j0 + j1)) -
         alt(i1) * (frac(a, 2 + i0 + j1) + frac(alt(j0), 2 + j0 + j1));
}

Rational rn(int n, const std::vector<int>& I, const std::vector<int>& J) {
  check_inputs(n, I, J);
  return rn_normalized(n, I, J, true);
}

Rational rn_uncached(int n, const std::vector<int>& I, const std::vector<int>& J) {
  check_inputs(n, I, J);
  return rn_normalized(n, I, J, false);
}

std::size_t rn_cache_size() {
  Memo& m = memo();
  std::lock_guard lock(m.mu);
  return m.table.size();
}

std::vector<std::pair<int, Rational>> table1(int n_max, bool allow_large) {
  if (n_max < 1) throw IndexError("table1 needs n_max >= 1");
  if (n_max > kTable1MaxN && !allow_large)
    throw ResourceLimit("table1 is bounded by n_max <= " + std::to_string(kTable1MaxN));
  std::vector<std::pair<int, Rational>> out;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<int> diag(static_cast<std::size_t>(n + 1));
    for (int t = 0; t <= n; ++t) diag[static_cast<std::size_t>(t)] = t;
    out.emplace_back(n, rn(n, diag, diag));
  }
  return out;
}

ZeroScan scan_f(int n, int a_max) {
  if (n < 1) throw IndexError("scan_f needs n >= 1");
  ZeroScan out;
  std::vector<int> I(static_cast<std::size_t>(n + 1));
  for (int t = 0; t <= n; ++t) I[static_cast<std::size_t>(t)] = t;
  for (int a = n; a <= a_max; a += 2) {
    std::vector<int> J(I.begin(), I.end() - 1);
    J.push_back(a);
    Rational v = rn(n, I, J);
    if (!out.a0 && !v.is_zero()) {
      out.a0 = a;
      out.m = (n * n + 2 * n + a) / 2;
    }
    out.values.emplace_back(a, std::move(v));
  }
  return out;
}

}  // namespace voa
