#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ltft/linalg.hpp"

namespace ltft {

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};
struct DuplicateLegPairing : std::invalid_argument {
  explicit DuplicateLegPairing(const std::string& what) : std::invalid_argument(what) {}
};

struct Leg {
  std::string name;
  Eigen::Index dim;
};

// Dense multi-index array with named legs, entries stored row-major in leg
// order (last leg varies fastest).
template <class S>
struct Tensor {
  std::vector<Leg> legs;
  std::vector<S> data;

  Tensor() = default;
  explicit Tensor(std::vector<Leg> l) : legs(std::move(l)) {
    for (size_t i = 0; i < legs.size(); ++i)
      for (size_t j = i + 1; j < legs.size(); ++j)
        if (legs[i].name == legs[j].name)
          throw std::invalid_argument("Tensor: duplicate leg name " + legs[i].name);
    data.assign(static_cast<size_t>(size()), S(0));
  }

  Eigen::Index size() const {
    Eigen::Index n = 1;
    for (const auto& l : legs) n *= l.dim;
    return n;
  }

  Eigen::Index order() const { return static_cast<Eigen::Index>(legs.size()); }

  Eigen::Index leg_index(const std::string& name) const {
    for (size_t i = 0; i < legs.size(); ++i)
      if (legs[i].name == name) return static_cast<Eigen::Index>(i);
    throw std::invalid_argument("Tensor: no leg named " + name);
  }

  Eigen::Index flat(const std::vector<Eigen::Index>& idx) const {
    Eigen::Index f = 0;
    for (size_t i = 0; i < legs.size(); ++i) f = f * legs[i].dim + idx[i];
    return f;
  }

  const S& at(const std::vector<Eigen::Index>& idx) const { return data[static_cast<size_t>(flat(idx))]; }
  S& at(const std::vector<Eigen::Index>& idx) { return data[static_cast<size_t>(flat(idx))]; }

  static Tensor scalar(const S& v) {
    Tensor t{std::vector<Leg>{}};
    t.data[0] = v;
    return t;
  }

  // Reorders legs according to perm (new position i holds old leg perm[i]).
  Tensor permuted(const std::vector<Eigen::Index>& perm) const {
    std::vector<Leg> nl(legs.size());
    for (size_t i = 0; i < perm.size(); ++i) nl[i] = legs[static_cast<size_t>(perm[i])];
    Tensor out(nl);
    std::vector<Eigen::Index> idx(legs.size(), 0), src(legs.size(), 0);
    const Eigen::Index total = size();
    for (Eigen::Index f = 0; f < total; ++f) {
      for (size_t i = 0; i < perm.size(); ++i) src[static_cast<size_t>(perm[i])] = idx[i];
      out.data[static_cast<size_t>(f)] = at(src);
      for (Eigen::Index i = static_cast<Eigen::Index>(idx.size()) - 1; i >= 0; --i) {
        if (++idx[static_cast<size_t>(i)] < nl[static_cast<size_t>(i)].dim) break;
        idx[static_cast<size_t>(i)] = 0;
      }
    }
    return out;
  }
};

namespace detail {

template <class S>
void bump(const Tensor<S>& t, std::vector<Eigen::Index>& idx) {
  for (Eigen::Index i = t.order() - 1; i >= 0; --i) {
    if (++idx[static_cast<size_t>(i)] < t.legs[static_cast<size_t>(i)].dim) break;
    idx[static_cast<size_t>(i)] = 0;
  }
}

}  // namespace detail

// Sums over pairs of legs within one tensor (partial trace).
template <class S>
Tensor<S> self_trace(const Tensor<S>& t, const std::vector<std::pair<Eigen::Index, Eigen::Index>>& pairs) {
  if (pairs.empty()) return t;
  std::vector<bool> used(t.legs.size(), false);
  for (auto [i, j] : pairs) {
    if (i == j || used[static_cast<size_t>(i)] || used[static_cast<size_t>(j)])
      throw DuplicateLegPairing("self_trace: leg paired twice");
    if (t.legs[static_cast<size_t>(i)].dim != t.legs[static_cast<size_t>(j)].dim)
      throw DimensionMismatch("self_trace: dims differ on " + t.legs[static_cast<size_t>(i)].name);
    used[static_cast<size_t>(i)] = used[static_cast<size_t>(j)] = true;
  }
  std::vector<Leg> free_legs;
  std::vector<Eigen::Index> free_pos;
  for (size_t i = 0; i < t.legs.size(); ++i)
    if (!used[i]) {
      free_legs.push_back(t.legs[i]);
      free_pos.push_back(static_cast<Eigen::Index>(i));
    }
  Tensor<S> out(free_legs);
  std::vector<Eigen::Index> idx(t.legs.size(), 0), oidx(free_legs.size(), 0);
  const Eigen::Index total = t.size();
  for (Eigen::Index f = 0; f < total; ++f) {
    bool diag = true;
    for (auto [i, j] : pairs)
      if (idx[static_cast<size_t>(i)] != idx[static_cast<size_t>(j)]) { diag = false; break; }
    if (diag) {
      for (size_t k = 0; k < free_pos.size(); ++k) oidx[k] = idx[static_cast<size_t>(free_pos[k])];
      out.at(oidx) += t.data[static_cast<size_t>(f)];
    }
    detail::bump(t, idx);
  }
  return out;
}

// Contracts two tensors over the given (a-leg, b-leg) index pairs. Free legs
// of a come first in the result, then free legs of b.
template <class S>
Tensor<S> contract_pair(const Tensor<S>& a, const Tensor<S>& b,
                        const std::vector<std::pair<Eigen::Index, Eigen::Index>>& pairs) {
  std::vector<bool> a_used(a.legs.size(), false), b_used(b.legs.size(), false);
  for (auto [i, j] : pairs) {
    if (a_used[static_cast<size_t>(i)] || b_used[static_cast<size_t>(j)])
      throw DuplicateLegPairing("contract_pair: leg paired twice");
    if (a.legs[static_cast<size_t>(i)].dim != b.legs[static_cast<size_t>(j)].dim)
      throw DimensionMismatch("contract_pair: dims differ on " + a.legs[static_cast<size_t>(i)].name +
                              " vs " + b.legs[static_cast<size_t>(j)].name);
    a_used[static_cast<size_t>(i)] = true;
    b_used[static_cast<size_t>(j)] = true;
  }
  std::vector<Eigen::Index> a_perm, b_perm;
  for (size_t i = 0; i < a.legs.size(); ++i)
    if (!a_used[i]) a_perm.push_back(static_cast<Eigen::Index>(i));
  const Eigen::Index a_free = static_cast<Eigen::Index>(a_perm.size());
  for (auto [i, j] : pairs) { (void)j; a_perm.push_back(i); }
  for (auto [i, j] : pairs) { (void)i; b_perm.push_back(j); }
  for (size_t i = 0; i < b.legs.size(); ++i)
    if (!b_used[i]) b_perm.push_back(static_cast<Eigen::Index>(i));

  Tensor<S> ap = a.permuted(a_perm);
  Tensor<S> bp = b.permuted(b_perm);

  Eigen::Index k = 1;
  for (auto [i, j] : pairs) { (void)j; k *= a.legs[static_cast<size_t>(i)].dim; }
  const Eigen::Index m = ap.size() / k;
  const Eigen::Index n = bp.size() / k;

  Eigen::Map<const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      am(ap.data.data(), m, k), bm(bp.data.data(), k, n);
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> cm = am * bm;

  std::vector<Leg> out_legs;
  for (Eigen::Index i = 0; i < a_free; ++i) out_legs.push_back(ap.legs[static_cast<size_t>(i)]);
  for (size_t i = pairs.size(); i < bp.legs.size(); ++i) out_legs.push_back(bp.legs[i]);
  Tensor<S> out(out_legs);
  std::copy(cm.data(), cm.data() + cm.size(), out.data.begin());
  return out;
}

// Full tensor product (no contraction).
template <class S>
Tensor<S> outer(const Tensor<S>& a, const Tensor<S>& b) {
  return contract_pair(a, b, {});
}

// Contracts a network given leg-name pairings; leg names appearing in pairs
// must be unique across the network. Pairs within a single tensor are traced.
// The order of pairwise contractions is greedy on result size; the result is
// order-independent (exact arithmetic), which the tests check against a
// naive full-summation oracle.
template <class S>
Tensor<S> contract_network(std::vector<Tensor<S>> tensors,
                           const std::vector<std::pair<std::string, std::string>>& pairs,
                           Eigen::Index* max_intermediate = nullptr,
                           Eigen::Index* contractions = nullptr) {
  if (max_intermediate) *max_intermediate = 0;
  if (contractions) *contractions = 0;
  auto locate = [&](const std::string& name) -> std::pair<int, Eigen::Index> {
    std::pair<int, Eigen::Index> found{-1, -1};
    for (size_t t = 0; t < tensors.size(); ++t)
      for (size_t l = 0; l < tensors[t].legs.size(); ++l)
        if (tensors[t].legs[l].name == name) {
          if (found.first >= 0) throw DuplicateLegPairing("contract_network: leg name not unique: " + name);
          found = {static_cast<int>(t), static_cast<Eigen::Index>(l)};
        }
    if (found.first < 0) throw std::invalid_argument("contract_network: no leg named " + name);
    return found;
  };
  std::vector<std::pair<std::string, std::string>> open(pairs);
  {
    std::vector<std::string> seen;
    for (auto& [x, y] : pairs) {
      for (auto& s : {x, y}) {
        if (std::find(seen.begin(), seen.end(), s) != seen.end())
          throw DuplicateLegPairing("contract_network: leg paired twice: " + s);
        seen.push_back(s);
      }
    }
  }

  auto do_self_traces = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < open.size(); ++i) {
        auto a = locate(open[i].first);
        auto b = locate(open[i].second);
        if (a.first == b.first) {
          std::vector<std::pair<Eigen::Index, Eigen::Index>> tr;
          // gather every open pair internal to this tensor
          std::vector<size_t> kill;
          for (size_t j = 0; j < open.size(); ++j) {
            auto x = locate(open[j].first);
            auto y = locate(open[j].second);
            if (x.first == a.first && y.first == a.first) {
              tr.push_back({x.second, y.second});
              kill.push_back(j);
            }
          }
          tensors[static_cast<size_t>(a.first)] = self_trace(tensors[static_cast<size_t>(a.first)], tr);
          if (contractions) ++*contractions;
          if (max_intermediate)
            *max_intermediate = std::max(*max_intermediate, tensors[static_cast<size_t>(a.first)].size());
          for (auto it = kill.rbegin(); it != kill.rend(); ++it)
            open.erase(open.begin() + static_cast<long>(*it));
          changed = true;
          break;
        }
      }
    }
  };

  do_self_traces();
  while (!open.empty()) {
    // Greedy: among tensor pairs joined by at least one open pairing, pick
    // the contraction with the smallest result size.
    long best_cost = -1;
    int bi = -1, bj = -1;
    for (auto& [x, y] : open) {
      auto a = locate(x);
      auto b = locate(y);
      int i = std::min(a.first, b.first), j = std::max(a.first, b.first);
      Eigen::Index shared = 1;
      for (auto& [u, v] : open) {
        auto p = locate(u);
        auto q = locate(v);
        if (std::min(p.first, q.first) == i && std::max(p.first, q.first) == j)
          shared *= tensors[static_cast<size_t>(p.first)].legs[static_cast<size_t>(p.second)].dim;
      }
      long cost = static_cast<long>(tensors[static_cast<size_t>(i)].size()) *
                  static_cast<long>(tensors[static_cast<size_t>(j)].size()) / static_cast<long>(shared * shared);
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        bi = i;
        bj = j;
      }
    }
    std::vector<std::pair<Eigen::Index, Eigen::Index>> idx_pairs;
    std::vector<size_t> kill;
    for (size_t j = 0; j < open.size(); ++j) {
      auto x = locate(open[j].first);
      auto y = locate(open[j].second);
      if (x.first == bi && y.first == bj) {
        idx_pairs.push_back({x.second, y.second});
        kill.push_back(j);
      } else if (x.first == bj && y.first == bi) {
        idx_pairs.push_back({y.second, x.second});
        kill.push_back(j);
      }
    }
    Tensor<S> merged = contract_pair(tensors[static_cast<size_t>(bi)], tensors[static_cast<size_t>(bj)], idx_pairs);
    if (contractions) ++*contractions;
    if (max_intermediate) *max_intermediate = std::max(*max_intermediate, merged.size());
    for (auto it = kill.rbegin(); it != kill.rend(); ++it)
      open.erase(open.begin() + static_cast<long>(*it));
    tensors[static_cast<size_t>(bi)] = std::move(merged);
    tensors.erase(tensors.begin() + bj);
    do_self_traces();
  }

  // Outer-product the disconnected remainder.
  Tensor<S> out = Tensor<S>::scalar(S(1));
  for (auto& t : tensors) out = outer(out, t);
  return out;
}

// Reorders the result's legs by name; throws if names differ as sets.
template <class S>
Tensor<S> align_legs(const Tensor<S>& t, const std::vector<std::string>& names) {
  if (static_cast<Eigen::Index>(names.size()) != t.order())
    throw std::invalid_argument("align_legs: leg count mismatch");
  std::vector<Eigen::Index> perm;
  for (auto& n : names) perm.push_back(t.leg_index(n));
  return t.permuted(perm);
}

}  // namespace ltft
