#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <tuple>

#include "chiral/state.hpp"

namespace chiral {

template <class Key>
class MemoTable {
 public:
  std::optional<State> find(const Key& k) const {
    std::shared_lock lock(mu_);
    auto it = table_.find(k);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void store(const Key& k, const State& v) {
    std::unique_lock lock(mu_);
    table_.emplace(k, v);
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<Key, State> table_;
};

struct ModelCache {
  // f_(k) applied to (word of coefficient-system modes) tensor 1.
  MemoTable<std::tuple<Polynomial, int, Word>> coefficient_modes;
  // a_(n) b for PBW basis vectors a, b.
  MemoTable<std::tuple<BasisKey, int, BasisKey>> products;
};

}  // namespace chiral
