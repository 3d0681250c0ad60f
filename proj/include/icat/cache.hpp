#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>

namespace icat {

namespace detail {

// Append-only, keyed by (identity of the source, a string such as an index
// encoding or a bound).
// Readers share the lock; a missing entry is built outside it and the first
// insertion wins, so construction is idempotent.
template <class Owner, class Value>
class OnDemandCache {
 public:
  template <class Make>
  std::shared_ptr<const Value> get(const void* key, const std::string& index, const Owner& owner, Make&& make) {
    Key k{key, index};
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(k);
      if (it != map_.end()) return it->second.value;
    }
    std::shared_ptr<const Value> v = make();
    std::unique_lock lock(mu_);
    auto it = map_.emplace(std::move(k), Entry{owner, std::move(v)}).first;
    return it->second.value;
  }

 private:
  using Key = std::pair<const void*, std::string>;
  // The owner keeps the keyed storage alive so its address is not reused.
  struct Entry {
    Owner owner;
    std::shared_ptr<const Value> value;
  };
  std::shared_mutex mu_;
  std::map<Key, Entry> map_;
};

}  // namespace detail

}  // namespace icat
