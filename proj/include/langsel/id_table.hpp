#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "langsel/error.hpp"

namespace langsel {

/// Insertion-ordered map from sample id to a value. Ids are unique.
template <typename T>
class IdTable {
 public:
  using Entry = std::pair<std::string, T>;

  IdTable() = default;
  IdTable(std::initializer_list<Entry> entries) {
    for (const auto& [id, value] : entries) insert(id, value);
  }

  void insert(std::string id, T value) {
    auto [it, inserted] = index_.emplace(id, entries_.size());
    if (!inserted) throw DuplicateId("id '" + id + "' appears more than once");
    entries_.emplace_back(std::move(id), std::move(value));
  }

  const T* find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &entries_[it->second].second;
  }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// Same id set, order-insensitive.
  template <typename U>
  bool same_ids(const IdTable<U>& other) const {
    if (other.size() != size()) return false;
    for (const auto& [id, _] : entries_)
      if (!other.contains(id)) return false;
    return true;
  }

  friend bool operator==(const IdTable& a, const IdTable& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace langsel
