#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace propall {

// A candidate label set S over k classes, stored as a bitmask.
// Invariant: members are a subset of {0..k-1}; loss functions additionally
// require the set to be nonempty.
class CandidateSet {
public:
  explicit CandidateSet(uint32_t num_classes) : k_(num_classes) {
    if (num_classes == 0) throw std::invalid_argument("CandidateSet: num_classes must be positive");
    words_.resize((k_ + 63) / 64, 0);
  }

  static CandidateSet of(uint32_t num_classes, std::initializer_list<uint32_t> members) {
    CandidateSet s(num_classes);
    for (uint32_t i : members) s.add(i);
    return s;
  }

  static CandidateSet singleton(uint32_t num_classes, uint32_t c) {
    CandidateSet s(num_classes);
    s.add(c);
    return s;
  }

  static CandidateSet full(uint32_t num_classes) {
    CandidateSet s(num_classes);
    for (uint32_t i = 0; i < num_classes; ++i) s.add(i);
    return s;
  }

  void add(uint32_t i) {
    check_index(i);
    words_[i >> 6] |= uint64_t{1} << (i & 63);
  }

  void remove(uint32_t i) {
    check_index(i);
    words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }

  bool contains(uint32_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  uint32_t num_classes() const { return k_; }

  uint32_t count() const {
    uint32_t n = 0;
    for (uint64_t w : words_) n += static_cast<uint32_t>(__builtin_popcountll(w));
    return n;
  }

  bool empty() const {
    for (uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  // Visits members in ascending index order.
  template <class F>
  void for_each(F&& f) const {
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w != 0) {
        uint32_t bit = static_cast<uint32_t>(__builtin_ctzll(w));
        f(static_cast<uint32_t>(wi * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<uint32_t> to_indices() const {
    std::vector<uint32_t> out;
    out.reserve(count());
    for_each([&](uint32_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const CandidateSet& a, const CandidateSet& b) {
    return a.k_ == b.k_ && a.words_ == b.words_;
  }

private:
  void check_index(uint32_t i) const {
    if (i >= k_) throw std::out_of_range("CandidateSet: class index out of range");
  }

  uint32_t k_;
  std::vector<uint64_t> words_;
};

}  // namespace propall
