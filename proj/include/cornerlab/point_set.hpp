#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cornerlab/domain.hpp"

namespace cornerlab {

// Dense bitset subset of a Domain with a cached cardinality.
class PointSet {
 public:
  explicit PointSet(const Domain& domain);

  static PointSet full(const Domain& domain);
  static PointSet from_points(const Domain& domain, const std::vector<Point>& points);
  // Lowercase hex of the row-major bit array; bit k is the (3 − k mod 4)-th bit of
  // digit ⌊k/4⌋, i.e. each digit reads four consecutive bits most-significant first.
  static PointSet from_hex(const Domain& domain, std::string_view hex);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains_index(std::size_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1U; }
  // False for points outside the domain (grid) instead of an error.
  bool contains(Point q) const { return domain_.contains(q) && contains_index(domain_.index(q)); }

  bool insert_index(std::size_t idx);
  bool erase_index(std::size_t idx);
  bool insert(Point q);
  bool erase(Point q);
  void clear();

  // Row-major order.
  std::vector<Point> points() const;
  std::vector<std::size_t> indices() const;
  template <class F>
  void for_each_index(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::size_t recount() const;
  std::string to_hex() const;

  PointSet& operator|=(const PointSet& other);
  PointSet& operator&=(const PointSet& other);
  PointSet complement() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.domain_ == b.domain_ && a.words_ == b.words_;
  }
  // Lexicographic on the bit sequence b0 b1 b2 …; a set is "smaller" when it has
  // a 0 where the other has a 1 at the first differing index.
  friend bool lex_less(const PointSet& a, const PointSet& b);

 private:
  Domain domain_;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

// Deterministic subset: each point kept independently with probability numerator/denominator.
PointSet random_subset(const Domain& domain, std::uint64_t numerator, std::uint64_t denominator,
                       std::uint64_t seed);

}  // namespace cornerlab
