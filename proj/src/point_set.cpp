#include "cornerlab/point_set.hpp"

#include "cornerlab/error.hpp"
#include "cornerlab/rng.hpp"

namespace cornerlab {

PointSet::PointSet(const Domain& domain)
    : domain_(domain), words_((domain.point_count() + 63) / 64, 0) {}

PointSet PointSet::full(const Domain& domain) {
  PointSet s(domain);
  for (std::size_t i = 0; i < domain.point_count(); ++i) s.insert_index(i);
  return s;
}

PointSet PointSet::from_points(const Domain& domain, const std::vector<Point>& points) {
  PointSet s(domain);
  for (const Point& q : points) {
    const Point r = domain.reduce(q);
    if (!domain.contains(r)) {
      throw Error(ErrorCode::OutOfRange, "point (" + std::to_string(q.x) + "," +
                                             std::to_string(q.y) + ") outside " + domain.describe());
    }
    s.insert(r);
  }
  return s;
}

bool PointSet::insert_index(std::size_t idx) {
  std::uint64_t& w = words_[idx >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
  if (w & bit) return false;
  w |= bit;
  ++count_;
  return true;
}

bool PointSet::erase_index(std::size_t idx) {
  std::uint64_t& w = words_[idx >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
  if (!(w & bit)) return false;
  w &= ~bit;
  --count_;
  return true;
}

bool PointSet::insert(Point q) {
  if (!domain_.contains(q)) throw Error(ErrorCode::OutOfRange, "insert outside " + domain_.describe());
  return insert_index(domain_.index(q));
}

bool PointSet::erase(Point q) {
  if (!domain_.contains(q)) return false;
  return erase_index(domain_.index(q));
}

void PointSet::clear() {
  std::fill(words_.begin(), words_.end(), 0);
  count_ = 0;
}

std::vector<Point> PointSet::points() const {
  std::vector<Point> out;
  out.reserve(count_);
  for_each_index([&](std::size_t i) { out.push_back(domain_.point(i)); });
  return out;
}

std::vector<std::size_t> PointSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  for_each_index([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::size_t PointSet::recount() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::string PointSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t n = domain_.point_count();
  std::string hex((n + 3) / 4, '0');
  for (std::size_t d = 0; d < hex.size(); ++d) {
    unsigned nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t idx = 4 * d + b;
      nibble = (nibble << 1U) | static_cast<unsigned>(idx < n && contains_index(idx));
    }
    hex[d] = kDigits[nibble];
  }
  return hex;
}

PointSet PointSet::from_hex(const Domain& domain, std::string_view hex) {
  const std::size_t n = domain.point_count();
  if (hex.size() != (n + 3) / 4) {
    throw Error(ErrorCode::FormatError, "bitset hex must have " + std::to_string((n + 3) / 4) +
                                            " digits for " + domain.describe() + ", got " +
                                            std::to_string(hex.size()));
  }
  PointSet s(domain);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<unsigned>(c - 'a' + 10);
    } else {
      throw Error(ErrorCode::FormatError, std::string("invalid hex digit '") + c + "'");
    }
    for (std::size_t b = 0; b < 4; ++b) {
      if (!((nibble >> (3 - b)) & 1U)) continue;
      const std::size_t idx = 4 * d + b;
      if (idx >= n) throw Error(ErrorCode::FormatError, "padding bits must be zero");
      s.insert_index(idx);
    }
  }
  return s;
}

PointSet& PointSet::operator|=(const PointSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  count_ = recount();
  return *this;
}

PointSet& PointSet::operator&=(const PointSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  count_ = recount();
  return *this;
}

PointSet PointSet::complement() const {
  PointSet out(domain_);
  for (std::size_t i = 0; i < domain_.point_count(); ++i) {
    if (!contains_index(i)) out.insert_index(i);
  }
  return out;
}

bool lex_less(const PointSet& a, const PointSet& b) {
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff) return (b.words_[w] >> std::countr_zero(diff)) & 1U;
  }
  return false;
}

PointSet random_subset(const Domain& domain, std::uint64_t numerator, std::uint64_t denominator,
                       std::uint64_t seed) {
  if (denominator == 0 || numerator > denominator) {
    throw Error(ErrorCode::InvalidArgument, "density must be a rational in [0, 1]");
  }
  Rng rng(seed);
  PointSet s(domain);
  for (std::size_t i = 0; i < domain.point_count(); ++i) {
    if (rng.bernoulli(numerator, denominator)) s.insert_index(i);
  }
  return s;
}

}  // namespace cornerlab
