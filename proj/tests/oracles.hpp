#pragma once

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "hypcells/presentation.hpp"

namespace testing {

// Geometric representation in floating point, independent of the exact
// small-root machinery.
class FloatReflections {
 public:
  explicit FloatReflections(const hypcells::Presentation& p) : n_(p.rank()), form_(n_ * n_) {
    for (std::size_t s = 0; s < n_; ++s) {
      for (std::size_t t = 0; t < n_; ++t) {
        const auto m = p.order(static_cast<hypcells::Generator>(s), static_cast<hypcells::Generator>(t));
        form_[s * n_ + t] = s == t ? 1.0 : (m.is_finite() ? -std::cos(M_PI / m.value()) : -1.0);
      }
    }
  }

  using Matrix = std::vector<double>;  // column j = image of simple root j

  Matrix identity() const {
    Matrix m(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) m[i * n_ + i] = 1.0;
    return m;
  }

  // m * reflection(s)
  Matrix times(const Matrix& m, std::size_t s) const {
    Matrix out = m;
    for (std::size_t j = 0; j < n_; ++j) {
      const double c = 2.0 * form_[s * n_ + j];
      for (std::size_t i = 0; i < n_; ++i) out[i * n_ + j] -= c * m[i * n_ + s];
    }
    return out;
  }

  // Sign of the root m(alpha_s): +1 positive, -1 negative.
  int image_sign(const Matrix& m, std::size_t s) const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double v = m[i * n_ + s];
      if (std::fabs(v) > std::fabs(best)) best = v;
    }
    return best > 0 ? 1 : -1;
  }

  bool is_reduced(const std::vector<hypcells::Generator>& word) const {
    Matrix m = identity();
    for (auto s : word) {
      if (image_sign(m, s) < 0) return false;
      m = times(m, s);
    }
    return true;
  }

  std::vector<long long> key(const Matrix& m) const {
    std::vector<long long> k;
    for (double v : m) k.push_back(std::llround(v * 1e6));
    return k;
  }

  // Number of group elements of each length 0..radius by breadth-first
  // search on matrices.
  std::vector<std::size_t> element_counts(std::size_t radius) const {
    std::set<std::vector<long long>> seen;
    std::vector<Matrix> frontier{identity()};
    seen.insert(key(identity()));
    std::vector<std::size_t> counts{1};
    for (std::size_t len = 1; len <= radius; ++len) {
      std::vector<Matrix> next;
      for (const auto& m : frontier) {
        for (std::size_t s = 0; s < n_; ++s) {
          Matrix x = times(m, s);
          if (seen.insert(key(x)).second) next.push_back(std::move(x));
        }
      }
      counts.push_back(next.size());
      frontier = std::move(next);
    }
    return counts;
  }

  // Number of reduced words of each length 0..radius.
  std::vector<std::size_t> reduced_word_counts(std::size_t radius) const {
    std::vector<std::size_t> counts(radius + 1, 0);
    std::vector<Matrix> frontier{identity()};
    counts[0] = 1;
    for (std::size_t len = 1; len <= radius; ++len) {
      std::vector<Matrix> next;
      for (const auto& m : frontier) {
        for (std::size_t s = 0; s < n_; ++s) {
          if (image_sign(m, s) > 0) next.push_back(times(m, s));
        }
      }
      counts[len] = next.size();
      frontier = std::move(next);
    }
    return counts;
  }

 private:
  std::size_t n_;
  std::vector<double> form_;
};

// All words of a given length over n letters.
inline std::vector<std::vector<hypcells::Generator>> all_words(std::size_t n, std::size_t len) {
  std::vector<std::vector<hypcells::Generator>> out{{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<std::vector<hypcells::Generator>> next;
    for (const auto& w : out) {
      for (std::size_t s = 0; s < n; ++s) {
        auto x = w;
        x.push_back(static_cast<hypcells::Generator>(s));
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace testing
