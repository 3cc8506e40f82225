#include "hypcells/kl.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "hypcells/error.hpp"

namespace hypcells {

namespace {

// Last letter of the normal word: always a right descent.
Generator last_letter(const Element& w) { return w.word.back(); }

template <class Body>
void for_each_in_layer(const ElementBall& ball, std::size_t len, Execution mode, Body body) {
  const auto first = static_cast<std::ptrdiff_t>(ball.begin_of_length(len));
  const auto last = static_cast<std::ptrdiff_t>(ball.end_of_length(len));
  if (mode == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t w = first; w < last; ++w) body(static_cast<ElementBall::Index>(w));
  } else {
    for (std::ptrdiff_t w = first; w < last; ++w) body(static_cast<ElementBall::Index>(w));
  }
}

}  // namespace

KLTable::KLTable(const ElementBall& ball, Execution mode) : ball_(&ball), n_(ball.size()) {
  leq_.assign(n_ * n_, 0);
  r_.assign(n_ * n_, IntPoly{});
  p_.assign(n_ * n_, IntPoly{});
  fill_bruhat(mode);
  fill_r(mode);
  fill_p(mode);
}

long long KLTable::mu(Index v, Index w) const {
  const std::size_t lv = (*ball_)[v].length();
  const std::size_t lw = (*ball_)[w].length();
  if (lv >= lw || (lw - lv) % 2 == 0) return 0;
  return kl_poly(v, w)[(lw - lv - 1) / 2];
}

std::vector<KLTable::Index> KLTable::lower_interval(Index w) const {
  std::vector<Index> out;
  const std::size_t end = ball_->end_of_length((*ball_)[w].length());
  for (std::size_t v = 0; v < end; ++v) {
    if (leq_[v * n_ + w]) out.push_back(static_cast<Index>(v));
  }
  return out;
}

// s in R(w): v <= w iff min(v, vs) <= ws.
void KLTable::fill_bruhat(Execution mode) {
  leq_[0] = 1;
  for (std::size_t len = 1; len <= ball_->radius(); ++len) {
    for_each_in_layer(*ball_, len, mode, [&](Index w) {
      const Element& we = (*ball_)[w];
      const Generator s = last_letter(we);
      const Index ws = ball_->right(w, s);
      for (std::size_t v = 0; v < ball_->begin_of_length(len); ++v) {
        const Element& ve = (*ball_)[static_cast<Index>(v)];
        const Index low = contains(ve.right, s) ? ball_->right(static_cast<Index>(v), s) : static_cast<Index>(v);
        leq_[v * n_ + w] = leq_[low * n_ + ws];
      }
      leq_[w * n_ + w] = 1;
    });
  }
}

void KLTable::fill_r_row(Index w) {
  r_[w * n_ + w] = IntPoly::constant(1);
  const Element& we = (*ball_)[w];
  if (we.is_identity()) return;
  const Generator s = last_letter(we);
  const Index ws = ball_->right(w, s);
  static const IntPoly q = IntPoly::monomial(1, 1);
  static const IntPoly q_minus_one({-1, 1});
  for (std::size_t v = 0; v < ball_->begin_of_length(we.length()); ++v) {
    if (!leq_[v * n_ + w]) continue;
    const Element& ve = (*ball_)[static_cast<Index>(v)];
    const Index vs = ball_->right(static_cast<Index>(v), s);
    if (contains(ve.right, s)) {
      r_[v * n_ + w] = r_[vs * n_ + ws];
    } else {
      r_[v * n_ + w] = q * r_[vs * n_ + ws] + q_minus_one * r_[v * n_ + ws];
    }
  }
}

void KLTable::fill_r(Execution mode) {
  for (std::size_t len = 0; len <= ball_->radius(); ++len) {
    for_each_in_layer(*ball_, len, mode, [&](Index w) { fill_r_row(w); });
  }
}

// Identity (iv) rearranged: q^d P(1/q) - P(q) = sum_{v<x<=w} R_{v,x} P_{x,w};
// the left side has no terms of degree <= (d-1)/2 except those of -P.
void KLTable::fill_p_row(Index w) {
  const std::vector<Index> interval = lower_interval(w);
  const std::size_t lw = (*ball_)[w].length();
  p_[w * n_ + w] = IntPoly::constant(1);
  std::vector<IntPoly::Coeff> acc;
  for (auto it = interval.rbegin(); it != interval.rend(); ++it) {
    const Index v = *it;
    if (v == w) continue;
    const std::size_t lv = (*ball_)[v].length();
    const std::size_t bound = (lw - lv - 1) / 2;
    acc.assign(bound + 1, 0);
    for (const Index x : interval) {
      if ((*ball_)[x].length() <= lv || !leq_[v * n_ + x]) continue;
      const auto& r = r_[v * n_ + x].coeffs();
      const auto& p = p_[x * n_ + w].coeffs();
      for (std::size_t i = 0; i < r.size() && i <= bound; ++i) {
        if (r[i] == 0) continue;
        for (std::size_t j = 0; j < p.size() && i + j <= bound; ++j) acc[i + j] += r[i] * p[j];
      }
    }
    for (auto& c : acc) c = -c;
    p_[v * n_ + w] = IntPoly(acc);
  }
}

void KLTable::fill_p(Execution mode) {
  const auto count = static_cast<std::ptrdiff_t>(n_);
  if (mode == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t w = count - 1; w >= 0; --w) fill_p_row(static_cast<Index>(w));
  } else {
    for (std::ptrdiff_t w = 0; w < count; ++w) fill_p_row(static_cast<Index>(w));
  }
}

std::size_t KLTable::check_inversion_identity(Execution mode) const {
  std::size_t failures = 0;
  const auto count = static_cast<std::ptrdiff_t>(n_);
  auto check_row = [&](Index w) {
    std::size_t bad = 0;
    const std::vector<Index> interval = lower_interval(w);
    const std::size_t lw = (*ball_)[w].length();
    for (const Index v : interval) {
      const std::size_t lv = (*ball_)[v].length();
      IntPoly rhs;
      for (const Index x : interval) {
        if (leq_[v * n_ + x]) rhs += r_[v * n_ + x] * p_[x * n_ + w];
      }
      const IntPoly& p = p_[v * n_ + w];
      const bool degree_ok = v == w ? p == IntPoly::constant(1) : 2 * p.degree() <= static_cast<long>(lw - lv) - 1;
      if (!degree_ok || p.reversed(lw - lv) != rhs) ++bad;
    }
    return bad;
  };
  if (mode == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : failures)
    for (std::ptrdiff_t w = 0; w < count; ++w) failures += check_row(static_cast<Index>(w));
  } else {
    for (std::ptrdiff_t w = 0; w < count; ++w) failures += check_row(static_cast<Index>(w));
  }
  return failures;
}

void KLTable::write_tsv(std::ostream& out) const {
  const Presentation& p = ball_->group().presentation();
  for (std::size_t w = 0; w < n_; ++w) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (!leq_[v * n_ + w]) continue;
      const auto vi = static_cast<Index>(v);
      const auto wi = static_cast<Index>(w);
      out << p.format_word((*ball_)[vi].word) << '\t' << p.format_word((*ball_)[wi].word) << '\t'
          << r_poly(vi, wi).to_csv() << '\t' << kl_poly(vi, wi).to_csv() << '\t' << mu(vi, wi) << '\n';
    }
  }
}

std::vector<KLTable::Record> KLTable::read_tsv(std::istream& in, const Presentation& p) {
  std::vector<Record> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 5) {
      throw Error(ErrorCode::CorruptCache, "KL record line " + std::to_string(lineno) + " has " +
                                               std::to_string(fields.size()) + " fields");
    }
    try {
      Record r{p.parse_word(fields[0]), p.parse_word(fields[1]), IntPoly::from_csv(fields[2]),
               IntPoly::from_csv(fields[3]), std::stoll(fields[4])};
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::CorruptCache, "KL record line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hypcells
