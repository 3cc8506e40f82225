#pragma once

#include <iosfwd>
#include <vector>

#include "hypcells/ball.hpp"
#include "hypcells/poly.hpp"

namespace hypcells {

enum class Execution { Serial, Parallel };

// Bruhat order, R-polynomials, KL polynomials and mu-coefficients for every
// pair of a ball. Filled once (layered by length, optionally in parallel),
// read-only afterwards.
class KLTable {
 public:
  using Index = ElementBall::Index;

  explicit KLTable(const ElementBall& ball, Execution mode = Execution::Parallel);

  const ElementBall& ball() const { return *ball_; }
  std::size_t size() const { return n_; }

  bool bruhat_leq(Index v, Index w) const { return leq_[v * n_ + w] != 0; }
  const IntPoly& r_poly(Index v, Index w) const { return r_[v * n_ + w]; }
  const IntPoly& kl_poly(Index v, Index w) const { return p_[v * n_ + w]; }
  // 0 unless l(v) < l(w) with odd difference.
  long long mu(Index v, Index w) const;

  // Elements v <= w, in index order.
  std::vector<Index> lower_interval(Index w) const;

  // Recheck identity (iv) in full, including the high-degree half that the
  // fill does not use. Returns the number of failing pairs.
  std::size_t check_inversion_identity(Execution mode = Execution::Parallel) const;

  // v_word \t w_word \t R \t P \t mu, one line per pair v <= w.
  void write_tsv(std::ostream& out) const;
  struct Record {
    Word v;
    Word w;
    IntPoly r;
    IntPoly p;
    long long mu = 0;
  };
  static std::vector<Record> read_tsv(std::istream& in, const Presentation& p);

  friend bool operator==(const KLTable& a, const KLTable& b) {
    return a.n_ == b.n_ && a.leq_ == b.leq_ && a.r_ == b.r_ && a.p_ == b.p_;
  }

 private:
  void fill_bruhat(Execution mode);
  void fill_r(Execution mode);
  void fill_p(Execution mode);
  void fill_r_row(Index w);
  void fill_p_row(Index w);

  const ElementBall* ball_;
  std::size_t n_;
  std::vector<unsigned char> leq_;
  std::vector<IntPoly> r_;
  std::vector<IntPoly> p_;
};

}  // namespace hypcells
