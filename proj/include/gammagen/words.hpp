#pragma once

// Words in T, W and in S, T; height-bounded enumeration of <T, W>; the
// log-bounded decomposition of Gamma0(N) for prime N.

#include <cstdint>
#include <string>
#include <vector>

#include "gammagen/matcore.hpp"

namespace gammagen {

/// Ordering matters: enumeration visits letters in this order.
enum class Letter : std::uint8_t { T = 0, Tinv = 1, W = 2, Winv = 3 };

using Word = std::vector<Letter>;

Letter inverse(Letter x);
char letter_char(Letter x);
Word parse_word(const std::string& text);
std::string format_word(const Word& w);
bool is_reduced(const Word& w);
Word inverse_word(const Word& w);

Mat2 eval_word(const Word& w, long N);
IntMat2 ieval_word(const Word& w, std::int64_t N);
IntMat2 letter_matrix(Letter x, std::int64_t N);

enum class STLetter : std::uint8_t { S = 0, T = 1, Tinv = 2 };

using STWord = std::vector<STLetter>;

STWord parse_stword(const std::string& text);
std::string format_stword(const STWord& w);
Mat2 eval_stword(const STWord& w);
/// Word in S, T^{+-1} evaluating exactly to M (integer entries, det 1).
STWord matrix_to_stword(const Mat2& M);

/// Breadth-first tree of reduced words; node 0 is the empty word.
class TWBall {
 public:
  static constexpr std::uint32_t kRoot = 0xffffffffu;

  TWBall(long N, std::int64_t height_bound) : N_(N), bound_(height_bound) {}

  long level() const { return N_; }
  std::int64_t height_bound() const { return bound_; }
  std::size_t size() const { return mats_.size(); }
  const IntMat2& matrix(std::size_t i) const { return mats_[i]; }
  std::uint32_t parent(std::size_t i) const { return parent_[i]; }
  Letter last(std::size_t i) const { return last_[i]; }
  Word word(std::size_t i) const;
  /// Word lengths by node, computed on demand.
  std::size_t length(std::size_t i) const;

  /// Always true for N >= 4. For N <= 3 the ball is the Cayley-graph ball
  /// of the length bound and may contain nodes above the height bound.
  bool within_bound(std::size_t i) const;

  void push(std::uint32_t parent, Letter last, const IntMat2& m);

 private:
  long N_;
  std::int64_t bound_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> last_;
  std::vector<IntMat2> mats_;
};

/// All reduced words in T, W whose value has height <= height_bound, in
/// breadth-first order. For N >= 4 prefixes above the bound are pruned. For
/// N <= 3 the breadth-first search runs over distinct matrices up to
/// max_length letters (required), keeping the first word for each matrix.
TWBall enumerate_tw(long N, std::int64_t height_bound, int max_length = -1);

struct LogGenFactor {
  enum class Kind : std::uint8_t { T, W, GammaInv };
  Kind kind;
  /// Power of T or W; for GammaInv the r of gamma_{r,1}^{-1}.
  Integer value;
};

struct LogGenFactorization {
  int sign = 1;
  std::vector<LogGenFactor> factors;
  int gamma_count = 0;
};

/// M = sign * product of factors, with gamma_{r,1} = gamma_qa(N, r, 1).
LogGenFactorization loggen_decompose(long N, const Mat2& M);
Mat2 eval_factorization(const LogGenFactorization& f, long N);
std::string format_factorization(const LogGenFactorization& f);

}  // namespace gammagen
