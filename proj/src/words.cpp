#include "wg/words.hpp"

#include <stdexcept>

namespace wg {

const std::vector<Letter> kGammaLetters = {
    Letter::Dt,  Letter::Dx1, Letter::Dx2, Letter::Dx3, Letter::O12,
    Letter::O13, Letter::O23, Letter::O01, Letter::O02, Letter::O03};

const std::vector<Letter> kZLetters = {Letter::Dt,  Letter::Dx1, Letter::Dx2,
                                       Letter::Dx3, Letter::O12, Letter::O13,
                                       Letter::O23};

const std::vector<Letter> kGammaTildeLetters = {
    Letter::Dt,  Letter::Dx1, Letter::Dx2, Letter::Dx3, Letter::O12, Letter::O13,
    Letter::O23, Letter::O01, Letter::O02, Letter::O03, Letter::Dy};

std::size_t VectorFieldWord::count(Letter l) const {
  std::size_t n = 0;
  for (Letter x : letters)
    if (x == l) ++n;
  return n;
}

std::string letter_name(Letter l) {
  switch (l) {
    case Letter::Dt: return "dt";
    case Letter::Dx1: return "d1";
    case Letter::Dx2: return "d2";
    case Letter::Dx3: return "d3";
    case Letter::O12: return "O12";
    case Letter::O13: return "O13";
    case Letter::O23: return "O23";
    case Letter::O01: return "O01";
    case Letter::O02: return "O02";
    case Letter::O03: return "O03";
    case Letter::Dy: return "dy";
  }
  return "?";
}

std::string word_name(const VectorFieldWord& w) {
  if (w.letters.empty()) return "id";
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += ".";
    s += letter_name(w.letters[i]);
  }
  return s;
}

Jet apply_letter(const Jet& f, Letter l, double t, const Vec3& x) {
  switch (l) {
    case Letter::Dt: return f.derivative(0);
    case Letter::Dx1: return f.derivative(1);
    case Letter::Dx2: return f.derivative(2);
    case Letter::Dx3: return f.derivative(3);
    case Letter::O12:
      return f.derivative(2).affine_mul(x[0], 1) - f.derivative(1).affine_mul(x[1], 2);
    case Letter::O13:
      return f.derivative(3).affine_mul(x[0], 1) - f.derivative(1).affine_mul(x[2], 3);
    case Letter::O23:
      return f.derivative(3).affine_mul(x[1], 2) - f.derivative(2).affine_mul(x[2], 3);
    case Letter::O01:
      return f.derivative(0).affine_mul(x[0], 1) + f.derivative(1).affine_mul(t, 0);
    case Letter::O02:
      return f.derivative(0).affine_mul(x[1], 2) + f.derivative(2).affine_mul(t, 0);
    case Letter::O03:
      return f.derivative(0).affine_mul(x[2], 3) + f.derivative(3).affine_mul(t, 0);
    case Letter::Dy:
      throw std::invalid_argument("apply_letter: d_y is only legal on waveguide fields");
  }
  throw std::invalid_argument("apply_letter: unknown letter");
}

WordList enumerate_words(const std::vector<Letter>& alphabet, std::size_t max_len) {
  WordList wl;
  wl.words.push_back({});
  wl.parent.push_back(0);
  wl.step.push_back(Letter::Dt);  // unused for the empty word
  std::size_t level_begin = 0, level_end = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t next_begin = wl.words.size();
    for (std::size_t p = level_begin; p < level_end; ++p) {
      for (Letter l : alphabet) {
        VectorFieldWord w = wl.words[p];
        w.letters.push_back(l);
        wl.words.push_back(std::move(w));
        wl.parent.push_back(p);
        wl.step.push_back(l);
      }
    }
    level_begin = next_begin;
    level_end = wl.words.size();
  }
  return wl;
}

}  // namespace wg
