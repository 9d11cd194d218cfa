#pragma once

#include <string>
#include <vector>

#include "wg/jet.hpp"

namespace wg {

// The admissible vector fields.  Dt..Dx3 are the coordinate derivatives,
// Oij = x_i d_j - x_j d_i the rotations, O0k = x_k d_t + t d_k the boosts,
// and Dy the base-direction derivative (legal only on waveguide fields).
enum class Letter { Dt, Dx1, Dx2, Dx3, O12, O13, O23, O01, O02, O03, Dy };

struct VectorFieldWord {
  std::vector<Letter> letters;  // applied in sequence, letters[0] innermost

  std::size_t length() const { return letters.size(); }
  std::size_t count(Letter l) const;
};

std::string letter_name(Letter l);
std::string word_name(const VectorFieldWord& w);

// One letter applied to a jet based at (t,x); result is one order lower.
Jet apply_letter(const Jet& f, Letter l, double t, const Vec3& x);

// All words over an alphabet with length <= max_len, in graded lexicographic
// order (empty word first).  Walking this list is a prefix tree: word i>0 has
// its parent at parent[i].
struct WordList {
  std::vector<VectorFieldWord> words;
  std::vector<std::size_t> parent;
  std::vector<Letter> step;  // letter appended to parent to form word i
};

extern const std::vector<Letter> kGammaLetters;   // Gamma: d_t, d_x, rotations, boosts
extern const std::vector<Letter> kZLetters;       // Z: d_t, d_x, spatial rotations
extern const std::vector<Letter> kGammaTildeLetters;  // Gamma plus d_y

WordList enumerate_words(const std::vector<Letter>& alphabet, std::size_t max_len);

}  // namespace wg
