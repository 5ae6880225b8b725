#ifndef SUPERHOL_PARSE_HPP
#define SUPERHOL_PARSE_HPP

#include <map>
#include <string>
#include <vector>

#include "superhol/superfunction.hpp"

namespace superhol {

/// Declares which symbols a DSL string may use.
struct ParseContext {
  int num_x = 0;     // x1..xn
  int num_theta = 0; // th1..thm
  int num_eta = 0;   // eta1..etaG
  bool allow_t = false;
  bool allow_s = false;
  int num_frames = 0;              // T1..Tk; 0 forbids frame symbols
  std::vector<int> frame_parity;   // parity of each frame symbol
};

struct ParseResult {
  SuperFunction value;
  std::vector<std::string> warnings;
};

/// Frame-valued parse result: scalar + sum of components written as
/// coefficient * T^m with the coefficient kept on the left, paper style.
struct FramedParseResult {
  SuperFunction scalar;
  std::map<int, SuperFunction> frames; // 1-based frame index -> left coefficient
  std::vector<std::string> warnings;
};

/// Parses a scalar/superfunction value; frame symbols are rejected.
ParseResult parse_superfunction(const std::string& text, const ParseContext& ctx);

/// Parses a frame-valued value such as a connection column.
FramedParseResult parse_framed(const std::string& text, const ParseContext& ctx);

/// Parses a constant value (no variables, no theta) into a Grassmann element.
GrassmannElement parse_element(const std::string& text, int gens);

} // namespace superhol

#endif
