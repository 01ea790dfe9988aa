#pragma once

#include <string>

#include "qslie/poly.hpp"

namespace qslie::wordfmt {

// Word grammar:
//   word   := "e" | letter ("." letter)*
//   letter := integer | "[" integer ("," integer)+ "]"
// with integers >= 1. "." separators keep multi-digit letters unambiguous.

std::string print_word(const Word& w);
std::string print_letter(const Letter& a);

struct ParseError : std::invalid_argument {
    ParseError(const std::string& msg, std::size_t position)
        : std::invalid_argument(msg + " at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

Word parse_word(const std::string& text);

// "p/q*word" lines in canonical term order, one per line; empty string for 0.
std::string print_poly(const Poly& p);
// "p/q*u|v" lines for tensor terms.
std::string print_tensor(const TensorPoly& t);

}  // namespace qslie::wordfmt
