#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "lsd/text/ast.hpp"

namespace lsd::text {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(Pos pos, const std::string& message);
  Pos pos() const { return pos_; }

 private:
  Pos pos_;
};

Program parse(std::string_view source);
Program parse_file(const std::string& path);

// Canonical text; parse(print(p)) == p.
std::string print(const Program& program);
std::string print_arg(const Arg& arg);

}  // namespace lsd::text
