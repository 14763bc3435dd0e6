#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stab/elements.hpp"

namespace stab {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

struct Instruction {
  ElementKind kind;
  std::vector<std::size_t> targets;  // qubit indices; empty for POSTSELECT
  std::string record;                // measurement record / postselect target
  std::size_t line = 0;
};

struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<Instruction> instructions;

  /// Record names in statement order, postselected ones excluded.
  std::vector<std::string> output_records() const;
};

/// Parses the line-oriented .scf format. Throws ParseError with the
/// offending line number on any lexical or semantic violation.
Circuit parse_circuit(std::string_view text);

std::string print_circuit(const Circuit& c);

}  // namespace stab
