#pragma once

#include "bansync/configuration.hpp"
#include "bansync/network.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bansync {

/// Boolean expression over x0, x1, ... with `!`, `&`, `^`, `|`, parentheses
/// and the literals 0/1. Precedence is ! > & > ^ >| and binary operators are
/// left-associative.
class Expression {
 public:
  /// Parses `text`. Error positions are reported relative to `line` and
  /// `column` (the position of text[0] in its source).
  static Expression parse(std::string_view text, int line = 1, int column = 1);

  bool evaluate(State x) const;
  /// Highest variable index used, or -1 for a constant expression.
  int max_variable() const noexcept { return max_variable_; }
  /// Source position of the first occurrence of the highest variable.
  int max_variable_column() const noexcept { return max_variable_column_; }

 private:
  enum class Op : std::uint8_t { Constant, Variable, Not, And, Xor, Or };
  struct Node {
    Op op;
    int left = -1;
    int right = -1;
    int value = 0;  // literal value or variable index
  };

  bool eval_node(int id, State x) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  int max_variable_ = -1;
  int max_variable_column_ = 0;

  friend class ExpressionParser;
};

/// Canonicalizes one definition per automaton into truth tables.
/// Throws InputError when a definition references x_k with k >= n.
Network build_network(int n, const std::vector<std::string>& definitions);

/// Parses the network text format:
///   n = <integer>           (optional)
///   <index>: <expression>   (one per automaton)
/// `#` starts a comment. Throws ParseError with line/column on failure.
Network parse_network(std::string_view text);

Network load_network(const std::filesystem::path& path);

/// Writes a network in the text format, one disjunctive normal form per
/// automaton. parse_network(format_network(net)) == net.
std::string format_network(const Network& net);
/// f_i as a disjunction of minterms, or the constant 0 / 1.
std::string format_function(const Network& net, int i);

}  // namespace bansync
