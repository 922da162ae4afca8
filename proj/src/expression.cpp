#include "bansync/expression.hpp"

#include "bansync/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace bansync {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, int line, int column, Expression& out)
      : text_(text), line_(line), column_(column), out_(out) {}

  void run() {
    out_.root_ = parse_or();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_ + static_cast<int>(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int add(Op op, int left, int right, int value = 0) {
    out_.nodes_.push_back({op, left, right, value});
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int parse_or() {
    int left = parse_xor();
    while (accept('|')) left = add(Op::Or, left, parse_xor());
    return left;
  }

  int parse_xor() {
    int left = parse_and();
    while (accept('^')) left = add(Op::Xor, left, parse_and());
    return left;
  }

  int parse_and() {
    int left = parse_unary();
    while (accept('&')) left = add(Op::And, left, parse_unary());
    return left;
  }

  int parse_unary() {
    if (accept('!')) return add(Op::Not, parse_unary(), -1);
    return parse_primary();
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = parse_or();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return add(Op::Constant, -1, -1, c - '0');
    }
    if (c == 'x') {
      const std::size_t start = pos_++;
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits) {
        pos_ = start;
        fail("expected a variable index after 'x'");
      }
      int index = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, index);
      if (ec != std::errc{} || index >= kHardMaxSize) {
        pos_ = start;
        fail("variable index out of range");
      }
      if (index > out_.max_variable_) {
        out_.max_variable_ = index;
        out_.max_variable_column_ = column_ + static_cast<int>(start);
      }
      return add(Op::Variable, -1, -1, index);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
  Expression& out_;
};

Expression Expression::parse(std::string_view text, int line, int column) {
  Expression e;
  ExpressionParser(text, line, column, e).run();
  return e;
}

bool Expression::eval_node(int id, State x) const {
  const Node& node = nodes_[static_cast<std::size_t>(id)];
  switch (node.op) {
    case Op::Constant:
      return node.value != 0;
    case Op::Variable:
      return (x >> node.value) & 1u;
    case Op::Not:
      return !eval_node(node.left, x);
    case Op::And:
      return eval_node(node.left, x) && eval_node(node.right, x);
    case Op::Xor:
      return eval_node(node.left, x) != eval_node(node.right, x);
    case Op::Or:
      return eval_node(node.left, x) || eval_node(node.right, x);
  }
  return false;
}

bool Expression::evaluate(State x) const { return eval_node(root_, x); }

namespace {

Network tabulate(int n, const std::vector<Expression>& exprs) {
  std::vector<State> image(std::size_t{1} << n, 0);
  for (State x = 0; x < image.size(); ++x) {
    State v = 0;
    for (int i = 0; i < n; ++i) {
      if (exprs[static_cast<std::size_t>(i)].evaluate(x)) v |= automaton_bit(i);
    }
    image[x] = v;
  }
  return Network::from_image(n, std::move(image));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Network build_network(int n, const std::vector<std::string>& definitions) {
  if (n < 1) throw InputError("a network needs at least one automaton");
  if (n > kHardMaxSize) throw SizeCeilingError("network", n, kHardMaxSize);
  if (definitions.size() != static_cast<std::size_t>(n)) {
    throw InputError("expected " + std::to_string(n) + " definitions, got " +
                     std::to_string(definitions.size()));
  }
  std::vector<Expression> exprs;
  exprs.reserve(definitions.size());
  for (std::size_t i = 0; i < definitions.size(); ++i) {
    exprs.push_back(Expression::parse(definitions[i], static_cast<int>(i) + 1, 1));
    if (exprs.back().max_variable() >= n) {
      throw ParseError("variable x" + std::to_string(exprs.back().max_variable()) +
                           " outside a network of size " + std::to_string(n),
                       static_cast<int>(i) + 1, exprs.back().max_variable_column());
    }
  }
  return tabulate(n, exprs);
}

Network parse_network(std::string_view text) {
  struct Definition {
    Expression expr;
    int line;
  };
  std::optional<int> declared_n;
  int n_line = 0;
  std::vector<std::optional<Definition>> defs;
  int highest = -1;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const int line_col = static_cast<int>(line.data() - raw.data()) + 1;

    if (line.front() == 'n') {
      std::string_view rest = trim(line.substr(1));
      if (rest.empty() || rest.front() != '=') throw ParseError("expected 'n = <size>'", line_no, line_col);
      rest = trim(rest.substr(1));
      int value = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
      if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
        throw ParseError("expected an integer size", line_no,
                         static_cast<int>(rest.data() - raw.data()) + 1);
      }
      if (declared_n) throw ParseError("size declared twice", line_no, line_col);
      if (value < 1) throw ParseError("network size must be at least 1", line_no, line_col);
      if (value > kHardMaxSize) throw SizeCeilingError("network", value, kHardMaxSize);
      declared_n = value;
      n_line = line_no;
      if (end == text.size()) break;
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected '<index>: <expression>'", line_no, line_col);
    const std::string_view index_text = trim(line.substr(0, colon));
    int index = 0;
    auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (index_text.empty() || ec != std::errc{} || ptr != index_text.data() + index_text.size() ||
        index < 0) {
      throw ParseError("invalid automaton index '" + std::string(index_text) + "'", line_no, line_col);
    }
    if (index >= kHardMaxSize) throw SizeCeilingError("network", index + 1, kHardMaxSize);
    const std::string_view body = line.substr(colon + 1);
    const int body_col = static_cast<int>(body.data() - raw.data()) + 1;
    Expression expr = Expression::parse(body, line_no, body_col);
    if (static_cast<std::size_t>(index) >= defs.size()) defs.resize(static_cast<std::size_t>(index) + 1);
    if (defs[static_cast<std::size_t>(index)]) {
      throw ParseError("automaton " + std::to_string(index) + " defined twice (first on line " +
                           std::to_string(defs[static_cast<std::size_t>(index)]->line) + ")",
                       line_no, line_col);
    }
    highest = std::max({highest, index, expr.max_variable()});
    defs[static_cast<std::size_t>(index)] = Definition{std::move(expr), line_no};
    if (end == text.size()) break;
  }

  if (highest < 0 && !declared_n) throw ParseError("no automaton definitions", line_no, 1);
  const int n = declared_n.value_or(highest + 1);
  if (n > kHardMaxSize) throw SizeCeilingError("network", n, kHardMaxSize);
  if (declared_n) {
    for (std::size_t i = 0; i < defs.size(); ++i) {
      if (!defs[i]) continue;
      if (static_cast<int>(i) >= n) {
        throw ParseError("automaton index " + std::to_string(i) + " outside a network of size " +
                             std::to_string(n) + " (declared on line " + std::to_string(n_line) + ")",
                         defs[i]->line, 1);
      }
      if (defs[i]->expr.max_variable() >= n) {
        throw ParseError("variable x" + std::to_string(defs[i]->expr.max_variable()) +
                             " outside a network of size " + std::to_string(n),
                         defs[i]->line, defs[i]->expr.max_variable_column());
      }
    }
  }
  defs.resize(static_cast<std::size_t>(n));
  std::vector<Expression> exprs;
  for (int i = 0; i < n; ++i) {
    if (!defs[static_cast<std::size_t>(i)]) {
      throw ParseError("automaton " + std::to_string(i) + " has no definition", line_no, 1);
    }
    exprs.push_back(std::move(defs[static_cast<std::size_t>(i)]->expr));
  }
  return tabulate(n, exprs);
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open network file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_network(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.reason(), e.line(), e.column());
  }
}

std::string format_function(const Network& net, int i) {
  const int n = net.size();
  std::vector<std::string> terms;
  for (State r = 0; r < net.state_count(); ++r) {
    const State x = lex_state(r, n);
    if (!net.value(i, x)) continue;
    std::string term;
    for (int j = 0; j < n; ++j) {
      if (!term.empty()) term += " & ";
      term += ((x >> j) & 1u) ? "" : "!";
      term += "x" + std::to_string(j);
    }
    terms.push_back(std::move(term));
  }
  if (terms.empty()) return "0";
  if (terms.size() == net.state_count()) return "1";
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t) out += " | ";
    out += "(" + terms[t] + ")";
  }
  return out;
}

std::string format_network(const Network& net) {
  std::ostringstream out;
  out << "n = " << net.size() << "\n";
  for (int i = 0; i < net.size(); ++i) out << i << ": " << format_function(net, i) << "\n";
  return out.str();
}

}  // namespace bansync
