// SPDX-License-Identifier: Apache-2.0
#include "specsense/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace specsense {

const std::vector<ConfigNode> ConfigNode::kNoBlocks{};

namespace {

struct Token {
  enum class Kind { ident, value, equals, open_brace, close_brace, end };
  Kind kind = Kind::end;
  std::string text;
  bool quoted = false;
  int line = 1;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string origin)
      : text_(text), origin_(std::move(origin)) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.line = line_;
    if (pos_ >= text_.size()) {
      tok.kind = Token::Kind::end;
      return tok;
    }
    char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      tok.kind = Token::Kind::open_brace;
      return tok;
    }
    if (c == '}') {
      ++pos_;
      tok.kind = Token::Kind::close_brace;
      return tok;
    }
    if (c == '=') {
      ++pos_;
      tok.kind = Token::Kind::equals;
      return tok;
    }
    if (c == '"') {
      ++pos_;
      std::string out;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\n') fail("unterminated string literal", tok.line);
        out.push_back(text_[pos_++]);
      }
      if (pos_ >= text_.size()) fail("unterminated string literal", tok.line);
      ++pos_;  // closing quote
      tok.kind = Token::Kind::value;
      tok.text = std::move(out);
      tok.quoted = true;
      return tok;
    }
    if (is_token_char(c)) {
      std::string out;
      while (pos_ < text_.size() && is_token_char(text_[pos_]))
        out.push_back(text_[pos_++]);
      tok.kind = Token::Kind::ident;  // re-classified by the parser
      tok.text = std::move(out);
      return tok;
    }
    fail(std::string("unexpected character '") + c + "'", line_);
  }

  [[noreturn]] void fail(const std::string& message, int line) const {
    throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + message);
  }

 private:
  static bool is_token_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '.' || c == '-' || c == '+' || c == '*' || c == '/';
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string origin_;
  size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string origin)
      : lexer_(text, origin), origin_(std::move(origin)) {
    advance();
  }

  void parse_entries(ConfigNode& node, bool top_level);

  Lexer lexer_;
  std::string origin_;
  Token current_;

  void advance() { current_ = lexer_.next(); }
};

}  // namespace

// Definitions below need access to ConfigNode internals, so the parse body
// lives in a member helper.
struct ConfigNodeBuilder {
  static void add_scalar(ConfigNode& node, const std::string& key,
                         std::string raw, bool quoted, int line) {
    auto [it, inserted] = node.scalars_.emplace(
        key, ConfigNode::Scalar{std::move(raw), quoted, line});
    if (!inserted)
      throw ConfigError(node.origin_ + ":" + std::to_string(line) +
                        ": duplicate field '" + key + "'");
  }
  static ConfigNode& add_block(ConfigNode& node, const std::string& key,
                               int line) {
    auto& vec = node.blocks_[key];
    vec.emplace_back();
    vec.back().origin_ = node.origin_;
    vec.back().line_ = line;
    return vec.back();
  }
};

namespace {

void Parser::parse_entries(ConfigNode& node, bool top_level) {
  for (;;) {
    if (current_.kind == Token::Kind::end) {
      if (!top_level) lexer_.fail("missing '}'", current_.line);
      return;
    }
    if (current_.kind == Token::Kind::close_brace) {
      if (top_level) lexer_.fail("unmatched '}'", current_.line);
      advance();
      return;
    }
    if (current_.kind != Token::Kind::ident)
      lexer_.fail("expected a field name", current_.line);
    std::string key = current_.text;
    int key_line = current_.line;
    advance();
    if (current_.kind == Token::Kind::equals) {
      advance();
      if (current_.kind != Token::Kind::ident &&
          current_.kind != Token::Kind::value)
        lexer_.fail("expected a value after '='", current_.line);
      ConfigNodeBuilder::add_scalar(node, key, current_.text, current_.quoted,
                                    key_line);
      advance();
    } else if (current_.kind == Token::Kind::open_brace) {
      advance();
      ConfigNode& child = ConfigNodeBuilder::add_block(node, key, key_line);
      parse_entries(child, false);
    } else {
      lexer_.fail("expected '=' or '{' after '" + key + "'", key_line);
    }
  }
}

}  // namespace

ConfigNode ConfigNode::parse_string(std::string_view text, std::string origin) {
  ConfigNode root;
  root.origin_ = origin;
  Parser parser(text, std::move(origin));
  parser.parse_entries(root, true);
  return root;
}

ConfigNode ConfigNode::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path);
}

bool ConfigNode::has(const std::string& key) const {
  return scalars_.count(key) > 0 || blocks_.count(key) > 0;
}

const ConfigNode::Scalar& ConfigNode::find_scalar(
    const std::string& key) const {
  auto it = scalars_.find(key);
  if (it == scalars_.end())
    fail("missing required field '" + key + "'", line_);
  consumed_.insert(key);
  return it->second;
}

void ConfigNode::fail(const std::string& message, int line) const {
  throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + message);
}

double ConfigNode::get_double(const std::string& key) const {
  const Scalar& s = find_scalar(key);
  const char* begin = s.raw.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail("field '" + key + "' is not a number: '" + s.raw + "'", s.line);
  return value;
}

double ConfigNode::get_double(const std::string& key, double fallback) const {
  return scalars_.count(key) ? get_double(key) : fallback;
}

std::int64_t ConfigNode::get_int(const std::string& key) const {
  const Scalar& s = find_scalar(key);
  const char* begin = s.raw.c_str();
  char* end = nullptr;
  errno = 0;
  long long value = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0')
    fail("field '" + key + "' is not an integer: '" + s.raw + "'", s.line);
  if (errno == ERANGE)
    fail("field '" + key + "' is out of signed 64-bit range: '" + s.raw + "'",
         s.line);
  return value;
}

std::int64_t ConfigNode::get_int(const std::string& key,
                                 std::int64_t fallback) const {
  return scalars_.count(key) ? get_int(key) : fallback;
}

std::uint64_t ConfigNode::get_uint64(const std::string& key) const {
  const Scalar& s = find_scalar(key);
  const char* begin = s.raw.c_str();
  char* end = nullptr;
  errno = 0;
  unsigned long long value = std::strtoull(begin, &end, 10);
  // strtoull silently wraps negative input, so reject the sign up front
  if (end == begin || *end != '\0' || s.raw.front() == '-')
    fail("field '" + key + "' is not an unsigned integer: '" + s.raw + "'",
         s.line);
  if (errno == ERANGE)
    fail("field '" + key + "' is out of unsigned 64-bit range: '" + s.raw +
             "'",
         s.line);
  return value;
}

std::uint64_t ConfigNode::get_uint64(const std::string& key,
                                     std::uint64_t fallback) const {
  return scalars_.count(key) ? get_uint64(key) : fallback;
}

bool ConfigNode::get_bool(const std::string& key) const {
  const Scalar& s = find_scalar(key);
  if (s.raw == "true") return true;
  if (s.raw == "false") return false;
  fail("field '" + key + "' must be true or false", s.line);
}

bool ConfigNode::get_bool(const std::string& key, bool fallback) const {
  return scalars_.count(key) ? get_bool(key) : fallback;
}

std::string ConfigNode::get_string(const std::string& key) const {
  return find_scalar(key).raw;
}

std::string ConfigNode::get_string(const std::string& key,
                                   const std::string& fallback) const {
  return scalars_.count(key) ? get_string(key) : fallback;
}

const std::vector<ConfigNode>& ConfigNode::blocks(
    const std::string& key) const {
  consumed_.insert(key);
  auto it = blocks_.find(key);
  return it == blocks_.end() ? kNoBlocks : it->second;
}

const ConfigNode& ConfigNode::block(const std::string& key) const {
  const auto& all = blocks(key);
  if (all.empty()) fail("missing required block '" + key + "'", line_);
  if (all.size() > 1)
    fail("block '" + key + "' may appear only once", all[1].line_);
  return all.front();
}

const ConfigNode* ConfigNode::optional_block(const std::string& key) const {
  const auto& all = blocks(key);
  if (all.empty()) return nullptr;
  if (all.size() > 1)
    fail("block '" + key + "' may appear only once", all[1].line_);
  return &all.front();
}

void ConfigNode::collect_unconsumed(const std::string& prefix,
                                    std::vector<std::string>& out) const {
  for (const auto& [key, scalar] : scalars_)
    if (!consumed_.count(key))
      out.push_back(origin_ + ":" + std::to_string(scalar.line) + ": " +
                    prefix + key);
  for (const auto& [key, nodes] : blocks_) {
    if (!consumed_.count(key)) {
      out.push_back(origin_ + ":" + std::to_string(nodes.front().line_) +
                    ": " + prefix + key);
      continue;
    }
    for (const ConfigNode& child : nodes)
      child.collect_unconsumed(prefix + key + ".", out);
  }
}

void ConfigNode::require_all_consumed() const {
  std::vector<std::string> unknown;
  collect_unconsumed("", unknown);
  if (unknown.empty()) return;
  std::string message = "unknown field(s):";
  for (const auto& entry : unknown) message += "\n  " + entry;
  throw ConfigError(message);
}

}  // namespace specsense
