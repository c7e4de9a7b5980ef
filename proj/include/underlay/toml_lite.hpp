#pragma once

// Reader for the subset of TOML used by run configurations: [table] and
// [[array-of-tables]] headers (dotted names are kept verbatim), bare keys,
// and values that are numbers, basic strings, booleans, or arrays of those.
// Arrays may span several lines. Inline tables, dates and multi-line strings
// are not supported.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace underlay::toml_lite {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct Value {
  using Array = std::vector<Value>;
  std::variant<double, std::string, bool, Array> data;
  bool integral = false;  // number written without fraction or exponent
  std::string token;      // source text of a number, underscores removed
  int line = 0;

  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
};

struct Table {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, Value>> entries;  // file order

  const Value* find(std::string_view key) const;
};

struct Document {
  std::map<std::string, Table> tables;                // "" holds keys before any header
  std::map<std::string, std::vector<Table>> arrays;   // [[name]] blocks in file order
};

Document parse(std::string_view text);

}  // namespace underlay::toml_lite
