#include "underlay/toml_lite.hpp"

#include <cctype>
#include <charconv>

namespace underlay::toml_lite {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && in_string) {
      ++i;
    } else if (s[i] == '"') {
      in_string = !in_string;
    } else if (s[i] == '#' && !in_string) {
      return s.substr(0, i);
    }
  }
  return s;
}

bool is_bare_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

bool is_table_name(std::string_view k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = k.find('.', start);
    if (!is_bare_key(k.substr(start, dot - start))) return false;
    if (dot == std::string_view::npos) return true;
    start = dot + 1;
  }
}

// Net bracket depth outside strings.
int bracket_balance(std::string_view s) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_string && s[i] == '\\') {
      ++i;
    } else if (s[i] == '"') {
      in_string = !in_string;
    } else if (!in_string && s[i] == '[') {
      ++depth;
    } else if (!in_string && s[i] == ']') {
      --depth;
    }
  }
  return depth;
}

class ValueParser {
 public:
  ValueParser(std::string_view text, int line) : text_(text), line_(line) {}

  Value parse_all() {
    Value v = parse_value();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing characters '" + std::string(text_.substr(pos_)) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Value parse_value() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    const char c = text_[pos_];
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return make(true);
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return make(false);
    }
    return parse_number();
  }

  template <typename T>
  Value make(T x) {
    Value v;
    v.data = std::move(x);
    v.line = line_;
    return v;
  }

  Value parse_string() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_++];
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '\\': c = '\\'; break;
          case '"': c = '"'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      out.push_back(c);
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return make(std::move(out));
  }

  Value parse_array() {
    ++pos_;
    Value::Array items;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated array");
      if (text_[pos_] == ']') {
        ++pos_;
        break;
      }
      items.push_back(parse_value());
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
      } else if (pos_ < text_.size() && text_[pos_] != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    return make(std::move(items));
  }

  Value parse_number() {
    std::size_t end = pos_;
    while (end < text_.size() && text_[end] != ',' && text_[end] != ']' &&
           !std::isspace(static_cast<unsigned char>(text_[end]))) {
      ++end;
    }
    std::string token(text_.substr(pos_, end - pos_));
    std::string digits;
    for (char ch : token) {
      if (ch != '_') digits.push_back(ch);
    }
    const char* first = digits.c_str();
    if (!digits.empty() && digits.front() == '+') ++first;
    double x = 0.0;
    const char* last = digits.c_str() + digits.size();
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (digits.empty() || ec != std::errc() || ptr != last) fail("invalid value '" + token + "'");
    pos_ = end;
    Value v = make(x);
    v.integral = digits.find_first_of(".eEn") == std::string::npos;
    v.token = digits;
    return v;
  }

  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

const Value* Table::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

Document parse(std::string_view text) {
  Document doc;
  doc.tables[""].name = "";
  Table* current = &doc.tables[""];

  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string_view line = trim(strip_comment(lines[i]));
    if (line.empty()) continue;

    if (line.starts_with("[[")) {
      if (!line.ends_with("]]")) throw ParseError(line_no, "malformed array-of-tables header");
      const std::string name(trim(line.substr(2, line.size() - 4)));
      if (!is_table_name(name)) throw ParseError(line_no, "invalid table name '" + name + "'");
      if (doc.tables.count(name)) throw ParseError(line_no, "'" + name + "' already defined as a table");
      auto& list = doc.arrays[name];
      list.push_back(Table{name, line_no, {}});
      current = &list.back();
      continue;
    }
    if (line.starts_with("[")) {
      if (!line.ends_with("]")) throw ParseError(line_no, "malformed table header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!is_table_name(name)) throw ParseError(line_no, "invalid table name '" + name + "'");
      if (doc.tables.count(name) || doc.arrays.count(name)) {
        throw ParseError(line_no, "table '" + name + "' defined twice");
      }
      current = &doc.tables[name];
      current->name = name;
      current->line = line_no;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (!is_bare_key(key)) throw ParseError(line_no, "invalid key '" + key + "'");
    if (current->find(key)) throw ParseError(line_no, "duplicate key '" + key + "'");

    std::string value_text(trim(line.substr(eq + 1)));
    int depth = bracket_balance(value_text);
    while (depth > 0 && i + 1 < lines.size()) {
      ++i;
      const std::string_view more = trim(strip_comment(lines[i]));
      value_text.push_back(' ');
      value_text.append(more);
      depth = bracket_balance(value_text);
    }
    if (depth != 0) throw ParseError(line_no, "unbalanced brackets in value of '" + key + "'");
    current->entries.emplace_back(key, ValueParser(value_text, line_no).parse_all());
  }
  return doc;
}

}  // namespace underlay::toml_lite
