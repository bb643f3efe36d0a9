#include "sagitta/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sagitta::config {

bool Value::as_bool() const {
  if (auto* b = std::get_if<bool>(&v)) return *b;
  throw std::runtime_error("config value is not a bool");
}

int64_t Value::as_int() const {
  if (auto* i = std::get_if<int64_t>(&v)) return *i;
  throw std::runtime_error("config value is not an integer");
}

double Value::as_double() const {
  if (auto* d = std::get_if<double>(&v)) return *d;
  if (auto* i = std::get_if<int64_t>(&v)) return static_cast<double>(*i);
  throw std::runtime_error("config value is not a number");
}

const std::string& Value::as_string() const {
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  throw std::runtime_error("config value is not a string");
}

const Value::Array& Value::as_array() const {
  if (auto* a = std::get_if<Array>(&v)) return *a;
  throw std::runtime_error("config value is not an array");
}

std::vector<double> Value::as_double_array() const {
  std::vector<double> out;
  for (const Value& e : as_array()) out.push_back(e.as_double());
  return out;
}

std::string format_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  std::string s(buf);
  // Keep the float/integer distinction stable across round trips.
  if (s.find_first_of(".eEnif") == std::string::npos) s += ".0";
  return s;
}

namespace {

std::string escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_value(const Value& val) {
  if (auto* b = std::get_if<bool>(&val.v)) return *b ? "true" : "false";
  if (auto* i = std::get_if<int64_t>(&val.v)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&val.v)) return format_double(*d);
  if (auto* s = std::get_if<std::string>(&val.v)) return escape(*s);
  const auto& arr = std::get<Value::Array>(val.v);
  std::string out = "[";
  for (size_t i = 0; i < arr.size(); ++i) {
    if (i) out += ", ";
    out += emit_value(arr[i]);
  }
  out += "]";
  return out;
}

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void advance() {
    if (text[pos] == '\n') ++line;
    ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("config parse error at line " +
                             std::to_string(line) + ": " + msg);
  }
  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) advance();
  }
};

Value parse_scalar(Cursor& c);

Value parse_value(Cursor& c) {
  c.skip_inline_ws();
  if (c.eof()) c.fail("expected a value");
  if (c.peek() == '[') {
    c.advance();
    Value::Array arr;
    while (true) {
      c.skip_inline_ws();
      if (c.eof()) c.fail("unterminated array");
      if (c.peek() == ']') {
        c.advance();
        break;
      }
      arr.push_back(parse_scalar(c));
      c.skip_inline_ws();
      if (!c.eof() && c.peek() == ',') c.advance();
    }
    return Value(std::move(arr));
  }
  return parse_scalar(c);
}

Value parse_scalar(Cursor& c) {
  c.skip_inline_ws();
  if (c.eof()) c.fail("expected a scalar");
  if (c.peek() == '"') {
    c.advance();
    std::string s;
    while (!c.eof() && c.peek() != '"') {
      if (c.peek() == '\\') {
        c.advance();
        if (c.eof()) c.fail("dangling escape");
      }
      s += c.peek();
      c.advance();
    }
    if (c.eof()) c.fail("unterminated string");
    c.advance();
    return Value(std::move(s));
  }
  std::string tok;
  while (!c.eof() && c.peek() != '\n' && c.peek() != ',' && c.peek() != ']' &&
         c.peek() != '#' && c.peek() != ' ' && c.peek() != '\t')
  {
    tok += c.peek();
    c.advance();
  }
  if (tok.empty()) c.fail("empty value");
  if (tok == "true") return Value(true);
  if (tok == "false") return Value(false);
  const bool floaty =
      tok.find_first_of(".eE") != std::string::npos || tok == "inf" ||
      tok == "-inf" || tok == "nan" || tok == "-nan";
  errno = 0;
  char* end = nullptr;
  if (!floaty) {
    const long long i = std::strtoll(tok.c_str(), &end, 10);
    if (errno == 0 && end && *end == '\0') return Value(int64_t{i});
  }
  const double d = std::strtod(tok.c_str(), &end);
  if (end && *end == '\0') return Value(d);
  c.fail("cannot parse value: " + tok);
}

}  // namespace

Document::Section& Document::section(const std::string& name) {
  for (Section& s : sections_)
    if (s.name == name) return s;
  sections_.push_back(Section{name, {}});
  return sections_.back();
}

const Document::Section* Document::find_section(const std::string& name) const {
  for (const Section& s : sections_)
    if (s.name == name) return &s;
  return nullptr;
}

void Document::set(const std::string& sec, const std::string& key, Value value) {
  Section& s = section(sec);
  for (auto& [k, v] : s.entries) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  s.entries.emplace_back(key, std::move(value));
}

bool Document::has(const std::string& sec, const std::string& key) const {
  const Section* s = find_section(sec);
  if (!s) return false;
  for (const auto& [k, v] : s->entries)
    if (k == key) return true;
  return false;
}

const Value& Document::get(const std::string& sec, const std::string& key) const {
  const Section* s = find_section(sec);
  if (s)
    for (const auto& [k, v] : s->entries)
      if (k == key) return v;
  throw std::runtime_error("missing config key [" + sec + "] " + key);
}

Value Document::get_or(const std::string& sec, const std::string& key,
                       Value fallback) const {
  if (has(sec, key)) return get(sec, key);
  return fallback;
}

bool Document::has_section(const std::string& sec) const {
  return find_section(sec) != nullptr;
}

std::vector<std::string> Document::sections() const {
  std::vector<std::string> out;
  for (const Section& s : sections_) out.push_back(s.name);
  return out;
}

std::vector<std::string> Document::keys(const std::string& sec) const {
  std::vector<std::string> out;
  if (const Section* s = find_section(sec))
    for (const auto& [k, v] : s->entries) out.push_back(k);
  return out;
}

void Document::merge_from(const Document& other) {
  for (const std::string& sec : other.sections())
    for (const std::string& key : other.keys(sec)) set(sec, key, other.get(sec, key));
}

std::string Document::serialize() const {
  std::string out;
  for (const Section& s : sections_) {
    if (!out.empty()) out += "\n";
    out += "[" + s.name + "]\n";
    for (const auto& [k, v] : s.entries) out += k + " = " + emit_value(v) + "\n";
  }
  return out;
}

Document Document::parse(const std::string& text) {
  Document doc;
  Cursor c{text};
  std::string current;
  while (!c.eof()) {
    c.skip_inline_ws();
    if (c.eof()) break;
    const char ch = c.peek();
    if (ch == '\n') {
      c.advance();
      continue;
    }
    if (ch == '#') {
      while (!c.eof() && c.peek() != '\n') c.advance();
      continue;
    }
    if (ch == '[') {
      c.advance();
      std::string name;
      while (!c.eof() && c.peek() != ']' && c.peek() != '\n') {
        name += c.peek();
        c.advance();
      }
      if (c.eof() || c.peek() != ']') c.fail("unterminated section header");
      c.advance();
      current = name;
      doc.section(current);
      continue;
    }
    // key = value
    std::string key;
    while (!c.eof() && c.peek() != '=' && c.peek() != '\n') {
      key += c.peek();
      c.advance();
    }
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
      key.pop_back();
    if (c.eof() || c.peek() != '=') c.fail("expected '=' after key " + key);
    c.advance();
    Value v = parse_value(c);
    c.skip_inline_ws();
    if (!c.eof() && c.peek() == '#')
      while (!c.eof() && c.peek() != '\n') c.advance();
    if (!c.eof() && c.peek() != '\n') c.fail("trailing characters after value");
    if (key.empty()) c.fail("empty key");
    doc.set(current, key, std::move(v));
  }
  return doc;
}

Document Document::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Document::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  out << serialize();
}

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t root_seed, const std::string& tag) {
  return splitmix64(root_seed ^ fnv1a(tag));
}

}  // namespace sagitta::config
