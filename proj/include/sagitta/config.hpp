#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sagitta::config {

// Minimal TOML-style document: [section] tables of key = value pairs where a
// value is a bool, integer, float, quoted string, or a flat array of those.
// Comments (#) are accepted on parse and never emitted, so
// serialize(parse(serialize(doc))) == serialize(doc).
struct Value {
  using Array = std::vector<Value>;
  std::variant<bool, int64_t, double, std::string, Array> v;

  Value() : v(int64_t{0}) {}
  Value(bool b) : v(b) {}
  Value(int64_t i) : v(i) {}
  Value(int i) : v(int64_t{i}) {}
  Value(double d) : v(d) {}
  Value(const char* s) : v(std::string(s)) {}
  Value(std::string s) : v(std::move(s)) {}
  Value(Array a) : v(std::move(a)) {}

  bool as_bool() const;
  int64_t as_int() const;
  double as_double() const;  // accepts integer values too
  const std::string& as_string() const;
  const Array& as_array() const;
  std::vector<double> as_double_array() const;
};

// Section and key order is preserved so emission is deterministic.
class Document {
 public:
  void set(const std::string& section, const std::string& key, Value value);
  bool has(const std::string& section, const std::string& key) const;
  const Value& get(const std::string& section, const std::string& key) const;
  Value get_or(const std::string& section, const std::string& key,
               Value fallback) const;
  bool has_section(const std::string& section) const;
  std::vector<std::string> sections() const;
  std::vector<std::string> keys(const std::string& section) const;

  // Overlays every key of other onto this document.
  void merge_from(const Document& other);

  std::string serialize() const;
  static Document parse(const std::string& text);
  static Document load(const std::string& path);
  void save(const std::string& path) const;

 private:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, Value>> entries;
  };
  std::vector<Section> sections_;
  Section& section(const std::string& name);
  const Section* find_section(const std::string& name) const;
};

std::string format_double(double d);

// FNV-1a over the canonical serialization; used for config hashes in run
// manifests.
uint64_t fnv1a(const std::string& data);

// Subsystem seeds are derived from the single top-level seed as
// splitmix64(seed ^ fnv1a(tag)), with tags like "env.reset", "agent.plan".
uint64_t splitmix64(uint64_t x);
uint64_t derive_seed(uint64_t root_seed, const std::string& tag);

}  // namespace sagitta::config
