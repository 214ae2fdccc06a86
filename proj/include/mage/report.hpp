#pragma once

// Ordered report trees and their two renderings.
//
// Structured syntax, one item per line, nesting by two-space indentation:
//
//   # comment
//   key = "value"
//   key = [
//     ["a", "b"]
//     ["c", "d"]
//   ]
//   key {
//     ...
//   }
//
// Values are double-quoted with \" \\ and \n escapes. Keys consist of
// letters, digits, '_', '-' and '.'.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace mage {

using Table = std::vector<std::vector<std::string>>;

class Report {
 public:
  enum class Kind { Value, Table, Section };

  struct Entry {
    std::string key;
    Kind kind = Kind::Value;
    std::string value;
    Table table;
    std::unique_ptr<Report> section;

    Entry() = default;
    Entry(const Entry& other);
    Entry& operator=(const Entry& other);
    Entry(Entry&&) noexcept = default;
    Entry& operator=(Entry&&) noexcept = default;
    friend bool operator==(const Entry& a, const Entry& b);
  };

  Report& set(std::string key, std::string value);
  Report& set(std::string key, Table table);
  /// Appends an empty subsection and returns it.
  Report& section(std::string key);
  /// Appends a copy of `r` as a subsection.
  Report& add(std::string key, const Report& r);

  const std::vector<Entry>& entries() const { return entries_; }
  /// First entry with this key, or nullptr. Dotted paths descend sections.
  const Entry* find(std::string_view path) const;
  /// Value at a dotted path; throws std::out_of_range if absent or not a value.
  const std::string& value(std::string_view path) const;

  std::string structured() const;
  std::string text() const;
  /// Inverse of structured(). Throws ParseError with a byte offset.
  static Report parse(std::string_view src);

  friend bool operator==(const Report& a, const Report& b) = default;

 private:
  std::vector<Entry> entries_;
};

}  // namespace mage
