#include "mage/report.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "mage/errors.hpp"

namespace mage {

Report::Entry::Entry(const Entry& other)
    : key(other.key),
      kind(other.kind),
      value(other.value),
      table(other.table),
      section(other.section ? std::make_unique<Report>(*other.section) : nullptr) {}

Report::Entry& Report::Entry::operator=(const Entry& other) {
  if (this != &other) *this = Entry(other);
  return *this;
}

bool operator==(const Report::Entry& a, const Report::Entry& b) {
  if (a.key != b.key || a.kind != b.kind) return false;
  switch (a.kind) {
    case Report::Kind::Value: return a.value == b.value;
    case Report::Kind::Table: return a.table == b.table;
    case Report::Kind::Section: return *a.section == *b.section;
  }
  return false;
}

Report& Report::set(std::string key, std::string value) {
  Entry e;
  e.key = std::move(key);
  e.value = std::move(value);
  entries_.push_back(std::move(e));
  return *this;
}

Report& Report::set(std::string key, Table table) {
  Entry e;
  e.key = std::move(key);
  e.kind = Kind::Table;
  e.table = std::move(table);
  entries_.push_back(std::move(e));
  return *this;
}

Report& Report::section(std::string key) {
  Entry e;
  e.key = std::move(key);
  e.kind = Kind::Section;
  e.section = std::make_unique<Report>();
  entries_.push_back(std::move(e));
  return *entries_.back().section;
}

Report& Report::add(std::string key, const Report& r) {
  Report& s = section(std::move(key));
  s = r;
  return *this;
}

const Report::Entry* Report::find(std::string_view path) const {
  auto dot = path.find('.');
  std::string_view head = path.substr(0, dot);
  for (const Entry& e : entries_) {
    if (e.key != head) continue;
    if (dot == std::string_view::npos) return &e;
    if (e.kind == Kind::Section) {
      if (const Entry* inner = e.section->find(path.substr(dot + 1))) return inner;
    }
  }
  // Keys may themselves contain dots.
  for (const Entry& e : entries_)
    if (e.key == path) return &e;
  return nullptr;
}

const std::string& Report::value(std::string_view path) const {
  const Entry* e = find(path);
  if (!e || e->kind != Kind::Value) throw std::out_of_range("no report value at " + std::string(path));
  return e->value;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\', out += c;
    else if (c == '\n')
      out += "\\n";
    else
      out += c;
  }
  return out + '"';
}

void write_structured(const Report& r, int depth, std::string& out) {
  std::string pad(2 * depth, ' ');
  for (const auto& e : r.entries()) {
    switch (e.kind) {
      case Report::Kind::Value: out += pad + e.key + " = " + quote(e.value) + "\n"; break;
      case Report::Kind::Table:
        out += pad + e.key + " = [\n";
        for (const auto& row : e.table) {
          out += pad + "  [";
          for (std::size_t i = 0; i < row.size(); ++i) out += (i ? ", " : "") + quote(row[i]);
          out += "]\n";
        }
        out += pad + "]\n";
        break;
      case Report::Kind::Section:
        out += pad + e.key + " {\n";
        write_structured(*e.section, depth + 1, out);
        out += pad + "}\n";
        break;
    }
  }
}

void write_text(const Report& r, int depth, std::string& out) {
  std::string pad(2 * depth, ' ');
  for (const auto& e : r.entries()) {
    switch (e.kind) {
      case Report::Kind::Value: out += pad + e.key + ": " + e.value + "\n"; break;
      case Report::Kind::Table: {
        out += pad + e.key + ":\n";
        std::vector<std::size_t> width;
        for (const auto& row : e.table)
          for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i) width.resize(i + 1, 0);
            width[i] = std::max(width[i], row[i].size());
          }
        for (const auto& row : e.table) {
          std::string line = pad + "  ";
          for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
          }
          out += line + "\n";
        }
        break;
      }
      case Report::Kind::Section:
        out += pad + e.key + ":\n";
        write_text(*e.section, depth + 1, out);
        break;
    }
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Report parse_block(bool nested) {
    Report r;
    while (true) {
      skip_blank_lines();
      if (pos_ >= src_.size()) {
        if (nested) fail("unterminated section");
        return r;
      }
      skip_spaces();
      if (peek() == '}') {
        if (!nested) fail("unexpected '}'");
        ++pos_;
        end_of_line();
        return r;
      }
      std::string key = parse_key();
      skip_spaces();
      if (peek() == '{') {
        ++pos_;
        end_of_line();
        r.add(key, parse_block(true));
      } else if (peek() == '=') {
        ++pos_;
        skip_spaces();
        if (peek() == '[') {
          ++pos_;
          end_of_line();
          r.set(key, parse_table());
        } else {
          std::string v = parse_string();
          end_of_line();
          r.set(key, std::move(v));
        }
      } else {
        fail("expected '=' or '{' after key");
      }
    }
  }

 private:
  Table parse_table() {
    Table t;
    while (true) {
      skip_blank_lines();
      skip_spaces();
      if (peek() == ']') {
        ++pos_;
        end_of_line();
        return t;
      }
      expect('[');
      std::vector<std::string> row;
      skip_spaces();
      if (peek() != ']') {
        while (true) {
          skip_spaces();
          row.push_back(parse_string());
          skip_spaces();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect(']');
      end_of_line();
      t.push_back(std::move(row));
    }
  }

  std::string parse_key() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                  src_[pos_] == '-' || src_[pos_] == '.'))
      ++pos_;
    if (pos_ == start) fail("expected a key");
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string parse_string() {
    expect('"');
    std::string out;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') fail("unterminated string");
      char c = src_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= src_.size()) fail("dangling escape");
        char n = src_[pos_++];
        if (n == 'n')
          out += '\n';
        else if (n == '"' || n == '\\')
          out += n;
        else
          fail("unknown escape");
      } else {
        out += c;
      }
    }
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_spaces() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r')) ++pos_;
  }
  void end_of_line() {
    skip_spaces();
    if (pos_ < src_.size() && src_[pos_] != '\n') fail("trailing characters");
    if (pos_ < src_.size()) ++pos_;
  }
  void skip_blank_lines() {
    while (pos_ < src_.size()) {
      std::size_t save = pos_;
      skip_spaces();
      if (peek() == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      }
      if (peek() == '\n') {
        ++pos_;
        continue;
      }
      if (pos_ >= src_.size()) return;
      pos_ = save;
      return;
    }
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("report: " + what, pos_); }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Report::structured() const {
  std::string out;
  write_structured(*this, 0, out);
  return out;
}

std::string Report::text() const {
  std::string out;
  write_text(*this, 0, out);
  return out;
}

Report Report::parse(std::string_view src) { return Parser(src).parse_block(false); }

}  // namespace mage
