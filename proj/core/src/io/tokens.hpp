#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pdesk/diag.hpp"
#include "pdesk/geom.hpp"

namespace pdesk::io {

// Whitespace-separated token stream with line tracking. '#' starts a
// comment running to end of line. Used by the LEF/DEF/SDC readers.
class Tokens {
 public:
  Tokens(const std::string& text, std::string source, char comment = '#')
      : source_(std::move(source)) {
    int line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
      const char c = text[i];
      if (c == '\n') {
        ++line;
        ++i;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      if (c == comment) {
        while (i < n && text[i] != '\n') ++i;
        continue;
      }
      std::size_t start = i;
      while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      toks_.emplace_back(text.substr(start, i - start));
      lines_.push_back(line);
    }
  }

  bool done() const { return pos_ >= toks_.size(); }
  const std::string& peek() const {
    static const std::string kEof = "<eof>";
    return done() ? kEof : toks_[pos_];
  }
  std::string next() {
    if (done()) fail("unexpected end of file");
    return toks_[pos_++];
  }
  void expect(const std::string& tok) {
    const std::string got = next();
    if (got != tok) fail("expected '" + tok + "', got '" + got + "'");
  }
  bool accept(const std::string& tok) {
    if (!done() && toks_[pos_] == tok) {
      ++pos_;
      return true;
    }
    return false;
  }
  double next_double() {
    const std::string tok = next();
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail("expected a number, got '" + tok + "'");
    }
    return 0.0;
  }
  long long next_int() {
    const std::string tok = next();
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail("expected an integer, got '" + tok + "'");
    }
    return 0;
  }
  // Micron value scaled to DBU.
  Dbu next_dbu(Dbu dbu_per_micron) {
    return static_cast<Dbu>(std::llround(next_double() * static_cast<double>(dbu_per_micron)));
  }
  // Skips everything up to and including the next ';'.
  void skip_statement() {
    while (!done() && next() != ";") {
    }
  }
  int line() const {
    if (toks_.empty()) return 1;
    return lines_[std::min(pos_, toks_.size() - 1)];
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, source_ + ":" + std::to_string(line()) + ": " + msg);
  }

 private:
  std::string source_;
  std::vector<std::string> toks_;
  std::vector<int> lines_;
  std::size_t pos_ = 0;
};

}  // namespace pdesk::io
