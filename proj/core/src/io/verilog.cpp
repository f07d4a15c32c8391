#include <cctype>
#include <unordered_set>

#include "pdesk/io/io.hpp"

namespace pdesk::io {

namespace {

// Gate-level structural subset. No vectors, no behavioral constructs, no
// positional connections.
class VerilogParser {
 public:
  VerilogParser(const std::string& text, Log& log) : text_(text), log_(log) { advance(); }

  NetlistAST run() {
    NetlistAST ast;
    expect_kw("module");
    ast.module_name = take_ident();
    expect("(");
    while (tok_ != ")") {
      if (tok_.empty()) fail("unterminated module port list");
      if (tok_ != ",") {
        // header may be ANSI-free: names only
        ast.ports.push_back({take_ident(), PinDir::Input});
        continue;
      }
      advance();
    }
    expect(")");
    expect(";");

    std::unordered_set<std::string> declared;
    for (const auto& p : ast.ports) declared.insert(p.name);

    while (tok_ != "endmodule") {
      if (tok_.empty()) fail("missing endmodule");
      if (tok_ == "input" || tok_ == "output" || tok_ == "inout") {
        const PinDir dir = tok_ == "input"    ? PinDir::Input
                           : tok_ == "output" ? PinDir::Output
                                              : PinDir::Inout;
        advance();
        if (tok_ == "[") fail("vector ports are not supported");
        for (;;) {
          const std::string name = take_ident();
          bool found = false;
          for (auto& p : ast.ports) {
            if (p.name == name) {
              p.dir = dir;
              found = true;
              break;
            }
          }
          if (!found) fail("direction declared for unknown port '" + name + "'");
          if (tok_ == ";") break;
          expect(",");
        }
        expect(";");
      } else if (tok_ == "wire") {
        advance();
        if (tok_ == "[") fail("vector wires are not supported");
        for (;;) {
          const std::string name = take_ident();
          if (!declared.count(name)) {
            ast.wires.push_back(name);
            declared.insert(name);
          }
          if (tok_ == ";") break;
          expect(",");
        }
        expect(";");
      } else if (tok_ == "assign" || tok_ == "always" || tok_ == "reg" || tok_ == "initial") {
        fail("behavioral construct '" + tok_ + "' is not supported");
      } else {
        // instantiation: MASTER name ( .pin(net), ... ) ;
        NetlistAST::InstanceDecl inst;
        inst.master = take_ident();
        inst.name = take_ident();
        expect("(");
        if (tok_ != ")" && tok_ != ".")
          throw Error(ErrorCode::PositionalConnectionUnsupported,
                      "instance '" + inst.name + "' at line " + std::to_string(line_));
        while (tok_ != ")") {
          expect(".");
          NetlistAST::Connection conn;
          conn.pin = take_ident();
          expect("(");
          conn.net = take_ident();
          expect(")");
          if (!declared.count(conn.net))
            throw Error(ErrorCode::UndeclaredWire,
                        conn.net + " (instance " + inst.name + ", line " + std::to_string(line_) + ")");
          inst.connections.push_back(std::move(conn));
          if (tok_ == ",") advance();
        }
        expect(")");
        expect(";");
        ast.instances.push_back(std::move(inst));
      }
    }
    advance();  // endmodule
    if (!tok_.empty()) fail("content after endmodule (one top module only)");
    return ast;
  }

 private:
  void advance() {
    skip_space();
    tok_.clear();
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\\' || c == '$') {
      std::size_t start = pos_;
      if (c == '\\') {  // escaped identifier runs to whitespace
        ++pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_ = text_.substr(start + 1, pos_ - start - 1);
        return;
      }
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '$'))
        ++pos_;
      tok_ = text_.substr(start, pos_ - start);
      return;
    }
    tok_ = std::string(1, c);
    ++pos_;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
      }
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
          if (text_[pos_] == '\n') ++line_;
          ++pos_;
        }
        pos_ = std::min(pos_ + 2, text_.size());
        continue;
      }
      break;
    }
  }

  std::string take_ident() {
    if (tok_.empty()) fail("unexpected end of file");
    if (!std::isalpha(static_cast<unsigned char>(tok_[0])) && tok_[0] != '_')
      fail("expected an identifier, got '" + tok_ + "'");
    std::string t = tok_;
    advance();
    return t;
  }
  void expect(const std::string& s) {
    if (tok_ != s) fail("expected '" + s + "', got '" + tok_ + "'");
    advance();
  }
  void expect_kw(const std::string& s) { expect(s); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, "netlist:" + std::to_string(line_) + ": " + msg);
  }

  const std::string& text_;
  Log& log_;
  std::string tok_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

NetlistAST parse_netlist(const std::string& text, Log& log) {
  VerilogParser parser(text, log);
  return parser.run();
}

}  // namespace pdesk::io
