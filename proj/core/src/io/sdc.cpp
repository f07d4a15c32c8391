#include <cctype>

#include "pdesk/io/io.hpp"

namespace pdesk::io {

namespace {

// TCL-flavored token stream: whitespace-separated with [ ] { } broken out,
// '#' comments, backslash line continuation.
std::vector<std::pair<std::string, int>> sdc_tokens(const std::string& text) {
  std::vector<std::pair<std::string, int>> toks;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\\' && i + 1 < text.size() && text[i + 1] == '\n') {
      i += 2;
      ++line;
      continue;
    }
    if (c == '[' || c == ']' || c == '{' || c == '}') {
      toks.push_back({std::string(1, c), line});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '[' && text[i] != ']' && text[i] != '{' && text[i] != '}')
      ++i;
    toks.push_back({text.substr(start, i - start), line});
  }
  return toks;
}

struct SdcParser {
  std::vector<std::pair<std::string, int>> toks;
  std::size_t pos = 0;
  Log& log;
  SdcConstraints sdc;

  SdcParser(const std::string& text, Log& log) : toks(sdc_tokens(text)), log(log) {}

  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const {
    static const std::string kEof = "<eof>";
    return done() ? kEof : toks[pos].first;
  }
  std::string next() {
    if (done()) fail("unexpected end of file");
    return toks[pos++].first;
  }
  int line() const { return done() ? (toks.empty() ? 1 : toks.back().second) : toks[pos].second; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, "sdc:" + std::to_string(line()) + ": " + msg);
  }

  double to_double(const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail("expected a number, got '" + s + "'");
    }
  }

  // [get_ports x], [get_ports {a b}], [get_pins ...], [current_design],
  // [all_clocks]. Returns the referenced names (empty for design-level).
  std::vector<std::string> bracket_expr() {
    expect("[");
    const std::string what = next();
    std::vector<std::string> names;
    if (what == "current_design" || what == "all_clocks") {
      expect("]");
      return names;
    }
    if (what != "get_ports" && what != "get_pins" && what != "get_clocks")
      fail("unsupported object query '" + what + "'");
    if (peek() == "{") {
      next();
      while (peek() != "}") names.push_back(next());
      next();
    } else {
      names.push_back(next());
    }
    expect("]");
    return names;
  }

  void expect(const std::string& s) {
    const std::string got = next();
    if (got != s) fail("expected '" + s + "', got '" + got + "'");
  }

  // Generic command tail: options (-name value | flags) and positional
  // arguments (numbers or bracket lists), in any order.
  struct Args {
    std::vector<std::pair<std::string, std::string>> options;  // -opt value ("" for flags)
    std::vector<double> numbers;
    std::vector<std::vector<std::string>> targets;

    const std::string* option(const std::string& name) const {
      for (const auto& [k, v] : options)
        if (k == name) return &v;
      return nullptr;
    }
  };

  Args command_tail(const std::string& cmd) {
    Args args;
    while (!done()) {
      const std::string& t = peek();
      if (t == "[") {
        args.targets.push_back(bracket_expr());
      } else if (!t.empty() && t[0] == '-' && t.size() > 1 &&
                 !std::isdigit(static_cast<unsigned char>(t[1])) && t[1] != '.') {
        const std::string opt = next();
        if (opt == "-name" || opt == "-clock" || opt == "-period") {
          args.options.push_back({opt, next()});
        } else if (opt == "-max" || opt == "-min" || opt == "-rise" || opt == "-fall" ||
                   opt == "-add_delay") {
          args.options.push_back({opt, ""});
        } else {
          log.warn("sdc: " + cmd + ": ignoring option " + opt);
          // a value may follow; swallow it when it is not a new clause
          if (!done() && peek() != "[" && peek()[0] != '-') next();
        }
      } else if (!t.empty() &&
                 (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.' || t[0] == '-')) {
        args.numbers.push_back(to_double(next()));
      } else {
        break;  // next command
      }
    }
    return args;
  }

  SdcConstraints run() {
    while (!done()) {
      const std::string cmd = next();
      if (cmd == "create_clock") {
        Args args = command_tail(cmd);
        SdcConstraints::Clock clk;
        if (const std::string* p = args.option("-period")) clk.period_ns = to_double(*p);
        else if (!args.numbers.empty()) clk.period_ns = args.numbers[0];
        else fail("create_clock requires -period");
        if (clk.period_ns <= 0) fail("clock period must be positive");
        if (!args.targets.empty() && !args.targets[0].empty())
          clk.source_port = args.targets[0][0];
        if (const std::string* n = args.option("-name")) clk.name = *n;
        else if (!clk.source_port.empty()) clk.name = clk.source_port;
        else fail("create_clock requires a source port or -name");
        sdc.clocks.push_back(clk);
      } else if (cmd == "set_input_delay" || cmd == "set_output_delay") {
        Args args = command_tail(cmd);
        if (args.numbers.empty()) fail(cmd + " requires a delay value");
        SdcConstraints::PortDelay pd;
        pd.delay_ns = args.numbers[0];
        if (const std::string* c = args.option("-clock")) pd.clock = *c;
        if (args.targets.empty()) fail(cmd + " requires target ports");
        for (const auto& t : args.targets)
          for (const auto& name : t) {
            pd.port = name;
            (cmd == "set_input_delay" ? sdc.input_delays : sdc.output_delays).push_back(pd);
          }
      } else if (cmd == "set_load") {
        Args args = command_tail(cmd);
        if (args.numbers.empty() || args.targets.empty()) fail("set_load requires value and ports");
        for (const auto& t : args.targets)
          for (const auto& name : t)
            // values in library cap units (pF) -> fF
            sdc.port_loads.push_back({name, args.numbers[0] * 1000.0});
      } else if (cmd == "set_max_transition") {
        Args args = command_tail(cmd);
        if (args.numbers.empty()) fail("set_max_transition requires a value");
        sdc.max_transition_ns = args.numbers[0];
      } else if (cmd == "set_max_capacitance") {
        Args args = command_tail(cmd);
        if (args.numbers.empty()) fail("set_max_capacitance requires a value");
        sdc.max_capacitance_ff = args.numbers[0] * 1000.0;
      } else if (cmd == "set_units" || cmd == "current_design") {
        command_tail(cmd);  // accepted, no effect
      } else {
        throw Error(ErrorCode::UnsupportedCommand, cmd);
      }
    }
    return sdc;
  }
};

}  // namespace

SdcConstraints parse_sdc(const std::string& text, Log& log) {
  SdcParser parser(text, log);
  return parser.run();
}

}  // namespace pdesk::io

namespace pdesk {

const SdcConstraints::Clock* SdcConstraints::find_clock(const std::string& name) const {
  for (const auto& c : clocks)
    if (c.name == name) return &c;
  return nullptr;
}

double SdcConstraints::input_delay(const std::string& port) const {
  for (const auto& d : input_delays)
    if (d.port == port) return d.delay_ns;
  return 0.0;
}

double SdcConstraints::output_delay(const std::string& port) const {
  for (const auto& d : output_delays)
    if (d.port == port) return d.delay_ns;
  return 0.0;
}

double SdcConstraints::port_load(const std::string& port) const {
  for (const auto& l : port_loads)
    if (l.port == port) return l.load_ff;
  return 0.0;
}

}  // namespace pdesk
