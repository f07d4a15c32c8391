#include <cctype>
#include <cstring>
#include <map>

#include "pdesk/io/io.hpp"
#include "pdesk/util.hpp"

namespace pdesk::io {

namespace {

// ---------------------------------------------------------------------------
// Generic liberty group tree: group_type (args) { attr : value ; complex(...);
// child_group (...) { ... } }
// ---------------------------------------------------------------------------

struct LibComplex {
  std::string name;
  std::vector<std::string> args;
};

struct LibGroup {
  std::string type;
  std::vector<std::string> args;
  std::map<std::string, std::string> attrs;
  std::vector<LibComplex> complexes;
  std::vector<LibGroup> children;
  int line = 0;

  const std::string* attr(const std::string& name) const {
    auto it = attrs.find(name);
    return it == attrs.end() ? nullptr : &it->second;
  }
  const LibComplex* complex_attr(const std::string& name) const {
    for (const auto& c : complexes)
      if (c.name == name) return &c;
    return nullptr;
  }
  std::vector<const LibGroup*> children_of(const std::string& type_name) const {
    std::vector<const LibGroup*> out;
    for (const auto& c : children)
      if (c.type == type_name) out.push_back(&c);
    return out;
  }
};

class LibertyLexer {
 public:
  explicit LibertyLexer(const std::string& text) : text_(text) {}

  // Token kinds: identifier/number (bare), string (quotes stripped),
  // punctuation single chars : ; , ( ) { }
  struct Token {
    std::string text;
    bool quoted = false;
    int line = 1;
  };

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    if (pos_ >= text_.size()) {
      t.text = "";
      return t;
    }
    const char c = text_[pos_];
    if (c == '"') {
      ++pos_;
      std::string out;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
          pos_ += 2;  // line continuation inside strings
          ++line_;
          continue;
        }
        if (text_[pos_] == '\n') ++line_;
        out.push_back(text_[pos_++]);
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
      t.text = out;
      t.quoted = true;
      return t;
    }
    if (std::strchr(":;,(){}", c) != nullptr) {
      ++pos_;
      t.text = std::string(1, c);
      return t;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::strchr(":;,(){}\"", text_[pos_]) == nullptr &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail(std::string("unexpected character '") + c + "'");
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, "liberty:" + std::to_string(line_) + ": " + msg);
  }

 private:
  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
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
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (pos_ < text_.size() && text_[pos_] == '\\' && pos_ + 1 < text_.size() &&
          text_[pos_ + 1] == '\n') {
        pos_ += 2;
        ++line_;
        continue;
      }
      break;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class LibertyTreeParser {
 public:
  explicit LibertyTreeParser(const std::string& text) : lexer_(text) { advance(); }

  LibGroup parse_top() {
    LibGroup g = parse_group();
    if (g.type != "library") lexer_.fail("expected a 'library' group");
    return g;
  }

 private:
  LibGroup parse_group() {
    LibGroup g;
    g.line = tok_.line;
    g.type = take();
    expect("(");
    while (tok_.text != ")") {
      if (tok_.text.empty()) lexer_.fail("unterminated group arguments");
      if (tok_.text != ",") g.args.push_back(tok_.text);
      advance();
    }
    expect(")");
    expect("{");
    while (tok_.text != "}") {
      if (tok_.text.empty()) lexer_.fail("unterminated group '" + g.type + "'");
      parse_statement(g);
    }
    expect("}");
    return g;
  }

  void parse_statement(LibGroup& g) {
    const std::string name = take();
    if (tok_.text == ":") {
      advance();
      std::string value = take();
      if (tok_.text == ";") advance();
      g.attrs[name] = value;
      return;
    }
    if (tok_.text == "(") {
      // Look ahead past the argument list to tell complex attribute from group.
      advance();
      std::vector<std::string> args;
      while (tok_.text != ")") {
        if (tok_.text.empty()) lexer_.fail("unterminated argument list for '" + name + "'");
        if (tok_.text != ",") args.push_back(tok_.text);
        advance();
      }
      expect(")");
      if (tok_.text == "{") {
        advance();
        LibGroup child;
        child.type = name;
        child.args = std::move(args);
        child.line = tok_.line;
        while (tok_.text != "}") {
          if (tok_.text.empty()) lexer_.fail("unterminated group '" + name + "'");
          parse_statement(child);
        }
        expect("}");
        g.children.push_back(std::move(child));
      } else {
        if (tok_.text == ";") advance();
        g.complexes.push_back({name, std::move(args)});
      }
      return;
    }
    lexer_.fail("expected ':' or '(' after '" + name + "'");
  }

  std::string take() {
    if (tok_.text.empty()) lexer_.fail("unexpected end of file");
    std::string t = tok_.text;
    advance();
    return t;
  }
  void expect(const std::string& s) {
    if (tok_.text != s) lexer_.fail("expected '" + s + "', got '" + tok_.text + "'");
    advance();
  }
  void advance() { tok_ = lexer_.next(); }

  LibertyLexer lexer_;
  LibertyLexer::Token tok_;
};

// ---------------------------------------------------------------------------
// Interpretation
// ---------------------------------------------------------------------------

std::vector<double> parse_number_list(const std::vector<std::string>& args, double scale) {
  std::vector<double> out;
  for (const auto& arg : args) {
    for (const auto& piece : split(arg, ',')) {
      const std::string s = trim(piece);
      if (s.empty()) continue;
      out.push_back(std::stod(s) * scale);
    }
  }
  return out;
}

struct TableTemplate {
  std::vector<double> index_1;
  std::vector<double> index_2;
  bool swap_axes = false;  // variable_1 is load, variable_2 is slew
};

struct LibertyInterp {
  TechLibrary& tech;
  Log& log;
  double time_scale = 1.0;     // to ns
  double cap_scale = 1000.0;   // to fF (default pF)
  double leak_scale = 1.0;     // to uW
  std::map<std::string, TableTemplate> templates;

  void run(const LibGroup& lib) {
    read_units(lib);
    for (const auto& child : lib.children) {
      if (child.type == "lu_table_template") read_template(child);
      else if (child.type == "cell") read_cell(child);
    }
    tech.rebuild_maps();
  }

  void read_units(const LibGroup& lib) {
    if (const std::string* v = lib.attr("time_unit")) {
      if (*v == "1ns") time_scale = 1.0;
      else if (*v == "1ps") time_scale = 1e-3;
      else if (*v == "1us") time_scale = 1e3;
      else log.warn("liberty: unrecognized time_unit '" + *v + "', assuming ns");
    }
    if (const LibComplex* c = lib.complex_attr("capacitive_load_unit")) {
      if (c->args.size() == 2) {
        const double mult = std::stod(c->args[0]);
        const std::string unit = lower(c->args[1]);
        if (unit == "pf") cap_scale = 1000.0 * mult;
        else if (unit == "ff") cap_scale = mult;
        else log.warn("liberty: unrecognized capacitive_load_unit, assuming pf");
      }
    }
    if (const std::string* v = lib.attr("leakage_power_unit")) {
      if (*v == "1uW") leak_scale = 1.0;
      else if (*v == "1nW") leak_scale = 1e-3;
      else if (*v == "1mW") leak_scale = 1e3;
      else log.warn("liberty: unrecognized leakage_power_unit '" + *v + "', assuming uW");
    }
    if (const std::string* v = lib.attr("nom_voltage")) tech.voltage = std::stod(*v);
  }

  void read_template(const LibGroup& g) {
    if (g.args.empty()) return;
    TableTemplate t;
    const std::string* v1 = g.attr("variable_1");
    t.swap_axes = v1 != nullptr && *v1 == "total_output_net_capacitance";
    if (const LibComplex* i1 = g.complex_attr("index_1"))
      t.index_1 = parse_number_list(i1->args, t.swap_axes ? cap_scale : time_scale);
    if (const LibComplex* i2 = g.complex_attr("index_2"))
      t.index_2 = parse_number_list(i2->args, t.swap_axes ? time_scale : cap_scale);
    templates[g.args[0]] = std::move(t);
  }

  // Reads one NLDM table group (cell_rise, rise_constraint, rise_power, ...).
  // kind: 0 = time values, 1 = energy values (kept as authored, fJ).
  NldmTable read_table(const LibGroup& g, int kind, const std::string& context) {
    NldmTable table;
    bool swap = false;
    if (!g.args.empty()) {
      auto it = templates.find(g.args[0]);
      if (it != templates.end()) {
        swap = it->second.swap_axes;
        table.slew_axis = swap ? it->second.index_2 : it->second.index_1;
        table.load_axis = swap ? it->second.index_1 : it->second.index_2;
      }
    }
    if (const LibComplex* i1 = g.complex_attr("index_1")) {
      auto vals = parse_number_list(i1->args, swap ? cap_scale : time_scale);
      (swap ? table.load_axis : table.slew_axis) = std::move(vals);
    }
    if (const LibComplex* i2 = g.complex_attr("index_2")) {
      auto vals = parse_number_list(i2->args, swap ? time_scale : cap_scale);
      (swap ? table.slew_axis : table.load_axis) = std::move(vals);
    }
    const LibComplex* values = g.complex_attr("values");
    if (values == nullptr)
      throw Error(ErrorCode::MissingTable, context + ": table has no values()");
    const double scale = kind == 0 ? time_scale : 1.0;
    table.values = parse_number_list(values->args, scale);
    if (table.slew_axis.empty()) table.slew_axis = {0.0};
    if (table.load_axis.empty()) table.load_axis = {0.0};
    if (swap && table.slew_axis.size() > 1 && table.load_axis.size() > 1) {
      // Stored row-major in file axis order; transpose to [slew][load].
      NldmTable fixed = table;
      const std::size_t rows = table.load_axis.size();   // file index_1
      const std::size_t cols = table.slew_axis.size();   // file index_2
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          fixed.values[j * rows + i] = table.values[i * cols + j];
      table = std::move(fixed);
    }
    if (table.values.size() != table.slew_axis.size() * table.load_axis.size())
      throw Error(ErrorCode::SyntaxError,
                  "liberty: " + context + ": values size does not match axes");
    for (const auto* axis : {&table.slew_axis, &table.load_axis})
      for (std::size_t i = 1; i < axis->size(); ++i)
        if ((*axis)[i] <= (*axis)[i - 1])
          throw Error(ErrorCode::SyntaxError, "liberty: " + context + ": axis not ascending");
    return table;
  }

  void read_cell(const LibGroup& g) {
    if (g.args.empty()) return;
    const std::string& name = g.args[0];
    int idx = -1;
    for (std::size_t i = 0; i < tech.masters.size(); ++i)
      if (tech.masters[i].name == name) idx = static_cast<int>(i);
    if (idx < 0) {
      log.warn("liberty: cell '" + name + "' has no LEF macro; created with zero size");
      CellMaster m;
      m.name = name;
      tech.masters.push_back(std::move(m));
      idx = static_cast<int>(tech.masters.size()) - 1;
    }
    CellMaster& master = tech.masters[idx];
    master.has_liberty = true;
    if (const std::string* v = g.attr("cell_leakage_power"))
      master.leakage_uw = std::stod(*v) * leak_scale;

    for (const auto* ff : g.children_of("ff")) {
      master.is_sequential = true;
      if (const std::string* v = ff->attr("clocked_on")) master.clocked_on = trim_quotes(*v);
      if (const std::string* v = ff->attr("next_state")) master.next_state = trim_quotes(*v);
    }

    // Pins first (related_pin may reference a later declaration), then arcs.
    for (const auto* pin_group : g.children_of("pin")) read_pin_decl(master, *pin_group);
    for (const auto* pin_group : g.children_of("pin")) read_pin_arcs(master, *pin_group);

    // State outputs and buffer/inverter detection need all pins bound.
    detect_roles(master);
  }

  static std::string trim_quotes(const std::string& s) { return trim(s); }

  void read_pin_decl(CellMaster& master, const LibGroup& g) {
    if (g.args.empty()) return;
    const std::string& pin_name = g.args[0];
    int pin_idx = master.pin_index(pin_name);
    if (pin_idx < 0) {
      MasterPin p;
      p.name = pin_name;
      master.pins.push_back(std::move(p));
      pin_idx = static_cast<int>(master.pins.size()) - 1;
      if (master.width > 0)
        log.warn("liberty: pin " + master.name + "." + pin_name + " missing from LEF");
    }
    MasterPin& pin = master.pins[pin_idx];

    if (const std::string* v = g.attr("direction")) {
      if (*v == "input") pin.dir = PinDir::Input;
      else if (*v == "output") pin.dir = PinDir::Output;
      else pin.dir = PinDir::Inout;
    }
    if (const std::string* v = g.attr("capacitance")) pin.cap_ff = std::stod(*v) * cap_scale;
    if (const std::string* v = g.attr("clock"); v != nullptr && *v == "true")
      pin.use = PinUse::Clock;
    if (master.is_sequential && pin.name == master.clocked_on) pin.use = PinUse::Clock;

    if (const std::string* v = g.attr("function")) {
      pin.function = *v;
      pin.is_state_output = false;
      // Functions naming the ff state variable (e.g. "IQ") are state outputs.
      const std::string body = trim(*v);
      if (master.is_sequential && (body == "IQ" || body == "IQN" || body == "!IQ")) {
        pin.is_state_output = true;
      } else {
        pin.function_tree = parse_bool_function(*v);
      }
    }
  }

  void read_pin_arcs(CellMaster& master, const LibGroup& g) {
    if (g.args.empty()) return;
    const int pin_idx = master.pin_index(g.args[0]);
    if (pin_idx < 0) return;
    for (const auto* t : g.children_of("timing")) read_timing(master, pin_idx, *t);
    for (const auto* p : g.children_of("internal_power")) {
      MasterPin& target = master.pins[pin_idx];
      const std::string ctx = master.name + "." + target.name + " internal_power";
      for (const auto& child : p->children) {
        if (child.type == "rise_power") target.power.rise_power = read_table(child, 1, ctx);
        else if (child.type == "fall_power") target.power.fall_power = read_table(child, 1, ctx);
      }
    }
  }

  void read_timing(CellMaster& master, int to_pin, const LibGroup& g) {
    TimingArc arc;
    arc.to_pin = to_pin;
    const std::string* related = g.attr("related_pin");
    if (related == nullptr) {
      log.warn("liberty: " + master.name + ": timing group without related_pin skipped");
      return;
    }
    arc.from_pin = master.pin_index(trim_quotes(*related));
    if (arc.from_pin < 0) {
      log.warn("liberty: " + master.name + ": related_pin '" + *related + "' unknown");
      return;
    }
    std::string type = "combinational";
    if (const std::string* v = g.attr("timing_type")) type = *v;
    if (type == "combinational") arc.type = ArcType::Combinational;
    else if (type == "rising_edge" || type == "falling_edge") arc.type = ArcType::ClkToQ;
    else if (type == "setup_rising" || type == "setup_falling") arc.type = ArcType::Setup;
    else if (type == "hold_rising" || type == "hold_falling") arc.type = ArcType::Hold;
    else {
      log.warn("liberty: " + master.name + ": timing_type '" + type + "' skipped");
      return;
    }
    if (const std::string* v = g.attr("timing_sense")) {
      if (*v == "positive_unate") arc.sense = ArcSense::PositiveUnate;
      else if (*v == "negative_unate") arc.sense = ArcSense::NegativeUnate;
      else arc.sense = ArcSense::NonUnate;
    }

    const std::string ctx =
        master.name + "." + master.pins[to_pin].name + " from " + *related;
    for (const auto& child : g.children) {
      if (child.type == "cell_rise" || child.type == "rise_constraint")
        arc.cell_rise = read_table(child, 0, ctx);
      else if (child.type == "cell_fall" || child.type == "fall_constraint")
        arc.cell_fall = read_table(child, 0, ctx);
      else if (child.type == "rise_transition")
        arc.rise_transition = read_table(child, 0, ctx);
      else if (child.type == "fall_transition")
        arc.fall_transition = read_table(child, 0, ctx);
    }

    if (arc.type == ArcType::Combinational || arc.type == ArcType::ClkToQ) {
      if (arc.cell_rise.empty() || arc.cell_fall.empty() || arc.rise_transition.empty() ||
          arc.fall_transition.empty())
        throw Error(ErrorCode::MissingTable, ctx + ": delay arc needs 4 tables");
    } else if (arc.cell_rise.empty() || arc.cell_fall.empty()) {
      throw Error(ErrorCode::MissingTable, ctx + ": constraint arc needs rise+fall tables");
    }
    master.arcs.push_back(std::move(arc));
  }

  void detect_roles(CellMaster& master) {
    if (master.is_sequential) return;
    const std::vector<int> ins = master.input_pins();
    const int out = master.output_pin();
    if (ins.size() != 1 || out < 0) return;
    const MasterPin& op = master.pins[out];
    if (!op.function_tree.valid()) return;
    const BoolExpr* root = op.function_tree.root.get();
    if (root->op == BoolExpr::Op::Var) master.is_buffer = true;
    else if (root->op == BoolExpr::Op::Not && root->lhs->op == BoolExpr::Op::Var)
      master.is_inverter = true;
  }
};

}  // namespace

void parse_liberty(const std::string& text, TechLibrary& tech, Log& log) {
  LibertyTreeParser parser(text);
  const LibGroup lib = parser.parse_top();
  LibertyInterp interp{tech, log, 1.0, 1000.0, 1.0, {}};
  interp.run(lib);
}

}  // namespace pdesk::io
