#!/usr/bin/env python3
"""Regenerates the bundled technology and benchmark fixtures.

Deterministic: run from this directory, outputs are written next to it.
The checked-in files are the source of truth; this script documents how
they were produced and lets them be rebuilt after edits.
"""

import random
import os

HERE = os.path.dirname(os.path.abspath(__file__))


# ----------------------------------------------------------------------------
# Technology LEF
# ----------------------------------------------------------------------------

LAYERS = [
    # name, dir, pitch, width, spacing, rpersq, cpersqdist
    ("metal1", "HORIZONTAL", 0.24, 0.12, 0.12, 0.10, 0.0016),
    ("metal2", "VERTICAL",   0.24, 0.12, 0.12, 0.10, 0.0016),
    ("metal3", "HORIZONTAL", 0.24, 0.12, 0.12, 0.10, 0.0016),
    ("metal4", "VERTICAL",   0.48, 0.24, 0.24, 0.08, 0.0008),
    ("metal5", "HORIZONTAL", 0.48, 0.24, 0.24, 0.08, 0.0008),
]

SITE_W, SITE_H = 0.24, 2.4

# name -> (width in sites, inputs, output, function, kind)
CELLS = {
    "INVX1":  (2, ["A"], "Y", "!A", "inv"),
    "INVX2":  (2, ["A"], "Y", "!A", "inv"),
    "INVX4":  (3, ["A"], "Y", "!A", "inv"),
    "BUFX1":  (2, ["A"], "Y", "A", "buf"),
    "BUFX2":  (3, ["A"], "Y", "A", "buf"),
    "BUFX4":  (4, ["A"], "Y", "A", "buf"),
    "NAND2X1": (3, ["A", "B"], "Y", "!(A&B)", "gate"),
    "NAND2X2": (4, ["A", "B"], "Y", "!(A&B)", "gate"),
    "NOR2X1": (3, ["A", "B"], "Y", "!(A|B)", "gate"),
    "NOR2X2": (4, ["A", "B"], "Y", "!(A|B)", "gate"),
    "AND2X1": (4, ["A", "B"], "Y", "A&B", "gate"),
    "OR2X1":  (4, ["A", "B"], "Y", "A|B", "gate"),
    "XOR2X1": (5, ["A", "B"], "Y", "A^B", "gate"),
    "DFFX1":  (8, ["D", "CK"], "Q", None, "dff"),
    "DFFX2":  (10, ["D", "CK"], "Q", None, "dff"),
    "FILL1":  (1, [], None, None, "fill"),
    "FILL2":  (2, [], None, None, "fill"),
    "FILL4":  (4, [], None, None, "fill"),
}

# drive -> (delay R ns/fF, transition R ns/fF, input cap fF)
DRIVES = {1: (0.0035, 0.0070, 1.2), 2: (0.0018, 0.0036, 2.2), 4: (0.0009, 0.0018, 4.2)}

# intrinsic delay per function family
INTRINSIC = {"inv": 0.020, "buf": 0.035, "gate": 0.030, "xor": 0.050, "dff": 0.120}

SLEW_AXIS = [0.02, 0.12, 0.50]          # ns
LOAD_AXIS_PF = [0.001, 0.008, 0.032]    # pF (1, 8, 32 fF)


def drive_of(name):
    return int(name[name.rfind("X") + 1:])


def family_of(name, kind):
    if kind in ("inv", "buf", "dff"):
        return kind
    return "xor" if name.startswith("XOR") else "gate"


def gen_lef():
    out = []
    out.append("VERSION 5.8 ;")
    out.append("BUSBITCHARS \"[]\" ;")
    out.append("DIVIDERCHAR \"/\" ;")
    out.append("UNITS")
    out.append("  DATABASE MICRONS 1000 ;")
    out.append("END UNITS")
    out.append("MANUFACTURINGGRID 0.001 ;")
    for name, direction, pitch, width, spacing, rpersq, cpersq in LAYERS:
        out.append(f"LAYER {name}")
        out.append("  TYPE ROUTING ;")
        out.append(f"  DIRECTION {direction} ;")
        out.append(f"  PITCH {pitch} ;")
        out.append(f"  WIDTH {width} ;")
        out.append(f"  SPACING {spacing} ;")
        out.append(f"  RESISTANCE RPERSQ {rpersq} ;")
        out.append(f"  CAPACITANCE CPERSQDIST {cpersq} ;")
        out.append(f"END {name}")
    out.append("SITE core")
    out.append("  CLASS CORE ;")
    out.append(f"  SIZE {SITE_W} BY {SITE_H} ;")
    out.append("END core")

    for name, (wsites, inputs, output, _fn, kind) in CELLS.items():
        w = round(wsites * SITE_W, 3)
        out.append(f"MACRO {name}")
        cls = "CORE SPACER" if kind == "fill" else "CORE"
        out.append(f"  CLASS {cls} ;")
        out.append("  ORIGIN 0 0 ;")
        out.append(f"  SIZE {w} BY {SITE_H} ;")
        out.append("  SYMMETRY X Y ;")
        out.append("  SITE core ;")
        pins = [(p, "INPUT") for p in inputs]
        if output:
            pins.append((output, "OUTPUT"))
        n = len(pins)
        for i, (pname, pdir) in enumerate(pins):
            use = "CLOCK" if pname == "CK" else "SIGNAL"
            cx = round((i + 1) * w / (n + 1), 3)
            x0, x1 = round(cx - 0.05, 3), round(cx + 0.05, 3)
            y0, y1 = (0.9, 1.14) if pdir == "INPUT" else (1.26, 1.5)
            out.append(f"  PIN {pname}")
            out.append(f"    DIRECTION {pdir} ;")
            out.append(f"    USE {use} ;")
            out.append("    PORT")
            out.append("      LAYER metal1 ;")
            out.append(f"        RECT {x0} {y0} {x1} {y1} ;")
            out.append("    END")
            out.append(f"  END {pname}")
        out.append(f"END {name}")

    # two block macros for floorplan/macro-placement tests
    for bname, bw, bh in [("RAM16", 24.0, 9.6), ("ROM8", 14.4, 7.2)]:
        out.append(f"MACRO {bname}")
        out.append("  CLASS BLOCK ;")
        out.append("  ORIGIN 0 0 ;")
        out.append(f"  SIZE {bw} BY {bh} ;")
        out.append("  PIN PI")
        out.append("    DIRECTION INPUT ;")
        out.append("    USE SIGNAL ;")
        out.append("    PORT")
        out.append("      LAYER metal3 ;")
        out.append(f"        RECT 0.2 {bh/2 - 0.3} 0.8 {bh/2 + 0.3} ;")
        out.append("    END")
        out.append("  END PI")
        out.append("  PIN PO")
        out.append("    DIRECTION OUTPUT ;")
        out.append("    USE SIGNAL ;")
        out.append("    PORT")
        out.append("      LAYER metal3 ;")
        out.append(f"        RECT {bw - 0.8} {bh/2 - 0.3} {bw - 0.2} {bh/2 + 0.3} ;")
        out.append("    END")
        out.append("  END PO")
        out.append("  OBS")
        out.append("    LAYER metal1 ;")
        out.append(f"      RECT 0 0 {bw} {bh} ;")
        out.append("    LAYER metal2 ;")
        out.append(f"      RECT 0 0 {bw} {bh} ;")
        out.append("  END")
        out.append(f"END {bname}")

    out.append("END LIBRARY")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# Liberty
# ----------------------------------------------------------------------------

def table(values, indent):
    pad = " " * indent
    rows = [", ".join(f"{v:.5f}" for v in row) for row in values]
    lines = [pad + "index_1(\"" + ", ".join(str(s) for s in SLEW_AXIS) + "\");",
             pad + "index_2(\"" + ", ".join(str(l) for l in LOAD_AXIS_PF) + "\");",
             pad + "values(" + ", \\\n".join("\"" + r + "\"" for r in rows) + ");"]
    return "\n".join(lines)


def delay_values(a, r, b=0.15, skew=0.0):
    return [[a + skew + b * s + r * (l * 1000.0) for l in LOAD_AXIS_PF] for s in SLEW_AXIS]


def tran_values(rt, t0=0.015):
    return [[t0 + 0.10 * s + rt * (l * 1000.0) for l in LOAD_AXIS_PF] for s in SLEW_AXIS]


def power_values(e0, k):
    return [[e0 + 0.5 * s + k * (l * 1000.0) for l in LOAD_AXIS_PF] for s in SLEW_AXIS]


def gen_lib():
    out = []
    out.append("library (toy) {")
    out.append("  delay_model : table_lookup;")
    out.append("  time_unit : \"1ns\";")
    out.append("  voltage_unit : \"1V\";")
    out.append("  current_unit : \"1mA\";")
    out.append("  leakage_power_unit : \"1uW\";")
    out.append("  capacitive_load_unit (1, pf);")
    out.append("  nom_voltage : 1.0;")
    out.append("  nom_temperature : 25.0;")
    out.append("  lu_table_template (delay_3x3) {")
    out.append("    variable_1 : input_net_transition;")
    out.append("    variable_2 : total_output_net_capacitance;")
    out.append("    index_1(\"" + ", ".join(str(s) for s in SLEW_AXIS) + "\");")
    out.append("    index_2(\"" + ", ".join(str(l) for l in LOAD_AXIS_PF) + "\");")
    out.append("  }")

    for name, (wsites, inputs, output, fn, kind) in CELLS.items():
        if kind == "fill":
            continue
        drive = drive_of(name)
        rdelay, rtran, incap = DRIVES[drive]
        fam = family_of(name, kind)
        a = INTRINSIC[fam]
        leak = round(0.002 * wsites * drive, 5)
        out.append(f"  cell ({name}) {{")
        out.append(f"    area : {round(wsites * SITE_W * SITE_H, 4)};")
        out.append(f"    cell_leakage_power : {leak};")
        if kind == "dff":
            out.append("    ff (IQ, IQN) {")
            out.append("      clocked_on : \"CK\";")
            out.append("      next_state : \"D\";")
            out.append("    }")
        for pname in inputs:
            cap = incap if pname != "CK" else round(incap * 0.7, 3)
            out.append(f"    pin ({pname}) {{")
            out.append("      direction : input;")
            out.append(f"      capacitance : {cap / 1000.0:.4f};")
            if pname == "CK":
                out.append("      clock : true;")
                out.append("      internal_power () {")
                out.append("        rise_power (delay_3x3) {")
                out.append(table(power_values(0.6, 0.0), 10))
                out.append("        }")
                out.append("        fall_power (delay_3x3) {")
                out.append(table(power_values(0.6, 0.0), 10))
                out.append("        }")
                out.append("      }")
            if kind == "dff" and pname == "D":
                # constraint tables; collapsed to the middle value downstream
                setup = 0.080 if drive == 1 else 0.070
                hold = 0.060 if drive == 1 else 0.100
                for ttype, value in [("setup_rising", setup), ("hold_rising", hold)]:
                    out.append("      timing () {")
                    out.append("        related_pin : \"CK\";")
                    out.append(f"        timing_type : {ttype};")
                    out.append("        rise_constraint (delay_3x3) {")
                    out.append(table([[value] * 3] * 3, 10))
                    out.append("        }")
                    out.append("        fall_constraint (delay_3x3) {")
                    out.append(table([[value] * 3] * 3, 10))
                    out.append("        }")
                    out.append("      }")
            out.append("    }")

        if output:
            out.append(f"    pin ({output}) {{")
            out.append("      direction : output;")
            if kind == "dff":
                out.append("      function : \"IQ\";")
                a_dff = 0.120 if drive == 1 else 0.055
                out.append("      timing () {")
                out.append("        related_pin : \"CK\";")
                out.append("        timing_type : rising_edge;")
                out.append("        timing_sense : non_unate;")
                for tname, vals in [("cell_rise", delay_values(a_dff, rdelay)),
                                    ("cell_fall", delay_values(a_dff, rdelay, skew=0.004)),
                                    ("rise_transition", tran_values(rtran)),
                                    ("fall_transition", tran_values(rtran))]:
                    out.append(f"        {tname} (delay_3x3) {{")
                    out.append(table(vals, 10))
                    out.append("        }")
                out.append("      }")
            else:
                out.append(f"      function : \"{fn}\";")
                if kind == "inv" or name.startswith("NAND") or name.startswith("NOR"):
                    sense = "negative_unate"
                elif name.startswith("XOR"):
                    sense = "non_unate"
                else:
                    sense = "positive_unate"
                for pname in inputs:
                    out.append("      timing () {")
                    out.append(f"        related_pin : \"{pname}\";")
                    out.append("        timing_type : combinational;")
                    out.append(f"        timing_sense : {sense};")
                    for tname, vals in [("cell_rise", delay_values(a, rdelay)),
                                        ("cell_fall", delay_values(a, rdelay, skew=0.004)),
                                        ("rise_transition", tran_values(rtran)),
                                        ("fall_transition", tran_values(rtran))]:
                        out.append(f"        {tname} (delay_3x3) {{")
                        out.append(table(vals, 10))
                        out.append("        }")
                    out.append("      }")
            eint = {"inv": 1.0, "buf": 1.6, "gate": 1.4, "xor": 2.2, "dff": 3.0}[fam]
            out.append("      internal_power () {")
            out.append("        rise_power (delay_3x3) {")
            out.append(table(power_values(eint, 0.02), 10))
            out.append("        }")
            out.append("        fall_power (delay_3x3) {")
            out.append(table(power_values(eint, 0.02), 10))
            out.append("        }")
            out.append("      }")
            out.append("    }")
        out.append("  }")

    # block macros: caps only, no arcs (kept out of the timing graph fixtures)
    for bname in ["RAM16", "ROM8"]:
        out.append(f"  cell ({bname}) {{")
        out.append("    cell_leakage_power : 1.5;")
        out.append("    pin (PI) { direction : input; capacitance : 0.005; }")
        out.append("    pin (PO) { direction : output; }")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# Benchmark netlists
# ----------------------------------------------------------------------------

GATE_POOL = ["INVX1", "BUFX1", "NAND2X1", "NOR2X1", "AND2X1", "OR2X1", "XOR2X1"]
GATE_INPUTS = {"INVX1": 1, "BUFX1": 1, "NAND2X1": 2, "NOR2X1": 2,
               "AND2X1": 2, "OR2X1": 2, "XOR2X1": 2}
MAX_FANOUT = 6


class Builder:
    def __init__(self):
        self.wires = []
        self.insts = []
        self.fanout = {}

    def declare(self, w):
        self.wires.append(w)
        self.fanout[w] = 0
        return w

    def use(self, s):
        self.fanout[s] += 1
        return s

    def inst(self, master, name, conns):
        self.insts.append((master, name, conns))


def gen_random_design(name, n_in, n_out, n_ff, n_gates, seed):
    rng = random.Random(seed)
    b = Builder()
    inputs = [f"in{i}" for i in range(n_in)]
    outputs = [f"out{i}" for i in range(n_out)]
    for s in inputs:
        b.fanout[s] = 0

    ff_q = [b.declare(f"q{i}") for i in range(n_ff)]
    pool = inputs + ff_q
    gate_out = []
    for i in range(n_gates):
        master = rng.choice(GATE_POOL)
        y = b.declare(f"n{i}")
        # bias toward recent signals to build depth
        window = pool[-48:]
        cand = [s for s in window if b.fanout[s] < MAX_FANOUT] or window
        pins = ["A"] if GATE_INPUTS[master] == 1 else ["A", "B"]
        conns = [(p, b.use(rng.choice(cand))) for p in pins] + [("Y", y)]
        b.inst(master, f"u{i}", conns)
        gate_out.append(y)
        pool.append(y)

    for i, q in enumerate(ff_q):
        src = rng.choice(gate_out[len(gate_out) // 2:])
        b.inst("DFFX1", f"r{i}", [("D", b.use(src)), ("CK", "clk"), ("Q", q)])

    # all outputs but the last take a buffered random gate output; the last
    # output absorbs a parity tree over every otherwise-unconsumed signal
    for i in range(n_out - 1):
        src = rng.choice(gate_out)
        b.inst("BUFX1", f"ob{i}", [("A", b.use(src)), ("Y", outputs[i])])

    unused = [s for s in inputs + b.wires if b.fanout[s] == 0]
    k = 0
    while len(unused) > 1:
        x, y = unused[0], unused[1]
        unused = unused[2:]
        z = b.declare(f"p{k}")
        b.inst("XOR2X1", f"up{k}", [("A", b.use(x)), ("B", b.use(y)), ("Y", z)])
        unused.append(z)
        k += 1
    last = unused[0] if unused else b.use(rng.choice(gate_out)) and gate_out[0]
    b.inst("BUFX1", f"ob{n_out - 1}", [("A", b.use(last)), ("Y", outputs[n_out - 1])])

    return emit_verilog(name, inputs, outputs, b)


def gen_shiftreg(name, stages):
    b = Builder()
    inputs = ["sin"]
    outputs = ["sout"]
    b.fanout["sin"] = 0
    prev = "sin"
    for i in range(stages):
        q = b.declare(f"q{i}")
        b.inst("DFFX2", f"r{i}", [("D", b.use(prev)), ("CK", "clk"), ("Q", q)])
        prev = q
    b.inst("BUFX1", "ob0", [("A", b.use(prev)), ("Y", "sout")])
    return emit_verilog(name, inputs, outputs, b)


def gen_fanout(name, loads):
    b = Builder()
    inputs = ["in"]
    outputs = ["out0", "out1"]
    b.fanout["in"] = 0
    w = b.declare("w")
    b.inst("INVX1", "u_src", [("A", b.use("in")), ("Y", w)])
    sigs = []
    for i in range(loads):
        f = b.declare(f"f{i}")
        b.inst("INVX1", f"u{i}", [("A", b.use(w)), ("Y", f)])
        sigs.append(f)
    # register one leg so the design has a clocked endpoint
    q = b.declare("q0")
    b.inst("DFFX1", "r0", [("D", b.use(sigs[0])), ("CK", "clk"), ("Q", q)])
    b.inst("BUFX1", "ob0", [("A", b.use(q)), ("Y", "out0")])
    unused = [s for s in b.wires if b.fanout[s] == 0]
    k = 0
    while len(unused) > 1:
        x, y = unused[0], unused[1]
        unused = unused[2:]
        z = b.declare(f"p{k}")
        b.inst("XOR2X1", f"up{k}", [("A", b.use(x)), ("B", b.use(y)), ("Y", z)])
        unused.append(z)
        k += 1
    b.inst("BUFX1", "ob1", [("A", b.use(unused[0])), ("Y", "out1")])
    return emit_verilog(name, inputs, outputs, b)


def emit_verilog(name, inputs, outputs, b):
    lines = []
    ports = inputs + ["clk"] + outputs
    lines.append(f"module {name} (" + ", ".join(ports) + ");")
    lines.append("  input " + ", ".join(inputs + ["clk"]) + ";")
    lines.append("  output " + ", ".join(outputs) + ";")
    for i in range(0, len(b.wires), 12):
        lines.append("  wire " + ", ".join(b.wires[i:i + 12]) + ";")
    for master, iname, conns in b.insts:
        conn_s = ", ".join(f".{p}({n})" for p, n in conns)
        lines.append(f"  {master} {iname} ({conn_s});")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


def gen_sdc(clock_period, n_in, n_out, max_cap_pf=0.060):
    lines = [f"create_clock -period {clock_period} [get_ports clk]"]
    in_names = " ".join(f"in{i}" for i in range(n_in))
    out_names = " ".join(f"out{i}" for i in range(n_out))
    lines.append(f"set_input_delay 0.2 -clock clk [get_ports {{{in_names}}}]")
    lines.append(f"set_output_delay 0.2 -clock clk [get_ports {{{out_names}}}]")
    lines.append(f"set_load 0.004 [get_ports {{{out_names}}}]")
    lines.append("set_max_transition 0.8 [current_design]")
    lines.append(f"set_max_capacitance {max_cap_pf} [current_design]")
    return "\n".join(lines) + "\n"


def write(path, content):
    with open(os.path.join(HERE, path), "w") as f:
        f.write(content)
    print("wrote", path, f"({len(content.splitlines())} lines)")


def main():
    os.makedirs(os.path.join(HERE, "tech"), exist_ok=True)
    os.makedirs(os.path.join(HERE, "designs"), exist_ok=True)
    write("tech/toy.lef", gen_lef())
    write("tech/toy.lib", gen_lib())

    write("designs/c50.v", gen_random_design("c50", 5, 4, 8, 40, seed=50))
    write("designs/c300.v", gen_random_design("c300", 12, 8, 50, 240, seed=300))
    write("designs/c1k.v", gen_random_design("c1k", 24, 16, 96, 880, seed=1000))
    write("designs/shiftreg.v", gen_shiftreg("shiftreg", 16))
    write("designs/fanout16.v", gen_fanout("fanout16", 16))

    write("designs/c50.sdc", gen_sdc(3.0, 5, 4))
    write("designs/c300.sdc", gen_sdc(4.0, 12, 8))
    # c1k period = 2x the unoptimized critical path (see c1k.crit note)
    write("designs/c1k.sdc", gen_sdc(6.0, 24, 16))
    write("designs/c1k_tight.sdc", gen_sdc(1.2, 24, 16))
    write("designs/shiftreg.sdc",
          "create_clock -period 2.0 [get_ports clk]\n"
          "set_input_delay 0.2 -clock clk [get_ports sin]\n"
          "set_output_delay 0.2 -clock clk [get_ports sout]\n"
          "set_load 0.004 [get_ports sout]\n"
          "set_max_transition 0.8 [current_design]\n"
          "set_max_capacitance 0.060 [current_design]\n")
    write("designs/fanout16.sdc",
          "create_clock -period 3.0 [get_ports clk]\n"
          "set_input_delay 0.2 -clock clk [get_ports in]\n"
          "set_output_delay 0.2 -clock clk [get_ports {out0 out1}]\n"
          "set_load 0.004 [get_ports {out0 out1}]\n"
          "set_max_transition 0.8 [current_design]\n"
          "set_max_capacitance 0.010 [current_design]\n")


if __name__ == "__main__":
    main()
