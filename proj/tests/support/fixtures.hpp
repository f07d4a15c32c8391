#pragma once

#include <string>

#include "pdesk/db.hpp"
#include "pdesk/io/io.hpp"

#ifndef PDESK_TESTDATA
#error "PDESK_TESTDATA must point at the testdata directory"
#endif

namespace testsupport {

inline std::string testdata(const std::string& rel) {
  return std::string(PDESK_TESTDATA) + "/" + rel;
}

// Bundled technology (toy.lef + toy.lib), parsed once.
inline const pdesk::TechLibrary& toy_tech() {
  static pdesk::TechLibrary tech = [] {
    pdesk::Log log;
    pdesk::TechLibrary t =
        pdesk::io::parse_tech_lef(pdesk::io::read_file(testdata("tech/toy.lef")), log);
    pdesk::io::parse_liberty(pdesk::io::read_file(testdata("tech/toy.lib")), t, log);
    return t;
  }();
  return tech;
}

inline pdesk::Design load_design(const std::string& name, pdesk::Log& log) {
  const auto ast = pdesk::io::parse_netlist(
      pdesk::io::read_file(testdata("designs/" + name + ".v")), log);
  return pdesk::build_design(toy_tech(), ast, log);
}

inline pdesk::SdcConstraints load_sdc(const std::string& name, pdesk::Log& log) {
  return pdesk::io::parse_sdc(pdesk::io::read_file(testdata("designs/" + name + ".sdc")), log);
}

// Minimal in-code technology with round-number RC so arithmetic oracles are
// exact: cap 0.0002 fF/DBU and res 0.001 ohm/DBU on every layer.
pdesk::TechLibrary make_unit_tech();

}  // namespace testsupport
