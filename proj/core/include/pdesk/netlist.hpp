#pragma once

#include <string>
#include <vector>

#include "pdesk/tech.hpp"

namespace pdesk {

// Flat gate-level structural netlist, one top module, named connections only.
struct NetlistAST {
  struct Port {
    std::string name;
    PinDir dir = PinDir::Input;
  };
  struct Connection {
    std::string pin;  // master pin name
    std::string net;  // declared wire or port name
  };
  struct InstanceDecl {
    std::string master;
    std::string name;
    std::vector<Connection> connections;
  };

  std::string module_name;
  std::vector<Port> ports;
  std::vector<std::string> wires;
  std::vector<InstanceDecl> instances;
};

}  // namespace pdesk
