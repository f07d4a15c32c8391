#pragma once

#include <string>
#include <vector>

namespace pdesk {

// Constraint subset: create_clock, set_input_delay, set_output_delay,
// set_load, set_max_transition, set_max_capacitance.
struct SdcConstraints {
  struct Clock {
    std::string name;
    double period_ns = 0.0;
    std::string source_port;
  };
  struct PortDelay {
    std::string port;
    std::string clock;
    double delay_ns = 0.0;
  };
  struct PortLoad {
    std::string port;
    double load_ff = 0.0;
  };

  std::vector<Clock> clocks;
  std::vector<PortDelay> input_delays;
  std::vector<PortDelay> output_delays;
  std::vector<PortLoad> port_loads;
  double max_transition_ns = 0.0;   // 0 = unset
  double max_capacitance_ff = 0.0;  // 0 = unset

  const Clock* find_clock(const std::string& name) const;
  double input_delay(const std::string& port) const;
  double output_delay(const std::string& port) const;
  double port_load(const std::string& port) const;
};

}  // namespace pdesk
