#include "pdesk/tech.hpp"

#include <algorithm>
#include <cctype>

namespace pdesk {

namespace {

// Index of the axis interval containing v, clamped to [0, n-2].
std::size_t interval_index(const std::vector<double>& axis, double v) {
  if (axis.size() < 2) return 0;
  std::size_t i = 0;
  while (i + 2 < axis.size() && v >= axis[i + 1]) ++i;
  return i;
}

double clamp_to_axis(const std::vector<double>& axis, double v) {
  return std::clamp(v, axis.front(), axis.back());
}

}  // namespace

double NldmTable::lookup(double slew, double load) const {
  if (values.empty()) return 0.0;
  if (slew_axis.size() == 1 && load_axis.size() == 1) return values[0];

  const double s = clamp_to_axis(slew_axis, slew);
  const double l = clamp_to_axis(load_axis, load);

  if (slew_axis.size() == 1) {
    const std::size_t j = interval_index(load_axis, l);
    const double t = (l - load_axis[j]) / (load_axis[j + 1] - load_axis[j]);
    return at(0, j) * (1 - t) + at(0, j + 1) * t;
  }
  if (load_axis.size() == 1) {
    const std::size_t i = interval_index(slew_axis, s);
    const double t = (s - slew_axis[i]) / (slew_axis[i + 1] - slew_axis[i]);
    return at(i, 0) * (1 - t) + at(i + 1, 0) * t;
  }

  const std::size_t i = interval_index(slew_axis, s);
  const std::size_t j = interval_index(load_axis, l);
  const double u = (s - slew_axis[i]) / (slew_axis[i + 1] - slew_axis[i]);
  const double v = (l - load_axis[j]) / (load_axis[j + 1] - load_axis[j]);
  return at(i, j) * (1 - u) * (1 - v) + at(i + 1, j) * u * (1 - v) +
         at(i, j + 1) * (1 - u) * v + at(i + 1, j + 1) * u * v;
}

double NldmTable::nominal() const {
  if (values.empty()) return 0.0;
  return at(slew_axis.size() / 2, load_axis.size() / 2);
}

double PowerTables::energy_fj(double slew, double load) const {
  if (rise_power.empty()) return fall_power.lookup(slew, load);
  if (fall_power.empty()) return rise_power.lookup(slew, load);
  return 0.5 * (rise_power.lookup(slew, load) + fall_power.lookup(slew, load));
}

int CellMaster::pin_index(const std::string& pin_name) const {
  for (std::size_t i = 0; i < pins.size(); ++i)
    if (pins[i].name == pin_name) return static_cast<int>(i);
  return -1;
}

const MasterPin* CellMaster::find_pin(const std::string& pin_name) const {
  const int i = pin_index(pin_name);
  return i >= 0 ? &pins[i] : nullptr;
}

int CellMaster::clock_pin() const {
  for (std::size_t i = 0; i < pins.size(); ++i)
    if (pins[i].dir == PinDir::Input && pins[i].use == PinUse::Clock)
      return static_cast<int>(i);
  return -1;
}

int CellMaster::output_pin() const {
  for (std::size_t i = 0; i < pins.size(); ++i)
    if (pins[i].dir == PinDir::Output) return static_cast<int>(i);
  return -1;
}

std::vector<int> CellMaster::input_pins() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < pins.size(); ++i)
    if (pins[i].dir == PinDir::Input) out.push_back(static_cast<int>(i));
  return out;
}

bool CellMaster::split_drive(const std::string& name, std::string& prefix, int& drive) {
  const std::size_t x = name.find_last_of('X');
  if (x == std::string::npos || x + 1 >= name.size()) return false;
  for (std::size_t i = x + 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  prefix = name.substr(0, x);
  drive = std::stoi(name.substr(x + 1));
  return true;
}

const Layer* TechLibrary::find_layer(const std::string& name) const {
  auto it = layer_by_name.find(name);
  return it == layer_by_name.end() ? nullptr : &layers[it->second];
}

const CellMaster* TechLibrary::find_master(const std::string& name) const {
  auto it = master_by_name.find(name);
  return it == master_by_name.end() ? nullptr : &masters[it->second];
}

int TechLibrary::master_index(const std::string& name) const {
  auto it = master_by_name.find(name);
  return it == master_by_name.end() ? -1 : it->second;
}

const Site& TechLibrary::core_site() const {
  if (sites.empty()) throw Error(ErrorCode::PreconditionViolated, "technology defines no SITE");
  return sites[0];
}

double TechLibrary::avg_res_per_dbu() const {
  if (layers.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& l : layers) sum += l.res_per_dbu;
  return sum / static_cast<double>(layers.size());
}

double TechLibrary::avg_cap_per_dbu() const {
  if (layers.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& l : layers) sum += l.cap_per_dbu;
  return sum / static_cast<double>(layers.size());
}

void TechLibrary::rebuild_maps() {
  layer_by_name.clear();
  master_by_name.clear();
  site_by_name.clear();
  for (std::size_t i = 0; i < layers.size(); ++i) layer_by_name[layers[i].name] = static_cast<int>(i);
  for (std::size_t i = 0; i < masters.size(); ++i) master_by_name[masters[i].name] = static_cast<int>(i);
  for (std::size_t i = 0; i < sites.size(); ++i) site_by_name[sites[i].name] = static_cast<int>(i);
}

std::vector<Dbu> TechLibrary::tracks_in(const Layer& layer, Dbu lo, Dbu hi) const {
  std::vector<Dbu> out;
  if (layer.pitch <= 0) return out;
  const Dbu offset = layer.track_offset();
  Dbu first = offset;
  if (first < lo) {
    const Dbu k = (lo - offset + layer.pitch - 1) / layer.pitch;
    first = offset + k * layer.pitch;
  }
  for (Dbu t = first; t <= hi; t += layer.pitch) out.push_back(t);
  return out;
}

}  // namespace pdesk
