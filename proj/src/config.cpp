#include "dipsync/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dipsync/errors.hpp"

namespace dipsync {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool safe_name(const std::string& s) {
  if (s.empty() || s == "." || s == "..") return false;
  for (char ch : s) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '-' || ch == '_' || ch == '.';
    if (!ok) return false;
  }
  return true;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  try {
    if (!v.empty() && v[0] != '-') {
      const auto x = std::stoull(v, &pos, 10);
      if (pos == v.size()) return x;
    }
  } catch (const std::exception&) {
  }
  throw ConfigRejected(key + ": expected a non-negative integer, got '" + v + "'");
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  try {
    const double x = std::stod(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigRejected(key + ": expected a number, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigRejected(key + ": expected true/false, got '" + v + "'");
}

}  // namespace

ExperimentSpec parse_spec(std::string_view text) {
  ExperimentSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigRejected("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));

    if (key == "name") {
      spec.name = value;
    } else if (key == "topology") {
      spec.sim.topology = value;
    } else if (key == "protocol") {
      try {
        spec.sim.protocol = parse_protocol(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigRejected(e.what());
      }
    } else if (key == "delta") {
      spec.sim.delta = to_double(key, value);
    } else if (key == "max_ticks") {
      spec.sim.max_ticks = static_cast<Tick>(to_u64(key, value));
    } else if (key == "link_p") {
      spec.sim.link_p = to_double(key, value);
    } else if (key == "malicious") {
      spec.sim.malicious = to_bool(key, value);
    } else if (key == "seed") {
      spec.sim.seed = to_u64(key, value);
    } else if (key == "freeze_on_dip") {
      spec.sim.freeze_on_dip = to_bool(key, value);
    } else if (key == "repeat") {
      spec.repeat = static_cast<unsigned>(to_u64(key, value));
    } else if (key == "output_dir") {
      spec.output_dir = value;
    } else {
      throw ConfigRejected("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  if (!safe_name(spec.name)) throw ConfigRejected("name must match [A-Za-z0-9._-]+: '" + spec.name + "'");
  if (spec.repeat < 1) throw ConfigRejected("repeat must be at least 1");
  try {
    validate(spec.sim);
  } catch (const std::invalid_argument& e) {
    throw ConfigRejected(e.what());
  }
  return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigRejected("cannot read spec " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

void apply_seed_override(ExperimentSpec& spec, const char* env_seed) {
  if (env_seed == nullptr || *env_seed == '\0') return;
  spec.sim.seed = to_u64("DIPSYNC_SEED", env_seed);
}

std::string render_spec(const ExperimentSpec& spec) {
  char delta[64], p[64];
  std::snprintf(delta, sizeof delta, "%.17g", spec.sim.delta);
  std::snprintf(p, sizeof p, "%.17g", spec.sim.link_p);
  std::ostringstream out;
  out << "name = " << spec.name << "\n"
      << "topology = " << spec.sim.topology << "\n"
      << "protocol = " << to_string(spec.sim.protocol) << "\n"
      << "delta = " << delta << "\n"
      << "max_ticks = " << spec.sim.max_ticks << "\n"
      << "link_p = " << p << "\n"
      << "malicious = " << (spec.sim.malicious ? "true" : "false") << "\n"
      << "seed = " << spec.sim.seed << "\n"
      << "freeze_on_dip = " << (spec.sim.freeze_on_dip ? "true" : "false") << "\n"
      << "repeat = " << spec.repeat << "\n"
      << "output_dir = " << spec.output_dir << "\n";
  return out.str();
}

}  // namespace dipsync
